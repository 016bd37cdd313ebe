fn main() {
    std::process::exit(acmlab::cli::run(std::env::args_os()));
}
