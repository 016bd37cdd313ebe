//! The finite-length obstruction module N = (+)_k H^2((E (x) E)(-e)(k)).
//!
//! Builds the cubic example, extracts N, and exhibits the structure that
//! controls splitting: N is cyclic with generator in degree -d, its graded
//! dimensions are symmetric (local duality), the companion module of first
//! cohomology of (E (x) G) repeats the same dimensions, and every degree-d
//! monomial moves the generator onto the socle while F itself acts as zero.
//!
//!     cargo run --example obstruction_module

use acmlab::bundle::{
    bundle_modules, companion_module_check, general_vanishing_probe, n_module, split_test,
};
use acmlab::cohomology::duality_symmetry;
use acmlab::factorization::pfaffian_construction;
use acmlab::{parse_polynomial, FieldSpec};

fn main() {
    let field = FieldSpec::Fp(32003);
    let p = |s: &str| parse_polynomial(s, 6, field).unwrap();
    let fgh = [p("x0"), p("x1"), p("x2")];
    let abc = [p("x3^2"), p("x4^2"), p("x5^2")];
    let (ctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    let data = bundle_modules(&ctx, &mf).unwrap();
    let d = ctx.degree;

    let n = n_module(&data).unwrap();
    println!("obstruction module N for the cubic {}", ctx.f);
    match n.support() {
        Some((lo, hi)) => {
            println!("support [{lo}, {hi}], total dimension {}", n.total_dim());
            for t in lo..=hi {
                println!("  dim N_{t} = {}", n.dim_at(t));
            }
        }
        None => println!("N = 0: the bundle splits"),
    }
    println!("split test          : {}", split_test(&data));
    println!(
        "cyclic, generator in degree {}: {}",
        -d,
        n.is_cyclic_generated_in(-d)
    );
    println!(
        "duality dim N_k = dim N_(d-6-k): {}",
        duality_symmetry(&n, d, 5, None).unwrap()
    );
    println!(
        "companion module matches      : {}",
        companion_module_check(&data, &n).unwrap()
    );
    println!(
        "general vanishing probe       : {}",
        general_vanishing_probe(&data, &n).unwrap()
    );
}
