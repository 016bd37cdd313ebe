//! Command-line front end: job parsing, the four subcommands, and the
//! exit-code contract (0 success, 1 check failure, 2 usage or input error).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::betti::enumerate_betti;
use crate::bundle::{
    acm_check, bundle_modules, companion_module_check, general_vanishing_probe, identity_suite,
    n_module, split_bundle_data, split_test, AcmBundleData,
};
use crate::cohomology::{duality_symmetry, CohomologyCtx};
use crate::error::Error;
use crate::factorization::{pfaffian_construction, verify_factorization};
use crate::field::FieldSpec;
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::report::{
    matrix_json, poly_json, to_json_pretty, write_atomic, CheckJson, CohomologyReport,
    ConstructReport, EnumerateReport, EnumerateRow, ModuleSummary, VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "acmlab",
    version,
    about = "Rank-two ACM bundles on hypersurfaces: construction, verification, enumeration, cohomology"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and certify a 4x4 Pfaffian matrix factorization from six forms.
    Construct(ConstructArgs),
    /// Run the verification suite on a constructed bundle.
    Verify(VerifyArgs),
    /// Enumerate the admissible twist sequences for a given degree.
    Enumerate(EnumerateArgs),
    /// Print a sheaf-cohomology table for a module of the construction.
    Cohomology(CohomologyArgs),
}

/// Inputs shared by the construction-based subcommands. Values given on the
/// command line override the job file.
#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// TOML or JSON job file with the same keys as the flags.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Input polynomial, repeatable: f, g, h, a, b, c in order
    /// (or a single hypersurface equation with --expect-split).
    #[arg(long = "poly")]
    poly: Vec<String>,
    /// Coefficient field: `q` or `fp:<odd prime>`.
    #[arg(long)]
    field: Option<String>,
    /// Number of ring variables (ambient dimension plus one).
    #[arg(long)]
    vars: Option<usize>,
    /// Output path; written atomically. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` or `text`. Defaults to json when --out is set, text otherwise.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Twist window `lo:hi` for the dimension audits.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// `full` (identity suite included) or `quick`.
    #[arg(long)]
    suite: Option<String>,
    /// Expect the bundle to split; with a single --poly the split comparison
    /// bundle O_X + O_X(-1) on that hypersurface is used.
    #[arg(long)]
    expect_split: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// TOML or JSON job file with the same keys as the flags.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Hypersurface degree d.
    #[arg(long)]
    degree: Option<i64>,
    /// Normalized first Chern class, 0 or -1.
    #[arg(long, allow_hyphen_values = true)]
    e: Option<i64>,
    /// Ambient projective dimension n.
    #[arg(long)]
    ambient: Option<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Module to tabulate: e, g, eg, ee, or quotient.
    #[arg(long)]
    module: Option<String>,
    /// Twist window `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

/// Serialized job inputs; every field mirrors a command-line flag.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobFile {
    pub field: Option<String>,
    pub vars: Option<usize>,
    pub poly: Vec<String>,
    pub window: Option<String>,
    pub module: Option<String>,
    pub suite: Option<String>,
    pub expect_split: Option<bool>,
    pub degree: Option<i64>,
    pub e: Option<i64>,
    pub ambient: Option<i64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

fn load_job(path: &Path) -> Result<JobFile, Error> {
    let text = std::fs::read_to_string(path)?;
    let is_json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("job file: {e}")))
    } else {
        toml::from_str(&text).map_err(|e| Error::Input(format!("job file: {e}")))
    }
}

fn parse_window_spec(s: &str) -> Result<(i64, i64), Error> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Input(format!("window `{s}` is not of the form lo:hi")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound `{lo}`")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Input(format!("bad window bound `{hi}`")))?;
    if lo > hi {
        return Err(Error::Input(format!("empty window {lo}:{hi}")));
    }
    Ok((lo, hi))
}

/// Resolved inputs after merging flags over the job file.
struct Resolved {
    field: FieldSpec,
    vars: usize,
    polys: Vec<Polynomial>,
    window: Option<(i64, i64)>,
    module: Option<String>,
    suite: String,
    expect_split: bool,
    out: Option<PathBuf>,
    format: Option<String>,
}

fn resolve(
    common: &CommonArgs,
    window: Option<&str>,
    suite: Option<&str>,
    expect_split: bool,
    module: Option<&str>,
) -> Result<Resolved, Error> {
    let job = match &common.job {
        Some(p) => load_job(p)?,
        None => JobFile::default(),
    };
    let field_str = common
        .field
        .clone()
        .or(job.field)
        .unwrap_or_else(|| "fp:32003".to_string());
    let field = FieldSpec::parse(&field_str)?;
    let vars = common.vars.or(job.vars).unwrap_or(6);
    if vars < 2 {
        return Err(Error::Input(format!("vars = {vars} is too small")));
    }
    let poly_strs = if common.poly.is_empty() {
        job.poly.clone()
    } else {
        common.poly.clone()
    };
    let polys = poly_strs
        .iter()
        .map(|s| parse_polynomial(s, vars, field))
        .collect::<Result<Vec<_>, _>>()?;
    let window = match window.map(str::to_string).or(job.window) {
        Some(w) => Some(parse_window_spec(&w)?),
        None => None,
    };
    let suite = suite
        .map(str::to_string)
        .or(job.suite)
        .unwrap_or_else(|| "full".to_string());
    if suite != "full" && suite != "quick" {
        return Err(Error::Input(format!("suite `{suite}` is not full|quick")));
    }
    Ok(Resolved {
        field,
        vars,
        polys,
        window,
        module: module.map(str::to_string).or(job.module),
        suite,
        expect_split: expect_split || job.expect_split.unwrap_or(false),
        out: common.out.clone().or(job.out),
        format: common.format.clone().or(job.format),
    })
}

fn emit(
    out: &Option<PathBuf>,
    format: &Option<String>,
    json: String,
    text: String,
) -> Result<(), Error> {
    let format = match format.as_deref() {
        Some("json") => "json",
        Some("text") => "text",
        Some(other) => return Err(Error::Input(format!("format `{other}` is not json|text"))),
        None => {
            if out.is_some() {
                "json"
            } else {
                "text"
            }
        }
    };
    let body = if format == "json" { json } else { text };
    match out {
        Some(path) => write_atomic(path, &body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn six_polys(polys: &[Polynomial]) -> Result<([Polynomial; 3], [Polynomial; 3]), Error> {
    if polys.len() != 6 {
        return Err(Error::Input(format!(
            "expected six polynomials f, g, h, a, b, c; got {}",
            polys.len()
        )));
    }
    Ok((
        [polys[0].clone(), polys[1].clone(), polys[2].clone()],
        [polys[3].clone(), polys[4].clone(), polys[5].clone()],
    ))
}

fn build_data(resolved: &Resolved) -> Result<AcmBundleData, Error> {
    if resolved.expect_split && resolved.polys.len() == 1 {
        return split_bundle_data(&resolved.polys[0], (0, -1));
    }
    let (fgh, abc) = six_polys(&resolved.polys)?;
    let (ctx, mf) = pfaffian_construction(&fgh, &abc)?;
    bundle_modules(&ctx, &mf)
}

fn cmd_construct(args: &ConstructArgs) -> Result<i32, Error> {
    let resolved = resolve(&args.common, None, None, false, None)?;
    let (fgh, abc) = six_polys(&resolved.polys)?;
    let (ctx, mf) = pfaffian_construction(&fgh, &abc)?;
    let fr = verify_factorization(&mf)?;
    let data = bundle_modules(&ctx, &mf)?;
    let checks = vec![
        CheckJson {
            name: "phi_psi_is_f".into(),
            pass: fr.phi_psi_is_f,
            detail: "phi * psi = F * I".into(),
        },
        CheckJson {
            name: "psi_phi_is_f".into(),
            pass: fr.psi_phi_is_f,
            detail: "psi * phi = F * I".into(),
        },
        CheckJson {
            name: "graded".into(),
            pass: fr.graded,
            detail: "entry degrees match the twists".into(),
        },
        CheckJson {
            name: "minimal".into(),
            pass: fr.minimal,
            detail: "no unit entries".into(),
        },
        CheckJson {
            name: "pfaffian_is_f".into(),
            pass: fr.pfaffian_is_f,
            detail: "Pf(phi) = F".into(),
        },
        CheckJson {
            name: "det_is_f_squared".into(),
            pass: fr.det_is_f_squared,
            detail: "det(phi) = F^2".into(),
        },
    ];
    let report = ConstructReport {
        field: resolved.field.to_string(),
        vars: resolved.vars,
        hypersurface: poly_json(&ctx.f),
        degree: ctx.degree,
        e: mf.e,
        twists: mf.twists.clone(),
        smooth: ctx.smooth,
        betti_admissible: data.betti.is_admissible(ctx.degree),
        checks,
        phi: matrix_json(&mf.phi.matrix),
        psi: matrix_json(&mf.psi.matrix),
    };
    let all = report.checks.iter().all(|c| c.pass);
    let mut text = format!(
        "hypersurface {} of degree {} ({})\n e = {}, twists {:?}, betti admissible: {}\n",
        ctx.f,
        ctx.degree,
        if ctx.smooth { "smooth" } else { "singular" },
        mf.e,
        mf.twists,
        report.betti_admissible,
    );
    for c in &report.checks {
        text.push_str(&format!(
            "{} {} ({})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    emit(&resolved.out, &resolved.format, to_json_pretty(&report), text)?;
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Error> {
    let resolved = resolve(
        &args.common,
        args.window.as_deref(),
        args.suite.as_deref(),
        args.expect_split,
        None,
    )?;
    let mut checks: Vec<CheckJson> = Vec::new();
    let mut obstruction = None;
    let split_path = resolved.expect_split && resolved.polys.len() == 1;
    if !split_path {
        let (fgh, abc) = six_polys(&resolved.polys)?;
        let (_, mf) = pfaffian_construction(&fgh, &abc)?;
        let fr = verify_factorization(&mf)?;
        checks.push(CheckJson {
            name: "factorization".into(),
            pass: fr.all_ok(),
            detail: format!("{fr:?}"),
        });
    }
    let data = match build_data(&resolved) {
        Ok(d) => d,
        Err(Error::Precondition(msg)) => {
            // construction succeeded but the bundle audits failed
            checks.push(CheckJson {
                name: "bundle_audits".into(),
                pass: false,
                detail: msg,
            });
            let report = VerifyReport {
                field: resolved.field.to_string(),
                vars: resolved.vars,
                degree: 0,
                e: 0,
                twists: vec![],
                smooth: false,
                expect_split: resolved.expect_split,
                suite: resolved.suite.clone(),
                checks,
                obstruction: None,
                all_pass: false,
            };
            emit(
                &resolved.out,
                &resolved.format,
                to_json_pretty(&report),
                render_verify_text(&report),
            )?;
            return Ok(EXIT_CHECK_FAILED);
        }
        Err(e) => return Err(e),
    };
    let d = data.context.degree;
    let window = resolved.window.unwrap_or((-2 * d - 2, 2 * d + 2));
    checks.push(CheckJson {
        name: "bundle_audits".into(),
        pass: true,
        detail: "exactness and rank audits passed".into(),
    });
    checks.push(CheckJson {
        name: "acm".into(),
        pass: acm_check(&data),
        detail: "length-one minimal resolution over the ambient ring".into(),
    });
    let splits = split_test(&data);
    checks.push(CheckJson {
        name: "split_expectation".into(),
        pass: splits == resolved.expect_split,
        detail: format!(
            "split_test = {splits}, expected {}",
            resolved.expect_split
        ),
    });
    match n_module(&data) {
        Ok(n) => {
            let mut dims = BTreeMap::new();
            if let Some((lo, hi)) = n.support() {
                for k in lo..=hi {
                    dims.insert(k.to_string(), n.dim_at(k));
                }
            }
            obstruction = Some(ModuleSummary {
                support: n.support(),
                dims,
            });
            checks.push(CheckJson {
                name: "obstruction_cyclic".into(),
                pass: true,
                detail: format!("N cyclic from degree {} (or zero)", -d),
            });
            if resolved.vars == 6 {
                match duality_symmetry(&n, d, 5, None) {
                    Ok(pass) => checks.push(CheckJson {
                        name: "obstruction_duality".into(),
                        pass,
                        detail: format!("dim N_k = dim N_({}-k)", d - 6),
                    }),
                    Err(e) => checks.push(CheckJson {
                        name: "obstruction_duality".into(),
                        pass: false,
                        detail: e.to_string(),
                    }),
                }
            }
            match companion_module_check(&data, &n) {
                Ok(pass) => checks.push(CheckJson {
                    name: "companion".into(),
                    pass,
                    detail: "H^1(ExG) companion matches the shifted obstruction".into(),
                }),
                Err(e) => checks.push(CheckJson {
                    name: "companion".into(),
                    pass: false,
                    detail: e.to_string(),
                }),
            }
            if resolved.suite == "full" && !splits && d >= 3 && resolved.vars == 6 {
                match general_vanishing_probe(&data, &n) {
                    Ok(pass) => checks.push(CheckJson {
                        name: "vanishing_probe".into(),
                        pass,
                        detail: "a degree-d monomial acts nonzero N_(-d) -> N_0; F acts as zero"
                            .into(),
                    }),
                    Err(e) => checks.push(CheckJson {
                        name: "vanishing_probe".into(),
                        pass: false,
                        detail: e.to_string(),
                    }),
                }
            }
        }
        Err(e) => checks.push(CheckJson {
            name: "obstruction_cyclic".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }
    if resolved.suite == "full" && !split_path {
        let suite = identity_suite(&data, window)?;
        for c in suite.checks {
            checks.push(CheckJson {
                name: c.name,
                pass: c.pass,
                detail: c.detail,
            });
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        field: resolved.field.to_string(),
        vars: resolved.vars,
        degree: d,
        e: data.mf.e,
        twists: data.mf.twists.clone(),
        smooth: data.context.smooth,
        expect_split: resolved.expect_split,
        suite: resolved.suite.clone(),
        checks,
        obstruction,
        all_pass,
    };
    emit(
        &resolved.out,
        &resolved.format,
        to_json_pretty(&report),
        render_verify_text(&report),
    )?;
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn render_verify_text(report: &VerifyReport) -> String {
    let mut text = format!(
        "degree {} bundle over {} ({}), e = {}, twists {:?}\n",
        report.degree,
        report.field,
        if report.smooth { "smooth" } else { "singular" },
        report.e,
        report.twists,
    );
    for c in &report.checks {
        text.push_str(&format!(
            "{} {} ({})\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    if let Some(n) = &report.obstruction {
        text.push_str(&format!(
            "obstruction module: support {:?}, dims {:?}\n",
            n.support, n.dims
        ));
    }
    text.push_str(if report.all_pass {
        "all checks passed\n"
    } else {
        "SOME CHECKS FAILED\n"
    });
    text
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<i32, Error> {
    let job = match &args.job {
        Some(p) => load_job(p)?,
        None => JobFile::default(),
    };
    let d = args
        .degree
        .or(job.degree)
        .ok_or_else(|| Error::Input("enumerate needs --degree".into()))?;
    let e = args.e.or(job.e).unwrap_or(-1);
    let n = args.ambient.or(job.ambient).unwrap_or(5);
    let out = args.out.clone().or(job.out);
    let format = args.format.clone().or(job.format);
    let candidates = enumerate_betti(d, e, n)?;
    let rows: Vec<EnumerateRow> = candidates
        .iter()
        .map(|c| EnumerateRow {
            r: c.r,
            a: c.a.clone(),
            binding: c.binding_constraints(d),
        })
        .collect();
    let note = if rows.is_empty() && d == 1 {
        Some(
            "on a hyperplane every rank-two ACM bundle is a direct sum of line bundles; \
             there are no indecomposable candidates to enumerate"
                .to_string(),
        )
    } else if rows.is_empty() {
        Some("no admissible twist sequences".to_string())
    } else {
        None
    };
    let report = EnumerateReport {
        degree: d,
        e,
        ambient: n,
        candidates: rows,
        note,
    };
    let mut text = format!(
        "admissible twist sequences for degree {} (e = {}, ambient {}): {}\n",
        d,
        e,
        n,
        report.candidates.len()
    );
    for c in &report.candidates {
        text.push_str(&format!("  r = {}  a = {:?}", c.r, c.a));
        if !c.binding.is_empty() {
            text.push_str(&format!("  [binding: {}]", c.binding.join("; ")));
        }
        text.push('\n');
    }
    if let Some(note) = &report.note {
        text.push_str(&format!("note: {note}\n"));
    }
    emit(&out, &format, to_json_pretty(&report), text)?;
    Ok(EXIT_OK)
}

fn cmd_cohomology(args: &CohomologyArgs) -> Result<i32, Error> {
    let resolved = resolve(
        &args.common,
        args.window.as_deref(),
        None,
        false,
        args.module.as_deref(),
    )?;
    let name = resolved
        .module
        .clone()
        .ok_or_else(|| Error::Input("cohomology needs --module".into()))?;
    let data = build_data(&resolved)?;
    let e = data.mf.e;
    let module = match name.to_ascii_lowercase().as_str() {
        "e" => data.e_module.clone(),
        "g" => data.g_module.clone(),
        "eg" | "exg" => data.e_module.tensor(&data.g_module),
        "ee" | "evxe" => data.e_module.tensor(&data.e_module).twist(-e),
        "quotient" | "fbar" => {
            let lam = data.mf.phi.exterior_square()?;
            crate::homalg::PresentedModule::from_presentation(lam)
                .quotient_by_hypersurface(&data.context.f)
        }
        other => {
            return Err(Error::Input(format!(
                "unknown module `{other}`: expected e, g, eg, ee or quotient"
            )))
        }
    };
    let d = data.context.degree;
    let window = resolved.window.unwrap_or((-d - 2, d + 2));
    let ctx = CohomologyCtx::new(module);
    let n = ctx.n();
    let mut table = BTreeMap::new();
    let mut chi = BTreeMap::new();
    for k in window.0..=window.1 {
        for i in 0..=n {
            table.insert(format!("({i},{k})"), ctx.sheaf_cohomology_dim(i, k));
        }
        chi.insert(format!("{k}"), ctx.euler_characteristic(k));
    }
    let report = CohomologyReport {
        field: resolved.field.to_string(),
        module: name,
        window,
        table,
        chi,
    };
    let text = report.render_text(n);
    emit(&resolved.out, &resolved.format, to_json_pretty(&report), text)?;
    Ok(EXIT_OK)
}

/// Entry point shared by the binary and the integration tests.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    if let Ok(threads) = std::env::var("ACMLAB_THREADS") {
        if let Ok(count) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(count.max(1))
                .build_global();
        }
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version with success; everything else is usage
            let code = if e.exit_code() == 0 { EXIT_OK } else { EXIT_INPUT };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Cohomology(a) => cmd_cohomology(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
