//! Sheaf cohomology on projective space via graded local duality.
//!
//! Tabulates h^i(F(k)) for line bundles on P^3 (reproducing the classical
//! picture: h^0 on the right, h^3 on the left, nothing in between) and for
//! the rank-two bundle E on the smooth quadric in P^5, whose intermediate
//! cohomology vanishes because E is ACM.
//!
//!     cargo run --example cohomology_table

use acmlab::bundle::bundle_modules;
use acmlab::cohomology::CohomologyCtx;
use acmlab::factorization::pfaffian_construction;
use acmlab::homalg::{GradedFreeModule, PresentedModule};
use acmlab::{parse_polynomial, FieldSpec};

fn print_table(label: &str, ctx: &CohomologyCtx, window: (i64, i64)) {
    let n = ctx.n();
    println!("{label}");
    print!("      k:");
    for k in window.0..=window.1 {
        print!("{k:>6}");
    }
    println!();
    for i in (0..=n - 1).rev() {
        print!("  h^{i}  :");
        for k in window.0..=window.1 {
            let h = ctx.sheaf_cohomology_dim(i, k);
            if h == 0 {
                print!("     .");
            } else {
                print!("{h:>6}");
            }
        }
        println!();
    }
    print!("  chi  :");
    for k in window.0..=window.1 {
        print!("{:>6}", ctx.euler_characteristic(k));
    }
    println!("\n");
}

fn main() {
    let field = FieldSpec::Fp(32003);

    // O(-1) on P^3: no cohomology at all in the middle of the window
    let o = PresentedModule::free(GradedFreeModule::new(vec![1]), 4, field);
    print_table("O(-1) on P^3:", &CohomologyCtx::new(o), (-6, 3));

    // the rank-two ACM bundle E on the quadric x0*x1 + x2*x3 + x4*x5 in P^5
    let p = |s: &str| parse_polynomial(s, 6, field).unwrap();
    let fgh = [p("x0"), p("x2"), p("x4")];
    let abc = [p("x1"), p("x3"), p("x5")];
    let (hctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    let data = bundle_modules(&hctx, &mf).unwrap();
    print_table(
        "E on the smooth quadric in P^5 (ACM: h^1..h^3 vanish identically):",
        &CohomologyCtx::new(data.e_module.clone()),
        (-5, 3),
    );
}
