//! The 4x4 Pfaffian construction: from six forms with no common zero to a
//! certified matrix factorization and a rank-two ACM bundle.
//!
//!     cargo run --example pfaffian_bundle

use acmlab::bundle::{acm_check, bundle_modules, sheaf_rank_on_hypersurface, split_test};
use acmlab::factorization::{pfaffian_construction, verify_factorization};
use acmlab::{parse_polynomial, FieldSpec};

fn main() {
    let field = FieldSpec::Fp(32003);
    let p = |s: &str| parse_polynomial(s, 6, field).unwrap();

    // f*a + g*b + h*c = x0*x3^2 + x1*x4^2 + x2*x5^2: a cubic in P^5
    let fgh = [p("x0"), p("x1"), p("x2")];
    let abc = [p("x3^2"), p("x4^2"), p("x5^2")];

    let (ctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    println!(
        "hypersurface F = {} (degree {}, {})",
        ctx.f,
        ctx.degree,
        if ctx.smooth { "smooth" } else { "singular" }
    );
    println!("skew matrix phi:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| mf.phi.matrix.at(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }

    let report = verify_factorization(&mf).unwrap();
    println!("phi * psi = F * I : {}", report.phi_psi_is_f);
    println!("psi * phi = F * I : {}", report.psi_phi_is_f);
    println!("Pf(phi)   = F     : {}", report.pfaffian_is_f);
    println!("det(phi)  = F^2   : {}", report.det_is_f_squared);
    println!("graded, minimal   : {}, {}", report.graded, report.minimal);
    println!("e = {}, twists {:?}", mf.e, mf.twists);

    let data = bundle_modules(&ctx, &mf).unwrap();
    println!(
        "E = coker(phi): rank {} on the hypersurface",
        sheaf_rank_on_hypersurface(&data.e_module, ctx.degree).unwrap()
    );
    println!(
        "G = coker(psi): rank {} on the hypersurface",
        sheaf_rank_on_hypersurface(&data.g_module, ctx.degree).unwrap()
    );
    println!("E is ACM          : {}", acm_check(&data));
    println!("E splits          : {}", split_test(&data));
    println!(
        "Betti sequence admissible: {}",
        data.betti.is_admissible(ctx.degree)
    );
}
