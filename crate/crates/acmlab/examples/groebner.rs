//! Groebner bases over an exact field: reduced basis, ideal membership, and
//! syzygies of the generators.
//!
//!     cargo run --example groebner

use acmlab::ideal::{groebner, ideal_contains, Ideal};
use acmlab::modgb::{syzygies_of, VecPoly};
use acmlab::{parse_polynomial, FieldSpec};

fn main() {
    let field = FieldSpec::Q;
    let nvars = 3;
    let p = |s: &str| parse_polynomial(s, nvars, field).unwrap();

    // the ideal of the twisted-cubic-style net x0*x2 - x1^2, x1*x2 - x0^2
    let gens = vec![p("x0*x2 - x1^2"), p("x1*x2 - x0^2")];
    let ideal = Ideal::new(gens.clone(), nvars, field).unwrap();
    let gb = groebner(&ideal);

    println!("reduced Groebner basis ({} elements):", gb.basis.len());
    for g in &gb.basis {
        println!("  {g}");
    }

    for probe in ["x0^3 - x1^2*x2", "x0^3 + x1^3", "x0*x1*x2 - x1^3"] {
        println!(
            "  {} in ideal: {}",
            probe,
            ideal_contains(&p(probe), &gb)
        );
    }

    // first syzygies of the generators: relations sum_j s_j * g_j = 0
    let vecs: Vec<VecPoly> = gens
        .iter()
        .map(|g| VecPoly::from_components(std::slice::from_ref(g)))
        .collect();
    let syz = syzygies_of(&vecs, &[0]);
    println!("syzygies of the two generators: {}", syz.len());
    for s in &syz {
        println!(
            "  ({}) * g0 + ({}) * g1 = 0",
            s.component(0),
            s.component(1)
        );
    }
}
