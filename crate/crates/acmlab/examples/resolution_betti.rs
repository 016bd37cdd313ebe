//! Minimal graded free resolutions and Betti tables.
//!
//! Resolves the residue field (the Koszul complex in disguise) and an
//! Artinian complete intersection, printing Betti tables and checking the
//! dimension bookkeeping degree by degree.
//!
//!     cargo run --example resolution_betti

use acmlab::graded::piece_dim;
use acmlab::homalg::{GradedFreeModule, GradedMap, PresentedModule};
use acmlab::matrix::PolyMatrix;
use acmlab::resolution::{minimal_resolution, verify_resolution_dims};
use acmlab::{parse_polynomial, FieldSpec, Polynomial};

fn main() {
    let field = FieldSpec::Q;
    let nvars = 4;
    let p = |s: &str| parse_polynomial(s, nvars, field).unwrap();

    // the residue field k = S/(x0..x3): pd = 4, Betti numbers C(4,i)
    let k = PresentedModule::residue_field(nvars, field);
    let res = minimal_resolution(&k, None);
    println!("residue field of k[x0..x3]:");
    println!("{}", res.betti_table().render());

    // an Artinian complete intersection: S/(x0^2, x1^2, x2^3, x3^3)
    let gens: Vec<Polynomial> = ["x0^2", "x1^2", "x2^3", "x3^3"]
        .iter()
        .map(|s| p(s))
        .collect();
    let degs: Vec<i64> = gens.iter().map(|g| g.total_degree().unwrap()).collect();
    let m = PresentedModule::from_presentation(
        GradedMap::new(
            PolyMatrix::from_rows(vec![gens], nvars, field),
            GradedFreeModule::new(degs),
            GradedFreeModule::new(vec![0]),
        )
        .unwrap(),
    );
    let res = minimal_resolution(&m, None);
    println!("complete intersection (2,2,3,3):");
    println!("{}", res.betti_table().render());
    println!(
        "projective dimension {}, minimal: {}, complex: {}",
        res.betti_table().projective_dimension(),
        res.is_minimal(),
        res.is_complex()
    );
    println!(
        "dimension audit over degrees 0..10: {}",
        verify_resolution_dims(&m, &res, (0, 10))
    );
    let total: usize = (0..=10).map(|t| piece_dim(&m, t)).sum();
    println!("total length of the quotient: {total} (expected 2*2*3*3 = 36)");
}
