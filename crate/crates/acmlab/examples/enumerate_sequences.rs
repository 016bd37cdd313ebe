//! Enumerates the admissible Betti sequences (r; a_1..a_r) of rank-two ACM
//! bundles on hypersurfaces of low degree in P^5, with the numerical
//! constraint that rules each borderline candidate out.
//!
//!     cargo run --example enumerate_sequences

use acmlab::betti::enumerate_betti;

fn main() {
    for d in 1..=5 {
        for e in [0, -1] {
            let list = enumerate_betti(d, e, 5).unwrap();
            println!("d = {d}, e = {e}: {} admissible sequence(s)", list.len());
            for b in &list {
                let binding = b.binding_constraints(d);
                if binding.is_empty() {
                    println!("  r = {:2}, a = {:?}", b.r, b.a);
                } else {
                    println!(
                        "  r = {:2}, a = {:?}  [binding: {}]",
                        b.r,
                        b.a,
                        binding.join("; ")
                    );
                }
            }
        }
    }
    println!();
    println!("d = 1 is empty: on a hyperplane every rank-two ACM bundle");
    println!("splits into line bundles, so no indecomposable sequence exists.");
}
