//! acmlab: exact computer algebra for rank-two ACM bundles on hypersurfaces.
//!
//! The crate builds matrix factorizations of hypersurface equations (notably
//! the 4x4 Pfaffian construction), computes graded free resolutions and Betti
//! tables over the polynomial ring, evaluates sheaf cohomology on projective
//! space through graded local duality, and machine-checks the cohomological
//! identities, splitting criterion and finite-length obstruction module that
//! govern when such bundles split.
//!
//! See the `examples/` directory for runnable walkthroughs of each major
//! capability, and the `acmlab` binary for the command-line front end.

pub mod error;
pub mod field;
pub mod monomial;
pub mod poly;
pub mod parse;
pub mod matrix;
pub mod modgb;
pub mod ideal;
pub mod homalg;
pub mod graded;
pub mod resolution;
pub mod saturate;
pub mod ext;
pub mod cohomology;
pub mod factorization;
pub mod betti;
pub mod bundle;
pub mod report;
pub mod cli;

pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use poly::{HomDegree, Polynomial};
pub use matrix::PolyMatrix;
