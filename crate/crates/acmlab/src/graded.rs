//! Exact linear algebra on single graded pieces of presented modules.
//!
//! The degree-`t` piece of `coker(P)` is the cokernel of a scalar matrix whose
//! rows are cover monomials `(generator, monomial)` and whose columns are the
//! relation columns multiplied by all monomials of the complementary degree.
//! Column elimination yields a pivot structure; the non-pivot rows form a
//! canonical monomial basis of the piece, and every cover vector reduces to
//! unique coordinates over that basis.

use std::collections::{BTreeMap, HashMap};

use crate::field::{FieldSpec, Scalar};
use crate::homalg::PresentedModule;
use crate::modgb::VecPoly;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

type SparseCol = Vec<(usize, Scalar)>; // ascending row index, normalized lead 1

#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: i64,
    /// Row index -> (generator index, cover monomial).
    pub cover: Vec<(usize, Monomial)>,
    row_of: HashMap<(usize, Monomial), usize>,
    /// Pivot row -> eliminated relation column with leading 1 at that row.
    pivots: BTreeMap<usize, SparseCol>,
    /// Non-pivot rows, ascending: a basis of the quotient piece.
    pub basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
    field: FieldSpec,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|&r| self.cover[r].clone()).collect()
    }

    /// Reduces a sparse cover vector to coordinates over the quotient basis.
    fn reduce(&self, mut v: BTreeMap<usize, Scalar>) -> Vec<Scalar> {
        let mut coords = vec![self.field.zero(); self.basis.len()];
        while let Some((&row, _)) = v.iter().next_back() {
            let c = v.remove(&row).unwrap();
            if c.is_zero() {
                continue;
            }
            if let Some(pcol) = self.pivots.get(&row) {
                // subtract c * pivot column; its last entry is (row, 1)
                for (r, a) in pcol.iter().take(pcol.len() - 1) {
                    let entry = v.entry(*r).or_insert_with(|| self.field.zero());
                    *entry = entry.sub(&c.mul(a));
                    if entry.is_zero() {
                        v.remove(r);
                    }
                }
            } else {
                coords[self.basis_pos[&row]] = c;
            }
        }
        coords
    }

    /// Coordinates of a free-cover element; it must be homogeneous of the
    /// piece's degree (zero is accepted).
    pub fn coords_of(&self, v: &VecPoly) -> Vec<Scalar> {
        let mut sparse: BTreeMap<usize, Scalar> = BTreeMap::new();
        for t in &v.terms {
            let row = *self
                .row_of
                .get(&(t.comp, t.mono.clone()))
                .expect("term outside the graded piece");
            let e = sparse.entry(row).or_insert_with(|| self.field.zero());
            *e = e.add(&t.coeff);
        }
        sparse.retain(|_, c| !c.is_zero());
        self.reduce(sparse)
    }
}

/// Builds the degree-`t` piece of a presented module.
pub fn graded_piece(m: &PresentedModule, t: i64) -> GradedPiece {
    let nvars = m.nvars();
    let field = m.field();
    let mut cover = Vec::new();
    let mut row_of = HashMap::new();
    for (i, g) in m.gen_degrees().iter().enumerate() {
        for mono in Monomial::all_of_degree(nvars, t - g) {
            row_of.insert((i, mono.clone()), cover.len());
            cover.push((i, mono));
        }
    }
    let mut piece = GradedPiece {
        degree: t,
        cover,
        row_of,
        pivots: BTreeMap::new(),
        basis: Vec::new(),
        basis_pos: HashMap::new(),
        field,
    };
    let pres = &m.pres;
    for j in 0..pres.matrix.ncols {
        let rel_deg = pres.source.gen_degrees[j];
        for mult in Monomial::all_of_degree(nvars, t - rel_deg) {
            let mut col: BTreeMap<usize, Scalar> = BTreeMap::new();
            for i in 0..pres.matrix.nrows {
                for (mono, coeff) in &pres.matrix.at(i, j).terms {
                    let row = piece.row_of[&(i, mono.mul(&mult))];
                    let e = col.entry(row).or_insert_with(|| field.zero());
                    *e = e.add(coeff);
                }
            }
            col.retain(|_, c| !c.is_zero());
            eliminate(&mut piece.pivots, col, field);
        }
    }
    for r in 0..piece.cover.len() {
        if !piece.pivots.contains_key(&r) {
            piece.basis_pos.insert(r, piece.basis.len());
            piece.basis.push(r);
        }
    }
    piece
}

fn eliminate(pivots: &mut BTreeMap<usize, SparseCol>, mut col: BTreeMap<usize, Scalar>, field: FieldSpec) {
    loop {
        let Some((&row, _)) = col.iter().next_back() else {
            return; // reduced to zero
        };
        let c = col.remove(&row).unwrap();
        if let Some(pcol) = pivots.get(&row) {
            for (r, a) in pcol.iter().take(pcol.len() - 1) {
                let entry = col.entry(*r).or_insert_with(|| field.zero());
                *entry = entry.sub(&c.mul(a));
                if entry.is_zero() {
                    col.remove(r);
                }
            }
        } else {
            let inv = c.inv().expect("nonzero pivot");
            let mut stored: SparseCol = col.iter().map(|(r, a)| (*r, a.mul(&inv))).collect();
            stored.push((row, field.one()));
            pivots.insert(row, stored);
            return;
        }
    }
}

pub fn piece_dim(m: &PresentedModule, t: i64) -> usize {
    graded_piece(m, t).dim()
}

/// Matrix (rows = `to` basis, cols = `from` basis) of multiplication by a
/// homogeneous polynomial from one piece to another. The degree gap must
/// match the polynomial's degree.
pub fn multiplication_matrix(
    from: &GradedPiece,
    to: &GradedPiece,
    p: &Polynomial,
) -> Vec<Vec<Scalar>> {
    let field = from.field;
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(from.dim());
    for &row in &from.basis {
        let (gen, mono) = &from.cover[row];
        let mut sparse: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (m, c) in &p.terms {
            let target_row = to.row_of[&(*gen, mono.mul(m))];
            let e = sparse.entry(target_row).or_insert_with(|| field.zero());
            *e = e.add(c);
        }
        sparse.retain(|_, c| !c.is_zero());
        cols.push(to.reduce(sparse));
    }
    let mut rows = vec![vec![field.zero(); from.dim()]; to.dim()];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            rows[i][j] = c.clone();
        }
    }
    rows
}

/// Matrix (rows = `to` basis, cols = `from` basis) of the map induced on
/// graded pieces by a polynomial matrix between the covers: basis elements of
/// `from` are pushed through the matrix column-wise and reduced in `to`. The
/// caller is responsible for choosing pieces of compatible degrees.
pub fn map_piece_matrix(
    matrix: &crate::matrix::PolyMatrix,
    from: &GradedPiece,
    to: &GradedPiece,
) -> Vec<Vec<Scalar>> {
    let field = from.field;
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(from.dim());
    for &row in &from.basis {
        let (gen, mono) = &from.cover[row];
        let mut sparse: BTreeMap<usize, Scalar> = BTreeMap::new();
        for i in 0..matrix.nrows {
            for (m, c) in &matrix.at(i, *gen).terms {
                let target_row = to.row_of[&(i, mono.mul(m))];
                let e = sparse.entry(target_row).or_insert_with(|| field.zero());
                *e = e.add(c);
            }
        }
        sparse.retain(|_, c| !c.is_zero());
        cols.push(to.reduce(sparse));
    }
    let mut rows = vec![vec![field.zero(); from.dim()]; to.dim()];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            rows[i][j] = c.clone();
        }
    }
    rows
}

/// Exact value of the Hilbert polynomial of a twisted free module
/// `sum_g C(k - g + n, n)` with `n = nvars - 1`, valid for every integer `k`
/// (generalized binomial: the polynomial extension, not the truncated count).
pub fn free_hilbert_poly(gen_degrees: &[i64], nvars: usize, k: i64) -> i64 {
    let n = nvars as i128 - 1;
    let mut fact: i128 = 1;
    for i in 1..=n {
        fact *= i;
    }
    let mut total: i128 = 0;
    for &g in gen_degrees {
        let mut prod: i128 = 1;
        for i in 1..=n {
            prod *= (k - g) as i128 + i;
        }
        total += prod / fact;
    }
    total as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::homalg::{GradedFreeModule, GradedMap, PresentedModule};
    use crate::matrix::PolyMatrix;
    use crate::parse::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n, FieldSpec::Q).unwrap()
    }

    fn quotient_ring(gens: &[&str], n: usize) -> PresentedModule {
        let polys: Vec<Polynomial> = gens.iter().map(|s| p(s, n)).collect();
        let degs: Vec<i64> = polys.iter().map(|q| q.total_degree().unwrap()).collect();
        PresentedModule::from_presentation(
            GradedMap::new(
                PolyMatrix::from_rows(vec![polys], n, FieldSpec::Q),
                GradedFreeModule::new(degs),
                GradedFreeModule::new(vec![0]),
            )
            .unwrap(),
        )
    }

    #[test]
    fn polynomial_ring_pieces() {
        let s = PresentedModule::free(GradedFreeModule::new(vec![0]), 6, FieldSpec::Q);
        assert_eq!(piece_dim(&s, 2), 21);
        assert_eq!(piece_dim(&s, 0), 1);
        assert_eq!(piece_dim(&s, -1), 0);
        let s1 = PresentedModule::free(GradedFreeModule::new(vec![1]), 6, FieldSpec::Q);
        assert_eq!(piece_dim(&s1, 0), 0);
        assert_eq!(piece_dim(&s1, 1), 1);
    }

    #[test]
    fn hypersurface_coordinate_ring() {
        // S/(F) for a quadric in 6 variables: 21 - 1 = 20 in degree 2
        let m = quotient_ring(&["x0*x1 + x2*x3 + x4*x5"], 6);
        assert_eq!(piece_dim(&m, 2), 20);
        assert_eq!(piece_dim(&m, 3), 50); // 56 - 6
        assert_eq!(piece_dim(&m, 1), 6);
    }

    #[test]
    fn artinian_quotient() {
        // S/(x0^2, x1^2) in 2 variables: dims 1, 2, 1, 0, ...
        let m = quotient_ring(&["x0^2", "x1^2"], 2);
        assert_eq!(piece_dim(&m, 0), 1);
        assert_eq!(piece_dim(&m, 1), 2);
        assert_eq!(piece_dim(&m, 2), 1);
        assert_eq!(piece_dim(&m, 3), 0);
    }

    #[test]
    fn coords_and_multiplication() {
        // S/(x0^2, x1^2): x0*x1 spans degree 2; multiplication by x0 kills x0
        let m = quotient_ring(&["x0^2", "x1^2"], 2);
        let d1 = graded_piece(&m, 1);
        let d2 = graded_piece(&m, 2);
        assert_eq!(d1.dim(), 2);
        assert_eq!(d2.dim(), 1);
        let mul = multiplication_matrix(&d1, &d2, &p("x0", 2));
        // exactly one of x0, x1 maps onto the generator of degree 2
        let nonzero: Vec<bool> = mul[0].iter().map(|c| !c.is_zero()).collect();
        assert_eq!(nonzero.iter().filter(|b| **b).count(), 1);
    }

    #[test]
    fn tensor_dims_match_product() {
        // (S/(x0)) (x) (S/(x1)) over 2 vars is the residue field of x0,x1 in
        // each degree: dims 1, 0, 0 in degrees 0..2? No: S/(x0,x1) in 2 vars
        // is k, concentrated in degree 0.
        let a = quotient_ring(&["x0"], 2);
        let b = quotient_ring(&["x1"], 2);
        let t = a.tensor(&b);
        assert_eq!(piece_dim(&t, 0), 1);
        assert_eq!(piece_dim(&t, 1), 0);
        assert_eq!(piece_dim(&t, 2), 0);
    }

    #[test]
    fn map_pieces_and_rank() {
        // multiplication by x0 on S/(x0^2, x1^2), written as a 1x1 matrix
        // between covers: degree 1 -> degree 2 has rank 1
        let m = quotient_ring(&["x0^2", "x1^2"], 2);
        let d1 = graded_piece(&m, 1);
        let d2 = graded_piece(&m, 2);
        let mat = PolyMatrix::from_rows(vec![vec![p("x0", 2)]], 2, FieldSpec::Q);
        let rows = map_piece_matrix(&mat, &d1, &d2);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].len(), 2);
        assert_eq!(crate::matrix::scalar_rank(&mut rows.clone(), FieldSpec::Q), 1);
        // the identity map has full rank on each piece
        let id = PolyMatrix::identity(1, 2, FieldSpec::Q);
        let mut idm = map_piece_matrix(&id, &d1, &d1);
        assert_eq!(crate::matrix::scalar_rank(&mut idm, FieldSpec::Q), 2);
    }

    #[test]
    fn hilbert_polynomial_values() {
        // S in 6 vars: HP(k) = C(k+5,5)
        assert_eq!(free_hilbert_poly(&[0], 6, 0), 1);
        assert_eq!(free_hilbert_poly(&[0], 6, 2), 21);
        assert_eq!(free_hilbert_poly(&[0], 6, -1), 0);
        // at k = -6 the polynomial is chi(O(-6)) = -h^5(O(-6)) = -1,
        // no longer the (vanishing) Hilbert function
        assert_eq!(free_hilbert_poly(&[0], 6, -6), -1);
        // generalized binomial: C(-2,5) = (-2)(-3)(-4)(-5)(-6)/120 = -6
        assert_eq!(free_hilbert_poly(&[0], 6, -7), -6);
        assert_eq!(free_hilbert_poly(&[1, 2], 6, 2), 6 + 1);
    }
}
