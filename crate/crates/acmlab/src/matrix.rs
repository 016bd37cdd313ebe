//! Matrices of polynomials and exact determinant/Pfaffian helpers.

use std::collections::HashMap;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub nvars: usize,
    pub field: FieldSpec,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn zero(nrows: usize, ncols: usize, nvars: usize, field: FieldSpec) -> PolyMatrix {
        PolyMatrix {
            nrows,
            ncols,
            nvars,
            field,
            entries: vec![Polynomial::zero(nvars, field); nrows * ncols],
        }
    }

    pub fn identity(n: usize, nvars: usize, field: FieldSpec) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n, n, nvars, field);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(nvars, field);
        }
        m
    }

    /// `p * I_n`.
    pub fn scalar(n: usize, p: &Polynomial) -> PolyMatrix {
        let mut m = PolyMatrix::zero(n, n, p.nvars, p.field);
        for i in 0..n {
            *m.at_mut(i, i) = p.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>, nvars: usize, field: FieldSpec) -> PolyMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for p in r {
                assert_eq!(p.nvars, nvars, "ambient mismatch");
                entries.push(p);
            }
        }
        PolyMatrix {
            nrows,
            ncols,
            nvars,
            field,
            entries,
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.ncols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.nrows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.ncols, self.nrows, self.nvars, self.field);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.neg();
        }
        out
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.sub(o);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, Error> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        if self.nvars != other.nvars || self.field != other.field {
            return Err(Error::RingMismatch("matrix product".into()));
        }
        let mut out = PolyMatrix::zero(self.nrows, other.ncols, self.nvars, self.field);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    *out.at_mut(i, j) = out.at(i, j).add(&prod);
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by memoized Laplace expansion along the first
    /// remaining row. Fine for the small square matrices in play here.
    pub fn det(&self) -> Result<Polynomial, Error> {
        if self.nrows != self.ncols {
            return Err(Error::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        let n = self.nrows;
        assert!(n <= 16, "determinant only supported up to 16x16");
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        memo.insert(0, Polynomial::one(self.nvars, self.field));
        Ok(self.det_rec((1u32 << n) - 1, &mut memo))
    }

    /// Determinant of the minor on column set `cols` (bitmask) and the last
    /// `popcount(cols)` rows... rows are taken from the top: row index =
    /// n - popcount(cols).
    fn det_rec(&self, cols: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let k = cols.count_ones() as usize;
        let row = self.nrows - k;
        let mut acc = Polynomial::zero(self.nvars, self.field);
        let mut sign = false;
        for j in 0..self.ncols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = self.at(row, j);
            if !e.is_zero() {
                let sub = self.det_rec(cols & !(1 << j), memo);
                let term = e.mul(&sub);
                acc = if sign { acc.sub(&term) } else { acc.add(&term) };
            }
            sign = !sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if i == j {
                    if !self.at(i, i).is_zero() {
                        return false;
                    }
                } else if self.at(i, j).add(self.at(j, i)).is_zero() == false {
                    return false;
                }
            }
        }
        true
    }

    /// Pfaffian of a 4x4 skew-symmetric matrix: `p01*p23 - p02*p13 + p03*p12`.
    pub fn pfaffian4(&self) -> Result<Polynomial, Error> {
        if self.nrows != 4 || self.ncols != 4 {
            return Err(Error::NotSquare {
                rows: self.nrows,
                cols: self.ncols,
            });
        }
        let t1 = self.at(0, 1).mul(self.at(2, 3));
        let t2 = self.at(0, 2).mul(self.at(1, 3));
        let t3 = self.at(0, 3).mul(self.at(1, 2));
        Ok(t1.sub(&t2).add(&t3))
    }
}

/// Dense exact Gaussian elimination over the coefficient field, for small
/// scalar matrices (rows of `Vec<Scalar>`). Returns the rank.
pub fn scalar_rank(rows: &mut Vec<Vec<Scalar>>, field: FieldSpec) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let mut pivot = None;
        for r in rank..nrows {
            if !rows[r][col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let t = rows[rank][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        let _ = field;
        rank += 1;
        col += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, 6, FieldSpec::Q).unwrap()
    }

    #[test]
    fn product_identity() {
        let f = p("x0*x1 + x2*x3 + x4*x5");
        let fi = PolyMatrix::scalar(2, &f);
        let id = PolyMatrix::identity(2, 6, FieldSpec::Q);
        assert_eq!(fi.mul(&id).unwrap(), fi);
    }

    #[test]
    fn row_times_column() {
        let row = PolyMatrix::from_rows(vec![vec![p("x0"), p("x1"), p("x2")]], 6, FieldSpec::Q);
        let col = PolyMatrix::from_rows(
            vec![vec![p("x3^2")], vec![p("x4^2")], vec![p("x5^2")]],
            6,
            FieldSpec::Q,
        );
        let prod = row.mul(&col).unwrap();
        assert_eq!(prod.at(0, 0), &p("x0*x3^2 + x1*x4^2 + x2*x5^2"));
    }

    #[test]
    fn dimension_mismatch() {
        let a = PolyMatrix::identity(2, 6, FieldSpec::Q);
        let b = PolyMatrix::identity(3, 6, FieldSpec::Q);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn small_determinants() {
        let m = PolyMatrix::from_rows(
            vec![vec![p("x0"), p("x1")], vec![p("x2"), p("x3")]],
            6,
            FieldSpec::Q,
        );
        assert_eq!(m.det().unwrap(), p("x0*x3 - x1*x2"));
        let id = PolyMatrix::identity(5, 6, FieldSpec::Q);
        assert!(id.det().unwrap().is_unit_constant());
    }

    #[test]
    fn pfaffian_formula() {
        // skew matrix with generic entries: pf^2 = det
        let entries = [p("x0"), p("x1"), p("x2"), p("x3"), p("x4"), p("x5")];
        let mut m = PolyMatrix::zero(4, 4, 6, FieldSpec::Q);
        let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, (i, j)) in idx.iter().enumerate() {
            *m.at_mut(*i, *j) = entries[k].clone();
            *m.at_mut(*j, *i) = entries[k].neg();
        }
        assert!(m.is_skew_symmetric());
        let pf = m.pfaffian4().unwrap();
        assert_eq!(pf.mul(&pf), m.det().unwrap());
    }

    #[test]
    fn scalar_rank_small() {
        let f = FieldSpec::Fp(7);
        let mut rows = vec![
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
            vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(0)],
        ];
        assert_eq!(scalar_rank(&mut rows, f), 2);
    }
}
