//! Minimal graded free resolutions and Betti tables.
//!
//! Resolutions are built by iterated syzygy computation and pruned to minimal
//! form after every step by cancelling unit entries. Pruning replaces the free
//! cover, so the resolved module is canonically isomorphic to (not literally
//! equal to) the input presentation's cokernel; graded data is unaffected.

use std::collections::BTreeMap;

use crate::graded::{free_hilbert_poly, piece_dim};
use crate::homalg::{syzygy_generators, GradedFreeModule, GradedMap, PresentedModule};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct FreeResolution {
    /// `maps[i]` is the differential `F_{i+1} -> F_i`; `maps[0]` the minimal
    /// presentation.
    pub maps: Vec<GradedMap>,
    /// Generator degrees of `F_0`.
    pub cover: GradedFreeModule,
    pub complete: bool,
}

impl FreeResolution {
    /// Homological length: largest `i` with `F_i` nonzero.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn free_module(&self, i: usize) -> GradedFreeModule {
        if i == 0 {
            self.cover.clone()
        } else if i <= self.maps.len() {
            self.maps[i - 1].source.clone()
        } else {
            GradedFreeModule::new(Vec::new())
        }
    }

    /// Betti numbers `(homological index, degree) -> count`.
    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for i in 0..=self.maps.len() {
            for g in self.free_module(i).gen_degrees {
                *entries.entry((i, g)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Exact Euler characteristic `sum (-1)^i HP_{F_i}(k)`: the Hilbert
    /// polynomial of the resolved module, hence `chi` of its sheaf twisted
    /// by `k` once the resolution is complete.
    pub fn hilbert_poly(&self, k: i64) -> i64 {
        let nvars = self.maps.first().map_or(0, |m| m.nvars());
        let mut total = 0i64;
        for i in 0..=self.maps.len() {
            let v = free_hilbert_poly(&self.free_module(i).gen_degrees, nvars, k);
            if i % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        total
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn is_complex(&self) -> bool {
        for w in self.maps.windows(2) {
            match w[0].compose(&w[1]) {
                Ok(c) => {
                    if !c.matrix.is_zero() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }

    /// No differential entry has a unit (degree-zero) term.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| find_unit(&m.matrix).is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((h, _), _)| *h == i)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Macaulay2-style table: row `j` column `i` holds `beta_{i, i+j}`.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".to_string();
        }
        let pd = self.projective_dimension();
        let jmin = self.entries.keys().map(|(i, d)| d - *i as i64).min().unwrap();
        let jmax = self.entries.keys().map(|(i, d)| d - *i as i64).max().unwrap();
        let mut out = String::new();
        out.push_str("      ");
        for i in 0..=pd {
            out.push_str(&format!("{i:>6}"));
        }
        out.push('\n');
        for j in jmin..=jmax {
            out.push_str(&format!("{j:>5}:"));
            for i in 0..=pd {
                match self.entries.get(&(i, i as i64 + j)) {
                    Some(c) => out.push_str(&format!("{c:>6}")),
                    None => out.push_str("     ."),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Builds a minimal free resolution, stopping after `max_length` differentials
/// (defaults to the number of variables: Hilbert's bound for minimal
/// resolutions). Returns with `complete = false` only if truncated early by an
/// explicit shorter bound.
pub fn minimal_resolution(m: &PresentedModule, max_length: Option<usize>) -> FreeResolution {
    let nvars = m.nvars();
    let field = m.field();
    // Hilbert's bound is nvars once minimal; allow the transient overshoot.
    let cap = max_length.unwrap_or(nvars + 2);
    // drop zero relation columns
    let cols = m.pres.columns();
    let mut kept = Vec::new();
    let mut degs = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if !c.is_zero() {
            kept.push(c.clone());
            degs.push(m.pres.source.gen_degrees[j]);
        }
    }
    let first = GradedMap::from_columns(&kept, degs, m.pres.target.clone(), nvars, field);
    let mut maps = vec![first];
    minimalize(&mut maps);
    let mut complete = maps.last().unwrap().source.is_zero();
    // A syzygy step can return a redundant generating set; the redundancy
    // surfaces as a unit in the following differential, so the loop may
    // overshoot by one step and let the pruning collapse it again.
    while !complete && maps.len() < cap {
        let syz = syzygy_generators(maps.last().unwrap());
        if syz.source.is_zero() {
            complete = true;
            break;
        }
        maps.push(syz);
        minimalize(&mut maps);
        while maps.len() > 1 && maps.last().unwrap().source.is_zero() {
            maps.pop();
            complete = true;
        }
    }
    if !complete && maps.len() >= cap {
        // truncated by the explicit bound: check whether it happens to be done
        let syz = syzygy_generators(maps.last().unwrap());
        complete = syz.source.is_zero();
    }
    let cover = maps[0].target.clone();
    FreeResolution {
        maps,
        cover,
        complete,
    }
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    for i in 0..m.nrows {
        for j in 0..m.ncols {
            if m.at(i, j).is_unit_constant() {
                return Some((i, j));
            }
        }
    }
    None
}

fn delete_row(m: &PolyMatrix, r: usize) -> PolyMatrix {
    let mut rows = Vec::with_capacity(m.nrows - 1);
    for i in 0..m.nrows {
        if i == r {
            continue;
        }
        rows.push((0..m.ncols).map(|j| m.at(i, j).clone()).collect());
    }
    if rows.is_empty() {
        return PolyMatrix::zero(0, m.ncols, m.nvars, m.field);
    }
    PolyMatrix::from_rows(rows, m.nvars, m.field)
}

fn delete_col(m: &PolyMatrix, c: usize) -> PolyMatrix {
    let mut rows = Vec::with_capacity(m.nrows);
    for i in 0..m.nrows {
        let mut row = Vec::with_capacity(m.ncols - 1);
        for j in 0..m.ncols {
            if j != c {
                row.push(m.at(i, j).clone());
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return PolyMatrix::zero(0, m.ncols.saturating_sub(1), m.nvars, m.field);
    }
    PolyMatrix::from_rows(rows, m.nvars, m.field)
}

/// Cancels unit entries across a chain of composable maps, in place.
///
/// A unit at `(r, c)` of `maps[i]` is cleared by homogeneous row and column
/// operations; the induced change of basis is pushed into the neighbouring
/// differentials, after which row `c` of `maps[i+1]` and column `r` of
/// `maps[i-1]` are forced to vanish by `d o d = 0` and both generators are
/// deleted.
pub fn minimalize(maps: &mut Vec<GradedMap>) {
    let n = maps.len();
    if n == 0 {
        return;
    }
    let nvars = maps[0].nvars();
    let mut mats: Vec<PolyMatrix> = maps.iter().map(|m| m.matrix.clone()).collect();
    let mut degs: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    degs.push(maps[0].target.gen_degrees.clone());
    for m in maps.iter() {
        degs.push(m.source.gen_degrees.clone());
    }
    loop {
        let mut cancelled = false;
        for i in 0..n {
            while let Some((r, c)) = find_unit(&mats[i]) {
                cancelled = true;
                let u = mats[i].at(r, c).clone();
                let uinv = Polynomial::constant(
                    nvars,
                    u.leading().unwrap().1.inv().expect("unit entry"),
                );
                let ncols = mats[i].ncols;
                let nrows = mats[i].nrows;
                // column multipliers from row r
                let q: Vec<Polynomial> = (0..ncols)
                    .map(|j| mats[i].at(r, j).mul(&uinv))
                    .collect();
                for j in 0..ncols {
                    if j == c || q[j].is_zero() {
                        continue;
                    }
                    for k in 0..nrows {
                        let v = mats[i].at(k, c).mul(&q[j]);
                        let cur = mats[i].at(k, j).sub(&v);
                        *mats[i].at_mut(k, j) = cur;
                    }
                }
                // row multipliers from column c (updated matrix)
                let p: Vec<Polynomial> = (0..nrows)
                    .map(|k| mats[i].at(k, c).mul(&uinv))
                    .collect();
                for k in 0..nrows {
                    if k == r || p[k].is_zero() {
                        continue;
                    }
                    for j in 0..ncols {
                        let v = mats[i].at(r, j).mul(&p[k]);
                        let cur = mats[i].at(k, j).sub(&v);
                        *mats[i].at_mut(k, j) = cur;
                    }
                }
                // push basis change into the next differential and drop row c
                if i + 1 < n {
                    let bcols = mats[i + 1].ncols;
                    for bj in 0..bcols {
                        let mut acc = mats[i + 1].at(c, bj).clone();
                        for j in 0..ncols {
                            if j != c && !q[j].is_zero() {
                                acc = acc.add(&q[j].mul(mats[i + 1].at(j, bj)));
                            }
                        }
                        *mats[i + 1].at_mut(c, bj) = acc;
                    }
                    for bj in 0..bcols {
                        assert!(
                            mats[i + 1].at(c, bj).is_zero(),
                            "d o d = 0 forces the cancelled row to vanish"
                        );
                    }
                    mats[i + 1] = delete_row(&mats[i + 1], c);
                }
                // push basis change into the previous differential, drop col r
                if i > 0 {
                    let crows = mats[i - 1].nrows;
                    for ci in 0..crows {
                        let mut acc = mats[i - 1].at(ci, r).clone();
                        for k in 0..nrows {
                            if k != r && !p[k].is_zero() {
                                acc = acc.add(&mats[i - 1].at(ci, k).mul(&p[k]));
                            }
                        }
                        *mats[i - 1].at_mut(ci, r) = acc;
                    }
                    for ci in 0..crows {
                        assert!(
                            mats[i - 1].at(ci, r).is_zero(),
                            "d o d = 0 forces the cancelled column to vanish"
                        );
                    }
                    mats[i - 1] = delete_col(&mats[i - 1], r);
                }
                mats[i] = delete_col(&delete_row(&mats[i], r), c);
                degs[i].remove(r);
                degs[i + 1].remove(c);
            }
        }
        if !cancelled {
            break;
        }
    }
    *maps = (0..n)
        .map(|i| {
            GradedMap::new(
                mats[i].clone(),
                GradedFreeModule::new(degs[i + 1].clone()),
                GradedFreeModule::new(degs[i].clone()),
            )
            .expect("operations preserve homogeneity")
        })
        .collect();
}

/// Degreewise consistency of a resolution against the module it resolves:
/// the alternating sum of free piece dimensions must equal `dim M_t`.
pub fn verify_resolution_dims(m: &PresentedModule, res: &FreeResolution, window: (i64, i64)) -> bool {
    let nvars = m.nvars();
    for t in window.0..=window.1 {
        let mut acc: i64 = 0;
        for i in 0..=res.maps.len() {
            let d = res.free_module(i).piece_dim(t, nvars);
            if i % 2 == 0 {
                acc += d;
            } else {
                acc -= d;
            }
        }
        if acc != piece_dim(m, t) as i64 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
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
    fn koszul_complex_on_three_variables() {
        let m = quotient_ring(&["x0", "x1", "x2"], 3);
        let res = minimal_resolution(&m, None);
        assert!(res.complete);
        assert!(res.is_complex());
        assert!(res.is_minimal());
        let b = res.betti_table();
        assert_eq!(b.entries.get(&(0, 0)), Some(&1));
        assert_eq!(b.entries.get(&(1, 1)), Some(&3));
        assert_eq!(b.entries.get(&(2, 2)), Some(&3));
        assert_eq!(b.entries.get(&(3, 3)), Some(&1));
        assert_eq!(b.projective_dimension(), 3);
        assert!(verify_resolution_dims(&m, &res, (0, 6)));
    }

    #[test]
    fn hypersurface_has_length_one() {
        let m = quotient_ring(&["x0*x1 + x2*x3 + x4*x5"], 6);
        let res = minimal_resolution(&m, None);
        assert!(res.complete);
        assert_eq!(res.length(), 1);
        let b = res.betti_table();
        assert_eq!(b.entries.get(&(0, 0)), Some(&1));
        assert_eq!(b.entries.get(&(1, 2)), Some(&1));
        assert!(verify_resolution_dims(&m, &res, (0, 5)));
    }

    #[test]
    fn redundant_generators_are_pruned() {
        // present k[x0,x1]/(x0) with a redundant generator: F0 = S + S(-1)
        // with the second generator equal to x1 times the first
        let n = 2;
        let field = FieldSpec::Q;
        let pres = GradedMap::new(
            PolyMatrix::from_rows(
                vec![
                    vec![p("x0", n), p("x1", n)],
                    vec![Polynomial::zero(n, field), p("-1", n)],
                ],
                n,
                field,
            ),
            GradedFreeModule::new(vec![1, 1]),
            GradedFreeModule::new(vec![0, 1]),
        )
        .unwrap();
        let m = PresentedModule::from_presentation(pres);
        let res = minimal_resolution(&m, None);
        assert!(res.complete && res.is_minimal());
        assert_eq!(res.cover.gen_degrees, vec![0]);
        assert_eq!(res.length(), 1);
        assert_eq!(res.maps[0].source.gen_degrees, vec![1]);
        assert!(verify_resolution_dims(&m, &res, (0, 4)));
    }

    #[test]
    fn twisted_cubic_style_ideal() {
        // S/(x0^2, x0*x1, x1^2) in 2 vars: betti 1; 3; 2
        let m = quotient_ring(&["x0^2", "x0*x1", "x1^2"], 2);
        let res = minimal_resolution(&m, None);
        assert!(res.complete && res.is_minimal() && res.is_complex());
        let b = res.betti_table();
        assert_eq!(b.total(0), 1);
        assert_eq!(b.total(1), 3);
        assert_eq!(b.total(2), 2);
        assert_eq!(b.entries.get(&(2, 3)), Some(&2));
        assert!(verify_resolution_dims(&m, &res, (0, 5)));
    }

    #[test]
    fn hilbert_polynomial_of_quadric() {
        // quadric hypersurface in P^5: HP(k) = C(k+5,5) - C(k+3,5)
        let m = quotient_ring(&["x0*x1 + x2*x3 + x4*x5"], 6);
        let res = minimal_resolution(&m, None);
        assert_eq!(res.hilbert_poly(0), 1);
        assert_eq!(res.hilbert_poly(2), 20);
        assert_eq!(res.hilbert_poly(-3), 0); // chi(O_X(-3)) = 0 half-way
    }

    #[test]
    fn betti_render_shape() {
        let m = quotient_ring(&["x0", "x1", "x2"], 3);
        let res = minimal_resolution(&m, None);
        let s = res.betti_table().render();
        assert!(s.contains("0:"));
    }
}
