//! Sheaf cohomology of twists of a coherent sheaf associated to a graded
//! module, computed through graded local duality:
//!
//! `dim H^i(M~(k)) = dim Ext^{n-i}_S(M, S(-n-1))_{-k}` for `i >= 1`,
//! on `P^n` with `S` in `n+1` variables. Sections need the two torsion
//! corrections: `h^0(M~(k)) = dim M_k - dim (H^0_m M)_k + dim (H^1_m M)_k`,
//! with the local cohomology dimensions read off `Ext^{n+1}` and `Ext^n`.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::graded::{graded_piece, multiplication_matrix, piece_dim, GradedPiece};
use crate::homalg::PresentedModule;
use crate::matrix::scalar_rank;
use crate::poly::Polynomial;
use crate::resolution::{minimal_resolution, FreeResolution};
use crate::saturate::saturate_module;

/// Precomputed Ext data for all cohomology queries about one module.
pub struct CohomologyCtx {
    pub module: PresentedModule,
    pub resolution: FreeResolution,
    exts: Vec<PresentedModule>,
}

impl CohomologyCtx {
    pub fn new(module: PresentedModule) -> CohomologyCtx {
        let resolution = minimal_resolution(&module, None);
        assert!(resolution.complete, "cohomology needs a full resolution");
        let exts = (0..=resolution.length())
            .map(|j| crate::ext::ext_module_from_resolution(&resolution, j))
            .collect();
        CohomologyCtx {
            module,
            resolution,
            exts,
        }
    }

    /// Dimension of the ambient projective space.
    pub fn n(&self) -> usize {
        self.module.nvars() - 1
    }

    pub fn ext(&self, j: usize) -> Option<&PresentedModule> {
        self.exts.get(j)
    }

    fn ext_piece_dim(&self, j: usize, t: i64) -> usize {
        match self.exts.get(j) {
            Some(e) => piece_dim(e, t),
            None => 0,
        }
    }

    /// `dim H^i(M~(k))`. For `i >= 1` this is local duality; `i = 0` carries
    /// the torsion corrections.
    pub fn sheaf_cohomology_dim(&self, i: usize, k: i64) -> usize {
        let n = self.n();
        if i > n {
            return 0;
        }
        if i == 0 {
            let m_k = piece_dim(&self.module, k) as i64;
            let h0m = self.ext_piece_dim(n + 1, -k) as i64;
            let h1m = self.ext_piece_dim(n, -k) as i64;
            return (m_k - h0m + h1m) as usize;
        }
        self.ext_piece_dim(n - i, -k)
    }

    /// Full table over a twist window: `(i, k) -> h^i(M~(k))`.
    pub fn cohomology_table(&self, window: (i64, i64)) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for k in window.0..=window.1 {
            for i in 0..=self.n() {
                out.insert((i, k), self.sheaf_cohomology_dim(i, k));
            }
        }
        out
    }

    /// `chi(M~(k))`: equals the alternating sum of the table column.
    pub fn euler_characteristic(&self, k: i64) -> i64 {
        self.resolution.hilbert_poly(k)
    }
}

/// Degree-`k` piece of the saturation `M / H^0_m(M)`: the sections functor
/// before the `H^1_m` correction. Agrees with `h^0` of the sheaf whenever
/// `H^1_m(M)` vanishes in degree `k` (e.g. for saturated coordinate rings).
pub fn h0_dim(m: &PresentedModule, k: i64) -> usize {
    let (sat, _) = saturate_module(m);
    piece_dim(&sat, k)
}

/// A finite-length graded module captured degreewise: dimensions over its
/// support window plus the multiplication action of every variable.
#[derive(Clone, Debug)]
pub struct FiniteLengthGradedModule {
    pub field: FieldSpec,
    pub nvars: usize,
    /// First degree of the support window; `dims[t - lo]` is the piece size.
    pub lo: i64,
    pub dims: Vec<usize>,
    /// `mult[v][idx]`: matrix of `x_v` from degree `lo+idx` to `lo+idx+1`,
    /// rows indexed by the higher piece.
    pub mult: Vec<Vec<Vec<Vec<Scalar>>>>,
}

impl FiniteLengthGradedModule {
    /// Captures a presented module already known (and checked) to have finite
    /// length. The window is certified: pieces vanish outside it.
    pub fn from_module(m: &PresentedModule) -> FiniteLengthGradedModule {
        assert!(
            crate::saturate::is_finite_length(m),
            "module must be finite length"
        );
        let nvars = m.nvars();
        let field = m.field();
        let lo = m.gen_degrees().iter().copied().min().unwrap_or(0);
        let maxgen = m.gen_degrees().iter().copied().max().unwrap_or(0);
        let mut pieces: Vec<GradedPiece> = Vec::new();
        let mut t = lo;
        loop {
            let p = graded_piece(m, t);
            let done = p.dim() == 0 && t >= maxgen;
            pieces.push(p);
            t += 1;
            if done {
                break;
            }
        }
        let dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
        let mut mult = vec![Vec::new(); nvars];
        for (v, slot) in mult.iter_mut().enumerate() {
            let xv = Polynomial::variable(nvars, field, v);
            for w in pieces.windows(2) {
                slot.push(multiplication_matrix(&w[0], &w[1], &xv));
            }
        }
        FiniteLengthGradedModule {
            field,
            nvars,
            lo,
            dims,
            mult,
        }
    }

    pub fn dim_at(&self, t: i64) -> usize {
        if t < self.lo {
            return 0;
        }
        let idx = (t - self.lo) as usize;
        self.dims.get(idx).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Lowest and highest degrees with nonzero piece, if the module is nonzero.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.dims.iter().position(|d| *d > 0)?;
        let last = self.dims.iter().rposition(|d| *d > 0).unwrap();
        Some((self.lo + first as i64, self.lo + last as i64))
    }

    /// Matrix of multiplication by `x_v` from degree `t` to `t + 1`.
    pub fn multiplication_action(&self, v: usize, t: i64) -> Vec<Vec<Scalar>> {
        let rows = self.dim_at(t + 1);
        let cols = self.dim_at(t);
        if t < self.lo {
            return vec![vec![self.field.zero(); cols]; rows];
        }
        let idx = (t - self.lo) as usize;
        match self.mult[v].get(idx) {
            Some(m) => m.clone(),
            None => vec![vec![self.field.zero(); cols]; rows],
        }
    }

    /// The same graded vector spaces read backwards with transposed actions:
    /// the graded dual, with `dual_t = Hom(M_{-t}, k)`.
    pub fn graded_dual(&self) -> FiniteLengthGradedModule {
        let len = self.dims.len();
        let hi = self.lo + len as i64 - 1;
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut mult = vec![Vec::new(); self.nvars];
        for (v, slot) in mult.iter_mut().enumerate() {
            // action from dual degree t = -(s+1) to t+1 = -s is the transpose
            // of the original action from s to s+1
            for idx in (0..len.saturating_sub(1)).rev() {
                let orig = &self.mult[v][idx];
                let rows = self.dims[idx];
                let cols = self.dims[idx + 1];
                let mut tr = vec![vec![self.field.zero(); cols]; rows];
                for (i, row) in orig.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        tr[j][i] = c.clone();
                    }
                }
                slot.push(tr);
            }
        }
        FiniteLengthGradedModule {
            field: self.field,
            nvars: self.nvars,
            lo: -hi,
            dims,
            mult,
        }
    }

    /// True iff the module is generated by a single element in degree `g`:
    /// one-dimensional there, zero below, and every higher piece is spanned
    /// by the variable actions on the previous one.
    pub fn is_cyclic_generated_in(&self, g: i64) -> bool {
        if self.dim_at(g) != 1 {
            return false;
        }
        if let Some((lo, hi)) = self.support() {
            if lo < g {
                return false;
            }
            let mut t = g;
            while t < hi {
                let target = self.dim_at(t + 1);
                if target > 0 {
                    let mut stacked: Vec<Vec<Scalar>> = vec![Vec::new(); target];
                    for v in 0..self.nvars {
                        let m = self.multiplication_action(v, t);
                        for (i, row) in m.into_iter().enumerate() {
                            stacked[i].extend(row);
                        }
                    }
                    if scalar_rank(&mut stacked, self.field) != target {
                        return false;
                    }
                }
                t += 1;
            }
        }
        true
    }

    /// Checks the dimension symmetry `dim M_k = dim M_{c - k}` for every `k`.
    pub fn duality_symmetry_check(&self, c: i64) -> bool {
        if let Some((lo, hi)) = self.support() {
            for k in lo..=hi {
                if self.dim_at(k) != self.dim_at(c - k) {
                    return false;
                }
            }
        }
        true
    }

    /// Matrix of multiplication by a homogeneous polynomial from degree `t`
    /// to `t + deg g`, as the coefficient-weighted sum over monomial paths
    /// (each path composes single-variable actions in a fixed order; the
    /// commutativity invariant makes the order immaterial).
    pub fn polynomial_action(&self, g: &Polynomial, t: i64) -> Result<Vec<Vec<Scalar>>, Error> {
        let deg = match g.homogeneous_degree() {
            crate::poly::HomDegree::Degree(d) => d,
            crate::poly::HomDegree::Any => 0,
            crate::poly::HomDegree::NonHomogeneous => {
                return Err(Error::NotHomogeneous("multiplication action".into()))
            }
        };
        let rows = self.dim_at(t + deg);
        let cols = self.dim_at(t);
        let mut total = vec![vec![self.field.zero(); cols]; rows];
        for (mono, coeff) in &g.terms {
            let mut acc = mat_identity(cols, self.field);
            let mut level = t;
            for (v, &e) in mono.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = mat_mul(&self.multiplication_action(v, level), &acc, self.field);
                    level += 1;
                }
            }
            for (i, row) in acc.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    total[i][j] = total[i][j].add(&c.mul(coeff));
                }
            }
        }
        Ok(total)
    }

    /// Audits the module axioms on the captured data: the variable actions
    /// commute as maps of graded pieces.
    pub fn actions_commute(&self) -> bool {
        let Some((lo, hi)) = self.support() else {
            return true;
        };
        for t in lo..hi {
            for u in 0..self.nvars {
                for v in (u + 1)..self.nvars {
                    let uv = mat_mul(
                        &self.multiplication_action(u, t + 1),
                        &self.multiplication_action(v, t),
                        self.field,
                    );
                    let vu = mat_mul(
                        &self.multiplication_action(v, t + 1),
                        &self.multiplication_action(u, t),
                        self.field,
                    );
                    if uv != vu {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn mat_identity(n: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![field.zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: FieldSpec) -> Vec<Vec<Scalar>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![field.zero(); cols]; rows];
    for (i, arow) in a.iter().enumerate() {
        debug_assert_eq!(arow.len(), inner);
        for (k, c) in arow.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, bval) in b[k].iter().enumerate() {
                out[i][j] = out[i][j].add(&c.mul(bval));
            }
        }
    }
    out
}

/// The module `⊕_k H^i(M~(k))` as a concrete finite-length module: the graded
/// dual of `Ext^{n-i}_S(M, S(-n-1))`, by local duality. Errors when that Ext
/// module is not finite length (the cohomology sum would be infinite).
pub fn finite_length_module(
    m: &PresentedModule,
    i: usize,
) -> Result<FiniteLengthGradedModule, Error> {
    let n = m.nvars() - 1;
    if i < 1 || i > n {
        return Err(Error::Precondition(format!(
            "cohomology index i = {i} outside 1..={n}"
        )));
    }
    let ext = crate::ext::ext_module(m, n - i);
    if !crate::saturate::is_finite_length(&ext) {
        return Err(Error::Precondition(format!(
            "Ext^{} is not finite length; H^{i} twists do not sum finitely",
            n - i
        )));
    }
    Ok(FiniteLengthGradedModule::from_module(&ext).graded_dual())
}

/// The duality statement for the obstruction module on a hypersurface of
/// degree `d`: on `P^5` the symmetry `dim N_k = dim N_{d-6-k}`; on `P^4` the
/// variant comparing against the supplied `H^1` companion module,
/// `dim H1_k = dim N_{d-5-k}`. Other ambients are unsupported.
pub fn duality_symmetry(
    n_mod: &FiniteLengthGradedModule,
    d: i64,
    n: usize,
    h1: Option<&FiniteLengthGradedModule>,
) -> Result<bool, Error> {
    match n {
        5 => Ok(n_mod.duality_symmetry_check(d - 6)),
        4 => {
            let h1 = h1.ok_or_else(|| {
                Error::Precondition("the P^4 variant needs the H^1 companion module".into())
            })?;
            let window = match (h1.support(), n_mod.support()) {
                (None, None) => return Ok(true),
                (a, b) => {
                    let lo = a.map(|x| x.0).into_iter().chain(b.map(|x| x.0)).min().unwrap();
                    let hi = a.map(|x| x.1).into_iter().chain(b.map(|x| x.1)).max().unwrap();
                    (lo.min(d - 5 - hi), hi.max(d - 5 - lo))
                }
            };
            for k in window.0..=window.1 {
                if h1.dim_at(k) != n_mod.dim_at(d - 5 - k) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        other => Err(Error::UnsupportedAmbient(other as i64)),
    }
}
