//! The bundle layer: module presentations of the rank-two cokernel sheaf and
//! its partner from a matrix factorization, exactness and rank audits, the
//! splitting test, the finite-length obstruction module with its companion,
//! and the suite of cohomological identities such bundles satisfy.
//!
//! Throughout, `E = coker(phi)` and `G = coker(psi)` on the hypersurface
//! `X = {F = 0}` in `P^{n}`; both cokernels are taken over `S` but are
//! already `F`-torsion (`F x = phi(psi x)` lies in the image), so the
//! presentations need no extra `F` columns. The self-duality twist `e`
//! satisfies `E~ = E(-e)`, normalized to `e in {0, -1}`.

use crate::betti::BettiSequence;
use crate::cohomology::{finite_length_module, CohomologyCtx, FiniteLengthGradedModule};
use crate::error::Error;
use crate::factorization::{HypersurfaceContext, MatrixFactorization};
use crate::graded::{graded_piece, map_piece_matrix, piece_dim};
use crate::homalg::{GradedMap, PresentedModule};
use crate::matrix::{scalar_rank, PolyMatrix};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::resolution::minimal_resolution;

/// The two cokernel modules of a factorization together with audit data.
pub struct AcmBundleData {
    pub context: HypersurfaceContext,
    pub mf: MatrixFactorization,
    /// `E = coker(phi)`, the rank-two sheaf.
    pub e_module: PresentedModule,
    /// `G = coker(psi)`, the complementary rank-`(r-2)` partner.
    pub g_module: PresentedModule,
    /// The twist sequence of the presentation, for the enumeration layer.
    pub betti: BettiSequence,
}

impl AcmBundleData {
    pub fn degree(&self) -> i64 {
        self.context.degree
    }

    /// Default twist window for the exactness audits.
    pub fn audit_window(&self) -> (i64, i64) {
        let d = self.context.degree;
        (-d - 2, d + 2)
    }
}

fn binom(n: usize, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Rank of the sheaf of a presented `F`-torsion module on the hypersurface:
/// the `(dim X)`-th finite difference of its Hilbert polynomial, divided by
/// the leading difference `d` of the structure sheaf.
pub fn sheaf_rank_on_hypersurface(m: &PresentedModule, d: i64) -> Result<i64, Error> {
    let res = minimal_resolution(m, None);
    if !res.complete {
        return Err(Error::Precondition("incomplete resolution".into()));
    }
    let dim_x = m.nvars() - 2;
    let mut acc = 0i64;
    for i in 0..=dim_x {
        let term = binom(dim_x, i) * res.hilbert_poly((dim_x - i) as i64);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if acc % d != 0 {
        return Err(Error::Precondition(format!(
            "leading difference {acc} not a multiple of the degree {d}: \
             the module is not pure of dimension dim X"
        )));
    }
    Ok(acc / d)
}

/// Builds the bundle modules from a verified factorization and audits them:
/// the four-term sequence `0 -> E(-d) -> F1/F -> F0/F -> E -> 0` is checked
/// degreewise over the audit window, and the sheaf ranks must come out as
/// `rank E = 2`, `rank G = r - 2`.
pub fn bundle_modules(
    ctx: &HypersurfaceContext,
    mf: &MatrixFactorization,
) -> Result<AcmBundleData, Error> {
    let e_module = PresentedModule::from_presentation(mf.phi.clone());
    let g_module = PresentedModule::from_presentation(mf.psi.clone());
    let mut a = mf.twists.clone();
    a.sort_unstable_by(|x, y| y.cmp(x));
    let betti = BettiSequence {
        r: mf.rank(),
        e: mf.e,
        a,
    };
    let data = AcmBundleData {
        context: ctx.clone(),
        mf: mf.clone(),
        e_module,
        g_module,
        betti,
    };
    let window = data.audit_window();
    if !eq2_exactness(&data, window) {
        return Err(Error::Precondition(
            "the factorization sequence is not exact on the hypersurface".into(),
        ));
    }
    let rank_e = sheaf_rank_on_hypersurface(&data.e_module, ctx.degree)?;
    if rank_e != 2 {
        return Err(Error::Precondition(format!(
            "coker(phi) has sheaf rank {rank_e}, expected 2"
        )));
    }
    let rank_g = sheaf_rank_on_hypersurface(&data.g_module, ctx.degree)?;
    if rank_g != mf.rank() as i64 - 2 {
        return Err(Error::Precondition(format!(
            "coker(psi) has sheaf rank {rank_g}, expected r - 2 = {}",
            mf.rank() - 2
        )));
    }
    Ok(data)
}

/// A split comparison bundle `O_X(a_1) + O_X(a_2)` packaged in the same data
/// shape, with the rank-two factorization `phi = F I`, `psi = I`. The
/// normalization `e = a_1 + a_2` must already lie in `{0, -1}`.
pub fn split_bundle_data(f: &Polynomial, a: (i64, i64)) -> Result<AcmBundleData, Error> {
    let d = match f.homogeneous_degree() {
        crate::poly::HomDegree::Degree(d) if d >= 1 => d,
        _ => {
            return Err(Error::Precondition(
                "hypersurface equation must be homogeneous of positive degree".into(),
            ))
        }
    };
    let e = a.0 + a.1;
    if e != 0 && e != -1 {
        return Err(Error::Precondition(format!(
            "twists {a:?} are not normalized: a_1 + a_2 = {e} must be 0 or -1"
        )));
    }
    let nvars = f.nvars;
    let field = f.field;
    let smooth = crate::ideal::smoothness_check(f)?;
    let ctx = HypersurfaceContext {
        f: f.clone(),
        degree: d,
        nvars,
        field,
        smooth,
    };
    let g0 = crate::homalg::GradedFreeModule::new(vec![-a.0, -a.1]);
    let g1 = g0.twist(-d);
    let phi = GradedMap::new(PolyMatrix::scalar(2, f), g1.clone(), g0.clone())?;
    let psi = GradedMap::new(PolyMatrix::identity(2, nvars, field), g0.twist(-d), g1)?;
    let mf = MatrixFactorization {
        phi,
        psi,
        f: f.clone(),
        degree: d,
        e,
        twists: vec![a.0, a.1],
    };
    bundle_modules(&ctx, &mf)
}

/// Degreewise exactness of `0 -> E(-d) -> F1/F -> F0/F -> E -> 0` over a
/// window, certified by ranks of the induced maps on graded pieces.
pub fn eq2_exactness(data: &AcmBundleData, window: (i64, i64)) -> bool {
    let d = data.context.degree;
    let field = data.context.field;
    let f = &data.context.f;
    let phi = &data.mf.phi;
    let psi = &data.mf.psi;
    let f0bar = PresentedModule::free(phi.target.clone(), data.e_module.nvars(), field)
        .quotient_by_hypersurface(f);
    let f1bar = PresentedModule::free(phi.source.clone(), data.e_module.nvars(), field)
        .quotient_by_hypersurface(f);
    for t in window.0..=window.1 {
        let p0 = graded_piece(&f0bar, t);
        let p1 = graded_piece(&f1bar, t);
        let p0_low = graded_piece(&f0bar, t - d);
        let mut a = map_piece_matrix(&phi.matrix, &p1, &p0);
        let mut b = map_piece_matrix(&psi.matrix, &p0_low, &p1);
        let rank_a = scalar_rank(&mut a, field);
        let rank_b = scalar_rank(&mut b, field);
        // exactness at F1/F: ker(phi) = im(psi)
        if rank_a + rank_b != p1.dim() {
            return false;
        }
        // exactness at F0/F: E is the cokernel of phi
        if piece_dim(&data.e_module, t) != p0.dim() - rank_a {
            return false;
        }
        // injectivity of E(-d) -> F1/F: psi factors through E(-d)
        if piece_dim(&data.e_module, t - d) != rank_b {
            return false;
        }
    }
    true
}

/// The ACM property of `E`: its minimal free resolution over the ambient ring
/// stops after one step, which forces `H^i(E(k)) = 0` for `1 <= i <= n - 2`
/// and every `k`.
pub fn acm_check(data: &AcmBundleData) -> bool {
    let res = minimal_resolution(&data.e_module, None);
    res.complete && res.is_minimal() && res.length() <= 1
}

/// The splitting criterion: `E` splits as a sum of two line bundles iff
/// `H^2((E (x) E)(-e - d))` vanishes, read off the degree-`d` piece of
/// `Ext^{n-2}` of `(E (x) E)(-e)`.
pub fn split_test(data: &AcmBundleData) -> bool {
    let n = data.e_module.nvars() - 1;
    let ee = data.e_module.tensor(&data.e_module).twist(-data.mf.e);
    let ext = crate::ext::ext_module(&ee, n - 2);
    piece_dim(&ext, data.context.degree) == 0
}

/// The obstruction module `N = (+)_k H^2((E (x) E)(-e)(k))`, certified finite
/// length, with its generation audited: when nonzero it must be cyclic with
/// generator in degree `-d` (the image of the defining extension class).
pub fn n_module(data: &AcmBundleData) -> Result<FiniteLengthGradedModule, Error> {
    let ee = data.e_module.tensor(&data.e_module).twist(-data.mf.e);
    let n = finite_length_module(&ee, 2)?;
    if !n.actions_commute() {
        return Err(Error::Precondition(
            "captured variable actions fail to commute".into(),
        ));
    }
    let d = data.context.degree;
    if n.total_dim() > 0 && !n.is_cyclic_generated_in(-d) {
        return Err(Error::Precondition(format!(
            "obstruction module is not cyclic with generator in degree {}",
            -d
        )));
    }
    Ok(n)
}

/// The companion module `M' = (+)_k H^1((E (x) G)(k))`: checks that it is
/// cyclic with generator in degree `-e` and that its dimensions are those of
/// the obstruction module shifted by `e - d`.
pub fn companion_module_check(
    data: &AcmBundleData,
    n: &FiniteLengthGradedModule,
) -> Result<bool, Error> {
    let eg = data.e_module.tensor(&data.g_module);
    let m1 = finite_length_module(&eg, 1)?;
    let e = data.mf.e;
    let d = data.context.degree;
    if m1.total_dim() > 0 && !m1.is_cyclic_generated_in(-e) {
        return Ok(false);
    }
    let lo = m1
        .support()
        .map(|s| s.0)
        .unwrap_or(0)
        .min(n.support().map(|s| s.0 - e + d).unwrap_or(0));
    let hi = m1
        .support()
        .map(|s| s.1)
        .unwrap_or(0)
        .max(n.support().map(|s| s.1 - e + d).unwrap_or(0));
    for j in lo..=hi {
        if m1.dim_at(j) != n.dim_at(j + e - d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A desk-scale general-vanishing probe for `d >= 3` on `P^5`: every
/// degree-`d` monomial acts `N_{-d} -> N_0`, at least one action is nonzero,
/// and the hypersurface equation itself acts as zero.
pub fn general_vanishing_probe(
    data: &AcmBundleData,
    n: &FiniteLengthGradedModule,
) -> Result<bool, Error> {
    let nvars = data.e_module.nvars();
    if nvars != 6 {
        return Err(Error::UnsupportedAmbient(nvars as i64 - 1));
    }
    let d = data.context.degree;
    if d < 3 {
        return Err(Error::Precondition(format!(
            "probe needs degree >= 3, got {d}"
        )));
    }
    let field = data.context.field;
    let mut some_nonzero = false;
    for mono in Monomial::all_of_degree(nvars, d) {
        let p = Polynomial::monomial(nvars, field, mono, field.one());
        let action = n.polynomial_action(&p, -d)?;
        if action.iter().any(|row| row.iter().any(|c| !c.is_zero())) {
            some_nonzero = true;
        }
    }
    let f_action = n.polynomial_action(&data.context.f, -d)?;
    let f_zero = f_action.iter().all(|row| row.iter().all(|c| c.is_zero()));
    Ok(some_nonzero && f_zero)
}

/// One named pass/fail entry of the identity suite.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

/// Whether a presented module is zero, decided by minimalizing: every
/// generator must cancel against a unit relation.
pub fn module_is_zero(m: &PresentedModule) -> bool {
    if m.gen_degrees().is_empty() {
        return true;
    }
    minimal_resolution(m, Some(1)).cover.is_zero()
}

fn ext_vanishes(ctx: &CohomologyCtx, j: usize) -> bool {
    match ctx.ext(j) {
        None => true,
        Some(e) => module_is_zero(e),
    }
}

/// Runs the full suite of cohomological identities on one bundle:
/// middle-vanishing for `E`, the rank-five cokernel of the exterior square
/// and its hypersurface quotient, the two shifted comparison identities
/// between `E~ (x) G` and `E~ (x) E`, the quotient vanishing, the two short
/// exact sequences through the exterior-square module, the top vanishing
/// `H^1(E~ (x) E (k)) = 0`, Euler-characteristic interpolation, and Serre
/// duality for `E`. Twist-dependent identities run over
/// `[-2d, 2d]`; dimension audits over the supplied window.
pub fn identity_suite(data: &AcmBundleData, window: (i64, i64)) -> Result<IdentityReport, Error> {
    let mut report = IdentityReport::default();
    let n = data.e_module.nvars() - 1;
    let d = data.context.degree;
    let e = data.mf.e;
    let field = data.context.field;
    let kwin = (-2 * d, 2 * d);

    let e_ctx = CohomologyCtx::new(data.e_module.clone());
    let ee = data.e_module.tensor(&data.e_module).twist(-e);
    let ee_ctx = CohomologyCtx::new(ee);
    let eg = data.e_module.tensor(&data.g_module).twist(-e);
    let eg_ctx = CohomologyCtx::new(eg);

    let lam = data.mf.phi.exterior_square()?;
    let f_big = PresentedModule::from_presentation(lam.clone());
    let f_ctx = CohomologyCtx::new(f_big.clone());
    let f_bar = f_big.quotient_by_hypersurface(&data.context.f);
    let fbar_ctx = CohomologyCtx::new(f_bar.clone());
    let f_times = GradedMap::new(
        PolyMatrix::scalar(lam.target.rank(), &data.context.f),
        lam.target.twist(-d),
        lam.target.clone(),
    )?;
    let l_sub = f_big.submodule_from_cover(&f_times);

    // middle vanishing for E and the exterior-square module
    let mid: Vec<usize> = (2..=n.saturating_sub(1)).collect();
    let pass = mid.iter().all(|&j| ext_vanishes(&e_ctx, j));
    report.push(
        "middle_vanishing_e",
        pass,
        format!("Ext^j(E) = 0 for j in {:?}", mid),
    );
    let pass = mid.iter().all(|&j| ext_vanishes(&f_ctx, j));
    report.push(
        "middle_vanishing_exterior",
        pass,
        format!("Ext^j(coker L^2 phi) = 0 for j in {:?}", mid),
    );

    // vanishing for the hypersurface quotient of the exterior square:
    // H^i = 0 for 1 <= i <= n - 3
    let range: Vec<usize> = (3..=n.saturating_sub(1)).collect();
    let pass = range.iter().all(|&j| ext_vanishes(&fbar_ctx, j));
    report.push(
        "quotient_vanishing",
        pass,
        format!("Ext^j of the quotient vanishes for j in {:?}", range),
    );

    // shifted comparisons between E~ (x) G and E~ (x) E
    let mut pass = true;
    let mut detail = String::new();
    for k in kwin.0..=kwin.1 {
        for i in 1..=n - 3 {
            let lhs = eg_ctx.sheaf_cohomology_dim(i, k);
            let rhs = ee_ctx.sheaf_cohomology_dim(i + 1, k - d);
            if lhs != rhs {
                pass = false;
                detail = format!("h^{i}(E~xG({k})) = {lhs} but h^{}(E~xE({})) = {rhs}", i + 1, k - d);
            }
        }
    }
    report.push(
        "shift_eg_to_ee",
        pass,
        if detail.is_empty() {
            format!("h^i(E~xG(k)) = h^(i+1)(E~xE(k-d)) over {:?}", kwin)
        } else {
            detail
        },
    );
    let mut pass = true;
    let mut detail = String::new();
    for k in kwin.0..=kwin.1 {
        for i in 1..=n - 3 {
            let lhs = ee_ctx.sheaf_cohomology_dim(i, k);
            let rhs = eg_ctx.sheaf_cohomology_dim(i + 1, k);
            if lhs != rhs {
                pass = false;
                detail = format!("h^{i}(E~xE({k})) = {lhs} but h^{}(E~xG({k})) = {rhs}", i + 1);
            }
        }
    }
    report.push(
        "shift_ee_to_eg",
        pass,
        if detail.is_empty() {
            format!("h^i(E~xE(k)) = h^(i+1)(E~xG(k)) over {:?}", kwin)
        } else {
            detail
        },
    );

    // deep vanishing for E (x) G: H^i = 0 for 2 <= i <= n - 3
    let range: Vec<usize> = (3..=n.saturating_sub(2)).collect();
    let pass = range.iter().all(|&j| ext_vanishes(&eg_ctx, j));
    report.push(
        "eg_deep_vanishing",
        pass,
        format!("Ext^j(ExG) = 0 for j in {:?}", range),
    );

    // the submodule sequence 0 -> F*(coker) -> coker -> coker/F -> 0,
    // certified degreewise
    let mut pass = true;
    for t in window.0..=window.1 {
        let total = piece_dim(&f_big, t);
        let sub = piece_dim(&l_sub, t);
        let quot = piece_dim(&f_bar, t);
        if total != sub + quot {
            pass = false;
        }
    }
    report.push(
        "torsion_filtration_dims",
        pass,
        format!("dim = dim sub + dim quotient over {:?}", window),
    );

    // the quotient sequence 0 -> E (x) G -> coker/F -> O_X(e) -> 0 at the
    // level of Euler characteristics
    let eg_raw = data.e_module.tensor(&data.g_module);
    let eg_res = minimal_resolution(&eg_raw, None);
    let ox = PresentedModule::free(
        crate::homalg::GradedFreeModule::new(vec![-e]),
        n + 1,
        field,
    )
    .quotient_by_hypersurface(&data.context.f);
    let ox_res = minimal_resolution(&ox, None);
    let mut pass = eg_res.complete && ox_res.complete;
    for k in window.0..=window.1 {
        let lhs = fbar_ctx.euler_characteristic(k);
        let rhs = eg_res.hilbert_poly(k) + ox_res.hilbert_poly(k);
        if lhs != rhs {
            pass = false;
        }
    }
    report.push(
        "quotient_sequence_chi",
        pass,
        "chi additivity across 0 -> ExG -> coker/F -> O_X(e) -> 0".into(),
    );

    // top vanishing: H^1(E~ (x) E (k)) = 0 for every k
    let pass = ext_vanishes(&ee_ctx, n - 1);
    report.push(
        "ee_h1_vanishing",
        pass,
        "Ext^(n-1)(E~xE) = 0, i.e. H^1(E~xE(k)) = 0 for all k".into(),
    );

    // Euler-characteristic interpolation on each context
    for (name, ctx) in [("e", &e_ctx), ("ee", &ee_ctx), ("eg", &eg_ctx)] {
        let mut pass = true;
        for k in window.0..=window.1 {
            let mut chi = 0i64;
            for i in 0..=n {
                let h = ctx.sheaf_cohomology_dim(i, k) as i64;
                if i % 2 == 0 {
                    chi += h;
                } else {
                    chi -= h;
                }
            }
            if chi != ctx.euler_characteristic(k) {
                pass = false;
            }
        }
        report.push(
            &format!("euler_interpolation_{name}"),
            pass,
            format!("alternating sum equals the Hilbert polynomial over {:?}", window),
        );
    }

    // Serre duality for E: h^i(E(k)) = h^(n-1-i)(E(d-n-1-k-e))
    let mut pass = true;
    let mut detail = String::new();
    for k in window.0..=window.1 {
        for i in 0..=n - 1 {
            let lhs = e_ctx.sheaf_cohomology_dim(i, k);
            let dual_twist = d - (n as i64 + 1) - k - e;
            let rhs = e_ctx.sheaf_cohomology_dim(n - 1 - i, dual_twist);
            if lhs != rhs {
                pass = false;
                detail = format!("h^{i}(E({k})) = {lhs} vs h^{}(E({dual_twist})) = {rhs}", n - 1 - i);
            }
        }
    }
    report.push(
        "serre_duality_e",
        pass,
        if detail.is_empty() {
            "h^i(E(k)) matches its Serre dual across the window".into()
        } else {
            detail
        },
    );

    Ok(report)
}
