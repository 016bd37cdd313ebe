//! End-to-end acceptance checks for the bundle pipeline.
//!
//! Each test covers one numbered criterion and prints a single pass/fail
//! line (visible with `cargo test -- --nocapture`, or on failure). The
//! structural claims about the obstruction module are cross-checked against
//! an independent oracle that uses nothing but graded piece ranks: the
//! resolution it consumes is re-certified exact degree by degree, so the
//! resulting dimensions do not depend on the correctness of the Groebner or
//! syzygy machinery that produced it.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use acmlab::betti::enumerate_betti;
use acmlab::bundle::{
    acm_check, bundle_modules, companion_module_check, general_vanishing_probe, identity_suite,
    module_is_zero, n_module, split_bundle_data, split_test, AcmBundleData,
};
use acmlab::cohomology::{duality_symmetry, CohomologyCtx};
use acmlab::ext::ext_module;
use acmlab::factorization::{pfaffian_construction, verify_factorization};
use acmlab::graded::piece_dim;
use acmlab::homalg::{GradedFreeModule, GradedMap, PresentedModule};
use acmlab::matrix::PolyMatrix;
use acmlab::modgb::{module_groebner, syzygies_of, VecPoly};
use acmlab::resolution::{minimal_resolution, verify_resolution_dims};
use acmlab::{parse_polynomial, Error, FieldSpec, Monomial, Polynomial};

const PRIME: i64 = 32003;

fn field() -> FieldSpec {
    FieldSpec::Fp(PRIME as u64)
}

fn p6(s: &str) -> Polynomial {
    parse_polynomial(s, 6, field()).unwrap()
}

fn report(criterion: usize, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

/// The smooth quadric x0*x1 + x2*x3 + x4*x5 with its spinor-type bundle.
fn quadric() -> AcmBundleData {
    let fgh = [p6("x0"), p6("x2"), p6("x4")];
    let abc = [p6("x1"), p6("x3"), p6("x5")];
    let (ctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    bundle_modules(&ctx, &mf).unwrap()
}

/// The cubic x0*x3^2 + x1*x4^2 + x2*x5^2: the six chosen forms have no
/// common zero, which is all the construction needs.
fn cubic() -> AcmBundleData {
    let fgh = [p6("x0"), p6("x1"), p6("x2")];
    let abc = [p6("x3^2"), p6("x4^2"), p6("x5^2")];
    let (ctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    bundle_modules(&ctx, &mf).unwrap()
}

fn sorted(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    v.sort();
    v
}

// ---------------------------------------------------------------------------
// independent linear-algebra oracle
// ---------------------------------------------------------------------------

fn free_dim(fm: &GradedFreeModule, nvars: usize, field: FieldSpec, t: i64) -> usize {
    piece_dim(&PresentedModule::free(fm.clone(), nvars, field), t)
}

/// Rank of the degree-`t` piece of a map of free modules, obtained from the
/// cokernel dimension (sparse column elimination only).
fn map_piece_rank(map: &GradedMap, t: i64) -> usize {
    let coker = PresentedModule::from_presentation(map.clone());
    free_dim(&map.target, map.nvars(), map.field(), t) - piece_dim(&coker, t)
}

/// Recomputes the obstruction dimensions `dim N_k = dim Ext^3(E(x)E(-e),
/// omega)_{-k}` without trusting the Ext machinery: the minimal resolution is
/// certified exact degree by degree with plain piece ranks (any exact complex
/// gives the right Ext, so the certificate removes the dependence on how the
/// resolution was found), then the Ext pieces are read off the dualized maps
/// by the same rank computations.
fn oracle_obstruction_dims(data: &AcmBundleData, window: (i64, i64)) -> BTreeMap<i64, usize> {
    let ee = data.e_module.tensor(&data.e_module).twist(-data.mf.e);
    let res = minimal_resolution(&ee, None);
    assert!(res.complete && res.is_complex() && res.is_minimal());
    let nvars = ee.nvars();
    let field = ee.field();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for i in 0..=res.length() {
        for &g in &res.free_module(i).gen_degrees {
            lo = lo.min(g);
            hi = hi.max(g);
        }
    }
    assert!(verify_resolution_dims(&ee, &res, (lo - 1, hi + 2)));
    for t in lo..=hi + 1 {
        // exactness at F_0: the cokernel of the first map is the module
        assert_eq!(
            piece_dim(&ee, t),
            free_dim(&res.free_module(0), nvars, field, t) - map_piece_rank(&res.maps[0], t),
            "cokernel mismatch at degree {t}"
        );
        // exactness at every interior spot by rank-nullity
        for i in 1..res.maps.len() {
            assert_eq!(
                map_piece_rank(&res.maps[i - 1], t) + map_piece_rank(&res.maps[i], t),
                free_dim(&res.free_module(i), nvars, field, t),
                "exactness fails at spot {i}, degree {t}"
            );
        }
        // injectivity of the last map
        let last = res.maps.len() - 1;
        assert_eq!(
            map_piece_rank(&res.maps[last], t),
            free_dim(&res.free_module(last + 1), nvars, field, t),
            "tail not injective at degree {t}"
        );
    }
    let c = nvars as i64; // omega = S(-n-1)
    let hom3 = res.free_module(3).dual_into(c);
    let incoming = res.maps[2].dual_into(c);
    let outgoing = if res.maps.len() > 3 {
        Some(res.maps[3].dual_into(c))
    } else {
        None
    };
    let mut dims = BTreeMap::new();
    for k in window.0..=window.1 {
        let t = -k; // local duality: dim N_k = dim Ext^3_{-k}
        let mut dim = free_dim(&hom3, nvars, field, t) - map_piece_rank(&incoming, t);
        if let Some(out) = &outgoing {
            dim -= map_piece_rank(out, t);
        }
        if dim > 0 {
            dims.insert(k, dim);
        }
    }
    dims
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_pfaffian_factorization() {
    let t0 = Instant::now();
    let fgh = [p6("x0"), p6("x2"), p6("x4")];
    let abc = [p6("x1"), p6("x3"), p6("x5")];
    let (ctx, mf) = pfaffian_construction(&fgh, &abc).unwrap();
    let rep = verify_factorization(&mf).unwrap();
    let elapsed = t0.elapsed();
    let ok = rep.all_ok()
        && ctx.degree == 2
        && ctx.smooth
        && mf.rank() == 4
        && mf.e == -1
        && sorted(&mf.twists) == vec![-1, -1, -1, -1]
        && elapsed.as_secs_f64() < 5.0;
    report(
        1,
        ok,
        &format!("4x4 Pfaffian factorization of the quadric verified in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_acm_and_splitting() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, data) in [("quadric", quadric()), ("cubic", cubic())] {
        let t0 = Instant::now();
        let acm = acm_check(&data);
        let splits = split_test(&data);
        let elapsed = t0.elapsed();
        ok &= acm && !splits && elapsed.as_secs_f64() < 60.0;
        notes.push(format!("{name} ACM and non-split in {elapsed:.2?}"));
    }
    // comparison bundle O + O(-1) on the quadric: must be detected as split
    let split = split_bundle_data(&p6("x0*x1 + x2*x3 + x4*x5"), (0, -1)).unwrap();
    ok &= acm_check(&split) && split_test(&split);
    notes.push("O+O(-1) detected as split".into());
    report(2, ok, &notes.join("; "));
}

#[test]
fn criterion_3_identity_suite() {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, data) in [("quadric", quadric()), ("cubic", cubic())] {
        let t0 = Instant::now();
        let d = data.degree();
        let rep = identity_suite(&data, (-2 * d - 2, 2 * d + 2)).unwrap();
        let elapsed = t0.elapsed();
        for c in &rep.checks {
            if !c.pass {
                notes.push(format!("{name}: {} failed ({})", c.name, c.detail));
            }
        }
        ok &= rep.all_pass() && elapsed.as_secs_f64() < 300.0;
        notes.push(format!(
            "{name}: {} identities in {elapsed:.2?}",
            rep.checks.len()
        ));
    }
    report(3, ok, &notes.join("; "));
}

#[test]
fn criterion_4_obstruction_module() {
    let mut ok = true;
    let mut notes = Vec::new();

    let qd = quadric();
    let nq = n_module(&qd).unwrap();
    // on the quadric the bundle is spinor-type: N is one-dimensional, socle
    // and generator coincide in degree -2
    ok &= nq.support() == Some((-2, -2)) && nq.total_dim() == 1;
    ok &= duality_symmetry(&nq, 2, 5, None).unwrap();
    ok &= companion_module_check(&qd, &nq).unwrap();
    let oq = oracle_obstruction_dims(&qd, (-5, 3));
    ok &= oq == BTreeMap::from([(-2, 1)]);
    notes.push(format!("quadric N dims {oq:?} (oracle match)"));

    let cd = cubic();
    let nc = n_module(&cd).unwrap();
    ok &= nc.support() == Some((-3, 0));
    for k in -3..=0 {
        ok &= nc.dim_at(k) > 0;
    }
    ok &= duality_symmetry(&nc, 3, 5, None).unwrap();
    ok &= companion_module_check(&cd, &nc).unwrap();
    let oc = oracle_obstruction_dims(&cd, (-6, 3));
    for k in -6..=3 {
        ok &= oc.get(&k).copied().unwrap_or(0) == nc.dim_at(k);
    }
    notes.push(format!("cubic N dims {oc:?} (oracle match)"));

    report(4, ok, &notes.join("; "));
}

#[test]
fn criterion_5_h3_vanishing() {
    // H^3((E(x)E)(-e)(k)) = 0 for all k, read off Ext^{n-3} = Ext^4 being zero
    let mut ok = true;
    for data in [quadric(), cubic()] {
        let ee = data.e_module.tensor(&data.e_module).twist(-data.mf.e);
        ok &= module_is_zero(&ext_module(&ee, 4));
    }
    report(5, ok, "Ext^4 of (E(x)E)(-e) vanishes for both bundles");
}

#[test]
fn criterion_6_no_linear_construction_on_p6() {
    // six hyperplanes in P^6 always meet, so the all-linear input that works
    // on P^5 must be rejected; the twist arithmetic itself is not the
    // obstruction (the enumerator is ambient-agnostic), the base locus is
    let f7 = field();
    let p7 = |s: &str| parse_polynomial(s, 7, f7).unwrap();
    let fgh = [p7("x0"), p7("x2"), p7("x4")];
    let abc = [p7("x1"), p7("x3"), p7("x5")];
    let mut ok = matches!(pfaffian_construction(&fgh, &abc), Err(Error::CommonZero));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let forms: Vec<Polynomial> = (0..6).map(|_| random_form(&mut rng, 7, 1, f7)).collect();
        let fgh = [forms[0].clone(), forms[1].clone(), forms[2].clone()];
        let abc = [forms[3].clone(), forms[4].clone(), forms[5].clone()];
        ok &= pfaffian_construction(&fgh, &abc).is_err();
    }
    ok &= !enumerate_betti(2, -1, 6).unwrap().is_empty();
    report(6, ok, "all-linear Pfaffian input rejected on P^6 (common zero)");
}

#[test]
fn criterion_7_betti_enumerator() {
    let t0 = Instant::now();
    let unique = enumerate_betti(2, -1, 5).unwrap();
    let mut ok =
        unique.len() == 1 && unique[0].r == 4 && sorted(&unique[0].a) == vec![-1, -1, -1, -1];
    let mut count = 0usize;
    for d in 1..=5 {
        for e in [0, -1] {
            count += enumerate_betti(d, e, 5).unwrap().len();
        }
    }
    let elapsed = t0.elapsed();
    ok &= elapsed.as_secs_f64() < 1.0;
    // every constructed example must appear among the candidates
    for data in [quadric(), cubic()] {
        let list = enumerate_betti(data.degree(), data.mf.e, 5).unwrap();
        ok &= list
            .iter()
            .any(|b| b.r == data.betti.r && sorted(&b.a) == sorted(&data.betti.a));
    }
    report(
        7,
        ok,
        &format!("unique candidate for d=2, {count} candidates for d<=5 in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_8_general_vanishing_probe() {
    let cd = cubic();
    let n = n_module(&cd).unwrap();
    let ok = general_vanishing_probe(&cd, &n).unwrap();
    report(
        8,
        ok,
        "every degree-3 monomial acts N_{-3} -> N_0, at least one nontrivially, F acts as zero",
    );
}

#[test]
fn criterion_9_randomized_properties() {
    let t0 = Instant::now();
    groebner_canonicality(1000);
    syzygy_certification(1000);
    exterior_square_functoriality(1000);
    euler_interpolation(1000);
    serre_duality_line_bundles(1000);
    report(
        9,
        true,
        &format!("5 property suites x 1000 seeded trials in {:.2?}", t0.elapsed()),
    );
}

// ---------------------------------------------------------------------------
// randomized property suites
// ---------------------------------------------------------------------------

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, deg: i64, field: FieldSpec) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in Monomial::all_of_degree(nvars, deg) {
            if rng.gen_range(0..3) == 0 {
                terms.push((m, field.from_i64(rng.gen_range(1..PRIME))));
            }
        }
        let p = Polynomial::from_terms(nvars, field, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn canonical_strings(gb: &[VecPoly], ncomps: usize) -> Vec<String> {
    let mut out: Vec<String> = gb
        .iter()
        .map(|g| {
            (0..ncomps)
                .map(|i| g.component(i).to_string())
                .collect::<Vec<_>>()
                .join(" | ")
        })
        .collect();
    out.sort();
    out
}

/// The reduced Groebner basis is a canonical form: invariant under permuting
/// and rescaling the input generators.
fn groebner_canonicality(trials: usize) {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for trial in 0..trials {
        let k = rng.gen_range(2..=3);
        let mut gens = Vec::new();
        for _ in 0..k {
            let d = rng.gen_range(1..=2);
            gens.push(VecPoly::from_components(&[random_form(&mut rng, 3, d, f)]));
        }
        let base = canonical_strings(&module_groebner(&gens, &[0], false).reduced, 1);
        let mut scrambled = gens.clone();
        scrambled.shuffle(&mut rng);
        let scrambled: Vec<VecPoly> = scrambled
            .iter()
            .map(|g| g.scale(&f.from_i64(rng.gen_range(1..PRIME))))
            .collect();
        let other = canonical_strings(&module_groebner(&scrambled, &[0], false).reduced, 1);
        assert_eq!(base, other, "groebner canonicality, trial {trial}");
    }
}

/// Syzygies certified two ways: every generator composes to zero, and at a
/// probe degree their span has exactly the kernel dimension predicted by
/// rank-nullity on the graded piece.
fn syzygy_certification(trials: usize) {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for trial in 0..trials {
        let k = rng.gen_range(2..=3);
        let degs: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
        let gens: Vec<VecPoly> = degs
            .iter()
            .map(|&d| {
                VecPoly::from_components(&[
                    random_form(&mut rng, 3, d, f),
                    random_form(&mut rng, 3, d, f),
                ])
            })
            .collect();
        let syz = syzygies_of(&gens, &[0, 0]);
        for s in &syz {
            let mut acc = VecPoly::zero(2, 3, f);
            for (j, g) in gens.iter().enumerate() {
                acc = acc.axpy_poly(&s.component(j), g);
            }
            assert!(acc.is_zero(), "syzygy does not compose to zero, trial {trial}");
        }
        let tprobe = degs.iter().max().unwrap() + 2;
        let source = GradedFreeModule::new(degs.clone());
        let gmap =
            GradedMap::from_columns(&gens, degs.clone(), GradedFreeModule::new(vec![0, 0]), 3, f);
        let nullity = free_dim(&source, 3, f, tprobe) - map_piece_rank(&gmap, tprobe);
        let sdegs: Vec<i64> = syz
            .iter()
            .map(|s| s.homogeneous_degree(&degs).unwrap_or(tprobe + 1))
            .collect();
        let span_rank = if syz.is_empty() {
            0
        } else {
            map_piece_rank(&GradedMap::from_columns(&syz, sdegs, source, 3, f), tprobe)
        };
        assert_eq!(span_rank, nullity, "syzygy span incomplete, trial {trial}");
    }
}

/// Functoriality of the exterior square: Lambda^2(AB) = Lambda^2(A)
/// Lambda^2(B), entrywise over random matrices of linear forms.
fn exterior_square_functoriality(trials: usize) {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    for trial in 0..trials {
        let sz = rng.gen_range(2..=4);
        let make = |lo: i64, rng: &mut ChaCha8Rng| {
            let rows: Vec<Vec<Polynomial>> = (0..sz)
                .map(|_| (0..sz).map(|_| random_form(rng, 3, 1, f)).collect())
                .collect();
            GradedMap::new(
                PolyMatrix::from_rows(rows, 3, f),
                GradedFreeModule::new(vec![lo + 1; sz]),
                GradedFreeModule::new(vec![lo; sz]),
            )
            .unwrap()
        };
        let a = make(0, &mut rng);
        let b = make(1, &mut rng);
        let ab = a.compose(&b).unwrap();
        let lhs = ab.exterior_square().unwrap();
        let rhs = a
            .exterior_square()
            .unwrap()
            .compose(&b.exterior_square().unwrap())
            .unwrap();
        assert!(
            lhs.matrix.sub(&rhs.matrix).is_zero(),
            "exterior square not functorial, trial {trial}"
        );
    }
}

/// The Hilbert polynomial read off a minimal resolution interpolates the
/// actual piece dimensions beyond the generator degrees, and the resolution
/// balances dimensions degree by degree.
fn euler_interpolation(trials: usize) {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(904);
    for trial in 0..trials {
        let k = rng.gen_range(1..=2);
        let polys: Vec<Polynomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_form(&mut rng, 3, d, f)
            })
            .collect();
        let degs: Vec<i64> = polys.iter().map(|p| p.total_degree().unwrap()).collect();
        let m = PresentedModule::from_presentation(
            GradedMap::new(
                PolyMatrix::from_rows(vec![polys], 3, f),
                GradedFreeModule::new(degs),
                GradedFreeModule::new(vec![0]),
            )
            .unwrap(),
        );
        let res = minimal_resolution(&m, None);
        assert!(res.complete && res.is_complex() && res.is_minimal());
        let maxgen = (0..=res.length())
            .flat_map(|i| res.free_module(i).gen_degrees.clone())
            .max()
            .unwrap();
        assert!(
            verify_resolution_dims(&m, &res, (0, maxgen + 2)),
            "resolution dims unbalanced, trial {trial}"
        );
        for t in maxgen..=maxgen + 2 {
            assert_eq!(
                res.hilbert_poly(t),
                piece_dim(&m, t) as i64,
                "hilbert polynomial mismatch at degree {t}, trial {trial}"
            );
        }
    }
}

/// Serre duality for line bundles on P^3: h^i(O(a)(k)) = h^{3-i}(O(-a)(-4-k)),
/// plus the closed-form h^0 as a cross-check.
fn serre_duality_line_bundles(trials: usize) {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(905);
    for trial in 0..trials {
        let a: i64 = rng.gen_range(-3..=3);
        let k: i64 = rng.gen_range(-8..=8);
        let c1 = CohomologyCtx::new(PresentedModule::free(
            GradedFreeModule::new(vec![-a]),
            4,
            f,
        ));
        let c2 = CohomologyCtx::new(PresentedModule::free(
            GradedFreeModule::new(vec![a]),
            4,
            f,
        ));
        for i in 0..=3 {
            assert_eq!(
                c1.sheaf_cohomology_dim(i, k),
                c2.sheaf_cohomology_dim(3 - i, -4 - k),
                "serre duality fails for a={a}, k={k}, i={i}, trial {trial}"
            );
        }
        let m = a + k;
        let expected_h0 = if m >= 0 {
            ((m + 1) * (m + 2) * (m + 3) / 6) as usize
        } else {
            0
        };
        assert_eq!(c1.sheaf_cohomology_dim(0, k), expected_h0);
    }
}
