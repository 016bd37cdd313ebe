//! Buchberger engine over free modules, with transform tracking and syzygies.
//!
//! Elements of a free module `S^c` are flat term lists (component, monomial,
//! coefficient) under a term-over-position order: grevlex on monomials, lower
//! component wins ties. Ideals are the one-component case.
//!
//! The engine records, for every basis element, its representation over the
//! original generators. S-pairs that reduce to zero then yield syzygies of the
//! original generators directly; together with the `e_j - sum U_kj g_k`
//! syzygies from dividing the inputs by the finished basis, these generate the
//! full syzygy module (Schreyer).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

fn cmp_key(a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
    a.0.cmp_grevlex(b.0).then(b.1.cmp(&a.1))
}

/// An element of a free module `S^ncomps`, terms in strictly descending order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VecPoly {
    pub ncomps: usize,
    pub nvars: usize,
    pub field: FieldSpec,
    pub terms: Vec<ModTerm>,
}

impl VecPoly {
    pub fn zero(ncomps: usize, nvars: usize, field: FieldSpec) -> VecPoly {
        VecPoly {
            ncomps,
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn unit(ncomps: usize, nvars: usize, field: FieldSpec, comp: usize) -> VecPoly {
        VecPoly {
            ncomps,
            nvars,
            field,
            terms: vec![ModTerm {
                comp,
                mono: Monomial::one(nvars),
                coeff: field.one(),
            }],
        }
    }

    pub fn from_terms(
        ncomps: usize,
        nvars: usize,
        field: FieldSpec,
        mut terms: Vec<ModTerm>,
    ) -> VecPoly {
        terms.sort_by(|a, b| cmp_key((&b.mono, b.comp), (&a.mono, a.comp)));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coeff = last.coeff.add(&t.coeff);
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !t.coeff.is_zero() {
                out.push(t);
            }
        }
        VecPoly {
            ncomps,
            nvars,
            field,
            terms: out,
        }
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_components(comps: &[Polynomial]) -> VecPoly {
        let ncomps = comps.len();
        assert!(ncomps > 0);
        let nvars = comps[0].nvars;
        let field = comps[0].field;
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(ModTerm {
                    comp: i,
                    mono: m.clone(),
                    coeff: c.clone(),
                });
            }
        }
        VecPoly::from_terms(ncomps, nvars, field, terms)
    }

    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.comp == i)
            .map(|t| (t.mono.clone(), t.coeff.clone()))
            .collect();
        Polynomial::from_terms(self.nvars, self.field, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &ModTerm {
        &self.terms[0]
    }

    pub fn scale(&self, c: &Scalar) -> VecPoly {
        if c.is_zero() {
            return VecPoly::zero(self.ncomps, self.nvars, self.field);
        }
        VecPoly {
            ncomps: self.ncomps,
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coeff: t.coeff.mul(c),
                })
                .collect(),
        }
    }

    /// `self + c * x^m * other`, the workhorse of reduction.
    pub fn axpy(&self, c: &Scalar, m: &Monomial, other: &VecPoly) -> VecPoly {
        debug_assert_eq!(self.ncomps, other.ncomps);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let ot = &other.terms[j];
            let om = ot.mono.mul(m);
            match cmp_key(
                (&self.terms[i].mono, self.terms[i].comp),
                (&om, ot.comp),
            ) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(ModTerm {
                        comp: ot.comp,
                        mono: om,
                        coeff: ot.coeff.mul(c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = self.terms[i].coeff.add(&ot.coeff.mul(c));
                    if !coeff.is_zero() {
                        out.push(ModTerm {
                            comp: ot.comp,
                            mono: om,
                            coeff,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            let ot = &other.terms[j];
            out.push(ModTerm {
                comp: ot.comp,
                mono: ot.mono.mul(m),
                coeff: ot.coeff.mul(c),
            });
            j += 1;
        }
        VecPoly {
            ncomps: self.ncomps,
            nvars: self.nvars,
            field: self.field,
            terms: out,
        }
    }

    pub fn add(&self, other: &VecPoly) -> VecPoly {
        self.axpy(&self.field.one(), &Monomial::one(self.nvars), other)
    }

    pub fn sub(&self, other: &VecPoly) -> VecPoly {
        self.axpy(&self.field.one().neg(), &Monomial::one(self.nvars), other)
    }

    /// `self + p * other` for a ring polynomial `p`.
    pub fn axpy_poly(&self, p: &Polynomial, other: &VecPoly) -> VecPoly {
        let mut acc = self.clone();
        for (m, c) in &p.terms {
            acc = acc.axpy(c, m, other);
        }
        acc
    }

    /// The common degree of a homogeneous vector, given generator degrees of
    /// the ambient free module. Panics in debug builds on inhomogeneity.
    pub fn homogeneous_degree(&self, comp_degrees: &[i64]) -> Option<i64> {
        let mut deg = None;
        for t in &self.terms {
            let d = t.mono.degree() + comp_degrees[t.comp];
            match deg {
                None => deg = Some(d),
                Some(d0) => debug_assert_eq!(d0, d, "inhomogeneous vector"),
            }
        }
        deg
    }
}

/// Term key ordering a [`BTreeMap`] accumulator by the module term order
/// (greatest term last, so `pop_last` yields the current lead).
#[derive(Clone, PartialEq, Eq, Debug)]
struct TermKey {
    mono: Monomial,
    comp: usize,
}

impl Ord for TermKey {
    fn cmp(&self, other: &TermKey) -> Ordering {
        cmp_key((&self.mono, self.comp), (&other.mono, other.comp))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &TermKey) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type TermMap = std::collections::BTreeMap<TermKey, Scalar>;

/// Adds `c * x^m * v` into a term accumulator; `skip` leading terms of `v`
/// are omitted (used when the lead is known to cancel).
fn add_scaled(map: &mut TermMap, c: &Scalar, m: &Monomial, v: &VecPoly, skip: usize) {
    for t in v.terms.iter().skip(skip) {
        let key = TermKey {
            mono: t.mono.mul(m),
            comp: t.comp,
        };
        match map.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let next = e.get().add(&t.coeff.mul(c));
                if next.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = next;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                let val = t.coeff.mul(c);
                if !val.is_zero() {
                    e.insert(val);
                }
            }
        }
    }
}

fn map_of(v: &VecPoly) -> TermMap {
    v.terms
        .iter()
        .map(|t| {
            (
                TermKey {
                    mono: t.mono.clone(),
                    comp: t.comp,
                },
                t.coeff.clone(),
            )
        })
        .collect()
}

fn map_into_vecpoly(map: TermMap, ncomps: usize, nvars: usize, field: FieldSpec) -> VecPoly {
    let mut terms: Vec<ModTerm> = map
        .into_iter()
        .map(|(k, c)| ModTerm {
            comp: k.comp,
            mono: k.mono,
            coeff: c,
        })
        .collect();
    terms.reverse(); // BTreeMap ascends; VecPoly stores descending
    VecPoly {
        ncomps,
        nvars,
        field,
        terms,
    }
}

/// Full normal form against `basis`. Returns the remainder and, when
/// `track` is set, the quotients: `f = rem + sum_k quot[k] * basis[k]`.
pub fn reduce_full(
    f: &VecPoly,
    basis: &[VecPoly],
    track: bool,
) -> (VecPoly, Vec<Vec<(Monomial, Scalar)>>) {
    let mut quot: Vec<Vec<(Monomial, Scalar)>> = if track {
        vec![Vec::new(); basis.len()]
    } else {
        Vec::new()
    };
    // reducers indexed by lead component to avoid scanning the whole basis
    let ncomps = f.ncomps;
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); ncomps];
    for (k, g) in basis.iter().enumerate() {
        if !g.is_zero() {
            by_comp[g.lead().comp].push(k);
        }
    }
    let mut work = map_of(f);
    let mut done: Vec<ModTerm> = Vec::new(); // collected in descending order
    while let Some((key, c)) = work.pop_last() {
        let mut hit = None;
        for &k in &by_comp[key.comp] {
            if basis[k].lead().mono.divides(&key.mono) {
                hit = Some(k);
                break;
            }
        }
        match hit {
            None => done.push(ModTerm {
                comp: key.comp,
                mono: key.mono,
                coeff: c,
            }),
            Some(k) => {
                let g = &basis[k];
                let lt = g.lead();
                let cc = c.div(&lt.coeff).unwrap();
                let m = lt.mono.div_into(&key.mono).unwrap();
                add_scaled(&mut work, &cc.neg(), &m, g, 1);
                if track {
                    quot[k].push((m, cc));
                }
            }
        }
    }
    (
        VecPoly {
            ncomps,
            nvars: f.nvars,
            field: f.field,
            terms: done,
        },
        quot,
    )
}

pub struct GbResult {
    /// The unique reduced basis: monic, interreduced, deterministically sorted.
    pub reduced: Vec<VecPoly>,
    /// Every basis element produced during the run (for transform math).
    pub full: Vec<VecPoly>,
    /// `full[k] = sum transform[k]` over the original generators.
    pub transform: Vec<VecPoly>,
    /// Generators of the syzygy module of the original generators.
    pub syzygies: Vec<VecPoly>,
}

/// Buchberger with degree-first pair selection, the chain criterion, and the
/// product criterion in the one-component case.
///
/// `comp_degrees` are the generator degrees of the ambient free module (used
/// only to order pairs by true internal degree; pass zeros if unknown).
pub fn module_groebner(
    gens: &[VecPoly],
    comp_degrees: &[i64],
    want_syz: bool,
) -> GbResult {
    module_groebner_opts(gens, comp_degrees, want_syz, true, true)
}

/// As [`module_groebner`], with the expensive by-products switchable:
/// `want_transform` keeps representations over the original generators
/// (implied by `want_syz`), `want_reduced` interreduces at the end.
pub fn module_groebner_opts(
    gens: &[VecPoly],
    comp_degrees: &[i64],
    want_syz: bool,
    want_transform: bool,
    want_reduced: bool,
) -> GbResult {
    let want_transform = want_transform || want_syz;
    assert!(!gens.is_empty() || true);
    let ngens = gens.len();
    let (ncomps, nvars, field) = match gens.first() {
        Some(g) => (g.ncomps, g.nvars, g.field),
        None => {
            return GbResult {
                reduced: Vec::new(),
                full: Vec::new(),
                transform: Vec::new(),
                syzygies: Vec::new(),
            }
        }
    };

    let mut basis: Vec<VecPoly> = Vec::new();
    let mut reps: Vec<VecPoly> = Vec::new();
    let mut syzygies: Vec<VecPoly> = Vec::new();

    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            if want_syz {
                syzygies.push(VecPoly::unit(ngens, nvars, field, j));
            }
            continue;
        }
        let c = g.lead().coeff.inv().unwrap();
        basis.push(g.scale(&c));
        if want_transform {
            reps.push(VecPoly::unit(ngens, nvars, field, j).scale(&c));
        }
    }

    // pending pairs keyed for deterministic degree-first selection
    let mut queue: BTreeSet<(i64, Vec<u16>, usize, usize)> = BTreeSet::new();

    let add_pairs = |queue: &mut BTreeSet<(i64, Vec<u16>, usize, usize)>,
                         basis: &[VecPoly],
                         new_idx: usize| {
        let lt_new = basis[new_idx].lead();
        for i in 0..new_idx {
            let lt = basis[i].lead();
            if lt.comp != lt_new.comp {
                continue;
            }
            let lcm = lt.mono.lcm(&lt_new.mono);
            let deg = lcm.degree() + comp_degrees.get(lt.comp).copied().unwrap_or(0);
            queue.insert((deg, lcm.exps.to_vec(), i, new_idx));
        }
    };

    for k in 0..basis.len() {
        add_pairs(&mut queue, &basis, k);
    }

    let log = std::env::var("ACMLAB_GB_LOG").is_ok();
    let mut processed = 0u64;
    let mut skipped = 0u64;
    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        processed += 1;
        if log && processed % 512 == 0 {
            eprintln!(
                "gb: pairs={processed} skipped={skipped} basis={} queue={} deg={}",
                basis.len(),
                queue.len(),
                entry.0
            );
        }
        let (_, lcm_exps, i, j) = entry;
        let lcm = Monomial {
            exps: lcm_exps.iter().copied().collect(),
        };
        let (lt_i, lt_j) = (basis[i].lead().clone(), basis[j].lead().clone());

        // product criterion (ideals only: invalid for several components)
        if ncomps == 1 && lt_i.mono.is_coprime(&lt_j.mono) {
            if want_syz {
                // the Schreyer syzygy of a coprime pair is the Koszul syzygy
                let gi = basis[i].clone();
                let gj = basis[j].clone();
                let mut s = VecPoly::zero(ngens, nvars, field);
                for t in &gj.terms {
                    s = s.axpy(&t.coeff, &t.mono, &reps[i]);
                }
                for t in &gi.terms {
                    s = s.axpy(&t.coeff.neg(), &t.mono, &reps[j]);
                }
                if !s.is_zero() {
                    syzygies.push(s);
                }
            }
            continue;
        }

        // chain criterion, strict version: a witness k with lt_k | lcm_ij and
        // both sub-lcms proper divisors makes the pair superfluous. Requiring
        // k > min(i, j) also keeps the Schreyer syzygy of the skipped pair
        // redundant: its lead (lcm_ij / lt_min) e_min is a multiple of the
        // kept pair (min, k)'s lead, so the surviving syzygies' leads still
        // generate the whole initial module and hence the syzygy module.
        let mut skip = false;
        for (k, g) in basis.iter().enumerate() {
            if k <= i.min(j) || k == i || k == j {
                continue;
            }
            let lt = g.lead();
            if lt.comp != lt_i.comp || !lt.mono.divides(&lcm) {
                continue;
            }
            let lcm_ik = lt_i.mono.lcm(&lt.mono);
            let lcm_kj = lt_j.mono.lcm(&lt.mono);
            if lcm_ik != lcm && lcm_kj != lcm {
                skip = true;
                break;
            }
        }
        if skip {
            skipped += 1;
            continue;
        }

        // S-vector (leads are monic)
        let u = lt_i.mono.div_into(&lcm).unwrap();
        let v = lt_j.mono.div_into(&lcm).unwrap();
        let one = field.one();
        let mut s = VecPoly::zero(ncomps, nvars, field).axpy(&one, &u, &basis[i]);
        s = s.axpy(&one.neg(), &v, &basis[j]);
        let (rem, quot) = reduce_full(&s, &basis, want_transform);
        let mut rep = VecPoly::zero(ngens, nvars, field);
        if want_transform {
            let mut acc = TermMap::new();
            add_scaled(&mut acc, &one, &u, &reps[i], 0);
            add_scaled(&mut acc, &one.neg(), &v, &reps[j], 0);
            for (k, terms) in quot.iter().enumerate() {
                for (m, c) in terms {
                    add_scaled(&mut acc, &c.neg(), m, &reps[k], 0);
                }
            }
            rep = map_into_vecpoly(acc, ngens, nvars, field);
        }

        if rem.is_zero() {
            if want_syz && !rep.is_zero() {
                syzygies.push(rep);
            }
        } else {
            let c = rem.lead().coeff.inv().unwrap();
            basis.push(rem.scale(&c));
            if want_transform {
                reps.push(rep.scale(&c));
            }
            let new_idx = basis.len() - 1;
            add_pairs(&mut queue, &basis, new_idx);
        }
    }

    // syzygies from expressing the original generators over the finished basis
    if want_syz {
        for (j, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue; // already emitted e_j
            }
            let (rem, quot) = reduce_full(g, &basis, true);
            assert!(rem.is_zero(), "generator does not reduce over its own basis");
            let mut acc = map_of(&VecPoly::unit(ngens, nvars, field, j));
            for (k, terms) in quot.iter().enumerate() {
                for (m, c) in terms {
                    add_scaled(&mut acc, &c.neg(), m, &reps[k], 0);
                }
            }
            let s = map_into_vecpoly(acc, ngens, nvars, field);
            if !s.is_zero() {
                syzygies.push(s);
            }
        }
    }

    let reduced = if want_reduced {
        interreduce(&basis)
    } else {
        Vec::new()
    };

    GbResult {
        reduced,
        full: basis,
        transform: reps,
        syzygies,
    }
}

/// Interreduces a Groebner basis to the unique reduced basis.
fn interreduce(basis: &[VecPoly]) -> Vec<VecPoly> {
    let mut keep: Vec<usize> = Vec::new();
    'outer: for (k, g) in basis.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let lt = g.lead();
        for (other, h) in basis.iter().enumerate() {
            if other == k || h.is_zero() {
                continue;
            }
            let lo = h.lead();
            if lo.comp == lt.comp && lo.mono.divides(&lt.mono) {
                // strict divisor, or equal lead with smaller index, supersedes
                if lo.mono != lt.mono || other < k {
                    continue 'outer;
                }
            }
        }
        keep.push(k);
    }
    let kept: Vec<VecPoly> = keep.iter().map(|&k| basis[k].clone()).collect();
    let mut out = Vec::with_capacity(kept.len());
    for (k, g) in kept.iter().enumerate() {
        let others: Vec<VecPoly> = kept
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, h)| h.clone())
            .collect();
        let (rem, _) = reduce_full(g, &others, false);
        if !rem.is_zero() {
            let c = rem.lead().coeff.inv().unwrap();
            out.push(rem.scale(&c));
        }
    }
    out.sort_by(|a, b| {
        let la = a.lead();
        let lb = b.lead();
        cmp_key((&lb.mono, lb.comp), (&la.mono, la.comp))
    });
    out
}

/// Generators of `{ s : sum s_j gens_j = 0 }`, as vectors over the generator
/// index set. Degrees of the output are with respect to the degrees of the
/// generators themselves.
pub fn syzygies_of(gens: &[VecPoly], comp_degrees: &[i64]) -> Vec<VecPoly> {
    module_groebner_opts(gens, comp_degrees, true, true, false).syzygies
}

/// Expresses each target over `gens` (targets must lie in the submodule the
/// generators span). Returns the coordinate vectors, `targets[t] = sum out[t]`.
pub fn lift_over(gens: &[VecPoly], targets: &[VecPoly], comp_degrees: &[i64]) -> Option<Vec<VecPoly>> {
    let gb = module_groebner_opts(gens, comp_degrees, false, true, false);
    let ngens = gens.len();
    let (nvars, field) = match gens.first() {
        Some(g) => (g.nvars, g.field),
        None => return if targets.iter().all(|t| t.is_zero()) {
            Some(targets.iter().map(|_| VecPoly::zero(0, 0, FieldSpec::Q)).collect())
        } else {
            None
        },
    };
    // coordinates of each full-basis element over the originals
    let reps = &gb.transform;
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let (rem, quot) = reduce_full(t, &gb.full, true);
        if !rem.is_zero() {
            return None;
        }
        let mut acc = TermMap::new();
        for (k, terms) in quot.iter().enumerate() {
            for (m, c) in terms {
                add_scaled(&mut acc, c, m, &reps[k], 0);
            }
        }
        out.push(map_into_vecpoly(acc, ngens, nvars, field));
    }
    Some(out)
}

/// Membership of `f` in the submodule spanned by a reduced basis.
pub fn in_submodule(f: &VecPoly, reduced: &[VecPoly]) -> bool {
    reduce_full(f, reduced, false).0.is_zero()
}
