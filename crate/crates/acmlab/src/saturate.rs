//! Saturation with respect to the irrelevant maximal ideal, and finite-length
//! detection for presented modules.

use crate::homalg::{GradedMap, PresentedModule};
use crate::modgb::{in_submodule, module_groebner, syzygies_of, ModTerm, VecPoly};
use crate::poly::Polynomial;

/// True iff the module is annihilated by a power of `(x_0..x_{n})`, read off
/// a module Groebner basis: in every nonzero cover component the initial
/// submodule must contain a pure power of every variable.
pub fn is_finite_length(m: &PresentedModule) -> bool {
    let nvars = m.nvars();
    let rank = m.pres.target.rank();
    if rank == 0 {
        return true;
    }
    let gens = m.pres.columns();
    let gb = module_groebner(&gens, &m.pres.target.gen_degrees, false);
    let leads: Vec<&ModTerm> = gb.reduced.iter().map(|g| g.lead()).collect();
    for comp in 0..rank {
        if leads
            .iter()
            .any(|l| l.comp == comp && l.mono.is_one())
        {
            continue; // component killed outright
        }
        for v in 0..nvars {
            let has_power = leads.iter().any(|l| {
                l.comp == comp
                    && l.mono.exps[v] > 0
                    && l.mono.exps.iter().enumerate().all(|(j, &e)| j == v || e == 0)
            });
            if !has_power {
                return false;
            }
        }
    }
    true
}

/// Generators of the colon submodule `(N : f)` inside the free cover.
fn colon_by(
    gens: &[VecPoly],
    cover_degs: &[i64],
    rank: usize,
    f: &Polynomial,
) -> Vec<VecPoly> {
    let nvars = f.nvars;
    let field = f.field;
    let mut combined: Vec<VecPoly> = (0..rank)
        .map(|i| {
            VecPoly::from_terms(
                rank,
                nvars,
                field,
                f.terms
                    .iter()
                    .map(|(mo, c)| ModTerm {
                        comp: i,
                        mono: mo.clone(),
                        coeff: c.clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    combined.extend(gens.iter().cloned());
    let syz = syzygies_of(&combined, cover_degs);
    let mut colon: Vec<VecPoly> = Vec::new();
    for s in syz {
        let a = VecPoly::from_terms(
            rank,
            nvars,
            field,
            s.terms.iter().filter(|t| t.comp < rank).cloned().collect(),
        );
        if !a.is_zero() {
            colon.push(a);
        }
    }
    colon
}

/// Iterates `(N : f)` to the stable value `(N : f^infinity)`.
fn saturate_by(gens: Vec<VecPoly>, cover_degs: &[i64], rank: usize, f: &Polynomial) -> Vec<VecPoly> {
    let mut gens = gens;
    loop {
        let colon = colon_by(&gens, cover_degs, rank, f);
        let gb = module_groebner(&gens, cover_degs, false);
        if colon.iter().all(|a| in_submodule(a, &gb.reduced)) {
            return gens;
        }
        gens = colon;
    }
}

/// Intersection of two submodules of a common free cover: project the
/// syzygies of `[A | B]` through `A`.
fn intersect(
    a: &[VecPoly],
    b: &[VecPoly],
    cover_degs: &[i64],
    rank: usize,
    nvars: usize,
    field: crate::field::FieldSpec,
) -> Vec<VecPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut combined: Vec<VecPoly> = a.to_vec();
    combined.extend(b.iter().cloned());
    let syz = syzygies_of(&combined, cover_degs);
    let mut out = Vec::new();
    for s in syz {
        let mut v = VecPoly::zero(rank, nvars, field);
        for (j, col) in a.iter().enumerate() {
            let coeff = s.component(j);
            if !coeff.is_zero() {
                v = v.axpy_poly(&coeff, col);
            }
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

/// Saturates the relation submodule by the irrelevant ideal, returning the
/// saturated module `F_0 / N^sat` together with a degree bound from which on
/// its graded pieces agree with the input module's.
///
/// `N^sat = (N : m^infinity)` is the intersection over the variables of the
/// single-variable saturations `(N : x_i^infinity)`: an element killed by a
/// power of each variable is killed by a power of the whole maximal ideal.
/// Saturating by the product of the variables instead would be wrong (it also
/// deletes components supported on coordinate hyperplanes).
pub fn saturate_module(m: &PresentedModule) -> (PresentedModule, i64) {
    let nvars = m.nvars();
    let field = m.field();
    let cover = m.pres.target.clone();
    let rank = cover.rank();
    let cover_degs = cover.gen_degrees.clone();

    let base: Vec<VecPoly> = m.pres.columns().into_iter().filter(|c| !c.is_zero()).collect();
    let mut gens: Option<Vec<VecPoly>> = None;
    for v in 0..nvars {
        let xv = Polynomial::variable(nvars, field, v);
        let sat_v = saturate_by(base.clone(), &cover_degs, rank, &xv);
        gens = Some(match gens {
            None => sat_v,
            Some(acc) => intersect(&acc, &sat_v, &cover_degs, rank, nvars, field),
        });
    }
    let gens = gens.unwrap_or_default();

    let degs: Vec<i64> = gens
        .iter()
        .map(|g| g.homogeneous_degree(&cover_degs).expect("homogeneous"))
        .collect();
    let sat = PresentedModule::from_presentation(GradedMap::from_columns(
        &gens,
        degs.clone(),
        cover,
        nvars,
        field,
    ));

    // H^0_m(M) = N^sat / N is finite length and generated in degrees at most
    // max(saturated relation degrees); once its piece vanishes at or past that
    // bound it vanishes in every higher degree.
    let torsion = quotient_of_submodules(&sat, m);
    let start = degs.iter().copied().max().unwrap_or(0);
    let mut bound = start;
    while crate::graded::piece_dim(&torsion, bound) > 0 {
        bound += 1;
    }
    // tighten: below the generation bound vanishing is checked piece by piece
    let floor = cover_degs.iter().copied().min().unwrap_or(0);
    while bound > floor && crate::graded::piece_dim(&torsion, bound - 1) == 0 {
        bound -= 1;
    }
    (sat, bound)
}

/// Presents `N'/N` for submodules `N <= N'` of a common free cover, where the
/// modules are given as `F/N'` and `F/N`.
fn quotient_of_submodules(smaller_quot: &PresentedModule, bigger_quot: &PresentedModule) -> PresentedModule {
    bigger_quot.submodule_from_cover(&smaller_quot.pres)
}
