//! Homogeneous ideals: reduced Groebner bases, normal forms, irrelevance,
//! smoothness of hypersurfaces and Krull dimension from leading terms.

use crate::error::Error;
use crate::field::FieldSpec;
use crate::modgb::{module_groebner, reduce_full, VecPoly};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct Ideal {
    pub gens: Vec<Polynomial>,
    pub nvars: usize,
    pub field: FieldSpec,
}

impl Ideal {
    /// Drops zero generators; every remaining generator must be homogeneous.
    pub fn new(gens: Vec<Polynomial>, nvars: usize, field: FieldSpec) -> Result<Ideal, Error> {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if g.nvars != nvars || g.field != field {
                return Err(Error::RingMismatch("ideal generator".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("generator {g}")));
            }
        }
        Ok(Ideal { gens, nvars, field })
    }
}

/// The unique reduced Groebner basis of an ideal under grevlex.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub basis: Vec<Polynomial>,
    pub nvars: usize,
    pub field: FieldSpec,
}

pub const MONOMIAL_ORDER: &str = "grevlex";

pub fn groebner(ideal: &Ideal) -> GroebnerBasis {
    let gens: Vec<VecPoly> = ideal
        .gens
        .iter()
        .map(|p| VecPoly::from_components(std::slice::from_ref(p)))
        .collect();
    let gb = module_groebner(&gens, &[0], false);
    GroebnerBasis {
        basis: gb.reduced.iter().map(|v| v.component(0)).collect(),
        nvars: ideal.nvars,
        field: ideal.field,
    }
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let basis: Vec<VecPoly> = gb
        .basis
        .iter()
        .map(|g| VecPoly::from_components(std::slice::from_ref(g)))
        .collect();
    let f = VecPoly::from_components(std::slice::from_ref(p));
    reduce_full(&f, &basis, false).0.component(0)
}

pub fn ideal_contains(p: &Polynomial, gb: &GroebnerBasis) -> bool {
    normal_form(p, gb).is_zero()
}

/// True iff the radical is the irrelevant maximal ideal, i.e. a power of every
/// variable lies in the ideal. Certified by the reduced basis: a pure power
/// `x_i^t` lies in the initial ideal exactly when some basis leading term is a
/// pure power of `x_i`.
pub fn is_irrelevant(ideal: &Ideal) -> bool {
    let gb = groebner(ideal);
    is_irrelevant_gb(&gb)
}

pub fn is_irrelevant_gb(gb: &GroebnerBasis) -> bool {
    'vars: for i in 0..gb.nvars {
        for g in &gb.basis {
            let (lm, _) = g.leading().expect("basis elements are nonzero");
            let pure = lm
                .exps
                .iter()
                .enumerate()
                .all(|(j, &e)| (j == i) || e == 0);
            if pure && lm.exps[i] > 0 {
                continue 'vars;
            }
            if lm.is_one() {
                continue 'vars; // unit ideal
            }
        }
        return false;
    }
    true
}

/// Krull dimension of `S/in(I)`: the largest set of variables avoided by every
/// leading term. This equals the dimension of `S/I` (cone dimension).
pub fn krull_dim(gb: &GroebnerBasis) -> i64 {
    let leads: Vec<&Monomial> = gb
        .basis
        .iter()
        .map(|g| g.leading().expect("nonzero").0)
        .collect();
    if leads.iter().any(|m| m.is_one()) {
        return -1; // unit ideal: the empty scheme
    }
    let n = gb.nvars;
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        // the variable set `mask` is independent if no lead is supported inside it
        let ok = leads.iter().all(|m| {
            m.exps
                .iter()
                .enumerate()
                .any(|(j, &e)| e > 0 && mask & (1 << j) == 0)
        });
        if ok {
            best = size;
        }
    }
    best as i64
}

/// Smoothness of the projective hypersurface `F = 0`: the Jacobian ideal
/// `(F, dF/dx_0, ..., dF/dx_n)` must be irrelevant.
pub fn smoothness_check(f: &Polynomial) -> Result<bool, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("hypersurface equation".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous("hypersurface equation".into()));
    }
    let mut gens = vec![f.clone()];
    for i in 0..f.nvars {
        gens.push(f.derivative(i));
    }
    let ideal = Ideal::new(gens, f.nvars, f.field)?;
    Ok(is_irrelevant(&ideal))
}

/// Checks that homogeneous `f, g, h` form a regular sequence: `S/(f,g,h)` has
/// cone dimension `nvars - 3`.
pub fn is_regular_sequence3(f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<bool, Error> {
    let nvars = f.nvars;
    let ideal = Ideal::new(vec![f.clone(), g.clone(), h.clone()], nvars, f.field)?;
    if ideal.gens.len() != 3 {
        return Ok(false); // a zero entry can never be regular
    }
    let gb = groebner(&ideal);
    Ok(krull_dim(&gb) == nvars as i64 - 3)
}
