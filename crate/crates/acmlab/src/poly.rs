//! Exact multivariate polynomials in canonical (sorted, collected) form.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::monomial::Monomial;

/// The degree report of `homogeneous_degree`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomDegree {
    /// Every term has this total degree.
    Degree(i64),
    /// The zero polynomial is homogeneous of every degree.
    Any,
    /// Terms of different total degrees are present.
    NonHomogeneous,
}

/// A polynomial over a fixed field in `nvars` variables. Terms are kept in
/// descending grevlex order with no zero coefficients and no duplicates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    pub nvars: usize,
    pub field: FieldSpec,
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: FieldSpec) -> Polynomial {
        Polynomial {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Polynomial {
        let field = c.field();
        if c.is_zero() {
            return Polynomial::zero(nvars, field);
        }
        Polynomial {
            nvars,
            field,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn one(nvars: usize, field: FieldSpec) -> Polynomial {
        Polynomial::constant(nvars, field.one())
    }

    pub fn variable(nvars: usize, field: FieldSpec, i: usize) -> Polynomial {
        Polynomial {
            nvars,
            field,
            terms: vec![(Monomial::var(nvars, i), field.one())],
        }
    }

    pub fn monomial(nvars: usize, field: FieldSpec, m: Monomial, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(nvars, field);
        }
        Polynomial {
            nvars,
            field,
            terms: vec![(m, c)],
        }
    }

    /// Canonicalizes an arbitrary term list: sorts, merges duplicates, drops zeros.
    pub fn from_terms(
        nvars: usize,
        field: FieldSpec,
        mut terms: Vec<(Monomial, Scalar)>,
    ) -> Polynomial {
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Polynomial {
            nvars,
            field,
            terms: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero constant, i.e. a unit of the graded ring.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneous_degree(&self) -> HomDegree {
        let mut it = self.terms.iter();
        let first = match it.next() {
            None => return HomDegree::Any,
            Some((m, _)) => m.degree(),
        };
        for (m, _) in it {
            if m.degree() != first {
                return HomDegree::NonHomogeneous;
            }
        }
        HomDegree::Degree(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneous_degree(), HomDegree::NonHomogeneous)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), Error> {
        if self.nvars != other.nvars || self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "({} vars over {}) vs ({} vars over {})",
                self.nvars, self.field, other.nvars, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp_grevlex(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.field);
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.field);
        }
        Polynomial {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars, self.field);
        }
        let mut acc: Vec<(Monomial, Scalar)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.push((m1.mul(m2), c1.mul(c2)));
            }
        }
        Polynomial::from_terms(self.nvars, self.field, acc)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exps[i] = e - 1;
            let coeff = c.mul(&self.field.from_i64(e as i64));
            if !coeff.is_zero() {
                terms.push((m2, coeff));
            }
        }
        Polynomial::from_terms(self.nvars, self.field, terms)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            if m.is_one() {
                s.push_str(&abs.render());
            } else if abs.is_one() {
                s.push_str(&m.render());
            } else {
                s.push_str(&abs.render());
                s.push('*');
                s.push_str(&m.render());
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
