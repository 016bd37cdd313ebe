//! Exact coefficient fields: the rationals and prime fields of odd characteristic.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which coefficient field a computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rational numbers, arbitrary precision.
    Q,
    /// The prime field of odd characteristic `p`.
    Fp(u64),
}

impl FieldSpec {
    /// Parses `q` or `fp:<odd prime>`.
    pub fn parse(s: &str) -> Result<FieldSpec, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::FieldSpec(format!("bad prime in field spec `{s}`")))?;
            if p == 2 || !is_prime_u64(p) {
                return Err(Error::FieldSpec(format!("{p} is not an odd prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::FieldSpec(format!(
            "unknown field spec `{s}` (expected `q` or `fp:<odd prime>`)"
        )))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: r, p: *p }
            }
        }
    }

    /// Builds `num/den` in this field. Fails on zero denominator (and on a
    /// denominator divisible by `p` over a prime field).
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Q => Ok(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Fp(p) => {
                let pm = BigInt::from(*p);
                let n = num.mod_floor_u64(&pm);
                let d = den.mod_floor_u64(&pm);
                let num_s = Scalar::Fp { v: n, p: *p };
                let den_s = Scalar::Fp { v: d, p: *p };
                num_s.div(&den_s)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "q"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let r = self.mod_floor(p);
        let (_, digits) = r.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue exceeds u64"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator (enforced by `BigRational`); prime-field residues lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                let s = a + b;
                Scalar::Fp {
                    v: if s >= *p { s - p } else { s },
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp {
                    v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Q(a) => Ok(Scalar::Q(a.recip())),
            Scalar::Fp { v, p } => Ok(Scalar::Fp {
                v: mod_pow(*v, p - 2, *p),
                p: *p,
            }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(&other.inv()?))
    }

    /// Renders the coefficient the way the polynomial grammar reads it back:
    /// `n` or `n/d` over the rationals, the canonical residue over a prime field.
    pub fn render(&self) -> String {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => format!("{v}"),
        }
    }

    /// True for rationals with negative numerator (used by the printer); prime
    /// field residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Q);
        assert_eq!(FieldSpec::parse("fp:32003").unwrap(), FieldSpec::Fp(32003));
        assert!(FieldSpec::parse("fp:2").is_err());
        assert!(FieldSpec::parse("fp:32004").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::Fp(7);
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(a.add(&b), f.from_i64(1));
        assert_eq!(a.mul(&b), f.from_i64(1));
        assert_eq!(a.inv().unwrap(), f.from_i64(5));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
    }

    #[test]
    fn rational_ratio_lowest_terms() {
        let f = FieldSpec::Q;
        let s = f
            .from_ratio(&BigInt::from(4), &BigInt::from(-6))
            .unwrap();
        assert_eq!(s.render(), "-2/3");
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }

    #[test]
    fn fp_ratio_literal() {
        let f = FieldSpec::Fp(7);
        // 3/4 = 3 * 4^{-1} = 3 * 2 = 6 mod 7
        let s = f.from_ratio(&BigInt::from(3), &BigInt::from(4)).unwrap();
        assert_eq!(s, f.from_i64(6));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(32003));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(32001));
        assert!(is_prime_u64(1_000_000_007));
    }
}
