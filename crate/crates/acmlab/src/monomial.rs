//! Dense-exponent monomials with the graded reverse lexicographic order.

use std::cmp::Ordering;

use smallvec::SmallVec;

/// A monomial in `nvars` variables, stored as a dense exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn var_pow(nvars: usize, i: usize, e: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| (*a).max(*b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison: higher total degree wins; on
    /// equal degree the monomial with the smaller exponent at the last
    /// differing variable is larger.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{i}")),
                _ => parts.push(format!("x{i}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Enumerates all monomials of total degree `d` in `nvars` variables, in
    /// descending grevlex order. Returns an empty list for negative `d`.
    pub fn all_of_degree(nvars: usize, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut current = vec![0u16; nvars];
        fn rec(nvars: usize, pos: usize, remaining: u16, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if pos == nvars - 1 {
                current[pos] = remaining;
                out.push(Monomial {
                    exps: current.iter().copied().collect(),
                });
                return;
            }
            for e in (0..=remaining).rev() {
                current[pos] = e;
                rec(nvars, pos + 1, remaining - e, current, out);
            }
            current[pos] = 0;
        }
        rec(nvars, 0, d as u16, &mut current, &mut out);
        out.sort_by(|a, b| b.cmp_grevlex(a));
        out
    }
}
