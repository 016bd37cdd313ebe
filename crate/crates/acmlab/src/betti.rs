//! Enumeration of the finitely many twist sequences a rank-two ACM bundle on
//! a degree-`d` hypersurface can have.
//!
//! With `F_0 = O(a_1) + ... + O(a_r)` normalized to `e in {0, -1}`, the
//! constraints are:
//!
//! * `2 < r <= 2d`
//! * `2 sum a_i = 2d + r(e - d)` (the determinant of the presentation matrix
//!   is a scalar times `F^2`)
//! * `a_1 <= (e + d - 3) / 2`
//! * `-a_r + e - d <= a_1`
//! * every off-diagonal entry degree `a_i + a_j + d - e >= 1` (a minimal
//!   presentation has no constant entries; the diagonal of a skew matrix is
//!   zero and carries no constraint)

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BettiSequence {
    pub r: usize,
    pub e: i64,
    /// Non-increasing twists `a_1 >= ... >= a_r`.
    pub a: Vec<i64>,
}

impl BettiSequence {
    /// Checks every constraint against a hypersurface degree `d`; returns the
    /// violated constraint's description, if any.
    pub fn violation(&self, d: i64) -> Option<String> {
        let r = self.r as i64;
        if self.a.len() != self.r {
            return Some("length of a differs from r".into());
        }
        if r <= 2 || r > 2 * d {
            return Some(format!("r = {r} outside 2 < r <= {}", 2 * d));
        }
        if self.a.windows(2).any(|w| w[0] < w[1]) {
            return Some("a is not non-increasing".into());
        }
        let sum: i64 = self.a.iter().sum();
        if 2 * sum != 2 * d + r * (self.e - d) {
            return Some(format!(
                "2*sum(a) = {} but the determinant constraint needs {}",
                2 * sum,
                2 * d + r * (self.e - d)
            ));
        }
        let a1 = self.a[0];
        let ar = self.a[self.r - 1];
        if 2 * a1 > self.e + d - 3 {
            return Some(format!("a_1 = {a1} exceeds (e+d-3)/2"));
        }
        if -ar + self.e - d > a1 {
            return Some(format!("-a_r + e - d = {} exceeds a_1", -ar + self.e - d));
        }
        for i in 0..self.r {
            for j in 0..self.r {
                if i != j && self.a[i] + self.a[j] + d - self.e < 1 {
                    return Some(format!(
                        "entry degree a_{} + a_{} + d - e = {} below 1",
                        i + 1,
                        j + 1,
                        self.a[i] + self.a[j] + d - self.e
                    ));
                }
            }
        }
        None
    }

    pub fn is_admissible(&self, d: i64) -> bool {
        self.violation(d).is_none()
    }

    /// The constraints met with equality — the ones that pin this candidate.
    pub fn binding_constraints(&self, d: i64) -> Vec<String> {
        let mut out = Vec::new();
        let r = self.r as i64;
        if r == 2 * d {
            out.push("r = 2d".to_string());
        }
        if 2 * self.a[0] == self.e + d - 3 {
            out.push("2 a_1 = e + d - 3".to_string());
        }
        let ar = self.a[self.r - 1];
        if -ar + self.e - d == self.a[0] {
            out.push("-a_r + e - d = a_1".to_string());
        }
        let min_pair = if self.r >= 2 {
            self.a[self.r - 2] + ar
        } else {
            0
        };
        if self.r >= 2 && min_pair + d - self.e == 1 {
            out.push("smallest entry degree = 1".to_string());
        }
        out
    }
}

/// The complete finite set of admissible sequences for degree `d` and
/// normalization `e`, in deterministic (r, lexicographic) order.
pub fn enumerate_betti(d: i64, e: i64, n: i64) -> Result<Vec<BettiSequence>, Error> {
    if d < 1 {
        return Err(Error::Precondition(format!("degree d = {d} must be >= 1")));
    }
    if e != 0 && e != -1 {
        return Err(Error::Precondition(format!(
            "normalization e = {e} must be 0 or -1"
        )));
    }
    if n < 4 {
        return Err(Error::UnsupportedAmbient(n));
    }
    let mut out = Vec::new();
    // a_1 <= hi; pair constraint with a_1 bounds every entry below
    let hi = (e + d - 3).div_euclid(2);
    let lo = 1 - d + e - hi;
    if lo > hi {
        return Ok(out);
    }
    for r in 3..=(2 * d) as usize {
        let twice_sum = 2 * d + r as i64 * (e - d);
        if twice_sum % 2 != 0 {
            continue;
        }
        let target = twice_sum / 2;
        let mut prefix = Vec::with_capacity(r);
        descend(r, target, hi, lo, &mut prefix, &mut |a: &[i64]| {
            let cand = BettiSequence {
                r,
                e,
                a: a.to_vec(),
            };
            if cand.is_admissible(d) {
                out.push(cand);
            }
        });
    }
    out.sort();
    Ok(out)
}

fn descend(
    remaining: usize,
    target: i64,
    max_next: i64,
    lo: i64,
    prefix: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if remaining == 0 {
        if target == 0 {
            emit(prefix);
        }
        return;
    }
    // bounds: remaining values each in [lo, max_next]
    let r = remaining as i64;
    for v in (lo..=max_next).rev() {
        let rest = target - v;
        if rest > (r - 1) * v || rest < (r - 1) * lo {
            continue;
        }
        prefix.push(v);
        descend(remaining - 1, rest, v, lo, prefix, emit);
        prefix.pop();
    }
}
