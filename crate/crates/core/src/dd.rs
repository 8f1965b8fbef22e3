//! Minimal double-double arithmetic.
//!
//! The zeta partial sums need phases `t * ln n` with `t` up to ~1e5 reduced
//! modulo 2π to well below one ulp of the final sum; plain f64 logarithms
//! lose ~1e-11 of phase there. A hi/lo split of `ln n` (twice the f64
//! mantissa, ~32 digits) is enough. The same split settles floor/ceil of
//! `n lg n` in the integer bound checks.

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    /// ln 2 to double-double precision.
    pub const LN2: Dd = Dd {
        hi: 0.693_147_180_559_945_3,
        lo: 2.319_046_813_846_299_6e-17,
    };
    /// 2π to double-double precision.
    pub const TWO_PI: Dd = Dd {
        hi: 6.283_185_307_179_586,
        lo: 2.449_293_598_294_706_4e-16,
    };
    /// 1/ln 2 to double-double precision.
    pub const INV_LN2: Dd = Dd {
        hi: 1.442_695_040_888_963_4,
        lo: 2.035_527_374_093_103_3e-17,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// ln(1+x) for 0 < x <= 1, via 2·atanh(x/(2+x)).
fn ln1p(x: f64) -> Dd {
    let y = Dd::from_f64(x).div(Dd::from_f64(2.0).add(Dd::from_f64(x)));
    let y2 = y.mul(y);
    let mut term = y;
    let mut sum = y;
    let mut k = 1u32;
    loop {
        term = term.mul(y2);
        let add = term.mul_f64(1.0 / (2 * k + 1) as f64);
        sum = sum.add(add);
        if add.hi.abs() < 1e-35 * sum.hi.abs() {
            break;
        }
        k += 1;
        debug_assert!(k < 200);
    }
    sum.mul_f64(2.0)
}

/// Table of ln n for n = 0..=n_max (entry 0 is unused).
pub(crate) fn ln_table(n_max: usize) -> Vec<Dd> {
    let mut t = vec![Dd::ZERO; n_max + 1];
    if n_max >= 2 {
        t[2] = Dd::LN2;
    }
    if n_max >= 3 {
        t[3] = Dd::LN2.add(ln1p(0.5));
    }
    for n in 4..=n_max {
        if n % 2 == 0 {
            t[n] = t[n / 2].add(Dd::LN2);
        } else {
            // ln n = ln(n-2) + ln(1 + 2/(n-2))
            t[n] = t[n - 2].add(ln1p(2.0 / (n - 2) as f64));
        }
    }
    t
}

use std::sync::{Mutex, OnceLock};

static LN_TABLE: OnceLock<Mutex<std::sync::Arc<Vec<Dd>>>> = OnceLock::new();

/// Shared, lazily grown ln table.
pub(crate) fn shared_ln_table(n_max: usize) -> std::sync::Arc<Vec<Dd>> {
    let cell = LN_TABLE.get_or_init(|| Mutex::new(std::sync::Arc::new(Vec::new())));
    let mut guard = cell.lock().unwrap();
    if guard.len() <= n_max {
        let grow = (n_max + 1).max(guard.len() * 2).max(4096);
        *guard = std::sync::Arc::new(ln_table(grow - 1));
    }
    guard.clone()
}

/// x mod 2π, reduced in double-double and rounded once at the end.
#[inline]
pub(crate) fn reduce_two_pi(x: Dd) -> f64 {
    let k = (x.hi / Dd::TWO_PI.hi).round();
    x.sub(Dd::TWO_PI.mul_f64(k)).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_table_matches_f64_ln() {
        let t = ln_table(5000);
        for n in [2usize, 3, 7, 100, 999, 4096, 4999] {
            let want = (n as f64).ln();
            assert!(
                (t[n].hi - want).abs() <= 4.0 * f64::EPSILON * want.max(1.0),
                "ln {n}: {} vs {want}",
                t[n].hi
            );
        }
    }

    #[test]
    fn ln_table_dd_consistency() {
        // ln(a*b) = ln a + ln b to ~1e-30
        let t = ln_table(10_000);
        for (a, b) in [(3usize, 5usize), (7, 11), (99, 101), (123, 81)] {
            let lhs = t[a * b];
            let rhs = t[a].add(t[b]);
            let d = lhs.sub(rhs);
            assert!(d.hi.abs() < 1e-28, "ln({a}*{b}) off by {}", d.hi);
        }
    }

    #[test]
    fn phase_reduction_accuracy() {
        // t*ln(n) mod 2π against high-precision reference for a case where
        // naive f64 loses digits.
        let t = ln_table(1000);
        let big_t = 72_000.0f64;
        let phase = t[997].mul_f64(big_t);
        let reduced = reduce_two_pi(phase);
        // reference computed with 40-digit arithmetic:
        // 72000*ln(997) = 497142.05543725235977...; mod 2π = 3.86756258911855004955...
        assert!(
            (reduced - 3.867_562_589_118_550).abs() < 1e-12,
            "got {reduced}"
        );
    }
}
