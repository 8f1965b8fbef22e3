//! Exact integer and rational sequences: binary digit statistics, the two
//! weighted digital sums and their running averages, the multidimensional
//! divide-and-conquer cost, and the bottom-up mergesort worst case.
//!
//! Everything here is exact. Sequence values are arbitrary-precision
//! integers, averages are reduced rationals, so identity checks compare
//! bit-for-bit rather than within a tolerance.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::{self, Dd};
use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRatio = BigRational;

/// Weight-exponent cap for `s_m`/`w_m`.
pub const M_CAP: u32 = 8;
/// Dimension cap for `mdc_f`.
pub const K_CAP: u32 = 6;

/// Binary representation of a nonnegative integer, least-significant bit
/// first. The top stored bit is 1 unless the value is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    bits: Vec<u8>,
}

impl Bits {
    pub fn new(n: u64) -> Bits {
        if n == 0 {
            return Bits { bits: Vec::new() };
        }
        let len = 64 - n.leading_zeros() as usize;
        let bits = (0..len).map(|t| ((n >> t) & 1) as u8).collect();
        Bits { bits }
    }

    /// Digits b_0, b_1, ... (least significant first).
    pub fn digits(&self) -> &[u8] {
        &self.bits
    }

    pub fn value(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .map(|(t, &b)| (b as u64) << t)
            .sum()
    }

    /// Exponents i_1 > i_2 > ... > i_k of the set bits, descending.
    pub fn set_exponents_desc(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self
            .bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(t, _)| t as u32)
            .collect();
        e.reverse();
        e
    }
}

/// Number of 1 bits of n.
#[inline]
pub fn v(n: u64) -> u32 {
    n.count_ones()
}

/// Number of trailing 0 bits of n; undefined (rejected) at n = 0.
#[inline]
pub fn v2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Domain("v2(0) is undefined".into()));
    }
    Ok(n.trailing_zeros())
}

/// Rising factorial t(t+1)...(t+m-1); fits u128 for t <= 64+8, m <= 8.
#[inline]
fn rising(t: u64, m: u32) -> u128 {
    let mut r: u128 = 1;
    for i in 0..m as u64 {
        r *= (t + i) as u128;
    }
    r
}

fn check_m(m: u32) -> Result<()> {
    if m > M_CAP {
        return Err(Error::CapExceeded {
            name: "M",
            got: m,
            cap: M_CAP,
        });
    }
    Ok(())
}

/// S_M(n) = Σ_t t^{rising M} b_t 2^t over the binary digits of n; S_0(n) = n.
pub fn s_m(n: u64, m: u32) -> Result<ExactInt> {
    check_m(m)?;
    Ok(BigInt::from(s_m_u128(n, m)))
}

pub(crate) fn s_m_u128(n: u64, m: u32) -> u128 {
    if m == 0 {
        return n as u128;
    }
    let mut acc: u128 = 0;
    let mut rest = n;
    while rest != 0 {
        let t = rest.trailing_zeros() as u64;
        acc += rising(t, m) << t;
        rest &= rest - 1;
    }
    acc
}

/// W_M(n) = Σ_{t=1..k} t^M 2^{i_t} over the descending set-bit exponents
/// i_1 > ... > i_k of n; W_0(n) = n.
pub fn w_m(n: u64, m: u32) -> Result<ExactInt> {
    check_m(m)?;
    Ok(BigInt::from(w_m_u128(n, m)))
}

pub(crate) fn w_m_u128(n: u64, m: u32) -> u128 {
    if m == 0 {
        return n as u128;
    }
    let mut acc: u128 = 0;
    let mut rest = n;
    let mut t: u64 = 0;
    while rest != 0 {
        t += 1;
        let i = 63 - rest.leading_zeros() as u64;
        acc += (t as u128).pow(m) << i;
        rest &= !(1u64 << i);
    }
    acc
}

/// TS_M(n) = (1/n) Σ_{j<n} S_M(j), exact.
pub fn ts_m(n: u64, m: u32) -> Result<ExactRatio> {
    check_m(m)?;
    if n == 0 {
        return Err(Error::Domain("ts_m needs n >= 1".into()));
    }
    let mut tot = BigInt::zero();
    for j in 0..n {
        tot += BigInt::from(s_m_u128(j, m));
    }
    Ok(BigRational::new(tot, BigInt::from(n)))
}

/// TW_M(n) = (1/n) Σ_{j<n} W_M(j), exact.
pub fn tw_m(n: u64, m: u32) -> Result<ExactRatio> {
    check_m(m)?;
    if n == 0 {
        return Err(Error::Domain("tw_m needs n >= 1".into()));
    }
    let mut tot = BigInt::zero();
    for j in 0..n {
        tot += BigInt::from(w_m_u128(j, m));
    }
    Ok(BigRational::new(tot, BigInt::from(n)))
}

/// TS_M at several points with one sweep over j < max(ns).
pub fn ts_m_batch(ns: &[u64], m: u32) -> Result<Vec<ExactRatio>> {
    batch_average(ns, |j| BigInt::from(s_m_u128(j, m)), || check_m(m))
}

/// TW_M at several points with one sweep over j < max(ns).
pub fn tw_m_batch(ns: &[u64], m: u32) -> Result<Vec<ExactRatio>> {
    batch_average(ns, |j| BigInt::from(w_m_u128(j, m)), || check_m(m))
}

fn batch_average<F, C>(ns: &[u64], term: F, check: C) -> Result<Vec<ExactRatio>>
where
    F: Fn(u64) -> BigInt,
    C: Fn() -> Result<()>,
{
    check()?;
    if ns.iter().any(|&n| n == 0) {
        return Err(Error::Domain("averages need n >= 1".into()));
    }
    let mut order: Vec<usize> = (0..ns.len()).collect();
    order.sort_by_key(|&i| ns[i]);
    let mut out = vec![BigRational::zero(); ns.len()];
    let mut tot = BigInt::zero();
    let mut j = 0u64;
    for &idx in &order {
        let n = ns[idx];
        while j < n {
            tot += term(j);
            j += 1;
        }
        out[idx] = BigRational::new(tot.clone(), BigInt::from(n));
    }
    Ok(out)
}

/// Worst-case bottom-up mergesort cost: C_w(2^k) = k·2^k and
/// C_w(2^k + j) = C_w(2^k) + C_w(j) + (2^k + j) for 1 <= j < 2^k.
pub fn cw(n: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::Domain("cw needs n >= 1".into()));
    }
    Ok(BigInt::from(cw_u128(n)))
}

pub(crate) fn cw_u128(n: u64) -> u128 {
    debug_assert!(n >= 1);
    let k = 63 - n.leading_zeros() as u64;
    let pow = 1u64 << k;
    if n == pow {
        return (k as u128) << k;
    }
    ((k as u128) << k) + cw_u128(n - pow) + n as u128
}

/// Dense table C_w(0..=n_max) (index 0 unused, set to 0).
pub fn cw_table(n_max: usize) -> Vec<ExactInt> {
    let mut t = vec![BigInt::zero(); n_max + 1];
    let mut u = vec![0u128; n_max + 1];
    for n in 1..=n_max {
        let k = 63 - (n as u64).leading_zeros() as u64;
        let pow = 1usize << k;
        u[n] = if n == pow {
            (k as u128) << k
        } else {
            u[pow] + u[n - pow] + n as u128
        };
        t[n] = BigInt::from(u[n]);
    }
    t
}

/// TV(n) = (1/n) Σ_{j=1..n} Σ_{i<j} v(i), exact, via the running double sum.
pub fn tv(n: u64) -> Result<ExactRatio> {
    if n == 0 {
        return Err(Error::Domain("tv needs n >= 1".into()));
    }
    let mut inner: u128 = 0; // Σ_{i<j} v(i)
    let mut total = BigInt::zero();
    for j in 1..=n {
        total += BigInt::from(inner);
        inner += v(j) as u128;
    }
    Ok(BigRational::new(total, BigInt::from(n)))
}

/// e_n^k conquer cost of the ECDF-k recurrence.
fn mdc_e(f_prev: &BigInt, n: u64, k: u32) -> BigInt {
    if n <= 1 {
        return BigInt::zero();
    }
    if k == 2 {
        BigInt::from(n - 1)
    } else {
        f_prev + BigInt::from(n - 1)
    }
}

/// Memo table for the ECDF-k cost f_n^k over the floor/ceil halving tree.
pub struct MdcMemo {
    cache: HashMap<(u64, u32), BigInt>,
}

impl MdcMemo {
    pub fn new() -> MdcMemo {
        MdcMemo {
            cache: HashMap::new(),
        }
    }

    pub fn f(&mut self, n: u64, k: u32) -> Result<ExactInt> {
        if k < 2 || k > K_CAP {
            return Err(Error::CapExceeded {
                name: "k",
                got: k,
                cap: K_CAP,
            });
        }
        if n == 0 {
            return Err(Error::Domain("mdc_f needs n >= 1".into()));
        }
        Ok(self.get(n, k))
    }

    fn get(&mut self, n: u64, k: u32) -> BigInt {
        if n <= 1 {
            return BigInt::zero();
        }
        if let Some(hit) = self.cache.get(&(n, k)) {
            return hit.clone();
        }
        let lo = self.get(n / 2, k);
        let hi = self.get(n.div_ceil(2), k);
        let e = if k == 2 {
            BigInt::from(n - 1)
        } else {
            let prev = self.get(n, k - 1);
            mdc_e(&prev, n, k)
        };
        let val = lo + hi + e;
        self.cache.insert((n, k), val.clone());
        val
    }
}

impl Default for MdcMemo {
    fn default() -> Self {
        Self::new()
    }
}

/// f_n^k with a fresh memo (one-off queries).
pub fn mdc_f(n: u64, k: u32) -> Result<ExactInt> {
    MdcMemo::new().f(n, k)
}

/// Dense tables f^2..f^k over 0..=n_max; returns the table for dimension k.
pub fn mdc_f_table(k: u32, n_max: usize) -> Result<Vec<ExactInt>> {
    if k < 2 || k > K_CAP {
        return Err(Error::CapExceeded {
            name: "k",
            got: k,
            cap: K_CAP,
        });
    }
    let mut prev: Vec<BigInt> = Vec::new();
    for kk in 2..=k {
        let mut f = vec![BigInt::zero(); n_max + 1];
        for n in 2..=n_max {
            let e = if kk == 2 {
                BigInt::from(n as u64 - 1)
            } else {
                &prev[n] + BigInt::from(n as u64 - 1)
            };
            f[n] = &f[n / 2] + &f[n.div_ceil(2)] + e;
        }
        prev = f;
    }
    Ok(prev)
}

pub(crate) fn mdc_f_table_u128(k: u32, n_max: usize) -> Vec<u128> {
    let mut prev: Vec<u128> = Vec::new();
    for kk in 2..=k {
        let mut f = vec![0u128; n_max + 1];
        for n in 2..=n_max {
            let e = if kk == 2 {
                (n - 1) as u128
            } else {
                prev[n] + (n - 1) as u128
            };
            f[n] = f[n / 2] + f[n.div_ceil(2)] + e;
        }
        prev = f;
    }
    prev
}

/// Backward difference ∇A(j) = A(j) − A(j−1); index 0 holds A(0).
pub fn nabla(seq: &[ExactInt]) -> Vec<ExactInt> {
    let mut out = Vec::with_capacity(seq.len());
    for j in 0..seq.len() {
        if j == 0 {
            out.push(seq[0].clone());
        } else {
            out.push(&seq[j] - &seq[j - 1]);
        }
    }
    out
}

/// Double difference Δ∇s_j = s_{j+1} − 2 s_j + s_{j−1}, valid for
/// 1 <= j <= len−2; the first and last entries are zero padding.
pub fn delta_nabla(seq: &[ExactInt]) -> Vec<ExactInt> {
    let mut out = vec![BigInt::zero(); seq.len()];
    for j in 1..seq.len().saturating_sub(1) {
        out[j] = &seq[j + 1] - BigInt::from(2) * &seq[j] + &seq[j - 1];
    }
    out
}

/// Splits n = 2^a · m with m odd.
#[inline]
pub(crate) fn odd_split(n: u64) -> (u32, u64) {
    let a = n.trailing_zeros();
    (a, n >> a)
}

/// ⌊n lg n⌋, exact. Dyadic n is handled exactly; otherwise n·lg n is
/// irrational and a double-double evaluation settles the floor.
pub fn floor_n_lg_n(n: u64) -> i128 {
    let (a, m) = odd_split(n);
    if m == 1 {
        return (a as i128) * (n as i128);
    }
    let t = dd::shared_ln_table(m as usize);
    let lg_m = t[m as usize].mul(Dd::INV_LN2);
    let x = lg_m.mul_f64(n as f64); // n·lg m
    let fl = x.hi.floor();
    let frac = x.sub(Dd::from_f64(fl)).to_f64();
    debug_assert!(
        frac > 1e-18 && frac < 1.0 - 1e-18,
        "n lg n ambiguous at n = {n}"
    );
    (n as i128) * (a as i128) + fl as i128
}

/// ⌈n lg n − 2n⌉, exact (same reduction as `floor_n_lg_n`).
pub fn ceil_n_lg_n_minus_2n(n: u64) -> i128 {
    let (a, m) = odd_split(n);
    if m == 1 {
        return (a as i128) * (n as i128) - 2 * n as i128;
    }
    // ⌈x + c⌉ = ⌊x⌋ + 1 + c for integer c and non-integer x
    let base = floor_n_lg_n(n) - (n as i128) * (a as i128); // ⌊n lg m⌋
    (n as i128) * (a as i128) + base + 1 - 2 * n as i128
}

/// Largest S_M argument that keeps intermediate u128 arithmetic exact.
pub(crate) const SWEEP_LIMIT: u64 = 1 << 40;

/// Converts an exact ratio to f64 (numerator/denominator separately).
pub fn ratio_to_f64(r: &ExactRatio) -> f64 {
    // BigRational::to_f64 is fine for our magnitudes but rounds the two
    // parts separately only when they exceed f64 range, which they do not
    // for n <= 2^40.
    r.to_f64().unwrap_or_else(|| {
        let num = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let den = r.denom().to_f64().unwrap_or(1.0);
        num / den
    })
}

pub fn int_to_f64(x: &ExactInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// |a − b| as f64 for exact ints.
pub fn int_abs_diff_f64(a: &ExactInt, b: &ExactInt) -> f64 {
    int_to_f64(&((a - b).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_examples() {
        assert_eq!(v(44), 3);
        assert_eq!(v(33), 2);
        assert_eq!(v(0), 0);
    }

    #[test]
    fn v2_examples() {
        assert_eq!(v2(44).unwrap(), 2);
        assert_eq!(v2(33).unwrap(), 0);
        for n in (1..2000u64).step_by(2) {
            assert_eq!(v2(n).unwrap(), 0);
        }
        assert!(v2(0).is_err());
    }

    #[test]
    fn bits_roundtrip() {
        for n in [0u64, 1, 2, 44, 33, 1023, 1 << 40] {
            let b = Bits::new(n);
            assert_eq!(b.value(), n);
            if n > 0 {
                assert_eq!(*b.digits().last().unwrap(), 1);
            }
        }
        assert_eq!(Bits::new(44).set_exponents_desc(), vec![5, 3, 2]);
    }

    #[test]
    fn s_m_examples() {
        assert_eq!(s_m(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(s_m(6, 2).unwrap(), BigInt::from(28));
        for m in 0..=M_CAP {
            assert_eq!(s_m(0, m).unwrap(), BigInt::zero());
        }
        assert_eq!(s_m(5, 0).unwrap(), BigInt::from(5));
        assert!(s_m(1, 9).is_err());
    }

    #[test]
    fn w_m_examples() {
        assert_eq!(w_m(5, 1).unwrap(), BigInt::from(6));
        assert_eq!(w_m(1, 1).unwrap(), BigInt::one());
        assert_eq!(w_m(77, 0).unwrap(), BigInt::from(77));
    }

    #[test]
    fn ts_tw_examples() {
        assert_eq!(
            ts_m(4, 1).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(1))
        );
        assert_eq!(
            tw_m(4, 1).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(4))
        );
        assert!(ts_m(1, 3).unwrap().is_zero());
    }

    #[test]
    fn batch_matches_single() {
        let ns = [7u64, 3, 100, 64, 13];
        let batch = ts_m_batch(&ns, 2).unwrap();
        for (i, &n) in ns.iter().enumerate() {
            assert_eq!(batch[i], ts_m(n, 2).unwrap());
        }
        let batch = tw_m_batch(&ns, 1).unwrap();
        for (i, &n) in ns.iter().enumerate() {
            assert_eq!(batch[i], tw_m(n, 1).unwrap());
        }
    }

    #[test]
    fn mdc_examples() {
        assert_eq!(mdc_f(8, 2).unwrap(), BigInt::from(17));
        for k in 2..=K_CAP {
            assert_eq!(mdc_f(1, k).unwrap(), BigInt::zero());
        }
        assert_eq!(mdc_f(2, 3).unwrap(), BigInt::from(2));
        assert!(mdc_f(5, 7).is_err());
        assert!(mdc_f(5, 1).is_err());
    }

    #[test]
    fn mdc_table_matches_memo() {
        let t = mdc_f_table(4, 300).unwrap();
        let mut memo = MdcMemo::new();
        for n in [1u64, 2, 3, 17, 100, 255, 256, 300] {
            assert_eq!(t[n as usize], memo.f(n, 4).unwrap());
        }
        let tu = mdc_f_table_u128(4, 300);
        for n in 1..=300usize {
            assert_eq!(BigInt::from(tu[n]), t[n]);
        }
    }

    #[test]
    fn cw_examples() {
        assert_eq!(cw(8).unwrap(), BigInt::from(24));
        assert_eq!(cw(1).unwrap(), BigInt::zero());
        assert_eq!(cw(3).unwrap(), BigInt::from(5));
        let t = cw_table(64);
        for n in 1..=64u64 {
            assert_eq!(t[n as usize], cw(n).unwrap());
        }
    }

    #[test]
    fn tv_small_values() {
        // brute-force double loop oracle
        let oracle = |n: u64| {
            let mut tot = 0u64;
            for j in 1..=n {
                for i in 1..j {
                    tot += v(i) as u64;
                }
            }
            BigRational::new(BigInt::from(tot), BigInt::from(n))
        };
        assert!(tv(1).unwrap().is_zero());
        assert_eq!(tv(4).unwrap(), oracle(4));
        // the double loop gives Σ = 0 + 1 + 2 + 4 = 7 at n = 4
        assert_eq!(
            tv(4).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(4))
        );
        for n in [2u64, 3, 10, 33, 100] {
            assert_eq!(tv(n).unwrap(), oracle(n));
        }
    }

    #[test]
    fn tv_weighted_forms_agree() {
        for n in [2u64, 7, 100, 1000, 10_000] {
            let direct = tv(n).unwrap();
            // (1/n) Σ_{k<n} v(k)(n-k)
            let mut s1 = BigInt::zero();
            for k in 1..n {
                s1 += BigInt::from(v(k) as u64 * (n - k));
            }
            assert_eq!(direct, BigRational::new(s1, BigInt::from(n)));
            // (1/n) Σ_{k<n} ∇v(k)[(n-k)^2 + (n-k)]/2
            let mut s2 = BigInt::zero();
            for k in 1..n {
                let dv = v(k) as i64 - if k > 1 { v(k - 1) as i64 } else { 0 };
                let w = ((n - k) as i128 * (n - k) as i128 + (n - k) as i128) / 2;
                s2 += BigInt::from(dv as i128 * w);
            }
            assert_eq!(direct, BigRational::new(s2, BigInt::from(n)));
        }
    }

    #[test]
    fn nabla_and_delta_nabla() {
        // ∇v(n) = 1 − v2(n)
        for n in 1..=100_000u64 {
            let dv = v(n) as i64 - v(n - 1) as i64;
            assert_eq!(dv, 1 - v2(n).unwrap() as i64);
        }
        // Δ∇ of a constant sequence is zero
        let c: Vec<BigInt> = (0..50).map(|_| BigInt::from(9)).collect();
        assert!(delta_nabla(&c)[1..49].iter().all(|x| x.is_zero()));
        // Δ∇ e_j^2 = 1 at j = 1, 0 for j >= 2
        let e2: Vec<BigInt> = (0..40u64)
            .map(|n| {
                if n <= 1 {
                    BigInt::zero()
                } else {
                    BigInt::from(n - 1)
                }
            })
            .collect();
        let dd = delta_nabla(&e2);
        assert_eq!(dd[1], BigInt::one());
        assert!(dd[2..39].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn two_scale_recurrences() {
        // sampled here; the full 1e5 sweep lives in the verify suites
        for n in 1..=2000u64 {
            assert_eq!(v(2 * n), v(n));
            assert_eq!(v(2 * n + 1), v(n) + 1);
            assert_eq!(v2(2 * n).unwrap(), v2(n).unwrap() + 1);
            for m in 1..=4u32 {
                let s2n = s_m(2 * n, m).unwrap();
                assert_eq!(s_m(2 * n + 1, m).unwrap(), s2n);
                if m == 1 {
                    assert_eq!(s2n, BigInt::from(2) * s_m(n, 1).unwrap() + BigInt::from(2 * n));
                } else {
                    assert_eq!(
                        s2n,
                        BigInt::from(2) * s_m(n, m).unwrap()
                            + BigInt::from(m as u64) * s_m(2 * n, m - 1).unwrap()
                    );
                }
                let w2n = w_m(2 * n, m).unwrap();
                assert_eq!(w2n, BigInt::from(2) * w_m(n, m).unwrap());
                assert_eq!(
                    w_m(2 * n + 1, m).unwrap(),
                    w2n + BigInt::from((v(n) as u128 + 1).pow(m))
                );
            }
        }
    }

    #[test]
    fn mergesort_decomposition_sampled() {
        for n in 1..=5000u64 {
            let lhs = cw(n).unwrap();
            let rhs = s_m(n, 1).unwrap() + w_m(n, 1).unwrap()
                - BigInt::from(1u64 << v2(n).unwrap());
            assert_eq!(lhs, rhs, "decomposition fails at n = {n}");
        }
    }

    #[test]
    fn brown_bounds_sampled() {
        for n in 2..=5000u64 {
            let s1 = s_m(n, 1).unwrap();
            let lo = ceil_n_lg_n_minus_2n(n);
            let hi = floor_n_lg_n(n);
            assert!(BigInt::from(lo) <= s1 && s1 <= BigInt::from(hi), "n = {n}");
        }
    }

    #[test]
    fn floor_n_lg_n_dyadic_exact() {
        assert_eq!(floor_n_lg_n(8), 24);
        assert_eq!(floor_n_lg_n(1), 0);
        assert_eq!(floor_n_lg_n(1 << 20), 20 << 20);
        assert_eq!(ceil_n_lg_n_minus_2n(8), 24 - 16);
    }

    #[test]
    fn summation_identity_appendix() {
        // f_n − n f_1 = Σ_{j<n} (n−j) Δ∇f_j for any sequence (f here: f^3)
        let f = mdc_f_table(3, 600).unwrap();
        let dd = delta_nabla(&f);
        for n in [2usize, 3, 10, 100, 555, 598] {
            let mut rhs = BigInt::zero();
            for j in 1..n {
                rhs += BigInt::from((n - j) as u64) * &dd[j];
            }
            let lhs = &f[n] - BigInt::from(n as u64) * &f[1];
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
