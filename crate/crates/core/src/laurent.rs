//! Truncated Laurent series whose coefficients are polynomials in the
//! symbol Λ = ln n, over complex doubles with a running absolute error.
//!
//! The error field is first-order interval bookkeeping: enough to report
//! honest uncertainties for coefficients fed by truncated series (the I_k
//! evaluations) without a full interval library.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex value with an absolute error bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct CVal {
    pub v: Complex64,
    pub err: f64,
}

impl CVal {
    pub fn new(v: Complex64) -> CVal {
        CVal { v, err: 0.0 }
    }

    pub fn with_err(v: Complex64, err: f64) -> CVal {
        CVal { v, err }
    }

    pub fn from_f64(x: f64) -> CVal {
        CVal::new(Complex64::new(x, 0.0))
    }

    pub fn zero() -> CVal {
        CVal::new(Complex64::new(0.0, 0.0))
    }

    #[inline]
    pub fn add(self, o: CVal) -> CVal {
        CVal {
            v: self.v + o.v,
            err: self.err + o.err,
        }
    }

    #[inline]
    pub fn sub(self, o: CVal) -> CVal {
        CVal {
            v: self.v - o.v,
            err: self.err + o.err,
        }
    }

    #[inline]
    pub fn mul(self, o: CVal) -> CVal {
        CVal {
            v: self.v * o.v,
            err: self.v.norm() * o.err + o.v.norm() * self.err + self.err * o.err,
        }
    }

    #[inline]
    pub fn scale(self, x: f64) -> CVal {
        CVal {
            v: self.v * x,
            err: self.err * x.abs(),
        }
    }

    #[inline]
    pub fn neg(self) -> CVal {
        CVal {
            v: -self.v,
            err: self.err,
        }
    }

    /// 1/self; requires |v| > err.
    pub fn inv(self) -> Result<CVal> {
        let m = self.v.norm();
        if m <= self.err || m == 0.0 {
            return Err(Error::ZeroLeadingCoeff);
        }
        Ok(CVal {
            v: self.v.inv(),
            err: self.err / (m * (m - self.err)),
        })
    }

    pub fn conj(self) -> CVal {
        CVal {
            v: self.v.conj(),
            err: self.err,
        }
    }
}

/// Polynomial in Λ = ln n with `CVal` coefficients (degree 0 first).
#[derive(Clone, Debug, Default)]
pub struct LnPoly(pub Vec<CVal>);

impl LnPoly {
    pub fn zero() -> LnPoly {
        LnPoly(Vec::new())
    }

    pub fn constant(c: CVal) -> LnPoly {
        LnPoly(vec![c])
    }

    /// Λ^k / k!
    pub fn lambda_pow_over_factorial(k: usize) -> LnPoly {
        let mut v = vec![CVal::zero(); k + 1];
        let mut f = 1.0;
        for i in 1..=k {
            f *= i as f64;
        }
        v[k] = CVal::from_f64(1.0 / f);
        LnPoly(v)
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.0.iter().all(|c| c.v.norm() == 0.0 && c.err == 0.0)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CVal {
        self.0.get(k).copied().unwrap_or_else(CVal::zero)
    }

    /// Degree-0 part, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<CVal> {
        if self.0.len() <= 1 {
            Some(self.coeff(0))
        } else if self.0[1..].iter().all(|c| c.v.norm() == 0.0 && c.err == 0.0) {
            Some(self.0[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &LnPoly) -> LnPoly {
        let n = self.0.len().max(o.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(o.coeff(k)));
        }
        LnPoly(out)
    }

    pub fn mul(&self, o: &LnPoly) -> LnPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return LnPoly::zero();
        }
        let mut out = vec![CVal::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(a.mul(*b));
            }
        }
        LnPoly(out)
    }

    pub fn scale(&self, c: CVal) -> LnPoly {
        LnPoly(self.0.iter().map(|a| a.mul(c)).collect())
    }

    pub fn neg(&self) -> LnPoly {
        LnPoly(self.0.iter().map(|a| a.neg()).collect())
    }
}

/// Truncated local expansion Σ_{k=m}^{m+T} a_k (s − center)^k with
/// Λ-polynomial coefficients. `coeffs[i]` is the coefficient of order
/// `min_order + i`; the stored window is the validity window.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub center: Complex64,
    pub min_order: i32,
    pub coeffs: Vec<LnPoly>,
}

impl LaurentSeries {
    /// Taylor-type series from constant coefficients starting at `min_order`.
    pub fn from_consts(center: Complex64, min_order: i32, coeffs: Vec<CVal>) -> LaurentSeries {
        LaurentSeries {
            center,
            min_order,
            coeffs: coeffs.into_iter().map(LnPoly::constant).collect(),
        }
    }

    pub fn one(center: Complex64, terms: usize) -> LaurentSeries {
        let mut coeffs = vec![LnPoly::zero(); terms];
        coeffs[0] = LnPoly::constant(CVal::from_f64(1.0));
        LaurentSeries {
            center,
            min_order: 0,
            coeffs,
        }
    }

    pub fn top_order(&self) -> i32 {
        self.min_order + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, order: i32) -> LnPoly {
        if order < self.min_order {
            return LnPoly::zero();
        }
        let i = (order - self.min_order) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(LnPoly::zero)
    }

    /// Drops leading entries that are structurally zero, tightening the
    /// reported minimum order (the stored window stays valid).
    pub fn trim_leading_zeros(mut self) -> LaurentSeries {
        while self.coeffs.len() > 1 && self.coeffs[0].is_structurally_zero() {
            self.coeffs.remove(0);
            self.min_order += 1;
        }
        self
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.center, o.center);
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![LnPoly::zero(); len];
        for i in 0..self.coeffs.len() {
            for j in 0..o.coeffs.len() {
                if i + j < len {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
                }
            }
        }
        LaurentSeries {
            center: self.center,
            min_order: self.min_order + o.min_order,
            coeffs: out,
        }
    }

    /// Multiplicative inverse; the leading coefficient must be a nonzero
    /// constant (no Λ content).
    pub fn inv(&self) -> Result<LaurentSeries> {
        let lead = self
            .coeffs
            .first()
            .ok_or(Error::ZeroLeadingCoeff)?
            .as_constant()
            .ok_or(Error::ZeroLeadingCoeff)?;
        let lead_inv = lead.inv()?;
        let len = self.coeffs.len();
        let mut out: Vec<LnPoly> = Vec::with_capacity(len);
        out.push(LnPoly::constant(lead_inv));
        for k in 1..len {
            // b_k = -(1/a_0) Σ_{i=1..k} a_i b_{k-i}
            let mut acc = LnPoly::zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out.push(acc.neg().scale(lead_inv));
        }
        Ok(LaurentSeries {
            center: self.center,
            min_order: -self.min_order,
            coeffs: out,
        })
    }

    pub fn add(&self, o: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.center, o.center);
        let min_order = self.min_order.min(o.min_order);
        let top = self.top_order().min(o.top_order());
        let mut coeffs = Vec::new();
        for ord in min_order..=top {
            coeffs.push(self.coeff(ord).add(&o.coeff(ord)));
        }
        LaurentSeries {
            center: self.center,
            min_order,
            coeffs,
        }
    }

    pub fn scale(&self, c: CVal) -> LaurentSeries {
        LaurentSeries {
            center: self.center,
            min_order: self.min_order,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts(center: Complex64, min: i32, vals: &[f64]) -> LaurentSeries {
        LaurentSeries::from_consts(
            center,
            min,
            vals.iter().map(|&x| CVal::from_f64(x)).collect(),
        )
    }

    #[test]
    fn one_over_s_times_s_is_one() {
        let c = Complex64::new(0.0, 0.0);
        // 1/s at 0 is [−1 | 1]; s is [1 | 1]
        let inv_s = consts(c, -1, &[1.0, 0.0, 0.0, 0.0]);
        let s = consts(c, 1, &[1.0, 0.0, 0.0, 0.0]);
        let p = inv_s.mul(&s);
        assert_eq!(p.min_order, 0);
        assert!((p.coeff(0).coeff(0).v.re - 1.0).abs() < 1e-15);
        for k in 1..4 {
            assert!(p.coeff(k).coeff(0).v.norm() < 1e-15);
        }
    }

    #[test]
    fn inversion_of_one_minus_two_pow_minus_s() {
        // 1 − 2^{−s} at s = 0 expands as s ln2 − s² ln²2/2 + s³ ln³2/6 − …
        // Its inverse starts 1/(s ln2) + 1/2 + s ln2/12 + …
        let c = Complex64::new(0.0, 0.0);
        let l2 = std::f64::consts::LN_2;
        let f = consts(
            c,
            1,
            &[l2, -l2 * l2 / 2.0, l2.powi(3) / 6.0, -l2.powi(4) / 24.0],
        );
        let inv = f.inv().unwrap();
        assert_eq!(inv.min_order, -1);
        assert!((inv.coeff(-1).coeff(0).v.re - 1.0 / l2).abs() < 1e-14);
        assert!((inv.coeff(0).coeff(0).v.re - 0.5).abs() < 1e-14);
        assert!((inv.coeff(1).coeff(0).v.re - l2 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_times_self_is_one() {
        let c = Complex64::new(0.5, 1.5);
        let f = consts(c, 2, &[3.0, -1.0, 0.25, 7.0, -2.0]);
        let inv = f.inv().unwrap();
        let p = f.mul(&inv);
        assert_eq!(p.min_order, 0);
        assert!((p.coeff(0).coeff(0).v.re - 1.0).abs() < 1e-14);
        for k in 1..5 {
            assert!(p.coeff(k).coeff(0).v.norm() < 1e-12);
        }
    }

    #[test]
    fn inversion_rejects_zero_lead() {
        let c = Complex64::new(0.0, 0.0);
        let z = LaurentSeries {
            center: c,
            min_order: 0,
            coeffs: vec![LnPoly::zero(), LnPoly::constant(CVal::from_f64(1.0))],
        };
        assert!(z.inv().is_err());
    }

    #[test]
    fn err_propagates_through_mul() {
        let a = CVal::with_err(Complex64::new(2.0, 0.0), 1e-6);
        let b = CVal::with_err(Complex64::new(3.0, 0.0), 1e-7);
        let p = a.mul(b);
        assert!((p.v.re - 6.0).abs() < 1e-14);
        assert!(p.err >= 2.0 * 1e-7 + 3.0 * 1e-6);
    }
}
