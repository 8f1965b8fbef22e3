//! Exact rational polynomials in x and rational functions whose tracked
//! denominator factors are x, (x−1) and (x−2), the three factors that
//! matter once x stands for 2^s: x = 0 never occurs, x = 1 is the β pole
//! line and x = 2 the α pole line.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over exact rationals; no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<BigRational>,
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<BigRational>) -> PolyQ {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn zero() -> PolyQ {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> PolyQ {
        PolyQ::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> PolyQ {
        PolyQ::new(vec![c])
    }

    pub fn x() -> PolyQ {
        PolyQ::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// x − c
    pub fn x_minus(c: i64) -> PolyQ {
        PolyQ::new(vec![qi(-c), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &PolyQ) -> PolyQ {
        if self.is_zero() || o.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> PolyQ {
        let mut r = PolyQ::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval_q(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }

    /// Exact division by (x − c); Some only when the remainder vanishes.
    pub fn div_by_x_minus(&self, c: i64) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        let cq = qi(c);
        let mut out = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for k in (0..self.coeffs.len()).rev() {
            let cur = self.coeff(k) + &carry * &cq;
            if k == 0 {
                if !cur.is_zero() {
                    return None;
                }
            } else {
                out[k - 1] = cur.clone();
                carry = cur;
            }
        }
        Some(PolyQ::new(out))
    }

    /// Exact division by x.
    pub fn div_by_x(&self) -> Option<PolyQ> {
        if self.is_zero() {
            return Some(PolyQ::zero());
        }
        if !self.coeff(0).is_zero() {
            return None;
        }
        Some(PolyQ::new(self.coeffs[1..].to_vec()))
    }
}

/// Rational function N(x) / (x^a (x−1)^b (x−2)^c U(x)) with x read as 2^s.
/// The unit U never vanishes at x ∈ {0, 1, 2}; in every expression this
/// crate builds it stays 1, but the slot is kept so sums and products stay
/// closed.
#[derive(Clone, Debug)]
pub struct RatFunc2s {
    pub num: PolyQ,
    pub pow_x: u32,
    pub pow_xm1: u32,
    pub pow_xm2: u32,
    pub unit: PolyQ,
}

impl RatFunc2s {
    pub fn zero() -> RatFunc2s {
        RatFunc2s::from_poly(PolyQ::zero())
    }

    pub fn one() -> RatFunc2s {
        RatFunc2s::from_poly(PolyQ::one())
    }

    pub fn from_poly(num: PolyQ) -> RatFunc2s {
        RatFunc2s {
            num,
            pow_x: 0,
            pow_xm1: 0,
            pow_xm2: 0,
            unit: PolyQ::one(),
        }
    }

    /// N/(x^a (x−1)^b (x−2)^c)
    pub fn new(num: PolyQ, pow_x: u32, pow_xm1: u32, pow_xm2: u32) -> RatFunc2s {
        RatFunc2s {
            num,
            pow_x,
            pow_xm1,
            pow_xm2,
            unit: PolyQ::one(),
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(mut self) -> RatFunc2s {
        if self.num.is_zero() {
            self.pow_x = 0;
            self.pow_xm1 = 0;
            self.pow_xm2 = 0;
            self.unit = PolyQ::one();
            return self;
        }
        while self.pow_x > 0 {
            match self.num.div_by_x() {
                Some(n) => {
                    self.num = n;
                    self.pow_x -= 1;
                }
                None => break,
            }
        }
        while self.pow_xm1 > 0 {
            match self.num.div_by_x_minus(1) {
                Some(n) => {
                    self.num = n;
                    self.pow_xm1 -= 1;
                }
                None => break,
            }
        }
        while self.pow_xm2 > 0 {
            match self.num.div_by_x_minus(2) {
                Some(n) => {
                    self.num = n;
                    self.pow_xm2 -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn mul(&self, o: &RatFunc2s) -> RatFunc2s {
        RatFunc2s {
            num: self.num.mul(&o.num),
            pow_x: self.pow_x + o.pow_x,
            pow_xm1: self.pow_xm1 + o.pow_xm1,
            pow_xm2: self.pow_xm2 + o.pow_xm2,
            unit: self.unit.mul(&o.unit),
        }
        .normalized()
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc2s {
        RatFunc2s {
            num: self.num.scale(c),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> RatFunc2s {
        RatFunc2s {
            num: self.num.neg(),
            ..self.clone()
        }
    }

    pub fn add(&self, o: &RatFunc2s) -> RatFunc2s {
        assert!(
            self.unit == PolyQ::one() && o.unit == PolyQ::one(),
            "sums with nontrivial units are not needed"
        );
        let a = self.pow_x.max(o.pow_x);
        let b = self.pow_xm1.max(o.pow_xm1);
        let c = self.pow_xm2.max(o.pow_xm2);
        let lift = |r: &RatFunc2s| {
            r.num
                .mul(&PolyQ::x().pow(a - r.pow_x))
                .mul(&PolyQ::x_minus(1).pow(b - r.pow_xm1))
                .mul(&PolyQ::x_minus(2).pow(c - r.pow_xm2))
        };
        RatFunc2s {
            num: lift(self).add(&lift(o)),
            pow_x: a,
            pow_xm1: b,
            pow_xm2: c,
            unit: PolyQ::one(),
        }
        .normalized()
    }

    pub fn sub(&self, o: &RatFunc2s) -> RatFunc2s {
        self.add(&o.neg())
    }

    /// Structural equality as rational functions (cross-multiplied).
    pub fn eq_ratfunc(&self, o: &RatFunc2s) -> bool {
        self.sub(o).is_zero()
    }

    /// Multiplies by x^k (k may be negative).
    pub fn mul_x_pow(&self, k: i64) -> RatFunc2s {
        if k >= 0 {
            RatFunc2s {
                num: self.num.mul(&PolyQ::x().pow(k as u32)),
                ..self.clone()
            }
            .normalized()
        } else {
            RatFunc2s {
                pow_x: self.pow_x + (-k) as u32,
                ..self.clone()
            }
            .normalized()
        }
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        let den = x.powu(self.pow_x)
            * (x - 1.0).powu(self.pow_xm1)
            * (x - 2.0).powu(self.pow_xm2)
            * self.unit.eval_c(x);
        self.num.eval_c(x) / den
    }

    /// Reads the function as P(x)/((x−1)^b (x−2)^c); None if an x power or
    /// unit is left in the denominator.
    pub fn as_poly_over_poles(&self) -> Option<(PolyQ, u32, u32)> {
        if self.pow_x != 0 || self.unit != PolyQ::one() {
            return None;
        }
        Some((self.num.clone(), self.pow_xm1, self.pow_xm2))
    }
}

/// (1 − 2^{−s})^{−d} = x^d/(x−1)^d.
pub fn one_minus_two_neg_s_inv_pow(d: u32) -> RatFunc2s {
    RatFunc2s::new(PolyQ::x().pow(d), 0, d, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_basic_ops() {
        let p = PolyQ::new(vec![qi(1), qi(2), qi(1)]); // 1 + 2x + x²
        let x_plus_1 = PolyQ::new(vec![qi(1), qi(1)]);
        assert_eq!(p, x_plus_1.mul(&x_plus_1));
        assert_eq!(p.eval_q(&qi(3)), qi(16));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn synthetic_division() {
        // (x−1)(x−2) = x² − 3x + 2
        let p = PolyQ::new(vec![qi(2), qi(-3), qi(1)]);
        let d1 = p.div_by_x_minus(1).unwrap();
        assert_eq!(d1, PolyQ::x_minus(2));
        assert!(p.div_by_x_minus(3).is_none());
        assert!(p.div_by_x().is_none());
        let xp = p.mul(&PolyQ::x());
        assert_eq!(xp.div_by_x().unwrap(), p);
    }

    #[test]
    fn ratfunc_normalization_cancels() {
        // (x−1)x / (x (x−1)^2) → 1/(x−1)
        let r = RatFunc2s::new(PolyQ::x().mul(&PolyQ::x_minus(1)), 1, 2, 0);
        assert_eq!(r.pow_x, 0);
        assert_eq!(r.pow_xm1, 1);
        assert_eq!(r.num, PolyQ::one());
    }

    #[test]
    fn ratfunc_add_and_eq() {
        // x/(x−1) + 1/(x−1) = (x+1)/(x−1)
        let a = RatFunc2s::new(PolyQ::x(), 0, 1, 0);
        let b = RatFunc2s::new(PolyQ::one(), 0, 1, 0);
        let s = a.add(&b);
        let want = RatFunc2s::new(PolyQ::new(vec![qi(1), qi(1)]), 0, 1, 0);
        assert!(s.eq_ratfunc(&want));
        // telescoping: Σ_{d=1..k−1} x^d/(x−1)^d vs direct rational identity
        let x = Complex64::new(8.0, 0.0);
        let sum3 = one_minus_two_neg_s_inv_pow(1).add(&one_minus_two_neg_s_inv_pow(2));
        let got = sum3.eval(x);
        assert!((got.re - (8.0 / 7.0 + 64.0 / 49.0)).abs() < 1e-14);
    }
}
