//! Residue extraction for the Mellin–Perron kernels: local Laurent
//! expansion of each kernel factor at a pole, product truncation, and
//! summation over a vertical line of regularly spaced poles into Fourier
//! data.
//!
//! Poles on the line σ + 2πj i/ln 2 share the expansion of every factor
//! that depends on s only through 2^s, so the per-pole work is the zeta or
//! I_k jet plus a handful of short series products.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dgf::{self, BaseFactor, DgfExpr};
use crate::error::{Error, Result};
use crate::laurent::{CVal, LaurentSeries, LnPoly};
use crate::poly::RatFunc2s;
use crate::special;

pub const LN2: f64 = std::f64::consts::LN_2;

/// Spacing of the pole lines: poles sit at σ + j·(2π/ln2)i.
pub fn pole_spacing() -> f64 {
    2.0 * std::f64::consts::PI / LN2
}

/// θ_j = σ + 2πj i / ln2.
pub fn pole_point(sigma: f64, j: i64) -> Complex64 {
    Complex64::new(sigma, pole_spacing() * j as f64)
}

/// Denominator of the Mellin–Perron kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenomShape {
    /// s(s+1)
    SSp1,
    /// s(s+1)(s+2)
    SSp1Sp2,
}

impl DenomShape {
    fn roots(&self) -> &'static [f64] {
        match self {
            DenomShape::SSp1 => &[0.0, -1.0],
            DenomShape::SSp1Sp2 => &[0.0, -1.0, -2.0],
        }
    }
}

/// One integral kernel: R(2^s) · ζ(s)^{zeta_power} · Π I_k(s)^{mult} ·
/// n^s / denom(s).
#[derive(Clone, Debug)]
pub struct KernelSpec {
    pub rational: RatFunc2s,
    pub zeta_power: u8,
    pub ik: Vec<(u32, u8)>,
    pub denom: DenomShape,
    pub n_pow: bool,
}

impl KernelSpec {
    pub fn new(rational: RatFunc2s, zeta_power: u8, denom: DenomShape) -> KernelSpec {
        KernelSpec {
            rational,
            zeta_power,
            ik: Vec::new(),
            denom,
            n_pow: true,
        }
    }

    /// Kernel of one DGF term against n^s/(s(s+1)).
    pub fn from_dgf_term(base: BaseFactor, rational: RatFunc2s) -> KernelSpec {
        let mut k = KernelSpec::new(rational, 0, DenomShape::SSp1);
        match base {
            BaseFactor::Unit => {}
            BaseFactor::Zeta => k.zeta_power = 1,
            BaseFactor::Ik(i) => k.ik.push((i, 1)),
        }
        k
    }

    /// Structural upper bound for the pole order at `p`.
    pub fn pole_order(&self, p: Complex64) -> u32 {
        let mut order = 0u32;
        let w0 = 2.0f64.powf(p.re);
        if (w0 - 1.0).abs() < 1e-9 {
            order += self.rational.pow_xm1;
        }
        if (w0 - 2.0).abs() < 1e-9 {
            order += self.rational.pow_xm2;
        }
        if self.zeta_power > 0 && (p - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
            order += self.zeta_power as u32;
        }
        for &root in self.denom.roots() {
            if (p - Complex64::new(root, 0.0)).norm() < 1e-9 {
                order += 1;
            }
        }
        order
    }
}

/// Engine knobs; the defaults match the documented tolerances.
#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    /// Extra orders carried beyond the pole order.
    pub extra_orders: usize,
    /// Series length for I_k jets.
    pub ir_terms: u64,
    /// Number of small |j| whose mirror pole is computed explicitly to
    /// confirm conjugate pairing.
    pub conj_check: u32,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            extra_orders: 4,
            ir_terms: dgf::IR_N_DEFAULT,
            conj_check: 4,
        }
    }
}

/// A kernel factor, for local expansion at a pole.
pub enum Factor<'a> {
    NPow,
    InvS,
    InvSPlus1,
    InvSPlus2,
    Rational(&'a RatFunc2s),
    Zeta,
    Ik(u32, u64),
}

/// Local Laurent expansion of one factor at `pole`, carrying `terms`
/// coefficients. n^s expands with Λ-polynomial coefficients; its constant
/// prefactor n^σ e^{2πij lg n} is NOT included here (the residue assembly
/// tracks it).
pub fn expand_factor(factor: Factor<'_>, pole: Complex64, terms: usize) -> Result<LaurentSeries> {
    match factor {
        Factor::NPow => {
            let coeffs = (0..terms).map(LnPoly::lambda_pow_over_factorial).collect();
            Ok(LaurentSeries {
                center: pole,
                min_order: 0,
                coeffs,
            })
        }
        Factor::InvS => expand_inv_linear(pole, 0.0, terms),
        Factor::InvSPlus1 => expand_inv_linear(pole, 1.0, terms),
        Factor::InvSPlus2 => expand_inv_linear(pole, 2.0, terms),
        Factor::Rational(rf) => expand_rational(rf, pole, terms),
        Factor::Zeta => {
            if (pole - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
                special::zeta_laurent_at_1(terms.saturating_sub(2))
            } else {
                let jet = special::zeta_jet(pole, terms as u32 - 1)?;
                Ok(LaurentSeries::from_consts(
                    pole,
                    0,
                    jet.iter().map(|&(v, e)| CVal::with_err(v, e)).collect(),
                ))
            }
        }
        Factor::Ik(k, n) => {
            let jet = dgf::ir_jet(k, pole, n, terms as u32 - 1)?;
            Ok(LaurentSeries::from_consts(
                pole,
                0,
                jet.iter().map(|&(v, e)| CVal::with_err(v, e)).collect(),
            ))
        }
    }
}

/// 1/(s + shift) at `pole`: a bare 1/h when the pole cancels the factor,
/// otherwise a geometric expansion.
fn expand_inv_linear(pole: Complex64, shift: f64, terms: usize) -> Result<LaurentSeries> {
    let base = pole + shift;
    if base.norm() < 1e-9 {
        let mut coeffs = vec![CVal::zero(); terms];
        coeffs[0] = CVal::from_f64(1.0);
        Ok(LaurentSeries::from_consts(pole, -1, coeffs))
    } else {
        let inv = base.inv();
        let mut coeffs = Vec::with_capacity(terms);
        let mut cur = inv;
        for _ in 0..terms {
            coeffs.push(CVal::new(cur));
            cur = -cur * inv;
        }
        Ok(LaurentSeries::from_consts(pole, 0, coeffs))
    }
}

fn poly_on_series(coeffs: &[num_rational::BigRational], x: &LaurentSeries) -> LaurentSeries {
    use num_traits::ToPrimitive;
    let terms = x.coeffs.len();
    let mut acc = LaurentSeries::from_consts(x.center, 0, vec![CVal::zero(); terms]);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x);
        let cf = c.to_f64().unwrap_or(f64::NAN);
        let mut bump = acc.coeff(0);
        bump.0.resize(bump.0.len().max(1), CVal::zero());
        bump.0[0] = bump.0[0].add(CVal::with_err(
            Complex64::new(cf, 0.0),
            cf.abs() * f64::EPSILON,
        ));
        let idx = (0 - acc.min_order) as usize;
        acc.coeffs[idx] = bump;
    }
    acc
}

/// Expansion of a rational function of x = 2^s at a pole on the line
/// Re s = σ. Every such factor has identical Laurent data at each pole of
/// the line because 2^{θ_j} = 2^σ.
fn expand_rational(rf: &RatFunc2s, pole: Complex64, terms: usize) -> Result<LaurentSeries> {
    let order = rf.pow_xm1.max(rf.pow_xm2) as usize;
    let len = terms + order + 2;
    let x0 = 2.0f64.powf(pole.re);
    // x(h) = x0 e^{h ln2}: coefficient r is x0 · ln2^r / r!
    let mut xs = Vec::with_capacity(len);
    let mut pow = 1.0f64;
    let mut fact = 1.0f64;
    for r in 0..len {
        if r > 0 {
            pow *= LN2;
            fact *= r as f64;
        }
        xs.push(CVal::new(Complex64::new(x0 * pow / fact, 0.0)));
    }
    let x = LaurentSeries::from_consts(pole, 0, xs);

    let num = poly_on_series(rf.num.coeffs(), &x);

    let mut den = LaurentSeries::one(pole, len);
    for _ in 0..rf.pow_x {
        den = den.mul(&x);
    }
    if rf.pow_xm1 > 0 {
        let xm1 = add_const(&x, -1.0).trim_leading_zeros();
        for _ in 0..rf.pow_xm1 {
            den = den.mul(&xm1);
        }
    }
    if rf.pow_xm2 > 0 {
        let xm2 = add_const(&x, -2.0).trim_leading_zeros();
        for _ in 0..rf.pow_xm2 {
            den = den.mul(&xm2);
        }
    }
    if rf.unit.coeffs() != [num_rational::BigRational::from(num_bigint::BigInt::from(1))] {
        den = den.mul(&poly_on_series(rf.unit.coeffs(), &x));
    }
    Ok(num.mul(&den.inv()?))
}

fn add_const(x: &LaurentSeries, c: f64) -> LaurentSeries {
    let mut out = x.clone();
    debug_assert!(out.min_order <= 0);
    let idx = (0 - out.min_order) as usize;
    let mut p = out.coeffs[idx].clone();
    if p.0.is_empty() {
        p.0.push(CVal::zero());
    }
    p.0[0] = p.0[0].add(CVal::from_f64(c));
    out.coeffs[idx] = p;
    out
}

/// One residue: n^σ e^{2πij lg n} · Σ_i lg_coeffs[i] · lg^i n.
#[derive(Clone, Debug)]
pub struct ResidueTerm {
    pub sigma: f64,
    pub j: i64,
    pub lg_coeffs: Vec<CVal>,
}

impl ResidueTerm {
    pub fn coeff(&self, power: usize) -> CVal {
        self.lg_coeffs.get(power).copied().unwrap_or_else(CVal::zero)
    }
}

/// Residue of the kernel at an arbitrary pole point.
pub fn residue_at(kernel: &KernelSpec, pole: Complex64, cfg: &EngineConfig) -> Result<ResidueTerm> {
    residue_indexed(kernel, pole, i64::MAX, cfg)
}

/// Residue at the line pole θ_j.
pub fn residue(kernel: &KernelSpec, sigma: f64, j: i64, cfg: &EngineConfig) -> Result<ResidueTerm> {
    residue_indexed(kernel, pole_point(sigma, j), j, cfg)
}

fn residue_indexed(
    kernel: &KernelSpec,
    pole: Complex64,
    j: i64,
    cfg: &EngineConfig,
) -> Result<ResidueTerm> {
    let order = kernel.pole_order(pole);
    let terms = order as usize + cfg.extra_orders + 2;
    let rational = expand_factor(Factor::Rational(&kernel.rational), pole, terms)?;
    residue_with_rational(kernel, pole, j, &rational, cfg)
}

/// As `residue`, with the (j-independent) rational expansion supplied.
fn residue_with_rational(
    kernel: &KernelSpec,
    pole: Complex64,
    j: i64,
    rational: &LaurentSeries,
    cfg: &EngineConfig,
) -> Result<ResidueTerm> {
    let order = kernel.pole_order(pole);
    let terms = order as usize + cfg.extra_orders + 2;
    let mut prod = rational.clone();
    if kernel.zeta_power > 0 {
        let z = expand_factor(Factor::Zeta, pole, terms)?;
        for _ in 0..kernel.zeta_power {
            prod = prod.mul(&z);
        }
    }
    for &(k, mult) in &kernel.ik {
        let ik = expand_factor(Factor::Ik(k, cfg.ir_terms), pole, terms)?;
        for _ in 0..mult {
            prod = prod.mul(&ik);
        }
    }
    prod = prod.mul(&expand_factor(Factor::InvS, pole, terms)?);
    prod = prod.mul(&expand_factor(Factor::InvSPlus1, pole, terms)?);
    if kernel.denom == DenomShape::SSp1Sp2 {
        prod = prod.mul(&expand_factor(Factor::InvSPlus2, pole, terms)?);
    }
    if kernel.n_pow {
        prod = prod.mul(&expand_factor(Factor::NPow, pole, terms)?);
    }
    if prod.min_order < -(order as i32) {
        // leading coefficients must be structural zeros, not content
        for ord in prod.min_order..-(order as i32) {
            let c = prod.coeff(ord);
            let mag: f64 = c.0.iter().map(|x| x.v.norm()).sum();
            if mag > 1e-10 {
                return Err(Error::Truncation {
                    needed: ord,
                    tracked: -(order as i32),
                });
            }
        }
    }
    if prod.top_order() < -1 {
        return Err(Error::Truncation {
            needed: -1,
            tracked: prod.top_order(),
        });
    }
    let poly = prod.coeff(-1);
    // Λ^r → ln^r 2 · lg^r n
    let mut lg_coeffs = Vec::with_capacity(poly.0.len());
    let mut scale = 1.0f64;
    for (r, c) in poly.0.iter().enumerate() {
        if r > 0 {
            scale *= LN2;
        }
        lg_coeffs.push(c.scale(scale));
    }
    Ok(ResidueTerm {
        sigma: pole.re,
        j: if j == i64::MAX { 0 } else { j },
        lg_coeffs,
    })
}

/// Fourier data for one lg-power of a line sum.
#[derive(Clone, Debug)]
pub struct PowerCoeff {
    pub lg_power: u32,
    pub mean: f64,
    pub mean_err: f64,
    /// a_j for j = 1..=J (a_{−j} is the conjugate).
    pub coeffs: Vec<Complex64>,
    pub coeff_errs: Vec<f64>,
    /// Truncation tail beyond J plus accumulated coefficient error.
    pub tail: f64,
    /// True when no pole off the real axis feeds this power (a λ_i term).
    pub is_constant: bool,
    /// Fitted growth exponent A of |a_j| ~ C log²j · j^{A−2}.
    pub fitted_a: f64,
}

/// Sum of residues over a vertical pole line, organized by lg-power.
#[derive(Clone, Debug)]
pub struct LineSum {
    pub sigma: f64,
    pub powers: Vec<PowerCoeff>,
}

/// Sums residues at θ_j for |j| <= j_max on the line Re s = sigma (0 or 1),
/// reorganized as Σ_i n^σ lg^i n (λ_i + F_i(lg n)).
pub fn sum_over_line(
    kernel: &KernelSpec,
    sigma: f64,
    j_max: u32,
    cfg: &EngineConfig,
) -> Result<LineSum> {
    assert!(sigma == 0.0 || sigma == 1.0, "pole lines sit at σ = 0 or 1");
    let center = residue(kernel, sigma, 0, cfg)?;

    let off_order = kernel.pole_order(pole_point(sigma, 1));
    let terms = off_order as usize + cfg.extra_orders + 2;
    let rational = expand_factor(
        Factor::Rational(&kernel.rational),
        pole_point(sigma, 1),
        terms,
    )?;

    let rows: Result<Vec<ResidueTerm>> = (1..=j_max as i64)
        .into_par_iter()
        .map(|j| residue_with_rational(kernel, pole_point(sigma, j), j, &rational, cfg))
        .collect();
    let rows = rows?;

    // conjugate pairing spot check on the first few poles
    for j in 1..=(cfg.conj_check.min(j_max) as i64) {
        let mirror = residue_with_rational(kernel, pole_point(sigma, -j), -j, &rational, cfg)?;
        let row = &rows[(j - 1) as usize];
        for (a, b) in row.lg_coeffs.iter().zip(mirror.lg_coeffs.iter()) {
            let d = (a.v.conj() - b.v).norm();
            if d > 1e-9 * (1.0 + a.v.norm()) {
                return Err(Error::Domain(format!(
                    "conjugate pairing violated at j = {j}: {d:.3e}"
                )));
            }
        }
    }

    let n_powers = rows
        .iter()
        .map(|r| r.lg_coeffs.len())
        .chain(std::iter::once(center.lg_coeffs.len()))
        .max()
        .unwrap_or(0);
    let mut powers = Vec::with_capacity(n_powers);
    for i in 0..n_powers {
        let mc = center.coeff(i);
        let mean = mc.v.re;
        let mean_err = mc.err + mc.v.im.abs();
        let coeffs: Vec<Complex64> = rows.iter().map(|r| r.coeff(i).v).collect();
        let coeff_errs: Vec<f64> = rows.iter().map(|r| r.coeff(i).err).collect();
        let is_constant = rows.iter().all(|r| i >= r.lg_coeffs.len());
        let (fitted_a, fit_tail) = if is_constant {
            (f64::NEG_INFINITY, 0.0)
        } else {
            decay_fit_tail(&coeffs, j_max)?
        };
        let tail = fit_tail + coeff_errs.iter().sum::<f64>();
        powers.push(PowerCoeff {
            lg_power: i as u32,
            mean,
            mean_err,
            coeffs,
            coeff_errs,
            tail,
            is_constant,
            fitted_a,
        });
    }
    Ok(LineSum { sigma, powers })
}

/// Tail bound beyond j_max for an explicitly built coefficient sequence.
pub fn decay_tail_for(coeffs: &[Complex64], j_max: u32) -> Result<f64> {
    decay_fit_tail(coeffs, j_max).map(|(_, t)| t)
}

/// Fits |a_j| ~ C·log²j·j^{A−2} on the top half of the range and returns
/// (A, certified-style tail beyond J). Refuses non-decaying data.
fn decay_fit_tail(coeffs: &[Complex64], j_max: u32) -> Result<(f64, f64)> {
    let lo = (j_max / 2).max(2) as usize;
    let pts: Vec<(f64, f64)> = (lo..=coeffs.len())
        .filter_map(|j| {
            let m = coeffs[j - 1].norm();
            (m > 0.0).then(|| ((j as f64).ln(), m.ln()))
        })
        .collect();
    if pts.len() < 4 {
        // too few nonzero coefficients to fit; fall back to a direct bound
        let last = coeffs.iter().rev().take(8).map(|c| c.norm()).fold(0.0, f64::max);
        return Ok((f64::NEG_INFINITY, 2.0 * last * j_max as f64));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let a = slope + 2.0;
    if a >= 1.0 {
        return Err(Error::NonDecaying { a });
    }
    // C = max |a_j| / (log²j · j^{A−2}) over the fit range
    let mut c = 0.0f64;
    for j in lo..=coeffs.len() {
        let m = coeffs[j - 1].norm();
        let model = (j as f64).ln().powi(2) * (j as f64).powf(a - 2.0);
        if model > 0.0 {
            c = c.max(m / model);
        }
    }
    // Σ_{|j|>J} C log²j j^{A−2} <= 2C ∫_J^∞ t^{A−2} log²t dt
    let tail = 2.0 * c * crate::dgf::log_power_integral_tail_pub(j_max as f64, 2.0 - a, 2, 0.0);
    Ok((a, tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{qi, PolyQ};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    /// K_k(s) = n^s/((1−2^{−s})^{k−1} s(s+1))
    fn kernel_mdc(k: u32) -> KernelSpec {
        KernelSpec::new(
            RatFunc2s::new(PolyQ::x().pow(k - 1), 0, k - 1, 0),
            0,
            DenomShape::SSp1,
        )
    }

    /// K_M(s) = 2^{(M−1)(s−1)} ζ(s) n^s/((2^{s−1}−1)^M s(s+1))
    fn kernel_ts(m: u32) -> KernelSpec {
        KernelSpec::new(
            RatFunc2s::new(PolyQ::x().pow(m - 1).scale(&qi(2)), 0, 0, m),
            1,
            DenomShape::SSp1,
        )
    }

    #[test]
    fn residue_k_m_at_zero_is_alternating() {
        // Res(K_M, s=0) = (−1)^{M+1}
        for m in 1..=4u32 {
            let r = residue_at(&kernel_ts(m), Complex64::new(0.0, 0.0), &cfg()).unwrap();
            let want = if m % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(r.lg_coeffs.len(), 1, "simple pole gives a constant");
            assert!(
                (r.coeff(0).v.re - want).abs() < 1e-10,
                "M = {m}: {:?}",
                r.coeff(0)
            );
            assert!(r.coeff(0).v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn residue_k_k_at_minus_one() {
        // Res(K_k, s=−1)·n = (−1)^k
        for k in 2..=5u32 {
            let r = residue_at(&kernel_mdc(k), Complex64::new(-1.0, 0.0), &cfg()).unwrap();
            let want = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((r.coeff(0).v.re - want).abs() < 1e-10, "k = {k}");
            assert_eq!(r.sigma, -1.0);
        }
    }

    #[test]
    fn residue_k2_at_zero_matches_hand_expansion() {
        // Res(K₂, 0) = lg n + (1/2 − 1/ln2)
        let r = residue_at(&kernel_mdc(2), Complex64::new(0.0, 0.0), &cfg()).unwrap();
        assert!((r.coeff(1).v.re - 1.0).abs() < 1e-12);
        assert!((r.coeff(0).v.re - (0.5 - 1.0 / LN2)).abs() < 1e-12);
    }

    #[test]
    fn residue_k2_at_beta_j() {
        // Res(K₂, β_j) = e^{2πij lg n}/(ln2 · β_j(β_j+1))
        for j in [1i64, 2, 7] {
            let r = residue(&kernel_mdc(2), 0.0, j, &cfg()).unwrap();
            let bj = pole_point(0.0, j);
            let want = (LN2 * bj * (bj + 1.0)).inv();
            assert!((r.coeff(0).v - want).norm() < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn truncation_stability() {
        // same residue at extra orders T and T+5, coefficient-wise
        let k = kernel_ts(2);
        let mut c5 = cfg();
        c5.extra_orders = 9;
        let a = residue(&k, 1.0, 3, &cfg()).unwrap();
        let b = residue(&k, 1.0, 3, &c5).unwrap();
        assert_eq!(a.lg_coeffs.len(), b.lg_coeffs.len());
        for (x, y) in a.lg_coeffs.iter().zip(b.lg_coeffs.iter()) {
            assert!((x.v - y.v).norm() <= 1e-12 * (1.0 + x.v.norm()));
        }
    }

    #[test]
    fn ts1_line_sum_structure() {
        // K_1, σ=1: λ coefficient of n lg n is 1/(2·1!) and the constant
        // mean is (2γ₀ − 3 − ln2)/(4 ln2)
        let line = sum_over_line(&kernel_ts(1), 1.0, 64, &cfg()).unwrap();
        assert_eq!(line.powers.len(), 2);
        let top = &line.powers[1];
        assert!(top.is_constant);
        assert!((top.mean - 0.5).abs() < 1e-11);
        let f0 = &line.powers[0];
        assert!(!f0.is_constant);
        let g0 = special::StieltjesTable::get().gamma(0).unwrap();
        let want = (2.0 * g0 - 3.0 - LN2) / (4.0 * LN2);
        assert!((f0.mean - want).abs() < 1e-11, "{} vs {want}", f0.mean);
        // j-coefficient: ζ(α_j)/(ln2 · α_j(α_j+1)) — simple-pole residue
        let a1 = pole_point(1.0, 1);
        let z = special::zeta(a1).unwrap();
        let want1 = z / (LN2 * a1 * (a1 + 1.0));
        assert!((f0.coeffs[0] - want1).norm() < 1e-10);
        assert!(f0.fitted_a < 1.0);
    }

    #[test]
    fn mdc_k2_line_sum_mean() {
        let line = sum_over_line(&kernel_mdc(2), 0.0, 64, &cfg()).unwrap();
        let f0 = &line.powers[0];
        assert!((f0.mean - (0.5 - 1.0 / LN2)).abs() < 1e-12);
        for (j, c) in f0.coeffs.iter().enumerate().take(8) {
            let bj = pole_point(0.0, (j + 1) as i64);
            let want = (LN2 * bj * (bj + 1.0)).inv();
            assert!((c - want).norm() < 1e-12);
        }
        assert!((line.powers[1].mean - 1.0).abs() < 1e-12);
        assert!(line.powers[1].is_constant);
    }
}
