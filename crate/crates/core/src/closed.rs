//! The theorem-level exact formulas, assembled as evaluatable objects:
//! sums of (n·)lg^m n terms whose coefficients are constants or period-one
//! Fourier series, plus an additive constant.
//!
//! Two construction routes exist for the first weighted-sum average: the
//! explicit zeta-coefficient formulas and the residue engine. They are
//! compared in the verification suites.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dgf::{self, BaseFactor};
use crate::digital;
use crate::error::{Error, Result};
use crate::poly::{qi, PolyQ, RatFunc2s};
use crate::residue::{
    self, pole_point, DenomShape, EngineConfig, KernelSpec, LineSum,
};
use crate::special::{self, StieltjesTable};

pub const LN2: f64 = std::f64::consts::LN_2;

/// Default Fourier truncation for the zeta-backed closed forms.
pub const J_DEFAULT: u32 = 2000;
/// Default truncation when I_k derivative jets feed every coefficient.
pub const J_IK_DEFAULT: u32 = 50;

/// Mean value plus Fourier coefficients a_j (j >= 1; negative j are the
/// conjugates) of a period-one function, with a truncation tail bound.
#[derive(Clone, Debug)]
pub struct FourierSeries1 {
    pub mean: f64,
    pub mean_err: f64,
    pub coeffs: Vec<Complex64>,
    pub coeff_errs: Vec<f64>,
    pub tail: f64,
}

impl FourierSeries1 {
    pub fn constant(mean: f64) -> FourierSeries1 {
        FourierSeries1 {
            mean,
            mean_err: 0.0,
            coeffs: Vec::new(),
            coeff_errs: Vec::new(),
            tail: 0.0,
        }
    }

    pub fn j_max(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeff(&self, j: u32) -> Complex64 {
        if j == 0 {
            Complex64::new(self.mean, 0.0)
        } else {
            self.coeffs
                .get(j as usize - 1)
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0))
        }
    }

    /// Evaluates at u (period one; u is reduced to its fractional part, so
    /// eval(u + 1) is bit-identical to eval(u) whenever u + 1 is exact).
    pub fn eval(&self, u: f64) -> f64 {
        let u = u - u.floor();
        let mut acc = self.mean;
        for (jm1, a) in self.coeffs.iter().enumerate() {
            let j = (jm1 + 1) as f64;
            let ang = std::f64::consts::TAU * (j * u).fract();
            let (s, c) = ang.sin_cos();
            acc += 2.0 * (a.re * c - a.im * s);
        }
        acc
    }

    pub fn truncated(&self, j_keep: u32) -> FourierSeries1 {
        let keep = (j_keep as usize).min(self.coeffs.len());
        let dropped: f64 = self.coeffs[keep..].iter().map(|c| 2.0 * c.norm()).sum();
        FourierSeries1 {
            mean: self.mean,
            mean_err: self.mean_err,
            coeffs: self.coeffs[..keep].to_vec(),
            coeff_errs: self.coeff_errs[..keep].to_vec(),
            tail: self.tail + dropped,
        }
    }

    fn add(&self, o: &FourierSeries1) -> FourierSeries1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &Vec<Complex64>, i: usize| v.get(i).copied().unwrap_or_default();
        let gete = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or_default();
        FourierSeries1 {
            mean: self.mean + o.mean,
            mean_err: self.mean_err + o.mean_err,
            coeffs: (0..n)
                .map(|i| get(&self.coeffs, i) + get(&o.coeffs, i))
                .collect(),
            coeff_errs: (0..n)
                .map(|i| gete(&self.coeff_errs, i) + gete(&o.coeff_errs, i))
                .collect(),
            tail: self.tail + o.tail,
        }
    }

    fn scale(&self, c: f64) -> FourierSeries1 {
        FourierSeries1 {
            mean: self.mean * c,
            mean_err: self.mean_err * c.abs(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            coeff_errs: self.coeff_errs.iter().map(|e| e * c.abs()).collect(),
            tail: self.tail * c.abs(),
        }
    }

    /// Σ_j |a_j| bound on the oscillating part (the series is absolutely
    /// convergent; this is the enclosure used by error reporting).
    pub fn oscillation_bound(&self) -> f64 {
        2.0 * self.coeffs.iter().map(|c| c.norm()).sum::<f64>() + self.tail
    }
}

/// Coefficient of one closed-form term.
#[derive(Clone, Debug)]
pub enum CoeffKind {
    Const { value: f64, err: f64 },
    Periodic(FourierSeries1),
}

impl CoeffKind {
    pub fn value_at(&self, u: f64) -> f64 {
        match self {
            CoeffKind::Const { value, .. } => *value,
            CoeffKind::Periodic(f) => f.eval(u),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            CoeffKind::Const { value, .. } => *value,
            CoeffKind::Periodic(f) => f.mean,
        }
    }

    fn err_bound(&self) -> f64 {
        match self {
            CoeffKind::Const { err, .. } => *err,
            CoeffKind::Periodic(f) => f.tail + f.mean_err + f.coeff_errs.iter().sum::<f64>(),
        }
    }

    fn scale(&self, c: f64) -> CoeffKind {
        match self {
            CoeffKind::Const { value, err } => CoeffKind::Const {
                value: value * c,
                err: err * c.abs(),
            },
            CoeffKind::Periodic(f) => CoeffKind::Periodic(f.scale(c)),
        }
    }
}

/// One term (n·)lg^m n × coefficient.
#[derive(Clone, Debug)]
pub struct Term {
    pub times_n: bool,
    pub lg_power: u32,
    pub coeff: CoeffKind,
}

/// Structured closed form: Σ terms + constant.
#[derive(Clone, Debug, Default)]
pub struct ClosedFormExpr {
    pub terms: Vec<Term>,
    pub constant: f64,
    pub constant_err: f64,
}

/// Scale convention for deviation reports.
#[derive(Clone, Copy, Debug)]
pub enum Scale {
    /// n
    N,
    /// n · lg^p n
    NLgPow(u32),
}

impl Scale {
    pub fn value(&self, n: u64) -> f64 {
        let lg = lg_exact(n);
        match self {
            Scale::N => n as f64,
            Scale::NLgPow(p) => n as f64 * lg.powi(*p as i32),
        }
    }
}

/// lg n with the dyadic part exact: n = 2^a·m gives a + lg m.
pub fn lg_exact(n: u64) -> f64 {
    let (a, m) = digital::odd_split(n);
    if m == 1 {
        a as f64
    } else {
        a as f64 + (m as f64).ln() / LN2
    }
}

/// Fractional part of lg n, shared by n and 2n bit-for-bit.
pub fn lg_frac(n: u64) -> f64 {
    let (_, m) = digital::odd_split(n);
    if m == 1 {
        0.0
    } else {
        let lg_m = (m as f64).ln() / LN2;
        lg_m - lg_m.floor()
    }
}

impl ClosedFormExpr {
    pub fn push(&mut self, term: Term) {
        if let Some(existing) = self
            .terms
            .iter_mut()
            .find(|t| t.times_n == term.times_n && t.lg_power == term.lg_power)
        {
            existing.coeff = merge_coeffs(&existing.coeff, &term.coeff);
        } else {
            self.terms.push(term);
        }
    }

    pub fn add_expr(&mut self, o: &ClosedFormExpr) {
        for t in &o.terms {
            self.push(t.clone());
        }
        self.constant += o.constant;
        self.constant_err += o.constant_err;
    }

    pub fn scale(&self, c: f64) -> ClosedFormExpr {
        ClosedFormExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    times_n: t.times_n,
                    lg_power: t.lg_power,
                    coeff: t.coeff.scale(c),
                })
                .collect(),
            constant: self.constant * c,
            constant_err: self.constant_err * c.abs(),
        }
    }

    pub fn find(&self, times_n: bool, lg_power: u32) -> Option<&Term> {
        self.terms
            .iter()
            .find(|t| t.times_n == times_n && t.lg_power == lg_power)
    }

    pub fn eval(&self, n: u64) -> f64 {
        let u = lg_frac(n);
        let lg = lg_exact(n);
        let nf = n as f64;
        let mut acc = self.constant;
        for t in &self.terms {
            let mut v = t.coeff.value_at(u) * lg.powi(t.lg_power as i32);
            if t.times_n {
                v *= nf;
            }
            acc += v;
        }
        acc
    }

    /// |cf(n) − exact| / scale(n), maximized over the sample.
    pub fn max_scaled_deviation(&self, sample: &[(u64, f64)], scale: Scale) -> f64 {
        sample
            .iter()
            .map(|&(n, exact)| (self.eval(n) - exact).abs() / scale.value(n))
            .fold(0.0, f64::max)
    }

    /// Reported error bound at n, divided by scale(n): Fourier tails and
    /// coefficient uncertainties, combined with their lg/n weights.
    pub fn scaled_error_bound(&self, n: u64, scale: Scale) -> f64 {
        let lg = lg_exact(n);
        let nf = n as f64;
        let mut acc = self.constant_err;
        for t in &self.terms {
            let mut w = lg.powi(t.lg_power as i32);
            if t.times_n {
                w *= nf;
            }
            acc += t.coeff.err_bound() * w.abs();
        }
        acc / scale.value(n)
    }

    /// Same closed form with every Fourier series truncated to j <= j_keep.
    pub fn truncated(&self, j_keep: u32) -> ClosedFormExpr {
        ClosedFormExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    times_n: t.times_n,
                    lg_power: t.lg_power,
                    coeff: match &t.coeff {
                        CoeffKind::Const { value, err } => CoeffKind::Const {
                            value: *value,
                            err: *err,
                        },
                        CoeffKind::Periodic(f) => CoeffKind::Periodic(f.truncated(j_keep)),
                    },
                })
                .collect(),
            constant: self.constant,
            constant_err: self.constant_err,
        }
    }

    /// The periodic coefficients, for period-structure checks.
    pub fn periodic_terms(&self) -> impl Iterator<Item = (&Term, &FourierSeries1)> {
        self.terms.iter().filter_map(|t| match &t.coeff {
            CoeffKind::Periodic(f) => Some((t, f)),
            _ => None,
        })
    }
}

fn merge_coeffs(a: &CoeffKind, b: &CoeffKind) -> CoeffKind {
    match (a, b) {
        (CoeffKind::Const { value: x, err: ex }, CoeffKind::Const { value: y, err: ey }) => {
            CoeffKind::Const {
                value: x + y,
                err: ex + ey,
            }
        }
        (CoeffKind::Const { value, err }, CoeffKind::Periodic(f))
        | (CoeffKind::Periodic(f), CoeffKind::Const { value, err }) => {
            let mut g = f.clone();
            g.mean += value;
            g.mean_err += err;
            CoeffKind::Periodic(g)
        }
        (CoeffKind::Periodic(f), CoeffKind::Periodic(g)) => CoeffKind::Periodic(f.add(g)),
    }
}

/// Converts one line sum into closed-form terms. `times_n` says whether
/// the n^σ factor (σ = 1) or an external n multiplier applies.
fn line_terms(line: &LineSum, times_n: bool, scale: f64) -> Vec<Term> {
    line.powers
        .iter()
        .map(|p| {
            let coeff = if p.is_constant {
                CoeffKind::Const {
                    value: p.mean * scale,
                    err: p.mean_err * scale.abs(),
                }
            } else {
                CoeffKind::Periodic(
                    FourierSeries1 {
                        mean: p.mean,
                        mean_err: p.mean_err,
                        coeffs: p.coeffs.clone(),
                        coeff_errs: p.coeff_errs.clone(),
                        tail: p.tail,
                    }
                    .scale(scale),
                )
            };
            Term {
                times_n,
                lg_power: p.lg_power,
                coeff,
            }
        })
        .collect()
}

/// K_k(s) = n^s/((1−2^{−s})^{k−1} s(s+1)) for the divide-and-conquer cost.
pub fn kernel_mdc(k: u32) -> KernelSpec {
    KernelSpec::new(
        RatFunc2s::new(PolyQ::x().pow(k - 1), 0, k - 1, 0),
        0,
        DenomShape::SSp1,
    )
}

/// K_M(s) = 2^{(M−1)(s−1)} ζ(s) n^s / ((2^{s−1}−1)^M s(s+1)), without the
/// M! prefactor.
pub fn kernel_ts(m: u32) -> KernelSpec {
    KernelSpec::new(
        RatFunc2s::new(PolyQ::x().pow(m - 1).scale(&qi(2)), 0, 0, m),
        1,
        DenomShape::SSp1,
    )
}

/// (2^s−2)/(2^s−1) ζ n^s / (s(s+1)(s+2))
pub fn kernel_tw_first() -> KernelSpec {
    KernelSpec::new(
        RatFunc2s::new(PolyQ::x_minus(2), 0, 1, 0),
        1,
        DenomShape::SSp1Sp2,
    )
}

/// (2^s−2)/(2^s−1) ζ n^s / (s(s+1))
pub fn kernel_tw_second() -> KernelSpec {
    KernelSpec::new(
        RatFunc2s::new(PolyQ::x_minus(2), 0, 1, 0),
        1,
        DenomShape::SSp1,
    )
}

/// ζ n^s / ((2^s−1)(2^s−2) s(s+1))
pub fn kernel_tw_third() -> KernelSpec {
    KernelSpec::new(RatFunc2s::new(PolyQ::one(), 0, 1, 1), 1, DenomShape::SSp1)
}

/// Checks a residue against its known integer (or quarter-integer) value
/// and returns the rounded constant.
fn snapped_residue(kernel: &KernelSpec, at: Complex64, cfg: &EngineConfig, den: f64) -> Result<f64> {
    let r = residue::residue_at(kernel, at, cfg)?;
    let v = r.coeff(0).v;
    let snapped = (v.re * den).round() / den;
    if (v.re - snapped).abs() > 1e-9 || v.im.abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "residue at {at} expected near a multiple of 1/{den}, got {v}"
        )));
    }
    Ok(snapped)
}

/// Exact closed form of the ECDF-k cost:
/// f^k_n = n lg^{k−1} n/(k−1)! + Σ_m (n lg^m n) A^k_m(lg n) + c_k.
///
/// The k = 2 base case is the known explicit series (mean ½ − 1/ln2,
/// coefficients 1/(ln2·β_j(β_j+1))); each further dimension adds the K_k
/// line sum at σ = 0 and the residue at s = −1.
pub fn mdc_closed_form(k: u32, j_max: u32, cfg: &EngineConfig) -> Result<ClosedFormExpr> {
    if !(2..=digital::K_CAP).contains(&k) {
        return Err(Error::CapExceeded {
            name: "k",
            got: k,
            cap: digital::K_CAP,
        });
    }
    let mut cf = ClosedFormExpr::default();
    // k = 2: f² = n lg n + n A₀²(lg n) + 1
    cf.push(Term {
        times_n: true,
        lg_power: 1,
        coeff: CoeffKind::Const {
            value: 1.0,
            err: 0.0,
        },
    });
    let a02: Vec<Complex64> = (1..=j_max as i64)
        .map(|j| {
            let bj = pole_point(0.0, j);
            (LN2 * bj * (bj + 1.0)).inv()
        })
        .collect();
    let tail = residue::decay_tail_for(&a02, j_max)?;
    cf.push(Term {
        times_n: true,
        lg_power: 0,
        coeff: CoeffKind::Periodic(FourierSeries1 {
            mean: 0.5 - 1.0 / LN2,
            mean_err: 0.0,
            coeff_errs: vec![0.0; a02.len()],
            coeffs: a02,
            tail,
        }),
    });
    cf.constant = 1.0;

    for kk in 3..=k {
        let kern = kernel_mdc(kk);
        let line = residue::sum_over_line(&kern, 0.0, j_max, cfg)?;
        for t in line_terms(&line, true, 1.0) {
            cf.push(t);
        }
        // n · Res(K_k, −1) = (−1)^k
        cf.constant += snapped_residue(&kern, Complex64::new(-1.0, 0.0), cfg, 1.0)?;
    }
    Ok(cf)
}

/// Exact closed form of TS_M:
/// ½ n lg^M n + Σ_d (n lg^d n) F_{M,d}(lg n) + (−1)^{M+1} M!.
pub fn ts_closed_form(m: u32, j_max: u32, cfg: &EngineConfig) -> Result<ClosedFormExpr> {
    if m < 1 || m > 4 {
        return Err(Error::CapExceeded {
            name: "M",
            got: m,
            cap: 4,
        });
    }
    let kern = kernel_ts(m);
    let line = residue::sum_over_line(&kern, 1.0, j_max, cfg)?;
    let mut cf = ClosedFormExpr::default();
    for t in line_terms(&line, true, 1.0) {
        cf.push(t);
    }
    cf.constant = snapped_residue(&kern, Complex64::new(0.0, 0.0), cfg, 1.0)?;
    let mut mf = 1.0;
    for i in 2..=m as u64 {
        mf *= i as f64;
    }
    Ok(cf.scale(mf))
}

fn zeta_on_line(sigma: f64, j_max: u32) -> Result<Vec<Complex64>> {
    (1..=j_max as i64)
        .into_par_iter()
        .map(|j| special::zeta(pole_point(sigma, j)))
        .collect()
}

/// Exact closed form of TW₁ from the explicit coefficient formulas of the
/// three vertical integrals: TW₁(n) = n F_{W,1}(lg n) − ¼ lg n + F_{W,0}(lg n).
pub fn tw1_closed_form(j_max: u32) -> Result<ClosedFormExpr> {
    let mc = special::MathConstants::get();
    let g0 = StieltjesTable::get().gamma(0)?;
    let zb = zeta_on_line(0.0, j_max)?;
    let za = zeta_on_line(1.0, j_max)?;

    let series = |mean: f64, coeffs: Vec<Complex64>| -> Result<FourierSeries1> {
        let tail = residue::decay_tail_for(&coeffs, j_max)?;
        Ok(FourierSeries1 {
            mean,
            mean_err: 1e-13,
            coeff_errs: vec![special::ZETA_ABS_BUDGET; coeffs.len()],
            coeffs,
            tail,
        })
    };

    // H₁: mean (2lnπ − ln2 − 3)/(8ln2), a_j = −ζ(β_j)/(ln2·β_j(β_j+1)(β_j+2))
    let h1 = series(
        (2.0 * mc.ln_pi - LN2 - 3.0) / (8.0 * LN2),
        (1..=j_max as i64)
            .map(|j| {
                let b = pole_point(0.0, j);
                -zb[j as usize - 1] / (LN2 * b * (b + 1.0) * (b + 2.0))
            })
            .collect(),
    )?;
    // H₂: mean (2lnπ − ln2 − 2)/(8ln2), a_j = −ζ(β_j)/(2ln2·β_j(β_j+1))
    let h2 = series(
        (2.0 * mc.ln_pi - LN2 - 2.0) / (8.0 * LN2),
        (1..=j_max as i64)
            .map(|j| {
                let b = pole_point(0.0, j);
                -zb[j as usize - 1] / (2.0 * LN2 * b * (b + 1.0))
            })
            .collect(),
    )?;
    // H₃₁: mean (2lnπ + 3ln2 − 2)/(4ln2), a_j = −ζ(β_j)/(ln2·β_j(β_j+1))
    let h31 = series(
        (2.0 * mc.ln_pi + 3.0 * LN2 - 2.0) / (4.0 * LN2),
        (1..=j_max as i64)
            .map(|j| {
                let b = pole_point(0.0, j);
                -zb[j as usize - 1] / (LN2 * b * (b + 1.0))
            })
            .collect(),
    )?;
    // H₃₂: mean (2γ₀ − 3 − 5ln2)/(8ln2), a_j = +ζ(α_j)/(2ln2·α_j(α_j+1))
    let h32 = series(
        (2.0 * g0 - 3.0 - 5.0 * LN2) / (8.0 * LN2),
        (1..=j_max as i64)
            .map(|j| {
                let a = pole_point(1.0, j);
                za[j as usize - 1] / (2.0 * LN2 * a * (a + 1.0))
            })
            .collect(),
    )?;

    let fw1 = h1.add(&h32.scale(-1.0));
    let mut fw0 = h2.add(&h31.scale(-1.0));
    fw0.mean += 0.25;

    let mut cf = ClosedFormExpr::default();
    cf.push(Term {
        times_n: true,
        lg_power: 0,
        coeff: CoeffKind::Periodic(fw1),
    });
    cf.push(Term {
        times_n: false,
        lg_power: 1,
        coeff: CoeffKind::Const {
            value: -0.25,
            err: 0.0,
        },
    });
    cf.push(Term {
        times_n: false,
        lg_power: 0,
        coeff: CoeffKind::Periodic(fw0),
    });
    Ok(cf)
}

/// TW₁ assembled through the residue engine (cross-check route).
pub fn tw1_closed_form_residues(j_max: u32, cfg: &EngineConfig) -> Result<ClosedFormExpr> {
    let mut cf = ClosedFormExpr::default();
    // first integral: n × line at σ=0, plus n·Res at s=−1 (= ¼)
    let k1 = kernel_tw_first();
    let line = residue::sum_over_line(&k1, 0.0, j_max, cfg)?;
    for t in line_terms(&line, true, 1.0) {
        cf.push(t);
    }
    cf.constant += snapped_residue(&k1, Complex64::new(-1.0, 0.0), cfg, 4.0)?;
    // second integral carries ½ (the 1/4πi prefactor)
    let line = residue::sum_over_line(&kernel_tw_second(), 0.0, j_max, cfg)?;
    for t in line_terms(&line, false, 0.5) {
        cf.push(t);
    }
    // third integral enters negated, with poles on both lines
    let k3 = kernel_tw_third();
    let line = residue::sum_over_line(&k3, 1.0, j_max, cfg)?;
    for t in line_terms(&line, true, -1.0) {
        cf.push(t);
    }
    let line = residue::sum_over_line(&k3, 0.0, j_max, cfg)?;
    for t in line_terms(&line, false, -1.0) {
        cf.push(t);
    }
    Ok(cf)
}

/// Exact closed form of TW_M via the B_M construction:
/// TW_M(n) = n G_M(lg n) + d_M lg^M n + Σ_{d<M} lg^d n · G_{M,d}(lg n).
pub fn twm_closed_form(m: u32, j_max: u32, cfg: &EngineConfig) -> Result<ClosedFormExpr> {
    let bm = dgf::build_bm(m)?;
    let mut cf = ClosedFormExpr::default();
    for (base, rat) in bm.terms() {
        let kern = KernelSpec::from_dgf_term(base, rat.clone());
        let alpha = residue::sum_over_line(&kern, 1.0, j_max, cfg)?;
        for t in line_terms(&alpha, true, 1.0) {
            cf.push(t);
        }
        let beta = residue::sum_over_line(&kern, 0.0, j_max, cfg)?;
        for t in line_terms(&beta, false, 1.0) {
            cf.push(t);
        }
    }
    Ok(cf)
}

/// 200 log-spaced integers in [2^lo_exp, 2^hi_exp], deduplicated.
pub fn log_spaced_sample(lo_exp: f64, hi_exp: f64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let u = lo_exp + (hi_exp - lo_exp) * i as f64 / (count - 1) as f64;
        let n = 2.0f64.powf(u).round() as u64;
        out.push(n.max(2));
    }
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::ratio_to_f64;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn fourier_eval_period_one() {
        let f = FourierSeries1 {
            mean: 1.5,
            mean_err: 0.0,
            coeffs: vec![Complex64::new(0.25, -0.125), Complex64::new(0.01, 0.33)],
            coeff_errs: vec![0.0, 0.0],
            tail: 0.0,
        };
        for u in [0.0, 0.125, 0.73, 5.33] {
            assert_eq!(f.eval(u), f.eval(u + 1.0), "u = {u}");
        }
        // evaluation is real by construction (function returns f64)
        assert!((f.eval(0.0) - (1.5 + 2.0 * 0.25 + 2.0 * 0.01)).abs() < 1e-15);
    }

    #[test]
    fn lg_exact_and_frac_dyadic_sharing() {
        assert_eq!(lg_exact(1024), 10.0);
        assert_eq!(lg_frac(1 << 17), 0.0);
        for n in [3u64, 5, 12, 44, 999, 12345] {
            assert_eq!(lg_frac(n), lg_frac(2 * n), "n = {n}");
            assert!((lg_exact(2 * n) - lg_exact(n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mdc_k2_against_exact_small_j() {
        // modest J keeps the test quick; the acceptance suite runs J = 2000
        let cf = mdc_closed_form(2, 200, &cfg()).unwrap();
        assert_eq!(cf.constant, 1.0);
        let sample: Vec<u64> = log_spaced_sample(1.0, 16.0, 60);
        let table = digital::mdc_f_table(2, (1 << 16) + 1).unwrap();
        let pairs: Vec<(u64, f64)> = sample
            .iter()
            .map(|&n| (n, digital::int_to_f64(&table[n as usize])))
            .collect();
        let dev = cf.max_scaled_deviation(&pairs, Scale::N);
        assert!(dev < 5e-3, "deviation {dev}");
    }

    #[test]
    fn ts1_closed_form_structure_and_exactness() {
        let cf = ts_closed_form(1, 400, &cfg()).unwrap();
        // constant (−1)^{M+1} M! = 1
        assert_eq!(cf.constant, 1.0);
        // leading term ½ n lg n
        let top = cf.find(true, 1).unwrap();
        assert!(matches!(top.coeff, CoeffKind::Const { .. }));
        assert!((top.coeff.mean() - 0.5).abs() < 1e-11);
        let sample = log_spaced_sample(1.0, 14.0, 40);
        let exact = digital::ts_m_batch(&sample, 1).unwrap();
        let pairs: Vec<(u64, f64)> = sample
            .iter()
            .zip(exact.iter())
            .map(|(&n, r)| (n, ratio_to_f64(r)))
            .collect();
        let dev = cf.max_scaled_deviation(&pairs, Scale::N);
        assert!(dev < 2e-3, "deviation {dev}");
    }

    #[test]
    fn tw1_two_routes_agree() {
        let a = tw1_closed_form(48).unwrap();
        let b = tw1_closed_form_residues(48, &cfg()).unwrap();
        // per-coefficient agreement of the n-coefficient series
        let fa = match &a.find(true, 0).unwrap().coeff {
            CoeffKind::Periodic(f) => f.clone(),
            _ => panic!(),
        };
        let fb = match &b.find(true, 0).unwrap().coeff {
            CoeffKind::Periodic(f) => f.clone(),
            _ => panic!(),
        };
        assert!((fa.mean - fb.mean).abs() < 1e-9, "{} vs {}", fa.mean, fb.mean);
        for j in 0..48 {
            assert!(
                (fa.coeffs[j] - fb.coeffs[j]).norm() < 1e-9,
                "j = {}: {} vs {}",
                j + 1,
                fa.coeffs[j],
                fb.coeffs[j]
            );
        }
        // lg-n coefficient: exactly −¼ in the explicit route
        let lg_a = a.find(false, 1).unwrap();
        assert_eq!(lg_a.coeff.mean(), -0.25);
        let lg_b = b.find(false, 1).unwrap();
        assert!((lg_b.coeff.mean() + 0.25).abs() < 1e-10);
    }

    #[test]
    fn tw1_mean_constant() {
        let cf = tw1_closed_form(8).unwrap();
        let f = match &cf.find(true, 0).unwrap().coeff {
            CoeffKind::Periodic(f) => f,
            _ => panic!(),
        };
        assert!((f.mean - 0.704_687_488_048_862_9).abs() < 1e-12);
    }

    #[test]
    fn tw1_against_exact() {
        let cf = tw1_closed_form(300).unwrap();
        let sample = log_spaced_sample(1.0, 14.0, 40);
        let exact = digital::tw_m_batch(&sample, 1).unwrap();
        let pairs: Vec<(u64, f64)> = sample
            .iter()
            .zip(exact.iter())
            .map(|(&n, r)| (n, ratio_to_f64(r)))
            .collect();
        let dev = cf.max_scaled_deviation(&pairs, Scale::N);
        assert!(dev < 2e-3, "deviation {dev}");
    }

    #[test]
    fn sample_is_sane() {
        let s = log_spaced_sample(1.0, 20.0, 200);
        assert!(s.len() > 150);
        assert_eq!(*s.first().unwrap(), 2);
        assert_eq!(*s.last().unwrap(), 1 << 20);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }
}
