//! Riemann zeta on the complex plane, its derivative jets, the Laurent data
//! at s = 1 (Stieltjes constants), Bernoulli numbers, and the handful of
//! fixed constants the closed forms need.
//!
//! Zeta uses Euler–Maclaurin: a direct partial sum to N ≈ 0.55·|Im s|, the
//! integral and half terms, and Bernoulli corrections. Phases t·ln m are
//! formed in double-double and reduced mod 2π, which keeps the absolute
//! error near 1e-13 up to |Im s| ≈ 1e5. Derivatives come from trapezoidal
//! quadrature of the Cauchy integral on a circle of radius 1/4, one node
//! set serving every order at a point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::laurent::{CVal, LaurentSeries};

/// Absolute accuracy budget for a single zeta evaluation (relative once
/// |ζ| exceeds 1, which only happens far left of the critical strip).
pub const ZETA_ABS_BUDGET: f64 = 1e-11;

const CIRCLE_NODES: usize = 32;
const CIRCLE_RADIUS: f64 = 0.25;
const EM_MAX_BERNOULLI: usize = 28;

/// Fixed mathematical constants used across the closed forms.
#[derive(Clone, Copy, Debug)]
pub struct MathConstants {
    pub ln2: f64,
    pub ln_pi: f64,
    pub pi: f64,
    pub gamma0: f64,
}

impl MathConstants {
    pub fn get() -> &'static MathConstants {
        static CELL: OnceLock<MathConstants> = OnceLock::new();
        CELL.get_or_init(|| MathConstants {
            ln2: std::f64::consts::LN_2,
            ln_pi: std::f64::consts::PI.ln(),
            pi: std::f64::consts::PI,
            // Euler–Mascheroni constant, nearest f64
            gamma0: 0.577_215_664_901_532_9,
        })
    }
}

/// Exact Bernoulli numbers B_0..=B_n.
pub fn bernoulli_exact(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                binom = &binom * BigInt::from((m + 2 - j) as u64) / BigInt::from(j as u64);
            }
            acc += BigRational::from(binom.clone()) * bj;
        }
        b.push(-acc / BigRational::from(BigInt::from((m + 1) as u64)));
    }
    b
}

/// B_2, B_4, ... as f64 (index k holds B_{2k+2}).
fn bernoulli_even_f64() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| {
        let exact = bernoulli_exact(2 * EM_MAX_BERNOULLI + 2);
        (1..=EM_MAX_BERNOULLI + 1)
            .map(|k| exact[2 * k].to_f64().unwrap())
            .collect()
    })
}

#[derive(Clone, Copy, Default)]
struct Kahan {
    s: f64,
    c: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }
}

/// m^{-s} with a double-double phase; `ln_m` is ln m in double-double.
#[inline]
fn pow_neg_s(ln_m: Dd, m: f64, sigma: f64, t: f64) -> Complex64 {
    let r = if sigma == 0.0 {
        1.0
    } else if sigma == 1.0 {
        1.0 / m
    } else {
        (-sigma * ln_m.to_f64()).exp()
    };
    let phi = dd::reduce_two_pi(ln_m.mul_f64(t));
    let (sf, cf) = phi.sin_cos();
    Complex64::new(r * cf, -r * sf)
}

/// Euler–Maclaurin evaluation with explicit cut and correction depth.
/// Returns the value and an estimated absolute error.
pub fn zeta_with_params(s: Complex64, n_terms: u64, max_bernoulli: usize) -> (Complex64, f64) {
    debug_assert!(s != Complex64::new(1.0, 0.0));
    let sigma = s.re;
    let t = s.im;
    let n = n_terms.max(2);
    let tab = dd::shared_ln_table(n as usize);

    let mut re = Kahan::default();
    let mut im = Kahan::default();
    let mut sq_sum = 0.0f64;
    for m in 1..n {
        let z = pow_neg_s(tab[m as usize], m as f64, sigma, t);
        re.add(z.re);
        im.add(z.im);
        sq_sum += z.norm_sqr();
    }
    let mut value = Complex64::new(re.s, im.s);

    let ln_n = tab[n as usize];
    let n_neg_s = pow_neg_s(ln_n, n as f64, sigma, t);
    // N^{1-s}/(s-1)
    let tail = n_neg_s * (n as f64) / (s - 1.0);
    value += tail;
    value += 0.5 * n_neg_s;

    // Bernoulli corrections: B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let b = bernoulli_even_f64();
    let inv_n2 = 1.0 / (n as f64 * n as f64);
    let mut rising = s; // s…(s+2k−2), starts at k=1 with a single factor
    let mut npow = n_neg_s * (n as f64); // N^{−s−2k+1}, starts at N^{1−s}
    let mut factorial = 2.0; // (2k)!
    let mut last_mag = f64::INFINITY;
    let mut rem = f64::INFINITY;
    let kmax = max_bernoulli.min(EM_MAX_BERNOULLI);
    for k in 1..=kmax {
        npow *= inv_n2;
        let term = b[k - 1] / factorial * rising * npow;
        let mag = term.norm();
        if mag > last_mag && k > 2 {
            // asymptotic regime reached; stop before divergence
            rem = mag;
            break;
        }
        value += term;
        last_mag = mag;
        if mag < 1e-19 * (1.0 + value.norm()) {
            rem = mag;
            break;
        }
        // extend the rising factorial by (s+2k−1)(s+2k)
        rising = rising * (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        factorial *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
        if k == kmax {
            let denom = sigma + (2 * k + 1) as f64;
            let fudge = if denom > 0.0 {
                (s + (2 * k + 1) as f64).norm() / denom
            } else {
                10.0
            };
            rem = mag * fudge;
        }
    }

    let roundoff = 3e-15 * sq_sum.sqrt() + 4e-16 * (value.norm() + tail.norm());
    (value, rem.min(1.0) + roundoff)
}

fn em_cut(s: Complex64) -> u64 {
    (32.0f64).max((0.55 * s.im.abs()).ceil()) as u64
}

type ZetaCache = Mutex<HashMap<(u64, u64), Complex64>>;

fn zeta_cache() -> &'static ZetaCache {
    static CELL: OnceLock<ZetaCache> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ζ(s) for s ≠ 1, to an absolute error ≤ 1e-11 (relative once |ζ| > 1).
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole(s));
    }
    let key = (s.re.to_bits(), s.im.to_bits());
    if let Some(&v) = zeta_cache().lock().unwrap().get(&key) {
        return Ok(v);
    }
    let (value, err) = zeta_with_params(s, em_cut(s), EM_MAX_BERNOULLI);
    if err > ZETA_ABS_BUDGET * value.norm().max(1.0) {
        return Err(Error::Accuracy {
            target: ZETA_ABS_BUDGET,
            achieved: err,
            value,
        });
    }
    zeta_cache().lock().unwrap().insert(key, value);
    Ok(value)
}

type JetCache = Mutex<HashMap<(u64, u64, u32), Arc<Vec<(Complex64, f64)>>>>;

fn jet_cache() -> &'static JetCache {
    static CELL: OnceLock<JetCache> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Taylor coefficients ζ^{(q)}(s)/q! for q = 0..=q_max, with error bounds.
///
/// q = 0 is the direct evaluation; higher orders come from one trapezoidal
/// Cauchy-circle pass (radius 1/4, 32 nodes). The disc must exclude s = 1.
pub fn zeta_jet(s: Complex64, q_max: u32) -> Result<Arc<Vec<(Complex64, f64)>>> {
    let key = (s.re.to_bits(), s.im.to_bits(), q_max);
    if let Some(hit) = jet_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    if (s - Complex64::new(1.0, 0.0)).norm() <= CIRCLE_RADIUS + 0.05 {
        return Err(Error::Domain(format!(
            "derivative disc around {s} touches the pole at 1"
        )));
    }
    let mut jet = Vec::with_capacity(q_max as usize + 1);
    jet.push({
        let v = zeta(s)?;
        (v, ZETA_ABS_BUDGET)
    });
    if q_max >= 1 {
        let k = CIRCLE_NODES;
        let mut nodes = Vec::with_capacity(k);
        let mut node_err = 0.0f64;
        let mut max_mag = 0.0f64;
        for i in 0..k {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            let z = s + Complex64::from_polar(CIRCLE_RADIUS, phi);
            let (v, e) = zeta_with_params(z, em_cut(z), EM_MAX_BERNOULLI);
            node_err += e;
            max_mag = max_mag.max(v.norm());
            nodes.push((v, phi));
        }
        node_err /= k as f64;
        for q in 1..=q_max {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(v, phi) in &nodes {
                acc += v * Complex64::from_polar(1.0, -(q as f64) * phi);
            }
            let r_pow = CIRCLE_RADIUS.powi(q as i32);
            let coeff = acc / (k as f64 * r_pow);
            let err = 2.0 * (node_err + 1e-16 * max_mag) / r_pow;
            jet.push((coeff, err));
        }
    }
    let jet = Arc::new(jet);
    jet_cache()
        .lock()
        .unwrap()
        .insert(key, jet.clone());
    Ok(jet)
}

/// q-th derivative of ζ at s (q = 0 gives ζ(s)).
pub fn zeta_deriv(s: Complex64, q: u32) -> Result<Complex64> {
    let jet = zeta_jet(s, q)?;
    let mut fact = 1.0;
    for i in 1..=q as u64 {
        fact *= i as f64;
    }
    Ok(jet[q as usize].0 * fact)
}

/// Stieltjes constants γ_0..γ_K from the limit definition with
/// Euler–Maclaurin acceleration at the cut.
#[derive(Clone, Debug)]
pub struct StieltjesTable {
    gammas: Vec<f64>,
}

pub const STIELTJES_ORDER: usize = 12;

impl StieltjesTable {
    pub fn get() -> &'static StieltjesTable {
        static CELL: OnceLock<StieltjesTable> = OnceLock::new();
        CELL.get_or_init(|| StieltjesTable {
            gammas: compute_stieltjes(STIELTJES_ORDER, 100_000),
        })
    }

    pub fn gamma(&self, k: usize) -> Result<f64> {
        self.gammas.get(k).copied().ok_or(Error::CapExceeded {
            name: "stieltjes index",
            got: k as u32,
            cap: STIELTJES_ORDER as u32,
        })
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// γ_k = lim [ Σ_{j<=m} ln^k j / j − ln^{k+1} m/(k+1) ], accelerated by the
/// Euler–Maclaurin corrections at j = m. Sums run in double-double so the
/// cancellation between the sum and ln^{k+1}m/(k+1) costs nothing.
fn compute_stieltjes(k_max: usize, m: u64) -> Vec<f64> {
    let tab = dd::shared_ln_table(m as usize);
    let mut sums = vec![Dd::ZERO; k_max + 1];
    for j in 1..=m {
        let lnj = tab[j as usize];
        let inv_j = Dd::from_f64(1.0).div(Dd::from_f64(j as f64));
        let mut pw = inv_j; // ln^k j / j
        for sum in sums.iter_mut() {
            *sum = sum.add(pw);
            pw = pw.mul(lnj);
        }
    }
    let ln_m = tab[m as usize];
    let b = bernoulli_even_f64();
    let mf = m as f64;
    let mut out = Vec::with_capacity(k_max + 1);
    for (k, sum) in sums.iter().enumerate() {
        // subtract ∫_1^m ln^k x / x = ln^{k+1} m/(k+1)
        let mut g = sum.sub(ln_m.mul(pow_dd(ln_m, k)).mul_f64(1.0 / (k + 1) as f64));
        // f(x) = ln^k x / x; f^{(j)}(x) = P_j(ln x)/x^{j+1},
        // P_0 = L^k, P_{j+1} = P_j' − (j+1) P_j
        let lm = ln_m.to_f64();
        let f_m = lm.powi(k as i32) / mf;
        let mut corr = -0.5 * f_m;
        let mut p: Vec<f64> = vec![0.0; k + 1];
        p[k] = 1.0;
        let mut x_pow = mf; // m^{j+1}
        let mut factorial = 1.0;
        for j in 0..(2 * 12 - 1) {
            // advance to P_{j+1}
            let mut next = vec![0.0; p.len()];
            for (d, &c) in p.iter().enumerate() {
                if d >= 1 {
                    next[d - 1] += c * d as f64;
                }
                next[d] -= c * (j + 1) as f64;
            }
            p = next;
            x_pow *= mf;
            factorial *= (j + 2) as f64;
            let jj = j + 1; // derivative order
            if jj % 2 == 1 {
                let r = jj.div_ceil(2);
                if r <= 12 {
                    let f_deriv: f64 =
                        p.iter().enumerate().map(|(d, &c)| c * lm.powi(d as i32)).sum::<f64>()
                            / x_pow;
                    // B_{2r}/(2r)! f^{(2r−1)}(m); factorial tracks (j+1)!
                    corr -= b[r - 1] / factorial * f_deriv;
                }
            }
        }
        g = g.add(Dd::from_f64(corr));
        out.push(g.to_f64());
    }
    out
}

fn pow_dd(x: Dd, k: usize) -> Dd {
    let mut r = Dd::from_f64(1.0);
    for _ in 0..k {
        r = r.mul(x);
    }
    r
}

/// Laurent expansion of ζ at s = 1 up to order K:
/// 1/(s−1) + Σ_{k=0..K} (−1)^k γ_k (s−1)^k / k!.
pub fn zeta_laurent_at_1(k_order: usize) -> Result<LaurentSeries> {
    let table = StieltjesTable::get();
    if k_order >= table.len() {
        return Err(Error::CapExceeded {
            name: "laurent order",
            got: k_order as u32,
            cap: table.len() as u32 - 1,
        });
    }
    let mut coeffs = vec![CVal::from_f64(1.0)];
    let mut fact = 1.0;
    let mut sign = 1.0;
    for k in 0..=k_order {
        if k > 0 {
            fact *= k as f64;
            sign = -sign;
        }
        let g = table.gamma(k)?;
        coeffs.push(CVal::with_err(
            Complex64::new(sign * g / fact, 0.0),
            if k <= 3 { 1e-13 } else { 1e-9 } / fact,
        ));
    }
    Ok(LaurentSeries::from_consts(
        Complex64::new(1.0, 0.0),
        -1,
        coeffs,
    ))
}
