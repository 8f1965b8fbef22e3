//! Figure datasets: the normalized sequences plotted against lg n.
//!
//! Everything is exact arithmetic normalized in f64 at the end, so any
//! external plotter reproduces the pictures from the emitted CSV.

use crate::digital::{self, int_to_f64, ratio_to_f64};
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct FigPoint {
    pub lg_n: f64,
    pub y: f64,
}

/// Default sampling density: points per unit of lg n, log-spaced.
pub const PER_OCTAVE_DEFAULT: u32 = 512;

/// Sample n values so that lg n walks [lg_min, lg_max] in steps of
/// 1/per_octave.
pub fn octave_sample(lg_min: f64, lg_max: f64, per_octave: u32) -> Vec<u64> {
    let steps = ((lg_max - lg_min) * per_octave as f64).round() as usize;
    let mut out: Vec<u64> = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let u = lg_min + i as f64 / per_octave as f64;
        let n = 2.0f64.powf(u).round().max(2.0) as u64;
        if out.last() != Some(&n) {
            out.push(n);
        }
    }
    out
}

fn lg(n: u64) -> f64 {
    crate::closed::lg_exact(n)
}

/// (S_M(n) − n lg^M n)/(n lg^{M−1} n) against lg n.
pub fn figure1(m: u32, lg_min: f64, lg_max: f64, per_octave: u32) -> Result<Vec<FigPoint>> {
    let ns = octave_sample(lg_min.max(1.0), lg_max, per_octave);
    ns.iter()
        .map(|&n| {
            let s = int_to_f64(&digital::s_m(n, m)?);
            let l = lg(n);
            Ok(FigPoint {
                lg_n: l,
                y: (s - n as f64 * l.powi(m as i32)) / (n as f64 * l.powi(m as i32 - 1)),
            })
        })
        .collect()
}

/// W_M(n)/n against lg n.
pub fn figure2(m: u32, lg_min: f64, lg_max: f64, per_octave: u32) -> Result<Vec<FigPoint>> {
    let ns = octave_sample(lg_min.max(0.0), lg_max, per_octave);
    ns.iter()
        .map(|&n| {
            let w = int_to_f64(&digital::w_m(n, m)?);
            Ok(FigPoint {
                lg_n: lg(n),
                y: w / n as f64,
            })
        })
        .collect()
}

/// The six normalized quantities of the summary figure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fig3Panel {
    /// (f³_n − ½ n lg² n)/(n lg n)
    F3,
    /// (f⁴_n − n lg³ n/6)/(n lg² n)
    F4,
    /// (TS₁(n) − ½ n lg n)/n
    Ts1,
    /// (TS₂(n) − ½ n lg² n)/(n lg n)
    Ts2,
    /// TW₁(n)/n
    Tw1,
    /// TW₂(n)/n
    Tw2,
}

impl Fig3Panel {
    pub const ALL: [Fig3Panel; 6] = [
        Fig3Panel::F3,
        Fig3Panel::F4,
        Fig3Panel::Ts1,
        Fig3Panel::Ts2,
        Fig3Panel::Tw1,
        Fig3Panel::Tw2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Fig3Panel::F3 => "f3",
            Fig3Panel::F4 => "f4",
            Fig3Panel::Ts1 => "ts1",
            Fig3Panel::Ts2 => "ts2",
            Fig3Panel::Tw1 => "tw1",
            Fig3Panel::Tw2 => "tw2",
        }
    }
}

pub fn figure3(panel: Fig3Panel, lg_min: f64, lg_max: f64, per_octave: u32) -> Result<Vec<FigPoint>> {
    let ns = octave_sample(lg_min.max(1.0), lg_max, per_octave);
    let max_n = *ns.last().unwrap();
    match panel {
        Fig3Panel::F3 | Fig3Panel::F4 => {
            let k = if panel == Fig3Panel::F3 { 3 } else { 4 };
            let table = digital::mdc_f_table(k, max_n as usize)?;
            Ok(ns
                .iter()
                .map(|&n| {
                    let f = int_to_f64(&table[n as usize]);
                    let l = lg(n);
                    let lead = if k == 3 {
                        0.5 * n as f64 * l * l
                    } else {
                        n as f64 * l.powi(3) / 6.0
                    };
                    FigPoint {
                        lg_n: l,
                        y: (f - lead) / (n as f64 * l.powi(k as i32 - 2)),
                    }
                })
                .collect())
        }
        Fig3Panel::Ts1 | Fig3Panel::Ts2 => {
            let m = if panel == Fig3Panel::Ts1 { 1 } else { 2 };
            let vals = digital::ts_m_batch(&ns, m)?;
            Ok(ns
                .iter()
                .zip(vals.iter())
                .map(|(&n, r)| {
                    let l = lg(n);
                    let y = (ratio_to_f64(r) - 0.5 * n as f64 * l.powi(m as i32))
                        / (n as f64 * l.powi(m as i32 - 1));
                    FigPoint { lg_n: l, y }
                })
                .collect())
        }
        Fig3Panel::Tw1 | Fig3Panel::Tw2 => {
            let m = if panel == Fig3Panel::Tw1 { 1 } else { 2 };
            let vals = digital::tw_m_batch(&ns, m)?;
            Ok(ns
                .iter()
                .zip(vals.iter())
                .map(|(&n, r)| FigPoint {
                    lg_n: lg(n),
                    y: ratio_to_f64(r) / n as f64,
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octave_sampling_density() {
        let s = octave_sample(3.0, 8.0, 16);
        assert!(s.len() > 60);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*s.first().unwrap(), 8);
        assert_eq!(*s.last().unwrap(), 256);
    }

    #[test]
    fn figure1_m1_band() {
        // Brown's bounds put (S₁ − n lg n)/n in [−2, 0]
        for p in figure1(1, 1.0, 12.0, 32).unwrap() {
            assert!(p.y >= -2.0 - 1e-9 && p.y <= 1e-9, "y = {} at {}", p.y, p.lg_n);
        }
    }

    #[test]
    fn figure2_positive_bounded() {
        for p in figure2(1, 1.0, 12.0, 16).unwrap() {
            assert!(p.y > 0.0 && p.y < 4.0);
        }
    }

    #[test]
    fn figure3_tw1_oscillates_near_mean() {
        let pts = figure3(Fig3Panel::Tw1, 8.0, 14.0, 16).unwrap();
        let mean = 0.704_687_488_048_862_9;
        for p in &pts {
            assert!((p.y - mean).abs() <= 0.1, "y = {} at lg n = {}", p.y, p.lg_n);
        }
    }

    #[test]
    fn figure3_dyadic_rows_hit_u_zero() {
        // at n = 2^p the periodic argument is exactly 0
        let pts = figure3(Fig3Panel::Ts1, 4.0, 10.0, 8).unwrap();
        for p in pts {
            if (p.lg_n - p.lg_n.round()).abs() < 1e-12 {
                assert_eq!(crate::closed::lg_frac(2u64.pow(p.lg_n.round() as u32)), 0.0);
            }
        }
    }
}
