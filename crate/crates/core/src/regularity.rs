//! Finite-difference detection of the regularity loss of lifted maps along
//! curves crossing `Σ`.
//!
//! The model curve is the lifted line `c(t) = ((t, mt), [t, mt])`, extended by
//! `[1, m]` at `t = 0`. Pushing it through a lifted map and reading the fiber
//! part in an affine chart turns the loss of one derivative into a one-sided
//! slope jump at `t = 0`, measurable with Richardson-stabilized difference
//! quotients.

use alloc::vec::Vec;

use crate::linalg::{self, Field};
use crate::map::LiftedMap;
use crate::model::BlowupPoint;
use crate::projective::{self, best_chart, chart_coords};
use crate::{Error, Result, DEFAULT_TOL};

/// The lifted line of slope `m ≠ 0` through the origin in the real plane.
#[derive(Debug, Clone, Copy)]
pub struct SigmaCurve {
    slope: f64,
}

impl SigmaCurve {
    pub fn new(slope: f64) -> Result<Self> {
        if slope == 0.0 || !slope.is_finite() {
            return Err(Error::InvalidMapSpec(alloc::string::String::from(
                "curve slope must be nonzero and finite",
            )));
        }
        Ok(SigmaCurve { slope })
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    /// `c(t) = ((t, mt), [t, mt])`, with fiber `[1, m]` at `t = 0`.
    pub fn eval(&self, t: f64) -> BlowupPoint {
        let fiber = projective::normalize_real(&[1.0, self.slope]).expect("nonzero");
        if t == 0.0 {
            return BlowupPoint::sigma_point(fiber);
        }
        let x = linalg::from_real(&[t, self.slope * t]);
        BlowupPoint::new(x, fiber, 1e-12).expect("on the line by construction")
    }
}

/// Default step schedule: `1e-2 … 1e-6`, one decade apart.
pub fn default_steps() -> Vec<f64> {
    alloc::vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
}

/// One-sided slopes of the lifted chart coordinates at `t = 0`, one entry per
/// chart coordinate, plus the jump `|right − left|`.
#[derive(Debug, Clone)]
pub struct OneSidedReport {
    pub chart: usize,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub jump: Vec<f64>,
    /// Estimated quotient noise, from the spread of the extrapolants.
    pub noise: f64,
    pub kink: bool,
}

fn chart_curve_value(
    lift: &LiftedMap,
    curve: &SigmaCurve,
    chart: usize,
    t: f64,
) -> Result<Vec<f64>> {
    let image = lift.eval(&curve.eval(t), 1e-6)?;
    let coords = chart_coords(image.fiber(), chart, DEFAULT_TOL)
        .map_err(|e| match e {
            Error::OutsideChart { chart, .. } => Error::LeftChart { chart, step: t },
            other => other,
        })?;
    Ok(coords.iter().map(|z| z.re).collect())
}

/// Richardson extrapolation of one-sided quotients over a decreasing step
/// schedule with a constant decade ratio. Returns the extrapolated slope and
/// the spread of the last extrapolants as a noise estimate.
fn richardson_slopes(quotients: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let dims = quotients[0].len();
    let mut level: Vec<Vec<f64>> = quotients.to_vec();
    let ratio = 10.0;
    let mut spread = 0.0f64;
    for _ in 0..2usize.min(level.len() - 1) {
        let mut next = Vec::with_capacity(level.len() - 1);
        for w in level.windows(2) {
            let row: Vec<f64> = (0..dims)
                .map(|d| (ratio * w[1][d] - w[0][d]) / (ratio - 1.0))
                .collect();
            next.push(row);
        }
        level = next;
    }
    for w in level.windows(2) {
        for d in 0..dims {
            spread = spread.max(libm::fabs(w[1][d] - w[0][d]));
        }
    }
    (level.last().unwrap().clone(), spread)
}

/// One-sided derivatives of the lifted chart coordinates at `t = 0±`.
///
/// `chart = None` picks the chart of largest modulus at the image of `c(0)`.
pub fn one_sided_derivatives(
    lift: &LiftedMap,
    curve: &SigmaCurve,
    chart: Option<usize>,
    steps: &[f64],
) -> Result<OneSidedReport> {
    if lift.field() != Field::Real || lift.n() != 2 {
        return Err(Error::Unsupported(alloc::string::String::from(
            "regularity probes run on real planar maps",
        )));
    }
    if steps.len() < 2 || steps.windows(2).any(|w| w[1] >= w[0]) || steps.iter().any(|&s| s <= 0.0)
    {
        return Err(Error::BadStepSchedule);
    }
    let center_image = lift.eval(&curve.eval(0.0), 1e-6)?;
    let chart = match chart {
        Some(j) => j,
        None => best_chart(center_image.fiber()),
    };
    let f0 = chart_curve_value(lift, curve, chart, 0.0)?;
    let dims = f0.len();
    let mut right_q: Vec<Vec<f64>> = Vec::with_capacity(steps.len());
    let mut left_q: Vec<Vec<f64>> = Vec::with_capacity(steps.len());
    for &t in steps {
        let fr = chart_curve_value(lift, curve, chart, t)?;
        let fl = chart_curve_value(lift, curve, chart, -t)?;
        right_q.push((0..dims).map(|d| (fr[d] - f0[d]) / t).collect());
        left_q.push((0..dims).map(|d| (f0[d] - fl[d]) / t).collect());
    }
    let (right, noise_r) = richardson_slopes(&right_q);
    let (left, noise_l) = richardson_slopes(&left_q);
    let noise = noise_r.max(noise_l).max(1e-12);
    let jump: Vec<f64> = right
        .iter()
        .zip(&left)
        .map(|(r, l)| libm::fabs(r - l))
        .collect();
    // a kink is declared only well above the quotient noise
    let kink = jump.iter().any(|&j| j > 10.0 * noise);
    Ok(OneSidedReport { chart, left, right, jump, noise, kink })
}

/// Estimated differentiability order of each chart coordinate (and of the
/// base coordinates) of `ĥ ∘ c` at `t = 0`.
#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    pub chart: usize,
    /// Per chart coordinate: largest `j ≤ max_order` whose one-sided j-th
    /// quotients agree left/right.
    pub fiber_orders: Vec<u32>,
    /// Same probe applied to the base coordinates of `ĥ ∘ c`.
    pub base_orders: Vec<u32>,
}

impl SmoothnessReport {
    pub fn fiber_order(&self) -> u32 {
        self.fiber_orders.iter().copied().min().unwrap_or(0)
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}

/// j-th one-sided difference quotient with step `t` (signed for the left
/// side) of a sampled function.
fn one_sided_quotient(samples: &[Vec<f64>], order: u32, t: f64) -> Vec<f64> {
    let dims = samples[0].len();
    let mut out = alloc::vec![0.0; dims];
    for i in 0..=order {
        let w = if (order - i) % 2 == 0 { 1.0 } else { -1.0 };
        let c = binomial(order, i) * w;
        for d in 0..dims {
            out[d] += c * samples[i as usize][d];
        }
    }
    let tj = libm::pow(t, order as f64);
    out.iter().map(|v| v / tj).collect()
}

fn probe_orders(values: impl Fn(f64) -> Result<Vec<f64>>, max_order: u32) -> Result<Vec<u32>> {
    let t0 = 1e-3;
    let dims = values(0.0)?.len();
    let mut orders = alloc::vec![0u32; dims];
    for order in 1..=max_order {
        let right: Vec<Vec<f64>> = (0..=order)
            .map(|i| values(i as f64 * t0))
            .collect::<Result<_>>()?;
        let left: Vec<Vec<f64>> = (0..=order)
            .map(|i| values(-(i as f64) * t0))
            .collect::<Result<_>>()?;
        let qr = one_sided_quotient(&right, order, t0);
        let ql = one_sided_quotient(&left, order, -t0);
        let mut all_agree = true;
        for d in 0..dims {
            let scale = 1.0 + libm::fabs(qr[d]) + libm::fabs(ql[d]);
            if libm::fabs(qr[d] - ql[d]) > 2e-2 * scale {
                all_agree = false;
            } else if orders[d] == order - 1 {
                orders[d] = order;
            }
        }
        if !all_agree {
            break;
        }
    }
    Ok(orders)
}

/// Largest `j ≤ max_order` whose j-th one-sided quotients of the lifted chart
/// coordinate agree across `t = 0`; `0` means continuous but not
/// differentiable there.
pub fn smoothness_probe(
    lift: &LiftedMap,
    curve: &SigmaCurve,
    max_order: u32,
) -> Result<SmoothnessReport> {
    if max_order == 0 || max_order > 4 {
        return Err(Error::Unsupported(alloc::string::String::from(
            "smoothness probe supports orders 1..=4",
        )));
    }
    let center_image = lift.eval(&curve.eval(0.0), 1e-6)?;
    let chart = best_chart(center_image.fiber());
    let fiber_orders = probe_orders(|t| chart_curve_value(lift, curve, chart, t), max_order)?;
    let base_orders = probe_orders(
        |t| {
            let image = lift.eval(&curve.eval(t), 1e-6)?;
            Ok(image.base().iter().map(|z| z.re).collect())
        },
        max_order,
    )?;
    Ok(SmoothnessReport { chart, fiber_orders, base_orders })
}
