//! Deterministic SVG phase portraits of planar blowup dynamics.
//!
//! Σ is drawn as a circle; a point (x, [y]) of X is placed at angle 2·θ(y)
//! (doubling makes RP¹ a full turn) and radius `r₀·(1 + s·μ)` with μ the
//! signed fiber coordinate of x along [y]. Orbits are polylines, fixed
//! components dots (or a highlighted Σ for a component covering it). All
//! coordinates are written with fixed precision so identical inputs give
//! identical bytes.

use blowup_core::dynamics::FixedComponent;
use blowup_core::model::{self, BlowupPoint};
use blowup_core::projective::ProjPoint;
use std::fmt::Write as _;

const SIZE: f64 = 640.0;
const CENTER: f64 = 320.0;
const SIGMA_R: f64 = 120.0;
const MAX_EXTRA: f64 = 150.0;

fn fiber_angle(p: &ProjPoint) -> f64 {
    let h = p.homog();
    2.0 * h[1].re.atan2(h[0].re)
}

fn place(angle: f64, radius: f64) -> (f64, f64) {
    (CENTER + radius * angle.cos(), CENTER - radius * angle.sin())
}

fn point_pos(p: &BlowupPoint, mu_scale: f64) -> (f64, f64) {
    let angle = fiber_angle(p.fiber());
    let mu = model::mu_of(p).re;
    place(angle, SIGMA_R + (mu * mu_scale).clamp(-SIGMA_R + 10.0, MAX_EXTRA))
}

const ORBIT_COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub fn render(orbits: &[Vec<BlowupPoint>], fixed: &[FixedComponent]) -> String {
    // one scale for the whole figure, derived from the data
    let max_mu = orbits
        .iter()
        .flatten()
        .map(|p| model::mu_of(p).re.abs())
        .fold(0.0f64, f64::max);
    let mu_scale = if max_mu > 0.0 { MAX_EXTRA / max_mu } else { 1.0 };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");

    // Σ covered by a positive-dimensional fixed component is highlighted
    let sigma_fixed = fixed.iter().any(|c| c.proj_dim() >= 1);
    let sigma_stroke = if sigma_fixed { "#d62728" } else { "#888888" };
    let _ = writeln!(
        out,
        "<circle cx=\"{CENTER}\" cy=\"{CENTER}\" r=\"{SIGMA_R}\" fill=\"none\" stroke=\"{sigma_stroke}\" stroke-width=\"2\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"14\" fill=\"#555555\">Sigma</text>",
        CENTER + SIGMA_R * 0.05,
        CENTER - SIGMA_R - 8.0
    );

    for (i, orbit) in orbits.iter().enumerate() {
        if orbit.is_empty() {
            continue;
        }
        let color = ORBIT_COLORS[i % ORBIT_COLORS.len()];
        let mut points = String::new();
        for p in orbit {
            let (x, y) = point_pos(p, mu_scale);
            let _ = write!(points, "{x:.3},{y:.3} ");
        }
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            points.trim_end()
        );
        let (x0, y0) = point_pos(&orbit[0], mu_scale);
        let _ = writeln!(out, "<circle cx=\"{x0:.3}\" cy=\"{y0:.3}\" r=\"3\" fill=\"{color}\"/>");
    }

    for c in fixed {
        if c.proj_dim() == 0 {
            if let Ok(p) = blowup_core::projective::normalize(
                if c.basis[0].iter().all(|z| z.im == 0.0) {
                    blowup_core::linalg::Field::Real
                } else {
                    blowup_core::linalg::Field::Complex
                },
                &c.basis[0],
            ) {
                let (x, y) = place(fiber_angle(&p), SIGMA_R);
                let _ = writeln!(
                    out,
                    "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"#d62728\"/>"
                );
            }
        }
    }

    out.push_str("</svg>\n");
    out
}
