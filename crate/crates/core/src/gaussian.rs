//! Closed-form inner and outer regions of the Gaussian channel
//! `Y = X1[i - d] + X2[i] + Z` with delay `d` in `{0, 1}`, independent
//! uninformed-user symbols, and power limits `P1`, `P2`.
//!
//! The outer bound is parameterized by the correlation `rho` in `[0, 1/sqrt 2]`
//! between the informed input and each of the two uninformed symbols it may face;
//! the inner bound additionally by the power `P2'` the informed user spends on its
//! own (correlated) component. All rates are in bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt9;
use crate::prob::DelaySet;
use crate::region::{union_hull, BoundPentagon, RegionHull};

pub const DEFAULT_RHO_STEPS: usize = 101;
pub const DEFAULT_P2_STEPS: usize = 51;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub p1: f64,
    pub p2: f64,
    pub n0: f64,
}

impl GaussianSpec {
    pub fn new(p1: f64, p2: f64, n0: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(p1) || !ok(p2) {
            return Err(Error::Config(format!(
                "powers must be nonnegative, got P1={p1}, P2={p2}"
            )));
        }
        if !(n0.is_finite() && n0 > 0.0) {
            return Err(Error::Config(format!(
                "noise variance must be positive, got {n0}"
            )));
        }
        Ok(Self { p1, p2, n0 })
    }

    /// The bounds are only stated for this delay set.
    pub fn delays(&self) -> DelaySet {
        DelaySet::new(0, 1)
    }
}

pub fn rho_max() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

fn half_log2(x: f64) -> f64 {
    0.5 * x.log2()
}

/// `(sum_cap, r2_cap)` of the outer bound at correlation `rho`.
pub fn outer_caps(spec: &GaussianSpec, rho: f64) -> (f64, f64) {
    let GaussianSpec { p1, p2, n0 } = *spec;
    let sum = half_log2(1.0 + (p1 + 2.0 * rho * (p1 * p2).sqrt() + p2) / n0);
    let r2 = half_log2(1.0 + p2 * (1.0 - 2.0 * rho * rho).max(0.0) / n0);
    (sum, r2)
}

/// `(sum_cap, r2_cap)` of the inner bound at correlation `rho` and power split `p2t`.
pub fn inner_caps(spec: &GaussianSpec, rho: f64, p2t: f64) -> (f64, f64) {
    let GaussianSpec { p1, n0, .. } = *spec;
    let own = p2t * (1.0 - 2.0 * rho * rho).max(0.0);
    let r2 = half_log2(1.0 + own / n0);
    let num = n0 + p1 + p2t + 2.0 * rho * (p1 * p2t).sqrt();
    let den = n0 + p2t * (1.0 - rho * rho);
    (half_log2(num / den) + r2, r2)
}

/// Covariance of `(X1[i-1], X1[i], X2[i])` implied by the inner construction is
/// positive semidefinite. For this matrix that is equivalent to `1 - 2 rho^2 >= 0`.
pub fn inner_covariance_is_psd(spec: &GaussianSpec, rho: f64, p2t: f64) -> bool {
    let s = rho * (spec.p1 * p2t).sqrt();
    let m = [[spec.p1, 0.0, s], [0.0, spec.p1, s], [s, s, p2t]];
    let tol = 1e-12 * (1.0 + spec.p1.max(p2t)).powi(3);
    // principal minors
    let d1 = [m[0][0], m[1][1], m[2][2]];
    let d2 = [
        m[0][0] * m[1][1] - m[0][1] * m[1][0],
        m[0][0] * m[2][2] - m[0][2] * m[2][0],
        m[1][1] * m[2][2] - m[1][2] * m[2][1],
    ];
    let d3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    d1.iter().chain(&d2).all(|&x| x >= -tol) && d3 >= -tol
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSample {
    pub rho: f64,
    /// Informed-user power split; equals `P2` on the outer trace.
    pub p2t: f64,
    pub sum_cap: f64,
    pub r2_cap: f64,
}

impl GaussianSample {
    pub fn pentagon(&self) -> BoundPentagon {
        BoundPentagon::sum_and_r2(self.sum_cap, self.r2_cap)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianCurve {
    pub samples: Vec<GaussianSample>,
    pub hull: RegionHull,
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| match k {
            0 => lo,
            _ if k == steps - 1 => hi,
            _ => lo + (hi - lo) * k as f64 / (steps - 1) as f64,
        })
        .collect()
}

fn check_steps(name: &str, steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::Config(format!(
            "{name} must be at least 2, got {steps}"
        )));
    }
    Ok(())
}

pub fn gaussian_outer(spec: &GaussianSpec, rho_steps: usize) -> Result<GaussianCurve> {
    check_steps("rho_steps", rho_steps)?;
    let samples: Vec<GaussianSample> = grid(0.0, rho_max(), rho_steps)
        .into_iter()
        .map(|rho| {
            let (sum_cap, r2_cap) = outer_caps(spec, rho);
            GaussianSample {
                rho,
                p2t: spec.p2,
                sum_cap,
                r2_cap,
            }
        })
        .collect();
    let hull = union_hull(samples.iter().map(GaussianSample::pentagon));
    Ok(GaussianCurve { samples, hull })
}

pub fn gaussian_inner(
    spec: &GaussianSpec,
    rho_steps: usize,
    p2_steps: usize,
) -> Result<GaussianCurve> {
    check_steps("rho_steps", rho_steps)?;
    check_steps("p2_steps", p2_steps)?;
    let mut samples = Vec::with_capacity(rho_steps * p2_steps);
    for rho in grid(0.0, rho_max(), rho_steps) {
        for p2t in grid(0.0, spec.p2, p2_steps) {
            let (sum_cap, r2_cap) = inner_caps(spec, rho, p2t);
            samples.push(GaussianSample {
                rho,
                p2t,
                sum_cap,
                r2_cap,
            });
        }
    }
    let hull = union_hull(samples.iter().map(GaussianSample::pentagon));
    Ok(GaussianCurve { samples, hull })
}

/// Boundary vertex of a hull paired with the sample that generated it.
fn frontier_rows(curve: &GaussianCurve) -> Vec<(f64, f64, f64, f64)> {
    curve
        .hull
        .vertices()
        .iter()
        .filter_map(|v| {
            curve
                .samples
                .iter()
                .find(|s| {
                    let verts = crate::region::pentagon_vertices(&s.pentagon());
                    verts.vertices().iter().any(|u| u == v)
                })
                .map(|s| (s.rho, s.p2t, v.r1, v.r2))
        })
        .collect()
}

/// Plot-ready CSV of the inner and outer frontiers (`trace,param1,param2,r1,r2`,
/// where the parameters are `rho` and the power split). The first line is a
/// `#`-comment carrying the powers, noise, units and any `extra` fields.
pub fn gaussian_figure_csv(
    spec: &GaussianSpec,
    rho_steps: usize,
    p2_steps: usize,
    extra: &serde_json::Map<String, serde_json::Value>,
) -> Result<String> {
    let outer = gaussian_outer(spec, rho_steps)?;
    let inner = gaussian_inner(spec, rho_steps, p2_steps)?;
    let mut manifest = serde_json::json!({
        "p1": spec.p1,
        "p2": spec.p2,
        "n0": spec.n0,
        "rho_steps": rho_steps,
        "p2_steps": p2_steps,
        "delays": [0, 1],
        "units": "bits",
    });
    if let Some(m) = manifest.as_object_mut() {
        m.extend(extra.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    let mut s = format!("# manifest: {manifest}\ntrace,param1,param2,r1,r2\n");
    for (name, curve) in [("outer", &outer), ("inner", &inner)] {
        for (a, b, r1, r2) in frontier_rows(curve) {
            s.push_str(&format!(
                "{name},{},{},{},{}\n",
                fmt9(a),
                fmt9(b),
                fmt9(r1),
                fmt9(r2)
            ));
        }
    }
    Ok(s)
}
