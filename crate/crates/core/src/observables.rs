//! Gauge-invariant observables: energy density, Poynting flux, period
//! averages and energy-density nodes.
//!
//! The density is `κ·Tr(E·E + B·B)`. With `Tr(σᵢσⱼ) = 2δᵢⱼ`, `κ = ½` gives
//! twice the textbook closed forms `(k²α₄²/2)(1 − ξη cosθ)` (Family II) and
//! `k²α₄² cos²θ` (Family I); `κ = ¼` reproduces them and is the default.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, fabs, sqrt};

use crate::constraints::{Family, FamilySolution};
use crate::error::{Error, Result};
use crate::fields::{
    electric_field_analytic, magnetic_field_analytic, AnsatzParams, ColorVector, SpacetimePoint,
};
use crate::su2::trace_inner;

/// Normalization that reproduces the closed-form profiles.
pub const DEFAULT_KAPPA: f64 = 0.25;
/// The literal `½Tr(E² + B²)` normalization.
pub const HALF_TRACE_KAPPA: f64 = 0.5;

fn check_kappa(kappa: f64) -> Result<()> {
    if kappa.is_finite() && kappa > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidNormalization(kappa))
    }
}

fn trace_dot(a: &ColorVector, b: &ColorVector) -> f64 {
    (0..3)
        .map(|i| trace_inner(&a[i].to_matrix(), &b[i].to_matrix()).re)
        .sum()
}

/// `κ·Tr(E·E + B·B)` from the analytic fields.
pub fn energy_density(p: &AnsatzParams, s: &SpacetimePoint, kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    let e = electric_field_analytic(p, s);
    let b = magnetic_field_analytic(p, s);
    Ok(kappa * (trace_dot(&e, &e) + trace_dot(&b, &b)))
}

/// Energy density at phase `theta` on the `y = 0` slice.
pub fn energy_density_at_phase(p: &AnsatzParams, theta: f64, kappa: f64) -> Result<f64> {
    let s = p.point_at_phase(theta, 0.0).ok_or(Error::DegenerateGrid)?;
    energy_density(p, &s, kappa)
}

/// Closed-form profile (`κ = ¼` convention). Family III has no profile.
pub fn energy_closed_form(family: &FamilySolution, theta: f64) -> Result<f64> {
    match *family {
        FamilySolution::Linear { k, alpha4, .. } => {
            let c = cos(theta);
            Ok(k * k * alpha4 * alpha4 * c * c)
        }
        FamilySolution::SelfInteracting {
            k, alpha4, eta, xi, ..
        } => Ok(0.5 * k * k * alpha4 * alpha4 * (1.0 - (xi * eta).value() * cos(theta))),
        FamilySolution::PureGauge { .. } => Err(Error::UnsupportedFamily(Family::III)),
    }
}

/// `S_i = 2κ ε_ijk Tr(E_j B_k)`.
pub fn poynting(p: &AnsatzParams, s: &SpacetimePoint, kappa: f64) -> Result<[f64; 3]> {
    check_kappa(kappa)?;
    let e = electric_field_analytic(p, s);
    let b = magnetic_field_analytic(p, s);
    let tr = |j: usize, k: usize| trace_inner(&e[j].to_matrix(), &b[k].to_matrix()).re;
    Ok([
        2.0 * kappa * (tr(1, 2) - tr(2, 1)),
        2.0 * kappa * (tr(2, 0) - tr(0, 2)),
        2.0 * kappa * (tr(0, 1) - tr(1, 0)),
    ])
}

/// Mean of the analytic E over one period at fixed `(x, y, z) = (0, y, 0)`,
/// by the uniform (periodic trapezoidal) rule.
pub fn time_averaged_electric(p: &AnsatzParams, y: f64, n_samples: usize) -> Result<ColorVector> {
    if n_samples < 4 {
        return Err(Error::TooFewSamples {
            got: n_samples,
            need: 4,
        });
    }
    if p.omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let period = 2.0 * PI / fabs(p.omega);
    let mut acc = ColorVector::ZERO;
    for j in 0..n_samples {
        let t = period * (j as f64) / (n_samples as f64);
        acc = acc + electric_field_analytic(p, &SpacetimePoint::new(t, 0.0, y, 0.0));
    }
    Ok(acc * (1.0 / n_samples as f64))
}

/// Nodes of the closed-form profile in `[0, 2π)`.
pub fn node_locations(family: &FamilySolution) -> Result<Vec<f64>> {
    match *family {
        FamilySolution::Linear { .. } => Ok(alloc::vec![PI / 2.0, 3.0 * PI / 2.0]),
        FamilySolution::SelfInteracting { eta, xi, .. } => {
            Ok(alloc::vec![if (xi * eta).value() > 0.0 { 0.0 } else { PI }])
        }
        FamilySolution::PureGauge { .. } => Err(Error::UnsupportedFamily(Family::III)),
    }
}

/// Energy density sampled on `n` equispaced phases in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProfile {
    pub thetas: Vec<f64>,
    pub densities: Vec<f64>,
    pub kappa: f64,
}

impl EnergyProfile {
    pub fn sample(p: &AnsatzParams, n: usize, kappa: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewSamples { got: 0, need: 1 });
        }
        let thetas: Vec<f64> = (0..n).map(|j| 2.0 * PI * (j as f64) / (n as f64)).collect();
        let densities = thetas
            .iter()
            .map(|&t| energy_density_at_phase(p, t, kappa))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            thetas,
            densities,
            kappa,
        })
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Period average (spectrally accurate for trigonometric profiles).
    pub fn mean(&self) -> f64 {
        self.densities.iter().sum::<f64>() / self.densities.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.densities
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.densities.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn wrap_phase(theta: f64) -> f64 {
    let tau = 2.0 * PI;
    let w = theta - tau * libm::floor(theta / tau);
    if w >= tau - 1e-12 {
        0.0
    } else {
        w
    }
}

/// Locate energy-density nodes by golden-section minimization of `√ℰ(θ)`
/// around each local minimum of an `n`-point scan. A minimum counts as a
/// node when `√ℰ` falls below `rel_tol·√max ℰ`.
pub fn find_nodes(p: &AnsatzParams, n: usize, kappa: f64, rel_tol: f64) -> Result<Vec<f64>> {
    if n < 3 {
        return Err(Error::TooFewSamples { got: n, need: 3 });
    }
    let profile = EnergyProfile::sample(p, n, kappa)?;
    let scale = sqrt(profile.max());
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let f = |t: f64| energy_density_at_phase(p, t, kappa).map(sqrt);
    let step = 2.0 * PI / n as f64;
    let d = &profile.densities;
    let mut nodes: Vec<f64> = Vec::new();
    for i in 0..n {
        let prev = d[(i + n - 1) % n];
        let next = d[(i + 1) % n];
        if !(d[i] <= prev && d[i] <= next) {
            continue;
        }
        let (mut a, mut b) = (profile.thetas[i] - step, profile.thetas[i] + step);
        let r = (sqrt(5.0) - 1.0) / 2.0;
        let mut x1 = b - r * (b - a);
        let mut x2 = a + r * (b - a);
        let mut f1 = f(x1)?;
        let mut f2 = f(x2)?;
        while b - a > 1e-14 {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - r * (b - a);
                f1 = f(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + r * (b - a);
                f2 = f(x2)?;
            }
        }
        let theta = 0.5 * (a + b);
        if f(theta)? <= rel_tol * scale {
            let w = wrap_phase(theta);
            let dup = nodes.iter().any(|&m| {
                let gap = fabs(m - w);
                gap.min(2.0 * PI - gap) < 1e-8
            });
            if !dup {
                nodes.push(w);
            }
        }
    }
    nodes.sort_by(|a, b| a.total_cmp(b));
    Ok(nodes)
}
