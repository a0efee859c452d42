//! Generalized Gauss and Ampère residuals and the Bianchi identity.
//!
//! ```text
//! Gauss:   ∇·E − ig(A·E − E·A)
//! Ampère: −(1/c) ∂E/∂t + ∇×B − ig([φ, E] + A×B + B×A)
//! Bianchi: D_μ F_νγ + D_ν F_γμ + D_γ F_μν,  D_μ X = ∂_μ X + ig[A_μ, X]
//! ```
//!
//! The analytic mode evaluates the grouped harmonic forms, where the Gauss
//! residual is a multiple of Σx, the Ampère e_y residual lies in
//! span{Σy, Σz} and the Ampère e_z residual is a multiple of Σx. The numeric
//! mode applies the differential operators directly.

use libm::{cos, sin, sqrt};

use crate::diff::{partial, Stencil};
use crate::error::{check_step, Error, Result};
use crate::fields::{
    covariant_partial, electric_field_analytic, electric_field_numeric_parts,
    field_strength_analytic, field_strength_raw, four_potential, magnetic_field_analytic,
    magnetic_field_numeric_parts, minus_ig_commutator, scalar_potential, vector_potential,
    AnsatzParams, ColorVector, Coord, FieldStrength, NumericParts, SpacetimePoint,
};
use crate::su2::{rotated_basis, LieElement};

/// How a residual is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Closed-form harmonic coefficient groups.
    Analytic,
    /// Finite differences with step `h` plus exact commutators.
    Numeric { h: f64 },
}

/// Which fields the numeric residual differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldRoute {
    /// Closed-form E and B, differentiated with the five-point stencil.
    #[default]
    ClosedForm,
    /// E and B themselves obtained by three-point differences of the
    /// potentials, then differentiated again with the three-point stencil.
    /// Truncation `O(h²)`, round-off grows like `ε/h²`.
    FromPotentials,
}

impl FieldRoute {
    fn outer_stencil(self) -> Stencil {
        match self {
            FieldRoute::ClosedForm => Stencil::Central4,
            FieldRoute::FromPotentials => Stencil::Central2,
        }
    }

    fn fields(self, p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> (ColorVector, ColorVector) {
        match self {
            FieldRoute::ClosedForm => {
                (electric_field_analytic(p, s), magnetic_field_analytic(p, s))
            }
            FieldRoute::FromPotentials => {
                // h > 0 is checked by every public caller
                let e = electric_field_numeric_parts(p, s, h, Stencil::Central2)
                    .map(|x| x.total())
                    .unwrap_or_default();
                let b = magnetic_field_numeric_parts(p, s, h, Stencil::Central2)
                    .map(|x| x.total())
                    .unwrap_or_default();
                (e, b)
            }
        }
    }
}

/// Harmonic coefficients of the Gauss residual along Σx:
/// `G = (g0 + g1 cosθ + g2 cos²θ) Σx`.
pub fn gauss_harmonics(p: &AnsatzParams) -> [f64; 3] {
    let (a1, a3, a4, a5) = (p.alpha1, p.alpha3, p.alpha4, p.alpha5);
    let (g, lam, w) = (p.g, p.lambda, p.omega_over_c());
    let x = lam + 2.0 * g * a3;
    [
        a1 * x * x + 2.0 * g * a4 * (2.0 * g * a1 * a4 - w * a5),
        x * (4.0 * g * a1 * a5 - w * a4),
        -4.0 * g * g * a1 * (a4 * a4 - a5 * a5),
    ]
}

/// Harmonic coefficients of the Ampère residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmpereHarmonics {
    /// e_y: `(y_const + y_cos cosθ) Σz + y_sin sinθ Σy`.
    pub y_const: f64,
    pub y_cos: f64,
    pub y_sin: f64,
    /// e_z: `(z_const + z_cos cosθ + z_cos2 cos²θ) Σx`.
    pub z_const: f64,
    pub z_cos: f64,
    pub z_cos2: f64,
}

pub fn ampere_harmonics(p: &AnsatzParams) -> AmpereHarmonics {
    let (a1, a2, a3, a4, a5) = (p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5);
    let (g, lam, k, w) = (p.g, p.lambda, p.k, p.omega_over_c());
    let x = lam + 2.0 * g * a3;
    let disp = k * k - w * w - 4.0 * g * g * (a1 * a1 - a2 * a2);
    let mix = w * a1 - k * a2;
    AmpereHarmonics {
        y_const: 2.0 * g * ((a2 * a2 - a1 * a1) * x),
        y_cos: a5 * disp + 4.0 * g * a4 * mix,
        y_sin: a4 * disp + 4.0 * g * a5 * mix,
        z_const: a2 * x * x + 2.0 * g * a4 * (2.0 * g * a2 * a4 - k * a5),
        z_cos: x * (4.0 * g * a2 * a5 - k * a4),
        z_cos2: 4.0 * g * g * a2 * (a5 * a5 - a4 * a4),
    }
}

fn gauss_analytic(p: &AnsatzParams, s: &SpacetimePoint) -> LieElement {
    let [c0, c1, c2] = gauss_harmonics(p);
    let ct = cos(p.phase(s));
    rotated_basis(p.lambda, s.y).x * (c0 + c1 * ct + c2 * ct * ct)
}

fn ampere_analytic(p: &AnsatzParams, s: &SpacetimePoint) -> ColorVector {
    let h = ampere_harmonics(p);
    let b = rotated_basis(p.lambda, s.y);
    let theta = p.phase(s);
    let (ct, st) = (cos(theta), sin(theta));
    let ey = b.z * (h.y_const + h.y_cos * ct) + b.y * (h.y_sin * st);
    let ez = b.x * (h.z_const + h.z_cos * ct + h.z_cos2 * ct * ct);
    ColorVector::new(LieElement::ZERO, ey, ez)
}

/// Generalized Gauss residual at `s`.
pub fn gauss_residual(p: &AnsatzParams, s: &SpacetimePoint, mode: Mode) -> Result<LieElement> {
    match mode {
        Mode::Analytic => Ok(gauss_analytic(p, s)),
        Mode::Numeric { h } => Ok(gauss_residual_parts(p, s, h, FieldRoute::ClosedForm)?.total()),
    }
}

/// Numeric Gauss residual split into `∇·E` and `−ig Σ[A_i, E_i]`.
pub fn gauss_residual_parts(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    route: FieldRoute,
) -> Result<NumericParts<LieElement>> {
    check_step(h)?;
    let stencil = route.outer_stencil();
    let mut div = LieElement::ZERO;
    for (i, c) in Coord::SPATIAL.into_iter().enumerate() {
        div += partial(|q| route.fields(p, q, h).0[i], s, c, h, stencil);
    }
    let (e, _) = route.fields(p, s, h);
    let a = vector_potential(p, s);
    let mut comm = LieElement::ZERO;
    for i in 0..3 {
        comm += minus_ig_commutator(p.g, &a[i], &e[i]);
    }
    Ok(NumericParts {
        derivative: div,
        commutator: comm,
    })
}

/// Generalized Ampère residual at `s`.
pub fn ampere_residual(p: &AnsatzParams, s: &SpacetimePoint, mode: Mode) -> Result<ColorVector> {
    match mode {
        Mode::Analytic => Ok(ampere_analytic(p, s)),
        Mode::Numeric { h } => Ok(ampere_residual_parts(p, s, h, FieldRoute::ClosedForm)?.total()),
    }
}

/// Numeric Ampère residual split into `−(1/c)∂_t E + ∇×B` and
/// `−ig([φ, E] + A×B + B×A)`.
pub fn ampere_residual_parts(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    route: FieldRoute,
) -> Result<NumericParts<ColorVector>> {
    check_step(h)?;
    let stencil = route.outer_stencil();
    let de_dt = partial(|q| route.fields(p, q, h).0, s, Coord::T, h, stencil);
    // db[j] = ∂_j B
    let db = Coord::SPATIAL.map(|c| partial(|q| route.fields(p, q, h).1, s, c, h, stencil));
    let curl_b = ColorVector::new(db[1].z - db[2].y, db[2].x - db[0].z, db[0].y - db[1].x);

    let (e, b) = route.fields(p, s, h);
    let phi = scalar_potential(p, s);
    let a = vector_potential(p, s);
    let mut comm = [LieElement::ZERO; 3];
    for (i, out) in comm.iter_mut().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // (A×B + B×A)_i = [A_j, B_k] − [A_k, B_j]
        *out = minus_ig_commutator(p.g, &phi, &e[i]) + minus_ig_commutator(p.g, &a[j], &b[k])
            - minus_ig_commutator(p.g, &a[k], &b[j]);
    }
    Ok(NumericParts {
        derivative: de_dt * (-1.0 / p.c) + curl_b,
        commutator: ColorVector::from_components(comm),
    })
}

/// Gauss and Ampère residuals at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub gauss: LieElement,
    pub ampere: ColorVector,
    pub point: SpacetimePoint,
    /// Root of the summed squared σ-coefficients of all four components.
    pub norm: f64,
}

pub fn residual_sample(p: &AnsatzParams, s: &SpacetimePoint, mode: Mode) -> Result<ResidualSample> {
    let gauss = gauss_residual(p, s, mode)?;
    let ampere = ampere_residual(p, s, mode)?;
    Ok(ResidualSample {
        gauss,
        ampere,
        point: *s,
        norm: sqrt(gauss.norm_sq() + ampere.norm_sq()),
    })
}

/// Equispaced samples `start..=end`; a single sample sits at `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Samples {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Samples {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::TooFewSamples { got: 0, need: 1 });
        }
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { start, end, count })
    }

    pub fn single(v: f64) -> Self {
        Self {
            start: v,
            end: v,
            count: 1,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count <= 1 {
            self.start
        } else {
            self.start + (self.end - self.start) * (i as f64) / ((self.count - 1) as f64)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.value(i))
    }
}

/// A `(t, y, z)` product grid at fixed `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t: Samples,
    pub y: Samples,
    pub z: Samples,
    pub x: f64,
}

impl Grid {
    pub fn new(t: Samples, y: Samples, z: Samples) -> Self {
        Self { t, y, z, x: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.t.count * self.y.count * self.z.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = SpacetimePoint> + '_ {
        self.t.iter().flat_map(move |t| {
            self.y.iter().flat_map(move |y| {
                self.z
                    .iter()
                    .map(move |z| SpacetimePoint::new(t, self.x, y, z))
            })
        })
    }
}

/// Largest residual norm over the grid.
pub fn max_residual_on_grid(p: &AnsatzParams, grid: &Grid, mode: Mode) -> Result<f64> {
    let mut worst = 0.0_f64;
    for s in grid.points() {
        worst = worst.max(residual_sample(p, &s, mode)?.norm);
    }
    Ok(worst)
}

/// Norm of the Bianchi cyclic sum `D_μF_νγ + D_νF_γμ + D_γF_μν` over all four
/// index triples, with `F` from the closed-form fields and `∂_ρ` by
/// three-point differences. Truncation is `O(h²)`.
pub fn bianchi_residual(p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> Result<f64> {
    check_step(h)?;
    Ok(bianchi_norm(p, s, h, |q| field_strength_analytic(p, q)))
}

/// As [`bianchi_residual`], but with `F` itself built by three-point
/// differences of the potentials. For this ansatz the nested difference
/// quotients commute and every product-rule error pairs commuting or
/// constant factors, so the result is at round-off level for any `h`.
pub fn bianchi_residual_nested(p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> Result<f64> {
    check_step(h)?;
    Ok(bianchi_norm(p, s, h, |q| {
        field_strength_raw(p, q, h, Stencil::Central2)
    }))
}

fn bianchi_norm<F>(p: &AnsatzParams, s: &SpacetimePoint, h: f64, fs: F) -> f64
where
    F: Fn(&SpacetimePoint) -> FieldStrength + Copy,
{
    let f0 = fs(s);
    let df: [FieldStrength; 4] =
        core::array::from_fn(|rho| covariant_partial(fs, s, rho, h, Stencil::Central2, p.c));
    let a = four_potential(p, s);
    // D_ρ F_μν = ∂_ρ F_μν + ig[A_ρ, F_μν]
    let cov = |rho: usize, mu: usize, nu: usize| {
        df[rho].get(mu, nu) - minus_ig_commutator(p.g, &a[rho], &f0.get(mu, nu))
    };
    let mut acc = 0.0;
    for (mu, nu, ga) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        let r = cov(mu, nu, ga) + cov(nu, ga, mu) + cov(ga, mu, nu);
        acc += r.norm_sq();
    }
    sqrt(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::RotatedBasis;

    fn random_like() -> AnsatzParams {
        AnsatzParams {
            alpha1: 0.37,
            alpha2: -0.52,
            alpha3: 0.81,
            alpha4: -0.44,
            alpha5: 0.29,
            lambda: 0.63,
            k: 1.17,
            omega: -0.74,
            g: 0.91,
            c: 1.0,
        }
    }

    fn orthogonal_part(b: &RotatedBasis, v: &LieElement, keep: &[usize]) -> f64 {
        let comps = b.components(v);
        (0..3)
            .filter(|i| !keep.contains(i))
            .map(|i| comps[i].abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn analytic_residual_structure() {
        let p = random_like();
        let s = SpacetimePoint::new(0.3, 0.0, -0.8, 1.2);
        let b = rotated_basis(p.lambda, s.y);
        let gauss = gauss_residual(&p, &s, Mode::Analytic).unwrap();
        let amp = ampere_residual(&p, &s, Mode::Analytic).unwrap();
        assert!(gauss.norm() > 1e-3);
        assert!(orthogonal_part(&b, &gauss, &[0]) < 1e-12);
        assert_eq!(amp.x, LieElement::ZERO);
        assert!(orthogonal_part(&b, &amp.y, &[1, 2]) < 1e-12);
        assert!(orthogonal_part(&b, &amp.z, &[0]) < 1e-12);
    }

    #[test]
    fn numeric_matches_analytic_on_a_non_solution() {
        let p = random_like();
        let s = SpacetimePoint::new(-0.4, 0.7, 0.5, 0.2);
        let h = 1e-3;
        let ga = gauss_residual(&p, &s, Mode::Analytic).unwrap();
        let gn = gauss_residual(&p, &s, Mode::Numeric { h }).unwrap();
        assert!((ga - gn).norm() < 1e-10, "{:?} vs {:?}", ga, gn);
        let aa = ampere_residual(&p, &s, Mode::Analytic).unwrap();
        let an = ampere_residual(&p, &s, Mode::Numeric { h }).unwrap();
        assert!((aa - an).norm() < 1e-10);
    }

    #[test]
    fn potential_route_agrees_at_second_order() {
        let p = random_like();
        let s = SpacetimePoint::new(0.1, 0.0, 0.3, -0.6);
        let err = |h: f64| {
            let g = gauss_residual_parts(&p, &s, h, FieldRoute::FromPotentials)
                .unwrap()
                .total();
            let a = ampere_residual_parts(&p, &s, h, FieldRoute::FromPotentials)
                .unwrap()
                .total();
            let ga = gauss_residual(&p, &s, Mode::Analytic).unwrap();
            let aa = ampere_residual(&p, &s, Mode::Analytic).unwrap();
            sqrt((g - ga).norm_sq() + (a - aa).norm_sq())
        };
        let (e1, e2) = (err(2e-3), err(1e-3));
        assert!(e1 < 1e-4);
        assert!((e1 / e2 - 4.0).abs() < 0.5, "ratio {}", e1 / e2);
    }

    #[test]
    fn residuals_do_not_depend_on_x() {
        let p = random_like();
        for mode in [Mode::Analytic, Mode::Numeric { h: 1e-4 }] {
            let a = residual_sample(&p, &SpacetimePoint::new(0.2, 0.0, 0.4, 0.9), mode).unwrap();
            let b = residual_sample(&p, &SpacetimePoint::new(0.2, 3.7, 0.4, 0.9), mode).unwrap();
            assert!((a.norm - b.norm).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_step_rejected() {
        let p = random_like();
        let s = SpacetimePoint::default();
        assert_eq!(
            gauss_residual(&p, &s, Mode::Numeric { h: 0.0 }),
            Err(Error::InvalidStep(0.0))
        );
        assert!(ampere_residual(&p, &s, Mode::Numeric { h: -1.0 }).is_err());
        assert!(bianchi_residual(&p, &s, 0.0).is_err());
        // analytic mode ignores the step entirely
        assert!(gauss_residual(&p, &s, Mode::Analytic).is_ok());
    }

    #[test]
    fn grid_layout() {
        let grid = Grid::new(
            Samples::new(0.0, 1.0, 3).unwrap(),
            Samples::single(0.5),
            Samples::new(-1.0, 1.0, 2).unwrap(),
        );
        assert_eq!(grid.len(), 6);
        let pts: alloc::vec::Vec<_> = grid.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], SpacetimePoint::new(0.0, 0.0, 0.5, -1.0));
        assert_eq!(pts[5], SpacetimePoint::new(1.0, 0.0, 0.5, 1.0));
        assert!(Samples::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn bianchi_small_for_non_solution() {
        let p = random_like();
        let s = SpacetimePoint::new(0.2, 0.1, -0.3, 0.5);
        let r = bianchi_residual(&p, &s, 1e-2).unwrap();
        let r2 = bianchi_residual(&p, &s, 5e-3).unwrap();
        assert!(r < 1e-3 && r > 0.0);
        assert!((r / r2 - 4.0).abs() < 0.5, "ratio {}", r / r2);
        for h in [1e-2, 1e-3] {
            assert!(bianchi_residual_nested(&p, &s, h).unwrap() < 1e-11);
        }
    }
}
