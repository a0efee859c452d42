//! Ansatz potentials and the color-electric/magnetic fields they generate.
//!
//! The potentials are
//!
//! ```text
//! φ = α₁ Σx
//! A = α₂ Σx e_z + (α₃ Σz + α₄ sinθ Σy + α₅ cosθ Σz) e_y,   θ = kz − ωt
//! ```
//!
//! and the fields are defined by
//!
//! ```text
//! E = −(1/c) ∂A/∂t − ∇φ − ig[φ, A]
//! B = ∇×A − ig (A×A)
//! ```
//!
//! Every field is available in two independent routes: the closed-form
//! coefficient groups (`*_analytic`) and central finite differences of the
//! potentials combined with exact matrix commutators (`*_numeric`).

use core::ops::{Add, Index, Mul, Neg, Sub};

use libm::{cos, sin, sqrt};

use crate::diff::{partial, Stencil};
use crate::error::{check_step, Result};
use crate::su2::{commutator, rotated_basis, Complex, ComplexMatrix2, LieElement};

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Full parameter tuple of the ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub alpha4: f64,
    pub alpha5: f64,
    /// Rotation rate of the color basis along y (1/length).
    pub lambda: f64,
    pub k: f64,
    pub omega: f64,
    /// Gauge coupling; `g = 0` is the Abelian (Maxwell) limit.
    pub g: f64,
    pub c: f64,
}

impl Default for AnsatzParams {
    fn default() -> Self {
        Self {
            alpha1: 0.0,
            alpha2: 0.0,
            alpha3: 0.0,
            alpha4: 0.0,
            alpha5: 0.0,
            lambda: 0.0,
            k: 0.0,
            omega: 0.0,
            g: 1.0,
            c: 1.0,
        }
    }
}

impl AnsatzParams {
    pub fn alphas(&self) -> [f64; 5] {
        [
            self.alpha1,
            self.alpha2,
            self.alpha3,
            self.alpha4,
            self.alpha5,
        ]
    }

    pub fn with_alphas(mut self, a: [f64; 5]) -> Self {
        [
            self.alpha1,
            self.alpha2,
            self.alpha3,
            self.alpha4,
            self.alpha5,
        ] = a;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.alphas().iter().all(|a| a.is_finite())
            && [self.lambda, self.k, self.omega, self.g, self.c]
                .iter()
                .all(|v| v.is_finite())
    }

    /// `g = 0`: all commutator terms drop out.
    pub fn is_abelian(&self) -> bool {
        self.g == 0.0
    }

    pub fn omega_over_c(&self) -> f64 {
        self.omega / self.c
    }

    pub fn phase(&self, s: &SpacetimePoint) -> f64 {
        self.k * s.z - self.omega * s.t
    }

    /// A point on the x = z = 0 / t = 0 slice where the phase equals `theta`.
    /// `None` when `k = ω = 0` (the phase is identically zero).
    pub fn point_at_phase(&self, theta: f64, y: f64) -> Option<SpacetimePoint> {
        if self.k != 0.0 {
            Some(SpacetimePoint::new(0.0, 0.0, y, theta / self.k))
        } else if self.omega != 0.0 {
            Some(SpacetimePoint::new(-theta / self.omega, 0.0, y, 0.0))
        } else {
            None
        }
    }
}

/// Spacetime coordinate label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coord {
    T,
    X,
    Y,
    Z,
}

impl Coord {
    /// Spatial coordinates in index order 1, 2, 3.
    pub const SPATIAL: [Coord; 3] = [Coord::X, Coord::Y, Coord::Z];
    /// All four, index order 0..4.
    pub const ALL: [Coord; 4] = [Coord::T, Coord::X, Coord::Y, Coord::Z];
}

/// A sample location `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpacetimePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacetimePoint {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn shifted(&self, coord: Coord, d: f64) -> Self {
        let mut s = *self;
        match coord {
            Coord::T => s.t += d,
            Coord::X => s.x += d,
            Coord::Y => s.y += d,
            Coord::Z => s.z += d,
        }
        s
    }
}

/// A spatial vector whose components are su(2) elements.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ColorVector {
    pub x: LieElement,
    pub y: LieElement,
    pub z: LieElement,
}

impl ColorVector {
    pub const ZERO: ColorVector = ColorVector {
        x: LieElement::ZERO,
        y: LieElement::ZERO,
        z: LieElement::ZERO,
    };

    pub const fn new(x: LieElement, y: LieElement, z: LieElement) -> Self {
        Self { x, y, z }
    }

    pub fn components(&self) -> [LieElement; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_components(c: [LieElement; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn norm_sq(&self) -> f64 {
        self.x.norm_sq() + self.y.norm_sq() + self.z.norm_sq()
    }

    /// Root of the summed squared σ-coefficients of all three components.
    pub fn norm(&self) -> f64 {
        sqrt(self.norm_sq())
    }
}

impl Index<usize> for ColorVector {
    type Output = LieElement;
    fn index(&self, i: usize) -> &LieElement {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("spatial index {i} out of range"),
        }
    }
}

impl Add for ColorVector {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for ColorVector {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for ColorVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ColorVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

/// `φ = α₁ Σx(λ, y)`.
pub fn scalar_potential(p: &AnsatzParams, s: &SpacetimePoint) -> LieElement {
    rotated_basis(p.lambda, s.y).x * p.alpha1
}

/// `A = α₂ Σx e_z + ((α₃ + α₅ cosθ) Σz + α₄ sinθ Σy) e_y`.
pub fn vector_potential(p: &AnsatzParams, s: &SpacetimePoint) -> ColorVector {
    let b = rotated_basis(p.lambda, s.y);
    let theta = p.phase(s);
    let ay = b.z * (p.alpha3 + p.alpha5 * cos(theta)) + b.y * (p.alpha4 * sin(theta));
    ColorVector::new(LieElement::ZERO, ay, b.x * p.alpha2)
}

/// The θ-harmonic coefficient groups of the closed-form fields.
///
/// `E_y = (e_const + e_cos cosθ) Σy + e_sin sinθ Σz` and
/// `B_x = (b_const + b_cos cosθ) Σy + b_sin sinθ Σz`; all other components
/// vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCoefficients {
    pub e_const: f64,
    pub e_cos: f64,
    pub e_sin: f64,
    pub b_const: f64,
    pub b_cos: f64,
    pub b_sin: f64,
}

impl FieldCoefficients {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.e_const,
            self.e_cos,
            self.e_sin,
            self.b_const,
            self.b_cos,
            self.b_sin,
        ]
    }
}

pub fn field_coefficients(p: &AnsatzParams) -> FieldCoefficients {
    let (a1, a2, a3, a4, a5) = (p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5);
    let (g, lam, k, w) = (p.g, p.lambda, p.k, p.omega_over_c());
    FieldCoefficients {
        e_const: -lam * a1 - 2.0 * g * a1 * a3,
        e_cos: w * a4 - 2.0 * g * a1 * a5,
        e_sin: -w * a5 + 2.0 * g * a1 * a4,
        b_const: lam * a2 + 2.0 * g * a2 * a3,
        b_cos: -k * a4 + 2.0 * g * a2 * a5,
        b_sin: k * a5 - 2.0 * g * a2 * a4,
    }
}

/// Largest monomial magnitude in each coefficient group of
/// [`field_coefficients`], used to scale "is this identically zero" tests.
pub(crate) fn field_coefficient_scales(p: &AnsatzParams) -> [f64; 6] {
    let (a1, a2, a3, a4, a5) = (p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5);
    let (g, lam, k, w) = (p.g, p.lambda, p.k, p.omega_over_c());
    let m = |a: f64, b: f64| a.abs().max(b.abs());
    [
        m(lam * a1, 2.0 * g * a1 * a3),
        m(w * a4, 2.0 * g * a1 * a5),
        m(w * a5, 2.0 * g * a1 * a4),
        m(lam * a2, 2.0 * g * a2 * a3),
        m(k * a4, 2.0 * g * a2 * a5),
        m(k * a5, 2.0 * g * a2 * a4),
    ]
}

/// Closed-form color-electric field; only the y-component is non-zero.
pub fn electric_field_analytic(p: &AnsatzParams, s: &SpacetimePoint) -> ColorVector {
    let f = field_coefficients(p);
    let b = rotated_basis(p.lambda, s.y);
    let theta = p.phase(s);
    let ey = b.combine(0.0, f.e_const + f.e_cos * cos(theta), f.e_sin * sin(theta));
    ColorVector::new(LieElement::ZERO, ey, LieElement::ZERO)
}

/// Closed-form color-magnetic field; only the x-component is non-zero.
pub fn magnetic_field_analytic(p: &AnsatzParams, s: &SpacetimePoint) -> ColorVector {
    let f = field_coefficients(p);
    let b = rotated_basis(p.lambda, s.y);
    let theta = p.phase(s);
    let bx = b.combine(0.0, f.b_const + f.b_cos * cos(theta), f.b_sin * sin(theta));
    ColorVector::new(bx, LieElement::ZERO, LieElement::ZERO)
}

/// A numerically evaluated quantity split into its derivative terms and its
/// commutator (coupling-dependent) terms. `total = derivative + commutator`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericParts<T> {
    pub derivative: T,
    pub commutator: T,
}

impl<T: Copy + Add<Output = T>> NumericParts<T> {
    pub fn total(&self) -> T {
        self.derivative + self.commutator
    }
}

/// `−i g [a, b]` evaluated at matrix level and projected back onto the σ basis.
pub(crate) fn minus_ig_commutator(g: f64, a: &LieElement, b: &LieElement) -> LieElement {
    let m = commutator(&a.to_matrix(), &b.to_matrix()) * Complex::new(0.0, -g);
    LieElement::project(&m)
}

/// `E` from its definition: central differences for the derivatives, exact
/// matrix commutator for `−ig[φ, A]`.
pub fn electric_field_numeric(p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> Result<ColorVector> {
    Ok(electric_field_numeric_parts(p, s, h, Stencil::Central2)?.total())
}

pub fn electric_field_numeric_parts(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    stencil: Stencil,
) -> Result<NumericParts<ColorVector>> {
    check_step(h)?;
    let da_dt = partial(|q| vector_potential(p, q), s, Coord::T, h, stencil);
    let grad_phi = ColorVector::from_components(
        Coord::SPATIAL.map(|c| partial(|q| scalar_potential(p, q), s, c, h, stencil)),
    );
    let phi = scalar_potential(p, s);
    let a = vector_potential(p, s);
    let comm = a.components().map(|ai| minus_ig_commutator(p.g, &phi, &ai));
    Ok(NumericParts {
        derivative: da_dt * (-1.0 / p.c) - grad_phi,
        commutator: ColorVector::from_components(comm),
    })
}

/// `B` from its definition: central-difference curl, exact `−ig(A×A)`.
pub fn magnetic_field_numeric(p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> Result<ColorVector> {
    Ok(magnetic_field_numeric_parts(p, s, h, Stencil::Central2)?.total())
}

pub fn magnetic_field_numeric_parts(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    stencil: Stencil,
) -> Result<NumericParts<ColorVector>> {
    check_step(h)?;
    let d = Coord::SPATIAL.map(|c| partial(|q| vector_potential(p, q), s, c, h, stencil));
    // d[j][i] = ∂_j A_i
    let curl = ColorVector::new(d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x);
    let a = vector_potential(p, s);
    // (A×A)_i = ε_ijk A_j A_k = [A_j, A_k] for cyclic (i, j, k)
    let cross = ColorVector::new(
        minus_ig_commutator(p.g, &a.y, &a.z),
        minus_ig_commutator(p.g, &a.z, &a.x),
        minus_ig_commutator(p.g, &a.x, &a.y),
    );
    Ok(NumericParts {
        derivative: curl,
        commutator: cross,
    })
}

/// Covariant four-potential `A_μ = (φ, −A)`.
pub fn four_potential(p: &AnsatzParams, s: &SpacetimePoint) -> [LieElement; 4] {
    let a = vector_potential(p, s);
    [scalar_potential(p, s), -a.x, -a.y, -a.z]
}

/// `∂_μ` with `∂_0 = (1/c) ∂_t`.
pub(crate) fn covariant_partial<T, F>(
    f: F,
    s: &SpacetimePoint,
    mu: usize,
    h: f64,
    stencil: Stencil,
    c: f64,
) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(&SpacetimePoint) -> T,
{
    let d = partial(f, s, Coord::ALL[mu], h, stencil);
    if mu == 0 {
        d * (1.0 / c)
    } else {
        d
    }
}

/// Field-strength tensor `F_{μν}` with lower indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStrength {
    pub components: [[LieElement; 4]; 4],
}

impl FieldStrength {
    /// Assemble `F` from E and B: `F_{0i} = E_i`, `F_{jk} = −ε_jki B_i`.
    pub fn from_fields(e: &ColorVector, b: &ColorVector) -> Self {
        let z = LieElement::ZERO;
        let (ex, ey, ez) = (e.x, e.y, e.z);
        let (bx, by, bz) = (b.x, b.y, b.z);
        Self {
            components: [
                [z, ex, ey, ez],
                [-ex, z, -bz, by],
                [-ey, bz, z, -bx],
                [-ez, -by, bx, z],
            ],
        }
    }

    pub fn get(&self, mu: usize, nu: usize) -> LieElement {
        self.components[mu][nu]
    }

    /// `E_i = F_{0i}`.
    pub fn electric(&self) -> ColorVector {
        let f = &self.components;
        ColorVector::new(f[0][1], f[0][2], f[0][3])
    }

    /// `B_i = −½ ε_ijk F_jk`.
    pub fn magnetic(&self) -> ColorVector {
        let f = &self.components;
        ColorVector::new(-f[2][3], -f[3][1], -f[1][2])
    }

    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for row in &self.components {
            for v in row {
                acc += v.norm_sq();
            }
        }
        sqrt(acc)
    }

    pub fn as_matrices(&self) -> [[ComplexMatrix2; 4]; 4] {
        self.components.map(|row| row.map(|v| v.to_matrix()))
    }
}

impl Add for FieldStrength {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        let mut out = self;
        for (row, rrow) in out.components.iter_mut().zip(r.components.iter()) {
            for (v, w) in row.iter_mut().zip(rrow.iter()) {
                *v += *w;
            }
        }
        out
    }
}

impl Sub for FieldStrength {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        self + r * -1.0
    }
}

impl Mul<f64> for FieldStrength {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            components: self.components.map(|row| row.map(|v| v * s)),
        }
    }
}

/// `F_{μν} = ∂_μ A_ν − ∂_ν A_μ + ig[A_μ, A_ν]` from five-point central
/// differences of the four-potential and exact commutators. Antisymmetric by
/// construction.
pub fn field_strength(p: &AnsatzParams, s: &SpacetimePoint, h: f64) -> Result<FieldStrength> {
    field_strength_with(p, s, h, Stencil::Central4)
}

/// `F_{μν}` assembled from the closed-form E and B.
pub fn field_strength_analytic(p: &AnsatzParams, s: &SpacetimePoint) -> FieldStrength {
    FieldStrength::from_fields(
        &electric_field_analytic(p, s),
        &magnetic_field_analytic(p, s),
    )
}

/// [`field_strength`] with an explicit stencil.
pub fn field_strength_with(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    stencil: Stencil,
) -> Result<FieldStrength> {
    check_step(h)?;
    Ok(field_strength_raw(p, s, h, stencil))
}

pub(crate) fn field_strength_raw(
    p: &AnsatzParams,
    s: &SpacetimePoint,
    h: f64,
    stencil: Stencil,
) -> FieldStrength {
    // da[mu][nu] = ∂_μ A_ν
    let mut da = [[LieElement::ZERO; 4]; 4];
    for (mu, row) in da.iter_mut().enumerate() {
        let d = covariant_partial(|q| Potential4(four_potential(p, q)), s, mu, h, stencil, p.c);
        *row = d.0;
    }
    let a = four_potential(p, s);
    let mut f = [[LieElement::ZERO; 4]; 4];
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            // +ig[A_μ, A_ν] = −(−ig[A_μ, A_ν])
            let comm = -minus_ig_commutator(p.g, &a[mu], &a[nu]);
            let v = da[mu][nu] - da[nu][mu] + comm;
            f[mu][nu] = v;
            f[nu][mu] = -v;
        }
    }
    FieldStrength { components: f }
}

/// Four-potential wrapper so the difference engine can act on all four
/// components at once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Potential4(pub [LieElement; 4]);

impl Add for Potential4 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self([
            self.0[0] + r.0[0],
            self.0[1] + r.0[1],
            self.0[2] + r.0[2],
            self.0[3] + r.0[3],
        ])
    }
}

impl Sub for Potential4 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self([
            self.0[0] - r.0[0],
            self.0[1] - r.0[1],
            self.0[2] - r.0[2],
            self.0[3] - r.0[3],
        ])
    }
}

impl Mul<f64> for Potential4 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }
}
