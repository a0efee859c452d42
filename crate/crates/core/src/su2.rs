//! 2×2 complex matrices, the Pauli basis and the y-rotated Σ basis.
//!
//! Hermitian traceless elements are stored as real coefficient triples
//! `a_x σx + a_y σy + a_z σz` ([`LieElement`]); full matrices
//! ([`ComplexMatrix2`]) are only materialized where a computation needs
//! matrix products, e.g. commutators and traces.

use core::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use libm::{cos, sin, sqrt};
use num_complex::Complex64;

pub type Complex = Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Color axis selecting one of the three Pauli matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2(pub [[Complex; 2]; 2]);

impl ComplexMatrix2 {
    pub const fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Self([[a, b], [c, d]])
    }

    pub const fn zero() -> Self {
        Self([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn scale(&self, s: Complex) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zero())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol
    }
}

impl Default for ComplexMatrix2 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }
}

impl Neg for ComplexMatrix2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-ONE)
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex::new(rhs, 0.0))
    }
}

impl Mul<Complex> for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

/// The standard Pauli matrix for `axis`.
pub fn pauli(axis: Axis) -> ComplexMatrix2 {
    match axis {
        Axis::X => ComplexMatrix2::new(ZERO, ONE, ONE, ZERO),
        Axis::Y => ComplexMatrix2::new(ZERO, -I, I, ZERO),
        Axis::Z => ComplexMatrix2::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// `AB - BA`.
pub fn commutator(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix2 {
    *a * *b - *b * *a
}

/// `Tr(A·B)`.
pub fn trace_inner(a: &ComplexMatrix2, b: &ComplexMatrix2) -> Complex {
    (*a * *b).trace()
}

/// Coefficients `(a0, a_x, a_y, a_z)` with `M = a0·I + a_x σx + a_y σy + a_z σz`.
pub fn decompose(m: &ComplexMatrix2) -> [Complex; 4] {
    let half = Complex::new(0.5, 0.0);
    [
        m.trace() * half,
        trace_inner(m, &pauli(Axis::X)) * half,
        trace_inner(m, &pauli(Axis::Y)) * half,
        trace_inner(m, &pauli(Axis::Z)) * half,
    ]
}

/// Inverse of [`decompose`].
pub fn reconstruct(coeffs: &[Complex; 4]) -> ComplexMatrix2 {
    ComplexMatrix2::identity() * coeffs[0]
        + pauli(Axis::X) * coeffs[1]
        + pauli(Axis::Y) * coeffs[2]
        + pauli(Axis::Z) * coeffs[3]
}

/// A traceless Hermitian 2×2 matrix `a·σ`, stored by its real coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LieElement {
    coeffs: [f64; 3],
}

impl LieElement {
    pub const ZERO: LieElement = LieElement { coeffs: [0.0; 3] };

    pub const fn new(ax: f64, ay: f64, az: f64) -> Self {
        Self {
            coeffs: [ax, ay, az],
        }
    }

    pub const fn from_coeffs(coeffs: [f64; 3]) -> Self {
        Self { coeffs }
    }

    pub fn basis(axis: Axis) -> Self {
        let mut coeffs = [0.0; 3];
        coeffs[axis.index()] = 1.0;
        Self { coeffs }
    }

    pub const fn coeffs(&self) -> [f64; 3] {
        self.coeffs
    }

    pub fn to_matrix(&self) -> ComplexMatrix2 {
        let [x, y, z] = self.coeffs;
        ComplexMatrix2::new(
            Complex::new(z, 0.0),
            Complex::new(x, -y),
            Complex::new(x, y),
            Complex::new(-z, 0.0),
        )
    }

    /// Recover the coefficients of a matrix that is traceless and Hermitian
    /// within `tol`; `None` otherwise.
    pub fn from_matrix(m: &ComplexMatrix2, tol: f64) -> Option<Self> {
        if !m.is_traceless(tol) || !m.is_hermitian(tol) {
            return None;
        }
        Some(Self::project(m))
    }

    /// Real parts of the σ-coefficients of `m`, discarding any identity or
    /// anti-Hermitian part.
    pub fn project(m: &ComplexMatrix2) -> Self {
        let d = decompose(m);
        Self::new(d[1].re, d[2].re, d[3].re)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.norm_sq())
    }

    /// Structure-constant form of the bracket: `[a·σ, b·σ] = 2i (a×b)·σ`.
    /// Returns `a×b`.
    pub fn cross(&self, other: &Self) -> Self {
        let [a1, a2, a3] = self.coeffs;
        let [b1, b2, b3] = other.coeffs;
        Self::new(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    }
}

impl Index<Axis> for LieElement {
    type Output = f64;
    fn index(&self, axis: Axis) -> &f64 {
        &self.coeffs[axis.index()]
    }
}

impl Add for LieElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a, b, c] = self.coeffs;
        let [d, e, f] = rhs.coeffs;
        Self::new(a + d, b + e, c + f)
    }
}

impl AddAssign for LieElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for LieElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let [a, b, c] = self.coeffs;
        let [d, e, f] = rhs.coeffs;
        Self::new(a - d, b - e, c - f)
    }
}

impl Neg for LieElement {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for LieElement {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        let [a, b, c] = self.coeffs;
        Self::new(a * s, b * s, c * s)
    }
}

/// The y-dependent rotated basis `(Σx, Σy, Σz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedBasis {
    pub x: LieElement,
    pub y: LieElement,
    pub z: LieElement,
}

impl RotatedBasis {
    pub fn get(&self, axis: Axis) -> LieElement {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    /// Coefficients of `v` along `(Σx, Σy, Σz)`. The basis is orthonormal
    /// under `½Tr(AB)`, so this is a plain dot product.
    pub fn components(&self, v: &LieElement) -> [f64; 3] {
        [self.x.dot(v), self.y.dot(v), self.z.dot(v)]
    }

    /// `cx Σx + cy Σy + cz Σz`.
    pub fn combine(&self, cx: f64, cy: f64, cz: f64) -> LieElement {
        self.x * cx + self.y * cy + self.z * cz
    }
}

/// Rotation of `(σx, σy)` by the angle `λy` about `σz`.
pub fn rotated_basis(lambda: f64, y: f64) -> RotatedBasis {
    let (s, c) = (sin(lambda * y), cos(lambda * y));
    RotatedBasis {
        x: LieElement::new(c, s, 0.0),
        y: LieElement::new(-s, c, 0.0),
        z: LieElement::new(0.0, 0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn close(a: &ComplexMatrix2, b: &ComplexMatrix2, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn pauli_definitions() {
        let z = pauli(Axis::Z);
        assert_eq!(z, ComplexMatrix2::new(ONE, ZERO, ZERO, -ONE));
        for axis in Axis::ALL {
            let p = pauli(axis);
            assert!(close(&(p * p), &ComplexMatrix2::identity(), 0.0));
        }
        let xy = commutator(&pauli(Axis::X), &pauli(Axis::Y));
        assert!(close(&xy, &(pauli(Axis::Z) * Complex::new(0.0, 2.0)), 0.0));
    }

    #[test]
    fn rotated_basis_special_angles() {
        let b = rotated_basis(0.0, 3.7);
        assert_eq!(b.x, LieElement::basis(Axis::X));
        assert_eq!(b.y, LieElement::basis(Axis::Y));
        assert_eq!(b.z, LieElement::basis(Axis::Z));

        let q = rotated_basis(1.0, FRAC_PI_2);
        assert!((q.x - LieElement::basis(Axis::Y)).norm() < 1e-15);
        assert!((q.y + LieElement::basis(Axis::X)).norm() < 1e-15);
        assert_eq!(q.z, LieElement::basis(Axis::Z));
    }

    #[test]
    fn commutator_antisymmetry_and_sigma_relations() {
        let m = ComplexMatrix2::new(
            Complex::new(0.3, -1.0),
            Complex::new(2.0, 0.5),
            Complex::new(-0.7, 0.1),
            Complex::new(1.1, 0.0),
        );
        assert_eq!(commutator(&m, &m), ComplexMatrix2::zero());

        let b = rotated_basis(0.8, -1.3);
        let two_i = Complex::new(0.0, 2.0);
        let lhs = commutator(&b.y.to_matrix(), &b.z.to_matrix());
        assert!(close(&lhs, &(b.x.to_matrix() * two_i), 1e-14));
    }

    #[test]
    fn trace_inner_normalization() {
        let (x, y) = (pauli(Axis::X), pauli(Axis::Y));
        assert_eq!(trace_inner(&x, &x), Complex::new(2.0, 0.0));
        assert_eq!(trace_inner(&x, &y), ZERO);
        let id = ComplexMatrix2::identity();
        assert_eq!(trace_inner(&id, &id), Complex::new(2.0, 0.0));
    }

    #[test]
    fn decompose_examples() {
        let c = |v: f64| Complex::new(v, 0.0);
        assert_eq!(decompose(&pauli(Axis::Z)), [c(0.0), c(0.0), c(0.0), c(1.0)]);
        assert_eq!(
            decompose(&ComplexMatrix2::identity()),
            [c(1.0), c(0.0), c(0.0), c(0.0)]
        );
        let m = pauli(Axis::X) * 3.0 + pauli(Axis::Y) * 2.0;
        assert_eq!(decompose(&m), [c(0.0), c(3.0), c(2.0), c(0.0)]);
    }

    #[test]
    fn from_matrix_rejects_non_hermitian() {
        let anti = pauli(Axis::X) * I;
        assert!(LieElement::from_matrix(&anti, 1e-14).is_none());
        assert!(LieElement::from_matrix(&ComplexMatrix2::identity(), 1e-14).is_none());
        let h = LieElement::new(0.2, -0.4, 1.5);
        assert_eq!(LieElement::from_matrix(&h.to_matrix(), 1e-14), Some(h));
    }

    #[test]
    fn cross_matches_matrix_bracket() {
        let a = LieElement::new(0.3, -1.2, 0.7);
        let b = LieElement::new(-0.5, 0.4, 2.0);
        let m = commutator(&a.to_matrix(), &b.to_matrix());
        let expected = a.cross(&b).to_matrix() * Complex::new(0.0, 2.0);
        assert!(close(&m, &expected, 1e-14));
    }
}
