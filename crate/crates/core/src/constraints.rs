//! The nine master constraints, the three solution families, classification
//! and a brute-force oracle that recovers the constraints from sampled
//! residuals.
//!
//! With `X = λ + 2gα₃` and `W = ω/c` the constraints read
//!
//! ```text
//! c1 = α₁X² + 2gα₄(2gα₁α₄ − Wα₅)
//! c2 = X(4gα₁α₅ − Wα₄)
//! c3 = 4g²α₁(α₄² − α₅²)
//! c4 = 2g(α₂² − α₁²)X
//! c5 = α₅(k² − W² − 4g²(α₁² − α₂²)) + 4gα₄(Wα₁ − kα₂)
//! c6 = α₄(k² − W² − 4g²(α₁² − α₂²)) + 4gα₅(Wα₁ − kα₂)
//! c7 = α₂X² + 2gα₄(2gα₂α₄ − kα₅)
//! c8 = X(4gα₂α₅ − kα₄)
//! c9 = 4g²α₂(α₅² − α₄²)
//! ```
//!
//! The ansatz solves the sourceless Yang–Mills equations for all `(t, y, z)`
//! iff all nine vanish (for `k, ω` not both zero).

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Index, Mul};

use libm::{cos, sqrt};
use nalgebra::{SMatrix, SVector};

use crate::error::{check_step, check_tol, Error, Result};
use crate::fields::{field_coefficient_scales, field_coefficients, AnsatzParams};
use crate::residuals::{ampere_residual, gauss_residual, Mode};
use crate::su2::rotated_basis;

/// Default tolerance on scale-normalized constraint magnitudes.
pub const DEFAULT_CONSTRAINT_TOL: f64 = 1e-9;
/// Default parameter-space distance for matching a family pattern.
pub const DEFAULT_PATTERN_TOL: f64 = 1e-6;

/// The nine constraint values, `c1..c9` stored at indices `0..9`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintVector(pub [f64; 9]);

impl ConstraintVector {
    pub fn values(&self) -> [f64; 9] {
        self.0
    }

    /// `c_n` with 1-based `n`, matching the printed numbering.
    pub fn get(&self, n: usize) -> f64 {
        self.0[n - 1]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.0.iter().map(|v| v * v).sum())
    }

    pub fn violations(&self, tol: f64) -> Violations {
        let mut bits = 0u16;
        for (i, v) in self.0.iter().enumerate() {
            if v.is_nan() || v.abs() >= tol {
                bits |= 1 << i;
            }
        }
        Violations(bits)
    }
}

impl Index<usize> for ConstraintVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Set of violated constraint indices (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Violations(u16);

impl Violations {
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, n: usize) -> bool {
        (1..=9).contains(&n) && self.0 & (1 << (n - 1)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=9).filter(move |&n| self.contains(n))
    }
}

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "c{n}")?;
            first = false;
        }
        Ok(())
    }
}

/// The nine constraints exactly as printed (factored form).
pub fn nine_constraints(p: &AnsatzParams) -> ConstraintVector {
    let (a1, a2, a3, a4, a5) = (p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5);
    let (g, lam, k, w) = (p.g, p.lambda, p.k, p.omega_over_c());
    let x = lam + 2.0 * g * a3;
    let disp = k * k - w * w - 4.0 * g * g * (a1 * a1 - a2 * a2);
    ConstraintVector([
        a1 * x * x + 2.0 * g * a4 * (2.0 * g * a1 * a4 - w * a5),
        x * (4.0 * g * a1 * a5 - w * a4),
        4.0 * g * g * a1 * (a4 * a4 - a5 * a5),
        2.0 * g * ((a2 * a2 - a1 * a1) * x),
        a5 * disp + 4.0 * g * a4 * (w * a1 - k * a2),
        a4 * disp + 4.0 * g * a5 * (w * a1 - k * a2),
        a2 * x * x + 2.0 * g * a4 * (2.0 * g * a2 * a4 - k * a5),
        x * (4.0 * g * a2 * a5 - k * a4),
        4.0 * g * g * a2 * (a5 * a5 - a4 * a4),
    ])
}

/// Fully expanded monomials of each constraint (zero-padded).
fn monomials(p: &AnsatzParams) -> [[f64; 8]; 9] {
    let (a1, a2, a3, a4, a5) = (p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5);
    let (g, l, k, w) = (p.g, p.lambda, p.k, p.omega_over_c());
    let g2 = g * g;
    [
        [
            a1 * l * l,
            4.0 * g * a1 * l * a3,
            4.0 * g2 * a1 * a3 * a3,
            4.0 * g2 * a1 * a4 * a4,
            -2.0 * g * w * a4 * a5,
            0.0,
            0.0,
            0.0,
        ],
        [
            4.0 * g * l * a1 * a5,
            -l * w * a4,
            8.0 * g2 * a1 * a3 * a5,
            -2.0 * g * w * a3 * a4,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        [
            4.0 * g2 * a1 * a4 * a4,
            -4.0 * g2 * a1 * a5 * a5,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        [
            2.0 * g * l * a2 * a2,
            -2.0 * g * l * a1 * a1,
            4.0 * g2 * a2 * a2 * a3,
            -4.0 * g2 * a1 * a1 * a3,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        [
            a5 * k * k,
            -a5 * w * w,
            -4.0 * g2 * a1 * a1 * a5,
            4.0 * g2 * a2 * a2 * a5,
            4.0 * g * w * a1 * a4,
            -4.0 * g * k * a2 * a4,
            0.0,
            0.0,
        ],
        [
            a4 * k * k,
            -a4 * w * w,
            -4.0 * g2 * a1 * a1 * a4,
            4.0 * g2 * a2 * a2 * a4,
            4.0 * g * w * a1 * a5,
            -4.0 * g * k * a2 * a5,
            0.0,
            0.0,
        ],
        [
            a2 * l * l,
            4.0 * g * a2 * l * a3,
            4.0 * g2 * a2 * a3 * a3,
            4.0 * g2 * a2 * a4 * a4,
            -2.0 * g * k * a4 * a5,
            0.0,
            0.0,
            0.0,
        ],
        [
            4.0 * g * l * a2 * a5,
            -l * k * a4,
            8.0 * g2 * a2 * a3 * a5,
            -2.0 * g * k * a3 * a4,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        [
            4.0 * g2 * a2 * a5 * a5,
            -4.0 * g2 * a2 * a4 * a4,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
    ]
}

/// The constraints evaluated from their expanded monomials.
pub fn expanded_constraints(p: &AnsatzParams) -> ConstraintVector {
    ConstraintVector(monomials(p).map(|m| m.iter().sum()))
}

/// Largest monomial magnitude per constraint.
pub fn constraint_scales(p: &AnsatzParams) -> [f64; 9] {
    monomials(p).map(|m| m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())))
}

/// `c_i / max(1, largest monomial of c_i)`.
pub fn normalized_constraints(p: &AnsatzParams) -> ConstraintVector {
    let raw = nine_constraints(p);
    let scales = constraint_scales(p);
    let mut out = [0.0; 9];
    for i in 0..9 {
        out[i] = raw.0[i] / scales[i].max(1.0);
    }
    ConstraintVector(out)
}

/// Solution family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    I,
    II,
    III,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
        })
    }
}

/// Discrete sign parameter (`η`, `ξ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Result<Self> {
        if v == 1.0 {
            Ok(Sign::Plus)
        } else if v == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::InvalidSign(v))
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A member of one of the three families, described by its free parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySolution {
    /// Family I: Abelian wave embedded in SU(2), `ω = kc`.
    Linear {
        k: f64,
        alpha4: f64,
        lambda: f64,
        g: f64,
        c: f64,
    },
    /// Family II: self-interacting wave with constant offset, `ω = kc`.
    SelfInteracting {
        k: f64,
        alpha4: f64,
        lambda: f64,
        g: f64,
        eta: Sign,
        xi: Sign,
        c: f64,
    },
    /// Family III: pure gauge, any `k` and `ω`.
    PureGauge {
        k: f64,
        omega: f64,
        alpha4: f64,
        lambda: f64,
        g: f64,
        eta: Sign,
        c: f64,
    },
}

fn check_common(g: f64, c: f64, rest: &[f64]) -> Result<()> {
    if !g.is_finite() || !c.is_finite() || rest.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if g == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    Ok(())
}

impl FamilySolution {
    pub fn linear(k: f64, alpha4: f64, lambda: f64, g: f64, c: f64) -> Result<Self> {
        check_common(g, c, &[k, alpha4, lambda])?;
        if k == 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        Ok(Self::Linear {
            k,
            alpha4,
            lambda,
            g,
            c,
        })
    }

    pub fn self_interacting(
        k: f64,
        alpha4: f64,
        lambda: f64,
        g: f64,
        eta: Sign,
        xi: Sign,
        c: f64,
    ) -> Result<Self> {
        check_common(g, c, &[k, alpha4, lambda])?;
        if k == 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        if alpha4 == 0.0 {
            return Err(Error::ZeroAmplitude);
        }
        Ok(Self::SelfInteracting {
            k,
            alpha4,
            lambda,
            g,
            eta,
            xi,
            c,
        })
    }

    pub fn pure_gauge(
        k: f64,
        omega: f64,
        alpha4: f64,
        lambda: f64,
        g: f64,
        eta: Sign,
        c: f64,
    ) -> Result<Self> {
        check_common(g, c, &[k, omega, alpha4, lambda])?;
        Ok(Self::PureGauge {
            k,
            omega,
            alpha4,
            lambda,
            g,
            eta,
            c,
        })
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Linear { .. } => Family::I,
            Self::SelfInteracting { .. } => Family::II,
            Self::PureGauge { .. } => Family::III,
        }
    }

    pub fn k(&self) -> f64 {
        match *self {
            Self::Linear { k, .. }
            | Self::SelfInteracting { k, .. }
            | Self::PureGauge { k, .. } => k,
        }
    }

    pub fn alpha4(&self) -> f64 {
        match *self {
            Self::Linear { alpha4, .. }
            | Self::SelfInteracting { alpha4, .. }
            | Self::PureGauge { alpha4, .. } => alpha4,
        }
    }

    /// `ω`; Families I and II carry the dispersion relation `ω = kc`.
    pub fn omega(&self) -> f64 {
        match *self {
            Self::Linear { k, c, .. } | Self::SelfInteracting { k, c, .. } => k * c,
            Self::PureGauge { omega, .. } => omega,
        }
    }

    pub fn eta(&self) -> Option<Sign> {
        match *self {
            Self::Linear { .. } => None,
            Self::SelfInteracting { eta, .. } | Self::PureGauge { eta, .. } => Some(eta),
        }
    }

    pub fn xi(&self) -> Option<Sign> {
        match *self {
            Self::SelfInteracting { xi, .. } => Some(xi),
            _ => None,
        }
    }

    /// The full parameter tuple of this family member.
    pub fn params(&self) -> AnsatzParams {
        match *self {
            Self::Linear {
                k,
                alpha4,
                lambda,
                g,
                c,
            } => AnsatzParams {
                alpha1: 0.0,
                alpha2: 0.0,
                alpha3: -lambda / (2.0 * g),
                alpha4,
                alpha5: 0.0,
                lambda,
                k,
                omega: k * c,
                g,
                c,
            },
            Self::SelfInteracting {
                k,
                alpha4,
                lambda,
                g,
                eta,
                xi,
                c,
            } => {
                let a12 = eta.value() * k / (4.0 * g);
                AnsatzParams {
                    alpha1: a12,
                    alpha2: a12,
                    alpha3: xi.value() * alpha4 - lambda / (2.0 * g),
                    alpha4,
                    alpha5: eta.value() * alpha4,
                    lambda,
                    k,
                    omega: k * c,
                    g,
                    c,
                }
            }
            Self::PureGauge {
                k,
                omega,
                alpha4,
                lambda,
                g,
                eta,
                c,
            } => AnsatzParams {
                alpha1: eta.value() * omega / (2.0 * g * c),
                alpha2: eta.value() * k / (2.0 * g),
                alpha3: -lambda / (2.0 * g),
                alpha4,
                alpha5: eta.value() * alpha4,
                lambda,
                k,
                omega,
                g,
                c,
            },
        }
    }
}

/// Family I: `α₁ = α₂ = α₅ = 0`, `α₃ = −λ/(2g)`, `ω = kc`.
pub fn build_family_i(k: f64, alpha4: f64, lambda: f64, g: f64, c: f64) -> Result<AnsatzParams> {
    Ok(FamilySolution::linear(k, alpha4, lambda, g, c)?.params())
}

/// Family II: `α₁ = α₂ = ηk/(4g)`, `α₃ = ξα₄ − λ/(2g)`, `α₅ = ηα₄`, `ω = kc`.
pub fn build_family_ii(
    k: f64,
    alpha4: f64,
    lambda: f64,
    g: f64,
    eta: Sign,
    xi: Sign,
    c: f64,
) -> Result<AnsatzParams> {
    Ok(FamilySolution::self_interacting(k, alpha4, lambda, g, eta, xi, c)?.params())
}

/// Family III: `α₁ = ηω/(2gc)`, `α₂ = ηk/(2g)`, `α₃ = −λ/(2g)`, `α₅ = ηα₄`.
pub fn build_family_iii(
    k: f64,
    omega: f64,
    alpha4: f64,
    lambda: f64,
    g: f64,
    eta: Sign,
    c: f64,
) -> Result<AnsatzParams> {
    Ok(FamilySolution::pure_gauge(k, omega, alpha4, lambda, g, eta, c)?.params())
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Nearest member of `family` sharing `p`'s `(λ, k, g, c)` (and `ω` for
/// Family III), with its Euclidean distance over `(α₁..α₅, ω/c)`.
/// `None` when `g = 0` or the family needs `k ≠ 0` and `k = 0`.
pub fn nearest_in_family(p: &AnsatzParams, family: Family) -> Option<(FamilySolution, f64)> {
    if p.g == 0.0 || !p.is_finite() {
        return None;
    }
    let here = [
        p.alpha1,
        p.alpha2,
        p.alpha3,
        p.alpha4,
        p.alpha5,
        p.omega_over_c(),
    ];
    let offset = p.lambda / (2.0 * p.g);
    let score = |sol: FamilySolution| {
        let q = sol.params();
        let there = [
            q.alpha1,
            q.alpha2,
            q.alpha3,
            q.alpha4,
            q.alpha5,
            q.omega_over_c(),
        ];
        (sol, dist(&here, &there))
    };
    let best = |cands: &mut dyn Iterator<Item = (FamilySolution, f64)>| {
        cands.fold(None, |acc: Option<(FamilySolution, f64)>, cur| match acc {
            Some(a) if a.1 <= cur.1 => Some(a),
            _ => Some(cur),
        })
    };
    match family {
        Family::I => FamilySolution::linear(p.k, p.alpha4, p.lambda, p.g, p.c)
            .ok()
            .map(score),
        Family::II => {
            let mut it = Sign::BOTH.into_iter().flat_map(|eta| {
                Sign::BOTH.into_iter().filter_map(move |xi| {
                    let a4 = (p.alpha4 + xi.value() * (p.alpha3 + offset) + eta.value() * p.alpha5)
                        / 3.0;
                    FamilySolution::self_interacting(p.k, a4, p.lambda, p.g, eta, xi, p.c).ok()
                })
            });
            best(&mut it.by_ref().map(score))
        }
        Family::III => {
            let mut it = Sign::BOTH.into_iter().filter_map(|eta| {
                let a4 = (p.alpha4 + eta.value() * p.alpha5) / 2.0;
                FamilySolution::pure_gauge(p.k, p.omega, a4, p.lambda, p.g, eta, p.c).ok()
            });
            best(&mut it.by_ref().map(score))
        }
    }
}

/// Distance to the nearest zero-field configuration outside Family III:
/// either `α₄ = α₅ = 0, α₃ = −λ/(2g)` (any `α₁, α₂`) or
/// `α₁ = α₂ = α₄ = α₅ = 0` (any `α₃`). Infinite for `g = 0`.
pub fn trivial_branch_distance(p: &AnsatzParams) -> f64 {
    if p.g == 0.0 {
        return f64::INFINITY;
    }
    let shifted = p.alpha3 + p.lambda / (2.0 * p.g);
    let gauge_offset = sqrt(p.alpha4 * p.alpha4 + p.alpha5 * p.alpha5 + shifted * shifted);
    let constant =
        sqrt(p.alpha1 * p.alpha1 + p.alpha2 * p.alpha2 + p.alpha4 * p.alpha4 + p.alpha5 * p.alpha5);
    gauge_offset.min(constant)
}

/// Label of the nearest solution pattern: a family, or the zero-field
/// trivial branch (`None`).
pub type PatternLabel = Option<Family>;

/// The nearest family pattern or trivial-branch configuration and its
/// parameter-space distance.
pub fn nearest_pattern(p: &AnsatzParams) -> (PatternLabel, f64) {
    let mut best: (PatternLabel, f64) = (None, trivial_branch_distance(p));
    for family in [Family::III, Family::II, Family::I] {
        if let Some((_, d)) = nearest_in_family(p, family) {
            if d < best.1 {
                best = (Some(family), d);
            }
        }
    }
    best
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classification {
    Solution(FamilySolution),
    /// A solution whose field strength vanishes identically (or lies within
    /// the pattern tolerance of such a configuration) but which is not a
    /// Family III member: vacuum, the `k = ω = 0` branch, constant gauges.
    TrivialZeroField,
    /// At least one constraint exceeds the tolerance.
    NotASolution(Violations),
    /// All constraints hold and the fields are non-zero, yet no family
    /// pattern is within the pattern tolerance.
    UnmatchedSolution,
}

impl Classification {
    pub fn is_solution(&self) -> bool {
        !matches!(self, Classification::NotASolution(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Solution(s) => match s.family() {
                Family::I => "I",
                Family::II => "II",
                Family::III => "III",
            },
            Classification::TrivialZeroField => "trivial",
            Classification::NotASolution(_) => "not-a-solution",
            Classification::UnmatchedSolution => "unmatched",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Threshold on scale-normalized constraint and field-coefficient magnitudes.
    pub constraint_tol: f64,
    /// Threshold on parameter distance to a family pattern.
    pub pattern_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            constraint_tol: DEFAULT_CONSTRAINT_TOL,
            pattern_tol: DEFAULT_PATTERN_TOL,
        }
    }
}

/// Whether the closed-form E and B vanish identically (scale-normalized).
pub fn fields_vanish(p: &AnsatzParams, tol: f64) -> bool {
    let coeffs = field_coefficients(p).as_array();
    let scales = field_coefficient_scales(p);
    coeffs
        .iter()
        .zip(scales.iter())
        .all(|(c, s)| (c / s.max(1.0)).abs() < tol)
}

pub fn classify(p: &AnsatzParams, tol: f64) -> Result<Classification> {
    classify_with(
        p,
        &ClassifyOptions {
            constraint_tol: tol,
            ..Default::default()
        },
    )
}

pub fn classify_with(p: &AnsatzParams, opts: &ClassifyOptions) -> Result<Classification> {
    check_tol(opts.constraint_tol)?;
    check_tol(opts.pattern_tol)?;
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let tol = opts.constraint_tol;
    let violations = normalized_constraints(p).violations(tol);
    let matches = |family| {
        nearest_in_family(p, family)
            .filter(|(_, d)| *d <= opts.pattern_tol)
            .map(|(s, _)| s)
    };

    if p.k == 0.0 && p.omega == 0.0 {
        // θ ≡ 0: only cosθ = 1, sinθ = 0 matters. Residuals are
        // α₁X'², (α₁² − α₂²)X', α₂X'² with X' = λ + 2g(α₃ + α₅); all vanish
        // iff the fields α₁X' and α₂X' do.
        let xp = p.lambda + 2.0 * p.g * (p.alpha3 + p.alpha5);
        let scale = p
            .lambda
            .abs()
            .max((2.0 * p.g * p.alpha3).abs())
            .max((2.0 * p.g * p.alpha5).abs())
            .max(1.0);
        let e = (p.alpha1 * xp / scale).abs();
        let b = (p.alpha2 * xp / scale).abs();
        if e >= tol || b >= tol {
            return Ok(Classification::NotASolution(violations));
        }
        if (xp / scale).abs() < tol {
            return Ok(Classification::TrivialZeroField);
        }
        return Ok(match matches(Family::III) {
            Some(s) => Classification::Solution(s),
            None => Classification::TrivialZeroField,
        });
    }

    if !violations.is_empty() {
        return Ok(Classification::NotASolution(violations));
    }
    if fields_vanish(p, tol) || trivial_branch_distance(p) <= opts.pattern_tol {
        return Ok(match matches(Family::III) {
            Some(s) if s.alpha4().abs() > opts.pattern_tol => Classification::Solution(s),
            _ => Classification::TrivialZeroField,
        });
    }
    if p.alpha1.abs() > opts.pattern_tol {
        if let Some(s) = matches(Family::II) {
            return Ok(Classification::Solution(s));
        }
    }
    if let Some(s) = matches(Family::I) {
        return Ok(Classification::Solution(s));
    }
    Ok(Classification::UnmatchedSolution)
}

/// Number of phase samples used by the oracle.
pub const ORACLE_THETA_SAMPLES: usize = 8;
/// y values sampled by the oracle.
pub const ORACLE_Y_SAMPLES: [f64; 3] = [0.0, 0.45, 1.3];
const ORACLE_ROWS: usize = ORACLE_THETA_SAMPLES * 3;

/// Least-squares harmonic fit of sampled numeric residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleFit {
    /// The nine coefficient functionals read off the fit.
    pub constraints: ConstraintVector,
    /// `coefficients[component][color][harmonic]`; components are
    /// (Gauss, Ampère x, Ampère y, Ampère z), colors (Σx, Σy, Σz),
    /// harmonics (1, cosθ, cos²θ, sinθ).
    pub coefficients: [[[f64; 4]; 3]; 4],
    /// Largest RMS misfit over all fitted series.
    pub fit_residual: f64,
    /// Largest coefficient outside the nine expected slots.
    pub off_pattern: f64,
}

/// Slots `(component, color, harmonic, sign)` holding c1..c9.
const ORACLE_SLOTS: [(usize, usize, usize, f64); 9] = [
    (0, 0, 0, 1.0),
    (0, 0, 1, 1.0),
    (0, 0, 2, -1.0),
    (2, 2, 0, 1.0),
    (2, 2, 1, 1.0),
    (2, 1, 3, 1.0),
    (3, 0, 0, 1.0),
    (3, 0, 1, 1.0),
    (3, 0, 2, 1.0),
];

/// Recover the nine constraints from numeric residuals sampled over a
/// θ × y grid by least-squares projection onto `{1, cosθ, cos²θ, sinθ}` and
/// the rotated color basis.
pub fn oracle_fit(p: &AnsatzParams, h: f64) -> Result<OracleFit> {
    check_step(h)?;
    let mut design = SMatrix::<f64, ORACLE_ROWS, 4>::zeros();
    let mut rhs = SMatrix::<f64, ORACLE_ROWS, 12>::zeros();
    for (iy, &y) in ORACLE_Y_SAMPLES.iter().enumerate() {
        let basis = rotated_basis(p.lambda, y);
        for j in 0..ORACLE_THETA_SAMPLES {
            let theta = 2.0 * PI * (j as f64) / (ORACLE_THETA_SAMPLES as f64);
            let s = p.point_at_phase(theta, y).ok_or(Error::DegenerateGrid)?;
            // use the phase actually realized at the sample point
            let th = p.phase(&s);
            let (ct, st) = (cos(th), libm::sin(th));
            let row = iy * ORACLE_THETA_SAMPLES + j;
            design[(row, 0)] = 1.0;
            design[(row, 1)] = ct;
            design[(row, 2)] = ct * ct;
            design[(row, 3)] = st;

            let mode = Mode::Numeric { h };
            let gauss = gauss_residual(p, &s, mode)?;
            let amp = ampere_residual(p, &s, mode)?;
            let comps = [gauss, amp.x, amp.y, amp.z];
            for (ci, v) in comps.iter().enumerate() {
                let proj = basis.components(v);
                for (col, val) in proj.iter().enumerate() {
                    rhs[(row, ci * 3 + col)] = *val;
                }
            }
        }
    }
    let normal = design.transpose() * design;
    let chol = normal.cholesky().ok_or(Error::DegenerateGrid)?;
    let coef = chol.solve(&(design.transpose() * rhs));
    let misfit = design * coef - rhs;

    let mut coefficients = [[[0.0; 4]; 3]; 4];
    let mut fit_residual = 0.0_f64;
    for (ci, component) in coefficients.iter_mut().enumerate() {
        for (col, series) in component.iter_mut().enumerate() {
            let idx = ci * 3 + col;
            for (hi, v) in series.iter_mut().enumerate() {
                *v = coef[(hi, idx)];
            }
            let rms = sqrt(misfit.column(idx).norm_squared() / ORACLE_ROWS as f64);
            fit_residual = fit_residual.max(rms);
        }
    }
    let mut constraints = [0.0; 9];
    let mut used = [[[false; 4]; 3]; 4];
    for (n, &(ci, col, hi, sign)) in ORACLE_SLOTS.iter().enumerate() {
        constraints[n] = sign * coefficients[ci][col][hi];
        used[ci][col][hi] = true;
    }
    let mut off_pattern = 0.0_f64;
    for ci in 0..4 {
        for col in 0..3 {
            for hi in 0..4 {
                if !used[ci][col][hi] {
                    off_pattern = off_pattern.max(coefficients[ci][col][hi].abs());
                }
            }
        }
    }
    Ok(OracleFit {
        constraints: ConstraintVector(constraints),
        coefficients,
        fit_residual,
        off_pattern,
    })
}

pub fn oracle_constraints(p: &AnsatzParams, h: f64) -> Result<ConstraintVector> {
    Ok(oracle_fit(p, h)?.constraints)
}

/// Settings for [`refine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOptions {
    pub max_iterations: usize,
    /// Stop once the largest raw constraint falls below this.
    pub target: f64,
    /// A root counts as converged below this.
    pub accept: f64,
    /// Relative step of the differenced Jacobian.
    pub jacobian_step: f64,
    /// Seeds whose amplitudes leave this box are treated as divergent.
    pub divergence_bound: f64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            target: 1e-20,
            accept: 1e-10,
            jacobian_step: 1e-7,
            divergence_bound: 1e6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOutcome {
    pub params: AnsatzParams,
    pub max_constraint: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn residual_vec(p: &AnsatzParams) -> SVector<f64, 9> {
    SVector::from(nine_constraints(p).0)
}

/// Drive the nine constraints to zero over `(α₁..α₅)` with `(λ, k, ω, g, c)`
/// held fixed, using damped Gauss–Newton (Levenberg–Marquardt) steps and a
/// central-difference Jacobian.
pub fn refine(seed: &AnsatzParams, opts: &RefineOptions) -> RefineOutcome {
    let mut p = *seed;
    let mut f = residual_vec(&p);
    let mut cost = f.norm_squared();
    let mut mu = 1e-3;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        if f.amax() < opts.target || !cost.is_finite() {
            break;
        }
        iterations += 1;
        let alphas = p.alphas();
        let mut jac = SMatrix::<f64, 9, 5>::zeros();
        for j in 0..5 {
            let step = opts.jacobian_step * alphas[j].abs().max(1.0);
            let mut up = alphas;
            let mut dn = alphas;
            up[j] += step;
            dn[j] -= step;
            let col = (residual_vec(&p.with_alphas(up)) - residual_vec(&p.with_alphas(dn)))
                / (2.0 * step);
            jac.set_column(j, &col);
        }
        let jtj = jac.transpose() * jac;
        let grad = jac.transpose() * f;
        let mut accepted = false;
        for _ in 0..30 {
            let mut damped = jtj;
            for d in 0..5 {
                damped[(d, d)] += mu * (jtj[(d, d)] + 1e-12);
            }
            let Some(chol) = damped.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let delta = chol.solve(&(-grad));
            let mut next = alphas;
            for (j, v) in next.iter_mut().enumerate() {
                *v += delta[j];
            }
            let cand = p.with_alphas(next);
            let fc = residual_vec(&cand);
            let cc = fc.norm_squared();
            if cc.is_finite() && cc < cost {
                p = cand;
                f = fc;
                cost = cc;
                mu = (mu / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if !accepted || p.alphas().iter().any(|a| a.abs() > opts.divergence_bound) {
            break;
        }
    }
    let max_constraint = f.amax();
    let bounded = p.alphas().iter().all(|a| a.abs() <= opts.divergence_bound);
    RefineOutcome {
        params: p,
        max_constraint,
        iterations,
        converged: bounded && max_constraint < opts.accept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_i_builder_examples() {
        let p = build_family_i(1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(p.alpha3, 0.0);
        assert_eq!(field_coefficients(&p).e_cos, 1.0);
        let p = build_family_i(1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(p.alpha3, -1.0);
        assert!(nine_constraints(&p).max_abs() < 1e-14);
        assert_eq!(
            build_family_i(1.0, 1.0, 0.0, 0.0, 1.0),
            Err(Error::ZeroCoupling)
        );
        assert_eq!(
            build_family_i(0.0, 1.0, 0.0, 1.0, 1.0),
            Err(Error::ZeroWavenumber)
        );
    }

    #[test]
    fn family_ii_builder_examples() {
        let p = build_family_ii(4.0, 1.0, 0.0, 1.0, Sign::Plus, Sign::Plus, 1.0).unwrap();
        assert_eq!(
            (p.alpha1, p.alpha2, p.alpha3, p.alpha5, p.omega),
            (1.0, 1.0, 1.0, 1.0, 4.0)
        );
        let q = build_family_ii(4.0, 1.0, 0.0, 1.0, Sign::Plus, Sign::Minus, 1.0).unwrap();
        assert_eq!(q.alpha3, -1.0);
        // constant offset −(kα₄/2)ξη flips with ξ
        assert_eq!(field_coefficients(&p).e_const, -2.0);
        assert_eq!(field_coefficients(&q).e_const, 2.0);
        assert_eq!(
            build_family_ii(4.0, 0.0, 0.0, 1.0, Sign::Plus, Sign::Plus, 1.0),
            Err(Error::ZeroAmplitude)
        );
    }

    #[test]
    fn family_iii_builder_examples() {
        let p = build_family_iii(3.0, 5.0, 2.0, 1.0, 1.0, Sign::Plus, 1.0).unwrap();
        assert_eq!(
            (p.alpha1, p.alpha2, p.alpha3, p.alpha5),
            (2.5, 1.5, -0.5, 2.0)
        );
        assert!(field_coefficients(&p).as_array().iter().all(|c| *c == 0.0));
        let z = build_family_iii(0.0, 0.0, 1.3, 0.4, 0.7, Sign::Minus, 1.0).unwrap();
        assert!(field_coefficients(&z)
            .as_array()
            .iter()
            .all(|c| c.abs() < 1e-15));
        assert_eq!(
            build_family_iii(1.0, 1.0, 1.0, 0.0, 0.0, Sign::Plus, 1.0),
            Err(Error::ZeroCoupling)
        );
    }

    #[test]
    fn expanded_matches_factored() {
        let p = AnsatzParams {
            alpha1: 0.7,
            alpha2: -1.1,
            alpha3: 0.4,
            alpha4: 1.9,
            alpha5: -0.3,
            lambda: 0.8,
            k: -1.4,
            omega: 0.6,
            g: 1.3,
            c: 1.2,
        };
        let a = nine_constraints(&p);
        let b = expanded_constraints(&p);
        for i in 0..9 {
            assert!(
                (a[i] - b[i]).abs() < 1e-12 * constraint_scales(&p)[i].max(1.0),
                "c{}",
                i + 1
            );
        }
    }

    #[test]
    fn perturbed_family_ii_violates_first_constraint() {
        // c1 = α₁((X + 2gδ)² − X²) with X = 2gξα₄ after α₃ → α₃ + δ
        let (k, a4, g) = (1.0, 1.0, 1.0);
        let mut p = build_family_ii(k, a4, 0.3, g, Sign::Plus, Sign::Plus, 1.0).unwrap();
        let d = 1e-3;
        p.alpha3 += d;
        let x = 2.0 * g * a4;
        let expected = p.alpha1 * ((x + 2.0 * g * d).powi(2) - x * x);
        assert!((nine_constraints(&p).get(1) - expected).abs() < 1e-12);
        assert!(nine_constraints(&p).get(1).abs() > 1e-4);
    }

    #[test]
    fn violations_are_one_based() {
        let v = ConstraintVector([0.0, 1.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1e-3]).violations(1e-2);
        assert_eq!(v.iter().collect::<alloc::vec::Vec<_>>(), [2, 5]);
        assert_eq!(alloc::format!("{v}"), "c2,c5");
    }

    #[test]
    fn classify_vacuum_and_k_omega_zero() {
        let vac = AnsatzParams {
            lambda: 0.7,
            k: 1.0,
            omega: 1.0,
            ..Default::default()
        };
        assert_eq!(
            classify(&vac, 1e-9).unwrap(),
            Classification::TrivialZeroField
        );

        let p = AnsatzParams {
            alpha1: 0.4,
            alpha2: -0.2,
            alpha3: 0.1,
            alpha5: -0.45,
            lambda: 0.7,
            ..Default::default()
        };
        assert_eq!(
            classify(&p, 1e-9).unwrap(),
            Classification::TrivialZeroField
        );

        let q = AnsatzParams {
            alpha1: 0.4,
            alpha3: 0.1,
            lambda: 0.7,
            ..Default::default()
        };
        assert!(matches!(
            classify(&q, 1e-9).unwrap(),
            Classification::NotASolution(_)
        ));
        assert!(classify(&q, 0.0).is_err());
    }

    #[test]
    fn classify_round_trips_families() {
        let i = FamilySolution::linear(1.3, -0.8, 0.4, 0.9, 1.0).unwrap();
        let ii =
            FamilySolution::self_interacting(0.7, 1.2, -0.5, 1.4, Sign::Minus, Sign::Plus, 1.0)
                .unwrap();
        let iii = FamilySolution::pure_gauge(1.1, 2.2, 0.6, 0.3, -0.8, Sign::Minus, 1.0).unwrap();
        for sol in [i, ii, iii] {
            match classify(&sol.params(), 1e-9).unwrap() {
                Classification::Solution(found) => {
                    assert_eq!(found.family(), sol.family());
                    assert_eq!(found.eta(), sol.eta());
                    assert_eq!(found.xi(), sol.xi());
                    assert!((found.alpha4() - sol.alpha4()).abs() < 1e-12);
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn near_trivial_branch_is_trivial() {
        let p = AnsatzParams {
            alpha1: 0.32,
            alpha2: 0.32,
            alpha3: -4e-8,
            alpha4: 7e-8,
            alpha5: 6e-8,
            k: 1.0,
            omega: 1.0,
            ..Default::default()
        };
        assert!(trivial_branch_distance(&p) < 1e-6);
        assert_eq!(
            classify(&p, 1e-9).unwrap(),
            Classification::TrivialZeroField
        );
    }

    #[test]
    fn sigma_z_polarized_wave_is_unmatched() {
        // α₁ = α₂ = α₄ = 0, ω = kc, α₃ and α₅ free: all nine constraints vanish
        // and the fields do not, but no printed family pattern applies.
        let p = AnsatzParams {
            alpha3: 0.4,
            alpha5: 0.7,
            lambda: 0.3,
            k: 1.2,
            omega: 1.2,
            ..Default::default()
        };
        assert_eq!(nine_constraints(&p).max_abs(), 0.0);
        assert!(!fields_vanish(&p, 1e-9));
        assert_eq!(
            classify(&p, 1e-9).unwrap(),
            Classification::UnmatchedSolution
        );
    }

    #[test]
    fn oracle_rejects_constant_phase() {
        let p = AnsatzParams {
            alpha1: 1.0,
            ..Default::default()
        };
        assert_eq!(oracle_fit(&p, 1e-4), Err(Error::DegenerateGrid));
        assert!(oracle_fit(
            &AnsatzParams {
                k: 1.0,
                ..Default::default()
            },
            0.0
        )
        .is_err());
    }

    #[test]
    fn refine_reaches_a_root() {
        let seed = AnsatzParams {
            alpha1: 0.3,
            alpha2: 0.2,
            alpha3: -0.1,
            alpha4: 0.8,
            alpha5: 0.7,
            k: 1.0,
            omega: 1.0,
            ..Default::default()
        };
        let out = refine(&seed, &RefineOptions::default());
        assert!(out.converged, "{out:?}");
        assert!(nine_constraints(&out.params).max_abs() < 1e-10);
    }
}
