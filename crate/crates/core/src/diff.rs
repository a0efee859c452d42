//! Central finite differences over spacetime coordinates.

use core::ops::{Add, Mul, Sub};

use crate::fields::{Coord, SpacetimePoint};

/// Finite-difference stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Three-point central difference, truncation `O(h²)`.
    #[default]
    Central2,
    /// Five-point central difference, truncation `O(h⁴)`.
    Central4,
}

/// Partial derivative of `f` along `coord` at `s` (with respect to the raw
/// coordinate; no `1/c` factor for time).
pub fn partial<T, F>(f: F, s: &SpacetimePoint, coord: Coord, h: f64, stencil: Stencil) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
    F: Fn(&SpacetimePoint) -> T,
{
    match stencil {
        Stencil::Central2 => {
            let fp = f(&s.shifted(coord, h));
            let fm = f(&s.shifted(coord, -h));
            (fp - fm) * (0.5 / h)
        }
        Stencil::Central4 => {
            let fp1 = f(&s.shifted(coord, h));
            let fm1 = f(&s.shifted(coord, -h));
            let fp2 = f(&s.shifted(coord, 2.0 * h));
            let fm2 = f(&s.shifted(coord, -2.0 * h));
            ((fp1 - fm1) * 8.0 - (fp2 - fm2)) * (1.0 / (12.0 * h))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{cos, sin};

    #[test]
    fn orders_of_accuracy() {
        let s = SpacetimePoint::new(0.3, -0.2, 0.9, 1.4);
        let exact = cos(0.9);
        let f = |q: &SpacetimePoint| sin(q.y);
        let e2 = |h| (partial(f, &s, Coord::Y, h, Stencil::Central2) - exact).abs();
        let e4 = |h| (partial(f, &s, Coord::Y, h, Stencil::Central4) - exact).abs();
        let r2 = e2(1e-2) / e2(5e-3);
        let r4 = e4(4e-2) / e4(2e-2);
        assert!((r2 - 4.0).abs() < 0.05, "ratio {r2}");
        assert!((r4 - 16.0).abs() < 0.5, "ratio {r4}");
    }

    #[test]
    fn constant_direction_is_exactly_zero() {
        let s = SpacetimePoint::new(1.0, 2.0, 3.0, 4.0);
        let f = |q: &SpacetimePoint| q.y * q.z;
        assert_eq!(partial(f, &s, Coord::X, 1e-4, Stencil::Central2), 0.0);
        assert_eq!(partial(f, &s, Coord::T, 1e-4, Stencil::Central4), 0.0);
    }
}
