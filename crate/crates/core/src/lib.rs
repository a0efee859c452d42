//! Exact plane-wave configurations of classical SU(2) Yang–Mills theory.
//!
//! The crate evaluates a five-amplitude ansatz for the gauge potentials, the
//! color-electric and color-magnetic fields it generates (in closed form and
//! by finite differences), the sourceless Gauss and Ampère residuals, the
//! nine algebraic constraints they reduce to, and the observables of the
//! three solution families.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod constraints;
pub mod diff;
pub mod error;
pub mod fields;
pub mod observables;
pub mod residuals;
pub mod su2;

pub use constraints::{
    build_family_i, build_family_ii, build_family_iii, classify, classify_with, nine_constraints,
    normalized_constraints, oracle_constraints, oracle_fit, refine, Classification,
    ClassifyOptions, ConstraintVector, Family, FamilySolution, OracleFit, RefineOptions,
    RefineOutcome, Sign, Violations,
};
pub use diff::Stencil;
pub use error::{Error, Result};
pub use fields::{
    electric_field_analytic, electric_field_numeric, field_strength, field_strength_analytic,
    field_strength_with, magnetic_field_analytic, magnetic_field_numeric, scalar_potential,
    vector_potential, AnsatzParams, ColorVector, Coord, FieldStrength, SpacetimePoint,
    DEFAULT_STEP,
};
pub use observables::{
    energy_closed_form, energy_density, node_locations, poynting, time_averaged_electric,
    EnergyProfile, DEFAULT_KAPPA,
};
pub use residuals::{
    ampere_residual, bianchi_residual, bianchi_residual_nested, gauss_residual,
    max_residual_on_grid, FieldRoute, Grid, Mode, ResidualSample, Samples,
};
pub use su2::{
    commutator, decompose, pauli, rotated_basis, trace_inner, Axis, ComplexMatrix2, LieElement,
    RotatedBasis,
};
