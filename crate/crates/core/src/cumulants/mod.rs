//! Moment–cumulant conversions for classical, free and boolean independence.
//!
//! Each conversion exists as a series recursion ([`series`]) and as a lattice sum
//! ([`lattice`]); the two are kept independent so each checks the other.

pub mod gaussian;
pub mod lattice;
pub mod series;
pub mod weighted;

pub use gaussian::{gaussian_free_cumulants, gaussian_moments, semicircle_free_cumulants, GaussianCumulants};
pub use lattice::{boolean_from_free, free_from_classical};
pub use series::{
    boolean_from_moments, classical_from_moments, free_from_moments, moments_from_boolean,
    moments_from_classical, moments_from_free,
};
pub use weighted::{
    boolean_convolve, dilate_free, dilate_free_variance, free_convolve, free_power, nc_innerpoint_sum,
    weighted_pairing_moment, WeightKind, WeightSpec,
};
