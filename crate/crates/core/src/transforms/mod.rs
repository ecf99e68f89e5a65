//! The Askey-Wimp-Kerov family μ_c (Jacobi data `α = 0`, `β_n = c+n`):
//! exact moments and free cumulants, Hankel-positivity tests, and numerical
//! checks of the Cauchy-transform equations.

pub mod analytic;
pub mod fid;
pub mod formal;
pub mod jacobi;
pub mod real;
pub mod trajectory;
pub mod voiculescu;

pub use analytic::{
    cf_eval, decomposition_residual, density_eval, f_eval, g_eval, residual_grid,
    riccati_residual, series_eval, Evaluation, Method, Precision,
};
pub use fid::{
    fid_test, free_cumulants_of_mu_c, hankel_sign, shifted_sequence_of_mu_c, FidReport, Verdict,
};
pub use formal::{formal_phi_ode_check, formal_phi_ode_check_seq, FormalCheck};
pub use jacobi::{jacobi_from_moments, moments_from_jacobi, mu_c_jacobi, JacobiParams};
pub use trajectory::{f_trajectory, Trajectory};
pub use voiculescu::{voiculescu_grid, voiculescu_phi, GridReport, VoiculescuValue};
