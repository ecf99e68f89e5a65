//! Exact cumulant calculus for free, boolean and classical independence, the
//! tree/Dyck-path structures around the Gaussian free cumulants, and numerical
//! and exact tests of free infinite divisibility for the Askey-Wimp-Kerov family.

pub mod chains;
pub mod checks;
pub mod cumulants;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod partitions;
pub mod rational;
pub mod transforms;
pub mod trees_dyck;

pub use error::{Error, Result};
