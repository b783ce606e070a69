//! Exact packing densities for two-gap integer sets.
//!
//! A set `S = {0, a, ..., ka, ka + b, ..., ka + mb}` packs on the line with
//! optimal density equal to the maximum density of sets avoiding its positive
//! difference set `M`. This crate evaluates the closed-form candidate for that
//! density ([`family`]), computes the true value exactly for small `M`
//! ([`oracle`]), and checks the combinatorial upper-bound argument window by
//! window ([`profile`], [`machinery`]).

pub mod error;
pub mod exec;
pub mod family;
pub mod machinery;
pub mod oracle;
pub mod profile;
pub mod rational;
pub mod window;

pub use error::{Error, Result};
pub use exec::Exec;
pub use family::{
    build_m, build_s, canonicalize, conjectured_density, defect, density, difference_set_of, weak_assumption_holds,
    CanonicalParams, CaseTag, DensityBreakdown, DifferenceSet, RawParams, TheoremStatus,
};
pub use oracle::{check_periodic_avoiding, mu_exact, ExactDensity, Limits, Method, PeriodicSet};
pub use rational::ExactRational;
pub use window::Window;
