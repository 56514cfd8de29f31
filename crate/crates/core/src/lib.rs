//! Exact calculus of splitting types of vector bundles on rational curves,
//! checked against an independent linear-algebra oracle.
//!
//! `splitcalc` holds the closed-form rules (balance, cohomology, partition
//! modifications, kernels, extensions); `oracle` recomputes the same
//! quantities from explicit matrices over an exact field; `treebundle` runs
//! the comb smoothing reduction; `geometry` assembles the normal-bundle
//! pipelines for curves in projective space and on hypersurfaces; `interp`
//! does the interpolation numerology; `verify` sweeps the closed forms
//! against the oracle.

pub mod error;
pub mod geometry;
pub mod interp;
pub mod oracle;
pub mod splitcalc;
pub mod treebundle;
pub mod verify;
