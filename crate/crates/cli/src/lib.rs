//! Reproducible verification runs over the stability-space metric library.
//!
//! Each entry point in [`verify`] bundles a family of numerical checks into a
//! [`report::Report`]: the not-a-length-space counterexample, its quotient
//! counterpart, the two competing charge-ratio geodesics, the length-metric
//! bound, and a randomized sweep over every library invariant. The binary in
//! `main.rs` is a thin argument layer over these functions.

pub mod report;
pub mod sample;
pub mod verify;
