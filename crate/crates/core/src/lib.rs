//! Metric geometry of the stability space of the projective line.
//!
//! The crate is organized around three coordinate forms for a stability
//! point ([`StabPoint`]), mass and phase data of the indecomposable sheaf
//! classes ([`mass_phase`]), closed-form evaluation of the natural metric and
//! its quotient ([`distance`], [`quotient_distance`]), hyperbolic geometry of
//! the projected closure ([`halfplane`]), and path diagnostics used to probe
//! geodesics ([`paths`]).

// Negated float comparisons (`!(x > 0.0)`) fail closed on NaN where the
// suggested rewrites would not; the `== 1.0` match guard avoids the
// deprecated float literal pattern.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::redundant_guards)]

pub mod coords;
pub mod error;
pub mod halfplane;
pub mod metric;
pub mod paths;
pub mod sheaf;

pub use coords::{ChartPoint, QuotientPoint, StabPoint};
pub use error::{Error, Result};
pub use halfplane::{HPoint, LatticeImageExtrema, MoebiusMap};
pub use metric::{
    boundary_infimum, brute_force_distance, distance, quotient_boundary_infimum,
    quotient_distance, BoundarySearch, DistanceBreakdown, LatticeExtrema, Witness,
};
pub use paths::{
    additivity_check, bent_geodesic, boundary_crossings, composite_path, dz_geodesic_point,
    path_length, reparametrize_arclength, sample_hyperbolic_geodesic, straight_chamber_path,
    GeodesicReport, MetricKind, PathPoint, Polyline,
};
pub use sheaf::{central_charge, mass_phase, MassPhase, SheafClass};

pub type Complex = num_complex::Complex64;
