//! riex-core: differential-geometry toolkit built around metric extensions.
//!
//! The crate constructs the 2n-dimensional metric extension of an affine
//! connection, computes curvature with exact dual-number derivatives,
//! integrates geodesics with conserved-norm monitoring, and cross-checks the
//! closed-form anti-Mach geodesics and translation surfaces against the
//! numeric integrator.
//!
//! Everything numerical is generic over the scalar type ([`Scalar`]): the
//! same evaluators run on `f64`, `f32` or nested [`dual::Dual`] numbers,
//! which is how all derivatives in the crate are obtained.

// tensor contractions read clearest as explicit index loops
#![allow(clippy::needless_range_loop)]

pub mod antimach;
pub mod chart;
pub mod connection;
pub mod curvature;
pub mod dual;
pub mod error;
pub mod extension;
pub mod geodesic;
pub mod metric;
pub mod ode;
pub mod sampling;
pub mod scalar;
pub mod surfaces;
pub mod tensor;

pub use chart::ChartPoint;
pub use connection::{christoffel, ConnectionField, LeviCivita};
pub use curvature::{curvature_report, kretschmann, ricci_tensor, riemann_tensor, CurvatureReport};
pub use dual::Dual;
pub use error::{Error, Result};
pub use extension::{extend, extended_signature, Extension, ExtendedChart};
pub use geodesic::{
    conserved_norm, geodesic_rhs, integrate, integrate_at, GeodesicClass, GeodesicState,
    InitialData, Trajectory,
};
pub use metric::MetricField;
pub use scalar::Scalar;

/// Default real scalar for numeric work.
pub type Real = f64;

/// One derivative slot over [`Real`].
pub type Dual64 = Dual<f64>;

/// Two derivative slots (second derivatives / mixed partials).
pub type Dual2 = Dual<Dual<f64>>;

/// Single-precision variants.
pub type Dual32 = Dual<f32>;
