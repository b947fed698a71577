//! Mixed type surfaces in Lorentz-Minkowski 3-space.

pub mod curves;
pub mod error;
pub mod expr;
pub mod metric;
pub mod minkowski;
pub mod presets;
pub mod realization;
pub mod scalar;
pub mod series;
pub mod surface;

pub use error::{GeomError, Result};
pub use scalar::{lit, Ring, Scalar};

/// Double precision aliases.
pub type Vector = minkowski::MinkVector3<f64>;
pub type Matrix = minkowski::Matrix3<f64>;
pub type Series = series::USeries<f64>;
pub type Series2 = series::BiSeries<f64>;
pub type Metric = metric::MetricField<f64>;
pub type Surface = surface::SurfacePatch<f64>;
pub type Curve = curves::CurveModel<f64>;
pub type Invariants = curves::CurveInvariants<f64>;
pub type Problem = realization::RealizationProblem<f64>;
pub type Realized = realization::RealizedSurface<f64>;
