//! Truncated Taylor machinery: jets, univariate and bivariate series.

pub mod algebra;
pub mod biseries;
pub mod jet;
pub mod ode;
pub mod useries;

pub use algebra::{real_pow, taylor_coeffs, Algebra, Elementary};
pub use biseries::BiSeries;
pub use jet::Jet;
pub use ode::{mat_map, mat_mul, mat_sub, mat_transpose, solve_ode_series, Mat3};
pub use useries::USeries;
