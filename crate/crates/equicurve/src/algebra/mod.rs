//! Exact arithmetic foundation: finite fields, polynomials, rational
//! functions, truncated power series, and dense linear algebra.

pub mod field;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod series;

pub use field::{canonical_modulus, max_q, Field, FieldElement, FieldSpec, DEFAULT_MAX_Q};
pub use linalg::Matrix;
pub use poly::{distinct_degree_factor, roots, splitting_degree, Polynomial};
pub use ratfun::RatFun;
pub use series::{series_artin_schreier_root, series_sqrt, Laurent, PowerSeries};
