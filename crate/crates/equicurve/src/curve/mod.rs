//! Concrete hyperelliptic curves: models, places, divisors, function-field
//! arithmetic, automorphisms, and local expansions.

pub mod asred;
pub mod automorphism;
pub mod divisor;
pub mod expansion;
pub mod function;
pub mod model;
pub mod place;

pub use asred::XPoint;
pub use automorphism::{generate_group, verify_group, AutKind, CurveAutomorphism};
pub use divisor::Divisor;
pub use function::FunctionRep;
pub use model::{HyperellipticModel, InfinityKind, ModelForm};
pub use place::{parse_place_id, place_id, Place, PlaceKey};
