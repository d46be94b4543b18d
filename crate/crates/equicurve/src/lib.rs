//! Exact-arithmetic library for equivariant Riemann-Roch data on hyperelliptic
//! curves over finite fields: invariant dimensions, triviality and faithfulness
//! criteria for group actions on Riemann-Roch and polydifferential spaces,
//! explicit bases, Goppa codes with group actions, and equivariant deformation
//! dimensions. Every closed-form value is cross-validated against independent
//! brute-force linear algebra.

pub mod algebra;
pub mod check;
pub mod criteria;
pub mod curve;
pub mod deformation;
pub mod differentials;
pub mod error;
pub mod goppa;
pub(crate) mod par;
pub mod ramification;
pub mod rrspace;

pub use error::{Error, Result};
