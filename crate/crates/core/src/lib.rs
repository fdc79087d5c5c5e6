//! Exact algorithms for linear differential equations under a difference
//! operator: dependence criteria with certificates, integrability testing
//! of differential systems, and difference group algebra.

pub mod arith;
pub mod context;
pub mod criteria;
pub mod diffgroups;
pub mod error;
pub mod integrability;
pub mod ode;
pub mod reduction;

pub use arith::{q, qi, BaseField, Field, Poly, QFn, RatFunc, Q};
pub use context::{ContextCase, DeltaSigmaContext, Derivation, QMode};
pub use error::{Error, Result};
