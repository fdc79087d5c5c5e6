//! Difference algebraic subgroups of the additive group, roots of unity
//! and their semidirect products.

pub mod ga;
pub mod mup;
pub mod recurrence;
pub mod skew;

pub use ga::{classify_gagm, ga_membership, realize_ga_subgroup, GaGmCase, GaSubgroup, Realization};
pub use mup::{mup_period, MupRelation};
pub use recurrence::recurrence_rational_solutions;
pub use skew::{skew_left_lcm, skew_right_gcd, SkewPoly};
