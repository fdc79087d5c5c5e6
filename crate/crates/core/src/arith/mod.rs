//! Exact arithmetic: rationals, polynomials, rational functions, linear algebra.

pub mod field;
pub mod linalg;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod roots;

pub use field::{q, qi, BaseField, Field, Q};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Rational functions in one parameter (`q`, `t` or `s`) over the rationals.
pub type QFn = RatFunc<Q>;

/// Rational functions in `x` over a base field.
pub type Rf<K> = RatFunc<K>;
