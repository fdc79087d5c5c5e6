//! Canonical text for values; every printed form parses back to the same
//! value under the same environment.

use deltasigma::diffgroups::SkewPoly;
use deltasigma::ode::LinDiffOp;
use deltasigma::{BaseField, Field, Poly, RatFunc};

use crate::eval::Env;

pub fn print_ratfunc<K: BaseField>(f: &RatFunc<K>, env: &Env<K>) -> String {
    f.render(&env.vars())
}

/// Descending powers of `D` with coefficients in `K(x)`.
pub fn print_operator<K: BaseField>(op: &LinDiffOp<K>, env: &Env<K>) -> String {
    let mut vars = vec!["D"];
    vars.extend(env.vars());
    Poly::new(op.coeffs().to_vec()).render(&vars)
}

/// Descending powers of `S` with coefficients in `K`.
pub fn print_skew<K: BaseField>(p: &SkewPoly<K>, env: &Env<K>) -> String {
    let mut vars = vec!["S"];
    vars.extend(env.vars().into_iter().skip(1));
    Poly::new(p.coeffs().to_vec()).render(&vars)
}

pub fn print_scalar<K: BaseField>(c: &K, env: &Env<K>) -> String {
    c.render(&env.vars()[1..])
}

pub fn print_poly<K: BaseField>(p: &Poly<K>, env: &Env<K>) -> String {
    p.render(&env.vars())
}
