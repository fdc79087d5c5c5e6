//! Subgroups of the additive group and of its semidirect product with the
//! multiplicative group, described by linear difference polynomials.

use crate::arith::{BaseField, Field, Poly, QFn, RatFunc};
use crate::error::{Error, Result};

use super::recurrence::recurrence_rational_solutions;
use super::skew::SkewPoly;

/// The subgroup `{y : p(y) = 0}` for `p = sum a_i sigma^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaSubgroup<K> {
    pub generator: SkewPoly<K>,
    pub sigma_integral: bool,
    pub perfectly_sigma_reduced: bool,
}

impl<K: BaseField> GaSubgroup<K> {
    pub fn new(p: &SkewPoly<K>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let generator = p.monic();
        // over an inversive field both properties reduce to a_0 != 0
        let trailing = !generator.coeff(0).is_zero();
        Ok(GaSubgroup { generator, sigma_integral: trailing, perfectly_sigma_reduced: trailing })
    }
}

/// Whether `q` lies in the ideal generated by the subgroup's generator.
pub fn ga_membership<K: BaseField>(q: &SkewPoly<K>, g: &GaSubgroup<K>) -> bool {
    q.right_rem(&g.generator).is_ok_and(|r| r.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaGmCase {
    /// `sigma^n(beta) = 0`.
    Nilpotent { n: usize },
    /// `sigma^n(alpha) = sigma^m(alpha)`.
    Periodic { n: usize, m: usize },
}

pub fn classify_gagm<K: BaseField>(p_u: &SkewPoly<K>) -> Result<GaGmCase> {
    let n = p_u.order().ok_or(Error::ZeroPolynomial)?;
    let m = p_u.low_index().expect("nonzero");
    Ok(if m == n { GaGmCase::Nilpotent { n } } else { GaGmCase::Periodic { n, m } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// `sum_i c_i / (x + i)` over `Q(t)`.
    pub g: RatFunc<QFn>,
    pub basis: Vec<QFn>,
    /// `L(c_i)`, all zero.
    pub residuals: Vec<QFn>,
}

/// A right-hand side whose primitive has the subgroup cut out by `l` as
/// its group.
pub fn realize_ga_subgroup(l: &SkewPoly<QFn>) -> Result<Realization> {
    let s = l.order().ok_or(Error::ZeroOperator)?;
    if !l.is_monic() {
        return Err(Error::NonMonic);
    }
    if l.coeff(0).is_zero() {
        return Err(Error::NotPerfectlyReduced);
    }
    let basis = recurrence_rational_solutions(l)?.basis;
    if basis.len() < s {
        return Err(Error::FieldNotLinearlySigmaClosed { found: basis.len(), needed: s });
    }
    let g = basis.iter().enumerate().fold(RatFunc::zero(), |acc, (i, c)| {
        acc.add(&RatFunc::new(Poly::constant(c.clone()), Poly::new(vec![QFn::from_int(i as i64 + 1), QFn::one()])))
    });
    let residuals = basis.iter().map(|c| l.apply(c)).collect();
    Ok(Realization { g, basis, residuals })
}
