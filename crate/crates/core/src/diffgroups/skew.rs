//! The twisted polynomial ring `K[sigma]` with `sigma c = sigma(c) sigma`,
//! where `sigma` fixes `Q` and sends the parameter `t` to `t + 1`.

use crate::arith::{BaseField, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPoly<K> {
    coeffs: Vec<K>,
}

/// `sigma^j(c)`.
pub fn twist<K: BaseField>(c: &K, j: usize) -> K {
    c.shift_param(&Q::from_integer(j.into()))
}

impl<K: BaseField> SkewPoly<K> {
    /// `sum c_i sigma^i`, trailing zeros dropped.
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `c sigma^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SkewPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    /// `c * self`.
    pub fn left_scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(&twist(b, i)));
            }
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) => self.left_scale(&inv),
            None => self.clone(),
        }
    }

    /// `sum c_i sigma^i(y)`.
    pub fn apply(&self, y: &K) -> K {
        self.coeffs.iter().enumerate().fold(K::zero(), |acc, (i, c)| if c.is_zero() { acc } else { acc.add(&c.mul(&twist(y, i))) })
    }

    /// `(q, r)` with `self = q * b + r` and `ord r < ord b`.
    pub fn right_divide(&self, b: &Self) -> Result<(Self, Self)> {
        let m = b.order().ok_or(Error::DivisionByZero)?;
        let lb = b.lc();
        let mut q = Self::zero();
        let mut r = self.clone();
        while let Some(n) = r.order().filter(|&n| n >= m) {
            let k = n - m;
            let c = r.lc().div(&twist(&lb, k));
            let term = Self::monomial(c, k);
            r = r.sub(&term.mul(b));
            q = q.add(&term);
        }
        Ok((q, r))
    }

    pub fn right_rem(&self, b: &Self) -> Result<Self> {
        Ok(self.right_divide(b)?.1)
    }
}

/// Monic greatest common right divisor.
pub fn skew_right_gcd<K: BaseField>(a: &SkewPoly<K>, b: &SkewPoly<K>) -> Result<SkewPoly<K>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.right_rem(&r1)?;
        r0 = r1;
        r1 = r;
    }
    Ok(r0.monic())
}

/// Monic least common left multiple, from the cofactors of the
/// right Euclidean remainder sequence.
pub fn skew_left_lcm<K: BaseField>(a: &SkewPoly<K>, b: &SkewPoly<K>) -> Result<SkewPoly<K>> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(SkewPoly::zero());
    }
    // r_i = s_i a + t_i b
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (SkewPoly::one(), SkewPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.right_divide(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    Ok(s1.mul(a).monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qi, Field, Poly, QFn};
    use proptest::prelude::*;

    fn sq(cs: &[i64]) -> SkewPoly<Q> {
        SkewPoly::new(cs.iter().map(|&c| qi(c)).collect())
    }

    fn t() -> QFn {
        QFn::param().unwrap()
    }

    fn tf(n: &[i64], d: &[i64]) -> QFn {
        QFn::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn examples() {
        assert_eq!(sq(&[-1, 0, 1]).right_divide(&sq(&[-1, 1])).unwrap(), (sq(&[1, 1]), SkewPoly::zero()));
        let s2 = SkewPoly::<QFn>::monomial(QFn::one(), 2);
        let s1 = SkewPoly::<QFn>::monomial(QFn::one(), 1);
        assert_eq!(s2.right_divide(&s1).unwrap(), (s1.clone(), SkewPoly::zero()));
        let a = SkewPoly::new(vec![tf(&[2, 1], &[0, 1]).neg(), QFn::zero(), QFn::one()]);
        let b = SkewPoly::new(vec![tf(&[1, 1], &[0, 1]).neg(), QFn::one()]);
        assert!(a.apply(&t()).is_zero() && b.apply(&t()).is_zero());
        assert!(a.right_rem(&b).unwrap().is_zero());
        assert_eq!(sq(&[1]).right_divide(&SkewPoly::zero()), Err(Error::DivisionByZero));

        assert_eq!(skew_right_gcd(&sq(&[-1, 0, 1]), &sq(&[-1, 1])).unwrap(), sq(&[-1, 1]));
        assert_eq!(skew_right_gcd(&sq(&[-2, 1]), &sq(&[-3, 1])).unwrap(), sq(&[1]));
        assert_eq!(skew_left_lcm(&sq(&[-1, 1]), &sq(&[1, 1])).unwrap(), sq(&[-1, 0, 1]));
        assert_eq!(skew_right_gcd::<Q>(&SkewPoly::zero(), &SkewPoly::zero()), Err(Error::BothZero));

        // twisted: sigma t = (t + 1) sigma
        let ts = SkewPoly::constant(t());
        assert_eq!(s1.mul(&ts), SkewPoly::new(vec![QFn::zero(), t().add(&QFn::one())]));
    }

    fn twisted() -> impl Strategy<Value = SkewPoly<QFn>> {
        let coeff = (proptest::collection::vec(-3i64..=3, 1..=2), prop_oneof![Just(vec![1i64]), (1i64..=3).prop_map(|a| vec![a, 1])])
            .prop_map(|(n, d)| tf(&n, &d));
        proptest::collection::vec(coeff, 1..=4).prop_map(SkewPoly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn division_invariant(a in twisted(), b in twisted()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.right_divide(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            prop_assert!(r.order().is_none_or(|o| o < b.order().unwrap()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn gcd_lcm(a in twisted(), b in twisted(), c in twisted()) {
            prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
            let (ac, bc) = (a.mul(&c), b.mul(&c));
            let g = skew_right_gcd(&ac, &bc).unwrap();
            prop_assert!(ac.right_rem(&g).unwrap().is_zero());
            prop_assert!(bc.right_rem(&g).unwrap().is_zero());
            prop_assert!(g.right_rem(&c.monic()).unwrap().is_zero());
            let l = skew_left_lcm(&a, &b).unwrap();
            prop_assert!(l.right_rem(&a).unwrap().is_zero());
            prop_assert!(l.right_rem(&b).unwrap().is_zero());
            let gab = skew_right_gcd(&a, &b).unwrap();
            prop_assert_eq!(l.order().unwrap() + gab.order().unwrap(), a.order().unwrap() + b.order().unwrap());
        }
    }
}
