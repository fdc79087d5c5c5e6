//! Periodicity forced on a root of unity by a multiplicative relation
//! among its transforms.

use std::collections::HashMap;

use crate::arith::modular::{fp, is_prime};
use crate::error::{Error, Result};

/// `g^a_0 sigma(g)^a_1 ... sigma^l(g)^a_l = 1` for `g` of order dividing `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MupRelation {
    pub p: u64,
    pub exponents: Vec<u64>,
}

/// Lexicographically smallest `(m, d)` with `sigma^(m+d)(g) = sigma^m(g)`.
pub fn mup_period(rel: &MupRelation) -> Result<(usize, usize)> {
    let p = rel.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let alpha: Vec<u64> = rel.exponents.iter().map(|a| a % p).collect();
    let Some((&top, lower)) = alpha.split_last() else {
        return Err(Error::InvalidLeadingExponent);
    };
    if top == 0 {
        return Err(Error::InvalidLeadingExponent);
    }
    // sigma^l(g) = prod sigma^i(g)^beta_i
    let neg_inv = p - fp::inv(top, p);
    let beta: Vec<u64> = lower.iter().map(|a| fp::mul(*a, neg_inv, p)).collect();
    let l = beta.len();
    // state: exponents of sigma^k(g) in g, ..., sigma^(l-1)(g)
    let step = |v: &[u64]| -> Vec<u64> {
        let Some(&last) = v.last() else { return Vec::new() };
        (0..l)
            .map(|i| {
                let carry = if i > 0 { v[i - 1] } else { 0 };
                (carry + fp::mul(last, beta[i], p)) % p
            })
            .collect()
    };
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut v: Vec<u64> = (0..l).map(|i| u64::from(i == 0)).collect();
    for k in 0.. {
        if let Some(&m) = seen.get(&v) {
            return Ok((m, k - m));
        }
        seen.insert(v.clone(), k);
        v = step(&v);
    }
    unreachable!("finite state space")
}
