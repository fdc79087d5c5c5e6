use crate::arith::{linalg, BaseField, Field, RatFunc};
use crate::error::{Error, Result};

use super::operator::LinDiffOp;

/// Operator of minimal order annihilating every `n`-fold product of
/// solutions of a second-order operator.
pub fn symmetric_power<K: BaseField>(op: &LinDiffOp<K>, n: usize) -> Result<LinDiffOp<K>> {
    if op.order() != 2 {
        return Err(Error::UnsupportedOrder { expected: 2, got: op.order() });
    }
    let op = op.monic();
    if n == 1 {
        return Ok(op);
    }
    let der = op.derivation();
    let (a0, a1) = (op.coeff(0), op.coeff(1));
    // m_k = y^(n-k) (delta y)^k; delta(m_k) = (n-k) m_(k+1) - k a1 m_k - k a0 m_(k-1)
    let step = |v: &[RatFunc<K>]| -> Vec<RatFunc<K>> {
        let mut out: Vec<RatFunc<K>> = v.iter().map(|c| der.apply(c)).collect();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let kk = K::from_int(k as i64);
            if k < n {
                out[k + 1] = out[k + 1].add(&c.scale(&K::from_int((n - k) as i64)));
            }
            if k > 0 {
                out[k] = out[k].sub(&c.mul(&a1).scale(&kk));
                out[k - 1] = out[k - 1].sub(&c.mul(&a0).scale(&kk));
            }
        }
        out
    };
    let mut vecs = vec![{
        let mut e = vec![RatFunc::zero(); n + 1];
        e[0] = RatFunc::one();
        e
    }];
    loop {
        let next = step(vecs.last().expect("nonempty"));
        let m = vecs.len();
        // next = sum c_j v_j, solved as V^T c = next
        let vt = linalg::transpose(&vecs);
        let mut aug: Vec<Vec<RatFunc<K>>> = vt.iter().zip(&next).map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        }).collect();
        let pivots = linalg::rref(&mut aug);
        if !pivots.contains(&m) {
            let mut c = vec![RatFunc::zero(); m];
            for (row, &pc) in pivots.iter().enumerate() {
                c[pc] = aug[row][m].clone();
            }
            let mut coeffs: Vec<RatFunc<K>> = c.iter().map(|x| x.neg()).collect();
            coeffs.push(RatFunc::one());
            return LinDiffOp::new(der, coeffs);
        }
        vecs.push(next);
    }
}
