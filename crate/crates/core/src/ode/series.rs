//! Truncated power series solutions at ordinary points.

use crate::arith::{BaseField, Field, Poly, RatFunc};
use crate::error::{Error, Result};

use super::operator::LinDiffOp;

/// Truncated series `sum c_k (x - x0)^k`, `k < len`.
pub type Series<K> = Vec<K>;

/// Expansion of `f` at `x0` to `len` terms.
pub fn expand<K: BaseField>(f: &RatFunc<K>, x0: &K, len: usize) -> Result<Series<K>> {
    let num = f.num().compose_linear(&K::one(), x0);
    let den = f.den().compose_linear(&K::one(), x0);
    let d0 = den.coeff(0);
    let inv = d0.inv().ok_or(Error::SingularPoint)?;
    let mut out: Vec<K> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.deg().max(0) as usize) {
            acc = acc.sub(&den.coeff(j).mul(&out[k - j]));
        }
        out.push(acc.mul(&inv));
    }
    Ok(out)
}

pub fn mul<K: Field>(a: &[K], b: &[K], len: usize) -> Series<K> {
    (0..len)
        .map(|k| {
            (0..=k).fold(K::zero(), |acc, i| match (a.get(i), b.get(k - i)) {
                (Some(x), Some(y)) if !x.is_zero() && !y.is_zero() => acc.add(&x.mul(y)),
                _ => acc,
            })
        })
        .collect()
}

/// Termwise `d/dx`; loses the last term.
pub fn derivative<K: Field>(a: &[K]) -> Series<K> {
    a.iter().enumerate().skip(1).map(|(k, c)| c.mul(&K::from_int(k as i64))).collect()
}

/// Applies a `d/dx` operator with coefficients expanded at `x0`; the result
/// is exact for the first `len - order` terms.
pub fn apply<K: BaseField>(op: &LinDiffOp<K>, s: &[K], x0: &K) -> Result<Series<K>> {
    let op = op.to_ddx();
    let len = s.len();
    let mut acc = vec![K::zero(); len];
    let mut cur = s.to_vec();
    for (i, c) in op.coeffs().iter().enumerate() {
        if i > 0 {
            cur = derivative(&cur);
        }
        let ce = expand(c, x0, len)?;
        for (a, v) in acc.iter_mut().zip(mul(&ce, &cur, cur.len())) {
            *a = a.add(&v);
        }
    }
    acc.truncate(len.saturating_sub(op.order()));
    Ok(acc)
}

/// Basis of series solutions at an ordinary point, the `i`-th with
/// `y^(j)(x0)/j! = [i == j]` for `j < order`.
pub fn series_solutions<K: BaseField>(op: &LinDiffOp<K>, x0: &K, len: usize) -> Result<Vec<Series<K>>> {
    let op = op.to_ddx();
    let n = op.order();
    let lc = op.lc().clone();
    if lc.eval(x0).is_none_or(|v| v.is_zero()) {
        return Err(Error::SingularPoint);
    }
    let len = len.max(n);
    // y^(n) = -sum_{i<n} (c_i / c_n) y^(i)
    let norm: Vec<Series<K>> = op.coeffs()[..n]
        .iter()
        .map(|c| expand(&c.div(&lc), x0, len))
        .collect::<Result<_>>()?;
    let mut basis = Vec::with_capacity(n);
    for i in 0..n {
        let mut a: Vec<K> = (0..n).map(|j| if i == j { K::one() } else { K::zero() }).collect();
        for k in 0..len - n {
            // coefficient of t^k in the right-hand side
            let mut rhs = K::zero();
            for (m, cm) in norm.iter().enumerate() {
                // t^k coefficient of cm * y^(m): sum_l cm[l] * (k-l+m)!/(k-l)! a[k-l+m]
                for l in 0..=k {
                    if cm[l].is_zero() {
                        continue;
                    }
                    let idx = k - l + m;
                    let ff = (0..m).fold(K::one(), |acc, j| acc.mul(&K::from_int((idx - j) as i64)));
                    rhs = rhs.sub(&cm[l].mul(&ff).mul(&a[idx]));
                }
            }
            // (k+n)!/k! a[k+n] = rhs
            let ff = (0..n).fold(K::one(), |acc, j| acc.mul(&K::from_int((k + n - j) as i64)));
            a.push(rhs.div(&ff));
        }
        basis.push(a);
    }
    Ok(basis)
}

/// A polynomial's coefficients as a series of the given length at `x0`.
pub fn from_poly<K: BaseField>(p: &Poly<K>, x0: &K, len: usize) -> Series<K> {
    let s = p.compose_linear(&K::one(), x0);
    (0..len).map(|k| s.coeff(k)).collect()
}
