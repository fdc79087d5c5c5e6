use crate::arith::{BaseField, Field, Poly, RatFunc};
use crate::context::Derivation;
use crate::error::{Error, Result};

/// `sum c_i delta^i` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinDiffOp<K> {
    derivation: Derivation,
    coeffs: Vec<RatFunc<K>>,
}

/// Stirling numbers of the second kind `S(i, k)` for `i, k <= n`.
fn stirling2(n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = k as i64 * s[i - 1][k] + s[i - 1][k - 1];
        }
    }
    s
}

impl<K: BaseField> LinDiffOp<K> {
    pub fn new(derivation: Derivation, mut coeffs: Vec<RatFunc<K>>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroOperator);
        }
        Ok(LinDiffOp { derivation, coeffs })
    }

    pub fn ddx(coeffs: Vec<RatFunc<K>>) -> Result<Self> {
        Self::new(Derivation::Ddx, coeffs)
    }

    /// `delta^n`.
    pub fn delta_pow(derivation: Derivation, n: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        coeffs[n] = RatFunc::one();
        LinDiffOp { derivation, coeffs }
    }

    /// `delta - a`.
    pub fn first_order(derivation: Derivation, a: &RatFunc<K>) -> Self {
        LinDiffOp { derivation, coeffs: vec![a.neg(), RatFunc::one()] }
    }

    pub fn derivation(&self) -> Derivation {
        self.derivation
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFunc<K>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc<K> {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn lc(&self) -> &RatFunc<K> {
        self.coeffs.last().expect("nonzero operator")
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn monic(&self) -> Self {
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        LinDiffOp { derivation: self.derivation, coeffs: self.coeffs.iter().map(|c| c.mul(&inv)).collect() }
    }

    pub fn apply(&self, f: &RatFunc<K>) -> RatFunc<K> {
        let mut acc = RatFunc::zero();
        let mut cur = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = self.derivation.apply(&cur);
            }
            if !c.is_zero() && !cur.is_zero() {
                acc = acc.add(&c.mul(&cur));
            }
        }
        acc
    }

    /// Same operator written with `d/dx`, via
    /// `(x d/dx)^i = sum_k S(i, k) x^k (d/dx)^k`.
    pub fn to_ddx(&self) -> Self {
        if self.derivation == Derivation::Ddx {
            return self.clone();
        }
        let n = self.order();
        let s = stirling2(n);
        let mut out = vec![RatFunc::<K>::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                if s[i][k] != 0 {
                    let xk = RatFunc::from_poly(Poly::monomial(K::from_int(s[i][k]), k));
                    *slot = slot.add(&c.mul(&xk));
                }
            }
        }
        LinDiffOp { derivation: Derivation::Ddx, coeffs: out }
    }

    /// Sum of two operators; `ZeroOperator` when they cancel.
    pub fn add(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.derivation, other.derivation);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::new(self.derivation, coeffs)
    }

    /// Left multiplication by a function.
    pub fn scale(&self, c: &RatFunc<K>) -> Self {
        LinDiffOp { derivation: self.derivation, coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.derivation, other.derivation);
        // delta^i ∘ other, built up by delta ∘ M = sum (delta(m_j) delta^j + m_j delta^(j+1))
        let mut power = other.coeffs.clone();
        let mut acc = vec![RatFunc::<K>::zero(); self.order() + other.order() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                let mut next = vec![RatFunc::zero(); power.len() + 1];
                for (j, m) in power.iter().enumerate() {
                    next[j] = next[j].add(&self.derivation.apply(m));
                    next[j + 1] = next[j + 1].add(m);
                }
                power = next;
            }
            if c.is_zero() {
                continue;
            }
            for (j, m) in power.iter().enumerate() {
                acc[j] = acc[j].add(&c.mul(m));
            }
        }
        LinDiffOp { derivation: self.derivation, coeffs: acc }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc<K>) -> RatFunc<K>) -> Self {
        LinDiffOp { derivation: self.derivation, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Monic operator of minimal order annihilating the given linearly
/// independent functions.
pub fn annihilator<K: BaseField>(derivation: Derivation, fs: &[RatFunc<K>]) -> Result<LinDiffOp<K>> {
    use crate::arith::linalg;
    let k = fs.len();
    // rows: delta^j of each f, j = 0..=k
    let mut ders: Vec<Vec<RatFunc<K>>> = Vec::with_capacity(k);
    for f in fs {
        let mut row = vec![f.clone()];
        for _ in 0..k {
            let next = derivation.apply(row.last().expect("nonempty"));
            row.push(next);
        }
        ders.push(row);
    }
    let a: Vec<Vec<RatFunc<K>>> = ders.iter().map(|r| r[..k].to_vec()).collect();
    let b: Vec<RatFunc<K>> = ders.iter().map(|r| r[k].neg()).collect();
    let c = linalg::solve(&a, &b).ok_or(Error::DimensionMismatch("dependent functions".into()))?;
    let mut coeffs = c;
    coeffs.push(RatFunc::one());
    LinDiffOp::new(derivation, coeffs)
}
