//! Rational solutions of `L(y) = sum lambda_k r_k` with the `lambda_k`
//! treated as extra unknowns.

use crate::arith::{linalg, BaseField, Field, Poly, RatFunc};
use crate::error::Result;

use super::operator::LinDiffOp;

/// Local data at one group of finite singular points (the roots of
/// `factor`, which all share the same valuations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularFactor<K> {
    pub factor: Poly<K>,
    /// Norm of the indicial polynomial over the roots of `factor`.
    pub indicial_norm: Poly<K>,
    pub pole_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveTrace<K> {
    pub singular: Vec<SingularFactor<K>>,
    pub denominator: Poly<K>,
    /// Indicial polynomial at infinity of the operator acting on numerators.
    pub indicial_at_infinity: Poly<K>,
    /// Bound on the numerator degree; `-1` means the numerator vanishes.
    pub degree_bound: i64,
}

/// Solutions `(y, lambda)` split so that the homogeneous ones have
/// `lambda = 0` and the particular ones are in echelon form in `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSolutions<K> {
    pub homogeneous: Vec<RatFunc<K>>,
    pub particular: Vec<(RatFunc<K>, Vec<K>)>,
    pub trace: SolveTrace<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace<T> {
    pub basis: Vec<T>,
    pub particular: Option<T>,
}

impl<T> SolutionSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `e (e - 1) ... (e - i + 1)`.
fn falling<K: BaseField>(i: usize) -> Poly<K> {
    (0..i).fold(Poly::one(), |acc, j| acc.mul(&Poly::new(vec![K::from_int(-(j as i64)), K::one()])))
}

fn falling_at<K: BaseField>(e: i64, i: usize) -> K {
    (0..i as i64).fold(K::one(), |acc, j| acc.mul(&K::from_int(e - j)))
}

/// Splits the squarefree `f` so that `p` has the same order at every root
/// of each part.
fn split_by<K: BaseField>(f: Poly<K>, p: &Poly<K>) -> Vec<Poly<K>> {
    let mut out = Vec::new();
    let mut f = f;
    let mut p = p.clone();
    while f.deg() >= 1 {
        let g = f.gcd(&p);
        let rest = f.exact_div(&g).expect("gcd divides");
        if rest.deg() >= 1 {
            out.push(rest.monic());
        }
        if g.deg() < 1 {
            break;
        }
        p = p.exact_div(&g).expect("gcd divides");
        f = g;
    }
    out
}

fn refine<K: BaseField>(s: Poly<K>, polys: &[Poly<K>]) -> Vec<Poly<K>> {
    let mut parts = if s.deg() >= 1 { vec![s.monic()] } else { Vec::new() };
    for p in polys.iter().filter(|p| !p.is_zero()) {
        parts = parts.into_iter().flat_map(|f| split_by(f, p)).collect();
    }
    parts
}

/// Order of `p` at the roots of `f` (assumed constant).
fn order_at<K: BaseField>(p: &Poly<K>, f: &Poly<K>) -> usize {
    let mut p = p.clone();
    let mut k = 0;
    while let Some(q) = p.exact_div(f) {
        p = q;
        k += 1;
    }
    k
}

fn integer_roots<K: BaseField>(p: &Poly<K>) -> Vec<i64> {
    if p.deg() < 1 {
        return Vec::new();
    }
    K::rational_roots(p)
        .into_iter()
        .filter(|(r, _)| r.is_integer())
        .filter_map(|(r, _)| num_traits::ToPrimitive::to_i64(&r.to_integer()))
        .collect()
}

/// Norm over the roots of `f` of the indicial polynomial at those roots,
/// together with the common offset `w = min(v_i - i)`.
fn local_indicial<K: BaseField>(p: &[Poly<K>], f: &Poly<K>) -> (Poly<K>, i64) {
    let vals: Vec<Option<usize>> = p.iter().map(|c| (!c.is_zero()).then(|| order_at(c, f))).collect();
    let w = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| v as i64 - i as i64))
        .min()
        .expect("nonzero operator");
    let fd = f.derivative();
    // terms c_i(x) * falling_i(e) with c_i taken modulo f
    let terms: Vec<(usize, Poly<K>)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| {
            let v = (*v)?;
            (v as i64 - i as i64 == w).then(|| {
                let unit = p[i].exact_div(&f.pow(v as u32)).expect("order");
                (i, unit.mul(&fd.pow(v as u32)).rem(f))
            })
        })
        .collect();
    let top = terms.iter().map(|(i, _)| *i).max().unwrap_or(0);
    let df = f.degree().unwrap_or(0);
    if df == 1 {
        let alpha = f.coeff(0).neg();
        let poly = terms
            .iter()
            .fold(Poly::zero(), |acc, (i, c)| acc.add(&falling::<K>(*i).scale(&c.eval(&alpha))));
        return (poly, w);
    }
    let points: Vec<(K, K)> = (0..=(df * top) as i64)
        .map(|e| {
            let at = terms
                .iter()
                .fold(Poly::zero(), |acc, (i, c)| acc.add(&c.scale(&falling_at::<K>(e, *i))))
                .rem(f);
            let val = if at.is_zero() { K::zero() } else { f.resultant(&at) };
            (K::from_int(e), val)
        })
        .collect();
    (Poly::interpolate(&points), w)
}

fn rational_degree<K: BaseField>(f: &RatFunc<K>) -> Option<i64> {
    f.degree()
}

fn rational_lc<K: BaseField>(f: &RatFunc<K>) -> K {
    f.num().lc().div(&f.den().lc())
}

/// Rational `(y, lambda)` with `op(y) = sum lambda_k rhs_k`.
///
/// When `pole_support` is given, only its roots are considered as possible
/// poles of `y`.
pub fn solve_parametric<K: BaseField>(
    op: &LinDiffOp<K>,
    rhs: &[RatFunc<K>],
    pole_support: Option<&Poly<K>>,
) -> Result<ParamSolutions<K>> {
    let op = op.to_ddx();
    let n = op.order();
    let mut common = Poly::<K>::one();
    for c in op.coeffs() {
        common = common.lcm(c.den());
    }
    let common_rf = RatFunc::from_poly(common.clone());
    let p: Vec<Poly<K>> = op.coeffs().iter().map(|c| c.mul(&common_rf).num().clone()).collect();
    let rhs: Vec<RatFunc<K>> = rhs.iter().map(|r| r.mul(&common_rf)).collect();

    let mut sing = p[n].clone();
    for r in &rhs {
        sing = sing.mul(r.den());
    }
    let mut sing = sing.squarefree_part();
    if let Some(support) = pole_support {
        sing = sing.gcd(&support.squarefree_part());
    }
    let mut to_refine = p.clone();
    to_refine.extend(rhs.iter().map(|r| r.den().clone()));
    let factors = refine(sing, &to_refine);

    let mut singular = Vec::new();
    let mut denominator = Poly::one();
    for f in factors {
        let (norm, w) = local_indicial(&p, &f);
        let mut bound = 0i64;
        if let Some(min) = integer_roots(&norm).into_iter().min() {
            bound = bound.max(-min);
        }
        for r in rhs.iter().filter(|r| !r.is_zero()) {
            bound = bound.max(order_at(r.den(), &f) as i64 + w);
        }
        let bound = bound.max(0) as usize;
        denominator = denominator.mul(&f.pow(bound as u32));
        singular.push(SingularFactor { factor: f, indicial_norm: norm, pole_bound: bound });
    }

    // operator acting on the numerator: q_j = sum_i C(i, j) p_i delta^(i-j)(1/D)
    let mut dinv = vec![RatFunc::new(Poly::one(), denominator.clone())];
    for _ in 0..n {
        let next = dinv.last().expect("nonempty").derivative();
        dinv.push(next);
    }
    let mut binom = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1] + if j < i { binom[i - 1][j] } else { 0 };
        }
    }
    let qs: Vec<RatFunc<K>> = (0..=n)
        .map(|j| {
            (j..=n).fold(RatFunc::zero(), |acc, i| {
                if p[i].is_zero() {
                    return acc;
                }
                let term = dinv[i - j].mul(&RatFunc::from_poly(p[i].scale(&K::from_int(binom[i][j]))));
                acc.add(&term)
            })
        })
        .collect();

    let w_inf = qs
        .iter()
        .enumerate()
        .filter_map(|(j, q)| rational_degree(q).map(|d| d - j as i64))
        .max()
        .expect("nonzero operator");
    let indicial_at_infinity = qs.iter().enumerate().fold(Poly::zero(), |acc, (j, q)| {
        match rational_degree(q) {
            Some(d) if d - j as i64 == w_inf => acc.add(&falling::<K>(j).scale(&rational_lc(q))),
            _ => acc,
        }
    });
    let mut degree_bound = -1i64;
    if let Some(max) = integer_roots(&indicial_at_infinity).into_iter().max() {
        degree_bound = degree_bound.max(max);
    }
    for r in &rhs {
        if let Some(d) = rational_degree(r) {
            degree_bound = degree_bound.max(d - w_inf);
        }
    }

    // columns: numerator coefficients, then -rhs
    let nb = (degree_bound + 1) as usize;
    let mut cols: Vec<RatFunc<K>> = Vec::with_capacity(nb + rhs.len());
    for k in 0..nb {
        let col = qs.iter().enumerate().take(k + 1).fold(RatFunc::zero(), |acc, (j, q)| {
            if q.is_zero() {
                return acc;
            }
            let mono = RatFunc::from_poly(Poly::monomial(falling_at::<K>(k as i64, j), k - j));
            acc.add(&q.mul(&mono))
        });
        cols.push(col);
    }
    cols.extend(rhs.iter().map(|r| r.neg()));
    let mut den = Poly::<K>::one();
    for c in &cols {
        den = den.lcm(c.den());
    }
    let polys: Vec<Poly<K>> = cols
        .iter()
        .map(|c| c.num().mul(&den.exact_div(c.den()).expect("lcm")))
        .collect();
    let rows = polys.iter().map(|q| q.coeffs().len()).max().unwrap_or(0);
    let matrix: Vec<Vec<K>> = (0..rows).map(|i| polys.iter().map(|q| q.coeff(i)).collect()).collect();
    let null = if rows == 0 {
        (0..cols.len())
            .map(|i| (0..cols.len()).map(|j| if i == j { K::one() } else { K::zero() }).collect())
            .collect()
    } else {
        linalg::nullspace(&matrix, cols.len())
    };

    let sols: Vec<(RatFunc<K>, Vec<K>)> = null
        .into_iter()
        .map(|v| {
            let num = Poly::new(v[..nb].to_vec());
            (RatFunc::new(num, denominator.clone()), v[nb..].to_vec())
        })
        .collect();
    let (homogeneous, particular) = split_lambda(sols, rhs.len());
    let trace = SolveTrace { singular, denominator, indicial_at_infinity, degree_bound };
    Ok(ParamSolutions { homogeneous, particular, trace })
}

/// Gaussian elimination on the `lambda` coordinates.
fn split_lambda<K: BaseField>(mut sols: Vec<(RatFunc<K>, Vec<K>)>, m: usize) -> (Vec<RatFunc<K>>, Vec<(RatFunc<K>, Vec<K>)>) {
    let mut particular = Vec::new();
    for col in 0..m {
        let Some(pos) = sols.iter().position(|(_, l)| !l[col].is_zero()) else {
            continue;
        };
        let (y, l) = sols.remove(pos);
        let inv = l[col].inv().expect("nonzero");
        let y = y.scale(&inv);
        let l: Vec<K> = l.iter().map(|c| c.mul(&inv)).collect();
        for (oy, ol) in sols.iter_mut().chain(particular.iter_mut()) {
            let f = ol[col].clone();
            if f.is_zero() {
                continue;
            }
            *oy = oy.sub(&y.scale(&f));
            for (a, b) in ol.iter_mut().zip(&l) {
                *a = a.sub(&b.mul(&f));
            }
        }
        particular.push((y, l));
    }
    let homogeneous = sols.into_iter().map(|(y, _)| y).collect();
    (homogeneous, particular)
}

/// Rational solutions of `op(y) = rhs` (or of `op(y) = 0`).
pub fn rational_solutions<K: BaseField>(op: &LinDiffOp<K>, rhs: Option<&RatFunc<K>>) -> Result<SolutionSpace<RatFunc<K>>> {
    rational_solutions_with_support(op, rhs, None)
}

pub fn rational_solutions_with_support<K: BaseField>(
    op: &LinDiffOp<K>,
    rhs: Option<&RatFunc<K>>,
    pole_support: Option<&Poly<K>>,
) -> Result<SolutionSpace<RatFunc<K>>> {
    let rhs: Vec<RatFunc<K>> = rhs.into_iter().filter(|r| !r.is_zero()).cloned().collect();
    let sol = solve_parametric(op, &rhs, pole_support)?;
    let particular = sol.particular.into_iter().next().map(|(y, _)| y);
    let particular = if rhs.is_empty() { None } else { particular };
    Ok(SolutionSpace { basis: sol.homogeneous, particular })
}
