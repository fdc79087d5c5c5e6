//! Rational solutions of `sum c_i(t) y(t + i) = 0` over `Q(t)`.

use num_traits::{Signed, ToPrimitive};

use crate::arith::roots::integer_roots;
use crate::arith::{linalg, qi, Field, Poly, QFn, Q};
use crate::error::{Error, Result};
use crate::ode::SolutionSpace;

use super::skew::SkewPoly;

fn shift(p: &Poly<Q>, h: i64) -> Poly<Q> {
    p.compose_linear(&qi(1), &qi(h))
}

/// Largest `h >= 0` with `gcd(a(t), b(t + h)) != 1`.
fn dispersion(a: &Poly<Q>, b: &Poly<Q>) -> Option<i64> {
    let (da, db) = (a.deg(), b.deg());
    if da <= 0 || db <= 0 {
        return None;
    }
    let n = (da * db) as usize;
    let points: Vec<(Q, Q)> = (0..=n as i64).map(|h| (qi(h), a.resultant(&shift(b, h)))).collect();
    let res = Poly::interpolate(&points);
    integer_roots(&res).into_iter().filter(|(r, _)| !r.is_negative()).filter_map(|(r, _)| r.to_i64()).max()
}

/// Denominator dividing every rational solution's denominator multiple.
fn universal_denominator(lead: &Poly<Q>, trail: &Poly<Q>, order: usize) -> Poly<Q> {
    let mut a = shift(lead, -(order as i64));
    let mut b = trail.clone();
    let mut u = Poly::one();
    let Some(n) = dispersion(&a, &b) else { return u };
    for h in (0..=n).rev() {
        let g = a.gcd(&shift(&b, h));
        if g.deg() <= 0 {
            continue;
        }
        a = a.exact_div(&g).expect("gcd divides");
        b = b.exact_div(&shift(&g, -h)).expect("shifted gcd divides");
        for i in 0..=h {
            u = u.mul(&shift(&g, -i));
        }
    }
    u
}

/// `d(d-1)...(d-k+1)` as a polynomial in `d`.
fn falling(k: usize) -> Poly<Q> {
    (0..k as i64).fold(Poly::one(), |acc, j| acc.mul(&Poly::from_ints(&[-j, 1])))
}

fn binom(n: usize, k: usize) -> Q {
    qi((0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j as i64 + 1)))
}

/// Degree bound for polynomial solutions from the difference form
/// `sum_k c_k Delta^k`.
fn degree_bound(b: &[Poly<Q>]) -> Option<usize> {
    let r = b.len() - 1;
    let c: Vec<Poly<Q>> = (0..=r).map(|k| (k..=r).fold(Poly::zero(), |acc, i| acc.add(&b[i].scale(&binom(i, k))))).collect();
    let beta = c.iter().enumerate().filter(|(_, ck)| !ck.is_zero()).map(|(k, ck)| ck.deg() - k as i64).max()?;
    let ind = c
        .iter()
        .enumerate()
        .filter(|(k, ck)| !ck.is_zero() && ck.deg() - *k as i64 == beta)
        .fold(Poly::zero(), |acc, (k, ck)| acc.add(&falling(k).scale(&ck.lc())));
    integer_roots(&ind).into_iter().filter(|(r, _)| !r.is_negative()).filter_map(|(r, _)| r.to_usize()).max()
}

/// Polynomial solutions of `sum b_i(t) z(t + i) = 0`.
fn polynomial_solutions(b: &[Poly<Q>]) -> Vec<Poly<Q>> {
    let Some(d) = degree_bound(b) else { return Vec::new() };
    let cols: Vec<Poly<Q>> = (0..=d)
        .map(|j| {
            let tj = Poly::monomial(qi(1), j);
            b.iter().enumerate().fold(Poly::zero(), |acc, (i, bi)| acc.add(&bi.mul(&shift(&tj, i as i64))))
        })
        .collect();
    let rows = cols.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let m: Vec<Vec<Q>> = (0..rows).map(|k| cols.iter().map(|p| p.coeff(k)).collect()).collect();
    let null = if rows == 0 { (0..=d).map(|j| (0..=d).map(|i| qi(i64::from(i == j))).collect()).collect() } else { linalg::nullspace(&m, d + 1) };
    null.into_iter().map(Poly::new).collect()
}

/// A basis over `Q` of the solutions in `Q(t)`.
pub fn recurrence_rational_solutions(l: &SkewPoly<QFn>) -> Result<SolutionSpace<QFn>> {
    let low = l.low_index().ok_or(Error::ZeroOperator)?;
    let top = l.order().expect("nonzero");
    if top == low {
        return Ok(SolutionSpace { basis: Vec::new(), particular: None });
    }
    // w(t) = y(t + low) satisfies the operator with the low zeros removed
    let c = &l.coeffs()[low..];
    let den = c.iter().fold(Poly::<Q>::one(), |acc, ci| acc.lcm(ci.den()));
    let a: Vec<Poly<Q>> = c.iter().map(|ci| ci.num().mul(&den.exact_div(ci.den()).expect("lcm"))).collect();
    let order = a.len() - 1;
    let u = universal_denominator(&a[order], &a[0], order);
    let us: Vec<Poly<Q>> = (0..=order).map(|i| shift(&u, i as i64)).collect();
    let big = us.iter().fold(Poly::one(), |acc, p| acc.lcm(p));
    let b: Vec<Poly<Q>> = a.iter().zip(&us).map(|(ai, ui)| ai.mul(&big.exact_div(ui).expect("lcm"))).collect();
    let zs = polynomial_solutions(&b);
    let single = zs.len() == 1;
    let back = qi(-(low as i64));
    let basis = zs
        .into_iter()
        .map(|z| {
            let y = QFn::new(z, u.clone()).compose_linear(&qi(1), &back);
            match y.num().lc().inv() {
                Some(inv) if single => y.scale(&inv),
                _ => y,
            }
        })
        .collect();
    Ok(SolutionSpace { basis, particular: None })
}
