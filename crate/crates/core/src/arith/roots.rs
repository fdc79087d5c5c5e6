//! Rational roots of rational polynomials.
//!
//! Roots are found modulo a small prime, lifted p-adically by Newton
//! iteration and turned back into fractions by rational reconstruction, so
//! no integer factorization is ever needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Q;
use super::modular::fp;
use super::poly::Poly;

/// Distinct rational roots with their multiplicities, in increasing order.
pub fn rational_roots(p: &Poly<Q>) -> Vec<(Q, usize)> {
    if p.deg() < 1 {
        return Vec::new();
    }
    let mut f = p.squarefree_part();
    let mut found = Vec::new();
    if f.coeff(0).is_zero() {
        found.push(Q::zero());
        f = f.shift_down(1);
    }
    if f.deg() >= 1 {
        let ints = primitive_integer(&f);
        if ints.len() == 2 {
            found.push(Q::new(-ints[0].clone(), ints[1].clone()));
        } else {
            found.extend(lifted_roots(&ints));
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|r| {
            let lin = Poly::new(vec![-r.clone(), Q::one()]);
            let mut rest = p.clone();
            let mut mult = 0;
            while let Some(quo) = rest.exact_div(&lin) {
                rest = quo;
                mult += 1;
            }
            (r, mult)
        })
        .collect()
}

/// Integer roots only.
pub fn integer_roots(p: &Poly<Q>) -> Vec<(BigInt, usize)> {
    rational_roots(p)
        .into_iter()
        .filter(|(r, _)| r.is_integer())
        .map(|(r, m)| (r.to_integer(), m))
        .collect()
}

/// Clears denominators and content, leaving a primitive integer polynomial
/// with positive leading coefficient.
pub fn primitive_integer(p: &Poly<Q>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    let lq = Q::from_integer(l);
    let mut ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &lq).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    for c in &mut ints {
        *c = &*c / &g;
    }
    ints
}

fn eval_mod(f: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * r + c).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Roots of a squarefree integer polynomial with nonzero constant term and
/// degree at least two.
fn lifted_roots(f: &[BigInt]) -> Vec<Q> {
    let n = f.len() - 1;
    let lead = f[n].abs();
    let tail = f[0].abs();
    // any root u/v in lowest terms has u | a_0 and v | a_n
    let bound = BigInt::from(2) * &tail * &lead + 1u32;
    let deriv: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    let (p, residues) = pick_prime(f);
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for r0 in residues {
        let mut r = BigInt::from(r0);
        let mut m = pb.clone();
        while m < bound {
            let m2 = &m * &m;
            let fr = eval_mod(f, &r, &m2);
            let dr = eval_mod(&deriv, &r, &m2);
            let inv = mod_inverse(&dr, &m2).expect("simple root modulo p");
            r = (&r - fr * inv).mod_floor(&m2);
            m = m2;
        }
        if let Some(cand) = reconstruct(&r, &m, &tail, &lead) {
            if is_root(f, &cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// First prime not dividing the leading coefficient for which the reduction
/// stays squarefree, together with the roots of the reduction.
fn pick_prime(f: &[BigInt]) -> (u64, Vec<u64>) {
    let mut p = 101u64;
    loop {
        p = next_prime(p);
        let pb = BigInt::from(p);
        let red: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect();
        if red[red.len() - 1] == 0 {
            continue;
        }
        let der: Vec<u64> =
            red.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect();
        if fp::gcd(&red, &der, p).len() != 1 {
            continue;
        }
        let roots = (0..p).filter(|&r| fp::eval(&red, r, p) == 0).collect();
        return (p, roots);
    }
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d)) {
            return n;
        }
    }
}

/// Recovers `u/v` with `|u| <= num_bound`, `0 < v <= den_bound` from its
/// image modulo `m`, assuming `2 * num_bound * den_bound < m`.
fn reconstruct(r: &BigInt, m: &BigInt, num_bound: &BigInt, den_bound: &BigInt) -> Option<Q> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let quo = &r0 / &r1;
        let r2 = &r0 - &quo * &r1;
        let t2 = &t0 - &quo * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (u, v) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    (v.is_positive() && &v <= den_bound).then(|| Q::new(u, v))
}

fn is_root(f: &[BigInt], r: &Q) -> bool {
    let (u, v) = (r.numer(), r.denom());
    let n = f.len() - 1;
    let mut acc = BigInt::zero();
    let mut upow = BigInt::one();
    let vpows: Vec<BigInt> = (0..=n).scan(BigInt::one(), |s, _| {
        let cur = s.clone();
        *s = &*s * v;
        Some(cur)
    })
    .collect();
    for (i, c) in f.iter().enumerate() {
        acc += c * &upow * &vpows[n - i];
        upow *= u;
    }
    acc.is_zero()
}
