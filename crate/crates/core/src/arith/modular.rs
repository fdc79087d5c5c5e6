//! Multi-modular gcd and resultant for rational polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Q;
use super::poly::Poly;
use super::roots::primitive_integer;

/// Arithmetic in `F_p[x]` for word-sized primes; polynomials are dense,
/// low degree first, with the zero polynomial as the empty vector.
pub(crate) mod fp {
    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn eval(f: &[u64], r: u64, p: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| (mul(acc, r, p) + c) % p)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let il = inv(b[db], p);
        while r.len() > db {
            let top = r.len() - 1;
            let c = mul(r[top], il, p);
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul(c, bj, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
        match a.last() {
            Some(&l) if l != 1 => {
                let il = inv(l, p);
                a.into_iter().map(|c| mul(c, il, p)).collect()
            }
            _ => a,
        }
    }

    /// Monic gcd; empty for zero.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(a, p)
    }

    /// Resultant with respect to the formal degrees `a.len() - 1`,
    /// `b.len() - 1`; both leading coefficients must be nonzero.
    pub fn resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        let mut acc = 1u64;
        loop {
            let m = (a.len() - 1) as u64;
            let n = (b.len() - 1) as u64;
            if n == 0 {
                return mul(acc, pow(b[0], m, p), p);
            }
            if m == 0 {
                return mul(acc, pow(a[0], n, p), p);
            }
            let r = rem(&a, &b, p);
            if r.is_empty() {
                return 0;
            }
            if (m * n) % 2 == 1 {
                acc = (p - acc) % p;
            }
            let k = (r.len() - 1) as u64;
            acc = mul(acc, pow(b[b.len() - 1], m - k, p), p);
            a = b;
            b = r;
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fp::pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fp::mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TOP: u64 = 1 << 62;

/// Primes below `2^62`, descending.
fn primes() -> impl Iterator<Item = u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut v = Vec::with_capacity(512);
        let mut n = TOP - 1;
        while v.len() < 512 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    });
    let last = *cache.last().expect("cached primes");
    cache.iter().copied().chain((1..).map(move |k| last - 2 * k).filter(|&n| is_prime(n)))
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect()
}

/// Symmetric representative of `x` modulo `m`.
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let x = x.mod_floor(m);
    if &x * 2 > *m {
        x - m
    } else {
        x
    }
}

/// Combines `h mod m` with `g mod p`.
fn crt(h: &BigInt, m: &BigInt, g: u64, p: u64) -> BigInt {
    let hp = h.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
    let minv = fp::inv(m.mod_floor(&BigInt::from(p)).to_u64().expect("reduced"), p);
    let t = fp::mul((g + p - hp) % p, minv, p);
    h + m * BigInt::from(t)
}

/// Exact division test in `Z[x]`.
fn divides_z(c: &[BigInt], a: &[BigInt]) -> bool {
    let dc = c.len() - 1;
    let lc = &c[dc];
    let mut r = a.to_vec();
    while r.len() > dc {
        let top = r.len() - 1;
        let (q, rem) = r[top].div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let shift = top - dc;
        for (j, cj) in c.iter().enumerate() {
            r[shift + j] -= &q * cj;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r.is_empty()
}

fn to_q_monic(c: &[BigInt]) -> Poly<Q> {
    let lc = c.last().expect("nonzero").clone();
    Poly::new(c.iter().map(|x| Q::new(x.clone(), lc.clone())).collect())
}

/// Monic gcd over `Q` via Brown's modular algorithm on primitive parts.
pub fn gcd_q(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return Poly::one();
    }
    let fa = primitive_integer(a);
    let fb = primitive_integer(b);
    let (la, lb) = (fa.last().expect("nonzero").clone(), fb.last().expect("nonzero").clone());
    let lg = la.gcd(&lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    for p in primes() {
        let pb = BigInt::from(p);
        if (&la % &pb).is_zero() || (&lb % &pb).is_zero() {
            continue;
        }
        let g = fp::gcd(&reduce(&fa, p), &reduce(&fb, p), p);
        if g.len() == 1 {
            return Poly::one();
        }
        let lgp = reduce(std::slice::from_ref(&lg), p)[0];
        let g: Vec<u64> = g.into_iter().map(|c| fp::mul(c, lgp, p)).collect();
        let (h, m) = match acc.take() {
            Some((h, m)) if h.len() == g.len() => (h, m),
            Some((h, m)) if h.len() < g.len() => {
                acc = Some((h, m));
                continue;
            }
            _ => {
                acc = Some((g.iter().map(|&c| BigInt::from(c)).collect(), pb));
                continue;
            }
        };
        let combined: Vec<BigInt> = h.iter().zip(&g).map(|(hc, &gc)| crt(hc, &m, gc, p)).collect();
        let m2 = &m * &pb;
        let lifted: Vec<BigInt> = combined.iter().map(|c| symmetric(c, &m2)).collect();
        let previous: Vec<BigInt> = h.iter().map(|c| symmetric(c, &m)).collect();
        if lifted == previous {
            let content = lifted.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let cand: Vec<BigInt> = lifted.iter().map(|c| c / &content).collect();
            if divides_z(&cand, &fa) && divides_z(&cand, &fb) {
                return to_q_monic(&cand);
            }
        }
        acc = Some((combined, m2));
    }
    unreachable!("prime supply is unbounded")
}

fn bits_of_norm(f: &[BigInt]) -> u64 {
    let max = f.iter().map(|c| c.bits()).max().unwrap_or(0);
    // ||f||_2 <= sqrt(len) * max |c|
    max + (64 - (f.len() as u64).leading_zeros() as u64) / 2 + 1
}

/// Resultant over `Q` by Chinese remaindering against the Hadamard bound.
pub fn resultant_q(a: &Poly<Q>, b: &Poly<Q>) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    let (m, n) = (a.deg() as u64, b.deg() as u64);
    if m == 0 {
        return num_traits::pow(a.lc(), n as usize);
    }
    if n == 0 {
        return num_traits::pow(b.lc(), m as usize);
    }
    let fa = primitive_integer(a);
    let fb = primitive_integer(b);
    // a = ca * fa, b = cb * fb
    let ca = a.lc() / Q::from_integer(fa[fa.len() - 1].clone());
    let cb = b.lc() / Q::from_integer(fb[fb.len() - 1].clone());
    let bound = n * bits_of_norm(&fa) + m * bits_of_norm(&fb) + 2;
    let (la, lb) = (&fa[fa.len() - 1], &fb[fb.len() - 1]);
    let mut h = BigInt::zero();
    let mut modulus = BigInt::one();
    for p in primes() {
        if modulus.bits() > bound {
            break;
        }
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let r = fp::resultant(&reduce(&fa, p), &reduce(&fb, p), p);
        h = crt(&h, &modulus, r, p);
        modulus *= &pb;
    }
    let res = symmetric(&h, &modulus);
    let scale = num_traits::pow(ca, n as usize) * num_traits::pow(cb, m as usize);
    Q::from_integer(res) * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::qi;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = Poly<Q>> {
        proptest::collection::vec((-20i64..=20, 1i64..=4), 0..9)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| Q::new(n.into(), d.into())).collect()))
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert!(primes().take(3).all(|p| p < TOP && is_prime(p)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn gcd_matches_euclid(a in poly(), b in poly(), c in poly()) {
            let (a, b) = (a.mul(&c), b.mul(&c));
            prop_assert_eq!(gcd_q(&a, &b), a.euclid_gcd(&b));
        }

        #[test]
        fn resultant_matches_euclid(a in poly(), b in poly()) {
            prop_assert_eq!(resultant_q(&a, &b), a.euclid_resultant(&b));
        }
    }

    #[test]
    fn large_gcd() {
        let big = Poly::new(vec![Q::new(BigInt::from(10).pow(40) + 1, BigInt::from(7)), qi(3), qi(1)]);
        let a = big.mul(&Poly::from_ints(&[1, 1])).mul(&Poly::from_ints(&[5, 0, 2]));
        let b = big.mul(&Poly::from_ints(&[-1, 1]));
        assert_eq!(gcd_q(&a, &b), big.monic());
    }
}
