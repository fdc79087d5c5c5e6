//! Hermite reduction, residue analysis and logarithmic-derivative shapes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{qi, BaseField, Field, Poly, RatFunc, Q};
use crate::context::{ContextCase, DeltaSigmaContext, Derivation};

/// `f = g' + h + p` with `h` proper and squarefree in the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteDecomposition<K> {
    pub rational_part: RatFunc<K>,
    pub simple_part: RatFunc<K>,
    pub polynomial_part: Poly<K>,
}

impl<K: BaseField> HermiteDecomposition<K> {
    /// Recombines `g' + h + p`.
    pub fn recombine(&self) -> RatFunc<K> {
        self.rational_part
            .derivative()
            .add(&self.simple_part)
            .add(&RatFunc::from_poly(self.polynomial_part.clone()))
    }
}

/// Solves `s*a + t*b = c` with `deg s < deg b`, for coprime `a`, `b`.
fn bezout<K: BaseField>(a: &Poly<K>, b: &Poly<K>, c: &Poly<K>) -> (Poly<K>, Poly<K>) {
    let (g, s0, _) = a.ext_gcd(b);
    debug_assert!(g.is_one(), "bezout on non-coprime pair");
    let s = s0.mul(c).rem(b);
    let t = c.sub(&s.mul(a)).exact_div(b).expect("bezout remainder");
    (s, t)
}

pub fn hermite_reduce<K: BaseField>(f: &RatFunc<K>) -> HermiteDecomposition<K> {
    let (p, proper) = f.split_polynomial();
    if proper.is_zero() {
        return HermiteDecomposition {
            rational_part: RatFunc::zero(),
            simple_part: RatFunc::zero(),
            polynomial_part: p,
        };
    }
    let mut a = proper.num().clone();
    let mut d = proper.den().clone();
    let mut g = RatFunc::<K>::zero();
    for (v, i) in proper.den().squarefree_decomposition() {
        if i < 2 {
            continue;
        }
        let u = d.exact_div(&v.pow(i as u32)).expect("squarefree factor");
        let uv = u.mul(&v.derivative());
        for j in (1..i).rev() {
            let jk = K::from_int(j as i64);
            let rhs = a.scale(&jk.inv().expect("nonzero").neg());
            let (b, c) = bezout(&uv, &v, &rhs);
            g = g.add(&RatFunc::new(b.clone(), v.pow(j as u32)));
            a = c.scale(&jk).neg().sub(&u.mul(&b.derivative()));
        }
        d = u.mul(&v);
    }
    HermiteDecomposition { rational_part: g, simple_part: RatFunc::new(a, d), polynomial_part: p }
}

/// Antiderivative of a polynomial with zero constant term.
pub fn integrate_poly<K: BaseField>(p: &Poly<K>) -> Poly<K> {
    let mut out = vec![K::zero()];
    for (i, c) in p.coeffs().iter().enumerate() {
        out.push(c.div(&K::from_int(i as i64 + 1)));
    }
    Poly::new(out)
}

/// `Some(g)` with `g' = f` when `f` is a derivative in `K(x)`.
pub fn is_derivative<K: BaseField>(f: &RatFunc<K>) -> Option<RatFunc<K>> {
    let hd = hermite_reduce(f);
    hd.simple_part
        .is_zero()
        .then(|| hd.rational_part.add(&RatFunc::from_poly(integrate_poly(&hd.polynomial_part))))
}

/// A rational residue together with the product of the simple poles
/// carrying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue<K> {
    pub value: Q,
    pub factor: Poly<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData<K> {
    pub hermite: HermiteDecomposition<K>,
    /// `res_x(D, N - z D')` for the simple part `N/D`, as a polynomial in `z`.
    pub rt_resultant: Poly<K>,
    pub rational_residues: Vec<Residue<K>>,
    pub all_residues_rational: bool,
    pub all_poles_simple: bool,
    pub pole_at_zero: bool,
    pub pole_order_at_zero: usize,
    pub has_polynomial_part: bool,
}

/// Rothstein–Trager resultant of a proper `num/den` with squarefree monic
/// `den`, interpolated from its values at `z = 0..=deg den`.
pub fn rothstein_trager<K: BaseField>(num: &Poly<K>, den: &Poly<K>) -> Poly<K> {
    let dd = den.derivative();
    let n = den.degree().unwrap_or(0);
    let points: Vec<(K, K)> = (0..=n as i64)
        .map(|z| {
            let zk = K::from_int(z);
            let arg = num.sub(&dd.scale(&zk));
            let val = if arg.is_zero() { K::zero() } else { den.resultant(&arg) };
            (zk, val)
        })
        .collect();
    Poly::interpolate(&points)
}

/// Residues of the simple part that are rational, with their
/// Lazard–Rioboo–Trager factors `gcd(D, N - rho D')`.
fn rational_residues<K: BaseField>(num: &Poly<K>, den: &Poly<K>, rt: &Poly<K>) -> (Vec<Residue<K>>, usize) {
    let dd = den.derivative();
    let mut total = 0;
    let mut out = Vec::new();
    for (rho, mult) in K::rational_roots(rt) {
        let factor = den.gcd(&num.sub(&dd.scale(&K::from_rational(&rho))));
        total += mult;
        out.push(Residue { value: rho, factor });
    }
    (out, total)
}

pub fn residue_analysis<K: BaseField>(f: &RatFunc<K>) -> ResidueData<K> {
    let hermite = hermite_reduce(f);
    let h = &hermite.simple_part;
    let (rt, residues, all_rational) = if h.is_zero() {
        (Poly::one(), Vec::new(), true)
    } else {
        let rt = rothstein_trager(h.num(), h.den());
        let (res, total) = rational_residues(h.num(), h.den(), &rt);
        let full = total as i64 == rt.deg();
        (rt, res, full)
    };
    let order0 = f.den().valuation().unwrap_or(0);
    ResidueData {
        all_poles_simple: hermite.rational_part.is_zero(),
        has_polynomial_part: !hermite.polynomial_part.is_zero(),
        hermite,
        rt_resultant: rt,
        rational_residues: residues,
        all_residues_rational: all_rational,
        pole_at_zero: order0 > 0,
        pole_order_at_zero: order0,
    }
}

/// `f = P + L + R`: polynomial part, principal part at zero (`L[k]` is the
/// coefficient of `x^-(k+1)`), and a proper remainder whose denominator is
/// prime to `x`.
pub fn split_at_zero<K: BaseField>(f: &RatFunc<K>) -> (Poly<K>, Vec<K>, RatFunc<K>) {
    let (p, proper) = f.split_polynomial();
    let m = proper.den().valuation().unwrap_or(0);
    if m == 0 || proper.is_zero() {
        return (p, Vec::new(), proper);
    }
    let xm = Poly::monomial(K::one(), m);
    let d1 = proper.den().shift_down(m);
    // A/(x^m D1) = B/x^m + C/D1 with B D1 + C x^m = A
    let (b, c) = bezout(&d1, &xm, proper.num());
    let principal = (1..=m).map(|k| b.coeff(m - k)).collect();
    (p, principal, RatFunc::new(c, d1))
}

/// Writes a proper `r` with only simple poles and rational residues as
/// `sum rho_i F_i'/F_i`.
pub fn simple_log_parts<K: BaseField>(r: &RatFunc<K>) -> Option<Vec<Residue<K>>> {
    if r.is_zero() {
        return Some(Vec::new());
    }
    if !r.is_proper() || !r.den().squarefree_part().eq(r.den()) {
        return None;
    }
    let rt = rothstein_trager(r.num(), r.den());
    let (res, total) = rational_residues(r.num(), r.den(), &rt);
    (total as i64 == rt.deg()).then_some(res)
}

fn lcm_of_denominators(values: impl Iterator<Item = Q>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Certified shape
/// `a = P + sum_k Q_k x^-(k+1) + c*iota + (1/N) delta(f)/f`
/// where `iota = 1/x` for `d/dx` and `iota = 1` for `x d/dx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivCert<K> {
    pub derivation: Derivation,
    pub poly_part: Poly<K>,
    pub laurent_part: Vec<K>,
    pub c: K,
    pub n: i64,
    pub f: RatFunc<K>,
    /// Residues at poles other than zero, with their factors of `f`.
    pub residues: Vec<Residue<K>>,
    /// Integer exponent of `x` inside `f`.
    pub zero_exponent: i64,
}

impl<K: BaseField> LogDerivCert<K> {
    /// The right-hand side of the certified identity.
    pub fn expand(&self) -> RatFunc<K> {
        let x = RatFunc::<K>::x();
        let mut acc = RatFunc::from_poly(self.poly_part.clone());
        let mut xinv_pow = RatFunc::one();
        let xinv = RatFunc::one().div(&x);
        for coef in &self.laurent_part {
            xinv_pow = xinv_pow.mul(&xinv);
            acc = acc.add(&xinv_pow.scale(coef));
        }
        let iota = match self.derivation {
            Derivation::Ddx => xinv,
            Derivation::Euler => RatFunc::one(),
        };
        acc = acc.add(&iota.scale(&self.c));
        let logd = self.derivation.apply(&self.f).div(&self.f);
        acc.add(&logd.scale(&K::from_int(self.n).inv().expect("N nonzero")))
    }

    /// True when `(1/N) delta(f)/f` is itself a logarithmic derivative of a
    /// rational function, i.e. every scaled residue is an integer.
    pub fn integral_residues(&self) -> bool {
        let n = Q::from_integer(self.n.into());
        self.residues.iter().all(|r| (&r.value / &n).is_integer())
    }

    /// The rational function `F` with `(1/N) delta(f)/f = delta(F)/F`, when
    /// the residues are integral.
    pub fn integral_root(&self) -> Option<RatFunc<K>> {
        if !self.integral_residues() || self.zero_exponent % self.n != 0 {
            return None;
        }
        let mut num = Poly::monomial(K::one(), 0);
        let mut den = Poly::one();
        let e0 = self.zero_exponent / self.n;
        let xp = Poly::monomial(K::one(), e0.unsigned_abs() as usize);
        if e0 >= 0 {
            num = num.mul(&xp);
        } else {
            den = den.mul(&xp);
        }
        for r in &self.residues {
            let e = r.value.to_integer().to_i64().expect("small exponent") / self.n;
            let fp = r.factor.pow(e.unsigned_abs() as u32);
            if e >= 0 {
                num = num.mul(&fp);
            } else {
                den = den.mul(&fp);
            }
        }
        Some(RatFunc::new(num, den))
    }
}

/// Builds `f = x^zero_exp * prod F_i^(N rho_i)`.
fn assemble_f<K: BaseField>(residues: &[Residue<K>], n: &BigInt, zero_exp: i64) -> RatFunc<K> {
    let mut num = Poly::one();
    let mut den = Poly::one();
    let xp = Poly::monomial(K::one(), zero_exp.unsigned_abs() as usize);
    if zero_exp >= 0 {
        num = num.mul(&xp);
    } else {
        den = den.mul(&xp);
    }
    let nq = Q::from_integer(n.clone());
    for r in residues {
        let e = (&r.value * &nq).to_integer().to_i64().expect("small exponent");
        let fp = r.factor.pow(e.unsigned_abs() as u32);
        if e >= 0 {
            num = num.mul(&fp);
        } else {
            den = den.mul(&fp);
        }
    }
    RatFunc::new(num, den)
}

/// Decomposes `a` into the logarithmic-derivative shape admissible in the
/// context, or returns `None` when no such shape exists.
pub fn logderivative_decompose<K: BaseField>(a: &RatFunc<K>, ctx: &DeltaSigmaContext<K>) -> Option<LogDerivCert<K>> {
    match ctx.case() {
        ContextCase::Shift | ContextCase::ParamShift => {
            let (p, proper) = a.split_polynomial();
            let residues = simple_log_parts(&proper)?;
            let n = lcm_of_denominators(residues.iter().map(|r| r.value.clone()));
            Some(LogDerivCert {
                derivation: Derivation::Ddx,
                poly_part: p,
                laurent_part: Vec::new(),
                c: K::zero(),
                n: n.to_i64()?,
                f: assemble_f(&residues, &n, 0),
                residues: scale_residues(&residues, &n),
                zero_exponent: 0,
            })
        }
        ContextCase::QDiffDdx => decompose_at_zero(a, ctx.is_transcendental(), Derivation::Ddx),
        ContextCase::QDiffEuler => {
            let b = a.div(&RatFunc::x());
            decompose_at_zero(&b, ctx.is_transcendental(), Derivation::Euler)
        }
    }
}

fn scale_residues<K: BaseField>(residues: &[Residue<K>], n: &BigInt) -> Vec<Residue<K>> {
    let nq = Q::from_integer(n.clone());
    residues.iter().map(|r| Residue { value: &r.value * &nq, factor: r.factor.clone() }).collect()
}

/// Shape analysis of the `d/dx` log-derivative `b` in the q-dilation cases.
/// For `Derivation::Euler`, `b = a/x` and the certificate is translated back
/// to `a`.
fn decompose_at_zero<K: BaseField>(b: &RatFunc<K>, transcendental: bool, der: Derivation) -> Option<LogDerivCert<K>> {
    let (p, principal, rest) = split_at_zero(b);
    let residues = simple_log_parts(&rest)?;
    let n = lcm_of_denominators(residues.iter().map(|r| r.value.clone()));
    let n_i64 = n.to_i64()?;
    if transcendental {
        if !p.is_zero() || principal.len() > 1 {
            return None;
        }
        let rho0 = principal.first().cloned().unwrap_or_else(K::zero);
        let (c, zero_exp) = match (der, rho0.to_rational()) {
            (Derivation::Euler, Some(r)) => {
                let fl = r.floor();
                let shift = fl.to_integer().to_i64()?;
                (K::from_rational(&(&r - &fl)), shift * n_i64)
            }
            _ => (rho0, 0),
        };
        return Some(LogDerivCert {
            derivation: der,
            poly_part: Poly::zero(),
            laurent_part: Vec::new(),
            c,
            n: n_i64,
            f: assemble_f(&residues, &n, zero_exp),
            residues: scale_residues(&residues, &n),
            zero_exponent: zero_exp,
        });
    }
    let (poly_part, laurent_part) = match der {
        Derivation::Ddx => (p, principal),
        Derivation::Euler => {
            // multiply back by x: x*P + x*L
            let mut poly = p.shift_up(1);
            if let Some(first) = principal.first() {
                poly = poly.add(&Poly::constant(first.clone()));
            }
            (poly, principal.iter().skip(1).cloned().collect())
        }
    };
    Some(LogDerivCert {
        derivation: der,
        poly_part,
        laurent_part,
        c: K::zero(),
        n: n_i64,
        f: assemble_f(&residues, &n, 0),
        residues: scale_residues(&residues, &n),
        zero_exponent: 0,
    })
}

/// Coefficients (low degree first) of the primitive integer polynomial
/// whose roots are the given rationals.
pub fn integer_relation_from_roots(roots: &[Q]) -> Vec<BigInt> {
    let mut poly = Poly::<Q>::one();
    for r in roots {
        poly = poly.mul(&Poly::new(vec![-r.clone(), qi(1)]));
    }
    crate::arith::roots::primitive_integer(&poly)
}

/// Binomial coefficients of `(X - 1)^m`.
pub fn unipotent_relation(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c;
        }
        row = next;
    }
    row
}
