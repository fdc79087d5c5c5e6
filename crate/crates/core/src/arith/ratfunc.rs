use std::ops;

use super::field::{BaseField, Field, Q};
use super::poly::{is_sum, Poly};

/// Reduced fraction of polynomials: `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Normalizes `num/den`. Panics when `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd"), den.exact_div(&g).expect("gcd"))
        };
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<F> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.num.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    /// True when `deg num < deg den`.
    pub fn is_proper(&self) -> bool {
        self.num.deg() < self.den.deg()
    }

    /// Splits into polynomial part and proper part.
    pub fn split_polynomial(&self) -> (Poly<F>, RatFunc<F>) {
        let (quo, r) = self.num.div_rem(&self.den);
        (quo, RatFunc { num: r, den: self.den.clone() }.renormalized())
    }

    fn renormalized(self) -> Self {
        if self.num.is_zero() {
            Self::from_poly(Poly::zero())
        } else {
            self
        }
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // (n/d)' = (n' d - n d') / d^2, reduce by g = gcd(d, d') first
        let dprime = self.den.derivative();
        let g = self.den.gcd(&dprime);
        let d_over_g = self.den.exact_div(&g).expect("gcd");
        let dprime_over_g = dprime.exact_div(&g).expect("gcd");
        let num = self.num.derivative().mul(&d_over_g).sub(&self.num.mul(&dprime_over_g));
        Self::new(num, self.den.mul(&d_over_g))
    }

    /// `f(a*x + b)`.
    pub fn compose_linear(&self, a: &F, b: &F) -> Self {
        Self::new(self.num.compose_linear(a, b), self.den.compose_linear(a, b))
    }

    /// Applies a field automorphism of the coefficients to both parts.
    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::new(self.num.map(&f), self.den.map(&f))
    }

    pub fn eval(&self, at: &F) -> Option<F> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at).div(&d))
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplicity of the pole at the root(s) of the squarefree `p`,
    /// read off as the exact power of `p` dividing the denominator.
    pub fn pole_order_at(&self, p: &Poly<F>) -> usize {
        let mut k = 0;
        let mut d = self.den.clone();
        while let Some(quo) = d.exact_div(p) {
            if d.is_constant() {
                break;
            }
            d = quo;
            k += 1;
        }
        k
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).expect("gcd");
        let b = rhs.den.exact_div(&g).expect("gcd");
        Self::new(self.num.mul(&b).add(&rhs.num.mul(&a)), a.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd");
        let d2 = rhs.den.exact_div(&g1).expect("gcd");
        let n2 = rhs.num.exact_div(&g2).expect("gcd");
        let d1 = self.den.exact_div(&g2).expect("gcd");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.lc();
        let inv = lc.inv().expect("nonzero");
        Some(RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }
    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }
    fn from_rational(r: &Q) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn size(&self) -> usize {
        let part = |p: &Poly<F>| p.coeffs().iter().map(|c| c.size()).sum::<usize>();
        part(&self.num) + part(&self.den)
    }
    fn render(&self, vars: &[&str]) -> String {
        let n = self.num.render(vars);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.render(vars);
        let wrap = |s: String, always: bool| {
            if always || is_sum(&s) {
                format!("({s})")
            } else {
                s
            }
        };
        // a denominator with a product or quotient needs brackets too
        let den_compound = is_sum(&d) || d.contains('*') || d.contains('/');
        format!("{}/{}", wrap(n, false), wrap(d, den_compound))
    }
    fn looks_negative(&self) -> bool {
        self.num.lc().looks_negative()
    }
}

impl BaseField for RatFunc<Q> {
    fn to_rational(&self) -> Option<Q> {
        self.as_constant()
    }

    fn rational_roots(p: &Poly<Self>) -> Vec<(Q, usize)> {
        if p.is_zero() {
            return Vec::new();
        }
        // clear parameter denominators, then a rational root must annihilate
        // every coefficient of the parameter expansion
        let mut common = Poly::<Q>::one();
        for c in p.coeffs() {
            common = common.lcm(c.den());
        }
        let cleared: Vec<Poly<Q>> = p
            .coeffs()
            .iter()
            .map(|c| c.num().mul(&common.exact_div(c.den()).expect("lcm")))
            .collect();
        let top = cleared.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        let mut g = Poly::<Q>::zero();
        for k in 0..top {
            let slice = Poly::new(cleared.iter().map(|c| c.coeff(k)).collect());
            g = g.gcd(&slice);
            if g.is_one() {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        for (root, _) in super::roots::rational_roots(&g) {
            let lin = Poly::new(vec![RatFunc::constant(root.clone()).neg(), RatFunc::one()]);
            let mut rest = p.clone();
            let mut mult = 0;
            while let Some(quo) = rest.exact_div(&lin) {
                rest = quo;
                mult += 1;
            }
            out.push((root, mult));
        }
        out
    }

    fn shift_param(&self, by: &Q) -> Self {
        if by.is_zero() || self.num.is_constant() && self.den.is_one() {
            return self.clone();
        }
        self.compose_linear(&Field::one(), by)
    }

    fn param() -> Option<Self> {
        Some(RatFunc::x())
    }
}

impl<F: Field> ops::Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: Self) -> RatFunc<F> {
        Field::add(self, rhs)
    }
}

impl<F: Field> ops::Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: Self) -> RatFunc<F> {
        Field::sub(self, rhs)
    }
}

impl<F: Field> ops::Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: Self) -> RatFunc<F> {
        Field::mul(self, rhs)
    }
}

impl<F: Field> ops::Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: Self) -> RatFunc<F> {
        Field::div(self, rhs)
    }
}

impl<F: Field> ops::Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        Field::neg(self)
    }
}
