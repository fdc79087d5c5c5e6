use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;

/// Exact rationals.
pub type Q = BigRational;

/// Shorthand for building a rational from two machine integers.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integral rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A commutative field with exact arithmetic.
///
/// Methods take references so that generic code never has to clone
/// operands just to combine them.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &Q) -> Self;

    /// Rough bit-size used to pick cheap pivots during elimination.
    fn size(&self) -> usize {
        1
    }

    /// Renders the element; `vars` names the tower of indeterminates from
    /// the outermost inwards.
    fn render(&self, vars: &[&str]) -> String;

    /// True when the printed form naturally starts with a minus sign.
    fn looks_negative(&self) -> bool;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv().expect("division by zero"))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Monic gcd in `Self[x]`; fields with a faster method override this.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        a.euclid_gcd(b)
    }

    fn poly_resultant(a: &Poly<Self>, b: &Poly<Self>) -> Self {
        a.euclid_resultant(b)
    }

    /// Integer power, negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv().expect("negative power of zero")
        } else {
            p
        }
    }
}

/// Fields that can serve as the constant field underneath `x`: either the
/// rationals or a rational function field over them in one parameter.
pub trait BaseField: Field {
    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<Q>;

    /// Rational roots common to the polynomial, with multiplicity.
    fn rational_roots(p: &Poly<Self>) -> Vec<(Q, usize)>;

    /// Substitutes `param -> param + by`; the identity when there is no
    /// parameter.
    fn shift_param(&self, by: &Q) -> Self;

    /// The transcendental parameter, when present.
    fn param() -> Option<Self>;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        qi(n)
    }
    fn from_rational(r: &Q) -> Self {
        r.clone()
    }
    fn size(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn render(&self, _vars: &[&str]) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
    fn looks_negative(&self) -> bool {
        self.is_negative()
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        super::modular::gcd_q(a, b)
    }
    fn poly_resultant(a: &Poly<Self>, b: &Poly<Self>) -> Self {
        super::modular::resultant_q(a, b)
    }
}

impl BaseField for Q {
    fn to_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn rational_roots(p: &Poly<Self>) -> Vec<(Q, usize)> {
        super::roots::rational_roots(p)
    }
    fn shift_param(&self, _by: &Q) -> Self {
        self.clone()
    }
    fn param() -> Option<Self> {
        None
    }
}
