//! Evaluation of expression trees into rational functions, differential
//! operators and skew polynomials.

use deltasigma::arith::linalg::Matrix;
use deltasigma::diffgroups::SkewPoly;
use deltasigma::ode::LinDiffOp;
use deltasigma::{BaseField, Derivation, Field, RatFunc, Q};
use num_bigint::BigInt;

use crate::error::{CliError, CliResult};
use crate::parse::{parse, parse_matrix, Expr, Sym};

/// Which symbols denote what in the current base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Env<K> {
    /// Label used in error messages.
    pub context: String,
    /// The transcendental parameter of `K`, if any.
    pub param: Option<Sym>,
    /// A symbol bound to a fixed constant, such as a rational `q`.
    pub constant: Option<(Sym, K)>,
}

impl<K: BaseField> Env<K> {
    pub fn new(context: impl Into<String>) -> Self {
        Env { context: context.into(), param: None, constant: None }
    }

    pub fn with_param(mut self, s: Sym) -> Self {
        assert!(K::param().is_some(), "base field has no parameter");
        self.param = Some(s);
        self
    }

    pub fn with_constant(mut self, s: Sym, value: K) -> Self {
        self.constant = Some((s, value));
        self
    }

    /// Variable names for rendering, outermost first.
    pub fn vars(&self) -> Vec<&'static str> {
        let mut v = vec!["x"];
        v.extend(self.param.map(Sym::name));
        v
    }

    fn scalar(&self, s: Sym) -> Option<K> {
        if self.param == Some(s) {
            return K::param();
        }
        self.constant.as_ref().filter(|(c, _)| *c == s).map(|(_, v)| v.clone())
    }

    fn wrong(&self, s: Sym, what: &str) -> CliError {
        CliError::WrongSymbolForContext { symbol: s.name().into(), context: format!("{} in the {} context", what, self.context) }
    }
}

trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn symbol(&self, s: Sym) -> CliResult<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> CliResult<Self::V>;
}

fn eval<A: Algebra>(alg: &A, e: &Expr) -> CliResult<A::V> {
    Ok(match e {
        Expr::Int(n) => alg.int(n),
        Expr::Sym(s) => alg.symbol(*s)?,
        Expr::Neg(a) => alg.neg(&eval(alg, a)?),
        Expr::Add(a, b) => alg.add(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Sub(a, b) => alg.add(&eval(alg, a)?, &alg.neg(&eval(alg, b)?)),
        Expr::Mul(a, b) => alg.mul(&eval(alg, a)?, &eval(alg, b)?),
        Expr::Div(a, b) => alg.div(&eval(alg, a)?, &eval(alg, b)?)?,
        Expr::Pow(b, k) => {
            let base = eval(alg, b)?;
            let mut acc = alg.int(&BigInt::from(1));
            for _ in 0..k.unsigned_abs() {
                acc = alg.mul(&acc, &base);
            }
            if *k < 0 {
                alg.div(&alg.int(&BigInt::from(1)), &acc)?
            } else {
                acc
            }
        }
    })
}

fn constant<K: BaseField>(n: &BigInt) -> K {
    K::from_rational(&Q::from_integer(n.clone()))
}

struct Functions<'a, K>(&'a Env<K>);

impl<K: BaseField> Algebra for Functions<'_, K> {
    type V = RatFunc<K>;
    fn int(&self, n: &BigInt) -> RatFunc<K> {
        RatFunc::constant(constant(n))
    }
    fn symbol(&self, s: Sym) -> CliResult<RatFunc<K>> {
        if s == Sym::X {
            return Ok(RatFunc::x());
        }
        self.0.scalar(s).map(RatFunc::constant).ok_or_else(|| self.0.wrong(s, "a rational function"))
    }
    fn add(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        a.add(b)
    }
    fn neg(&self, a: &RatFunc<K>) -> RatFunc<K> {
        a.neg()
    }
    fn mul(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        a.mul(b)
    }
    fn div(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> CliResult<RatFunc<K>> {
        if b.is_zero() {
            return Err(deltasigma::Error::DivisionByZero.into());
        }
        Ok(a.div(b))
    }
}

/// Coefficient lists in powers of the derivation; empty is zero.
struct Operators<'a, K>(&'a Env<K>, Derivation);

fn trim<K: BaseField>(mut v: Vec<RatFunc<K>>) -> Vec<RatFunc<K>> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl<K: BaseField> Algebra for Operators<'_, K> {
    type V = Vec<RatFunc<K>>;
    fn int(&self, n: &BigInt) -> Self::V {
        trim(vec![RatFunc::constant(constant(n))])
    }
    fn symbol(&self, s: Sym) -> CliResult<Self::V> {
        match s {
            Sym::Delta => Ok(vec![RatFunc::zero(), RatFunc::one()]),
            Sym::Sigma => Err(self.0.wrong(s, "a differential operator")),
            _ => Ok(trim(vec![Functions(self.0).symbol(s)?])),
        }
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        let n = a.len().max(b.len());
        let get = |v: &Self::V, i: usize| v.get(i).cloned().unwrap_or_else(RatFunc::zero);
        trim((0..n).map(|i| get(a, i).add(&get(b, i))).collect())
    }
    fn neg(&self, a: &Self::V) -> Self::V {
        a.iter().map(|c| c.neg()).collect()
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        match (LinDiffOp::new(self.1, a.clone()), LinDiffOp::new(self.1, b.clone())) {
            (Ok(l), Ok(r)) => trim(l.compose(&r).coeffs().to_vec()),
            _ => Vec::new(),
        }
    }
    fn div(&self, a: &Self::V, b: &Self::V) -> CliResult<Self::V> {
        if a.len() > 1 || b.len() > 1 {
            return Err(CliError::InvalidExpression("only functions can be divided; write 1/f*D instead".into()));
        }
        let f = Functions(self.0);
        let get = |v: &Self::V| v.first().cloned().unwrap_or_else(RatFunc::zero);
        Ok(trim(vec![f.div(&get(a), &get(b))?]))
    }
}

struct Twisted<'a, K>(&'a Env<K>);

impl<K: BaseField> Algebra for Twisted<'_, K> {
    type V = SkewPoly<K>;
    fn int(&self, n: &BigInt) -> SkewPoly<K> {
        SkewPoly::constant(constant(n))
    }
    fn symbol(&self, s: Sym) -> CliResult<SkewPoly<K>> {
        if s == Sym::Sigma {
            return Ok(SkewPoly::monomial(K::one(), 1));
        }
        self.0.scalar(s).map(SkewPoly::constant).ok_or_else(|| self.0.wrong(s, "a skew polynomial"))
    }
    fn add(&self, a: &SkewPoly<K>, b: &SkewPoly<K>) -> SkewPoly<K> {
        a.add(b)
    }
    fn neg(&self, a: &SkewPoly<K>) -> SkewPoly<K> {
        a.neg()
    }
    fn mul(&self, a: &SkewPoly<K>, b: &SkewPoly<K>) -> SkewPoly<K> {
        a.mul(b)
    }
    fn div(&self, a: &SkewPoly<K>, b: &SkewPoly<K>) -> CliResult<SkewPoly<K>> {
        if a.order().unwrap_or(0) > 0 || b.order().unwrap_or(0) > 0 {
            return Err(CliError::InvalidExpression("only coefficients can be divided; write 1/c*S instead".into()));
        }
        let d = b.coeff(0).inv().ok_or(deltasigma::Error::DivisionByZero)?;
        Ok(a.left_scale(&d))
    }
}

pub fn eval_ratfunc<K: BaseField>(e: &Expr, env: &Env<K>) -> CliResult<RatFunc<K>> {
    eval(&Functions(env), e)
}

pub fn eval_operator<K: BaseField>(e: &Expr, env: &Env<K>, derivation: Derivation) -> CliResult<LinDiffOp<K>> {
    let coeffs = eval(&Operators(env, derivation), e)?;
    Ok(LinDiffOp::new(derivation, coeffs)?)
}

pub fn eval_skew<K: BaseField>(e: &Expr, env: &Env<K>) -> CliResult<SkewPoly<K>> {
    eval(&Twisted(env), e)
}

pub fn parse_ratfunc<K: BaseField>(text: &str, env: &Env<K>) -> CliResult<RatFunc<K>> {
    eval_ratfunc(&parse(text)?, env)
}

pub fn parse_operator<K: BaseField>(text: &str, env: &Env<K>, derivation: Derivation) -> CliResult<LinDiffOp<K>> {
    eval_operator(&parse(text)?, env, derivation)
}

pub fn parse_skew<K: BaseField>(text: &str, env: &Env<K>) -> CliResult<SkewPoly<K>> {
    eval_skew(&parse(text)?, env)
}

pub fn parse_function_matrix<K: BaseField>(text: &str, env: &Env<K>) -> CliResult<Matrix<RatFunc<K>>> {
    let rows = parse_matrix(text)?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(deltasigma::Error::NonSquare.into());
    }
    rows.iter().map(|r| r.iter().map(|e| eval_ratfunc(e, env)).collect()).collect()
}
