//! Transformal dependence criteria with re-checkable certificates.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{linalg, BaseField, Field, Poly, RatFunc, Q};
use crate::context::{ContextCase, DeltaSigmaContext, Derivation, QMode};
use crate::error::{Error, Result};
use crate::ode::{solve_parametric, LinDiffOp};
use crate::reduction::{hermite_reduce, integer_relation_from_roots, is_derivative, logderivative_decompose, unipotent_relation, LogDerivCert};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Dependent,
    Independent,
    /// No relation of order at most the bound exists; higher orders untested.
    UnknownUpToBound(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTag {
    Trivial,
    GaSigma,
    Ga,
}

impl GroupTag {
    pub fn name(self) -> &'static str {
        match self {
            GroupTag::Trivial => "Trivial",
            GroupTag::GaSigma => "GaSigma",
            GroupTag::Ga => "Ga",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<K> {
    /// `sum_ij lambda[i][j] hbar_j sigma^j(b_i) = delta(g)`.
    Additive { lambda: Vec<Vec<K>>, g: RatFunc<K> },
    /// Shape of `a` and an integer relation `r` with
    /// `sum_j r_j hbar_j sigma^j(a) = (1/N) delta(G)/G`, `G = prod sigma^j(f)^r_j`.
    Multiplicative { shape: LogDerivCert<K>, relation: Vec<BigInt> },
    /// `delta(h) - a h = b`.
    Particular { h: RatFunc<K> },
    /// `a = c + delta(f)/f` and `sum_j lambda_j sigma^j(b/f) = delta(h) - c h`.
    Shifted { lambda: Vec<K>, f: RatFunc<K>, c: K, h: RatFunc<K> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<K> {
    pub outcome: Outcome,
    pub certificate: Option<Certificate<K>>,
    pub diagnostics: Vec<String>,
}

impl<K> Verdict<K> {
    fn new(outcome: Outcome) -> Self {
        Verdict { outcome, certificate: None, diagnostics: Vec::new() }
    }

    fn dependent(cert: Certificate<K>) -> Self {
        Verdict { outcome: Outcome::Dependent, certificate: Some(cert), diagnostics: Vec::new() }
    }

    fn note(mut self, msg: impl Into<String>) -> Self {
        self.diagnostics.push(msg.into());
        self
    }
}

fn unsupported<K: BaseField>(op: &'static str, ctx: &DeltaSigmaContext<K>) -> Error {
    Error::UnsupportedContext { op, ctx: ctx.name() }
}

fn hbar_sigma<K: BaseField>(ctx: &DeltaSigmaContext<K>, f: &RatFunc<K>, j: usize) -> RatFunc<K> {
    ctx.sigma_pow(f, j).scale(&ctx.hbar_d(j))
}

impl<K: BaseField> Certificate<K> {
    /// Re-checks the certified identity against the original inputs:
    /// `[b_1, ..., b_n]` for additive, `[a]` for multiplicative and
    /// `[a, b]` for the inhomogeneous certificates.
    pub fn verify(&self, ctx: &DeltaSigmaContext<K>, inputs: &[RatFunc<K>]) -> bool {
        match self {
            Certificate::Additive { lambda, g } => {
                if lambda.len() != inputs.len() || lambda.iter().flatten().all(|l| l.is_zero()) {
                    return false;
                }
                let mut lhs = RatFunc::zero();
                for (b, row) in inputs.iter().zip(lambda) {
                    for (j, l) in row.iter().enumerate() {
                        if !l.is_zero() {
                            lhs = lhs.add(&hbar_sigma(ctx, b, j).scale(l));
                        }
                    }
                }
                lhs == ctx.delta(g)
            }
            Certificate::Multiplicative { shape, relation } => {
                let [a] = inputs else { return false };
                if shape.expand() != *a || relation.iter().all(|r| r.is_zero()) {
                    return false;
                }
                let mut lhs = RatFunc::zero();
                let mut rhs = RatFunc::zero();
                for (j, r) in relation.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let rk = K::from_rational(&Q::from_integer(r.clone()));
                    lhs = lhs.add(&hbar_sigma(ctx, a, j).scale(&rk));
                    let sf = ctx.sigma_pow(&shape.f, j);
                    rhs = rhs.add(&ctx.delta(&sf).div(&sf).scale(&rk));
                }
                let n_inv = K::from_int(shape.n).inv().expect("N nonzero");
                lhs == rhs.scale(&n_inv)
            }
            Certificate::Particular { h } => {
                let [a, b] = inputs else { return false };
                ctx.delta(h).sub(&a.mul(h)) == *b
            }
            Certificate::Shifted { lambda, f, c, h } => {
                let [a, b] = inputs else { return false };
                if f.is_zero() || lambda.iter().all(|l| l.is_zero()) {
                    return false;
                }
                let shape = RatFunc::constant(c.clone()).add(&ctx.delta(f).div(f));
                let bf = b.div(f);
                let lhs = lambda
                    .iter()
                    .enumerate()
                    .fold(RatFunc::zero(), |acc, (j, l)| acc.add(&ctx.sigma_pow(&bf, j).scale(l)));
                shape == *a && lhs == ctx.delta(h).sub(&h.scale(c))
            }
        }
    }
}

/// The simple part `c/x` when it is the only simple pole, else `None`.
fn only_pole_at_zero<K: BaseField>(h: &RatFunc<K>) -> Option<K> {
    if h.is_zero() {
        return Some(K::zero());
    }
    (h.den() == &Poly::x() && h.num().is_constant()).then(|| h.num().coeff(0))
}

pub fn additive_galois_group<K: BaseField>(b: &RatFunc<K>, ctx: &DeltaSigmaContext<K>) -> Result<GroupTag> {
    let h = hermite_reduce(b).simple_part;
    match ctx.case() {
        ContextCase::Shift => Ok(if h.is_zero() { GroupTag::Trivial } else { GroupTag::Ga }),
        ContextCase::QDiffDdx => Ok(match only_pole_at_zero(&h) {
            Some(c) if c.is_zero() => GroupTag::Trivial,
            Some(_) => GroupTag::GaSigma,
            None => GroupTag::Ga,
        }),
        _ => Err(unsupported("additive criterion", ctx)),
    }
}

pub fn additive_dependence<K: BaseField>(b: &RatFunc<K>, ctx: &DeltaSigmaContext<K>) -> Result<Verdict<K>> {
    let tag = additive_galois_group(b, ctx)?;
    let verdict = match tag {
        GroupTag::Trivial => {
            let g = is_derivative(b).expect("no simple poles");
            Verdict::dependent(Certificate::Additive { lambda: vec![vec![K::one()]], g })
        }
        GroupTag::GaSigma => {
            // hbar sigma(b) - b kills the c/x term
            let lambda = vec![K::one().neg(), K::one()];
            let comb = hbar_sigma(ctx, b, 1).sub(b);
            let g = is_derivative(&comb).expect("simple pole at zero cancels");
            Verdict::dependent(Certificate::Additive { lambda: vec![lambda], g })
        }
        GroupTag::Ga => Verdict::new(Outcome::Independent),
    };
    Ok(verdict.note(format!("galois group: {}", tag.name())))
}

/// Normalizes so that the first nonzero entry is one.
fn normalize<K: BaseField>(v: &mut [K]) {
    if let Some(first) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = first.inv().expect("nonzero");
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
    }
}

/// Bounded search for `sum_{i, j <= J} lambda_ij hbar_j sigma^j(b_i) = delta(g)`.
pub fn additive_dependence_multi<K: BaseField>(bs: &[RatFunc<K>], ctx: &DeltaSigmaContext<K>, max_order: usize) -> Result<Verdict<K>> {
    if bs.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !matches!(ctx.case(), ContextCase::Shift | ContextCase::QDiffDdx | ContextCase::ParamShift) {
        return Err(unsupported("additive criterion", ctx));
    }
    for order in 0..=max_order {
        if let Some(v) = relation_at_order(bs, ctx, order) {
            return Ok(v);
        }
    }
    if bs.len() == 1 && matches!(ctx.case(), ContextCase::Shift | ContextCase::QDiffDdx) {
        return Ok(additive_dependence(&bs[0], ctx)?.note("single input decided by the exact criterion"));
    }
    Ok(Verdict::new(Outcome::UnknownUpToBound(max_order)).note(format!("no relation of order <= {max_order}")))
}

/// A relation of order exactly `order` among the `b_i`, if any.
fn relation_at_order<K: BaseField>(bs: &[RatFunc<K>], ctx: &DeltaSigmaContext<K>, order: usize) -> Option<Verdict<K>> {
    let cols = bs.len() * (order + 1);
    let mut terms = Vec::with_capacity(cols);
    let mut simple = Vec::with_capacity(cols);
    for b in bs {
        for j in 0..=order {
            let t = hbar_sigma(ctx, b, j);
            simple.push(hermite_reduce(&t).simple_part);
            terms.push(t);
        }
    }
    let mut den = Poly::<K>::one();
    for h in &simple {
        den = den.lcm(h.den());
    }
    let polys: Vec<Poly<K>> = simple.iter().map(|h| h.num().mul(&den.exact_div(h.den()).expect("lcm"))).collect();
    let rows = polys.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let matrix: Vec<Vec<K>> = (0..rows).map(|i| polys.iter().map(|p| p.coeff(i)).collect()).collect();
    let null = if rows == 0 {
        vec![(0..cols).map(|i| if i == 0 { K::one() } else { K::zero() }).collect()]
    } else {
        linalg::nullspace(&matrix, cols)
    };
    let mut v = null.into_iter().next()?;
    normalize(&mut v);
    let comb = terms.iter().zip(&v).fold(RatFunc::zero(), |acc, (t, l)| if l.is_zero() { acc } else { acc.add(&t.scale(l)) });
    let g = is_derivative(&comb).expect("simple parts cancel");
    let lambda = v.chunks(order + 1).map(|c| c.to_vec()).collect();
    Some(Verdict::dependent(Certificate::Additive { lambda, g }).note(format!("relation found at order {order}")))
}

/// Integer relation annihilating the non-logarithmic part of the shape.
fn relation_for<K: BaseField>(shape: &LogDerivCert<K>, ctx: &DeltaSigmaContext<K>) -> Vec<BigInt> {
    let q = match ctx.q_mode() {
        Some(QMode::Algebraic(q)) => q.clone(),
        _ => {
            let m = if ctx.case() == ContextCase::Shift { shape.poly_part.degree().map_or(1, |d| d + 1) } else { 1 };
            return unipotent_relation(m);
        }
    };
    let ddx = shape.derivation == Derivation::Ddx;
    let qpow = |e: i64| Field::powi(&q, e);
    let mut eig: Vec<Q> = Vec::new();
    let shift = if ddx { 1 } else { 0 };
    for (i, c) in shape.poly_part.coeffs().iter().enumerate() {
        if !c.is_zero() {
            eig.push(qpow(i as i64 + shift));
        }
    }
    for (k, c) in shape.laurent_part.iter().enumerate() {
        if !c.is_zero() {
            eig.push(qpow(-(k as i64 + 1) + shift));
        }
    }
    if !shape.c.is_zero() {
        eig.push(Q::from_integer(1.into()));
    }
    eig.sort();
    eig.dedup();
    if eig.is_empty() {
        return unipotent_relation(1);
    }
    integer_relation_from_roots(&eig)
}

pub fn multiplicative_dependence<K: BaseField>(a: &RatFunc<K>, ctx: &DeltaSigmaContext<K>) -> Result<Verdict<K>> {
    if ctx.case() == ContextCase::ParamShift {
        return Err(unsupported("multiplicative criterion", ctx));
    }
    Ok(match logderivative_decompose(a, ctx) {
        Some(shape) => {
            let relation = relation_for(&shape, ctx);
            Verdict::dependent(Certificate::Multiplicative { shape, relation })
        }
        None => Verdict::new(Outcome::Independent).note("no logarithmic-derivative shape"),
    })
}

/// Dependence of solutions of `delta(z) = a z + b`.
pub fn inhomogeneous_first_order<K: BaseField>(
    a: &RatFunc<K>,
    b: &RatFunc<K>,
    ctx: &DeltaSigmaContext<K>,
    max_order: usize,
) -> Result<Verdict<K>> {
    if ctx.case() == ContextCase::ParamShift {
        return Err(unsupported("inhomogeneous criterion", ctx));
    }
    let der = ctx.derivation();
    let op = LinDiffOp::first_order(der, a);
    let particular = || -> Result<Option<RatFunc<K>>> {
        let sol = solve_parametric(&op, std::slice::from_ref(b), None)?;
        Ok(sol.particular.into_iter().next().map(|(h, _)| h))
    };
    let hom = multiplicative_dependence(a, ctx)?;
    let Some(Certificate::Multiplicative { shape, .. }) = hom.certificate else {
        let mut v = Verdict::new(Outcome::Independent).note("homogeneous part is independent");
        if particular()?.is_some() {
            v = v.note("a rational particular solution exists");
        }
        return Ok(v);
    };
    if b.is_zero() {
        return Ok(Verdict::dependent(Certificate::Particular { h: RatFunc::zero() }));
    }
    if let Some(h) = particular()? {
        return Ok(Verdict::dependent(Certificate::Particular { h }).note("rational particular solution"));
    }
    let constant_shape = shape.poly_part.deg() <= 0 && shape.laurent_part.iter().all(|c| c.is_zero());
    if ctx.commutes() && constant_shape {
        if let Some(f) = shape.integral_root() {
            let c = shape.poly_part.coeff(0).add(&shape.c);
            let bf = b.div(&f);
            let op = LinDiffOp::first_order(der, &RatFunc::constant(c.clone()));
            for order in 1..=max_order {
                let rhs: Vec<RatFunc<K>> = (0..=order).map(|j| ctx.sigma_pow(&bf, j)).collect();
                let sol = solve_parametric(&op, &rhs, None)?;
                if let Some((h, mut lambda)) = sol.particular.into_iter().next() {
                    let inv = lambda.iter().find(|l| !l.is_zero()).expect("nonzero lambda").inv().expect("nonzero");
                    normalize(&mut lambda);
                    let h = h.scale(&inv);
                    return Ok(Verdict::dependent(Certificate::Shifted { lambda, f, c, h }).note(format!("integral residues; relation of order {order}")));
                }
            }
            return Ok(Verdict::new(Outcome::UnknownUpToBound(max_order)).note(format!("integral residues; no relation of order <= {max_order}")));
        }
        if ctx.case() == ContextCase::QDiffEuler && ctx.is_transcendental() {
            return Ok(Verdict::new(Outcome::Independent).note("non-integral residues and no rational particular solution"));
        }
    }
    Ok(Verdict::new(Outcome::UnknownUpToBound(max_order)).note("no exact criterion applies in this context"))
}
