//! Command line surface and dispatch to the library.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltasigma::arith::linalg::Matrix;
use deltasigma::criteria::{self, Certificate, Outcome, Verdict};
use deltasigma::diffgroups::{self, GaGmCase, GaSubgroup, MupRelation, SkewPoly};
use deltasigma::integrability::{self as integ, IntegrabilityOutcome, IntegrabilityVerdict};
use deltasigma::ode;
use deltasigma::reduction::{self, LogDerivCert};
use deltasigma::{BaseField, ContextCase, DeltaSigmaContext, Field, QFn, QMode, RatFunc, Q};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::eval::{parse_function_matrix, parse_operator, parse_ratfunc, parse_skew, Env};
use crate::parse::Sym;
use crate::print::{print_operator, print_poly, print_ratfunc, print_scalar, print_skew};

#[derive(Parser, Debug, Clone)]
#[command(name = "deltasigma", version, about = "Exact dependence, integrability and difference group computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CtxArg {
    Shift,
    QdiffDdx,
    QdiffEuler,
    ParamShift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QArg {
    Transcendental,
    Rational(Q),
}

fn parse_q(s: &str) -> Result<QArg, String> {
    if s == "transcendental" {
        return Ok(QArg::Transcendental);
    }
    s.parse::<Q>().map(QArg::Rational).map_err(|_| format!("expected 'transcendental' or a rational p/q, got '{s}'"))
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    #[arg(long, global = true, value_enum, default_value_t = CtxArg::Shift)]
    pub ctx: CtxArg,
    /// `transcendental` or a rational number other than 0 and +-1.
    #[arg(long, global = true, default_value = "transcendental", value_parser = parse_q)]
    pub q: QArg,
    #[arg(long, global = true, default_value_t = 3)]
    pub max_order: usize,
    #[arg(long, global = true, default_value_t = 3)]
    pub d_max: usize,
    #[arg(long, global = true)]
    pub json: bool,
    /// Re-check every certificate before emitting it.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hermite decomposition f = g' + h + p.
    Hermite {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Rothstein-Trager resultant and rational residues.
    Residues {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Dependence of a primitive of b over its transforms.
    DepAdd {
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Joint dependence of several primitives, up to --max-order. Put `--`
    /// before inputs that start with a minus sign.
    DepAddMulti {
        #[arg(required = true)]
        bs: Vec<String>,
    },
    /// Galois group of the primitive of b.
    GaloisAdd {
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Dependence of an exponential of a primitive of a.
    DepMul {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Dependence for delta(z) = a z + b.
    Ishizaki {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Rational solutions of L(y) = 0 or L(y) = rhs.
    RatsolsOde {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<String>,
    },
    /// Rational solutions in Q(t) of a recurrence written in S.
    RatsolsRec {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Symmetric power of an operator.
    Sympower {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// sigma^d-integrability of delta(Y) = A Y; sweeps d = 1..=--d-max without --d.
    Integrable {
        matrix: String,
        #[arg(long)]
        d: Option<usize>,
    },
    /// sigma^s-integrability of delta^2 - r via the reduced system.
    Order2 {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        s: usize,
    },
    /// Airy obstruction for s given as N, A..B or `symbolic`.
    Airy {
        #[arg(long, default_value = "1..10")]
        s: String,
    },
    /// Integrability sweep of a second-order operator and its symmetric square.
    Dichotomy {
        #[arg(allow_hyphen_values = true)]
        op: String,
        /// Skip the rational-solution sanity check.
        #[arg(long)]
        no_sanity: bool,
    },
    /// Greatest common right divisor and least common left multiple.
    SkewGcd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether Q vanishes on the subgroup cut out by P.
    GaMember {
        #[arg(value_name = "Q", allow_hyphen_values = true)]
        element: String,
        #[arg(value_name = "P", allow_hyphen_values = true)]
        generator: String,
    },
    /// Preperiod and period forced by a relation on a p-th root of unity.
    MupPeriod {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
    },
    /// Shape of a subgroup of Ga x| Gm from its defining skew polynomial.
    ClassifyGagm {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Right-hand side whose primitive has group cut out by L.
    RealizeGa {
        #[arg(allow_hyphen_values = true)]
        l: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hermite { .. } => "hermite",
            Command::Residues { .. } => "residues",
            Command::DepAdd { .. } => "dep-add",
            Command::DepAddMulti { .. } => "dep-add-multi",
            Command::GaloisAdd { .. } => "galois-add",
            Command::DepMul { .. } => "dep-mul",
            Command::Ishizaki { .. } => "ishizaki",
            Command::RatsolsOde { .. } => "ratsols-ode",
            Command::RatsolsRec { .. } => "ratsols-rec",
            Command::Sympower { .. } => "sympower",
            Command::Integrable { .. } => "integrable",
            Command::Order2 { .. } => "order2",
            Command::Airy { .. } => "airy",
            Command::Dichotomy { .. } => "dichotomy",
            Command::SkewGcd { .. } => "skew-gcd",
            Command::GaMember { .. } => "ga-member",
            Command::MupPeriod { .. } => "mup-period",
            Command::ClassifyGagm { .. } => "classify-gagm",
            Command::RealizeGa { .. } => "realize-ga",
        }
    }

    fn kind(&self) -> Kind {
        match self {
            Command::RatsolsRec { .. } | Command::SkewGcd { .. } | Command::GaMember { .. } | Command::ClassifyGagm { .. } | Command::RealizeGa { .. } => {
                Kind::Skew
            }
            Command::Airy { .. } | Command::MupPeriod { .. } => Kind::Standalone,
            _ => Kind::Scalar,
        }
    }
}

enum Kind {
    Scalar,
    Skew,
    Standalone,
}

/// One emitted report. Serializes to the shipped schema.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub context: Value,
    pub input: Map<String, Value>,
    pub verdict: String,
    pub certificate: Option<Value>,
    /// Command-specific results, placed at the top level.
    pub fields: Map<String, Value>,
    pub diagnostics: Vec<String>,
    pub error: Option<Value>,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, context: Value) -> Self {
        Report {
            command: command.into(),
            context,
            input: Map::new(),
            verdict: String::new(),
            certificate: None,
            fields: Map::new(),
            diagnostics: Vec::new(),
            error: None,
            exit_code: 0,
        }
    }

    fn field(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.insert(key.into(), v.into());
    }

    fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.input.insert(key.into(), v.into());
    }

    fn fail(&mut self, e: &CliError) {
        self.verdict = "Error".into();
        self.certificate = None;
        self.error = Some(json!({ "code": e.code(), "message": e.to_string() }));
        self.exit_code = e.exit_code();
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("context".into(), self.context.clone());
        m.insert("input".into(), Value::Object(self.input.clone()));
        m.insert("verdict".into(), json!(self.verdict));
        if let Some(c) = &self.certificate {
            m.insert("certificate".into(), c.clone());
        }
        m.insert("diagnostics".into(), json!(self.diagnostics));
        if let Some(e) = &self.error {
            m.insert("error".into(), e.clone());
        }
        for (k, v) in &self.fields {
            m.entry(k.clone()).or_insert_with(|| v.clone());
        }
        Value::Object(m)
    }

    /// Plain `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nverdict: {}\n", self.command, self.verdict);
        if let Some(e) = &self.error {
            out.push_str(&format!("error[{}]: {}\n", e["code"].as_str().unwrap_or(""), e["message"].as_str().unwrap_or("")));
        }
        for (k, v) in &self.input {
            out.push_str(&format!("input {k}: {}\n", text_value(v)));
        }
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}: {}\n", text_value(v)));
        }
        if let Some(c) = &self.certificate {
            out.push_str(&format!("certificate: {c}\n"));
        }
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn context_json(g: &GlobalOpts, kind: &Kind) -> Value {
    match kind {
        Kind::Skew => json!({ "name": "param-shift" }),
        Kind::Standalone => json!({ "name": "shift" }),
        Kind::Scalar => {
            let name = ctx_case(g.ctx).name();
            match (g.ctx, &g.q) {
                (CtxArg::QdiffDdx | CtxArg::QdiffEuler, QArg::Transcendental) => json!({ "name": name, "q": "transcendental" }),
                (CtxArg::QdiffDdx | CtxArg::QdiffEuler, QArg::Rational(v)) => json!({ "name": name, "q": v.render(&[]) }),
                _ => json!({ "name": name }),
            }
        }
    }
}

fn ctx_case(c: CtxArg) -> ContextCase {
    match c {
        CtxArg::Shift => ContextCase::Shift,
        CtxArg::QdiffDdx => ContextCase::QDiffDdx,
        CtxArg::QdiffEuler => ContextCase::QDiffEuler,
        CtxArg::ParamShift => ContextCase::ParamShift,
    }
}

/// Runs one command. Errors are folded into the report.
pub fn run(cli: &Cli) -> Report {
    let kind = cli.command.kind();
    let mut rep = Report::new(cli.command.name(), context_json(&cli.global, &kind));
    let res = match kind {
        Kind::Scalar => run_scalar_dispatch(cli, &mut rep),
        Kind::Skew => {
            let env = Env::<QFn>::new("param-shift").with_param(Sym::T);
            run_skew(&cli.command, &cli.global, &env, &mut rep)
        }
        Kind::Standalone => run_standalone(&cli.command, &cli.global, &mut rep),
    };
    if let Err(e) = res {
        rep.fail(&e);
    }
    rep
}

fn run_scalar_dispatch(cli: &Cli, rep: &mut Report) -> CliResult<()> {
    let g = &cli.global;
    let name = ctx_case(g.ctx).name();
    let qdiff = |mode: QMode| -> deltasigma::Result<_> {
        match g.ctx {
            CtxArg::QdiffDdx => DeltaSigmaContext::qdiff_ddx(mode),
            _ => DeltaSigmaContext::qdiff_euler(mode),
        }
    };
    match (g.ctx, &g.q) {
        (CtxArg::Shift, q) => {
            if *q != QArg::Transcendental {
                rep.diagnostics.push("--q is ignored in the shift context".into());
            }
            run_scalar(&cli.command, g, &DeltaSigmaContext::<Q>::shift(), &Env::new(name), rep)
        }
        (CtxArg::ParamShift, _) => {
            let ctx = DeltaSigmaContext::<QFn>::param_shift()?;
            run_scalar(&cli.command, g, &ctx, &Env::new(name).with_param(Sym::T), rep)
        }
        (_, QArg::Transcendental) => {
            let ctx = qdiff(QMode::Transcendental)?;
            run_scalar::<QFn>(&cli.command, g, &ctx, &Env::new(name).with_param(Sym::Q), rep)
        }
        (_, QArg::Rational(v)) => {
            let ctx = match g.ctx {
                CtxArg::QdiffDdx => DeltaSigmaContext::<Q>::qdiff_ddx(QMode::Algebraic(v.clone()))?,
                _ => DeltaSigmaContext::<Q>::qdiff_euler(QMode::Algebraic(v.clone()))?,
            };
            run_scalar(&cli.command, g, &ctx, &Env::new(name).with_constant(Sym::Q, v.clone()), rep)
        }
    }
}

fn verified(rep: &mut Report, ok: bool, what: &str) -> CliResult<()> {
    if !ok {
        return Err(CliError::VerifyFailed(what.into()));
    }
    rep.diagnostics.push(format!("{what}: re-verified"));
    Ok(())
}

fn qstr(v: &Q) -> Value {
    json!(v.render(&[]))
}

fn strings<T>(xs: &[T], f: impl Fn(&T) -> String) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(f(x))).collect())
}

fn shape_json<K: BaseField>(s: &LogDerivCert<K>, env: &Env<K>) -> Value {
    json!({
        "P": print_poly(&s.poly_part, env),
        "laurent": strings(&s.laurent_part, |c| print_scalar(c, env)),
        "c": print_scalar(&s.c, env),
        "N": s.n,
        "f": print_ratfunc(&s.f, env),
        "residues": s.residues.iter().map(|r| json!({ "value": qstr(&r.value), "factor": print_poly(&r.factor, env) })).collect::<Vec<_>>(),
        "zero_exponent": s.zero_exponent,
    })
}

pub fn certificate_json<K: BaseField>(c: &Certificate<K>, env: &Env<K>) -> Value {
    match c {
        Certificate::Additive { lambda, g } => json!({
            "kind": "additive",
            "lambda": lambda.iter().map(|row| strings(row, |c| print_scalar(c, env))).collect::<Vec<_>>(),
            "g": print_ratfunc(g, env),
        }),
        Certificate::Multiplicative { shape, relation } => json!({
            "kind": "multiplicative",
            "shape": shape_json(shape, env),
            "relation": strings(relation, |r| r.to_string()),
        }),
        Certificate::Particular { h } => json!({ "kind": "particular", "h": print_ratfunc(h, env) }),
        Certificate::Shifted { lambda, f, c, h } => json!({
            "kind": "shifted",
            "lambda": strings(lambda, |c| print_scalar(c, env)),
            "f": print_ratfunc(f, env),
            "c": print_scalar(c, env),
            "h": print_ratfunc(h, env),
        }),
    }
}

fn emit_verdict<K: BaseField>(
    v: Verdict<K>,
    ctx: &DeltaSigmaContext<K>,
    inputs: &[RatFunc<K>],
    env: &Env<K>,
    g: &GlobalOpts,
    rep: &mut Report,
) -> CliResult<()> {
    rep.diagnostics.extend(v.diagnostics.iter().cloned());
    match v.outcome {
        Outcome::Dependent => rep.verdict = "Dependent".into(),
        Outcome::Independent => rep.verdict = "Independent".into(),
        Outcome::UnknownUpToBound(n) => {
            rep.verdict = "UnknownUpToBound".into();
            rep.field("bound", n);
            rep.exit_code = 2;
        }
    }
    if let Some(c) = &v.certificate {
        if g.verify {
            verified(rep, c.verify(ctx, inputs), "certificate")?;
        }
        rep.certificate = Some(certificate_json(c, env));
    }
    Ok(())
}

fn matrix_json<K: BaseField>(m: &Matrix<RatFunc<K>>, env: &Env<K>) -> Value {
    Value::Array(m.iter().map(|row| strings(row, |c| print_ratfunc(c, env))).collect())
}

fn emit_integrability<K: BaseField>(
    v: IntegrabilityVerdict<K>,
    a: &Matrix<RatFunc<K>>,
    ctx: &DeltaSigmaContext<K>,
    env: &Env<K>,
    g: &GlobalOpts,
    rep: &mut Report,
) -> CliResult<()> {
    rep.diagnostics.extend(v.diagnostics.iter().cloned());
    rep.field("space_dims", v.space_dims.iter().map(|(d, n)| json!([d, n])).collect::<Vec<_>>());
    match &v.outcome {
        IntegrabilityOutcome::Integrable { d, b } => {
            if g.verify {
                verified(rep, integ::verify_witness(a, *d, ctx, b), "integrability witness")?;
            }
            rep.verdict = "Integrable".into();
            rep.certificate = Some(json!({ "kind": "integrable", "d": d, "B": matrix_json(b, env) }));
        }
        IntegrabilityOutcome::NoRationalWitness(d) => {
            rep.verdict = "NoRationalWitness".into();
            rep.field("d", *d);
        }
        IntegrabilityOutcome::NoRationalWitnessUpTo(d) => {
            rep.verdict = "NoRationalWitnessUpTo".into();
            rep.field("d_max", *d);
            rep.exit_code = 2;
        }
    }
    Ok(())
}

fn run_scalar<K: BaseField>(cmd: &Command, g: &GlobalOpts, ctx: &DeltaSigmaContext<K>, env: &Env<K>, rep: &mut Report) -> CliResult<()> {
    let rat = |s: &str| parse_ratfunc(s, env);
    let der = ctx.derivation();
    match cmd {
        Command::Hermite { f } => {
            let f = rat(f)?;
            rep.input("f", print_ratfunc(&f, env));
            let h = reduction::hermite_reduce(&f);
            if g.verify {
                verified(rep, h.recombine() == f, "decomposition")?;
            }
            rep.verdict = "Computed".into();
            rep.field("rational_part", print_ratfunc(&h.rational_part, env));
            rep.field("simple_part", print_ratfunc(&h.simple_part, env));
            rep.field("polynomial_part", print_poly(&h.polynomial_part, env));
        }
        Command::Residues { f } => {
            let f = rat(f)?;
            rep.input("f", print_ratfunc(&f, env));
            let r = reduction::residue_analysis(&f);
            let mut zvars = vec!["z"];
            zvars.extend(env.vars().into_iter().skip(1));
            rep.verdict = "Computed".into();
            rep.field("rt_resultant", r.rt_resultant.render(&zvars));
            rep.field(
                "rational_residues",
                r.rational_residues.iter().map(|x| json!({ "value": qstr(&x.value), "factor": print_poly(&x.factor, env) })).collect::<Vec<_>>(),
            );
            rep.field("all_residues_rational", r.all_residues_rational);
            rep.field("all_poles_simple", r.all_poles_simple);
            rep.field("pole_at_zero", r.pole_at_zero);
            rep.field("pole_order_at_zero", r.pole_order_at_zero);
            rep.field("has_polynomial_part", r.has_polynomial_part);
        }
        Command::DepAdd { b } => {
            let b = rat(b)?;
            rep.input("b", print_ratfunc(&b, env));
            let v = criteria::additive_dependence(&b, ctx)?;
            emit_verdict(v, ctx, &[b], env, g, rep)?;
        }
        Command::DepAddMulti { bs } => {
            let bs: Vec<RatFunc<K>> = bs.iter().map(|s| rat(s)).collect::<CliResult<_>>()?;
            rep.input("bs", strings(&bs, |b| print_ratfunc(b, env)));
            let v = criteria::additive_dependence_multi(&bs, ctx, g.max_order)?;
            emit_verdict(v, ctx, &bs, env, g, rep)?;
        }
        Command::GaloisAdd { b } => {
            let b = rat(b)?;
            rep.input("b", print_ratfunc(&b, env));
            rep.verdict = criteria::additive_galois_group(&b, ctx)?.name().into();
        }
        Command::DepMul { a } => {
            let a = rat(a)?;
            rep.input("a", print_ratfunc(&a, env));
            let v = criteria::multiplicative_dependence(&a, ctx)?;
            emit_verdict(v, ctx, &[a], env, g, rep)?;
        }
        Command::Ishizaki { a, b } => {
            let (a, b) = (rat(a)?, rat(b)?);
            rep.input("a", print_ratfunc(&a, env));
            rep.input("b", print_ratfunc(&b, env));
            let v = criteria::inhomogeneous_first_order(&a, &b, ctx, g.max_order)?;
            emit_verdict(v, ctx, &[a, b], env, g, rep)?;
        }
        Command::RatsolsOde { op, rhs } => {
            let op = parse_operator(op, env, der)?;
            rep.input("op", print_operator(&op, env));
            let rhs = rhs.as_deref().map(rat).transpose()?;
            if let Some(r) = &rhs {
                rep.input("rhs", print_ratfunc(r, env));
            }
            let sp = ode::rational_solutions(&op, rhs.as_ref())?;
            if g.verify {
                let hom = sp.basis.iter().all(|y| op.apply(y).is_zero());
                let part = match (&sp.particular, &rhs) {
                    (Some(y), Some(r)) => op.apply(y) == *r,
                    _ => true,
                };
                verified(rep, hom && part, "solutions")?;
            }
            rep.verdict = "Computed".into();
            rep.field("dimension", sp.dim());
            rep.field("basis", strings(&sp.basis, |y| print_ratfunc(y, env)));
            rep.field("particular", sp.particular.as_ref().map_or(Value::Null, |y| json!(print_ratfunc(y, env))));
        }
        Command::Sympower { op, n } => {
            let op = parse_operator(op, env, der)?;
            rep.input("op", print_operator(&op, env));
            let sp = ode::symmetric_power(&op, *n)?;
            rep.verdict = "Computed".into();
            rep.field("operator", print_operator(&sp, env));
        }
        Command::Integrable { matrix, d } => {
            let a = parse_function_matrix(matrix, env)?;
            rep.input("matrix", matrix_json(&a, env));
            let v = match d {
                Some(0) => return Err(CliError::Usage("--d must be at least 1".into())),
                Some(d) => integ::is_sigma_d_integrable(&a, *d, ctx)?,
                None => integ::integrability_sweep(&a, g.d_max, ctx)?,
            };
            emit_integrability(v, &a, ctx, env, g, rep)?;
        }
        Command::Order2 { r, s } => {
            let r = rat(r)?;
            rep.input("r", print_ratfunc(&r, env));
            let v = integ::order2_integrability(&r, *s, ctx)?;
            let a = vec![vec![RatFunc::zero(), RatFunc::one()], vec![r, RatFunc::zero()]];
            emit_integrability(v, &a, ctx, env, g, rep)?;
        }
        Command::Dichotomy { op, no_sanity } => {
            let op = parse_operator(op, env, der)?;
            rep.input("op", print_operator(&op, env));
            let r = integ::sln_dichotomy_report(&op, g.d_max, ctx, !no_sanity)?;
            rep.field("symmetric_power", print_operator(&r.symmetric_power, env));
            let outcome_name = |o: &IntegrabilityOutcome<K>| match o {
                IntegrabilityOutcome::Integrable { .. } => "Integrable",
                IntegrabilityOutcome::NoRationalWitness(_) => "NoRationalWitness",
                IntegrabilityOutcome::NoRationalWitnessUpTo(_) => "NoRationalWitnessUpTo",
            };
            rep.field(
                "rows",
                r.rows
                    .iter()
                    .map(|row| json!({ "d": row.d, "companion": outcome_name(&row.companion), "symmetric_power": outcome_name(&row.symmetric_power) }))
                    .collect::<Vec<_>>(),
            );
            rep.field("conclusion", r.conclusion.clone());
            rep.diagnostics.extend(r.limitations.iter().cloned());
            if r.assertion_refused {
                rep.verdict = "AssertionRefused".into();
            } else if r.rows.iter().any(|row| row.companion.is_integrable() || row.symmetric_power.is_integrable()) {
                rep.verdict = "Integrable".into();
            } else {
                rep.verdict = "NoRationalWitnessUpTo".into();
                rep.exit_code = 2;
            }
        }
        _ => unreachable!("not a scalar command"),
    }
    Ok(())
}

fn run_skew(cmd: &Command, g: &GlobalOpts, env: &Env<QFn>, rep: &mut Report) -> CliResult<()> {
    if g.ctx != CtxArg::Shift && g.ctx != CtxArg::ParamShift {
        rep.diagnostics.push("skew polynomial commands always work over Q(t) with t -> t + 1".into());
    }
    let skew = |s: &str| parse_skew(s, env);
    let show = |p: &SkewPoly<QFn>| print_skew(p, env);
    match cmd {
        Command::RatsolsRec { op } => {
            let l = skew(op)?;
            rep.input("op", show(&l));
            let sp = diffgroups::recurrence_rational_solutions(&l)?;
            if g.verify {
                verified(rep, sp.basis.iter().all(|y| l.apply(y).is_zero()), "solutions")?;
            }
            rep.verdict = "Computed".into();
            rep.field("dimension", sp.dim());
            rep.field("basis", strings(&sp.basis, |y| print_scalar(y, env)));
        }
        Command::SkewGcd { a, b } => {
            let (a, b) = (skew(a)?, skew(b)?);
            rep.input("a", show(&a));
            rep.input("b", show(&b));
            let gcd = diffgroups::skew_right_gcd(&a, &b)?;
            let lcm = diffgroups::skew_left_lcm(&a, &b)?;
            if g.verify {
                let divides = |x: &SkewPoly<QFn>, d: &SkewPoly<QFn>| x.is_zero() || (!d.is_zero() && x.right_rem(d).is_ok_and(|r| r.is_zero()));
                verified(rep, divides(&a, &gcd) && divides(&b, &gcd) && divides(&lcm, &a) && divides(&lcm, &b), "divisibility")?;
            }
            rep.verdict = "Computed".into();
            rep.field("gcrd", show(&gcd));
            rep.field("lclm", show(&lcm));
        }
        Command::GaMember { element, generator } => {
            let (q, p) = (skew(element)?, skew(generator)?);
            rep.input("q", show(&q));
            rep.input("p", show(&p));
            let sub = GaSubgroup::new(&p)?;
            rep.verdict = if diffgroups::ga_membership(&q, &sub) { "Member" } else { "NotMember" }.into();
            rep.field("generator", show(&sub.generator));
            rep.field("sigma_integral", sub.sigma_integral);
            rep.field("perfectly_sigma_reduced", sub.perfectly_sigma_reduced);
        }
        Command::ClassifyGagm { p } => {
            let p = skew(p)?;
            rep.input("p", show(&p));
            match diffgroups::classify_gagm(&p)? {
                GaGmCase::Nilpotent { n } => {
                    rep.verdict = "Nilpotent".into();
                    rep.field("n", n);
                }
                GaGmCase::Periodic { n, m } => {
                    rep.verdict = "Periodic".into();
                    rep.field("n", n);
                    rep.field("m", m);
                }
            }
        }
        Command::RealizeGa { l } => {
            let l = skew(l)?;
            rep.input("l", show(&l));
            let r = diffgroups::realize_ga_subgroup(&l)?;
            if g.verify {
                verified(rep, r.basis.iter().all(|c| l.apply(c).is_zero()), "L(c) = 0")?;
            }
            rep.verdict = "Realized".into();
            rep.certificate = Some(json!({
                "kind": "realization",
                "g": print_ratfunc(&r.g, env),
                "basis": strings(&r.basis, |c| print_scalar(c, env)),
                "residuals": strings(&r.residuals, |c| print_scalar(c, env)),
            }));
        }
        _ => unreachable!("not a skew command"),
    }
    Ok(())
}

/// `N`, `A..B` or `symbolic`.
fn parse_range(s: &str) -> CliResult<Option<(u64, u64)>> {
    if s == "symbolic" {
        return Ok(None);
    }
    let bad = || CliError::Usage(format!("--s expects N, A..B or 'symbolic', got '{s}'"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None => {
            let n = s.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(Some((a, b)))
}

fn airy_json<K: BaseField>(r: &integ::AiryReport<K>, env: &Env<K>) -> Value {
    json!({
        "s": r.s,
        "solution_space_dim": r.solution_dim,
        "operator": print_operator(&r.operator, env),
        "expected": print_operator(&r.expected, env),
        "matches_expected": r.matches_expected,
        "degree_bound": r.solve_trace.degree_bound,
        "notes": r.notes,
    })
}

fn run_standalone(cmd: &Command, _g: &GlobalOpts, rep: &mut Report) -> CliResult<()> {
    match cmd {
        Command::Airy { s } => {
            rep.input("s", s.clone());
            let reports: Vec<(usize, bool, Value)> = match parse_range(s)? {
                None => {
                    let r = integ::airy_obstruction_symbolic()?;
                    let env = Env::<QFn>::new("shift").with_param(Sym::S);
                    vec![(r.solution_dim, r.matches_expected, airy_json(&r, &env))]
                }
                Some((a, b)) => {
                    let env = Env::<Q>::new("shift");
                    (a..=b)
                        .into_par_iter()
                        .map(|s| integ::airy_obstruction(s).map(|r| (r.solution_dim, r.matches_expected, airy_json(&r, &env))))
                        .collect::<deltasigma::Result<_>>()?
                }
            };
            let decided = reports.iter().all(|(dim, ok, _)| *dim == 0 && *ok);
            if !reports.iter().all(|(_, ok, _)| *ok) {
                rep.diagnostics.push("eliminated operator differs from the expected one".into());
            }
            rep.verdict = if decided { "Independent" } else { "Undecided" }.into();
            if !decided {
                rep.exit_code = 2;
            }
            rep.field("reports", reports.into_iter().map(|(_, _, v)| v).collect::<Vec<_>>());
        }
        Command::MupPeriod { p, exponents } => {
            rep.input("p", p.to_string());
            rep.input("exponents", strings(exponents, |e| e.to_string()));
            let (m, d) = diffgroups::mup_period(&MupRelation { p: *p, exponents: exponents.clone() })?;
            rep.verdict = "Computed".into();
            rep.field("m", m);
            rep.field("d", d);
        }
        _ => unreachable!("not a standalone command"),
    }
    Ok(())
}

/// Serializes the report as the user asked for it.
pub fn render(rep: &Report, json: bool) -> String {
    if json {
        format!("{}\n", serde_json::to_string_pretty(&rep.to_json()).expect("serializable"))
    } else {
        rep.to_text()
    }
}

/// Convenience for tests and scripting: parse argv and run.
pub fn run_args<I, T>(args: I) -> CliResult<Report>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(run(&cli))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Value {
        let mut v = vec!["deltasigma"];
        v.extend_from_slice(args);
        run_args(v).unwrap().to_json()
    }

    #[test]
    fn examples() {
        let v = go(&["dep-add", "--ctx", "shift", "1/x"]);
        assert_eq!(v["verdict"], "Independent");
        let v = go(&["dep-add", "1/x^2", "--verify"]);
        assert_eq!(v["verdict"], "Dependent");
        assert_eq!(v["certificate"]["g"], "-1/x");
        let v = go(&["mup-period", "--p", "5", "--exponents", "2,1"]);
        assert_eq!((v["m"].as_u64(), v["d"].as_u64()), (Some(0), Some(4)));
        let v = go(&["galois-add", "--ctx", "qdiff-ddx", "1/(x-1)"]);
        assert_eq!(v["verdict"], "Ga");
        assert_eq!(v["context"]["q"], "transcendental");
        let v = go(&["dep-mul", "--ctx", "qdiff-ddx", "--q", "2", "1"]);
        assert_eq!(v["certificate"]["relation"], json!(["-2", "1"]));
        let v = go(&["dep-add", "--ctx", "shift", "q/x"]);
        assert_eq!(v["error"]["code"], "wrong_symbol_for_context");
        let v = go(&["dep-add", "-1/x"]);
        assert_eq!(v["input"]["b"], "-1/x");
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), Some((1, 10)));
        assert_eq!(parse_range("4").unwrap(), Some((4, 4)));
        assert_eq!(parse_range("symbolic").unwrap(), None);
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("3..1").is_err());
    }

    #[test]
    fn failed_verification_exits_three() {
        let mut rep = Report::new("dep-add", json!({ "name": "shift" }));
        verified(&mut rep, true, "certificate").unwrap();
        assert_eq!(rep.diagnostics, vec!["certificate: re-verified".to_string()]);
        let e = verified(&mut rep, false, "certificate").unwrap_err();
        rep.fail(&e);
        assert_eq!(rep.exit_code, 3);
        assert_eq!(rep.to_json()["error"]["code"], "verification_failed");
    }
}
