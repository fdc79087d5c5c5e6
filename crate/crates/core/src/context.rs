//! The four concrete derivation/automorphism pairs acting on `K(x)`.

use crate::arith::{qi, BaseField, Field, RatFunc, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContextCase {
    /// `d/dx` with `x -> x + 1`.
    Shift,
    /// `d/dx` with `x -> q x`.
    QDiffDdx,
    /// `x d/dx` with `x -> q x`.
    QDiffEuler,
    /// `d/dx` with `t -> t + 1` on the parameter, `x` fixed.
    ParamShift,
}

impl ContextCase {
    pub fn name(self) -> &'static str {
        match self {
            ContextCase::Shift => "shift",
            ContextCase::QDiffDdx => "qdiff-ddx",
            ContextCase::QDiffEuler => "qdiff-euler",
            ContextCase::ParamShift => "param-shift",
        }
    }
}

/// How `q` is realized in the q-dilation cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    /// `q` is the parameter of the base field.
    Transcendental,
    /// `q` is this rational number.
    Algebraic(Q),
}

/// Which derivation an operator or system is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `d/dx`.
    Ddx,
    /// `x d/dx`.
    Euler,
}

impl Derivation {
    pub fn apply<K: BaseField>(self, f: &RatFunc<K>) -> RatFunc<K> {
        match self {
            Derivation::Ddx => f.derivative(),
            Derivation::Euler => f.derivative().mul(&RatFunc::x()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSigmaContext<K> {
    case: ContextCase,
    q: Option<K>,
    mode: Option<QMode>,
}

impl<K: BaseField> DeltaSigmaContext<K> {
    pub fn shift() -> Self {
        DeltaSigmaContext { case: ContextCase::Shift, q: None, mode: None }
    }

    pub fn qdiff_ddx(mode: QMode) -> Result<Self> {
        Self::qdiff(ContextCase::QDiffDdx, mode)
    }

    pub fn qdiff_euler(mode: QMode) -> Result<Self> {
        Self::qdiff(ContextCase::QDiffEuler, mode)
    }

    fn qdiff(case: ContextCase, mode: QMode) -> Result<Self> {
        let q = match &mode {
            QMode::Transcendental => K::param().ok_or(Error::UnsupportedContext {
                op: "transcendental q",
                ctx: "rational base field",
            })?,
            QMode::Algebraic(v) => {
                if v.is_zero() || v.is_one() || *v == qi(-1) {
                    return Err(Error::InvalidQ(v.render(&[])));
                }
                K::from_rational(v)
            }
        };
        Ok(DeltaSigmaContext { case, q: Some(q), mode: Some(mode) })
    }

    pub fn param_shift() -> Result<Self> {
        if K::param().is_none() {
            return Err(Error::UnsupportedContext { op: "parameter shift", ctx: "rational base field" });
        }
        Ok(DeltaSigmaContext { case: ContextCase::ParamShift, q: None, mode: None })
    }

    pub fn case(&self) -> ContextCase {
        self.case
    }

    pub fn name(&self) -> &'static str {
        self.case.name()
    }

    pub fn q(&self) -> Option<&K> {
        self.q.as_ref()
    }

    pub fn q_mode(&self) -> Option<&QMode> {
        self.mode.as_ref()
    }

    pub fn is_transcendental(&self) -> bool {
        matches!(self.mode, Some(QMode::Transcendental))
    }

    pub fn derivation(&self) -> Derivation {
        match self.case {
            ContextCase::QDiffEuler => Derivation::Euler,
            _ => Derivation::Ddx,
        }
    }

    /// True when `delta` and `sigma` commute, i.e. the twist factor is one.
    pub fn commutes(&self) -> bool {
        self.case != ContextCase::QDiffDdx
    }

    pub fn hbar(&self) -> K {
        self.hbar_d(1)
    }

    /// `hbar * sigma(hbar) * ... * sigma^(d-1)(hbar)`.
    pub fn hbar_d(&self, d: usize) -> K {
        match self.case {
            ContextCase::QDiffDdx => self.q.as_ref().expect("q set").pow(d as u32),
            _ => K::one(),
        }
    }

    pub fn delta(&self, f: &RatFunc<K>) -> RatFunc<K> {
        self.derivation().apply(f)
    }

    pub fn sigma(&self, f: &RatFunc<K>) -> RatFunc<K> {
        self.sigma_pow(f, 1)
    }

    /// `sigma^d(f)`.
    pub fn sigma_pow(&self, f: &RatFunc<K>, d: usize) -> RatFunc<K> {
        if d == 0 || f.is_constant() && self.case != ContextCase::ParamShift {
            return f.clone();
        }
        match self.case {
            ContextCase::Shift => f.compose_linear(&K::one(), &K::from_int(d as i64)),
            ContextCase::QDiffDdx | ContextCase::QDiffEuler => {
                let qd = self.q.as_ref().expect("q set").pow(d as u32);
                f.compose_linear(&qd, &K::zero())
            }
            ContextCase::ParamShift => {
                let by = qi(d as i64);
                f.map_coeffs(|c| c.shift_param(&by))
            }
        }
    }

    /// `sigma^d` on a constant of the base field.
    pub fn sigma_const(&self, c: &K, d: usize) -> K {
        match self.case {
            ContextCase::ParamShift => c.shift_param(&qi(d as i64)),
            _ => c.clone(),
        }
    }
}
