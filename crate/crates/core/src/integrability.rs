//! Compatibility of a differential system with a power of the automorphism:
//! rational invertible `B` with `delta(B) + B A = hbar_d sigma^d(A) B`.

use rayon::prelude::*;

use crate::arith::linalg::{self, Matrix};
use crate::arith::{BaseField, Field, QFn, RatFunc, Q};
use crate::context::{DeltaSigmaContext, Derivation};
use crate::error::{Error, Result};
use crate::ode::{companion, cyclic_vector, rational_solutions, solve_parametric, symmetric_power, system_rational_solutions, LinDiffOp, LinDiffSystem, SolveTrace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrabilityOutcome<K> {
    Integrable { d: usize, b: Matrix<RatFunc<K>> },
    NoRationalWitness(usize),
    NoRationalWitnessUpTo(usize),
}

impl<K> IntegrabilityOutcome<K> {
    pub fn is_integrable(&self) -> bool {
        matches!(self, IntegrabilityOutcome::Integrable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityVerdict<K> {
    pub outcome: IntegrabilityOutcome<K>,
    /// `(d, dimension of the rational solution space)` for every tested `d`.
    pub space_dims: Vec<(usize, usize)>,
    pub diagnostics: Vec<String>,
}

fn check_square<K>(a: &Matrix<RatFunc<K>>) -> Result<usize> {
    let n = a.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquare);
    }
    Ok(n)
}

fn sigma_matrix<K: BaseField>(a: &Matrix<RatFunc<K>>, d: usize, ctx: &DeltaSigmaContext<K>) -> Matrix<RatFunc<K>> {
    a.iter().map(|row| row.iter().map(|c| ctx.sigma_pow(c, d)).collect()).collect()
}

/// The system in the `n^2` entries of `B` (row-major).
pub fn integrability_system<K: BaseField>(a: &Matrix<RatFunc<K>>, d: usize, ctx: &DeltaSigmaContext<K>) -> Result<LinDiffSystem<K>> {
    let n = check_square(a)?;
    let hs = linalg::mat_scale(&sigma_matrix(a, d, ctx), &RatFunc::constant(ctx.hbar_d(d)));
    let mut m = linalg::zeros::<RatFunc<K>>(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = i * n + j;
                m[row][k * n + j] = m[row][k * n + j].add(&hs[i][k]);
                m[row][i * n + k] = m[row][i * n + k].sub(&a[k][j]);
            }
        }
    }
    LinDiffSystem::new(m, ctx.derivation())
}

fn to_matrix<K: Field>(v: &[K], n: usize) -> Matrix<K> {
    v.chunks(n).map(|c| c.to_vec()).collect()
}

/// Checks `det(B) != 0` and the compatibility identity.
pub fn verify_witness<K: BaseField>(a: &Matrix<RatFunc<K>>, d: usize, ctx: &DeltaSigmaContext<K>, b: &Matrix<RatFunc<K>>) -> bool {
    let Ok(n) = check_square(a) else { return false };
    if b.len() != n || b.iter().any(|r| r.len() != n) || linalg::det(b).is_zero() {
        return false;
    }
    let db: Matrix<RatFunc<K>> = b.iter().map(|r| r.iter().map(|c| ctx.delta(c)).collect()).collect();
    let lhs = linalg::mat_add(&db, &linalg::mat_mul(b, a));
    let hs = linalg::mat_scale(&sigma_matrix(a, d, ctx), &RatFunc::constant(ctx.hbar_d(d)));
    lhs == linalg::mat_mul(&hs, b)
}

/// Points of `{0..=n}^m` except the origin, by increasing coordinate sum.
fn grid(n: usize, m: usize) -> Vec<Vec<usize>> {
    let total = (n + 1).checked_pow(m as u32).expect("grid too large");
    let mut pts: Vec<Vec<usize>> = (1..total)
        .map(|mut k| {
            (0..m)
                .map(|_| {
                    let c = k % (n + 1);
                    k /= n + 1;
                    c
                })
                .collect()
        })
        .collect();
    pts.sort_by_key(|p| p.iter().sum::<usize>());
    pts
}

/// An invertible member of the span of `basis`, if there is one. The
/// determinant of `sum t_i B_i` has total degree at most `n` in `t`, so it
/// vanishes identically iff it vanishes on the grid `{0..=n}^m`.
pub fn find_invertible<K: BaseField>(basis: &[Matrix<RatFunc<K>>]) -> Option<Matrix<RatFunc<K>>> {
    let n = basis.first()?.len();
    grid(n, basis.len()).into_iter().find_map(|t| {
        let mut acc = linalg::zeros::<RatFunc<K>>(n, n);
        for (ti, b) in t.iter().zip(basis) {
            if *ti > 0 {
                acc = linalg::mat_add(&acc, &linalg::mat_scale(b, &RatFunc::constant(K::from_int(*ti as i64))));
            }
        }
        (!linalg::det(&acc).is_zero()).then_some(acc)
    })
}

fn decide<K: BaseField>(basis: Vec<Matrix<RatFunc<K>>>, d: usize) -> IntegrabilityVerdict<K> {
    let dim = basis.len();
    let outcome = match find_invertible(&basis) {
        Some(b) => IntegrabilityOutcome::Integrable { d, b },
        None => IntegrabilityOutcome::NoRationalWitness(d),
    };
    let mut diagnostics = vec![format!("d = {d}: rational solution space of dimension {dim}")];
    if dim > 0 && !outcome.is_integrable() {
        diagnostics.push("every rational solution is singular".into());
    }
    IntegrabilityVerdict { outcome, space_dims: vec![(d, dim)], diagnostics }
}

pub fn is_sigma_d_integrable<K: BaseField>(a: &Matrix<RatFunc<K>>, d: usize, ctx: &DeltaSigmaContext<K>) -> Result<IntegrabilityVerdict<K>> {
    let n = check_square(a)?;
    let sys = integrability_system(a, d, ctx)?;
    let space = system_rational_solutions(&sys)?;
    let basis = space.basis.iter().map(|v| to_matrix(v, n)).collect();
    let v = decide(basis, d);
    if let IntegrabilityOutcome::Integrable { b, .. } = &v.outcome {
        debug_assert!(verify_witness(a, d, ctx, b));
    }
    Ok(v)
}

/// Tests `d = 1..=d_max` in parallel; reports the smallest integrable `d`.
pub fn integrability_sweep<K: BaseField>(a: &Matrix<RatFunc<K>>, d_max: usize, ctx: &DeltaSigmaContext<K>) -> Result<IntegrabilityVerdict<K>> {
    let runs: Vec<IntegrabilityVerdict<K>> = (1..=d_max).into_par_iter().map(|d| is_sigma_d_integrable(a, d, ctx)).collect::<Result<_>>()?;
    let space_dims = runs.iter().flat_map(|v| v.space_dims.clone()).collect();
    let diagnostics = runs.iter().flat_map(|v| v.diagnostics.clone()).collect();
    let outcome = runs
        .into_iter()
        .map(|v| v.outcome)
        .find(|o| o.is_integrable())
        .unwrap_or(IntegrabilityOutcome::NoRationalWitnessUpTo(d_max));
    Ok(IntegrabilityVerdict { outcome, space_dims, diagnostics })
}

/// The system in `(b, delta b, d, delta d)` for `A = [[0, 1], [r, 0]]`,
/// with `rho = sigma^s(r)` and `h = hbar_s`.
fn order2_system<K: BaseField>(r: &RatFunc<K>, rho: &RatFunc<K>, h: &K, der: Derivation) -> Result<LinDiffSystem<K>> {
    let (o, one) = (RatFunc::zero(), RatFunc::one());
    let h = RatFunc::constant(h.clone());
    let hrho = h.mul(rho);
    let gap = h.mul(&hrho).sub(r);
    let two_h = h.scale(&K::from_int(2));
    let m = vec![
        vec![o.clone(), one.clone(), o.clone(), o.clone()],
        vec![gap.neg(), o.clone(), o.clone(), two_h],
        vec![o.clone(), o.clone(), o.clone(), one],
        vec![der.apply(&hrho), hrho.scale(&K::from_int(2)), gap.neg(), o],
    ];
    LinDiffSystem::new(m, der)
}

/// `B = [[h d - delta b, b], [h rho b - delta d, d]]`.
fn order2_witness<K: BaseField>(y: &[RatFunc<K>], rho: &RatFunc<K>, h: &K) -> Matrix<RatFunc<K>> {
    let (b, db, d, dd) = (&y[0], &y[1], &y[2], &y[3]);
    vec![
        vec![d.scale(h).sub(db), b.clone()],
        vec![b.mul(rho).scale(h).sub(dd), d.clone()],
    ]
}

/// Integrability of `delta^2 - r` through the reduced four-dimensional
/// system. `s = 0` is accepted as a sanity mode returning the identity.
pub fn order2_integrability<K: BaseField>(r: &RatFunc<K>, s: usize, ctx: &DeltaSigmaContext<K>) -> Result<IntegrabilityVerdict<K>> {
    if s == 0 {
        return Ok(IntegrabilityVerdict {
            outcome: IntegrabilityOutcome::Integrable { d: 0, b: linalg::identity(2) },
            space_dims: Vec::new(),
            diagnostics: vec!["sanity mode: s = 0 is not a valid shift order".into()],
        });
    }
    let rho = ctx.sigma_pow(r, s);
    let h = ctx.hbar_d(s);
    let sys = order2_system(r, &rho, &h, ctx.derivation())?;
    let space = system_rational_solutions(&sys)?;
    let basis = space.basis.iter().map(|y| order2_witness(y, &rho, &h)).collect();
    Ok(decide(basis, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AiryReport<K> {
    /// `"1"`, `"2"`, ... or `"s"` in symbolic mode.
    pub s: String,
    /// Monic operator annihilating `b`, from the cyclic vector `e_1`.
    pub operator: LinDiffOp<K>,
    pub expected: LinDiffOp<K>,
    pub matches_expected: bool,
    pub solution_dim: usize,
    pub solve_trace: SolveTrace<K>,
    pub notes: Vec<String>,
}

fn airy_with<K: BaseField>(s: K, label: String, vars: &[&str]) -> Result<AiryReport<K>> {
    let x = RatFunc::<K>::x();
    let sc = RatFunc::constant(s.clone());
    let rho = x.add(&sc);
    let sys = order2_system(&x, &rho, &K::one(), Derivation::Ddx)?;
    let cv = cyclic_vector(&sys)?;
    let mut notes = Vec::new();
    if cv.attempts != 1 {
        notes.push(format!("e_1 is not cyclic; used seed attempt {}", cv.attempts));
    }
    let operator = cv.op;
    let four = K::from_int(4);
    let expected = LinDiffOp::ddx(vec![
        RatFunc::constant(s.mul(&s)),
        RatFunc::constant(K::from_int(-6)),
        x.scale(&four).add(&sc.scale(&K::from_int(2))).neg(),
        RatFunc::zero(),
        RatFunc::one(),
    ])?;
    let sols = solve_parametric(&operator, &[], None)?;
    let trace = sols.trace;
    if trace.singular.is_empty() {
        notes.push("leading coefficient 1: no finite singularities, only polynomial solutions".into());
    }
    notes.push(format!(
        "indicial polynomial at infinity: {}; degree bound {}",
        trace.indicial_at_infinity.render(&["m", vars.get(1).copied().unwrap_or("s")]),
        trace.degree_bound
    ));
    if trace.indicial_at_infinity.is_constant() {
        notes.push(format!("top-degree coefficient of L(b) is {} * lc(b), so b = 0", trace.indicial_at_infinity.coeff(0).render(&vars[1..])));
    }
    Ok(AiryReport {
        s: label,
        matches_expected: operator == expected,
        expected,
        operator,
        solution_dim: sols.homogeneous.len(),
        solve_trace: trace,
        notes,
    })
}

pub fn airy_obstruction(s: u64) -> Result<AiryReport<Q>> {
    airy_with(Q::from_integer(s.into()), s.to_string(), &["x"])
}

/// The same elimination over `Q(s)(x)`. A specialization of `s` could in
/// principle gain solutions, so this does not replace the integer sweep.
pub fn airy_obstruction_symbolic() -> Result<AiryReport<QFn>> {
    let s = QFn::param().expect("parameter");
    let mut r = airy_with(s, "s".into(), &["x", "s"])?;
    r.notes.push("symbolic result; integer values of s are checked separately".into());
    Ok(r)
}

pub fn airy_sweep(s_max: u64) -> Result<Vec<AiryReport<Q>>> {
    (1..=s_max).into_par_iter().map(airy_obstruction).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyRow<K> {
    pub d: usize,
    pub companion: IntegrabilityOutcome<K>,
    pub symmetric_power: IntegrabilityOutcome<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport<K> {
    pub symmetric_power: LinDiffOp<K>,
    pub rows: Vec<DichotomyRow<K>>,
    /// Set when the sanity check found rational solutions, contradicting
    /// the asserted group.
    pub assertion_refused: bool,
    pub conclusion: String,
    pub limitations: Vec<String>,
}

/// Sweeps `d = 1..=d_max` on the companion system of a second-order
/// operator and of its second symmetric power. The group of the operator
/// is a user assertion; `sanity_check` rejects it when rational solutions
/// exist.
pub fn sln_dichotomy_report<K: BaseField>(
    op: &LinDiffOp<K>,
    d_max: usize,
    ctx: &DeltaSigmaContext<K>,
    sanity_check: bool,
) -> Result<DichotomyReport<K>> {
    let n = op.order();
    if n != 2 {
        return Err(Error::UnsupportedOrder { expected: 2, got: n });
    }
    let sp = symmetric_power(op, n)?;
    let limitations = vec!["only rational witnesses are searched; algebraic witnesses are not".to_string()];
    if sanity_check && rational_solutions(op, None)?.dim() > 0 {
        return Ok(DichotomyReport {
            symmetric_power: sp,
            rows: Vec::new(),
            assertion_refused: true,
            conclusion: "rational solutions exist, so the group is not SL2; assertion refused".into(),
            limitations,
        });
    }
    let a = companion(op).matrix().clone();
    let asp = companion(&sp).matrix().clone();
    let rows: Vec<DichotomyRow<K>> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            Ok(DichotomyRow {
                d,
                companion: is_sigma_d_integrable(&a, d, ctx)?.outcome,
                symmetric_power: is_sigma_d_integrable(&asp, d, ctx)?.outcome,
            })
        })
        .collect::<Result<_>>()?;
    let none = rows.iter().all(|r| !r.companion.is_integrable() && !r.symmetric_power.is_integrable());
    let conclusion = if none {
        format!(
            "no rational sigma^d-integrability for d <= {d_max}; if the group is almost simple and K is relatively \
             algebraically closed in the solution field, the solutions are transformally independent up to this bound"
        )
    } else {
        let d = rows.iter().find(|r| r.companion.is_integrable() || r.symmetric_power.is_integrable()).map(|r| r.d).expect("some row");
        format!("rational sigma^{d}-integrability found; the solutions satisfy a transformal relation")
    };
    Ok(DichotomyReport { symmetric_power: sp, rows, assertion_refused: false, conclusion, limitations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qi, Poly, QFn};
    use crate::context::QMode;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    type R = RatFunc<Q>;

    fn rf(n: &[i64], d: &[i64]) -> R {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    fn airy_matrix() -> Matrix<R> {
        vec![vec![R::zero(), R::one()], vec![R::x(), R::zero()]]
    }

    #[test]
    fn system_shape() {
        let sh = DeltaSigmaContext::<Q>::shift();
        let a = rf(&[1], &[0, 1]);
        let sys = integrability_system(&vec![vec![a.clone()]], 1, &sh).unwrap();
        assert_eq!(sys.matrix(), &vec![vec![sh.sigma(&a).sub(&a)]]);
        assert_eq!(integrability_system(&vec![vec![R::one(), R::one()]], 1, &sh), Err(Error::NonSquare));

        // identity solves when sigma fixes A and hbar = 1
        let sys = integrability_system(&vec![vec![R::one(), R::constant(qi(2))], vec![R::zero(), R::one()]], 3, &sh).unwrap();
        let id = vec![R::one(), R::zero(), R::zero(), R::one()];
        assert!(sys.is_solution(&id));

        // the (b, d) entries of the airy system reproduce the reduced equations
        let s = 2;
        let sys = integrability_system(&airy_matrix(), s, &sh).unwrap();
        let red = order2_system(&R::x(), &sh.sigma_pow(&R::x(), s), &qi(1), Derivation::Ddx).unwrap();
        let (b, d) = (rf(&[1, 2, 0, 1], &[1]), rf(&[0, 1, 3], &[1]));
        let y = vec![b.clone(), b.derivative(), d.clone(), d.derivative()];
        let bm = order2_witness(&y, &sh.sigma_pow(&R::x(), s), &qi(1));
        let full = sys.residual(&bm.into_iter().flatten().collect::<Vec<_>>());
        let red_res = red.residual(&y);
        assert!(full[1].is_zero() && full[3].is_zero());
        assert_eq!(full[0], red_res[1].neg());
        assert_eq!(full[2], red_res[3].neg());
        assert!(!full[0].is_zero());
    }

    #[test]
    fn examples() {
        let sh = DeltaSigmaContext::<Q>::shift();
        let v = is_sigma_d_integrable(&vec![vec![rf(&[1], &[0, 1])]], 1, &sh).unwrap();
        let IntegrabilityOutcome::Integrable { b, .. } = &v.outcome else { panic!("{v:?}") };
        let ratio = b[0][0].mul(&rf(&[0, 1], &[1, 1]));
        assert!(ratio.is_constant());
        assert!(verify_witness(&vec![vec![rf(&[1], &[0, 1])]], 1, &sh, b));

        let v = is_sigma_d_integrable(&vec![vec![R::one()]], 1, &sh).unwrap();
        let IntegrabilityOutcome::Integrable { b, .. } = &v.outcome else { panic!() };
        assert!(b[0][0].is_constant());

        let v = is_sigma_d_integrable(&airy_matrix(), 1, &sh).unwrap();
        assert_eq!(v.outcome, IntegrabilityOutcome::NoRationalWitness(1));
        assert_eq!(v.space_dims, vec![(1, 0)]);
    }

    #[test]
    fn order2_examples() {
        let sh = DeltaSigmaContext::<Q>::shift();
        for s in [1, 5] {
            assert_eq!(order2_integrability(&R::x(), s, &sh).unwrap().outcome, IntegrabilityOutcome::NoRationalWitness(s));
        }
        let v = order2_integrability(&R::x(), 0, &sh).unwrap();
        assert_eq!(v.outcome, IntegrabilityOutcome::Integrable { d: 0, b: linalg::identity(2) });
        let v = order2_integrability(&R::constant(qi(3)), 2, &sh).unwrap();
        let IntegrabilityOutcome::Integrable { b, .. } = &v.outcome else { panic!() };
        let a = vec![vec![R::zero(), R::one()], vec![R::constant(qi(3)), R::zero()]];
        assert!(verify_witness(&a, 2, &sh, b));
    }

    #[test]
    fn airy() {
        for s in [1u64, 3] {
            let r = airy_obstruction(s).unwrap();
            assert!(r.matches_expected, "{:?}", r.operator);
            assert_eq!(r.solution_dim, 0);
        }
        let r = airy_obstruction_symbolic().unwrap();
        assert!(r.matches_expected);
        assert_eq!(r.solution_dim, 0);
        assert!(r.solve_trace.singular.is_empty());
        let s = QFn::param().unwrap();
        assert_eq!(r.solve_trace.indicial_at_infinity, Poly::constant(s.mul(&s)));
        assert_eq!(r.solve_trace.degree_bound, -1);
        assert!(airy_sweep(4).unwrap().iter().all(|r| r.matches_expected && r.solution_dim == 0));
    }

    #[test]
    fn qdiff_order2_agrees() {
        let ctx = DeltaSigmaContext::<Q>::qdiff_ddx(QMode::Algebraic(qi(2))).unwrap();
        let r = rf(&[0, 0, 1], &[1]);
        let a = vec![vec![R::zero(), R::one()], vec![r.clone(), R::zero()]];
        for s in 1..=2 {
            let x = order2_integrability(&r, s, &ctx).unwrap().outcome;
            let y = is_sigma_d_integrable(&a, s, &ctx).unwrap().outcome;
            assert_eq!(x.is_integrable(), y.is_integrable());
        }
    }

    #[test]
    fn dichotomy() {
        let sh = DeltaSigmaContext::<Q>::shift();
        let airy = LinDiffOp::ddx(vec![R::x().neg(), R::zero(), R::one()]).unwrap();
        let rep = sln_dichotomy_report(&airy, 3, &sh, true).unwrap();
        assert!(!rep.assertion_refused);
        assert_eq!(rep.symmetric_power, LinDiffOp::ddx(vec![R::constant(qi(-2)), R::x().scale(&qi(-4)), R::zero(), R::one()]).unwrap());
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.rows.iter().all(|r| !r.companion.is_integrable() && !r.symmetric_power.is_integrable()));

        let op = LinDiffOp::ddx(vec![rf(&[-2], &[0, 0, 1]), R::zero(), R::one()]).unwrap();
        assert!(sln_dichotomy_report(&op, 2, &sh, true).unwrap().assertion_refused);
        let third = LinDiffOp::<Q>::delta_pow(Derivation::Ddx, 3);
        assert!(sln_dichotomy_report(&third, 1, &sh, false).is_err());
    }

    #[test]
    fn dichotomy_airy_ten() {
        let sh = DeltaSigmaContext::<Q>::shift();
        let airy = LinDiffOp::ddx(vec![R::x().neg(), R::zero(), R::one()]).unwrap();
        let rep = sln_dichotomy_report(&airy, 10, &sh, false).unwrap();
        assert!(rep.rows.iter().all(|r| !r.companion.is_integrable() && !r.symmetric_power.is_integrable()));
        assert!(rep.conclusion.starts_with("no rational"));

        let constant = LinDiffOp::ddx(vec![R::constant(qi(-3)), R::zero(), R::one()]).unwrap();
        let rep = sln_dichotomy_report(&constant, 2, &sh, false).unwrap();
        assert!(rep.rows.iter().all(|r| r.companion.is_integrable() && r.symmetric_power.is_integrable()));
    }

    /// Multivariate expansion of `det(sum t_i B_i)` in the `t_i`.
    fn symbolic_det(basis: &[Matrix<R>]) -> BTreeMap<Vec<u32>, R> {
        type MPoly = BTreeMap<Vec<u32>, R>;
        let m = basis.len();
        let n = basis[0].len();
        let entry = |i: usize, j: usize| -> MPoly {
            let mut p = MPoly::new();
            for (k, b) in basis.iter().enumerate() {
                if !b[i][j].is_zero() {
                    let mut e = vec![0; m];
                    e[k] = 1;
                    p.insert(e, b[i][j].clone());
                }
            }
            p
        };
        let mul = |a: &MPoly, b: &MPoly| -> MPoly {
            let mut out = MPoly::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let v = out.remove(&e).unwrap_or_else(R::zero).add(&ca.mul(cb));
                    if !v.is_zero() {
                        out.insert(e, v);
                    }
                }
            }
            out
        };
        let perms: Vec<Vec<usize>> = match n {
            1 => vec![vec![0]],
            2 => vec![vec![0, 1], vec![1, 0]],
            _ => vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]],
        };
        let mut total = MPoly::new();
        for p in perms {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term: MPoly = [(vec![0; m], R::one())].into_iter().collect();
            for (i, &pi) in p.iter().enumerate() {
                term = mul(&term, &entry(i, pi));
            }
            for (e, c) in term {
                let c = if inversions % 2 == 1 { c.neg() } else { c };
                let v = total.remove(&e).unwrap_or_else(R::zero).add(&c);
                if !v.is_zero() {
                    total.insert(e, v);
                }
            }
        }
        total
    }

    fn small_rf() -> impl Strategy<Value = R> {
        prop_oneof![
            3 => Just(R::zero()),
            4 => (-2i64..=2, -2i64..=2).prop_map(|(a, b)| rf(&[a, b], &[1])),
            1 => (1i64..=2).prop_map(|a| rf(&[1], &[a, 1])),
        ]
    }

    fn matrix_family() -> impl Strategy<Value = Vec<Matrix<R>>> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(n, m)| {
            proptest::collection::vec(proptest::collection::vec(proptest::collection::vec(small_rf(), n), n), m)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn grid_matches_symbolic(basis in matrix_family()) {
            let symbolic_nonzero = !symbolic_det(&basis).is_empty();
            prop_assert_eq!(find_invertible(&basis).is_some(), symbolic_nonzero);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn paths_agree(coeffs in proptest::collection::vec(-2i64..=2, 1..=4), s in 1usize..=3) {
            let sh = DeltaSigmaContext::<Q>::shift();
            let r = R::from_poly(Poly::from_ints(&coeffs));
            let a = vec![vec![R::zero(), R::one()], vec![r.clone(), R::zero()]];
            let x = order2_integrability(&r, s, &sh).unwrap().outcome;
            let y = is_sigma_d_integrable(&a, s, &sh).unwrap().outcome;
            prop_assert_eq!(x.is_integrable(), y.is_integrable());
            for o in [&x, &y] {
                if let IntegrabilityOutcome::Integrable { b, d } = o {
                    prop_assert!(verify_witness(&a, *d, &sh, b));
                }
            }
        }

        #[test]
        fn fixed_matrix_contains_identity(entries in proptest::collection::vec(-2i64..=2, 4), d in 1usize..=3) {
            let sh = DeltaSigmaContext::<Q>::shift();
            let a: Matrix<R> = entries.chunks(2).map(|r| r.iter().map(|&c| R::constant(qi(c))).collect()).collect();
            let v = is_sigma_d_integrable(&a, d, &sh).unwrap();
            prop_assert!(v.outcome.is_integrable());
            let sys = integrability_system(&a, d, &sh).unwrap();
            let space = system_rational_solutions(&sys).unwrap();
            let id = vec![R::one(), R::zero(), R::zero(), R::one()];
            prop_assert!(sys.is_solution(&id));
            // the identity is a K-combination of the basis
            let vecs: Vec<&Vec<R>> = space.basis.iter().chain(std::iter::once(&id)).collect();
            let den = vecs.iter().flat_map(|v| v.iter()).fold(Poly::<Q>::one(), |acc, c| acc.lcm(c.den()));
            let width = vecs.iter().flat_map(|v| v.iter()).map(|c| (c.num().deg() + den.deg() - c.den().deg() + 1).max(0) as usize).max().unwrap_or(0);
            let rows: Vec<Vec<Q>> = vecs.iter().map(|v| {
                v.iter().flat_map(|c| {
                    let p = c.num().mul(&den.exact_div(c.den()).expect("lcm"));
                    (0..width).map(move |k| p.coeff(k))
                }).collect()
            }).collect();
            prop_assert_eq!(linalg::rank(&rows), space.basis.len());
        }
    }
}
