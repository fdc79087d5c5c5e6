//! First-order systems `delta(Y) = A Y (+ b)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::{self, Matrix};
use crate::arith::{BaseField, Field, Poly, RatFunc};
use crate::context::Derivation;
use crate::error::{Error, Result};

use super::operator::LinDiffOp;
use super::solve::{solve_parametric, SolutionSpace};

const SEED: u64 = 0x5eed_cafe;
const MAX_SEEDS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinDiffSystem<K> {
    matrix: Matrix<RatFunc<K>>,
    derivation: Derivation,
    inhomogeneity: Option<Vec<RatFunc<K>>>,
}

impl<K: BaseField> LinDiffSystem<K> {
    pub fn new(matrix: Matrix<RatFunc<K>>, derivation: Derivation) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::EmptyInput);
        }
        if matrix.iter().any(|r| r.len() != matrix.len()) {
            return Err(Error::NonSquare);
        }
        Ok(LinDiffSystem { matrix, derivation, inhomogeneity: None })
    }

    pub fn with_inhomogeneity(mut self, b: Vec<RatFunc<K>>) -> Result<Self> {
        if b.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("inhomogeneity of length {} for dimension {}", b.len(), self.dim())));
        }
        self.inhomogeneity = (!b.iter().all(|c| c.is_zero())).then_some(b);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc<K>> {
        &self.matrix
    }

    pub fn derivation(&self) -> Derivation {
        self.derivation
    }

    pub fn inhomogeneity(&self) -> Option<&[RatFunc<K>]> {
        self.inhomogeneity.as_deref()
    }

    /// `delta(y) - A y - b`.
    pub fn residual(&self, y: &[RatFunc<K>]) -> Vec<RatFunc<K>> {
        let ay = linalg::mat_vec(&self.matrix, y);
        y.iter()
            .zip(ay)
            .enumerate()
            .map(|(i, (yi, ayi))| {
                let mut r = self.derivation.apply(yi).sub(&ayi);
                if let Some(b) = &self.inhomogeneity {
                    r = r.sub(&b[i]);
                }
                r
            })
            .collect()
    }

    pub fn is_solution(&self, y: &[RatFunc<K>]) -> bool {
        self.residual(y).iter().all(|r| r.is_zero())
    }

    /// Homogeneous system of dimension `n + 1` whose solutions with last
    /// entry 1 are the solutions of `self`.
    fn augmented(&self) -> LinDiffSystem<K> {
        let n = self.dim();
        let b = self.inhomogeneity.clone().unwrap_or_else(|| vec![RatFunc::zero(); n]);
        let mut m: Matrix<RatFunc<K>> = self
            .matrix
            .iter()
            .zip(&b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        m.push(vec![RatFunc::zero(); n + 1]);
        LinDiffSystem { matrix: m, derivation: self.derivation, inhomogeneity: None }
    }

    /// Squarefree polynomial whose roots contain every possible pole of a
    /// rational solution.
    fn pole_support(&self) -> Poly<K> {
        let mut s = Poly::<K>::one();
        for e in self.matrix.iter().flatten().chain(self.inhomogeneity.iter().flatten()) {
            s = s.lcm(&e.den().squarefree_part());
        }
        if self.derivation == Derivation::Euler {
            s = s.lcm(&Poly::x());
        }
        s
    }
}

/// `z = seed . Y` satisfies `op(z) = 0`, and `Y = basis^-1 (z, delta z, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVector<K> {
    pub op: LinDiffOp<K>,
    pub seed: Vec<RatFunc<K>>,
    pub basis: Matrix<RatFunc<K>>,
    pub attempts: usize,
}

impl<K: BaseField> CyclicVector<K> {
    /// Recovers the system solution from a solution of the scalar operator.
    pub fn lift(&self, z: &RatFunc<K>) -> Vec<RatFunc<K>> {
        let n = self.basis.len();
        let mut ders = vec![z.clone()];
        for _ in 1..n {
            let next = self.op.derivation().apply(ders.last().expect("nonempty"));
            ders.push(next);
        }
        linalg::solve(&self.basis, &ders).expect("invertible basis")
    }
}

fn seed_vector<K: BaseField>(n: usize, attempt: usize, rng: &mut ChaCha8Rng) -> Vec<RatFunc<K>> {
    match attempt {
        0 => (0..n).map(|i| if i == 0 { RatFunc::one() } else { RatFunc::zero() }).collect(),
        1 => (0..n).map(|i| RatFunc::from_poly(Poly::monomial(K::one(), i))).collect(),
        _ => (0..n)
            .map(|_| {
                let deg = rng.gen_range(0..=2);
                let coeffs = (0..=deg).map(|_| K::from_int(rng.gen_range(-3..=3))).collect();
                RatFunc::from_poly(Poly::new(coeffs))
            })
            .collect(),
    }
}

pub fn cyclic_vector<K: BaseField>(sys: &LinDiffSystem<K>) -> Result<CyclicVector<K>> {
    if sys.inhomogeneity.is_some() {
        return Err(Error::UnsupportedContext { op: "cyclic vector", ctx: "inhomogeneous system" });
    }
    let n = sys.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for attempt in 0..MAX_SEEDS {
        let seed = seed_vector::<K>(n, attempt, &mut rng);
        if seed.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut rows = vec![seed.clone()];
        for _ in 0..n {
            let u = rows.last().expect("nonempty");
            let du: Vec<RatFunc<K>> = u.iter().map(|c| sys.derivation.apply(c)).collect();
            let next = linalg::mat_add(&[du], &[linalg::vec_mat(u, &sys.matrix)]).remove(0);
            rows.push(next);
        }
        let top = rows.pop().expect("n + 1 rows");
        let pt = linalg::transpose(&rows);
        // top = c . P, i.e. P^T c^T = top^T
        let Some(c) = linalg::solve(&pt, &top) else {
            continue;
        };
        let mut coeffs: Vec<RatFunc<K>> = c.iter().map(|x| x.neg()).collect();
        coeffs.push(RatFunc::one());
        let op = LinDiffOp::new(sys.derivation, coeffs)?;
        return Ok(CyclicVector { op, seed, basis: rows, attempts: attempt + 1 });
    }
    Err(Error::CyclicVectorFailure(MAX_SEEDS))
}

/// Companion system of a monic-ized operator, in `(y, delta y, ...)`.
pub fn companion<K: BaseField>(op: &LinDiffOp<K>) -> LinDiffSystem<K> {
    let op = op.monic();
    let n = op.order();
    let mut m = linalg::zeros::<RatFunc<K>>(n, n);
    for i in 0..n.saturating_sub(1) {
        m[i][i + 1] = RatFunc::one();
    }
    for j in 0..n {
        m[n - 1][j] = op.coeff(j).neg();
    }
    LinDiffSystem { matrix: m, derivation: op.derivation(), inhomogeneity: None }
}

/// Complete space of rational solutions.
pub fn system_rational_solutions<K: BaseField>(sys: &LinDiffSystem<K>) -> Result<SolutionSpace<Vec<RatFunc<K>>>> {
    let n = sys.dim();
    let support = sys.pole_support();
    if sys.inhomogeneity.is_none() {
        let cv = cyclic_vector(sys)?;
        let sols = solve_parametric(&cv.op, &[], Some(&support))?;
        let basis = sols.homogeneous.iter().map(|z| cv.lift(z)).collect();
        return Ok(SolutionSpace { basis, particular: None });
    }
    let aug = sys.augmented();
    let cv = cyclic_vector(&aug)?;
    let sols = solve_parametric(&cv.op, &[], Some(&support))?;
    let mut vecs: Vec<Vec<RatFunc<K>>> = sols.homogeneous.iter().map(|z| cv.lift(z)).collect();
    // the last entry is a constant; eliminate it
    let mut particular = None;
    if let Some(pos) = vecs.iter().position(|v| !v[n].is_zero()) {
        let p = vecs.remove(pos);
        let inv = p[n].inv().expect("nonzero");
        let p: Vec<RatFunc<K>> = p.iter().map(|c| c.mul(&inv)).collect();
        for v in vecs.iter_mut() {
            let f = v[n].clone();
            if !f.is_zero() {
                for (a, b) in v.iter_mut().zip(&p) {
                    *a = a.sub(&b.mul(&f));
                }
            }
        }
        particular = Some(p[..n].to_vec());
    }
    let basis = vecs.into_iter().map(|v| v[..n].to_vec()).collect();
    Ok(SolutionSpace { basis, particular })
}
