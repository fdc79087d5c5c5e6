//! Dense exact linear algebra over a [`Field`].

use super::field::Field;

/// Row-major dense matrix.
pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn zeros<F: Field>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(F::zero(), |acc, (x, brow)| {
                        if x.is_zero() || brow[j].is_zero() {
                            acc
                        } else {
                            acc.add(&x.mul(&brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_add<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect()).collect()
}

pub fn mat_sub<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.sub(y)).collect()).collect()
}

pub fn mat_scale<F: Field>(a: &[Vec<F>], c: &F) -> Matrix<F> {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

pub fn is_zero_matrix<F: Field>(a: &[Vec<F>]) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Row vector times matrix.
pub fn vec_mat<F: Field>(v: &[F], a: &[Vec<F>]) -> Vec<F> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = vec![F::zero(); cols];
    for (x, row) in v.iter().zip(a) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *o = o.add(&x.mul(y));
            }
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec<F: Field>(a: &[Vec<F>], v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::zero(), |acc, (x, y)| {
                if x.is_zero() || y.is_zero() {
                    acc
                } else {
                    acc.add(&x.mul(y))
                }
            })
        })
        .collect()
}

fn pick_pivot<F: Field>(m: &[Vec<F>], col: usize, from: usize) -> Option<usize> {
    (from..m.len()).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| m[r][col].size())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = pick_pivot(m, col, row) else {
            continue;
        };
        m.swap(p, row);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..cols {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..rows {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..cols {
                if !m[row][c].is_zero() {
                    m[r][c] = m[r][c].sub(&f.mul(&m[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{ v : m v = 0 }`, one vector per free column with that
/// column set to one.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = work[i][free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut acc = F::one();
    for col in 0..n {
        let Some(p) = pick_pivot(&a, col, col) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            acc = acc.neg();
        }
        let pv = a[col][col].clone();
        acc = acc.mul(&pv);
        let inv = pv.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..n {
                if !a[col][c].is_zero() {
                    a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                }
            }
        }
    }
    acc
}

pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unique solution of `a v = b` for square nonsingular `a`.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn transpose<F: Field>(a: &[Vec<F>]) -> Matrix<F> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}
