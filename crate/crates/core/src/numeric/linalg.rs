use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Condition-number estimate above which a solve is flagged as unreliable.
pub const CONDITION_WARNING: f64 = 1e12;

const PIVOT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self::new(rows, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 }).expect("identity is valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries.chunks(self.cols).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    fn norm_1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j).abs()).sum::<f64>()).fold(0.0, f64::max)
    }
}

/// Result of [`linear_solve`]: the solution and a 1-norm condition estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub condition: f64,
}

impl Solution {
    pub fn ill_conditioned(&self) -> bool {
        !(self.condition <= CONDITION_WARNING)
    }
}

struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(m: &DenseMatrix) -> Result<Self> {
        let n = m.rows;
        let scale: Vec<f64> =
            (0..n).map(|i| (0..n).map(|j| m.get(i, j).abs()).fold(0.0, f64::max)).collect();
        let mut lu = m.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let p = (col..n)
                .max_by(|&a, &b| lu[a * n + col].abs().total_cmp(&lu[b * n + col].abs()))
                .expect("non-empty range");
            let pivot = lu[p * n + col];
            if pivot.abs() < PIVOT_TOLERANCE * scale[perm[p]] || pivot == 0.0 {
                return Err(Error::Singular { column: col, pivot: pivot.abs() });
            }
            if p != col {
                for j in 0..n {
                    lu.swap(p * n + j, col * n + j);
                }
                perm.swap(p, col);
            }
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                if factor != 0.0 {
                    for j in col + 1..n {
                        lu[r * n + j] -= factor * lu[col * n + j];
                    }
                }
            }
        }
        Ok(Lu { n, lu, perm })
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }
}

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
///
/// The returned condition estimate is `|M|_1 |M^-1|_1` with the inverse
/// formed column by column from the same factorisation; callers decide what
/// to do when [`Solution::ill_conditioned`] is set.
pub fn linear_solve(m: &DenseMatrix, rhs: &[f64]) -> Result<Solution> {
    if m.rows != m.cols {
        return Err(Error::Domain(format!("matrix must be square, got {}x{}", m.rows, m.cols)));
    }
    if rhs.len() != m.rows {
        return Err(Error::Domain(format!("rhs has {} entries, expected {}", rhs.len(), m.rows)));
    }
    let lu = Lu::factor(m)?;
    let x = lu.solve(rhs);

    let n = m.rows;
    let mut inv_norm: f64 = 0.0;
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        inv_norm = inv_norm.max(lu.solve(&e).iter().map(|v| v.abs()).sum());
        e[j] = 0.0;
    }
    Ok(Solution { x, condition: m.norm_1() * inv_norm })
}

/// Exact solve over the rationals.
///
/// Each row is scaled to integers and reduced with fraction-free (Bareiss)
/// elimination, so intermediate entries stay integral and no gcd work is done
/// until the final back substitution.
pub fn solve_rational(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("rational system must be square and match rhs".into()));
    }
    // Augmented integer rows [a | b].
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let den = row.iter().chain(std::iter::once(r)).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .chain(std::iter::once(r))
                .map(|v| v.numer() * (&den / v.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular { column: k, pivot: 0.0 })?;
        a.swap(p, k);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..=n {
                row[j] = (&row[j] * &pivot_row[k] - &lead * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            s -= &x[j] * &a[i][j];
        }
        x[i] = s / &a[i][i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residual(m: &DenseMatrix, x: &[f64], b: &[f64]) -> f64 {
        m.mul_vec(x).iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_and_diagonal() {
        let s = linear_solve(&DenseMatrix::identity(2), &[3.0, 7.0]).unwrap();
        assert_eq!(s.x, vec![3.0, 7.0]);
        let d = DenseMatrix::new(2, 2, vec![2.0, 0.0, 0.0, 4.0]).unwrap();
        assert_eq!(linear_solve(&d, &[2.0, 8.0]).unwrap().x, vec![1.0, 2.0]);
    }

    #[test]
    fn seeded_three_by_three_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = DenseMatrix::from_fn(3, 3, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let b = [0.3, -1.2, 2.5];
        let s = linear_solve(&m, &b).unwrap();
        assert!(residual(&m, &s.x, &b) < 1e-10);
    }

    #[test]
    fn needs_pivoting() {
        let m = DenseMatrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(linear_solve(&m, &[5.0, 6.0]).unwrap().x, vec![6.0, 5.0]);
    }

    #[test]
    fn singular_is_reported() {
        let m = DenseMatrix::new(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(matches!(linear_solve(&m, &[1.0, 2.0]), Err(Error::Singular { .. })));
    }

    #[test]
    fn hilbert_is_flagged_ill_conditioned() {
        let m = DenseMatrix::from_fn(12, 12, |i, j| 1.0 / (i + j + 1) as f64).unwrap();
        let s = linear_solve(&m, &[1.0; 12]).unwrap();
        assert!(s.ill_conditioned(), "condition {}", s.condition);
        let w = DenseMatrix::identity(5);
        assert!(!linear_solve(&w, &[1.0; 5]).unwrap().ill_conditioned());
    }

    #[test]
    fn shape_errors() {
        let m = DenseMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        assert!(linear_solve(&m, &[1.0, 2.0]).is_err());
        assert!(linear_solve(&DenseMatrix::identity(2), &[1.0]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0]).is_err());
    }

    #[test]
    fn rational_solve_matches_exact_answer() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // [[0, 1/2], [3, 1]] x = [1, 2]  =>  x = (0, 2)
        let m = vec![vec![r(0, 1), r(1, 2)], vec![r(3, 1), r(1, 1)]];
        let x = solve_rational(&m, &[r(1, 1), r(2, 1)]).unwrap();
        assert_eq!(x, vec![r(0, 1), r(2, 1)]);
        let sing = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert!(solve_rational(&sing, &[r(1, 1), r(1, 1)]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn residual_small_on_diagonally_dominant_systems(n in 1usize..=40, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = DenseMatrix::from_fn(n, n, |i, j| {
                let v: f64 = rng.random_range(-1.0..1.0);
                if i == j { v + n as f64 } else { v }
            }).unwrap();
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
            let s = linear_solve(&m, &b).unwrap();
            prop_assert!(residual(&m, &s.x, &b) <= 1e-9);
        }
    }
}
