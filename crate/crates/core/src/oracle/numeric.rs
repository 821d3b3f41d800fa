use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{check_structural_controllability, ModelError, SparsityPattern};

/// Outcome of sampling numerical realizations of a pattern pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericVerdict {
    /// Some sampled realization has a full-rank controllability matrix.
    Controllable,
    /// No sample reached full rank and the pattern is not structurally
    /// controllable either.
    NotControllable,
    /// No sample reached full rank although the pattern is structurally
    /// controllable; more trials or better conditioning might help.
    Inconclusive,
}

/// Samples `trials` realizations of `(a, b)` with nonzeros drawn uniformly
/// from `[1, 2]` and tests the rank of each controllability matrix.
pub fn numeric_realization_check(
    a: &SparsityPattern,
    b: &SparsityPattern,
    trials: usize,
    seed: u64,
) -> Result<NumericVerdict, ModelError> {
    let structural = check_structural_controllability(a, b)?;
    let n = a.rows();
    let m = b.cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let av = realize(a, &mut rng);
        let bv = realize(b, &mut rng);
        if rank(krylov(&av, &bv, n, m), n) == n {
            return Ok(NumericVerdict::Controllable);
        }
    }
    Ok(if structural.controllable {
        NumericVerdict::Inconclusive
    } else {
        NumericVerdict::NotControllable
    })
}

/// Dense row-major realization.
fn realize(p: &SparsityPattern, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; p.cols()]; p.rows()];
    for (r, c) in p.nonzeros() {
        out[r][c] = rng.gen_range(1.0..=2.0);
    }
    out
}

/// Columns `b, ab, a²b, …` up to `a^(n-1) b`, each scaled to unit max norm.
/// Returned column-major.
fn krylov(a: &[Vec<f64>], b: &[Vec<f64>], n: usize, m: usize) -> Vec<Vec<f64>> {
    let mut cols = Vec::with_capacity(n * m);
    for j in 0..m {
        let mut v: Vec<f64> = b.iter().map(|row| row[j]).collect();
        for step in 0..n {
            let norm = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            if norm == 0.0 {
                break;
            }
            for x in v.iter_mut() {
                *x /= norm;
            }
            cols.push(v.clone());
            if step + 1 < n {
                v = (0..n)
                    .map(|r| a[r].iter().zip(&v).map(|(x, y)| x * y).sum())
                    .collect();
            }
        }
    }
    cols
}

/// Numerical rank via Gaussian elimination with full pivoting.
fn rank(mut cols: Vec<Vec<f64>>, n: usize) -> usize {
    let k = cols.len();
    let mut r = 0;
    let mut first_pivot = 0.0f64;
    let mut col_used = vec![false; k];
    let mut row_used = vec![false; n];
    while r < n.min(k) {
        let mut best = (0.0f64, 0, 0);
        for (c, col) in cols.iter().enumerate() {
            if col_used[c] {
                continue;
            }
            for (row, &x) in col.iter().enumerate() {
                if !row_used[row] && x.abs() > best.0 {
                    best = (x.abs(), c, row);
                }
            }
        }
        let (mag, pc, pr) = best;
        if r == 0 {
            first_pivot = mag;
        }
        if mag == 0.0 || mag <= 1e-9 * first_pivot {
            break;
        }
        col_used[pc] = true;
        row_used[pr] = true;
        let pivot_col = cols[pc].clone();
        for (c, col) in cols.iter_mut().enumerate() {
            if col_used[c] {
                continue;
            }
            let f = col[pr] / pivot_col[pr];
            if f != 0.0 {
                for (x, p) in col.iter_mut().zip(&pivot_col) {
                    *x -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}
