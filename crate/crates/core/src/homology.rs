//! Reduced Betti numbers over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::Complex;
use crate::matrix::Matrix;
use crate::orientation::{boundary_matrix, Orientation};

/// `β̃_{-1}, β̃_0, ..., β̃_{dim K}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub reduced: Vec<usize>,
}

impl BettiVector {
    /// `β̃_i`, zero outside `-1..=dim K`.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.reduced.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.reduced.iter().all(|b| *b == 0)
    }

    /// `Σ (-1)^i β̃_i` from `i = -1`.
    pub fn euler_characteristic(&self) -> i64 {
        self.reduced
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 1 { *b as i64 } else { -(*b as i64) })
            .sum()
    }
}

/// Rank of an integer matrix by exact Gaussian elimination over ℚ.
pub fn rational_rank(m: &Matrix<i64>) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, pivot);
        let inv = BigRational::one() / &a[rank][c];
        for r in 0..rows {
            if r == rank || a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] * &inv;
            for cc in c..cols {
                let delta = &factor * &a[rank][cc];
                a[r][cc] -= delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Reduced Betti numbers: `β̃_i = |S_i| − rank ∂_i − rank ∂_{i+1}` with `∂_{-1} = 0`.
pub fn betti(k: &Complex) -> BettiVector {
    let s = Orientation::canonical();
    let top = k.dim();
    // ranks[i + 1] = rank ∂_i, for i in -1..=top+1.
    let mut ranks = vec![0usize; (top + 3).max(1) as usize];
    for i in 0..=top + 1 {
        let d = boundary_matrix(k, i, &s).expect("non-negative dimension");
        ranks[(i + 1) as usize] = rational_rank(&d.matrix);
    }
    let reduced = (-1..=top)
        .map(|i| k.num_faces(i) - ranks[(i + 1) as usize] - ranks[(i + 2) as usize])
        .collect();
    BettiVector { reduced }
}

pub fn is_acyclic(k: &Complex) -> bool {
    betti(k).is_zero()
}
