//! Smith normal form of integer matrices, with transforms.
//!
//! Used for the integral side of circle-bundle cohomology (torsion of the
//! cokernel of cup product with the Euler class) and for canonical integer
//! coordinates of degree-one classes.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// Decomposition `u * m * v = s` with `u`, `v` unimodular and `s` diagonal
/// with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix<BigInt>,
    pub s: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Invariant factors describing torsion: diagonal entries other than
    /// zero and one.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && *d != BigInt::from(1))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn swap_rows(m: &mut Matrix<BigInt>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols() {
        let tmp = m[(a, c)].clone();
        m[(a, c)] = m[(b, c)].clone();
        m[(b, c)] = tmp;
    }
}

fn swap_cols(m: &mut Matrix<BigInt>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows() {
        let tmp = m[(r, a)].clone();
        m[(r, a)] = m[(r, b)].clone();
        m[(r, b)] = tmp;
    }
}

/// `row a -= q * row b`
fn row_sub(m: &mut Matrix<BigInt>, a: usize, q: &BigInt, b: usize) {
    for c in 0..m.cols() {
        let delta = q * &m[(b, c)];
        m[(a, c)] = &m[(a, c)] - delta;
    }
}

/// `col a -= q * col b`
fn col_sub(m: &mut Matrix<BigInt>, a: usize, q: &BigInt, b: usize) {
    for r in 0..m.rows() {
        let delta = q * &m[(r, b)];
        m[(r, a)] = &m[(r, a)] - delta;
    }
}

fn negate_row(m: &mut Matrix<BigInt>, r: usize) {
    for c in 0..m.cols() {
        m[(r, c)] = -m[(r, c)].clone();
    }
}

pub fn smith_normal_form(m: &Matrix<BigInt>) -> Snf {
    let mut s = m.clone();
    let mut u: Matrix<BigInt> = Matrix::identity(m.rows());
    let mut v: Matrix<BigInt> = Matrix::identity(m.cols());
    let limit = m.rows().min(m.cols());

    for t in 0..limit {
        // Smallest nonzero entry (by absolute value, then position) of the
        // remaining block becomes the working pivot.
        let pivot = (t..s.rows())
            .flat_map(|r| (t..s.cols()).map(move |c| (r, c)))
            .filter(|&(r, c)| !s[(r, c)].is_zero())
            .min_by_key(|&(r, c)| s[(r, c)].abs());
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut s, t, pr);
        swap_rows(&mut u, t, pr);
        swap_cols(&mut s, t, pc);
        swap_cols(&mut v, t, pc);

        'reduce: loop {
            // Shrink the pivot with any entry in its column it does not divide.
            for r in t + 1..s.rows() {
                if (&s[(r, t)] % &s[(t, t)]).is_zero() {
                    continue;
                }
                let q = &s[(r, t)] / &s[(t, t)];
                row_sub(&mut s, r, &q, t);
                row_sub(&mut u, r, &q, t);
                swap_rows(&mut s, r, t);
                swap_rows(&mut u, r, t);
                continue 'reduce;
            }
            for r in t + 1..s.rows() {
                if !s[(r, t)].is_zero() {
                    let q = &s[(r, t)] / &s[(t, t)];
                    row_sub(&mut s, r, &q, t);
                    row_sub(&mut u, r, &q, t);
                }
            }
            for c in t + 1..s.cols() {
                if (&s[(t, c)] % &s[(t, t)]).is_zero() {
                    continue;
                }
                let q = &s[(t, c)] / &s[(t, t)];
                col_sub(&mut s, c, &q, t);
                col_sub(&mut v, c, &q, t);
                swap_cols(&mut s, c, t);
                swap_cols(&mut v, c, t);
                continue 'reduce;
            }
            for c in t + 1..s.cols() {
                if !s[(t, c)].is_zero() {
                    let q = &s[(t, c)] / &s[(t, t)];
                    col_sub(&mut s, c, &q, t);
                    col_sub(&mut v, c, &q, t);
                }
            }
            // Divisibility: fold any offending row into row t and redo.
            for r in t + 1..s.rows() {
                for c in t + 1..s.cols() {
                    if !(&s[(r, c)] % &s[(t, t)]).is_zero() {
                        let minus_one = BigInt::from(-1);
                        row_sub(&mut s, t, &minus_one, r);
                        row_sub(&mut u, t, &minus_one, r);
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }

    Snf { u, s, v }
}
