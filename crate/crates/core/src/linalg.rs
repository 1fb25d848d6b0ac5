//! Exact linear algebra over Q for small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form, in place. Returns the pivot columns in order.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..cols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// A nonzero integer vector `x` with `M·x = 0`, scaled to coprime entries with
/// the first nonzero entry positive; `None` if the columns are independent.
/// Also returns the pivot columns of the reduction.
pub fn kernel_vector(m: &[Vec<BigRational>]) -> (Option<Vec<BigInt>>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let Some(free) = (0..cols).find(|c| !pivots.contains(c)) else {
        return (None, pivots);
    };
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[r][free].clone();
    }
    (Some(integral(&x)), pivots)
}

fn integral(x: &[BigRational]) -> Vec<BigInt> {
    let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut v: Vec<BigInt> = x.iter().map(|r| (r * &den).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    if !g.is_zero() {
        for e in v.iter_mut() {
            *e /= &g;
        }
    }
    if v.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
        for e in v.iter_mut() {
            *e = -e.clone();
        }
    }
    v
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}
