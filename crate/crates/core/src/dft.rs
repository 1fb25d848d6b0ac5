//! Length-N discrete Fourier transforms `y_e = Σ_k x_k·exp(2πi·ek/N)`.
//!
//! `chirp_dft` is Bluestein's algorithm: with `c_j = exp(πi·j²/N)`,
//! `ek = (e² + k² − (e−k)²)/2` turns the transform into a linear convolution
//! of `x_k·c_k` against `conj(c_j)`, evaluated with power-of-two FFTs. The
//! chirp phases use `j² mod 2N` computed in integers, so the angles are exact
//! before the trig call.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::characters::RootTable;
use crate::sum::ComplexSum;

/// Below this length `dft` uses the quadratic sum.
pub const DEFAULT_CHIRP_THRESHOLD: usize = 512;

/// Direct O(N²) evaluation with exact root-of-unity lookups.
pub fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len() as u64;
    if n == 0 {
        return Vec::new();
    }
    let roots = RootTable::new(n);
    (0..n)
        .into_par_iter()
        .map(|e| {
            let mut acc = ComplexSum::default();
            for (k, &xk) in x.iter().enumerate() {
                acc.add(xk * roots.get((e as u128 * k as u128 % n as u128) as u64));
            }
            acc.value()
        })
        .collect()
}

fn chirp(j: u64, n: u64) -> Complex64 {
    // exp(πi·j²/N) = exp(2πi·(j² mod 2N)/(2N))
    let r = (j as u128 * j as u128 % (2 * n as u128)) as u64;
    crate::characters::unit_root(r, 2 * n)
}

pub fn chirp_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    let nn = n as u64;
    let size = (2 * n - 1).next_power_of_two();
    let c: Vec<Complex64> = (0..nn).map(|j| chirp(j, nn)).collect();
    let mut a = vec![Complex64::new(0.0, 0.0); size];
    for k in 0..n {
        a[k] = x[k] * c[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); size];
    b[0] = c[0].conj();
    for j in 1..n {
        b[j] = c[j].conj();
        b[size - j] = c[j].conj();
    }
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (ai, bi) in a.iter_mut().zip(&b) {
        *ai *= bi;
    }
    inv.process(&mut a);
    let scale = 1.0 / size as f64;
    (0..n).map(|e| c[e] * a[e] * scale).collect()
}

/// Dispatches to the quadratic sum or the chirp transform by length.
pub fn dft(x: &[Complex64], threshold: usize) -> Vec<Complex64> {
    if x.len() < threshold {
        naive_dft(x)
    } else {
        chirp_dft(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn chirp_matches_naive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 3, 7, 24, 100, 511, 600, 1000] {
            let x: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let a = naive_dft(&x);
            let b = chirp_dft(&x);
            let err = a.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
            assert!(err < 1e-9, "n={n} err={err}");
        }
    }

    #[test]
    fn delta_transforms_to_constant() {
        let mut x = vec![Complex64::new(0.0, 0.0); 30];
        x[0] = Complex64::new(1.0, 0.0);
        for y in chirp_dft(&x) {
            assert!((y - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
