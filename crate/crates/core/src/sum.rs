//! Reproducible compensated summation.
//!
//! Terms are grouped into fixed-size chunks (independent of the thread count),
//! each chunk is summed in index order with Neumaier compensation, and the
//! chunk partials are combined by a fixed pairwise tree. The result is
//! bit-identical for any degree of parallelism.

use num_complex::Complex64;
use rayon::prelude::*;

pub const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex accumulator with independent compensation of both parts.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
    count: u64,
}

impl ComplexSum {
    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.count += 1;
    }

    pub fn merge(&mut self, other: &ComplexSum) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
        self.count += other.count;
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    /// Number of terms added.
    pub fn count(&self) -> u64 {
        self.count
    }
}

/// Combines partials pairwise: `((0,1),(2,3)),...`, always in the same shape.
pub fn pairwise_merge(mut parts: Vec<ComplexSum>) -> ComplexSum {
    if parts.is_empty() {
        return ComplexSum::default();
    }
    while parts.len() > 1 {
        parts = parts
            .chunks(2)
            .map(|pair| {
                let mut a = pair[0];
                if let Some(b) = pair.get(1) {
                    a.merge(b);
                }
                a
            })
            .collect();
    }
    parts[0]
}

/// Deterministic sum of `term(i)` for `i` in `0..n`; `None` terms are skipped
/// and not counted.
pub fn det_sum<F>(n: u64, term: F) -> ComplexSum
where
    F: Fn(u64) -> Option<Complex64> + Sync,
{
    let chunks = n.div_ceil(CHUNK as u64);
    let parts: Vec<ComplexSum> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = ComplexSum::default();
            let lo = c * CHUNK as u64;
            let hi = (lo + CHUNK as u64).min(n);
            for i in lo..hi {
                if let Some(z) = term(i) {
                    acc.add(z);
                }
            }
            acc
        })
        .collect();
    pairwise_merge(parts)
}

/// Sequential compensated sum of a slice-like iterator, in order.
pub fn seq_sum<I: IntoIterator<Item = Complex64>>(it: I) -> Complex64 {
    let mut acc = ComplexSum::default();
    for z in it {
        acc.add(z);
    }
    acc.value()
}
