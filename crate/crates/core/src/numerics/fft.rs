use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Unnormalized 2D DFT on square row-major buffers.
#[derive(Clone)]
pub struct Fft2 {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `X_m = Σ_n x_n e^{−2πi n·m/N}`, in place.
    pub fn forward(&self, buf: &mut [Complex64]) {
        self.run(&self.forward, buf);
    }

    /// `x_n = Σ_m X_m e^{2πi n·m/N}`, in place (no `1/N²`).
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.run(&self.inverse, buf);
    }

    fn run(&self, plan: &Arc<dyn Fft<f64>>, buf: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(buf.len(), n * n, "buffer is not {n}x{n}");
        let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
        plan.process_with_scratch(buf, &mut scratch);
        transpose_in_place(buf, n);
        plan.process_with_scratch(buf, &mut scratch);
        transpose_in_place(buf, n);
    }
}

fn transpose_in_place(buf: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            buf.swap(i * n + j, j * n + i);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_dft() {
        let n = 8;
        let x: Vec<Complex64> = (0..n * n)
            .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
            .collect();
        let mut fast = x.clone();
        Fft2::new(n).forward(&mut fast);
        for m1 in 0..n {
            for m2 in 0..n {
                let mut acc = Complex64::default();
                for n1 in 0..n {
                    for n2 in 0..n {
                        let ph = -2.0 * std::f64::consts::PI * ((n1 * m1 + n2 * m2) as f64) / n as f64;
                        acc += x[n1 * n + n2] * Complex64::from_polar(1.0, ph);
                    }
                }
                assert!((acc - fast[m1 * n + m2]).norm() < 1e-12);
            }
        }
        Fft2::new(n).inverse(&mut fast);
        for (a, b) in fast.iter().zip(&x) {
            assert!((a / (n * n) as f64 - b).norm() < 1e-14);
        }
    }
}
