use num_complex::Complex64;
use rayon::prelude::*;

use super::fft::Fft2;
use super::sampling::{GroupSampling, SamplePoint};
use super::signal::{frequency_at, GridSignal};
use super::wavelet::WaveletSpec;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::Vec2;

/// Planes per accumulation chunk in [`invert`]. Fixed so that the
/// summation order does not depend on the thread count.
const CHUNK: usize = 16;

/// Sampled wavelet coefficients `W_ψ f(x, h)`: one `N×N` plane over the
/// spatial grid per sampled dilation.
#[derive(Debug, Clone)]
pub struct CoeffSlab {
    n: usize,
    extent: f64,
    sampling: GroupSampling,
    planes: Vec<Vec<Complex64>>,
    truncated_planes: usize,
}

impl CoeffSlab {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn sampling(&self) -> &GroupSampling {
        &self.sampling
    }

    pub fn planes(&self) -> &[Vec<Complex64>] {
        &self.planes
    }

    pub fn plane(&self, k: usize) -> &[Complex64] {
        &self.planes[k]
    }

    /// Planes whose wavelet footprint reached the Nyquist band.
    pub fn truncated_planes(&self) -> usize {
        self.truncated_planes
    }

    /// Largest coefficient modulus.
    pub fn max_modulus(&self) -> f64 {
        self.planes
            .iter()
            .flat_map(|p| p.iter())
            .fold(0.0f64, |m, z| m.max(z.norm()))
    }
}

fn frequency_grid(n: usize, extent: f64) -> Vec<Vec2> {
    (0..n * n)
        .map(|idx| frequency_at(n, extent, idx / n, idx % n))
        .collect()
}

/// `|det h|^{1/2}·ψ̂(h^T ξ)` over the frequency grid, plus whether the
/// footprint touches the outermost frequency rows.
fn dilated_wavelet(psi: &WaveletSpec, pt: &SamplePoint, freqs: &[Vec2], n: usize) -> (Vec<f64>, bool) {
    let ht = pt.matrix.transpose();
    let amp = pt.abs_det.sqrt();
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    let mask: Vec<f64> = freqs
        .iter()
        .enumerate()
        .map(|(idx, &xi)| {
            let v = psi.eval(ht.apply(xi));
            peak = peak.max(v.abs());
            let (m1, m2) = (idx / n, idx % n);
            if [m1, m2].iter().any(|&m| m == n / 2 || m == n / 2 - 1) {
                edge = edge.max(v.abs());
            }
            amp * v
        })
        .collect();
    (mask, peak > 0.0 && edge > 1e-8 * peak)
}

/// One analysis plane from the raw DFT of the signal.
fn analysis_plane(
    fft: &Fft2,
    spectrum: &[Complex64],
    freqs: &[Vec2],
    psi: &WaveletSpec,
    pt: &SamplePoint,
) -> (Vec<Complex64>, bool) {
    let n = fft.n();
    let norm = 1.0 / (n * n) as f64;
    let (mask, truncated) = dilated_wavelet(psi, pt, freqs, n);
    // ψ̂ is real, so conjugation is a no-op on the mask.
    let mut plane: Vec<Complex64> = spectrum
        .iter()
        .zip(&mask)
        .map(|(z, &m)| z * (m * norm))
        .collect();
    fft.inverse(&mut plane);
    (plane, truncated)
}

fn check_sampling(spec: &GroupSpec, sampling: &GroupSampling) -> Result<()> {
    if sampling.is_empty() {
        return Err(Error::EmptySampling);
    }
    if sampling.spec() != spec {
        return Err(Error::DimensionMismatch(
            "sampling was built for a different group".into(),
        ));
    }
    Ok(())
}

/// Continuous wavelet transform on the grid: for each sampled `h`, the
/// plane is the inverse DFT of `f̂(ξ)·|det h|^{1/2}·conj(ψ̂(h^T ξ))`.
pub fn analyze(
    f: &GridSignal,
    spec: &GroupSpec,
    sampling: &GroupSampling,
    psi: &WaveletSpec,
) -> Result<CoeffSlab> {
    check_sampling(spec, sampling)?;
    let n = f.n();
    let fft = Fft2::new(n);
    let mut spectrum = f.data().to_vec();
    fft.forward(&mut spectrum);
    let freqs = frequency_grid(n, f.extent());

    let results: Vec<(Vec<Complex64>, bool)> = sampling
        .points()
        .par_iter()
        .map(|pt| analysis_plane(&fft, &spectrum, &freqs, psi, pt))
        .collect();

    let truncated_planes = results.iter().filter(|r| r.1).count();
    if truncated_planes > 0 {
        log::warn!(
            "{truncated_planes} of {} dilated wavelets reach the Nyquist band",
            sampling.len()
        );
    }
    Ok(CoeffSlab {
        n,
        extent: f.extent(),
        sampling: sampling.clone(),
        planes: results.into_iter().map(|r| r.0).collect(),
        truncated_planes,
    })
}

/// Per-plane energies `Σ_x |W(x,h)|² Δx²`, in sampling order.
pub fn plane_energies(slab: &CoeffSlab) -> Vec<f64> {
    let dx = slab.extent / slab.n as f64;
    slab.planes
        .par_iter()
        .map(|p| p.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx)
        .collect()
}

/// Discretized `‖W_ψ f‖_{L^p(G)}` with respect to `dx dh/|det h|`;
/// `p = ∞` gives the largest coefficient modulus. Values `p < 1` give
/// the quasi-norm by the same formula.
pub fn coorbit_norm(slab: &CoeffSlab, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidExponent(p));
    }
    if slab.planes.is_empty() {
        return Err(Error::EmptySampling);
    }
    if p.is_infinite() {
        return Ok(slab.max_modulus());
    }
    let dx = slab.extent / slab.n as f64;
    let per_plane: Vec<f64> = slab
        .planes
        .par_iter()
        .zip(slab.sampling.points().par_iter())
        .map(|(plane, pt)| {
            plane_sum(plane, p) * dx * dx * pt.g_weight
        })
        .collect();
    let total: f64 = per_plane.iter().sum();
    Ok(total.powf(1.0 / p))
}

/// [`coorbit_norm`] of the analysis of `f`, computed plane by plane
/// without keeping the coefficients.
pub fn analyze_norm(
    f: &GridSignal,
    spec: &GroupSpec,
    sampling: &GroupSampling,
    psi: &WaveletSpec,
    p: f64,
) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidExponent(p));
    }
    check_sampling(spec, sampling)?;
    let n = f.n();
    let fft = Fft2::new(n);
    let mut spectrum = f.data().to_vec();
    fft.forward(&mut spectrum);
    let freqs = frequency_grid(n, f.extent());
    let dx = f.spacing();
    let per_plane: Vec<f64> = sampling
        .points()
        .par_iter()
        .map(|pt| {
            let (plane, _) = analysis_plane(&fft, &spectrum, &freqs, psi, pt);
            if p.is_infinite() {
                plane.iter().fold(0.0f64, |m, z| m.max(z.norm()))
            } else {
                plane_sum(&plane, p) * dx * dx * pt.g_weight
            }
        })
        .collect();
    Ok(if p.is_infinite() {
        per_plane.into_iter().fold(0.0, f64::max)
    } else {
        per_plane.iter().sum::<f64>().powf(1.0 / p)
    })
}

fn plane_sum(plane: &[Complex64], p: f64) -> f64 {
    if p == 2.0 {
        plane.iter().map(|z| z.norm_sqr()).sum()
    } else {
        plane.iter().map(|z| z.norm().powf(p)).sum()
    }
}

/// Discretized inversion formula
/// `f = C_ψ⁻¹ ∫ W_ψ f(x,h) π(x,h)ψ dμ_G`, accumulated in the frequency
/// domain and transformed back once.
pub fn invert(
    slab: &CoeffSlab,
    spec: &GroupSpec,
    sampling: &GroupSampling,
    psi: &WaveletSpec,
    c_psi: f64,
) -> Result<GridSignal> {
    if !(c_psi.is_finite() && c_psi > 0.0) {
        return Err(Error::NonPositiveConstant(c_psi));
    }
    check_sampling(spec, sampling)?;
    if sampling.len() != slab.planes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} planes for {} sample points",
            slab.planes.len(),
            sampling.len()
        )));
    }
    let n = slab.n;
    let fft = Fft2::new(n);
    let freqs = frequency_grid(n, slab.extent);

    let partials: Vec<Vec<Complex64>> = slab
        .planes
        .par_chunks(CHUNK)
        .zip(sampling.points().par_chunks(CHUNK))
        .map(|(planes, pts)| {
            let mut acc = vec![Complex64::default(); n * n];
            let mut buf = vec![Complex64::default(); n * n];
            for (plane, pt) in planes.iter().zip(pts) {
                buf.copy_from_slice(plane);
                fft.forward(&mut buf);
                let (mask, _) = dilated_wavelet(psi, pt, &freqs, n);
                for ((a, z), m) in acc.iter_mut().zip(&buf).zip(&mask) {
                    *a += z * (m * pt.g_weight);
                }
            }
            acc
        })
        .collect();

    let mut acc = vec![Complex64::default(); n * n];
    for part in &partials {
        for (a, z) in acc.iter_mut().zip(part) {
            *a += z;
        }
    }
    fft.inverse(&mut acc);
    let scale = 1.0 / ((n * n) as f64 * c_psi);
    acc.iter_mut().for_each(|z| *z *= scale);
    GridSignal::new(n, slab.extent, acc)
}
