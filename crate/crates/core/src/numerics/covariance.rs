use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::sampling::GroupSampling;
use super::signal::{frequency_at, position_at, GridSignal, TestSignal};
use super::transform::analyze;
use super::wavelet::WaveletSpec;
use crate::error::{Error, Result};
use crate::group::{
    chart_abs_det, chart_of, contains, element_from_chart, ChartPoint, Family, GroupSpec, DEFAULT_TOL,
};
use crate::linalg::{Mat2, Vec2};

/// Relative residual of `W_ψ(π(y,g)f)(x,h) = W_ψ f(g⁻¹(x−y), g⁻¹h)` over
/// the spatial grid.
///
/// The left side is the grid analysis of `π(y,g)f`, synthesized from
/// `|det g|^{1/2} e^{−2πi y·ξ} f̂(g^T ξ)`. The right side is evaluated at
/// the chart point of `g⁻¹h`: for pure grid translations by circular shift
/// of the analysis of `f`, otherwise by direct summation over the
/// frequency lattice mapped through `g^T`, which keeps the periodization of
/// both sides identical.
#[allow(clippy::too_many_arguments)]
pub fn covariance_residual(
    f: &TestSignal,
    y: Vec2,
    g: Mat2,
    h: &ChartPoint,
    spec: &GroupSpec,
    psi: &WaveletSpec,
    n: usize,
    extent: f64,
) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::OutOfRange(format!("translation {y:?}")));
    }
    if !contains(spec, g, DEFAULT_TOL)? {
        return Err(Error::NotInGroup(g));
    }
    let g_inv = g.inverse()?;
    let abs_det_g = g.det().abs();
    let gt = g.transpose();

    let moved = GridSignal::from_spectrum(n, extent, |xi| {
        let phase = Complex64::from_polar(1.0, -2.0 * PI * y.dot(xi));
        f.spectrum(gt.apply(xi)) * phase * abs_det_g.sqrt()
    })?;
    let at_h = GroupSampling::from_points(spec, &[(*h, 1.0)])?;
    let lhs = analyze(&moved, spec, &at_h, psi)?.planes()[0].clone();

    let rhs = match grid_shift(g, y, n, extent) {
        Some((s1, s2)) => {
            let (plain, _) = super::gen_test_signal(f, n, extent)?;
            let w = analyze(&plain, spec, &at_h, psi)?;
            let plane = &w.planes()[0];
            (0..n * n)
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    plane[((i + n - s1) % n) * n + (j + n - s2) % n]
                })
                .collect()
        }
        None => {
            let k = g_inv * element_from_chart(spec, h)?;
            let pk = chart_of(spec, k, DEFAULT_TOL)?;
            let km = element_from_chart(spec, &pk)?;
            let amp = chart_abs_det(spec, &pk)?.sqrt() * abs_det_g / (extent * extent);
            let kt = km.transpose();
            let terms: Vec<(Vec2, Complex64)> = (0..n * n)
                .filter_map(|idx| {
                    let xi = gt.apply(frequency_at(n, extent, idx / n, idx % n));
                    let a = f.spectrum(xi) * (amp * psi.eval(kt.apply(xi)));
                    (a != Complex64::default()).then_some((xi, a))
                })
                .collect();
            direct_sum(&terms, g_inv, y, n, extent)
        }
    };

    let scale = lhs.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let diff = lhs
        .iter()
        .zip(&rhs)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
    Ok(if scale > 0.0 {
        diff / scale
    } else {
        diff
    })
}

/// Gaussian test signal centered where `ψ̂(k^T ·)` peaks for `k = g⁻¹h`, so
/// that the compared planes are not dominated by rounding noise.
pub fn matched_test_signal(spec: &GroupSpec, g: Mat2, h: &ChartPoint) -> Result<TestSignal> {
    let k = g.inverse()? * element_from_chart(spec, h)?;
    let eta = match spec.family() {
        Family::Similitude => Vec2::new(1.0, 0.3),
        Family::Diagonal => Vec2::new(1.0, 0.9),
        Family::Shearlet { .. } => Vec2::new(1.0, 0.3),
    };
    let center = (k * spec.conjugator()).inverse_transpose()?.apply(eta);
    Ok(TestSignal::gaussian(center, 0.15 * center.norm()))
}

/// `Σ_m A_m e^{2πi g⁻¹(x−y)·ξ'_m}` at every grid point `x`.
fn direct_sum(terms: &[(Vec2, Complex64)], g_inv: Mat2, y: Vec2, n: usize, extent: f64) -> Vec<Complex64> {
    (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let z = g_inv.apply(position_at(n, extent, idx / n, idx % n) - y);
            terms
                .iter()
                .map(|&(xi, a)| a * Complex64::from_polar(1.0, 2.0 * PI * z.dot(xi)))
                .sum()
        })
        .collect()
}

/// Index shift when `(y, g)` is a translation by whole grid steps.
fn grid_shift(g: Mat2, y: Vec2, n: usize, extent: f64) -> Option<(usize, usize)> {
    if g != Mat2::IDENTITY {
        return None;
    }
    let dx = extent / n as f64;
    let steps = |v: f64| {
        let s = v / dx;
        ((s - s.round()).abs() <= 1e-9).then(|| (s.round() as i64).rem_euclid(n as i64) as usize)
    };
    Some((steps(y.x)?, steps(y.y)?))
}
