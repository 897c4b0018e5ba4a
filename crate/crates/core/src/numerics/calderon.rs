use super::sampling::GroupSampling;
use super::wavelet::WaveletSpec;
use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::linalg::Vec2;
use crate::orbit::orbit_contains;

/// Relative margin a frequency sample must keep from the orbit complement.
const ORBIT_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CalderonEstimate {
    /// Mean of `C(ξ)` over the samples.
    pub mean: f64,
    /// `max_ξ |C(ξ) − mean| / mean`.
    pub max_rel_deviation: f64,
    pub values: Vec<f64>,
}

/// `C(ξ) = Σ_h haar(h)·vol(h)·|ψ̂(h^T ξ)|²` at each frequency sample, a
/// quadrature of `∫_H |ψ̂(h^T ξ)|² dh`.
pub fn calderon_constant(
    spec: &GroupSpec,
    psi: &WaveletSpec,
    xi_samples: &[Vec2],
    sampling: &GroupSampling,
) -> Result<CalderonEstimate> {
    if sampling.is_empty() {
        return Err(Error::EmptySampling);
    }
    if xi_samples.is_empty() {
        return Err(Error::OutOfRange("no frequency samples".into()));
    }
    for &xi in xi_samples {
        if !orbit_contains(spec, xi, ORBIT_MARGIN) {
            return Err(Error::OutsideOrbit(xi));
        }
    }
    let values: Vec<f64> = xi_samples
        .iter()
        .map(|&xi| {
            sampling
                .points()
                .iter()
                .map(|pt| pt.haar_weight * psi.eval(pt.matrix.transpose().apply(xi)).powi(2))
                .sum()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_rel_deviation = if mean > 0.0 {
        values
            .iter()
            .map(|v| (v - mean).abs() / mean)
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(CalderonEstimate {
        mean,
        max_rel_deviation,
        values,
    })
}

/// Sixteen frequencies well inside the dual orbit and inside the footprint
/// covered by the default samplings, mapped through `B^{-T}`.
pub fn default_frequency_samples(spec: &GroupSpec) -> Vec<Vec2> {
    let standard: Vec<Vec2> = match spec.family() {
        Family::Similitude => {
            let mut v = Vec::with_capacity(16);
            for r in [0.7, 0.9, 1.2, 1.5] {
                for a in [0.3, 1.9, 3.5, 5.1] {
                    v.push(r * Vec2::from_angle(a));
                }
            }
            v
        }
        Family::Diagonal => {
            let mut v = Vec::with_capacity(16);
            for (a, b) in [(0.8, 1.1), (1.2, 0.9), (1.0, 1.0), (0.9, 1.3)] {
                for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    v.push(Vec2::new(sa * a, sb * b));
                }
            }
            v
        }
        Family::Shearlet { .. } => {
            let mut v = Vec::with_capacity(16);
            for x in [0.8, 1.2, -0.8, -1.2] {
                for ratio in [-0.4, 0.0, 0.3, 0.6] {
                    v.push(Vec2::new(x, ratio * x));
                }
            }
            v
        }
    };
    let to_dual = spec
        .conjugator()
        .inverse_transpose()
        .expect("conjugator checked at construction");
    standard.into_iter().map(|eta| to_dual.apply(eta)).collect()
}

/// `∫ ρ(log₂ e^λ)² dλ` for the default radial profile, the Calderón
/// constant of the similitude wavelet divided by `2π`.
#[cfg(test)]
pub(crate) fn radial_log_integral() -> f64 {
    let n = 200_000;
    let (lo, hi) = (-2f64.ln(), 2f64.ln());
    let h = (hi - lo) / n as f64;
    (0..n)
        .map(|k| {
            let l = lo + (k as f64 + 0.5) * h;
            super::bump(l / 2f64.ln()).powi(2)
        })
        .sum::<f64>()
        * h
}
