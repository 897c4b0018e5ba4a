use std::f64::consts::PI;

use super::sampling::GroupSampling;
use super::signal::{gen_test_signal, TestSignal};
use super::transform::analyze_norm;
use super::wavelet::WaveletSpec;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::linalg::Vec2;

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub label: String,
    pub norm1: f64,
    pub norm2: f64,
    /// `norm1 / norm2`, absent when either norm vanishes.
    pub ratio: Option<f64>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioProfile {
    pub rows: Vec<RatioRow>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    /// `max / min` over the non-degenerate rows.
    pub spread: Option<f64>,
}

/// Coorbit norm ratios `‖f‖_{Co(s1)} / ‖f‖_{Co(s2)}` over a family of
/// closed-form signals sampled on the same grid.
#[allow(clippy::too_many_arguments)]
pub fn norm_ratio_profile(
    s1: &GroupSpec,
    s2: &GroupSpec,
    p: f64,
    signals: &[(String, TestSignal)],
    samplings: (&GroupSampling, &GroupSampling),
    psis: (&WaveletSpec, &WaveletSpec),
    n: usize,
    extent: f64,
) -> Result<RatioProfile> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidExponent(p));
    }
    let mut rows = Vec::with_capacity(signals.len());
    for (label, sig) in signals {
        let (f, _) = gen_test_signal(sig, n, extent)?;
        let norm1 = analyze_norm(&f, s1, samplings.0, psis.0, p)?;
        let norm2 = if s1 == s2 && samplings.0 == samplings.1 && psis.0 == psis.1 {
            norm1
        } else {
            analyze_norm(&f, s2, samplings.1, psis.1, p)?
        };
        let degenerate = norm1 == 0.0 || norm2 == 0.0;
        rows.push(RatioRow {
            label: label.clone(),
            norm1,
            norm2,
            ratio: (!degenerate).then(|| norm1 / norm2),
            degenerate,
        });
    }
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let min = ratios.iter().copied().reduce(f64::min);
    let max = ratios.iter().copied().reduce(f64::max);
    let spread = min.zip(max).map(|(lo, hi)| hi / lo);
    Ok(RatioProfile {
        rows,
        min,
        max,
        spread,
    })
}

/// `count` anisotropic wave packets with fixed widths at frequency radius
/// `r`, at angles `π(k + 1/4)/count`. The quarter-step offset keeps the
/// packet centers off the coordinate axes.
pub fn rotated_packet_family(r: f64, count: usize, width_along: f64, width_across: f64) -> Vec<(String, TestSignal)> {
    (0..count)
        .map(|k| {
            let angle = PI * (k as f64 + 0.25) / count as f64;
            (
                format!("r={r:.3} angle={:.1}deg", angle.to_degrees()),
                TestSignal::packet(r * Vec2::from_angle(angle), width_along, width_across),
            )
        })
        .collect()
}
