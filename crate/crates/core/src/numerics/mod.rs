//! Sampled continuous wavelet analysis over the dilation groups.
//!
//! Signals live on an `N×N` periodic grid of side `L`. All transforms are
//! computed in the frequency domain, with the wavelet spectrum evaluated in
//! closed form at `h^T ξ` for every sampled dilation `h`.

mod calderon;
mod covariance;
mod fft;
mod profile;
mod sampling;
mod signal;
mod transform;
mod wavelet;

pub use calderon::{calderon_constant, default_frequency_samples, CalderonEstimate};
pub use covariance::{covariance_residual, matched_test_signal};
pub use fft::Fft2;
pub use profile::{norm_ratio_profile, rotated_packet_family, RatioProfile, RatioRow};
pub use sampling::{AxisRange, GroupSampling, SamplePoint, SamplingPlan};
pub use signal::{gen_test_signal, GridSignal, SignalKind, TestSignal};
pub use transform::{analyze, analyze_norm, coorbit_norm, invert, plane_energies, CoeffSlab};
pub use wavelet::{default_wavelet, WaveletSpec};

pub use num_complex::Complex64;

/// `ρ(t) = exp(1 − 1/(1−t²))` on `|t| < 1`, zero elsewhere; `ρ(0) = 1`.
pub fn bump(t: f64) -> f64 {
    let u = 1.0 - t * t;
    if u > 0.0 {
        (1.0 - 1.0 / u).exp()
    } else {
        0.0
    }
}

/// Relative L² distance `‖a − b‖ / ‖b‖` of two grid signals.
pub fn relative_l2_error(a: &GridSignal, b: &GridSignal) -> crate::Result<f64> {
    if a.n() != b.n() {
        return Err(crate::Error::DimensionMismatch(format!(
            "grid sizes {} and {}",
            a.n(),
            b.n()
        )));
    }
    let num: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum();
    let den: f64 = b.data().iter().map(|y| y.norm_sqr()).sum();
    Ok(if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    })
}
