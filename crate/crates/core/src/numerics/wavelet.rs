use std::f64::consts::PI;

use super::bump;
use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec, DEFAULT_TOL};
use crate::linalg::{Mat2, Vec2};
use crate::orbit::orbit_contains;

/// Band-limited wavelet with a smooth, compactly supported spectrum inside
/// the open dual orbit of its group.
///
/// The profile is defined on standard frequencies `η = B^T ξ`:
///
/// * similitude: `ρ(log₂(|η|/c₀)/w)`
/// * diagonal: `ρ(log₂(|η₁|/c₀)/w)·ρ(log₂(|η₂|/c₀)/w)`
/// * shearlet: `ρ(log₂(|η₁|/c₀)/w)·ρ(η₂/η₁)`
///
/// with center scale `c₀` and half-bandwidth `w` in octaves, times a real
/// amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletSpec {
    family: Family,
    to_standard: Mat2,
    center: f64,
    octaves: f64,
    amplitude: f64,
}

/// Standard wavelet of a group: center scale 1, one octave each side.
pub fn default_wavelet(spec: &GroupSpec) -> WaveletSpec {
    WaveletSpec::new(spec, 1.0, 1.0, 1.0).expect("default profile lies inside the dual orbit")
}

impl WaveletSpec {
    pub fn new(spec: &GroupSpec, center: f64, octaves: f64, amplitude: f64) -> Result<Self> {
        if !(center.is_finite() && center > 0.0) {
            return Err(Error::OutOfRange(format!("wavelet center scale {center}")));
        }
        if !(octaves.is_finite() && octaves > 0.0) {
            return Err(Error::OutOfRange(format!("wavelet bandwidth {octaves}")));
        }
        if !amplitude.is_finite() || amplitude == 0.0 {
            return Err(Error::OutOfRange(format!("wavelet amplitude {amplitude}")));
        }
        let w = Self {
            family: spec.family(),
            to_standard: spec.conjugator().transpose(),
            center,
            octaves,
            amplitude,
        };
        w.check_support(spec)?;
        Ok(w)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn octaves(&self) -> f64 {
        self.octaves
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// `ψ̂(ξ)`.
    pub fn eval(&self, xi: Vec2) -> f64 {
        self.amplitude * self.eval_standard(self.to_standard.apply(xi))
    }

    fn radial(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        bump((r / self.center).log2() / self.octaves)
    }

    fn eval_standard(&self, eta: Vec2) -> f64 {
        match self.family {
            Family::Similitude => self.radial(eta.norm()),
            Family::Diagonal => {
                let a = self.radial(eta.x.abs());
                if a == 0.0 {
                    0.0
                } else {
                    a * self.radial(eta.y.abs())
                }
            }
            Family::Shearlet { .. } => {
                let a = self.radial(eta.x.abs());
                if a == 0.0 {
                    0.0
                } else {
                    a * bump(eta.y / eta.x)
                }
            }
        }
    }

    /// Boundary of the standard support, sampled.
    fn support_boundary(&self) -> Vec<Vec2> {
        let lo = self.center * 2f64.powf(-self.octaves);
        let hi = self.center * 2f64.powf(self.octaves);
        let k = 64;
        let t = |i: usize| i as f64 / (k - 1) as f64;
        let mut pts = Vec::new();
        match self.family {
            Family::Similitude => {
                for i in 0..k {
                    let a = 2.0 * PI * i as f64 / k as f64;
                    pts.push(lo * Vec2::from_angle(a));
                    pts.push(hi * Vec2::from_angle(a));
                }
            }
            Family::Diagonal => {
                for i in 0..k {
                    let v = lo + (hi - lo) * t(i);
                    for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        for e in [lo, hi] {
                            pts.push(Vec2::new(sx * e, sy * v));
                            pts.push(Vec2::new(sx * v, sy * e));
                        }
                    }
                }
            }
            Family::Shearlet { .. } => {
                for i in 0..k {
                    let v = lo + (hi - lo) * t(i);
                    let u = -1.0 + 2.0 * t(i);
                    for s in [1.0, -1.0] {
                        for e in [lo, hi] {
                            pts.push(Vec2::new(s * e, s * e * u));
                        }
                        pts.push(Vec2::new(s * v, s * v));
                        pts.push(Vec2::new(s * v, -s * v));
                    }
                }
            }
        }
        pts
    }

    fn check_support(&self, spec: &GroupSpec) -> Result<()> {
        let from_standard = spec.conjugator().inverse_transpose()?;
        for eta in self.support_boundary() {
            let xi = from_standard.apply(eta);
            if !orbit_contains(spec, xi, DEFAULT_TOL) {
                return Err(Error::OutsideOrbit(xi));
            }
        }
        Ok(())
    }
}
