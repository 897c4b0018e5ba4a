use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fft::Fft2;
use super::wavelet::WaveletSpec;
use crate::error::{Error, Result};
use crate::linalg::Vec2;

/// Samples of a function on the periodic square `[−L/2, L/2)²`.
///
/// Sample `(i, j)` sits at `((i/N − 1/2)L, (j/N − 1/2)L)`: the row index
/// runs along the first coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    n: usize,
    extent: f64,
    data: Vec<Complex64>,
}

impl GridSignal {
    pub fn new(n: usize, extent: f64, data: Vec<Complex64>) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidSignal(format!(
                "grid size {n} must be a power of two >= 8"
            )));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidSignal(format!("extent {extent} must be positive")));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} samples for a {n}x{n} grid",
                data.len()
            )));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidSignal("non-finite sample".into()));
        }
        Ok(Self { n, extent, data })
    }

    pub fn zeros(n: usize, extent: f64) -> Result<Self> {
        Self::new(n, extent, vec![Complex64::default(); n * n])
    }

    /// Samples the inverse Fourier transform of `spectrum` restricted to
    /// the grid's frequency box, `f(x) = Σ_ξ f̂(ξ) e^{2πi x·ξ} Δξ²`.
    pub fn from_spectrum(n: usize, extent: f64, spectrum: impl Fn(Vec2) -> Complex64) -> Result<Self> {
        Self::zeros(n, extent)?;
        let mut buf: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (m1, m2) = (idx / n, idx % n);
                let v = spectrum(frequency_at(n, extent, m1, m2));
                if (m1 + m2) % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Fft2::new(n).inverse(&mut buf);
        let dxi2 = 1.0 / (extent * extent);
        buf.iter_mut().for_each(|z| *z *= dxi2);
        Self::new(n, extent, buf)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    /// Spatial step `L/N`.
    pub fn spacing(&self) -> f64 {
        self.extent / self.n as f64
    }

    pub fn position(&self, i: usize, j: usize) -> Vec2 {
        position_at(self.n, self.extent, i, j)
    }

    /// Signed frequency of DFT index `(m1, m2)`.
    pub fn frequency(&self, m1: usize, m2: usize) -> Vec2 {
        frequency_at(self.n, self.extent, m1, m2)
    }

    /// `(Σ |f|² Δx²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let dx = self.spacing();
        (self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx).sqrt()
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self {
            n: self.n,
            extent: self.extent,
            data: self.data.iter().map(|z| z * alpha).collect(),
        }
    }

    /// Grid estimate of the continuous Fourier transform at each DFT index.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf = self.data.clone();
        Fft2::new(self.n).forward(&mut buf);
        let dx = self.spacing();
        let n = self.n;
        buf.iter_mut().enumerate().for_each(|(idx, z)| {
            *z *= dx * dx;
            if (idx / n + idx % n) % 2 == 1 {
                *z = -*z;
            }
        });
        buf
    }
}

pub(crate) fn signed_index(n: usize, m: usize) -> f64 {
    if m < n / 2 {
        m as f64
    } else {
        m as f64 - n as f64
    }
}

pub(crate) fn frequency_at(n: usize, extent: f64, m1: usize, m2: usize) -> Vec2 {
    Vec2::new(signed_index(n, m1) / extent, signed_index(n, m2) / extent)
}

pub(crate) fn position_at(n: usize, extent: f64, i: usize, j: usize) -> Vec2 {
    let nf = n as f64;
    Vec2::new(
        (i as f64 / nf - 0.5) * extent,
        (j as f64 / nf - 0.5) * extent,
    )
}

/// A signal known through its closed-form Fourier transform.
#[derive(Debug, Clone)]
pub enum TestSignal {
    Zero,
    /// `A·exp(−|ξ−ξ₀|²/(2σ²))`.
    GaussianBump {
        center: Vec2,
        sigma: f64,
        amplitude: Complex64,
        offset: Vec2,
    },
    /// `A·ρ(|ξ−ξ₀|/r)`, compactly supported.
    SmoothBump {
        center: Vec2,
        radius: f64,
        amplitude: Complex64,
        offset: Vec2,
    },
    /// Anisotropic Gaussian around `ξ₀`, with widths along and across the
    /// direction of `ξ₀`.
    WavePacket {
        center: Vec2,
        width_along: f64,
        width_across: f64,
        amplitude: Complex64,
        offset: Vec2,
    },
    /// `A·ψ̂(ξ)` for an admissible wavelet.
    PsiAtom {
        wavelet: WaveletSpec,
        amplitude: Complex64,
        offset: Vec2,
    },
    Sum(Vec<TestSignal>),
}

impl TestSignal {
    pub fn gaussian(center: Vec2, sigma: f64) -> Self {
        TestSignal::GaussianBump {
            center,
            sigma,
            amplitude: Complex64::new(1.0, 0.0),
            offset: Vec2::ZERO,
        }
    }

    pub fn packet(center: Vec2, width_along: f64, width_across: f64) -> Self {
        TestSignal::WavePacket {
            center,
            width_along,
            width_across,
            amplitude: Complex64::new(1.0, 0.0),
            offset: Vec2::ZERO,
        }
    }

    pub fn psi_atom(wavelet: WaveletSpec) -> Self {
        TestSignal::PsiAtom {
            wavelet,
            amplitude: Complex64::new(1.0, 0.0),
            offset: Vec2::ZERO,
        }
    }

    /// Sum of `count` Gaussian bumps with centers drawn uniformly from the
    /// annulus `r_lo ≤ |ξ| ≤ r_hi` and unit-modulus random phases.
    pub fn random_mixture(seed: u64, count: usize, r_lo: f64, r_hi: f64, sigma: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TestSignal::Sum(
            (0..count)
                .map(|_| {
                    let r = rng.gen_range(r_lo..=r_hi);
                    let a = rng.gen_range(0.0..2.0 * PI);
                    let phase = rng.gen_range(0.0..2.0 * PI);
                    TestSignal::GaussianBump {
                        center: r * Vec2::from_angle(a),
                        sigma,
                        amplitude: Complex64::from_polar(1.0, phase),
                        offset: Vec2::ZERO,
                    }
                })
                .collect(),
        )
    }

    pub fn with_amplitude(self, amp: Complex64) -> Self {
        match self {
            TestSignal::GaussianBump {
                center, sigma, offset, ..
            } => TestSignal::GaussianBump {
                center,
                sigma,
                amplitude: amp,
                offset,
            },
            TestSignal::SmoothBump {
                center, radius, offset, ..
            } => TestSignal::SmoothBump {
                center,
                radius,
                amplitude: amp,
                offset,
            },
            TestSignal::WavePacket {
                center,
                width_along,
                width_across,
                offset,
                ..
            } => TestSignal::WavePacket {
                center,
                width_along,
                width_across,
                amplitude: amp,
                offset,
            },
            TestSignal::PsiAtom { wavelet, offset, .. } => TestSignal::PsiAtom {
                wavelet,
                amplitude: amp,
                offset,
            },
            TestSignal::Sum(parts) => {
                TestSignal::Sum(parts.into_iter().map(|p| p.with_amplitude(amp)).collect())
            }
            TestSignal::Zero => TestSignal::Zero,
        }
    }

    /// Exact Fourier transform at an arbitrary frequency.
    pub fn spectrum(&self, xi: Vec2) -> Complex64 {
        let shift = |offset: Vec2| Complex64::from_polar(1.0, -2.0 * PI * offset.dot(xi));
        match self {
            TestSignal::Zero => Complex64::default(),
            TestSignal::GaussianBump {
                center,
                sigma,
                amplitude,
                offset,
            } => {
                let d = xi - *center;
                amplitude * (-d.dot(d) / (2.0 * sigma * sigma)).exp() * shift(*offset)
            }
            TestSignal::SmoothBump {
                center,
                radius,
                amplitude,
                offset,
            } => amplitude * super::bump((xi - *center).norm() / radius) * shift(*offset),
            TestSignal::WavePacket {
                center,
                width_along,
                width_across,
                amplitude,
                offset,
            } => {
                let dir = Vec2::from_angle(center.y.atan2(center.x));
                let d = xi - *center;
                let u = d.dot(dir);
                let v = d.x * dir.y - d.y * dir.x;
                let q = u * u / (2.0 * width_along * width_along)
                    + v * v / (2.0 * width_across * width_across);
                amplitude * (-q).exp() * shift(*offset)
            }
            TestSignal::PsiAtom {
                wavelet,
                amplitude,
                offset,
            } => amplitude * wavelet.eval(xi) * shift(*offset),
            TestSignal::Sum(parts) => parts.iter().map(|p| p.spectrum(xi)).sum(),
        }
    }

    /// `∫ |f̂|²` where it has a closed form.
    pub fn spectral_energy(&self) -> Option<f64> {
        match self {
            TestSignal::Zero => Some(0.0),
            TestSignal::GaussianBump {
                sigma, amplitude, ..
            } => Some(amplitude.norm_sqr() * PI * sigma * sigma),
            TestSignal::WavePacket {
                width_along,
                width_across,
                amplitude,
                ..
            } => Some(amplitude.norm_sqr() * PI * width_along * width_across),
            TestSignal::SmoothBump {
                radius, amplitude, ..
            } => Some(amplitude.norm_sqr() * radius * radius * 2.0 * PI * radial_bump_moment()),
            TestSignal::Sum(parts) if parts.len() == 1 => parts[0].spectral_energy(),
            _ => None,
        }
    }
}

/// `∫₀¹ ρ(t)² t dt` by composite Simpson on a fine grid.
fn radial_bump_moment() -> f64 {
    static MOMENT: OnceLock<f64> = OnceLock::new();
    *MOMENT.get_or_init(|| {
        let n = 20_000;
        let h = 1.0 / n as f64;
        let f = |t: f64| super::bump(t).powi(2) * t;
        let mut acc = f(0.0) + f(1.0);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(k as f64 * h);
        }
        acc * h / 3.0
    })
}

/// Names of the generator kinds understood by [`gen_test_signal`] callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Bump,
    SmoothBump,
    Packet,
    PsiAtom,
    Random,
    Zero,
}

impl SignalKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "bump" => SignalKind::Bump,
            "smooth-bump" => SignalKind::SmoothBump,
            "packet" => SignalKind::Packet,
            "psi-atom" => SignalKind::PsiAtom,
            "random" => SignalKind::Random,
            "zero" => SignalKind::Zero,
            _ => return None,
        })
    }
}

/// Samples a closed-form test signal on the grid. Returns the grid signal
/// and the fraction of peak spectral magnitude found on the outermost
/// frequency ring (a leak indicator; a warning is logged above `1e-8`).
pub fn gen_test_signal(signal: &TestSignal, n: usize, extent: f64) -> Result<(GridSignal, f64)> {
    let grid = GridSignal::from_spectrum(n, extent, |xi| signal.spectrum(xi))?;
    let mut peak = 0.0f64;
    let mut edge = 0.0f64;
    for m1 in 0..n {
        for m2 in 0..n {
            let v = signal.spectrum(frequency_at(n, extent, m1, m2)).norm();
            peak = peak.max(v);
            let on_edge = [m1, m2].iter().any(|&m| m == n / 2 || m == n / 2 - 1);
            if on_edge {
                edge = edge.max(v);
            }
        }
    }
    let leak = if peak > 0.0 { edge / peak } else { 0.0 };
    if leak > 1e-8 {
        log::warn!("test signal spectrum reaches the Nyquist band (relative level {leak:.3e})");
    }
    Ok((grid, leak))
}
