use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::group::{chart_abs_det, element_from_chart, g_weight, haar_weight, ChartPoint, Family, GroupSpec, Sign};
use crate::linalg::Mat2;

/// Uniform midpoint grid on `[lo, hi]` with `count` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisRange {
    pub const fn new(lo: f64, hi: f64, count: usize) -> Self {
        Self { lo, hi, count }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) || self.count == 0 {
            return Err(Error::OutOfRange(format!(
                "{what} range [{}, {}] x {}",
                self.lo, self.hi, self.count
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.count as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (0..self.count).map(move |k| self.lo + (k as f64 + 0.5) * h)
    }
}

/// Uniform chart grid for one family. Angles are sampled periodically on
/// `[0, 2π)`; every sign sheet is included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingPlan {
    Similitude {
        log_scale: AxisRange,
        angles: usize,
    },
    Diagonal {
        log_scales: [AxisRange; 2],
    },
    Shearlet {
        log_scale: AxisRange,
        shear: AxisRange,
    },
}

impl SamplingPlan {
    /// Default plan for a family.
    ///
    /// The shear range grows with the exponent so that the default wavelet
    /// footprint is covered for frequencies near unit scale.
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::Similitude => SamplingPlan::Similitude {
                log_scale: AxisRange::new(-2.0, 2.0, 32),
                angles: 32,
            },
            Family::Diagonal => SamplingPlan::Diagonal {
                log_scales: [AxisRange::new(-2.0, 2.0, 24); 2],
            },
            Family::Shearlet { c } => {
                let half = (1.0f64.exp() + 0.7 * c.abs().exp()).ceil();
                let count = (2.0 * half / 0.125).ceil() as usize;
                SamplingPlan::Shearlet {
                    log_scale: AxisRange::new(-1.5, 1.5, 24),
                    shear: AxisRange::new(-half, half, count),
                }
            }
        }
    }

    /// Same plan with every axis refined by `factor`.
    pub fn refined(&self, factor: usize) -> Self {
        let r = |a: AxisRange| AxisRange::new(a.lo, a.hi, a.count * factor);
        match *self {
            SamplingPlan::Similitude { log_scale, angles } => SamplingPlan::Similitude {
                log_scale: r(log_scale),
                angles: angles * factor,
            },
            SamplingPlan::Diagonal { log_scales } => SamplingPlan::Diagonal {
                log_scales: log_scales.map(r),
            },
            SamplingPlan::Shearlet { log_scale, shear } => SamplingPlan::Shearlet {
                log_scale: r(log_scale),
                shear: r(shear),
            },
        }
    }

    fn family_name(&self) -> &'static str {
        match self {
            SamplingPlan::Similitude { .. } => "similitude",
            SamplingPlan::Diagonal { .. } => "diagonal",
            SamplingPlan::Shearlet { .. } => "shearlet",
        }
    }
}

/// A sampled chart point with its dilation matrix and quadrature weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub chart: ChartPoint,
    pub volume: f64,
    pub matrix: Mat2,
    pub abs_det: f64,
    /// Haar density times cell volume.
    pub haar_weight: f64,
    /// `μ_G` dilation density times cell volume.
    pub g_weight: f64,
}

/// Quadrature rule on a dilation group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSampling {
    spec: GroupSpec,
    points: Vec<SamplePoint>,
}

impl GroupSampling {
    /// Arbitrary chart points with their cell volumes.
    pub fn from_points(spec: &GroupSpec, cells: &[(ChartPoint, f64)]) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::EmptySampling);
        }
        let points = cells
            .iter()
            .map(|&(chart, volume)| {
                if !(volume.is_finite() && volume > 0.0) {
                    return Err(Error::OutOfRange(format!("cell volume {volume}")));
                }
                Ok(SamplePoint {
                    chart,
                    volume,
                    matrix: element_from_chart(spec, &chart)?,
                    abs_det: chart_abs_det(spec, &chart)?,
                    haar_weight: haar_weight(spec, &chart)? * volume,
                    g_weight: g_weight(spec, &chart)? * volume,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { spec: *spec, points })
    }

    pub fn uniform(spec: &GroupSpec, plan: &SamplingPlan) -> Result<Self> {
        let mut cells = Vec::new();
        match (*plan, spec.family()) {
            (SamplingPlan::Similitude { log_scale, angles }, Family::Similitude) => {
                log_scale.validate("log-scale")?;
                if angles == 0 {
                    return Err(Error::OutOfRange("zero angle count".into()));
                }
                let dth = 2.0 * PI / angles as f64;
                let vol = log_scale.step() * dth;
                for l in log_scale.points() {
                    for k in 0..angles {
                        cells.push((
                            ChartPoint::Similitude {
                                log_scale: l,
                                angle: k as f64 * dth,
                            },
                            vol,
                        ));
                    }
                }
            }
            (SamplingPlan::Diagonal { log_scales }, Family::Diagonal) => {
                log_scales[0].validate("first log-scale")?;
                log_scales[1].validate("second log-scale")?;
                let vol = log_scales[0].step() * log_scales[1].step();
                for s1 in Sign::BOTH {
                    for s2 in Sign::BOTH {
                        for l1 in log_scales[0].points() {
                            for l2 in log_scales[1].points() {
                                cells.push((
                                    ChartPoint::Diagonal {
                                        log_scales: [l1, l2],
                                        signs: [s1, s2],
                                    },
                                    vol,
                                ));
                            }
                        }
                    }
                }
            }
            (SamplingPlan::Shearlet { log_scale, shear }, Family::Shearlet { .. }) => {
                log_scale.validate("log-scale")?;
                shear.validate("shear")?;
                let vol = log_scale.step() * shear.step();
                for sign in Sign::BOTH {
                    for l in log_scale.points() {
                        for b in shear.points() {
                            cells.push((
                                ChartPoint::Shearlet {
                                    sign,
                                    log_scale: l,
                                    shear: b,
                                },
                                vol,
                            ));
                        }
                    }
                }
            }
            _ => {
                return Err(Error::FamilyMismatch {
                    expected: spec.family().name(),
                    found: plan.family_name(),
                })
            }
        }
        Self::from_points(spec, &cells)
    }

    pub fn default_for(spec: &GroupSpec) -> Self {
        Self::uniform(spec, &SamplingPlan::default_for(spec.family()))
            .expect("default plan matches its family")
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn points(&self) -> &[SamplePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
