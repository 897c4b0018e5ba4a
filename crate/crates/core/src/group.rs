//! The admissible planar dilation groups, their chart coordinates and Haar
//! densities, and the semidirect-product law of `ℝ² ⋊ H`.
//!
//! A group is always given as one of three standard families conjugated by
//! an invertible matrix `B`, i.e. `H = B·H_std·B⁻¹`. Chart coordinates are
//! those of the standard family; conjugation is applied on the way out.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};

/// Default relative tolerance for membership and pattern tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Standard dilation group family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `{[[a,b],[−b,a]] : a²+b² ≠ 0}`.
    Similitude,
    /// `{diag(a,b) : ab ≠ 0}`.
    Diagonal,
    /// `{±[[a,b],[0,a^c]] : a > 0}` with anisotropy exponent `c`.
    Shearlet { c: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Similitude => "similitude",
            Family::Diagonal => "diagonal",
            Family::Shearlet { .. } => "shearlet",
        }
    }

    /// Number of connected components of the open dual orbit.
    pub fn component_count(&self) -> u32 {
        match self {
            Family::Similitude => 1,
            Family::Shearlet { .. } => 2,
            Family::Diagonal => 4,
        }
    }

    /// Line directions (as angles) making up the complement of the open
    /// dual orbit of the standard group, the origin aside.
    pub fn complement_angles(&self) -> &'static [f64] {
        match self {
            Family::Similitude => &[],
            Family::Diagonal => &[0.0, PI / 2.0],
            Family::Shearlet { .. } => &[PI / 2.0],
        }
    }

    /// Lie algebra basis of the standard group.
    pub fn lie_algebra_basis(&self) -> Vec<Mat2> {
        match *self {
            Family::Similitude => vec![Mat2::IDENTITY, Mat2::new(0.0, 1.0, -1.0, 0.0)],
            Family::Diagonal => vec![Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0)],
            Family::Shearlet { c } => vec![Mat2::diag(1.0, c), Mat2::new(0.0, 1.0, 0.0, 0.0)],
        }
    }

    /// One element from each connected component of the standard group.
    pub fn component_representatives(&self) -> Vec<Mat2> {
        match self {
            Family::Similitude => vec![Mat2::IDENTITY],
            Family::Shearlet { .. } => vec![Mat2::IDENTITY, -Mat2::IDENTITY],
            Family::Diagonal => vec![
                Mat2::diag(1.0, 1.0),
                Mat2::diag(1.0, -1.0),
                Mat2::diag(-1.0, 1.0),
                Mat2::diag(-1.0, -1.0),
            ],
        }
    }

    /// Pattern test on a matrix already expressed in standard coordinates.
    fn matches_standard(&self, m: Mat2, tol: f64) -> bool {
        let n = m.norm();
        match *self {
            Family::Similitude => {
                (m.m11 - m.m22).abs() <= tol * n && (m.m12 + m.m21).abs() <= tol * n
            }
            Family::Diagonal => {
                m.m12.abs() <= tol * n
                    && m.m21.abs() <= tol * n
                    && m.m11.abs() > tol * n
                    && m.m22.abs() > tol * n
            }
            Family::Shearlet { c } => {
                if m.m21.abs() > tol * n || m.m11 == 0.0 || m.m22 == 0.0 {
                    return false;
                }
                if m.m11.signum() != m.m22.signum() {
                    return false;
                }
                // |m22| = |m11|^c, compared on the log scale so that the
                // tolerance stays relative for any exponent.
                let gap = m.m22.abs().ln() - c * m.m11.abs().ln();
                gap.abs() <= tol * (1.0 + c.abs())
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Shearlet { c } => write!(f, "shearlet(c={c})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A dilation group `B·H_std·B⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSpec {
    family: Family,
    conjugator: Mat2,
}

impl GroupSpec {
    pub fn new(family: Family, conjugator: Mat2) -> Result<Self> {
        if let Family::Shearlet { c } = family {
            if !c.is_finite() {
                return Err(Error::OutOfRange(format!("shearlet exponent c = {c}")));
            }
        }
        Ok(Self {
            family,
            conjugator: conjugator.checked_invertible()?,
        })
    }

    /// The standard group of a family (identity conjugator).
    pub fn standard(family: Family) -> Self {
        Self::new(family, Mat2::IDENTITY).expect("identity conjugator is invertible")
    }

    pub fn similitude() -> Self {
        Self::standard(Family::Similitude)
    }

    pub fn diagonal() -> Self {
        Self::standard(Family::Diagonal)
    }

    pub fn shearlet(c: f64) -> Result<Self> {
        Self::new(Family::Shearlet { c }, Mat2::IDENTITY)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn conjugator(&self) -> Mat2 {
        self.conjugator
    }

    /// `A·H·A⁻¹`, i.e. the same family with conjugator `A·B`.
    pub fn conjugate(&self, a: Mat2) -> Result<Self> {
        Self::new(self.family, a.checked_invertible()? * self.conjugator)
    }

    /// Moves a standard-coordinate matrix into the represented group.
    pub fn from_standard(&self, m: Mat2) -> Mat2 {
        self.conjugator
            .conjugate(m)
            .expect("conjugator checked at construction")
    }

    /// Moves a group matrix into standard coordinates: `B⁻¹·M·B`.
    pub fn to_standard(&self, m: Mat2) -> Mat2 {
        let inv = self
            .conjugator
            .inverse()
            .expect("conjugator checked at construction");
        inv * m * self.conjugator
    }

    pub fn component_count(&self) -> u32 {
        self.family.component_count()
    }
}

/// `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(v: f64) -> Self {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Chart coordinates on one of the standard groups. Scales are natural
/// logarithms; angles are radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint {
    Similitude {
        log_scale: f64,
        angle: f64,
    },
    Diagonal {
        log_scales: [f64; 2],
        signs: [Sign; 2],
    },
    Shearlet {
        sign: Sign,
        log_scale: f64,
        shear: f64,
    },
}

impl ChartPoint {
    pub fn family_name(&self) -> &'static str {
        match self {
            ChartPoint::Similitude { .. } => "similitude",
            ChartPoint::Diagonal { .. } => "diagonal",
            ChartPoint::Shearlet { .. } => "shearlet",
        }
    }

    /// The chart point of the identity element.
    pub fn identity(family: Family) -> Self {
        match family {
            Family::Similitude => ChartPoint::Similitude {
                log_scale: 0.0,
                angle: 0.0,
            },
            Family::Diagonal => ChartPoint::Diagonal {
                log_scales: [0.0, 0.0],
                signs: [Sign::Plus, Sign::Plus],
            },
            Family::Shearlet { .. } => ChartPoint::Shearlet {
                sign: Sign::Plus,
                log_scale: 0.0,
                shear: 0.0,
            },
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            ChartPoint::Similitude { log_scale, angle } => log_scale.is_finite() && angle.is_finite(),
            ChartPoint::Diagonal { log_scales, .. } => log_scales.iter().all(|l| l.is_finite()),
            ChartPoint::Shearlet {
                log_scale, shear, ..
            } => log_scale.is_finite() && shear.is_finite(),
        }
    }

    /// The standard-family matrix at this chart point.
    fn standard_matrix(&self, family: Family) -> Mat2 {
        match (*self, family) {
            (ChartPoint::Similitude { log_scale, angle }, _) => {
                let r = log_scale.exp();
                let (s, c) = angle.sin_cos();
                Mat2::new(r * c, r * s, -r * s, r * c)
            }
            (ChartPoint::Diagonal { log_scales, signs }, _) => Mat2::diag(
                signs[0].value() * log_scales[0].exp(),
                signs[1].value() * log_scales[1].exp(),
            ),
            (
                ChartPoint::Shearlet {
                    sign,
                    log_scale,
                    shear,
                },
                Family::Shearlet { c },
            ) => Mat2::new(log_scale.exp(), shear, 0.0, (c * log_scale).exp()).scale(sign.value()),
            (ChartPoint::Shearlet { .. }, _) => unreachable!("checked by caller"),
        }
    }
}

fn check_family(spec: &GroupSpec, p: &ChartPoint) -> Result<()> {
    let ok = matches!(
        (spec.family, p),
        (Family::Similitude, ChartPoint::Similitude { .. })
            | (Family::Diagonal, ChartPoint::Diagonal { .. })
            | (Family::Shearlet { .. }, ChartPoint::Shearlet { .. })
    );
    if !ok {
        return Err(Error::FamilyMismatch {
            expected: spec.family.name(),
            found: p.family_name(),
        });
    }
    if !p.is_finite() {
        return Err(Error::OutOfRange(format!("non-finite chart point {p:?}")));
    }
    Ok(())
}

/// Dual action `h^{-T} ζ`.
pub fn dual_action(h: Mat2, zeta: Vec2) -> Result<Vec2> {
    Ok(h.inverse_transpose()?.apply(zeta))
}

/// The group element at chart point `p`: `B·M_std(p)·B⁻¹`.
pub fn element_from_chart(spec: &GroupSpec, p: &ChartPoint) -> Result<Mat2> {
    check_family(spec, p)?;
    Ok(spec.from_standard(p.standard_matrix(spec.family)))
}

/// Inverse of [`element_from_chart`]; fails if `m` is not in the group.
pub fn chart_of(spec: &GroupSpec, m: Mat2, tol: f64) -> Result<ChartPoint> {
    if !contains(spec, m, tol)? {
        return Err(Error::NotInGroup(m));
    }
    let s = spec.to_standard(m);
    Ok(match spec.family {
        Family::Similitude => {
            let a = 0.5 * (s.m11 + s.m22);
            let b = 0.5 * (s.m12 - s.m21);
            ChartPoint::Similitude {
                log_scale: a.hypot(b).ln(),
                angle: b.atan2(a).rem_euclid(2.0 * PI),
            }
        }
        Family::Diagonal => ChartPoint::Diagonal {
            log_scales: [s.m11.abs().ln(), s.m22.abs().ln()],
            signs: [Sign::of(s.m11), Sign::of(s.m22)],
        },
        Family::Shearlet { .. } => {
            let sign = Sign::of(s.m11);
            ChartPoint::Shearlet {
                sign,
                log_scale: s.m11.abs().ln(),
                shear: sign.value() * s.m12,
            }
        }
    })
}

/// Density of the left Haar measure of `H` in chart coordinates.
///
/// Similitude: `dλ dθ`. Diagonal: `dλ₁ dλ₂` on each sign sheet.
/// Shearlet: `e^{−λ} dλ db` on each sign sheet, since left translation
/// `(a,b) ↦ (a₀a, a₀b + b₀a^c)` has Jacobian `a₀²`.
pub fn haar_weight(spec: &GroupSpec, p: &ChartPoint) -> Result<f64> {
    check_family(spec, p)?;
    Ok(match *p {
        ChartPoint::Similitude { .. } | ChartPoint::Diagonal { .. } => 1.0,
        ChartPoint::Shearlet { log_scale, .. } => (-log_scale).exp(),
    })
}

/// `|det h(p)|`, from the chart directly.
pub fn chart_abs_det(spec: &GroupSpec, p: &ChartPoint) -> Result<f64> {
    check_family(spec, p)?;
    Ok(match (*p, spec.family) {
        (ChartPoint::Similitude { log_scale, .. }, _) => (2.0 * log_scale).exp(),
        (ChartPoint::Diagonal { log_scales, .. }, _) => (log_scales[0] + log_scales[1]).exp(),
        (ChartPoint::Shearlet { log_scale, .. }, Family::Shearlet { c }) => {
            ((1.0 + c) * log_scale).exp()
        }
        _ => unreachable!("checked by check_family"),
    })
}

/// `h`-marginal density of the left Haar measure `dx dh/|det h|` of
/// `ℝ² ⋊ H` in chart coordinates.
pub fn g_weight(spec: &GroupSpec, p: &ChartPoint) -> Result<f64> {
    Ok(haar_weight(spec, p)? / chart_abs_det(spec, p)?)
}

/// Element `(x, h)` of `ℝ² ⋊ H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineElement {
    pub translation: Vec2,
    pub dilation: Mat2,
}

impl AffineElement {
    pub const IDENTITY: AffineElement = AffineElement {
        translation: Vec2::ZERO,
        dilation: Mat2::IDENTITY,
    };

    pub fn new(translation: Vec2, dilation: Mat2) -> Result<Self> {
        Ok(Self {
            translation,
            dilation: dilation.checked_invertible()?,
        })
    }

    /// `(x,h)∘(y,g) = (x + h·y, h·g)`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            translation: self.translation + self.dilation.apply(other.translation),
            dilation: self.dilation * other.dilation,
        }
    }

    /// `(x,h)⁻¹ = (−h⁻¹x, h⁻¹)`.
    pub fn inverse(&self) -> AffineElement {
        let inv = self
            .dilation
            .inverse()
            .expect("dilation checked at construction");
        AffineElement {
            translation: -inv.apply(self.translation),
            dilation: inv,
        }
    }
}

/// Semidirect-product law on raw pairs.
pub fn group_product(gx: Vec2, g: Mat2, hx: Vec2, h: Mat2) -> Result<(Vec2, Mat2)> {
    let lhs = AffineElement::new(gx, g)?;
    let rhs = AffineElement::new(hx, h)?;
    let out = lhs.compose(&rhs);
    Ok((out.translation, out.dilation))
}

/// Membership of `m` in the represented group, up to relative tolerance.
pub fn contains(spec: &GroupSpec, m: Mat2, tol: f64) -> Result<bool> {
    let m = m.checked_invertible()?;
    Ok(spec.family.matches_standard(spec.to_standard(m), tol))
}

/// Lie algebra basis of the represented group (conjugated standard basis).
pub fn lie_algebra_basis(spec: &GroupSpec) -> Vec<Mat2> {
    spec.family
        .lie_algebra_basis()
        .into_iter()
        .map(|x| spec.from_standard(x))
        .collect()
}

/// One element of each connected component of the represented group.
pub fn component_representatives(spec: &GroupSpec) -> Vec<Mat2> {
    spec.family
        .component_representatives()
        .into_iter()
        .map(|x| spec.from_standard(x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Mat2, b: Mat2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn dual_action_examples() {
        let v = dual_action(Mat2::diag(2.0, 1.0), Vec2::new(1.0, 1.0)).unwrap();
        assert_eq!(v, Vec2::new(0.5, 1.0));
        let z = Vec2::new(0.3, -7.0);
        assert_eq!(dual_action(Mat2::IDENTITY, z).unwrap(), z);
        let h = Mat2::new(1.0, 1.0, 0.0, 1.0);
        let v = dual_action(h, Vec2::new(1.0, 0.0)).unwrap();
        assert_eq!(v, Vec2::new(1.0, -1.0));
        // h^T (1,−1) = (1,0)
        assert_eq!(h.transpose().apply(v), Vec2::new(1.0, 0.0));
        assert!(dual_action(Mat2::ZERO, z).is_err());
    }

    #[test]
    fn chart_examples() {
        let p = ChartPoint::identity(Family::Diagonal);
        assert_eq!(
            element_from_chart(&GroupSpec::diagonal(), &p).unwrap(),
            Mat2::IDENTITY
        );

        let spec = GroupSpec::shearlet(1.0).unwrap();
        let p = ChartPoint::Shearlet {
            sign: Sign::Plus,
            log_scale: 2f64.ln(),
            shear: 3.0,
        };
        let m = element_from_chart(&spec, &p).unwrap();
        assert!(close(m, Mat2::new(2.0, 3.0, 0.0, 2.0), 1e-15));

        let b = Mat2::new(1.0, 1.0, 0.0, 1.0);
        let spec = GroupSpec::new(Family::Similitude, b).unwrap();
        let p = ChartPoint::Similitude {
            log_scale: 0.0,
            angle: PI / 2.0,
        };
        let m = element_from_chart(&spec, &p).unwrap();
        // B·[[0,1],[−1,0]]·B⁻¹ with B⁻¹ = [[1,−1],[0,1]]
        let expected = Mat2::new(1.0, 1.0, 0.0, 1.0)
            * Mat2::new(0.0, 1.0, -1.0, 0.0)
            * Mat2::new(1.0, -1.0, 0.0, 1.0);
        assert_eq!(expected, Mat2::new(-1.0, 2.0, -1.0, 1.0));
        assert!(close(m, expected, 1e-15));
    }

    #[test]
    fn chart_family_mismatch() {
        let p = ChartPoint::identity(Family::Similitude);
        assert!(matches!(
            element_from_chart(&GroupSpec::diagonal(), &p),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(haar_weight(&GroupSpec::diagonal(), &p).is_err());
    }

    #[test]
    fn haar_and_g_weights() {
        let sim = GroupSpec::similitude();
        let p = |l: f64| ChartPoint::Similitude {
            log_scale: l,
            angle: 1.0,
        };
        assert_eq!(haar_weight(&sim, &p(0.7)).unwrap(), 1.0);
        assert_eq!(g_weight(&sim, &p(0.0)).unwrap(), 1.0);
        assert!((g_weight(&sim, &p(2f64.ln())).unwrap() - 0.25).abs() < 1e-15);

        let shr = GroupSpec::shearlet(1.0).unwrap();
        let q = |l: f64| ChartPoint::Shearlet {
            sign: Sign::Minus,
            log_scale: l,
            shear: 4.0,
        };
        assert_eq!(haar_weight(&shr, &q(0.0)).unwrap(), 1.0);
        assert!((haar_weight(&shr, &q(2f64.ln())).unwrap() - 0.5).abs() < 1e-15);
        assert!((g_weight(&shr, &q(2f64.ln())).unwrap() - 0.125).abs() < 1e-15);

        let d = ChartPoint::Diagonal {
            log_scales: [0.3, -1.2],
            signs: [Sign::Minus, Sign::Plus],
        };
        assert_eq!(haar_weight(&GroupSpec::diagonal(), &d).unwrap(), 1.0);
    }

    #[test]
    fn product_examples() {
        let h = Mat2::new(1.5, 0.2, -0.3, 0.9);
        let y = Vec2::new(0.4, -2.0);
        assert_eq!(
            group_product(Vec2::ZERO, Mat2::IDENTITY, y, h).unwrap(),
            (y, h)
        );
        let (x, m) =
            group_product(Vec2::new(1.0, 0.0), Mat2::diag(2.0, 2.0), Vec2::new(1.0, 1.0), Mat2::IDENTITY)
                .unwrap();
        assert_eq!(x, Vec2::new(3.0, 2.0));
        assert_eq!(m, Mat2::diag(2.0, 2.0));

        let e = AffineElement::new(y, h).unwrap();
        let id = e.compose(&e.inverse());
        assert!(id.translation.norm() < 1e-15);
        assert!(close(id.dilation, Mat2::IDENTITY, 1e-15));
        assert!(group_product(y, Mat2::ZERO, y, h).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&GroupSpec::diagonal(), Mat2::diag(3.0, -2.0), DEFAULT_TOL).unwrap());
        let shr = GroupSpec::shearlet(2.0).unwrap();
        assert!(contains(&shr, Mat2::new(2.0, 5.0, 0.0, 4.0), DEFAULT_TOL).unwrap());
        assert!(!contains(&shr, Mat2::new(2.0, 5.0, 0.0, 3.0), DEFAULT_TOL).unwrap());
        assert!(!contains(&shr, Mat2::new(2.0, 5.0, 0.0, -4.0), DEFAULT_TOL).unwrap());
        assert!(contains(&shr, Mat2::new(-2.0, 5.0, 0.0, -4.0), DEFAULT_TOL).unwrap());
        assert!(contains(&shr, Mat2::ZERO, DEFAULT_TOL).is_err());
        let sim = GroupSpec::similitude();
        assert!(contains(&sim, Mat2::new(1.0, 2.0, -2.0, 1.0), DEFAULT_TOL).unwrap());
        assert!(!contains(&sim, Mat2::new(1.0, 2.0, 2.0, 1.0), DEFAULT_TOL).unwrap());
    }

    #[test]
    fn lie_algebra_examples() {
        assert_eq!(
            lie_algebra_basis(&GroupSpec::diagonal()),
            vec![Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0)]
        );
        assert_eq!(
            lie_algebra_basis(&GroupSpec::shearlet(3.0).unwrap()),
            vec![Mat2::diag(1.0, 3.0), Mat2::new(0.0, 1.0, 0.0, 0.0)]
        );
        let b = Mat2::new(1.0, 1.0, 0.0, 1.0);
        let spec = GroupSpec::new(Family::Diagonal, b).unwrap();
        let basis = lie_algebra_basis(&spec);
        // B diag(1,0) B⁻¹ = [[1,−1],[0,0]], B diag(0,1) B⁻¹ = [[0,1],[0,1]]
        assert!(close(basis[0], Mat2::new(1.0, -1.0, 0.0, 0.0), 1e-15));
        assert!(close(basis[1], Mat2::new(0.0, 1.0, 0.0, 1.0), 1e-15));
    }

    #[test]
    fn chart_inverse_round_trip() {
        let b = Mat2::new(0.7, -1.3, 0.4, 2.1);
        let spec = GroupSpec::new(Family::Shearlet { c: -0.5 }, b).unwrap();
        let p = ChartPoint::Shearlet {
            sign: Sign::Minus,
            log_scale: 0.8,
            shear: -2.5,
        };
        let m = element_from_chart(&spec, &p).unwrap();
        match chart_of(&spec, m, DEFAULT_TOL).unwrap() {
            ChartPoint::Shearlet {
                sign,
                log_scale,
                shear,
            } => {
                assert_eq!(sign, Sign::Minus);
                assert!((log_scale - 0.8).abs() < 1e-12);
                assert!((shear + 2.5).abs() < 1e-12);
            }
            other => panic!("wrong family {other:?}"),
        }
        assert!(matches!(
            chart_of(&spec, Mat2::new(1.0, 0.0, 1.0, 1.0), DEFAULT_TOL),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn conjugator_must_be_invertible() {
        assert!(GroupSpec::new(Family::Diagonal, Mat2::new(1.0, 1.0, 1.0, 1.0)).is_err());
        assert!(GroupSpec::shearlet(f64::NAN).is_err());
    }
}
