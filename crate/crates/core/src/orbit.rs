//! Dual orbits, canonical forms and the coorbit-equivalence decision.
//!
//! For every group in the three families the complement of the open dual
//! orbit is a union of zero, one or two lines through the origin. Those
//! lines, together with the component count and (for shearlets) the
//! anisotropy exponent, decide coorbit equivalence completely.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{
    component_representatives, contains, lie_algebra_basis, Family, GroupSpec, DEFAULT_TOL,
};
use crate::linalg::{line_distance, reduce_line_angle, Mat2, Vec2};

/// A set of at most two distinct lines through the origin, each stored as
/// its angle in `[0, π)`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LineSet {
    angles: Vec<f64>,
}

impl LineSet {
    pub fn empty() -> Self {
        Self { angles: Vec::new() }
    }

    /// Builds a line set; angles are reduced mod π and must be pairwise
    /// separated by more than `tol`.
    pub fn new(angles: &[f64], tol: f64) -> Result<Self> {
        if angles.len() > 2 {
            return Err(Error::OutOfRange(format!(
                "a line set holds at most two lines, got {}",
                angles.len()
            )));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::OutOfRange("non-finite line angle".into()));
        }
        let mut angles: Vec<f64> = angles.iter().map(|&a| reduce_line_angle(a)).collect();
        angles.sort_by(f64::total_cmp);
        if angles.len() == 2 && line_distance(angles[0], angles[1]) <= tol {
            return Err(Error::Degenerate(format!(
                "coincident lines at {} and {}",
                angles[0], angles[1]
            )));
        }
        Ok(Self { angles })
    }

    fn from_directions(dirs: impl IntoIterator<Item = Vec2>) -> Self {
        let mut angles: Vec<f64> = dirs.into_iter().map(Vec2::line_angle).collect();
        angles.sort_by(f64::total_cmp);
        Self { angles }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Image of the line set under a linear map.
    pub fn map(&self, m: Mat2) -> Self {
        Self::from_directions(self.angles.iter().map(|&a| m.apply(Vec2::from_angle(a))))
    }

    /// Setwise equality: some matching pairs every line with one at
    /// distance at most `tol` in the mod-π angle metric.
    pub fn approx_eq(&self, other: &LineSet, tol: f64) -> bool {
        let (a, b) = (&self.angles, &other.angles);
        match (a.len(), b.len()) {
            (0, 0) => true,
            (1, 1) => line_distance(a[0], b[0]) <= tol,
            (2, 2) => {
                (line_distance(a[0], b[0]) <= tol && line_distance(a[1], b[1]) <= tol)
                    || (line_distance(a[0], b[1]) <= tol && line_distance(a[1], b[0]) <= tol)
            }
            _ => false,
        }
    }
}

impl fmt::Display for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:.6}°", a.to_degrees())?;
        }
        f.write_str("}")
    }
}

/// Representative of a coorbit-equivalence class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalForm {
    Similitude,
    /// Conjugate of the diagonal group by `A_{φ,s} = R_φ·[[1,0],[−s,1]]`.
    Diagonal { phi: f64, s: f64 },
    /// Conjugate of the shearlet group with exponent `c` by `R_φ`.
    Shearlet { phi: f64, c: f64 },
}

impl CanonicalForm {
    pub fn name(&self) -> &'static str {
        match self {
            CanonicalForm::Similitude => "similitude",
            CanonicalForm::Diagonal { .. } => "diagonal",
            CanonicalForm::Shearlet { .. } => "shearlet",
        }
    }

    /// Parameter-wise comparison; `φ` is compared mod π.
    pub fn approx_eq(&self, other: &CanonicalForm, tol: f64) -> bool {
        match (*self, *other) {
            (CanonicalForm::Similitude, CanonicalForm::Similitude) => true,
            (CanonicalForm::Diagonal { phi: p1, s: s1 }, CanonicalForm::Diagonal { phi: p2, s: s2 }) => {
                line_distance(p1, p2) <= tol && (s1 - s2).abs() <= tol
            }
            (CanonicalForm::Shearlet { phi: p1, c: c1 }, CanonicalForm::Shearlet { phi: p2, c: c2 }) => {
                line_distance(p1, p2) <= tol && (c1 - c2).abs() <= tol
            }
            _ => false,
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalForm::Similitude => f.write_str("Similitude"),
            CanonicalForm::Diagonal { phi, s } => write!(f, "Diagonal(phi={phi}, s={s})"),
            CanonicalForm::Shearlet { phi, c } => write!(f, "Shearlet(phi={phi}, c={c})"),
        }
    }
}

/// Outcome of a coorbit-equivalence test, with the data it was based on.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub component_counts: (u32, u32),
    pub complements: (LineSet, LineSet),
    pub canonicals: (CanonicalForm, CanonicalForm),
    pub reason: String,
}

/// Complement of the open dual orbit `B^{-T}·O_std`, as a line set.
pub fn orbit_complement(spec: &GroupSpec) -> LineSet {
    let to_dual = spec
        .conjugator()
        .inverse_transpose()
        .expect("conjugator checked at construction");
    LineSet::from_directions(
        spec.family()
            .complement_angles()
            .iter()
            .map(|&a| to_dual.apply(Vec2::from_angle(a))),
    )
}

pub fn component_count(spec: &GroupSpec) -> u32 {
    spec.component_count()
}

/// Whether `ζ` lies in the open dual orbit, at least `tol·|B^T ζ|` away
/// from every complement line in standard coordinates.
pub fn orbit_contains(spec: &GroupSpec, zeta: Vec2, tol: f64) -> bool {
    if !zeta.is_finite() {
        return false;
    }
    let eta = spec.conjugator().transpose().apply(zeta);
    let r = eta.norm();
    if r == 0.0 {
        return false;
    }
    spec.family().complement_angles().iter().all(|&a| {
        let d = Vec2::from_angle(a);
        (d.x * eta.y - d.y * eta.x).abs() > tol * r
    })
}

/// Finds `(φ, s)` with `R_φ·S_s` mapping the coordinate axes onto the two
/// given lines.
///
/// For perpendicular lines (`s = 0`) both `φ` and `φ + π/2` satisfy the
/// set equation; the smaller verified angle is returned.
pub fn lines_to_phi_s(lines: &LineSet, tol: f64) -> Result<(f64, f64)> {
    let a = lines.angles();
    if a.len() != 2 {
        return Err(Error::Degenerate(format!(
            "expected two lines, got {}",
            a.len()
        )));
    }
    let (a1, a2) = (a[0], a[1]);
    let gap = a2 - a1;
    let theta = gap.min(PI - gap);
    if theta <= tol {
        return Err(Error::Degenerate("coincident lines".into()));
    }
    // cot(π/2) evaluates to ~6e-17; snap rounding-level values to zero
    let s = match theta.cos() / theta.sin() {
        s if s < 4.0 * f64::EPSILON => 0.0,
        s => s,
    };

    let mut verified: Vec<f64> = [reduce_line_angle(-a1), reduce_line_angle(-a2)]
        .into_iter()
        .filter(|&phi| {
            let m = Mat2::rotation(phi) * Mat2::shear(s);
            LineSet::from_directions([m.apply(Vec2::new(1.0, 0.0)), m.apply(Vec2::new(0.0, 1.0))])
                .approx_eq(lines, tol)
        })
        .collect();
    verified.sort_by(f64::total_cmp);
    match verified.first() {
        Some(&phi) => Ok((phi, s)),
        // Only reachable if rounding pushes both candidates past `tol`;
        // fall back to the branch selected by the gap.
        None => {
            let phi = if gap <= PI / 2.0 { -a1 } else { -a2 };
            Ok((reduce_line_angle(phi), s))
        }
    }
}

/// Canonical representative of the coorbit-equivalence class of `spec`.
pub fn canonicalize(spec: &GroupSpec) -> CanonicalForm {
    canonicalize_with_tol(spec, DEFAULT_TOL)
}

pub fn canonicalize_with_tol(spec: &GroupSpec, tol: f64) -> CanonicalForm {
    match spec.family() {
        Family::Similitude => CanonicalForm::Similitude,
        Family::Diagonal => {
            let (phi, s) = lines_to_phi_s(&orbit_complement(spec), tol)
                .expect("an invertible conjugator keeps the two axes distinct");
            CanonicalForm::Diagonal { phi, s }
        }
        Family::Shearlet { c } => {
            let alpha = orbit_complement(spec).angles()[0];
            CanonicalForm::Shearlet {
                phi: reduce_line_angle(PI / 2.0 - alpha),
                c,
            }
        }
    }
}

/// `A_{φ,s} = (R_φ S_s)^{-T} = R_φ·[[1,0],[−s,1]]`.
pub fn diagonal_cross_section(phi: f64, s: f64) -> Mat2 {
    Mat2::rotation(phi) * Mat2::new(1.0, 0.0, -s, 1.0)
}

/// The group named by a canonical form.
pub fn rep_group(cf: &CanonicalForm) -> Result<GroupSpec> {
    let check_phi = |phi: f64| {
        if !(phi.is_finite() && (0.0..PI).contains(&phi)) {
            return Err(Error::OutOfRange(format!("phi = {phi} not in [0, pi)")));
        }
        Ok(())
    };
    match *cf {
        CanonicalForm::Similitude => Ok(GroupSpec::similitude()),
        CanonicalForm::Diagonal { phi, s } => {
            check_phi(phi)?;
            if !(s.is_finite() && s >= 0.0) {
                return Err(Error::OutOfRange(format!("s = {s} not in [0, inf)")));
            }
            GroupSpec::new(Family::Diagonal, diagonal_cross_section(phi, s))
        }
        CanonicalForm::Shearlet { phi, c } => {
            check_phi(phi)?;
            GroupSpec::new(Family::Shearlet { c }, Mat2::rotation(phi))
        }
    }
}

/// Decides `H₁ ∼_Co H₂`: same dual orbit, and for two-component orbits
/// also the same exponent (hence the same identity component).
pub fn coorbit_equivalent(s1: &GroupSpec, s2: &GroupSpec, tol: f64) -> EquivalenceVerdict {
    let component_counts = (s1.component_count(), s2.component_count());
    let complements = (orbit_complement(s1), orbit_complement(s2));
    let canonicals = (canonicalize_with_tol(s1, tol), canonicalize_with_tol(s2, tol));
    let same_orbit = complements.0.approx_eq(&complements.1, tol);

    let (equivalent, reason) = if component_counts.0 != component_counts.1 {
        (
            false,
            format!(
                "dual orbits have {} vs {} connected components",
                component_counts.0, component_counts.1
            ),
        )
    } else if !same_orbit {
        (
            false,
            format!(
                "orbit complements differ: {} vs {}",
                complements.0, complements.1
            ),
        )
    } else {
        match (s1.family(), s2.family()) {
            (Family::Shearlet { c: c1 }, Family::Shearlet { c: c2 }) => {
                if (c1 - c2).abs() <= tol {
                    (
                        true,
                        format!(
                            "common complement {} with 2 components and equal exponents c = {c1}",
                            complements.0
                        ),
                    )
                } else {
                    (
                        false,
                        format!(
                            "common complement {} but identity components differ: c = {c1} vs {c2}",
                            complements.0
                        ),
                    )
                }
            }
            _ => (
                true,
                format!(
                    "common complement {} with {} components",
                    complements.0, component_counts.0
                ),
            ),
        }
    };

    EquivalenceVerdict {
        equivalent,
        component_counts,
        complements,
        canonicals,
        reason,
    }
}

/// `A ∈ S_O`: `A^T` maps the orbit complement onto itself.
pub fn in_orbit_symmetry(spec: &GroupSpec, a: Mat2, tol: f64) -> Result<bool> {
    let a = a.checked_invertible()?;
    let lines = orbit_complement(spec);
    Ok(lines.map(a.transpose()).approx_eq(&lines, tol))
}

/// `A ∈ N_H`: conjugation by `A` preserves the Lie algebra and sends each
/// connected component into the group.
pub fn in_normalizer(spec: &GroupSpec, a: Mat2, tol: f64) -> Result<bool> {
    let a_inv = a.inverse()?;
    let basis = lie_algebra_basis(spec);
    let moved: Vec<Mat2> = basis.iter().map(|&x| a * x * a_inv).collect();
    if !same_span(&basis, &moved, tol) || !same_span(&moved, &basis, tol) {
        return Ok(false);
    }
    for g in component_representatives(spec) {
        if !contains(spec, a * g * a_inv, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A ∈ S_H`: `A·H·A⁻¹ ∼_Co H`.
pub fn in_coorbit_symmetry(spec: &GroupSpec, a: Mat2, tol: f64) -> Result<bool> {
    let moved = spec.conjugate(a)?;
    Ok(coorbit_equivalent(&moved, spec, tol).equivalent)
}

/// Membership of a matrix in `N_H`, `S_H` and `S_O`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryMembership {
    pub normalizer: bool,
    pub coorbit_symmetry: bool,
    pub orbit_symmetry: bool,
}

pub fn symmetry_membership(spec: &GroupSpec, a: Mat2, tol: f64) -> Result<SymmetryMembership> {
    Ok(SymmetryMembership {
        normalizer: in_normalizer(spec, a, tol)?,
        coorbit_symmetry: in_coorbit_symmetry(spec, a, tol)?,
        orbit_symmetry: in_orbit_symmetry(spec, a, tol)?,
    })
}

/// Every matrix of `other` lies in the span of `basis` (both viewed as
/// vectors in ℝ⁴), up to relative residual `tol`.
fn same_span(basis: &[Mat2], other: &[Mat2], tol: f64) -> bool {
    let mut ortho: Vec<[f64; 4]> = Vec::with_capacity(basis.len());
    for m in basis {
        let mut v = m.entries();
        for q in &ortho {
            let d = dot4(&v, q);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        let n = dot4(&v, &v).sqrt();
        if n > 0.0 {
            ortho.push(v.map(|x| x / n));
        }
    }
    other.iter().all(|m| {
        let mut v = m.entries();
        let n0 = dot4(&v, &v).sqrt();
        for q in &ortho {
            let d = dot4(&v, q);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        dot4(&v, &v).sqrt() <= tol * n0.max(f64::MIN_POSITIVE)
    })
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOL;

    #[test]
    fn complements_of_standard_groups() {
        assert!(orbit_complement(&GroupSpec::similitude()).is_empty());
        assert_eq!(orbit_complement(&GroupSpec::diagonal()).angles(), &[0.0, PI / 2.0]);
        assert_eq!(
            orbit_complement(&GroupSpec::shearlet(0.3).unwrap()).angles(),
            &[PI / 2.0]
        );
    }

    #[test]
    fn complement_of_cross_section_conjugate() {
        // B = (R_{π/4} S_1)^{-T}, so B^{-T} = R_{π/4} S_1
        let b = diagonal_cross_section(PI / 4.0, 1.0);
        let spec = GroupSpec::new(Family::Diagonal, b).unwrap();
        let expected = LineSet::new(&[0.0, 3.0 * PI / 4.0], TOL).unwrap();
        assert!(orbit_complement(&spec).approx_eq(&expected, 1e-12));
    }

    #[test]
    fn component_counts() {
        let b = Mat2::new(2.0, 1.0, -1.0, 3.0);
        assert_eq!(component_count(&GroupSpec::similitude()), 1);
        assert_eq!(
            component_count(&GroupSpec::new(Family::Diagonal, b).unwrap()),
            4
        );
        let shr = GroupSpec::new(Family::Shearlet { c: -1.0 }, Mat2::rotation(0.3)).unwrap();
        assert_eq!(component_count(&shr), 2);
    }

    #[test]
    fn orbit_membership_examples() {
        assert!(!orbit_contains(&GroupSpec::similitude(), Vec2::ZERO, TOL));
        assert!(orbit_contains(&GroupSpec::similitude(), Vec2::new(0.0, 1e-3), TOL));
        assert!(!orbit_contains(&GroupSpec::diagonal(), Vec2::new(1.0, 0.0), TOL));
        assert!(orbit_contains(&GroupSpec::diagonal(), Vec2::new(1.0, 0.5), TOL));
        let shr = GroupSpec::shearlet(2.0).unwrap();
        assert!(orbit_contains(&shr, Vec2::new(1.0, 5.0), TOL));
        assert!(!orbit_contains(&shr, Vec2::new(0.0, 5.0), TOL));
    }

    #[test]
    fn lines_to_phi_s_examples() {
        let (phi, s) = lines_to_phi_s(&LineSet::new(&[0.0, PI / 2.0], TOL).unwrap(), TOL).unwrap();
        assert_eq!((phi, s.abs() < 1e-15), (0.0, true));

        let (phi, s) =
            lines_to_phi_s(&LineSet::new(&[0.0, 3.0 * PI / 4.0], TOL).unwrap(), TOL).unwrap();
        assert!((phi - PI / 4.0).abs() < 1e-12);
        assert!((s - 1.0).abs() < 1e-12);

        // perpendicular pair: candidates 5π/6 and π/3 both verify
        let lines = LineSet::new(&[PI / 6.0, PI / 2.0 + PI / 6.0], TOL).unwrap();
        let (phi, s) = lines_to_phi_s(&lines, TOL).unwrap();
        assert!((phi - PI / 3.0).abs() < 1e-12);
        assert!(s.abs() < 1e-12);
        for cand in [PI / 3.0, 5.0 * PI / 6.0] {
            let m = Mat2::rotation(cand);
            let img = LineSet::new(&[0.0, PI / 2.0], TOL).unwrap().map(m);
            assert!(img.approx_eq(&lines, 1e-12));
        }
    }

    #[test]
    fn coincident_lines_rejected() {
        assert!(LineSet::new(&[0.2, 0.2 + PI], TOL).is_err());
        assert!(lines_to_phi_s(&LineSet::new(&[0.2], TOL).unwrap(), TOL).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let spec = GroupSpec::new(Family::Shearlet { c: 2.0 }, Mat2::rotation(0.7)).unwrap();
        let cf = canonicalize(&spec);
        assert!(cf.approx_eq(&CanonicalForm::Shearlet { phi: 0.7, c: 2.0 }, 1e-12));

        let spec = GroupSpec::new(Family::Similitude, Mat2::new(3.0, 1.0, 2.0, -5.0)).unwrap();
        assert_eq!(canonicalize(&spec), CanonicalForm::Similitude);

        let spec = GroupSpec::new(Family::Diagonal, diagonal_cross_section(1.1, 0.4)).unwrap();
        assert!(canonicalize(&spec).approx_eq(&CanonicalForm::Diagonal { phi: 1.1, s: 0.4 }, 1e-12));
    }

    #[test]
    fn rep_group_examples() {
        let g = rep_group(&CanonicalForm::Diagonal { phi: 0.0, s: 0.0 }).unwrap();
        assert_eq!(g, GroupSpec::diagonal());
        let g = rep_group(&CanonicalForm::Diagonal { phi: PI / 4.0, s: 1.0 }).unwrap();
        let expected = Mat2::rotation(PI / 4.0) * Mat2::new(1.0, 0.0, -1.0, 1.0);
        assert_eq!(g.conjugator(), expected);
        // matches (R_φ S_s)^{-T}
        let alt = (Mat2::rotation(PI / 4.0) * Mat2::shear(1.0))
            .inverse_transpose()
            .unwrap();
        assert!(alt.rel_distance(expected) < 1e-15);
        let g = rep_group(&CanonicalForm::Shearlet { phi: 0.7, c: 2.0 }).unwrap();
        assert_eq!(g.family(), Family::Shearlet { c: 2.0 });
        assert_eq!(g.conjugator(), Mat2::rotation(0.7));

        assert!(rep_group(&CanonicalForm::Diagonal { phi: PI, s: 0.0 }).is_err());
        assert!(rep_group(&CanonicalForm::Diagonal { phi: 0.0, s: -1.0 }).is_err());
        assert!(rep_group(&CanonicalForm::Shearlet { phi: 0.1, c: f64::INFINITY }).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let s1 = GroupSpec::new(Family::Similitude, Mat2::new(1.0, 2.0, 3.0, 4.0)).unwrap();
        let s2 = GroupSpec::new(Family::Similitude, Mat2::new(-0.5, 0.1, 0.2, 7.0)).unwrap();
        assert!(coorbit_equivalent(&s1, &s2, TOL).equivalent);

        let v = coorbit_equivalent(
            &GroupSpec::shearlet(1.0).unwrap(),
            &GroupSpec::shearlet(1.5).unwrap(),
            TOL,
        );
        assert!(!v.equivalent);
        assert!(v.complements.0.approx_eq(&v.complements.1, TOL));

        let a = diagonal_cross_section(0.4, 2.5);
        let d1 = GroupSpec::new(Family::Diagonal, a).unwrap();
        let d2 = GroupSpec::new(Family::Diagonal, a * Mat2::diag(2.0, -3.0)).unwrap();
        let v = coorbit_equivalent(&d1, &d2, TOL);
        assert!(v.equivalent, "{}", v.reason);
        assert!(v.canonicals.0.approx_eq(&v.canonicals.1, 1e-9));
    }

    #[test]
    fn symmetry_examples() {
        let sim = GroupSpec::similitude();
        let diag = GroupSpec::diagonal();
        let shr = GroupSpec::shearlet(1.7).unwrap();
        let shear = Mat2::new(1.0, 1.0, 0.0, 1.0);

        assert!(in_orbit_symmetry(&sim, Mat2::new(3.0, 1.0, 1.0, 2.0), TOL).unwrap());
        assert!(in_orbit_symmetry(&diag, Mat2::SWAP, TOL).unwrap());
        assert!(!in_orbit_symmetry(&shr, Mat2::rotation(0.3), TOL).unwrap());

        assert!(in_normalizer(&sim, Mat2::diag(1.0, -1.0), TOL).unwrap());
        assert!(!in_normalizer(&sim, shear, TOL).unwrap());
        assert!(in_normalizer(&diag, Mat2::SWAP, TOL).unwrap());

        assert!(in_coorbit_symmetry(&sim, Mat2::new(0.3, -2.0, 1.1, 0.4), TOL).unwrap());
        assert!(in_coorbit_symmetry(&shr, Mat2::new(2.0, -5.0, 0.0, 0.1), TOL).unwrap());
        assert!(!in_coorbit_symmetry(&diag, Mat2::rotation(0.2), TOL).unwrap());

        assert!(in_normalizer(&diag, Mat2::ZERO, TOL).is_err());
        assert!(in_orbit_symmetry(&diag, Mat2::ZERO, TOL).is_err());
        assert!(in_coorbit_symmetry(&diag, Mat2::ZERO, TOL).is_err());
    }
}
