//! Coorbit-equivalence classification of the admissible planar dilation
//! groups, plus sampled continuous wavelet analysis over them.
//!
//! * [`group`]: the three standard families, conjugation, charts, Haar
//!   densities and the affine group law.
//! * [`orbit`]: dual-orbit complements, canonical forms, the equivalence
//!   decision and the symmetry-group tests.
//! * [`numerics`]: band-limited wavelets, FFT-based analysis, coorbit norms,
//!   Calderón constants, inversion and covariance checks.
//! * [`io`]: group-spec, signal and report file formats.
//! * [`cli`]: the `coorbit2d` command-line front end.

pub mod cli;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod numerics;
pub mod orbit;

pub use error::{Error, Result};
pub use group::{ChartPoint, Family, GroupSpec, Sign};
pub use linalg::{Mat2, Vec2};
pub use orbit::{canonicalize, coorbit_equivalent, CanonicalForm, EquivalenceVerdict, LineSet};
