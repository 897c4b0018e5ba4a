use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::linalg::Mat2;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conjugator: Option<[[f64; 2]; 2]>,
}

/// Parses a group spec document such as
/// `{"family":"shearlet","c":0.5,"conjugator":[[0,1],[-1,0]]}`.
pub fn group_spec_from_str(text: &str) -> Result<GroupSpec> {
    let doc: SpecDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let family = match (doc.family.as_str(), doc.c) {
        ("similitude", None) => Family::Similitude,
        ("diagonal", None) => Family::Diagonal,
        ("shearlet", Some(c)) => Family::Shearlet { c },
        ("shearlet", None) => return Err(Error::MissingKey("c")),
        ("similitude" | "diagonal", Some(_)) => {
            return Err(Error::Malformed(format!(
                "key `c` is only valid for shearlet, not `{}`",
                doc.family
            )))
        }
        (other, _) => {
            return Err(Error::Malformed(format!(
                "key `family`: unknown value `{other}`"
            )))
        }
    };
    let conjugator = doc.conjugator.map_or(Mat2::IDENTITY, Mat2::from_rows);
    GroupSpec::new(family, conjugator).map_err(|e| match e {
        Error::SingularMatrix(m) => Error::Malformed(format!("key `conjugator`: singular matrix {m}")),
        Error::OutOfRange(msg) => Error::Malformed(format!("key `c`: {msg}")),
        other => other,
    })
}

pub fn parse_group_spec(path: impl AsRef<Path>) -> Result<GroupSpec> {
    group_spec_from_str(&fs::read_to_string(path)?)
}

pub fn group_spec_to_string(spec: &GroupSpec) -> String {
    let c = match spec.family() {
        Family::Shearlet { c } => Some(c),
        _ => None,
    };
    let doc = SpecDoc {
        family: spec.family().name().to_string(),
        c,
        conjugator: Some(spec.conjugator().to_rows()),
    };
    serde_json::to_string(&doc).expect("spec document serializes")
}

pub fn write_group_spec(path: impl AsRef<Path>, spec: &GroupSpec) -> Result<()> {
    fs::write(path, group_spec_to_string(spec) + "\n")?;
    Ok(())
}
