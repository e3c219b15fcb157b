//! The flat JSON encoding of algebra elements.
//!
//! A document names its algebra by ground field, matrix size, extension,
//! central unit and involution, and lists every matrix entry as the array of
//! its real coefficients in the tower's basis order. Coefficients are written
//! with 17 significant digits, so parsing and re-emitting is byte-stable.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;
use symspace::algebra::{AlgebraElement, AlgebraSpec, AntiInvolution, Extension, Ground, Pair, ScalarTower};

use crate::error::{CliError, CliResult};

/// A real coefficient, serialized in scientific notation with 17
/// significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient(pub f64);

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom(format!("non-finite coefficient {}", self.0)));
        }
        // Negative zero is written as zero.
        let x = if self.0 == 0.0 { 0.0 } else { self.0 };
        let raw = RawValue::from_string(format!("{x:.16e}")).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let x = f64::deserialize(deserializer)?;
        if x.is_finite() {
            Ok(Coefficient(x))
        } else {
            Err(D::Error::custom("non-finite coefficient"))
        }
    }
}

/// The algebra header of a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraHeader {
    pub ground: String,
    pub n: usize,
    pub ext: String,
    #[serde(rename = "centralI")]
    pub central_i: bool,
    pub sigma: String,
}

impl AlgebraHeader {
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let ground = match spec.tower.ground {
            Ground::Real => "R",
            Ground::Complex => "C",
            Ground::Quaternion => "H",
        };
        let ext = match spec.tower.extension {
            Extension::None => "none",
            Extension::Complex => "c",
            Extension::Quaternion => "h",
        };
        AlgebraHeader {
            ground: ground.into(),
            n: spec.n,
            ext: ext.into(),
            central_i: spec.tower.central,
            sigma: spec.sigma.name(),
        }
    }

    pub fn to_spec(&self) -> CliResult<AlgebraSpec> {
        let ground = match self.ground.as_str() {
            "R" => Ground::Real,
            "C" => Ground::Complex,
            "H" => Ground::Quaternion,
            other => return Err(CliError::Input(format!("unknown ground {other:?}"))),
        };
        let extension = match self.ext.as_str() {
            "none" => Extension::None,
            "c" => Extension::Complex,
            "h" => Extension::Quaternion,
            other => return Err(CliError::Input(format!("unknown extension {other:?}"))),
        };
        let sigma = AntiInvolution::from_name(&self.sigma).map_err(|e| CliError::Input(e.to_string()))?;
        AlgebraSpec::new(self.n, ScalarTower::new(ground, extension, self.central_i), sigma)
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

/// One algebra element: header plus `n × n` coefficient arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub alg: AlgebraHeader,
    pub rows: Vec<Vec<Vec<Coefficient>>>,
}

impl ElementDocument {
    pub fn from_element(x: &AlgebraElement) -> Self {
        let n = x.n();
        let rows =
            (0..n).map(|i| (0..n).map(|j| x.entry(i, j).iter().map(|&c| Coefficient(c)).collect()).collect()).collect();
        ElementDocument { alg: AlgebraHeader::from_spec(x.spec()), rows }
    }

    pub fn to_element(&self) -> CliResult<AlgebraElement> {
        let spec = self.alg.to_spec()?;
        let dim = spec.tower.dim();
        if self.rows.len() != spec.n || self.rows.iter().any(|r| r.len() != spec.n) {
            return Err(CliError::Input(format!("rows must form a {0} x {0} array", spec.n)));
        }
        let mut data = Vec::with_capacity(spec.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != dim {
                    return Err(CliError::Input(format!(
                        "entry ({i}, {j}) has {} coefficients, expected {dim}",
                        entry.len()
                    )));
                }
                data.extend(entry.iter().map(|c| c.0));
            }
        }
        AlgebraElement::from_coefficients(spec, data).map_err(|e| CliError::Input(e.to_string()))
    }
}

/// A line of the projective model, written as the array of its two
/// coordinates.
pub fn pair_to_documents(x: &Pair) -> [ElementDocument; 2] {
    [ElementDocument::from_element(&x.first), ElementDocument::from_element(&x.second)]
}

pub fn pair_from_documents(docs: &[ElementDocument; 2]) -> CliResult<Pair> {
    let (first, second) = (docs[0].to_element()?, docs[1].to_element()?);
    if !first.spec().same_algebra(second.spec()) {
        return Err(CliError::Input("the two coordinates of a line live in different algebras".into()));
    }
    Ok(Pair::new(first, second))
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed document: {e}")))
}
