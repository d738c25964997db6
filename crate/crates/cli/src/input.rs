//! Input files: systems, targets, gains and initial states.

use std::fs;
use std::path::Path;

use quatplace::{QMatrix, QPoly, Quaternion, SimilarityClass, Spectrum, SystemHx};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// SHA-256 over every input consumed, in order, each prefixed by its byte
/// length.
#[derive(Default, Clone)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn update(&mut self, bytes: &[u8]) {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    pub fn hex(&self) -> String {
        format!("sha256:{}", hex::encode(self.0.clone().finalize()))
    }
}

pub fn read(path: &Path, digest: &mut InputDigest) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    digest.update(&bytes);
    String::from_utf8(bytes).map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<[f64; 4]>>,
    #[serde(rename = "B", default)]
    b: Option<Vec<[f64; 4]>>,
    #[serde(default)]
    label: Option<String>,
}

/// `{n, A, B, label?}`. `A` is `n` rows of `n` quaternions, `B` a list of
/// `n` quaternions. Quaternions are `[w, x, y, z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemFile {
    pub n: usize,
    pub a: QMatrix,
    pub b: Option<QMatrix>,
    pub label: Option<String>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawSystem = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("system file: {e}")))?;
        let n = raw.n;
        if n == 0 {
            return Err(CliError::Parse("system file: n must be positive".into()));
        }
        if raw.a.len() != n || raw.a.iter().any(|r| r.len() != n) {
            return Err(CliError::Parse(format!("system file: A must be {n}x{n}")));
        }
        let a = QMatrix::from_rows(&raw.a.iter().map(|r| quaternions(r)).collect::<Result<Vec<_>, _>>()?)
            .map_err(|e| CliError::Parse(format!("system file: {e}")))?;
        let b = match raw.b {
            Some(b) if b.len() != n => return Err(CliError::Parse(format!("system file: B must have {n} entries"))),
            Some(b) => Some(QMatrix::column_vector(&quaternions(&b)?)),
            None => None,
        };
        Ok(Self { n, a, b, label: raw.label })
    }

    pub fn load(path: &Path, digest: &mut InputDigest) -> Result<Self, CliError> {
        Self::parse(&read(path, digest)?)
    }

    pub fn system(&self) -> Result<SystemHx, CliError> {
        let b = self.b.clone().ok_or_else(|| CliError::Parse("system file: B is required".into()))?;
        Ok(SystemHx::new(self.a.clone(), b)?)
    }
}

fn quaternion(v: &[f64; 4]) -> Result<Quaternion, CliError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(Quaternion::from_array(*v))
    } else {
        Err(CliError::Parse("non-finite quaternion component".into()))
    }
}

fn quaternions(v: &[[f64; 4]]) -> Result<Vec<Quaternion>, CliError> {
    v.iter().map(quaternion).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTarget {
    #[serde(default)]
    real_poles: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    quaternion_roots: Option<Vec<[f64; 4]>>,
    #[serde(default)]
    polynomial: Option<Vec<[f64; 4]>>,
    #[serde(default)]
    #[allow(dead_code)]
    label: Option<String>,
}

/// Exactly one of
///
/// * `real_poles`: `[re, im]` pairs; `im ≠ 0` names the spherical class
///   `[re + |im| i]` and uses two degrees, a real pole uses one;
/// * `quaternion_roots`: `n` quaternions, placed as right zeros in order;
/// * `polynomial`: monic coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    RealPoles(Vec<SimilarityClass>),
    Roots(Vec<Quaternion>),
    Polynomial(QPoly),
}

impl Target {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawTarget = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("target file: {e}")))?;
        let present = [raw.real_poles.is_some(), raw.quaternion_roots.is_some(), raw.polynomial.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(CliError::Parse(
                "target file: exactly one of real_poles, quaternion_roots, polynomial is required".into(),
            ));
        }
        if let Some(poles) = raw.real_poles {
            if poles.iter().flatten().any(|x| !x.is_finite()) {
                return Err(CliError::Parse("target file: non-finite pole".into()));
            }
            return Ok(Target::RealPoles(poles.iter().map(|p| SimilarityClass::new(p[0], p[1])).collect()));
        }
        if let Some(roots) = raw.quaternion_roots {
            return Ok(Target::Roots(quaternions(&roots)?));
        }
        let coeffs = raw.polynomial.expect("one variant present");
        Ok(Target::Polynomial(QPoly::new(quaternions(&coeffs)?)))
    }

    pub fn load(path: &Path, digest: &mut InputDigest) -> Result<Self, CliError> {
        Self::parse(&read(path, digest)?)
    }

    /// Desired monic polynomial of degree `n`.
    pub fn polynomial(&self, n: usize) -> Result<QPoly, CliError> {
        match self {
            Target::RealPoles(classes) => Ok(QPoly::from_real_poles(classes, n)?),
            Target::Roots(roots) => {
                if roots.len() != n {
                    return Err(CliError::Parse(format!(
                        "target file: {} roots given for order {n}",
                        roots.len()
                    )));
                }
                Ok(QPoly::from_right_zeros(roots)?)
            }
            Target::Polynomial(p) => Ok(p.clone()),
        }
    }

    /// Target classes with multiplicity.
    pub fn spectrum(&self, n: usize) -> Result<Spectrum, CliError> {
        match self {
            Target::Roots(roots) => {
                self.polynomial(n)?;
                Ok(Spectrum::from_classes(roots.iter().map(|r| r.class())))
            }
            _ => Ok(self.polynomial(n)?.right_zero_classes()?),
        }
    }
}

/// Any JSON object with a `K` field holding a `1×n` nested matrix; design
/// reports qualify.
pub fn parse_gain(text: &str, n: usize) -> Result<QMatrix, CliError> {
    #[derive(Deserialize)]
    struct RawGain {
        #[serde(rename = "K")]
        k: Vec<Vec<[f64; 4]>>,
    }
    let raw: RawGain = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("gain file: {e}")))?;
    if raw.k.len() != 1 || raw.k[0].len() != n {
        return Err(CliError::Parse(format!("gain file: K must be 1x{n}")));
    }
    Ok(QMatrix::row_vector(&quaternions(&raw.k[0])?))
}

pub fn load_gain(path: &Path, n: usize, digest: &mut InputDigest) -> Result<QMatrix, CliError> {
    parse_gain(&read(path, digest)?, n)
}

/// Initial state as a JSON list of `n` quaternions.
pub fn parse_state(text: &str, n: usize) -> Result<QMatrix, CliError> {
    let raw: Vec<[f64; 4]> = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("x0: {e}")))?;
    if raw.len() != n {
        return Err(CliError::Parse(format!("x0 must have {n} entries")));
    }
    Ok(QMatrix::column_vector(&quaternions(&raw)?))
}
