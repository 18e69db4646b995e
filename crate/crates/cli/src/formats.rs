//! On-disk formats: poset files, point files and the run report.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lexrecip::{FinitePoset, LexHomPoint, LexPoset};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub depth: usize,
}

impl PosetFile {
    pub fn to_lex(&self) -> lexrecip::Result<LexPoset> {
        let pairs: Vec<(&str, &str)> = self.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Ok(LexPoset::new(FinitePoset::new(&self.elements, &pairs)?, self.depth))
    }

    pub fn from_lex(q: &LexPoset) -> Self {
        let names = q.base.elements();
        Self {
            elements: names.to_vec(),
            covers: q
                .base
                .covers()
                .iter()
                .map(|&(a, b)| [names[a].clone(), names[b].clone()])
                .collect(),
            depth: q.depth,
        }
    }
}

/// A point as stored on disk: target element ids and real coordinates, both
/// in source element order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub base: Vec<String>,
    pub reals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointFile {
    Many { points: Vec<PointRecord> },
    One(PointRecord),
}

impl PointFile {
    pub fn into_records(self) -> Vec<PointRecord> {
        match self {
            PointFile::Many { points } => points,
            PointFile::One(p) => vec![p],
        }
    }
}

impl PointRecord {
    pub fn to_point(&self, target: &FinitePoset, stage: usize) -> Result<LexHomPoint> {
        let base = self
            .base
            .iter()
            .map(|id| target.index_of(id).with_context(|| format!("unknown target element `{id}`")))
            .collect::<Result<Vec<_>>>()?;
        Ok(LexHomPoint {
            base,
            reals: self.reals.clone(),
            stage,
        })
    }

    pub fn from_point(point: &LexHomPoint, target: &FinitePoset) -> Self {
        Self {
            base: point.base.iter().map(|&q| target.elements()[q].clone()).collect(),
            reals: point.reals.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// A file read from disk together with its digest.
pub struct Loaded<T> {
    pub value: T,
    pub digest: InputDigest,
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Loaded<T>> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_slice(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Loaded {
        value,
        digest: InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        },
    })
}

pub fn load_poset(path: &Path) -> Result<Loaded<LexPoset>> {
    let file: Loaded<PosetFile> = load_json(path)?;
    let value = file
        .value
        .to_lex()
        .with_context(|| format!("invalid poset in {}", path.display()))?;
    Ok(Loaded {
        value,
        digest: file.digest,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    TheoremViolated,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::TheoremViolated => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub result: serde_json::Value,
    pub status: Status,
}

pub fn require_finite_target(q: &LexPoset, what: &str) -> Result<()> {
    if q.depth != 0 {
        bail!("{what} must be a finite poset (depth 0), got depth {}", q.depth);
    }
    Ok(())
}
