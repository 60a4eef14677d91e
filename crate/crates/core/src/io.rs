//! JSON file formats.
//!
//! Element ids are 0-based. λρ-system maps are keyed by `"a,b"`; the
//! skeleton of a system or pre-system is either an inline semigroup object
//! or a path, resolved against the directory of the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lr_product::ProductSemigroup;
use crate::lr_system::{LrSystem, SystemData, SystemError};
use crate::pre_system::{PreError, PreLrSystem};
use crate::semigroup::{Congruence, FiniteSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
    #[error("cannot write {path}: {reason}")]
    Write { path: String, reason: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Pre(#[from] PreError),
}

pub type Result<T> = std::result::Result<T, IoError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SemigroupFile {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        Self {
            order: s.order(),
            table: s.rows(),
            labels: s.labels().map(<[String]>::to_vec),
        }
    }

    pub fn build(self) -> Result<FiniteSemigroup> {
        Ok(FiniteSemigroup::from_table(self.order, self.table, self.labels)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub classes: Vec<Vec<usize>>,
}

impl PartitionFile {
    pub fn from_congruence(c: &Congruence) -> Self {
        Self {
            classes: c.classes().to_vec(),
        }
    }

    pub fn build(&self, s: &FiniteSemigroup) -> Result<Congruence> {
        Ok(Congruence::from_partition(s, &self.classes)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SkeletonRef {
    Inline(SemigroupFile),
    File(String),
}

impl SkeletonRef {
    fn resolve(self, base: Option<&Path>) -> Result<FiniteSemigroup> {
        match self {
            SkeletonRef::Inline(f) => f.build(),
            SkeletonRef::File(p) => {
                let path = base.map_or_else(|| PathBuf::from(&p), |b| b.join(&p));
                read_semigroup(&path)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub skeleton: SkeletonRef,
    pub index_sizes: Vec<usize>,
    pub lambda: BTreeMap<String, Vec<usize>>,
    pub rho: BTreeMap<String, Vec<usize>>,
}

fn pair_key(a: usize, b: usize) -> String {
    format!("{a},{b}")
}

fn parse_key(key: &str, n: usize) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a < n && b < n).then_some((a, b))
}

fn pair_maps(map: BTreeMap<String, Vec<usize>>, n: usize, name: &str) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Option<Vec<usize>>> = vec![None; n * n];
    for (key, value) in map {
        let (a, b) = parse_key(&key, n).ok_or_else(|| IoError::Schema(format!("{name}: bad key {key:?}")))?;
        if out[a * n + b].replace(value).is_some() {
            return Err(IoError::Schema(format!("{name}: duplicate key {key:?}")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| IoError::Schema(format!("{name}: missing key \"{}\"", pair_key(i / n, i % n)))))
        .collect()
}

impl SystemFile {
    pub fn from_system(sys: &SystemData) -> Self {
        let s = sys.skeleton();
        let mut lambda = BTreeMap::new();
        let mut rho = BTreeMap::new();
        for a in s.elements() {
            for b in s.elements() {
                lambda.insert(pair_key(a, b), sys.lambda(a, b).to_vec());
                rho.insert(pair_key(a, b), sys.rho(a, b).to_vec());
            }
        }
        Self {
            skeleton: SkeletonRef::Inline(SemigroupFile::from_semigroup(s)),
            index_sizes: sys.index_sizes().to_vec(),
            lambda,
            rho,
        }
    }

    /// Arity-checked data; the axioms are not checked.
    pub fn build_data(self, base: Option<&Path>) -> Result<SystemData> {
        let skeleton = self.skeleton.resolve(base)?;
        let n = skeleton.order();
        let lambda = pair_maps(self.lambda, n, "lambda")?;
        let rho = pair_maps(self.rho, n, "rho")?;
        Ok(SystemData::new(skeleton, self.index_sizes, lambda, rho)?)
    }

    pub fn build(self, base: Option<&Path>) -> Result<LrSystem> {
        Ok(self.build_data(base)?.validate()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreSystemFile {
    pub skeleton: SkeletonRef,
    pub base_size: usize,
    pub index_sizes: Vec<usize>,
    pub lambda1: Vec<Vec<usize>>,
    pub rho1: Vec<Vec<usize>>,
}

impl PreSystemFile {
    pub fn from_pre(pre: &PreLrSystem) -> Self {
        Self {
            skeleton: SkeletonRef::Inline(SemigroupFile::from_semigroup(pre.skeleton())),
            base_size: pre.base_size(),
            index_sizes: pre.index_sizes().to_vec(),
            lambda1: pre.lambda1_maps().to_vec(),
            rho1: pre.rho1_maps().to_vec(),
        }
    }

    pub fn build(self, base: Option<&Path>) -> Result<PreLrSystem> {
        let skeleton = self.skeleton.resolve(base)?;
        Ok(PreLrSystem::new(
            skeleton,
            self.base_size,
            self.index_sizes,
            self.lambda1,
            self.rho1,
        )?)
    }
}

/// A product table. [`read_semigroup`] accepts it in place of a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub element_labels: Vec<String>,
    pub skeleton_of: Vec<usize>,
}

impl ProductFile {
    pub fn from_product(p: &ProductSemigroup) -> Self {
        Self {
            order: p.order(),
            table: p.table().rows(),
            element_labels: (0..p.order()).map(|i| p.label(i).to_string()).collect(),
            skeleton_of: (0..p.order()).map(|i| p.skeleton_of(i)).collect(),
        }
    }

    pub fn build(self) -> Result<FiniteSemigroup> {
        Ok(FiniteSemigroup::from_table(
            self.order,
            self.table,
            Some(self.element_labels),
        )?)
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value) + "\n").map_err(|e| IoError::Write {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// Reads a semigroup file. Product files are accepted: their element
/// labels become the semigroup labels.
pub fn read_semigroup(path: &Path) -> Result<FiniteSemigroup> {
    let text = read_to_string(path)?;
    match from_json::<SemigroupFile>(&text) {
        Ok(f) => f.build(),
        Err(plain) => match from_json::<ProductFile>(&text) {
            Ok(p) => p.build(),
            Err(_) => Err(plain),
        },
    }
}

pub fn read_partition(path: &Path) -> Result<PartitionFile> {
    from_json(&read_to_string(path)?)
}

fn parent(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

pub fn read_system_data(path: &Path) -> Result<SystemData> {
    from_json::<SystemFile>(&read_to_string(path)?)?.build_data(parent(path))
}

pub fn read_system(path: &Path) -> Result<LrSystem> {
    Ok(read_system_data(path)?.validate()?)
}

pub fn read_pre_system(path: &Path) -> Result<PreLrSystem> {
    from_json::<PreSystemFile>(&read_to_string(path)?)?.build(parent(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr_product::build_product_default;
    use crate::pre_system::extract_pre;
    use crate::semigroup::NamedSemigroup;

    #[test]
    fn system_round_trip() {
        let ff = LrSystem::flipflop_example();
        let text = to_json(&SystemFile::from_system(&ff));
        let back = from_json::<SystemFile>(&text).unwrap().build(None).unwrap();
        assert_eq!(back, ff);
    }

    #[test]
    fn pre_round_trip() {
        let pre = extract_pre(&LrSystem::flipflop_example()).unwrap();
        let text = to_json(&PreSystemFile::from_pre(&pre));
        assert_eq!(from_json::<PreSystemFile>(&text).unwrap().build(None).unwrap(), pre);
    }

    #[test]
    fn product_reads_as_semigroup() {
        let z2 = NamedSemigroup::Cyclic(2).build().unwrap();
        let p = build_product_default(&LrSystem::lzero_example(), &z2).unwrap();
        let text = to_json(&ProductFile::from_product(&p));
        assert!(from_json::<SemigroupFile>(&text).is_err());
        let back = from_json::<ProductFile>(&text).unwrap().build().unwrap();
        assert_eq!(back.rows(), p.table().rows());
        assert_eq!(back.label(2), p.label(2));
    }

    #[test]
    fn keys_are_checked() {
        let ff = LrSystem::flipflop_example();
        let mut f = SystemFile::from_system(&ff);
        f.lambda.remove("1,0");
        let err = f.clone().build(None).unwrap_err();
        assert_eq!(err, IoError::Schema("lambda: missing key \"1,0\"".into()));
        f.lambda.insert("1;0".into(), vec![0]);
        assert!(matches!(f.build(None), Err(IoError::Schema(_))));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(from_json::<SemigroupFile>(r#"{"order":1,"table":[[0]],"extra":1}"#).is_err());
    }
}
