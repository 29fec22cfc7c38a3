//! Dataset manifest: maps a dataset name to where its data comes from and
//! the shape it is expected to have.
//!
//! ```toml
//! [[dataset]]
//! name = "iris"
//! path = "iris.csv"        # relative to the manifest file
//! delimiter = ","          # ",", "whitespace", "tab" or any single char
//! label_column = 4         # zero-based
//! instances = 150
//! attributes = 4
//! classes = 3
//!
//! [[dataset]]
//! name = "artset1"
//! generator = "artset1"
//! seed = 253
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dataset::{generate_artset1, load_delimited, Dataset, Delimiter, Schema};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Built-in generator instead of a file. Only `"artset1"` exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "default_delimiter")]
    pub delimiter: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_column: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ignore_columns: Vec<usize>,
    #[serde(default)]
    pub header: bool,
    /// Cluster count when it differs from the number of labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clusters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    /// A missing file is reported but not treated as a failure.
    #[serde(default)]
    pub optional: bool,
}

fn default_delimiter() -> String {
    ",".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ManifestFile {
    #[serde(default, rename = "dataset")]
    datasets: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    /// Directory relative paths are resolved against.
    pub base_dir: PathBuf,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidationStatus {
    Ok,
    /// Optional dataset whose file does not exist.
    Missing,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub name: String,
    pub status: ValidationStatus,
    /// Loaded shape `(instances, attributes, classes)`, when loading worked.
    pub shape: Option<(usize, usize, usize)>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self
            .shape
            .map(|(n, m, k)| format!(" (n={n}, m={m}, K={k})"))
            .unwrap_or_default();
        match &self.status {
            ValidationStatus::Ok => write!(f, "ok       {}{shape}", self.name),
            ValidationStatus::Missing => write!(f, "missing  {} (optional, skipped)", self.name),
            ValidationStatus::Failed(why) => write!(f, "FAILED   {}{shape}: {why}", self.name),
        }
    }
}

impl Manifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, base_dir)
    }

    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let file: ManifestFile =
            toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        let manifest = Self {
            base_dir: base_dir.into(),
            entries: file.datasets,
        };
        for (i, e) in manifest.entries.iter().enumerate() {
            if manifest.entries[..i].iter().any(|o| o.name == e.name) {
                return Err(Error::Manifest(format!("duplicate dataset {:?}", e.name)));
            }
            match (&e.path, &e.generator) {
                (Some(_), None) | (None, Some(_)) => {}
                _ => {
                    return Err(Error::Manifest(format!(
                        "dataset {:?} needs exactly one of `path` or `generator`",
                        e.name
                    )))
                }
            }
        }
        Ok(manifest)
    }

    pub fn entry(&self, name: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn resolve(&self, entry: &ManifestEntry) -> Option<PathBuf> {
        entry.path.as_ref().map(|p| {
            if p.is_absolute() {
                p.clone()
            } else {
                self.base_dir.join(p)
            }
        })
    }

    /// True when the entry's data can be produced (generator, or file exists).
    pub fn is_available(&self, entry: &ManifestEntry) -> bool {
        entry.generator.is_some() || self.resolve(entry).is_some_and(|p| p.exists())
    }

    /// Loads a dataset and checks it against the declared shape.
    pub fn load_dataset(&self, name: &str) -> Result<Dataset> {
        let entry = self.entry(name).ok_or_else(|| Error::Validation {
            name: name.into(),
            reason: "not in manifest".into(),
        })?;
        let ds = self.load_entry(entry).map_err(|e| Error::Validation {
            name: name.into(),
            reason: e.to_string(),
        })?;
        check_shape(entry, &ds).map_err(|reason| Error::Validation {
            name: name.into(),
            reason,
        })?;
        Ok(ds)
    }

    fn load_entry(&self, entry: &ManifestEntry) -> Result<Dataset> {
        if let Some(generator) = &entry.generator {
            return match generator.as_str() {
                "artset1" => Ok(renamed(generate_artset1(entry.seed.unwrap_or(0)), &entry.name)),
                other => Err(Error::Manifest(format!("unknown generator {other:?}"))),
            };
        }
        let path = self.resolve(entry).expect("path checked at parse time");
        let schema = Schema {
            delimiter: entry.delimiter.parse::<Delimiter>()?,
            label_column: entry.label_column,
            ignore_columns: entry.ignore_columns.clone(),
            has_header: entry.header,
            num_classes: entry.clusters,
        };
        Ok(renamed(load_delimited(path, &schema)?, &entry.name))
    }

    pub fn validate(&self) -> Vec<ValidationReport> {
        self.entries
            .iter()
            .map(|entry| {
                let name = entry.name.clone();
                if entry.optional && !self.is_available(entry) {
                    return ValidationReport {
                        name,
                        status: ValidationStatus::Missing,
                        shape: None,
                    };
                }
                match self.load_entry(entry) {
                    Err(e) => ValidationReport {
                        name,
                        status: ValidationStatus::Failed(e.to_string()),
                        shape: None,
                    },
                    Ok(ds) => ValidationReport {
                        name,
                        status: match check_shape(entry, &ds) {
                            Ok(()) => ValidationStatus::Ok,
                            Err(why) => ValidationStatus::Failed(why),
                        },
                        shape: Some((ds.len(), ds.dim(), ds.num_classes())),
                    },
                }
            })
            .collect()
    }
}

fn renamed(ds: Dataset, name: &str) -> Dataset {
    if ds.name() == name {
        return ds;
    }
    let points = (0..ds.len())
        .map(|i| crate::dataset::DataPoint {
            values: ds.point(i).to_vec(),
            label: ds.classes().map(|c| ds.class_names()[c[i]].clone()),
        })
        .collect();
    Dataset::new(name, points, Some(ds.num_classes())).expect("re-wrapping a valid dataset")
}

fn check_shape(entry: &ManifestEntry, ds: &Dataset) -> std::result::Result<(), String> {
    let mut problems = Vec::new();
    let mut check = |what: &str, expected: Option<usize>, found: usize| {
        if let Some(e) = expected {
            if e != found {
                problems.push(format!("{what}: expected {e}, found {found}"));
            }
        }
    };
    check("instances", entry.instances, ds.len());
    check("attributes", entry.attributes, ds.dim());
    check("classes", entry.classes, ds.num_classes());
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.csv"), "1,2,x\n3,4,y\n").unwrap();
        let text = r#"
            [[dataset]]
            name = "a"
            path = "a.csv"
            label_column = 2
            instances = 2
            attributes = 2
            classes = 2

            [[dataset]]
            name = "bad-shape"
            path = "a.csv"
            label_column = 2
            instances = 3

            [[dataset]]
            name = "art"
            generator = "artset1"
            seed = 4
            instances = 250
            attributes = 3
            classes = 5

            [[dataset]]
            name = "absent"
            path = "nope.csv"
            optional = true
        "#;
        let m = Manifest::parse(text, dir.path()).unwrap();
        let reports = m.validate();
        assert_eq!(reports[0].status, ValidationStatus::Ok);
        assert!(matches!(reports[1].status, ValidationStatus::Failed(_)));
        assert_eq!(reports[2].status, ValidationStatus::Ok);
        assert_eq!(reports[3].status, ValidationStatus::Missing);

        let art = m.load_dataset("art").unwrap();
        assert_eq!(art.name(), "art");
        assert_eq!(art.values(), generate_artset1(4).values());
        assert!(m.load_dataset("bad-shape").is_err());
        assert!(m.load_dataset("zzz").is_err());
    }

    #[test]
    fn rejects_ambiguous_source() {
        let text = "[[dataset]]\nname = \"x\"\npath = \"x.csv\"\ngenerator = \"artset1\"\n";
        assert!(Manifest::parse(text, ".").is_err());
        let text = "[[dataset]]\nname = \"x\"\n";
        assert!(Manifest::parse(text, ".").is_err());
    }

    #[test]
    fn rejects_duplicates_and_unknown_keys() {
        let dup = "[[dataset]]\nname=\"x\"\ngenerator=\"artset1\"\n[[dataset]]\nname=\"x\"\ngenerator=\"artset1\"\n";
        assert!(Manifest::parse(dup, ".").is_err());
        let unknown = "[[dataset]]\nname=\"x\"\ngenerator=\"artset1\"\ncolour=1\n";
        assert!(Manifest::parse(unknown, ".").is_err());
    }
}
