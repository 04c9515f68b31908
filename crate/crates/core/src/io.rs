//! JSON documents: systems, families, structure reports and verdicts.
//!
//! Every document is a JSON object whose first key is `"version": 1`,
//! followed by the payload fields in declaration order. Unknown fields are
//! rejected on load. Saved files are pretty-printed and end with a newline,
//! so saving a loaded document reproduces it byte for byte.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::error::Category;
use serde_json::Value;

use crate::connectivity::{build_system, ConnectivitySystem, Descriptor};
use crate::duality::{DualityReport, EquivalenceVerdict, Nested};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::search::{HuntVerdict, SearchOutcome, SearchStatus};
use crate::separation::SeparationFamily;
use crate::structures::{AxiomId, AxiomResult, StructureKind, StructureReport, Variant};

pub const VERSION: u32 = 1;

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.name())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(AxiomId);
string_serde!(StructureKind);
string_serde!(Variant);

#[derive(Serialize)]
struct Versioned<'a, T> {
    version: u32,
    #[serde(flatten)]
    payload: &'a T,
}

fn classify(e: serde_json::Error) -> Error {
    match e.classify() {
        Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse(e),
    }
}

/// Canonical text of a document: version first, pretty-printed, newline-terminated.
pub fn to_canonical_string<T: Serialize>(doc: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(&Versioned { version: VERSION, payload: doc })?;
    text.push('\n');
    Ok(text)
}

/// Parses a document, checking and stripping the version.
pub fn from_document_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut value: Value = serde_json::from_str(text).map_err(classify)?;
    let Value::Object(map) = &mut value else {
        return Err(Error::Schema("document must be a JSON object".into()));
    };
    match map.remove("version") {
        Some(Value::Number(v)) if v.as_u64() == Some(VERSION as u64) => {}
        Some(other) => return Err(Error::Schema(format!("unsupported version {}", other))),
        None => return Err(Error::Schema("missing field `version`".into())),
    }
    serde_json::from_value(value).map_err(classify)
}

pub fn save<T: Serialize>(doc: &T, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_canonical_string(doc)?)?;
    Ok(())
}

pub fn load<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    from_document_str(&fs::read_to_string(path)?)
}

/// Loads and builds a system, labelled by the file stem.
pub fn load_system(path: impl AsRef<Path>) -> Result<ConnectivitySystem> {
    let path = path.as_ref();
    let descriptor: Descriptor = load(path)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(build_system(descriptor)?.with_label(label))
}

pub fn save_system(system: &ConnectivitySystem, path: impl AsRef<Path>) -> Result<()> {
    save(system.descriptor(), path)
}

/// Family file payload. `orders`, when present, must match the recomputed orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub k: u32,
    pub sides: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u32>>,
}

impl FamilyDoc {
    /// Canonical form, with orders recorded.
    pub fn from_family(family: &SeparationFamily) -> Self {
        FamilyDoc {
            k: family.k(),
            sides: family.sides().map(SubsetMask::to_vec).collect(),
            orders: Some(family.members().iter().map(|s| s.order()).collect()),
        }
    }

    /// Builds the family on `system`, recomputing and cross-checking orders.
    pub fn to_family(&self, system: &ConnectivitySystem) -> Result<SeparationFamily> {
        let n = system.n();
        let mut masks = Vec::with_capacity(self.sides.len());
        for side in &self.sides {
            let mask = SubsetMask::from_elements(n, side.iter().copied())?;
            if mask.len() != side.len() {
                return Err(Error::Schema(format!("side {:?} repeats an element", side)));
            }
            masks.push(mask);
        }
        if let Some(orders) = &self.orders {
            if orders.len() != masks.len() {
                return Err(Error::Schema(format!(
                    "{} orders declared for {} sides",
                    orders.len(),
                    masks.len()
                )));
            }
            for (mask, &declared) in masks.iter().zip(orders) {
                let computed = system.order(*mask);
                if computed != declared {
                    return Err(Error::OrderMismatch { side: mask.to_vec(), declared, computed });
                }
            }
        }
        SeparationFamily::from_sides(system, self.k, masks)
    }
}

pub fn load_family(path: impl AsRef<Path>, system: &ConnectivitySystem) -> Result<SeparationFamily> {
    load::<FamilyDoc>(path)?.to_family(system)
}

pub fn save_family(family: &SeparationFamily, path: impl AsRef<Path>) -> Result<()> {
    save(&FamilyDoc::from_family(family), path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomDoc {
    pub id: AxiomId,
    pub pass: bool,
    pub witness: Vec<Vec<usize>>,
    pub element: Option<usize>,
}

impl From<&AxiomResult> for AxiomDoc {
    fn from(r: &AxiomResult) -> Self {
        AxiomDoc {
            id: r.axiom,
            pass: r.pass,
            witness: r.witness.iter().map(|s| s.first().to_vec()).collect(),
            element: r.element,
        }
    }
}

/// Structure report payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub kind: StructureKind,
    pub k: u32,
    pub variant: Variant,
    pub axioms: Vec<AxiomDoc>,
    #[serde(default)]
    pub diagnostics: Vec<AxiomDoc>,
    pub pass: bool,
}

impl From<&StructureReport> for ReportDoc {
    fn from(r: &StructureReport) -> Self {
        ReportDoc {
            kind: r.kind,
            k: r.k,
            variant: r.variant,
            axioms: r.axioms.iter().map(AxiomDoc::from).collect(),
            diagnostics: r.diagnostics.iter().map(AxiomDoc::from).collect(),
            pass: r.pass,
        }
    }
}

/// Output of a structure enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerationDoc {
    pub system: String,
    pub kind: StructureKind,
    pub variant: Variant,
    pub k: u32,
    pub status: SearchStatus,
    /// Total number found, which may exceed `families.len()` under a limit.
    pub count: usize,
    pub families: Vec<Vec<Vec<usize>>>,
}

impl EnumerationDoc {
    pub fn new(
        system: &ConnectivitySystem,
        kind: StructureKind,
        variant: Variant,
        k: u32,
        outcome: &SearchOutcome,
        limit: Option<usize>,
    ) -> Self {
        let shown = limit.unwrap_or(usize::MAX);
        EnumerationDoc {
            system: system.label().to_string(),
            kind,
            variant,
            k,
            status: outcome.status,
            count: outcome.families.len(),
            families: outcome
                .families
                .iter()
                .take(shown)
                .map(|f| f.sides().map(SubsetMask::to_vec).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchWidthDoc {
    pub system: String,
    pub width: u32,
    pub witness: Nested,
    pub trees_examined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictsDoc {
    pub verdicts: Vec<EquivalenceVerdict>,
}

/// Any document the toolkit reads or writes.
pub trait Document: Serialize + DeserializeOwned {}

impl Document for Descriptor {}
impl Document for FamilyDoc {}
impl Document for ReportDoc {}
impl Document for EnumerationDoc {}
impl Document for BranchWidthDoc {}
impl Document for EquivalenceVerdict {}
impl Document for VerdictsDoc {}
impl Document for DualityReport {}
impl Document for HuntVerdict {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structures::check_structure;
    use tempfile::tempdir;

    fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn min_cardinality_file() {
        let dir = tempdir().unwrap();
        let p = write(dir.path(), "m.json", r#"{"version":1,"kind":"min_cardinality","n":3}"#);
        let s = load_system(&p).unwrap();
        assert_eq!(s, corpus::sys_min3());
        assert_eq!(s.label(), "m");
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"version":1,"kind":"explicit","n":3,"values":[0,1,1,1,1,1,1]}"#,
            r#"{"version":2,"kind":"min_cardinality","n":3}"#,
            r#"{"kind":"min_cardinality","n":3}"#,
            r#"{"version":1,"kind":"min_cardinality","n":3,"extra":0}"#,
            r#"{"version":1,"kind":"explicit","n":1,"values":[0,-1]}"#,
            r#"{"version":1,"kind":"nope","n":3}"#,
        ];
        for text in bad {
            let err = from_document_str::<Descriptor>(text).and_then(build_system);
            assert!(
                matches!(err, Err(Error::Schema(_)) | Err(Error::TableLength { expected: 8, found: 7 })),
                "{text}: {err:?}"
            );
        }
        assert!(matches!(from_document_str::<Descriptor>("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn non_symmetric_table_is_rejected_with_witness() {
        let text = r#"{"version":1,"kind":"explicit","n":3,"values":[0,5,1,1,1,1,1,0]}"#;
        let err = build_system(from_document_str(text).unwrap()).unwrap_err();
        match err {
            Error::NotSymmetricSubmodular { a, .. } => assert_eq!(a, SubsetMask(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn family_files() {
        let dir = tempdir().unwrap();
        let s = corpus::sys_min3();
        let p = write(dir.path(), "f.json", r#"{"version":1,"k":0,"sides":[[]]}"#);
        assert_eq!(load_family(&p, &s).unwrap().key(), vec![0]);
        let p = write(dir.path(), "d.json", r#"{"version":1,"k":0,"sides":[[0],[0]]}"#);
        assert!(matches!(load_family(&p, &s), Err(Error::DuplicateSide(_))));
        let p = write(dir.path(), "r.json", r#"{"version":1,"k":0,"sides":[[0,1,2,3]]}"#);
        assert!(matches!(load_family(&p, &s), Err(Error::ElementOutOfRange { element: 3, n: 3 })));
        let p = write(dir.path(), "o.json", r#"{"version":1,"k":1,"sides":[[0]],"orders":[0]}"#);
        assert!(matches!(load_family(&p, &s), Err(Error::OrderMismatch { declared: 0, computed: 1, .. })));
    }

    #[test]
    fn explicit_export_round_trips_pointwise() {
        let dir = tempdir().unwrap();
        let s = corpus::sys_min3();
        let p = dir.path().join("x.json");
        save_system(&s.to_explicit().unwrap(), &p).unwrap();
        let back = load_system(&p).unwrap();
        assert_eq!(back.kind_name(), "explicit");
        for a in SubsetMask::all(3) {
            assert_eq!(back.evaluate(a).unwrap(), s.evaluate(a).unwrap());
        }
    }

    #[test]
    fn report_round_trip_is_byte_identical() {
        let s = corpus::sys_min3();
        let f = SeparationFamily::from_sides(&s, 1, [SubsetMask(1), SubsetMask(6)]).unwrap();
        let r = check_structure(&s, 1, &f, StructureKind::Tangle, Variant::Corrected).unwrap();
        let first = to_canonical_string(&ReportDoc::from(&r)).unwrap();
        let back: ReportDoc = from_document_str(&first).unwrap();
        assert_eq!(to_canonical_string(&back).unwrap(), first);
        assert!(first.starts_with("{\n  \"version\": 1,\n  \"kind\": \"tangle\""));
        assert!(first.ends_with("}\n"));
    }

    #[test]
    fn system_documents_keep_kind_first() {
        let text = to_canonical_string(corpus::sys_p3().descriptor()).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "graph_boundary");
        assert_eq!(v["edges"], serde_json::json!([[0, 1], [1, 2]]));
        assert!(text.find("\"version\"").unwrap() < text.find("\"kind\"").unwrap());
    }
}
