//! JSON file formats for groups, braces, tuples, maps and brace catalogs.
//!
//! Every `parse_*` function certifies what it reads and returns an error,
//! never a panic, on malformed or mathematically invalid input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{validate_brace, BraceError, SkewBrace};
use crate::config::Bounds;
use crate::group::{FiniteGroup, GroupError, Realization};
use crate::hom::semidirect_product;
use crate::subgroup::SubgroupSet;
use crate::trifact::{recover_eta, validate_trifact, TrifactError, TrifactorisedGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("unrecognised document: expected a group, brace, tuple, map or catalog")]
    UnknownDocument,
    #[error("a catalog brace has a different additive group")]
    CatalogMismatch,
    #[error("provenance does not match the tuple: {0}")]
    ProvenanceMismatch(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Trifact(#[from] TrifactError),
}

impl IoError {
    /// True when the input parsed but describes an invalid object.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            IoError::Json(_) | IoError::UnknownDocument | IoError::OrderMismatch { .. }
        ) && !self.is_bound()
    }

    /// True when a configured search or memory bound was hit.
    pub fn is_bound(&self) -> bool {
        match self {
            IoError::Group(e) => e.is_bound(),
            IoError::Brace(e) => e.is_bound(),
            IoError::Trifact(e) => e.is_bound(),
            _ => false,
        }
    }
}

fn json_err(e: serde_json::Error) -> IoError {
    IoError::Json(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Semidirect {
        semidirect: Box<SemidirectFile>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectFile {
    pub base: GroupFile,
    pub actor: GroupFile,
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraceFile {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProvenanceFile {
    pub brace: BraceFile,
    #[serde(rename = "N")]
    pub n: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrifactFile {
    pub group: GroupFile,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    #[serde(rename = "E")]
    pub e: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogFile {
    pub group: GroupFile,
    pub braces: Vec<BraceFile>,
}

pub fn group_to_file(group: &FiniteGroup) -> GroupFile {
    match group.realization() {
        Realization::Table(_) => GroupFile::Table {
            order: group.order(),
            table: group.rows(),
        },
        Realization::Semidirect(sd) => GroupFile::Semidirect {
            semidirect: Box::new(SemidirectFile {
                base: group_to_file(sd.base()),
                actor: group_to_file(sd.actor()),
                action: sd.actor().elements().map(|e| sd.action_of(e)).collect(),
            }),
        },
    }
}

pub fn group_from_file(file: &GroupFile, bounds: &Bounds) -> Result<FiniteGroup, IoError> {
    match file {
        GroupFile::Table { order, table } => {
            if *order != table.len() {
                return Err(IoError::OrderMismatch {
                    declared: *order,
                    rows: table.len(),
                });
            }
            Ok(FiniteGroup::from_rows(table, bounds)?)
        }
        GroupFile::Semidirect { semidirect } => {
            let base = group_from_file(&semidirect.base, bounds)?;
            let actor = group_from_file(&semidirect.actor, bounds)?;
            Ok(semidirect_product(&base, &actor, &semidirect.action, bounds)?.group)
        }
    }
}

pub fn brace_to_file(brace: &SkewBrace) -> BraceFile {
    BraceFile {
        order: brace.order(),
        add: brace.add_group().rows(),
        mul: brace.mul_group().rows(),
    }
}

pub fn brace_from_file(file: &BraceFile, bounds: &Bounds) -> Result<SkewBrace, IoError> {
    for t in [&file.add, &file.mul] {
        if t.len() != file.order {
            return Err(IoError::OrderMismatch {
                declared: file.order,
                rows: t.len(),
            });
        }
    }
    Ok(validate_brace(&file.add, &file.mul, bounds)?)
}

pub fn trifact_to_file(t: &TrifactorisedGroup) -> TrifactFile {
    TrifactFile {
        group: group_to_file(t.group()),
        k: t.k().members().to_vec(),
        h: t.h().members().to_vec(),
        e: t.e().members().to_vec(),
        provenance: t.provenance().map(|p| ProvenanceFile {
            brace: brace_to_file(&p.brace),
            n: p.kernel.members().to_vec(),
        }),
    }
}

/// Loads and certifies a tuple. A stated provenance must agree with the
/// brace and kernel recovered from the tuple itself.
pub fn trifact_from_file(
    file: &TrifactFile,
    bounds: &Bounds,
) -> Result<TrifactorisedGroup, IoError> {
    let group = group_from_file(&file.group, bounds)?;
    let t = validate_trifact(
        group,
        SubgroupSet::new(file.k.iter().copied()),
        SubgroupSet::new(file.h.iter().copied()),
        SubgroupSet::new(file.e.iter().copied()),
        bounds,
    )?;
    let Some(p) = &file.provenance else {
        return Ok(t);
    };
    let brace = brace_from_file(&p.brace, bounds)?;
    let eta = recover_eta(&t, bounds)?;
    if !eta.brace.same_tables(&brace) {
        return Err(IoError::ProvenanceMismatch(
            "brace tables differ from the associated brace",
        ));
    }
    let n = SubgroupSet::new(p.n.iter().copied());
    if n != eta.kernel {
        return Err(IoError::ProvenanceMismatch(
            "N differs from the recovered kernel",
        ));
    }
    Ok(t.with_provenance(brace, n))
}

fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(json_err)
}

pub fn parse_group(text: &str, bounds: &Bounds) -> Result<FiniteGroup, IoError> {
    group_from_file(&from_str(text)?, bounds)
}

pub fn parse_brace(text: &str, bounds: &Bounds) -> Result<SkewBrace, IoError> {
    brace_from_file(&from_str(text)?, bounds)
}

pub fn parse_trifact(text: &str, bounds: &Bounds) -> Result<TrifactorisedGroup, IoError> {
    trifact_from_file(&from_str(text)?, bounds)
}

pub fn parse_map(text: &str) -> Result<Vec<usize>, IoError> {
    from_str::<MapFile>(text).map(|m| m.images)
}

pub fn parse_catalog(
    text: &str,
    bounds: &Bounds,
) -> Result<(FiniteGroup, Vec<SkewBrace>), IoError> {
    let file: CatalogFile = from_str(text)?;
    let group = group_from_file(&file.group, bounds)?;
    let braces = file
        .braces
        .iter()
        .map(|b| brace_from_file(b, bounds))
        .collect::<Result<Vec<_>, _>>()?;
    for b in &braces {
        if !b.add_group().same_table(&group) {
            return Err(IoError::CatalogMismatch);
        }
    }
    Ok((group, braces))
}

/// Any of the file kinds, detected from the top-level keys.
#[derive(Clone, Debug)]
pub enum Document {
    Group(FiniteGroup),
    Brace(SkewBrace),
    Trifact(TrifactorisedGroup),
    Map(Vec<usize>),
    Catalog(FiniteGroup, Vec<SkewBrace>),
}

pub fn parse_any(text: &str, bounds: &Bounds) -> Result<Document, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
    let obj = value.as_object().ok_or(IoError::UnknownDocument)?;
    let has = |k: &str| obj.contains_key(k);
    if has("add") {
        parse_brace(text, bounds).map(Document::Brace)
    } else if has("K") {
        parse_trifact(text, bounds).map(Document::Trifact)
    } else if has("braces") {
        parse_catalog(text, bounds).map(|(g, b)| Document::Catalog(g, b))
    } else if has("images") {
        parse_map(text).map(Document::Map)
    } else if has("table") || has("semidirect") {
        parse_group(text, bounds).map(Document::Group)
    } else {
        Err(IoError::UnknownDocument)
    }
}

/// Compact JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("file types serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::trifact::{generalised_trifact, large_trifact, small_trifact};

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn group_round_trip() {
        let g = catalog::symmetric(3).group;
        let text = to_json(&group_to_file(&g));
        assert!(parse_group(&text, &b()).unwrap().same_table(&g));
        assert_eq!(
            parse_group(r#"{"order":2,"table":[[0,1],[1,1]]}"#, &b()).unwrap_err(),
            IoError::Group(GroupError::NoInverse(1))
        );
        assert!(matches!(
            parse_group(r#"{"order":3,"table":[[0]]}"#, &b()),
            Err(IoError::OrderMismatch { .. })
        ));
        assert!(matches!(parse_group("[", &b()), Err(IoError::Json(_))));
    }

    #[test]
    fn tuple_round_trip_keeps_semidirect_form() {
        let brace = SkewBrace::opposite(&catalog::symmetric(3).group, &b()).unwrap();
        for t in [
            large_trifact(&brace, &b()).unwrap(),
            small_trifact(&brace, &b()).unwrap(),
        ] {
            let file = trifact_to_file(&t);
            assert!(matches!(file.group, GroupFile::Semidirect { .. }));
            let back = parse_trifact(&to_json(&file), &b()).unwrap();
            assert!(back.group().same_table(t.group()));
            assert_eq!((back.k(), back.h(), back.e()), (t.k(), t.h(), t.e()));
            assert_eq!(
                back.provenance().unwrap().kernel,
                t.provenance().unwrap().kernel
            );
        }
    }

    #[test]
    fn provenance_is_checked() {
        let brace = SkewBrace::trivial(&catalog::klein_four());
        let t = generalised_trifact(&brace, &SubgroupSet::new([0, 1]), &b()).unwrap();
        let mut file = trifact_to_file(&t);
        file.provenance.as_mut().unwrap().n = vec![0, 2];
        assert!(matches!(
            trifact_from_file(&file, &b()),
            Err(IoError::ProvenanceMismatch(_))
        ));
    }

    #[test]
    fn detection() {
        let brace = SkewBrace::trivial(&catalog::cyclic(2));
        assert!(matches!(
            parse_any(&to_json(&brace_to_file(&brace)), &b()),
            Ok(Document::Brace(_))
        ));
        assert!(matches!(
            parse_any(r#"{"images":[0,1]}"#, &b()),
            Ok(Document::Map(_))
        ));
        assert!(matches!(
            parse_any(r#"{"x":1}"#, &b()),
            Err(IoError::UnknownDocument)
        ));
        assert!(matches!(
            parse_any("3", &b()),
            Err(IoError::UnknownDocument)
        ));
    }
}
