//! The classification report and its JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2t::{parse_modulus_hex, FieldCtx};
use crate::poly::FieldPoly;

use super::{pack_key, tables::ExpectedTables, Mode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Lexicographically least orbit member.
    pub canonical: String,
    /// Least permutation in the class found in the normalized space.
    pub witness: String,
    /// Permutations found in the normalized space that fall in this class.
    pub members: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiff {
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub degree: u32,
    pub t: u32,
    pub modulus_hex: String,
    pub mode: Mode,
    pub candidates_tested: u64,
    pub pps_found: u64,
    pub classes: Vec<ClassEntry>,
    pub table_diff: TableDiff,
    pub elapsed_ms: u64,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.t, Some(parse_modulus_hex(&self.modulus_hex)?))
    }

    /// Combines reports over disjoint parts of the same candidate space.
    pub fn merge(&self, other: &ClassificationReport) -> Result<ClassificationReport> {
        if (self.degree, self.t, &self.modulus_hex, self.mode)
            != (other.degree, other.t, &other.modulus_hex, other.mode)
        {
            return Err(Error::Data("reports describe different searches".into()));
        }
        let field = self.field()?;
        let key = |s: &str| FieldPoly::parse(&field, s).map(|p| pack_key(&p));
        let mut by_class: BTreeMap<u128, ClassEntry> = BTreeMap::new();
        for c in self.classes.iter().chain(&other.classes) {
            let k = key(&c.canonical)?;
            match by_class.get_mut(&k) {
                None => {
                    by_class.insert(k, c.clone());
                }
                Some(have) => {
                    have.members += c.members;
                    if key(&c.witness)? < key(&have.witness)? {
                        have.witness = c.witness.clone();
                    }
                }
            }
        }
        let classes: Vec<ClassEntry> = by_class.into_values().collect();
        let table_diff = table_diff(&field, self.degree, &classes, &ExpectedTables::embedded()?)?;
        Ok(ClassificationReport {
            candidates_tested: self.candidates_tested + other.candidates_tested,
            pps_found: self.pps_found + other.pps_found,
            classes,
            table_diff,
            elapsed_ms: self.elapsed_ms + other.elapsed_ms,
            ..self.clone()
        })
    }
}

/// Compares found classes with the well-formed table entries for `(deg, t)`.
pub fn table_diff(
    field: &FieldCtx,
    deg: u32,
    classes: &[ClassEntry],
    tables: &ExpectedTables,
) -> Result<TableDiff> {
    let Some(entries) = tables.get(deg, field.t()) else { return Ok(TableDiff::default()) };
    let mut expected: BTreeMap<u128, String> = BTreeMap::new();
    for e in entries.iter().filter(|e| !e.malformed) {
        let p = FieldPoly::parse(field, &e.source)?;
        expected.entry(pack_key(&crate::equivalence::canonical_form(&p)?)).or_insert(e.source.clone());
    }
    let mut found = BTreeMap::new();
    for c in classes {
        found.insert(pack_key(&FieldPoly::parse(field, &c.canonical)?), c.canonical.clone());
    }
    Ok(TableDiff {
        missing: expected.iter().filter(|(k, _)| !found.contains_key(k)).map(|(_, s)| s.clone()).collect(),
        extra: found.iter().filter(|(k, _)| !expected.contains_key(k)).map(|(_, s)| s.clone()).collect(),
    })
}
