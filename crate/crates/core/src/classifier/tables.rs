//! The embedded table of known permutation polynomials per `(degree, t)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2t::FieldCtx;
use crate::poly::FieldPoly;

const TABLES_JSON: &str = include_str!("../../data/expected_tables.json");

/// One listed polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub source: String,
    /// The entry parses but its degree is not the table's degree.
    pub malformed: bool,
}

#[derive(Clone, Debug)]
pub struct ExpectedTables {
    entries: BTreeMap<(u32, u32), Vec<TableEntry>>,
}

impl ExpectedTables {
    pub fn embedded() -> Result<ExpectedTables> {
        ExpectedTables::from_json(TABLES_JSON)
    }

    /// Parses `{"deg": {"t": ["poly", ...]}}`, checking every entry against
    /// the default field for its `t`.
    pub fn from_json(src: &str) -> Result<ExpectedTables> {
        let raw: BTreeMap<String, BTreeMap<String, Vec<String>>> =
            serde_json::from_str(src).map_err(|e| Error::Data(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (deg, by_t) in raw {
            let deg: u32 = deg.parse().map_err(|_| Error::Data(format!("bad degree key {deg}")))?;
            for (t, list) in by_t {
                let t: u32 = t.parse().map_err(|_| Error::Data(format!("bad t key {t}")))?;
                let field = FieldCtx::new(t, None)?;
                let mut out = Vec::new();
                for source in list {
                    let p = FieldPoly::parse(&field, &source)
                        .map_err(|e| Error::Data(format!("({deg}, {t}) {source}: {e}")))?;
                    out.push(TableEntry { malformed: p.degree() != Some(deg as usize), source });
                }
                entries.insert((deg, t), out);
            }
        }
        Ok(ExpectedTables { entries })
    }

    pub fn get(&self, deg: u32, t: u32) -> Option<&[TableEntry]> {
        self.entries.get(&(deg, t)).map(Vec::as_slice)
    }

    pub fn keys(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.keys().copied()
    }
}
