//! Embedded coefficient expressions used as golden values and in the
//! identity checks.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::symbolic::{hermite_symbolic, SymPoly, Var};

const EQUATIONS_TOML: &str = include_str!("../data/equations.toml");

#[derive(Deserialize)]
struct RawEntry {
    expr: String,
    extract: Option<RawExtract>,
}

#[derive(Deserialize)]
struct RawExtract {
    deg: u32,
    r: u64,
    m: u64,
    u: u64,
    #[serde(default)]
    pins: BTreeMap<String, u8>,
}

/// Parameters that reproduce an equation with [`hermite_symbolic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub deg: u32,
    pub r: u64,
    pub m: u64,
    pub u: u64,
    pub pins: Vec<(Var, bool)>,
}

impl Extraction {
    pub fn run(&self) -> Result<SymPoly> {
        hermite_symbolic(self.deg, self.r, self.m, self.u, &self.pins)
    }
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub name: String,
    pub poly: SymPoly,
    pub extract: Option<Extraction>,
}

/// All embedded equations, keyed by name.
#[derive(Clone, Debug)]
pub struct Equations {
    entries: BTreeMap<String, Equation>,
}

impl Equations {
    /// Parses the embedded table.
    pub fn embedded() -> Result<Equations> {
        Equations::from_toml(EQUATIONS_TOML)
    }

    pub fn from_toml(src: &str) -> Result<Equations> {
        let raw: BTreeMap<String, RawEntry> =
            toml::from_str(src).map_err(|e| Error::Data(e.to_string()))?;
        let mut done: BTreeMap<String, SymPoly> = BTreeMap::new();
        for name in raw.keys() {
            resolve(name, &raw, &mut done, &mut Vec::new())?;
        }
        let mut entries = BTreeMap::new();
        for (name, entry) in raw {
            let extract = entry.extract.map(|x| convert_extract(&name, x)).transpose()?;
            let poly = done.remove(&name).expect("resolved above");
            entries.insert(name.clone(), Equation { name, poly, extract });
        }
        Ok(Equations { entries })
    }

    pub fn get(&self, name: &str) -> Option<&Equation> {
        self.entries.get(name)
    }

    /// The polynomial for `name`; panics on unknown names, which are fixed at compile time.
    pub fn poly(&self, name: &str) -> &SymPoly {
        &self.entries.get(name).unwrap_or_else(|| panic!("no embedded equation {name}")).poly
    }

    pub fn iter(&self) -> impl Iterator<Item = &Equation> {
        self.entries.values()
    }

    pub fn extractable(&self) -> impl Iterator<Item = (&Equation, &Extraction)> {
        self.entries.values().filter_map(|e| e.extract.as_ref().map(|x| (e, x)))
    }
}

fn convert_extract(name: &str, x: RawExtract) -> Result<Extraction> {
    let mut pins = Vec::new();
    for (letter, value) in x.pins {
        let var = letter
            .chars()
            .next()
            .filter(|_| letter.len() == 1)
            .and_then(Var::from_letter)
            .ok_or_else(|| Error::Data(format!("{name}: bad pin variable {letter}")))?;
        if value > 1 {
            return Err(Error::Data(format!("{name}: pin {letter} must be 0 or 1")));
        }
        pins.push((var, value == 1));
    }
    Ok(Extraction { deg: x.deg, r: x.r, m: x.m, u: x.u, pins })
}

fn resolve(
    name: &str,
    raw: &BTreeMap<String, RawEntry>,
    done: &mut BTreeMap<String, SymPoly>,
    stack: &mut Vec<String>,
) -> Result<SymPoly> {
    if let Some(p) = done.get(name) {
        return Ok(p.clone());
    }
    if stack.iter().any(|s| s == name) {
        return Err(Error::Data(format!("reference cycle through {name}")));
    }
    let entry = raw.get(name).ok_or_else(|| Error::Data(format!("unknown reference {name}")))?;
    // pre-resolve every `{ref}` so the parser lookup can stay a plain closure
    let mut refs = BTreeMap::new();
    stack.push(name.to_string());
    for r in references(&entry.expr) {
        let p = resolve(&r, raw, done, stack)?;
        refs.insert(r, p);
    }
    stack.pop();
    let poly = SymPoly::parse_with(&entry.expr, &|n| refs.get(n).cloned())
        .map_err(|e| Error::Data(format!("{name}: {e}")))?;
    done.insert(name.to_string(), poly.clone());
    Ok(poly)
}

fn references(expr: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = expr;
    while let Some(i) = rest.find('{') {
        rest = &rest[i + 1..];
        let end = rest.find('}').unwrap_or(rest.len());
        let name = &rest[..end];
        // `^{64}` is a braced exponent, not a reference
        if !name.is_empty() && !name.chars().all(|c| c.is_ascii_digit()) {
            out.push(name.to_string());
        }
        rest = &rest[end..];
    }
    out
}
