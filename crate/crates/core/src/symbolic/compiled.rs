//! Flattened form of a [`SymPoly`] for repeated numeric evaluation.

use super::{SymPoly, Var, MAX_VARS};
use crate::gf2t::{FieldCtx, GfElem};

#[derive(Clone, Debug)]
struct Term {
    /// `(variable slot, exponent)`
    factors: Vec<(usize, u64)>,
}

/// A symbolic polynomial compiled for evaluation with log tables.
#[derive(Clone, Debug)]
pub struct Compiled {
    terms: Vec<Term>,
}

impl Compiled {
    pub fn new(p: &SymPoly) -> Compiled {
        let terms = p
            .sorted_monomials()
            .iter()
            .map(|m| Term { factors: m.factors().map(|(v, e)| (v.index() - 1, e as u64)).collect() })
            .collect();
        Compiled { terms }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, var: Var) -> u64 {
        let slot = var.index() - 1;
        self.terms
            .iter()
            .filter_map(|t| t.factors.iter().find(|f| f.0 == slot).map(|f| f.1))
            .max()
            .unwrap_or(0)
    }

    fn logs(field: &FieldCtx, values: &[GfElem; MAX_VARS]) -> [Option<u64>; MAX_VARS] {
        values.map(|x| field.log(x).map(u64::from))
    }

    /// Value at `values[i-1] = A_i`; unused slots are ignored.
    pub fn eval(&self, field: &FieldCtx, values: &[GfElem; MAX_VARS]) -> GfElem {
        let logs = Self::logs(field, values);
        let mut acc = GfElem::ZERO;
        'terms: for t in &self.terms {
            let mut l = 0u64;
            for &(slot, e) in &t.factors {
                match logs[slot] {
                    Some(x) => l += x * e,
                    None => continue 'terms,
                }
            }
            acc += field.exp(l);
        }
        acc
    }

    /// Coefficients of the polynomial in `var` after binding every other slot
    /// from `values`: entry `k` multiplies `var^k`.
    pub fn univariate(&self, field: &FieldCtx, var: Var, values: &[GfElem; MAX_VARS]) -> Vec<GfElem> {
        let slot = var.index() - 1;
        let logs = Self::logs(field, values);
        let mut out = vec![GfElem::ZERO; self.degree_in(var) as usize + 1];
        'terms: for t in &self.terms {
            let mut l = 0u64;
            let mut k = 0usize;
            for &(s, e) in &t.factors {
                if s == slot {
                    k = e as usize;
                    continue;
                }
                match logs[s] {
                    Some(x) => l += x * e,
                    None => continue 'terms,
                }
            }
            out[k] += field.exp(l);
        }
        out
    }
}
