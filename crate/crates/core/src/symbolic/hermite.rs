//! Symbolic `[x^(q-1)] f^(m+u) mod (x^q - x)` for a normalized `f`.
//!
//! With `f = x^deg + A_1 x^(deg-1) + ... + A_(deg-1) x` and `q = deg*m + r`,
//! Lucas' theorem says each set bit `s` of `m+u` picks one term of `f`; the
//! pick `ind_s` lowers the degree by `ind_s * 2^s`, and the picks must lower it
//! by exactly `tot = deg*u - r + 1` in total.

use super::{SymMonomial, SymPoly, Var};
use crate::error::{Error, Result};
use crate::gf2t::{FieldCtx, GfElem};
use crate::poly::FieldPoly;

struct Walk {
    deg: u32,
    tot: u64,
    acc: SymPoly,
}

impl Walk {
    /// Processes bit `stage` of `rest`, the not yet consumed high part of `m+u`.
    fn next(&mut self, rest: u64, mono: SymMonomial, stage: u32, sum: u64) {
        let digit = rest & 1;
        let rest = rest >> 1;
        let incr = 1u64 << stage;
        // skipping this bit only helps if a later bit can still fit
        if sum + 2 * incr <= self.tot {
            self.next(rest, mono, stage + 1, sum);
        }
        if digit == 0 {
            return;
        }
        let mut running = sum;
        for ind in 1..self.deg {
            running += incr;
            if running > self.tot {
                break;
            }
            let var = Var::new(ind as usize).expect("degree checked against MAX_VARS");
            let out = mono.mul(&SymMonomial::var_pow(var, incr as u32));
            if running == self.tot {
                self.acc.toggle(out);
                break;
            }
            self.next(rest, out, stage + 1, running);
        }
    }
}

/// `[x^(q-1)] f^(m+u)` as a polynomial in the coefficients of `f`, with the
/// `fixed` variables substituted afterwards.
///
/// Requires `deg*(m+u) < 2(q-1)` so that only one wrap of `x^q = x` reaches
/// the top coefficient.
pub fn hermite_symbolic(deg: u32, r: u64, m: u64, u: u64, fixed: &[(Var, bool)]) -> Result<SymPoly> {
    if !(2..=super::MAX_VARS as u32 + 1).contains(&deg) {
        return Err(Error::UnsupportedDegree(deg));
    }
    let q = deg as u64 * m + r;
    let span = deg as u64 * (m + u);
    let limit = 2 * (q - 1);
    let tot = (deg as u64 * u + 1).checked_sub(r).ok_or(Error::InvalidOffset { u })?;
    if span >= limit {
        return Err(Error::WrapOverlap { span, limit });
    }
    let poly = if tot == 0 {
        // every bit picks the leading term
        SymPoly::one()
    } else {
        let mut walk = Walk { deg, tot, acc: SymPoly::zero() };
        walk.next(m + u, SymMonomial::ONE, 0, 0);
        walk.acc
    };
    Ok(poly.substitute_all(fixed))
}

/// `x^deg + sum_i coeffs[i-1] x^(deg-i)`, zero constant term.
pub fn normalized_poly<'f>(field: &'f FieldCtx, deg: u32, coeffs: &[GfElem]) -> FieldPoly<'f> {
    let deg = deg as usize;
    debug_assert!(coeffs.len() < deg);
    let mut dense = vec![GfElem::ZERO; deg + 1];
    dense[deg] = GfElem::ONE;
    for (i, &c) in coeffs.iter().enumerate() {
        dense[deg - 1 - i] = c;
    }
    FieldPoly::new(field, dense)
}
