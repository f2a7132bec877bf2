//! The normalized candidate space and the batched collision kernel.

use crate::gf2t::{FieldCtx, GfElem};
use crate::perm::BitSet;

/// Coefficients `coeffs[k]` of `x^k`, `k <= 7`.
pub type Coeffs = [GfElem; 8];

/// Normalized monic polynomials of degree 6 or 7 with zero constant term.
///
/// Degree 6: `x^5` coefficient in `{0, 1}`; when it is 1 the `x^4`
/// coefficient is in `{0, mu}`; the rest are free. Degree 7: no `x^6` term,
/// `x^5` coefficient in `{0, 1}`, the rest free.
#[derive(Clone, Debug)]
pub struct CandidateSpace<'f> {
    pub field: &'f FieldCtx,
    pub deg: usize,
}

impl<'f> CandidateSpace<'f> {
    pub fn new(field: &'f FieldCtx, deg: usize) -> Self {
        debug_assert!(deg == 6 || deg == 7);
        CandidateSpace { field, deg }
    }

    /// Number of candidates: `q^4 + 2q^3` for degree 6, `2q^4` for degree 7.
    pub fn size(&self) -> u64 {
        let q = self.field.q() as u64;
        match self.deg {
            6 => q.pow(4) + 2 * q.pow(3),
            _ => 2 * q.pow(4),
        }
    }

    /// Allowed `(x^5, x^4)` pairs for degree 6, or `(x^5, -)` for degree 7.
    pub fn branches(&self) -> Vec<(GfElem, Option<Vec<GfElem>>)> {
        let field = self.field;
        if self.deg == 6 {
            vec![
                (GfElem::ZERO, Some(field.elements().collect())),
                (GfElem::ONE, Some(vec![GfElem::ZERO, field.mu()])),
            ]
        } else {
            vec![(GfElem::ZERO, None), (GfElem::ONE, None)]
        }
    }

    /// Calls `visit(prefix)` for every candidate with the given `x^3`
    /// coefficient and the `x^2`, `x^1` coefficients left at zero.
    pub fn for_each_block(&self, x3: GfElem, mut visit: impl FnMut(&Coeffs)) {
        let mut c: Coeffs = [GfElem::ZERO; 8];
        c[self.deg] = GfElem::ONE;
        c[3] = x3;
        for (top, second) in self.branches() {
            c[5] = top;
            match (self.deg, second) {
                (6, Some(list)) => {
                    for x4 in list {
                        c[4] = x4;
                        visit(&c);
                    }
                }
                _ => {
                    for x4 in self.field.elements() {
                        c[4] = x4;
                        visit(&c);
                    }
                }
            }
        }
    }
}

/// Per-field tables for [`collision_free_slopes`].
pub struct SlopeKernel<'f> {
    field: &'f FieldCtx,
    /// `(q-1 - log delta) mod (q-1)` per nonzero `delta`
    inv_log: Vec<u32>,
    seen: BitSet,
}

impl<'f> SlopeKernel<'f> {
    pub fn new(field: &'f FieldCtx) -> Self {
        let order = field.q() as u32 - 1;
        let mut inv_log = vec![0; field.q()];
        for d in 1..field.q() as u32 {
            inv_log[d as usize] = (order - field.log_raw(d)) % order;
        }
        SlopeKernel { field, inv_log, seen: BitSet::new(field.q()) }
    }

    /// Values `s` for which `x -> values[x] + s*x` permutes the field.
    ///
    /// Two points collide under slope `s` exactly when
    /// `s = (values[x] + values[y]) / (x + y)`, so every pair rules out one
    /// slope; the scan stops once all slopes are ruled out.
    pub fn collision_free_slopes(&mut self, values: &[u32], out: &mut Vec<GfElem>) {
        let field = self.field;
        let q = field.q();
        out.clear();
        self.seen.clear();
        let mut left = q;
        for delta in 1..q {
            let high = 1usize << (usize::BITS - 1 - delta.leading_zeros());
            let low_mask = high - 1;
            let inv = self.inv_log[delta] as usize;
            for i in 0..q / 2 {
                // x has the top bit of delta clear, so x < x ^ delta
                let x = ((i & !low_mask) << 1) | (i & low_mask);
                let s = values[x] ^ values[x ^ delta];
                let slope = if s == 0 { 0 } else { field.exp_raw(field.log_raw(s) as usize + inv) };
                if !self.seen.test_and_set(slope as usize) {
                    left -= 1;
                    if left == 0 {
                        return;
                    }
                }
            }
        }
        out.extend((0..q as u32).filter(|&s| !self.seen.contains(s as usize)).map(GfElem));
    }
}

/// `values[x] = sum_k coeffs[k] x^k` for every `x`, skipping the `x^1` slot.
pub fn tabulate_without_linear(field: &FieldCtx, coeffs: &Coeffs, deg: usize, out: &mut Vec<u32>) {
    out.clear();
    for x in field.elements() {
        let mut acc = GfElem::ZERO;
        for k in (2..=deg).rev() {
            acc = field.mul(acc, x) + coeffs[k];
        }
        out.push(field.mul(field.mul(acc, x), x).0);
    }
}

/// `out[x] = base[x] + coeff * x^2`.
pub fn add_square_term(field: &FieldCtx, base: &[u32], coeff: GfElem, out: &mut Vec<u32>) {
    out.clear();
    match field.log(coeff) {
        None => out.extend_from_slice(base),
        Some(lc) => {
            out.push(base[0]);
            let order = field.q() - 1;
            for (x, &b) in base.iter().enumerate().skip(1) {
                let l = (lc as usize + 2 * field.log_raw(x as u32) as usize) % order;
                out.push(b ^ field.exp_raw(l));
            }
        }
    }
}
