//! Deciding whether a polynomial permutes GF(2^t).
//!
//! Two independent routes: direct bijection checking, and the
//! Hermite–Dickson criterion (exactly one root, and no reduced odd power
//! `f^n`, `1 <= n <= q-2`, reaches degree `q-1`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2t::GfElem;
use crate::poly::{reduced_mul_sparse, reduced_square, sparse, FieldPoly};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PermFailure {
    /// The polynomial has this many roots instead of one.
    RootCountNotOne(usize),
    /// `f^n mod (x^q - x)` has a nonzero `x^(q-1)` coefficient.
    ExponentDegreeTooHigh(u64),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermVerdict {
    pub is_pp: bool,
    pub failure: Option<PermFailure>,
    /// First colliding pair `(x1, x2)`, `x1 < x2`, with `f(x1) = f(x2)`.
    pub witness: Option<(GfElem, GfElem)>,
}

impl PermVerdict {
    fn pp() -> Self {
        PermVerdict { is_pp: true, failure: None, witness: None }
    }
}

/// A `q`-bit occupancy set.
#[derive(Clone, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(bits: usize) -> Self {
        BitSet { words: vec![0; bits.div_ceil(64)] }
    }

    #[inline]
    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Sets bit `i`; returns whether it was already set.
    #[inline]
    pub(crate) fn test_and_set(&mut self, i: usize) -> bool {
        let (w, b) = (i >> 6, 1u64 << (i & 63));
        let was = self.words[w] & b != 0;
        self.words[w] |= b;
        was
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }
}

/// Evaluates `f` at every element in mask order, stopping at the first repeated image.
pub fn is_pp_exhaustive(f: &FieldPoly) -> PermVerdict {
    let field = f.field();
    let mut seen = BitSet::new(field.q());
    for x in field.elements() {
        let y = f.eval(x);
        if seen.test_and_set(y.0 as usize) {
            let first = field.elements().find(|&z| f.eval(z) == y).expect("image was seen");
            return PermVerdict { is_pp: false, failure: None, witness: Some((first, x)) };
        }
    }
    PermVerdict::pp()
}

/// The Hermite–Dickson criterion in characteristic 2.
pub fn hermite_dickson_test(f: &FieldPoly) -> Result<PermVerdict> {
    let field = f.field();
    let q = field.q();
    if let Some(d) = f.degree() {
        if d >= q {
            return Err(Error::DegreeTooLarge { degree: d, q });
        }
    }
    let roots = field.elements().filter(|&x| f.eval(x).is_zero()).count();
    if roots != 1 {
        return Ok(PermVerdict {
            is_pp: false,
            failure: Some(PermFailure::RootCountNotOne(roots)),
            witness: None,
        });
    }
    // odd n in increasing order, stepping f^n -> f^n * f^2
    let mut power = f.reduced();
    let step = sparse(&reduced_square(field, &power));
    let mut n = 1u64;
    while n <= q as u64 - 2 {
        if !power[q - 1].is_zero() {
            return Ok(PermVerdict {
                is_pp: false,
                failure: Some(PermFailure::ExponentDegreeTooHigh(n)),
                witness: None,
            });
        }
        n += 2;
        if n <= q as u64 - 2 {
            power = reduced_mul_sparse(field, &power, &step);
        }
    }
    Ok(PermVerdict::pp())
}
