//! Sparse polynomials over F_2 in the symbolic coefficients of a normalized
//! polynomial, and extraction of their Hermite coefficients.
//!
//! Variable `A_i` is the coefficient of `x^(deg-i)` and prints as the
//! `i`-th letter: `a = A_1`, `b = A_2`, and so on. Every stored monomial has
//! coefficient 1, so a polynomial is a set of monomials and addition is
//! symmetric difference.

mod compiled;
mod hermite;
mod parse;

pub use compiled::Compiled;
pub use hermite::{hermite_symbolic, normalized_poly};

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2t::{FieldCtx, GfElem};

/// Number of symbolic coefficients supported (`a` through `j`).
pub const MAX_VARS: usize = 10;

/// A symbolic coefficient `A_i`, `1 <= i <= MAX_VARS`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub fn new(index: usize) -> Option<Var> {
        (1..=MAX_VARS).contains(&index).then_some(Var(index as u8))
    }

    pub fn from_letter(c: char) -> Option<Var> {
        let i = (c as u32).checked_sub('a' as u32)? as usize + 1;
        Var::new(i)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn letter(self) -> char {
        (b'a' + self.0 - 1) as char
    }

    fn slot(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A product of powers of variables; the empty product is 1.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymMonomial {
    exps: [u32; MAX_VARS],
}

impl SymMonomial {
    pub const ONE: SymMonomial = SymMonomial { exps: [0; MAX_VARS] };

    pub fn var_pow(v: Var, e: u32) -> SymMonomial {
        let mut m = SymMonomial::ONE;
        m.exps[v.slot()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.slot()]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `(var, exponent)` pairs with nonzero exponent.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var(i as u8 + 1), e))
    }

    pub fn mul(&self, other: &SymMonomial) -> SymMonomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(&other.exps) {
            *o += e;
        }
        out
    }

    fn scale_exps(&self, k: u32) -> SymMonomial {
        let mut out = *self;
        out.exps.iter_mut().for_each(|e| *e *= k);
        out
    }

    fn with_exp(&self, v: Var, e: u32) -> SymMonomial {
        let mut out = *self;
        out.exps[v.slot()] = e;
        out
    }

    fn print_key(&self) -> (u64, std::cmp::Reverse<[u32; MAX_VARS]>) {
        (self.total_degree(), std::cmp::Reverse(self.exps))
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (v, e) in self.factors() {
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over F_2 as a set of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    monos: HashSet<SymMonomial>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn one() -> SymPoly {
        SymPoly::from_monomial(SymMonomial::ONE)
    }

    pub fn var(v: Var) -> SymPoly {
        SymPoly::from_monomial(SymMonomial::var_pow(v, 1))
    }

    pub fn from_monomial(m: SymMonomial) -> SymPoly {
        let mut p = SymPoly::zero();
        p.toggle(m);
        p
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = SymMonomial>) -> SymPoly {
        let mut p = SymPoly::zero();
        ms.into_iter().for_each(|m| p.toggle(m));
        p
    }

    /// XOR insertion: adds `m` if absent, removes it if present.
    pub fn toggle(&mut self, m: SymMonomial) {
        if !self.monos.remove(&m) {
            self.monos.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monos.len() == 1 && self.monos.contains(&SymMonomial::ONE)
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn contains(&self, m: &SymMonomial) -> bool {
        self.monos.contains(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &SymMonomial> {
        self.monos.iter()
    }

    /// Monomials in printing order: total degree, then variable-lexicographic.
    pub fn sorted_monomials(&self) -> Vec<SymMonomial> {
        let mut v: Vec<_> = self.monos.iter().copied().collect();
        v.sort_by_key(|m| m.print_key());
        v
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &SymPoly) {
        for &m in &other.monos {
            self.toggle(m);
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for a in &self.monos {
            for b in &other.monos {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &SymMonomial) -> SymPoly {
        SymPoly { monos: self.monos.iter().map(|a| a.mul(m)).collect() }
    }

    /// `p^(2^k)`: squaring only doubles exponents over F_2.
    pub fn frobenius(&self, k: u32) -> SymPoly {
        SymPoly { monos: self.monos.iter().map(|m| m.scale_exps(1 << k)).collect() }
    }

    pub fn pow(&self, mut n: u64) -> SymPoly {
        let mut acc = SymPoly::one();
        let mut k = 0;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&self.frobenius(k));
            }
            n >>= 1;
            k += 1;
        }
        acc
    }

    /// Sets `var` to 0 or 1.
    pub fn substitute(&self, var: Var, value: bool) -> SymPoly {
        let mut out = SymPoly::zero();
        for m in &self.monos {
            match (m.exp(var) > 0, value) {
                (false, _) => out.toggle(*m),
                (true, false) => {}
                (true, true) => out.toggle(m.with_exp(var, 0)),
            }
        }
        out
    }

    pub fn substitute_all(&self, pins: &[(Var, bool)]) -> SymPoly {
        pins.iter().fold(self.clone(), |p, &(v, b)| p.substitute(v, b))
    }

    /// Variables that occur in some monomial.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = [false; MAX_VARS];
        for m in &self.monos {
            for (v, _) in m.factors() {
                seen[v.slot()] = true;
            }
        }
        (1..=MAX_VARS).filter(|&i| seen[i - 1]).map(|i| Var(i as u8)).collect()
    }

    /// Evaluates at a point; every occurring variable must be bound.
    pub fn eval(&self, field: &FieldCtx, assignment: &BTreeMap<Var, GfElem>) -> Result<GfElem> {
        let mut acc = GfElem::ZERO;
        for m in &self.monos {
            let mut term = GfElem::ONE;
            for (v, e) in m.factors() {
                let x = assignment.get(&v).ok_or(Error::UnboundVariable(v.letter()))?;
                term = field.mul(term, field.pow(*x, e as u64));
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Degree in `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.monos.iter().map(|m| m.exp(var)).max()
    }

    /// Coefficients in `var`: `p = sum_k out[k] * var^k`.
    pub fn coeffs_in(&self, var: Var) -> Vec<SymPoly> {
        let Some(d) = self.degree_in(var) else { return Vec::new() };
        let mut out = vec![SymPoly::zero(); d as usize + 1];
        for m in &self.monos {
            out[m.exp(var) as usize].toggle(m.with_exp(var, 0));
        }
        out
    }

    /// Long division viewing both sides as univariate in `var`; the divisor
    /// must have leading coefficient exactly 1.
    pub fn divmod_in_var(&self, divisor: &SymPoly, var: Var) -> Result<(SymPoly, SymPoly)> {
        let dc = divisor.coeffs_in(var);
        let Some(lead) = dc.last() else { return Err(Error::NonMonicDivisor(var.letter())) };
        if !lead.is_one() {
            return Err(Error::NonMonicDivisor(var.letter()));
        }
        let n = dc.len() as u32 - 1;
        let mut rem = self.clone();
        let mut quot = SymPoly::zero();
        while let Some(k) = rem.degree_in(var).filter(|&k| k >= n) {
            let lc = rem.coeffs_in(var).swap_remove(k as usize);
            let term = lc.mul_monomial(&SymMonomial::var_pow(var, k - n));
            rem.add_assign(&term.mul(divisor));
            quot.add_assign(&term);
        }
        Ok((quot, rem))
    }

    /// Parses sums of products of variables, integers (mod 2), parenthesized
    /// groups and powers, e.g. `b^4(1+c)+(c^2+b^2c+e)`.
    pub fn parse(s: &str) -> Result<SymPoly> {
        parse::parse(s, &|_| None)
    }

    /// As [`SymPoly::parse`], resolving `{name}` references through `lookup`.
    pub fn parse_with(s: &str, lookup: &dyn Fn(&str) -> Option<SymPoly>) -> Result<SymPoly> {
        parse::parse(s, lookup)
    }

    pub fn compile(&self) -> Compiled {
        Compiled::new(self)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.sorted_monomials().iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> SymPoly {
        SymPoly::parse(s).unwrap()
    }

    fn v(c: char) -> Var {
        Var::from_letter(c).unwrap()
    }

    #[test]
    fn products_cancel_mod_two() {
        assert_eq!(p("c+1").mul(&p("c+1")), p("c^2+1"));
        assert_eq!(p("b+c").mul(&p("b+c")), p("b^2+c^2"));
        assert_eq!(p("b+c").pow(4), p("b^4+c^4"));
        assert_eq!(p("b+1").pow(3), p("b^3+b^2+b+1"));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("a^3b^4+a^5c^2").substitute(v('a'), true), p("b^4+c^2"));
        assert_eq!(p("e^4+d^5").substitute(v('d'), false), p("e^4"));
        assert_eq!(p("ab").substitute(v('a'), false), SymPoly::zero());
        assert_eq!(p("ab+b").substitute(v('a'), true), SymPoly::zero());
    }

    #[test]
    fn eval_examples() {
        let f = FieldCtx::new(4, None).unwrap();
        let mut asg = BTreeMap::new();
        assert_eq!(SymPoly::one().eval(&f, &asg).unwrap(), GfElem::ONE);
        assert_eq!(p("b").eval(&f, &asg), Err(Error::UnboundVariable('b')));
        asg.insert(v('b'), GfElem(2));
        asg.insert(v('c'), GfElem(3));
        // b^2 c + 1 = x^2 (x+1) + 1 = x^3 + x^2 + 1
        assert_eq!(p("b^2c+1").eval(&f, &asg).unwrap(), GfElem(0b1101));
    }

    #[test]
    fn division_examples() {
        let e = v('e');
        let monic = p("e^3+be+c");
        let (q, r) = monic.divmod_in_var(&monic, e).unwrap();
        assert_eq!((q, r), (SymPoly::one(), SymPoly::zero()));
        let (q, r) = p("e^2+c").divmod_in_var(&p("e+1"), e).unwrap();
        assert_eq!((q, r), (p("e+1"), p("c+1")));
        assert_eq!(p("e").divmod_in_var(&p("ce+1"), e), Err(Error::NonMonicDivisor('e')));
        assert_eq!(p("e").divmod_in_var(&SymPoly::zero(), e), Err(Error::NonMonicDivisor('e')));
    }

    #[test]
    fn printing_is_canonical() {
        let x = p("e^2 + b^4 + 1 + c b^2 + c");
        assert_eq!(x.to_string(), "1+c+e^2+b^2c+b^4");
        assert_eq!(SymPoly::zero().to_string(), "0");
        assert_eq!(p(&x.to_string()), x);
    }

    fn arb_poly() -> impl Strategy<Value = SymPoly> {
        prop::collection::vec(prop::collection::vec(0u32..4, 5), 0..6).prop_map(|rows| {
            SymPoly::from_monomials(rows.into_iter().map(|r| {
                let mut m = SymMonomial::ONE;
                for (i, e) in r.into_iter().enumerate() {
                    m = m.mul(&SymMonomial::var_pow(Var::new(i + 1).unwrap(), e));
                }
                m
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert!(x.add(&x).is_zero());
            prop_assert_eq!(x.mul(&SymPoly::one()), x.clone());
        }

        #[test]
        fn divmod_round_trip(x in arb_poly(), y in arb_poly()) {
            let e = Var::new(5).unwrap();
            let monic = y.add(&SymPoly::from_monomial(SymMonomial::var_pow(e, 9)));
            let monic = SymPoly::from_monomials(
                monic.monomials().copied().filter(|m| m.exp(e) < 9 || m.total_degree() == 9),
            );
            let (q, r) = x.divmod_in_var(&monic, e).unwrap();
            prop_assert_eq!(q.mul(&monic).add(&r), x);
            prop_assert!(r.degree_in(e).is_none_or(|d| d < 9));
        }

        #[test]
        fn display_round_trips(x in arb_poly()) {
            prop_assert_eq!(SymPoly::parse(&x.to_string()).unwrap(), x);
        }
    }
}
