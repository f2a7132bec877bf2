//! Univariate polynomials over GF(2^t).

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::gf2t::{FieldCtx, GfElem};

/// A dense polynomial over a [`FieldCtx`], coefficients from the constant term up.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldPoly<'f> {
    field: &'f FieldCtx,
    coeffs: Vec<GfElem>,
}

impl<'f> FieldPoly<'f> {
    pub fn new(field: &'f FieldCtx, coeffs: Vec<GfElem>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        let mut p = FieldPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &'f FieldCtx) -> Self {
        FieldPoly { field, coeffs: Vec::new() }
    }

    pub fn monomial(field: &'f FieldCtx, c: GfElem, k: usize) -> Self {
        let mut coeffs = vec![GfElem::ZERO; k + 1];
        coeffs[k] = c;
        FieldPoly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&GfElem::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn coeffs(&self) -> &[GfElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GfElem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> GfElem {
        self.coeffs.get(k).copied().unwrap_or(GfElem::ZERO)
    }

    pub fn leading(&self) -> GfElem {
        self.coeffs.last().copied().unwrap_or(GfElem::ZERO)
    }

    pub fn add(&self, other: &FieldPoly<'f>) -> FieldPoly<'f> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        FieldPoly::new(self.field, coeffs)
    }

    pub fn mul(&self, other: &FieldPoly<'f>) -> FieldPoly<'f> {
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.field);
        }
        let mut out = vec![GfElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += self.field.mul(a, b);
            }
        }
        FieldPoly::new(self.field, out)
    }

    pub fn scale(&self, s: GfElem) -> FieldPoly<'f> {
        FieldPoly::new(self.field, self.coeffs.iter().map(|&c| self.field.mul(c, s)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: GfElem) -> GfElem {
        self.coeffs.iter().rev().fold(GfElem::ZERO, |acc, &c| self.field.mul(acc, x) + c)
    }

    /// The expanded polynomial `a*f(b*x + c) + d`.
    pub fn compose_affine(&self, a: GfElem, b: GfElem, c: GfElem, d: GfElem) -> FieldPoly<'f> {
        let f = self.field;
        let mut acc: Vec<GfElem> = Vec::with_capacity(self.coeffs.len());
        for &fk in self.coeffs.iter().rev() {
            // acc <- acc * (b x + c) + fk
            let mut next = vec![GfElem::ZERO; acc.len() + 1];
            for (i, &v) in acc.iter().enumerate() {
                next[i] += f.mul(v, c);
                next[i + 1] += f.mul(v, b);
            }
            next[0] += fk;
            acc = next;
        }
        let mut coeffs: Vec<GfElem> = acc.into_iter().map(|v| f.mul(v, a)).collect();
        if coeffs.is_empty() {
            coeffs.push(GfElem::ZERO);
        }
        coeffs[0] += d;
        FieldPoly::new(f, coeffs)
    }

    /// Coefficient Frobenius: every coefficient squared.
    pub fn frobenius_map(&self) -> FieldPoly<'f> {
        self.frobenius_pow(1)
    }

    /// Coefficient Frobenius applied `k` times.
    pub fn frobenius_pow(&self, k: u32) -> FieldPoly<'f> {
        let coeffs = self.coeffs.iter().map(|&c| self.field.frobenius(c, k)).collect();
        FieldPoly::new(self.field, coeffs)
    }

    /// `f` reduced mod `x^q - x`, as a length-`q` coefficient vector.
    pub fn reduced(&self) -> Vec<GfElem> {
        let q = self.field.q();
        let mut out = vec![GfElem::ZERO; q];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[reduce_exponent(k, q)] += c;
        }
        out
    }

    /// `f^n mod (x^q - x)` as a length-`q` coefficient vector.
    pub fn reduced_power(&self, n: u64) -> Vec<GfElem> {
        let field = self.field;
        let q = field.q();
        let base = sparse(&self.reduced());
        let mut acc = vec![GfElem::ZERO; q];
        acc[0] = GfElem::ONE;
        if n == 0 {
            return acc;
        }
        // left-to-right binary ladder
        for bit in (0..64 - n.leading_zeros()).rev() {
            acc = reduced_square(field, &acc);
            if (n >> bit) & 1 == 1 {
                acc = reduced_mul_sparse(field, &acc, &base);
            }
        }
        acc
    }

    /// `[x^k] (f^n mod (x^q - x))`.
    pub fn powmod_coefficient(&self, n: u64, k: usize) -> Result<GfElem> {
        let q = self.field.q();
        if k >= q {
            return Err(Error::ExponentOutOfRange { k, q });
        }
        Ok(self.reduced_power(n)[k])
    }

    /// Number of distinct roots in the field, by enumeration.
    pub fn count_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.field.elements().filter(|&x| self.eval(x).is_zero()).count())
    }

    /// Parses the literal grammar: `+`-separated terms `coeff*x^k`, `x^k`, or
    /// `coeff`, with coefficients `0`, `1`, `a^k` (generator power) or `0x<hex>`.
    /// `x` and `a` alone stand for the first power.
    pub fn parse(field: &'f FieldCtx, s: &str) -> Result<FieldPoly<'f>> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(s, "empty polynomial"));
        }
        let mut coeffs: Vec<GfElem> = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(parse_err(s, "empty term"));
            }
            let (c, k) = parse_term(field, term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, GfElem::ZERO);
            }
            coeffs[k] += c;
        }
        Ok(FieldPoly::new(field, coeffs))
    }
}

fn parse_exponent(tok: &str, whole: &str) -> Result<usize> {
    let inner = tok.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(tok);
    inner.parse::<usize>().map_err(|_| parse_err(whole, "expected a nonnegative exponent"))
}

fn parse_coeff(field: &FieldCtx, tok: &str) -> Result<GfElem> {
    match tok {
        "0" => return Ok(GfElem::ZERO),
        "1" => return Ok(GfElem::ONE),
        "a" => return Ok(field.generator()),
        _ => {}
    }
    if let Some(hex) = tok.strip_prefix("0x").or_else(|| tok.strip_prefix("0X")) {
        let v = u32::from_str_radix(hex, 16).map_err(|_| parse_err(tok, "bad hex coefficient"))?;
        if !field.contains(GfElem(v)) {
            return Err(parse_err(tok, "coefficient mask exceeds the field"));
        }
        return Ok(GfElem(v));
    }
    if let Some(e) = tok.strip_prefix("a^") {
        return Ok(field.pow(field.generator(), parse_exponent(e, tok)? as u64));
    }
    Err(parse_err(tok, "expected a coefficient (0, 1, a^k or 0x..)"))
}

fn parse_term(field: &FieldCtx, term: &str) -> Result<(GfElem, usize)> {
    let (coeff, var) = match term.split_once('*') {
        Some((c, v)) => (parse_coeff(field, c)?, v),
        None if term.starts_with('x') => (GfElem::ONE, term),
        None => return Ok((parse_coeff(field, term)?, 0)),
    };
    let k = match var {
        "x" => 1,
        _ => match var.strip_prefix("x^") {
            Some(e) => parse_exponent(e, term)?,
            None => return Err(parse_err(term, "expected x or x^k")),
        },
    };
    Ok((coeff, k))
}

impl fmt::Display for FieldPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.field.display(c);
            match (k, c == GfElem::ONE) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{cs}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{cs}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly({self})")
    }
}

/// Exponent reduction mod `x^q - x`: 0 stays 0, `e >= 1` maps into `1..=q-1`.
#[inline]
pub fn reduce_exponent(e: usize, q: usize) -> usize {
    if e == 0 {
        0
    } else {
        (e - 1) % (q - 1) + 1
    }
}

pub(crate) fn sparse(v: &[GfElem]) -> Vec<(usize, GfElem)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| (k, c)).collect()
}

/// Product of two reduced polynomials, the second given sparsely.
pub(crate) fn reduced_mul_sparse(
    field: &FieldCtx,
    dense: &[GfElem],
    terms: &[(usize, GfElem)],
) -> Vec<GfElem> {
    let q = field.q();
    let order = q - 1;
    let mut out = vec![GfElem::ZERO; q];
    for (i, &a) in dense.iter().enumerate() {
        let Some(la) = field.log(a) else { continue };
        for &(j, b) in terms {
            let lb = field.log_raw(b.0);
            let mut e = i + j;
            if e >= q {
                e -= order;
            }
            out[e].0 ^= field.exp_raw((la + lb) as usize);
        }
    }
    out
}

/// Square of a reduced polynomial; squaring is additive in characteristic 2.
pub(crate) fn reduced_square(field: &FieldCtx, p: &[GfElem]) -> Vec<GfElem> {
    let q = field.q();
    let mut out = vec![GfElem::ZERO; q];
    for (i, &a) in p.iter().enumerate() {
        if !a.is_zero() {
            out[reduce_exponent(2 * i, q)] += field.sqr(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_poly<'f>(f: &'f FieldCtx, rng: &mut impl Rng, deg: usize) -> FieldPoly<'f> {
        let q = f.q() as u32;
        FieldPoly::new(f, (0..=deg).map(|_| GfElem(rng.gen_range(0..q))).collect())
    }

    /// Full product then reduction; independent of the ladder.
    fn naive_reduced_power(f: &FieldPoly, n: u64) -> Vec<GfElem> {
        let field = f.field();
        let mut acc = FieldPoly::monomial(field, GfElem::ONE, 0);
        for _ in 0..n {
            acc = acc.mul(f);
        }
        acc.reduced()
    }

    #[test]
    fn evaluation_examples() {
        let f8 = FieldCtx::new(3, None).unwrap();
        let f = FieldPoly::parse(&f8, "x^6+x^5+x^2").unwrap();
        assert_eq!(f.eval(GfElem::ZERO), GfElem::ZERO);
        assert_eq!(f.eval(GfElem::ONE), GfElem::ONE);
        let x6 = FieldPoly::parse(&f8, "x^6").unwrap();
        assert_eq!(x6.eval(GfElem(2)), GfElem(0b101));
    }

    #[test]
    fn compose_affine_examples() {
        let f8 = FieldCtx::new(3, None).unwrap();
        let f = FieldPoly::parse(&f8, "x^6+a^2*x^5+x^3+a*x").unwrap();
        assert_eq!(f.compose_affine(GfElem::ONE, GfElem::ONE, GfElem::ZERO, GfElem::ZERO), f);
        let x2 = FieldPoly::parse(&f8, "x^2").unwrap();
        for g in f8.elements() {
            assert_eq!(x2.compose_affine(GfElem::ONE, GfElem::ONE, g, f8.sqr(g)), x2);
            let shifted = f.compose_affine(GfElem::ONE, GfElem::ONE, g, GfElem::ZERO);
            assert_eq!(shifted.coeff(5), f.coeff(5));
        }
    }

    #[test]
    fn compose_affine_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for t in [3, 4] {
            let field = FieldCtx::new(t, None).unwrap();
            for _ in 0..4 {
                let f = rand_poly(&field, &mut rng, 7);
                for a in field.elements() {
                    for b in field.elements() {
                        let c = GfElem(rng.gen_range(0..field.q() as u32));
                        let d = GfElem(rng.gen_range(0..field.q() as u32));
                        let g = f.compose_affine(a, b, c, d);
                        for x in field.elements() {
                            let want = field.mul(a, f.eval(field.mul(b, x) + c)) + d;
                            assert_eq!(g.eval(x), want);
                        }
                        if !a.is_zero() && !b.is_zero() {
                            assert_eq!(g.degree(), f.degree());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f8 = FieldCtx::new(3, None).unwrap();
        let binary = FieldPoly::parse(&f8, "x^6+x^3+1").unwrap();
        assert_eq!(binary.frobenius_map(), binary);
        let f = FieldPoly::parse(&f8, "x^6+a*x^3").unwrap();
        assert_eq!(f.frobenius_map(), FieldPoly::parse(&f8, "x^6+a^2*x^3").unwrap());
        let mut g = f.clone();
        for _ in 0..3 {
            g = g.frobenius_map();
        }
        assert_eq!(g, f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let h = rand_poly(&f8, &mut rng, 7);
            let psi = h.frobenius_map();
            for x in f8.elements() {
                assert_eq!(psi.eval(f8.sqr(x)), f8.sqr(h.eval(x)));
            }
        }
    }

    #[test]
    fn powmod_examples() {
        for t in [2, 3, 4, 5] {
            let field = FieldCtx::new(t, None).unwrap();
            let q = field.q();
            let x = FieldPoly::parse(&field, "x").unwrap();
            assert_eq!(x.powmod_coefficient(q as u64 - 1, q - 1).unwrap(), GfElem::ONE);
            assert!(matches!(x.powmod_coefficient(1, q), Err(Error::ExponentOutOfRange { .. })));
        }
        let f8 = FieldCtx::new(3, None).unwrap();
        let x6 = FieldPoly::parse(&f8, "x^6").unwrap();
        for n in 1..=6 {
            assert_eq!(x6.powmod_coefficient(n, 7).unwrap(), GfElem::ZERO);
        }
        // 2^t = 7m + 1: [x^{7m}] f^m = 1 for monic degree 7
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for t in [3, 6] {
            let field = FieldCtx::new(t, None).unwrap();
            let m = (field.q() - 1) / 7;
            for _ in 0..10 {
                let mut f = rand_poly(&field, &mut rng, 6).into_coeffs();
                f.resize(7, GfElem::ZERO);
                f.push(GfElem::ONE);
                let f = FieldPoly::new(&field, f);
                assert_eq!(f.powmod_coefficient(m as u64, 7 * m).unwrap(), GfElem::ONE);
            }
        }
    }

    #[test]
    fn ladder_matches_naive_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for t in 2..=6 {
            let field = FieldCtx::new(t, None).unwrap();
            for deg in [1, 3, 7] {
                let f = rand_poly(&field, &mut rng, deg);
                for n in 0..12 {
                    assert_eq!(f.reduced_power(n), naive_reduced_power(&f, n), "t={t} n={n}");
                }
            }
        }
    }

    #[test]
    fn reduced_power_agrees_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let field = FieldCtx::new(5, None).unwrap();
        for _ in 0..20 {
            let f = rand_poly(&field, &mut rng, 9);
            let n = rng.gen_range(1..200);
            let r = FieldPoly::new(&field, f.reduced_power(n));
            for x in field.elements() {
                assert_eq!(r.eval(x), field.pow(f.eval(x), n));
            }
        }
    }

    #[test]
    fn root_counts() {
        let f8 = FieldCtx::new(3, None).unwrap();
        assert_eq!(FieldPoly::parse(&f8, "x^2+x").unwrap().count_roots().unwrap(), 2);
        // g = x^5 + c x^2 + x + c^2 + c with c = alpha
        let g = FieldPoly::parse(&f8, "x^5+a*x^2+x+a^2+a").unwrap();
        assert_eq!(g.count_roots().unwrap(), 1);
        for b in f8.elements().filter(|&b| f8.trace(b)) {
            let h = FieldPoly::new(&f8, vec![b, GfElem::ONE, GfElem::ONE]);
            assert_eq!(h.count_roots().unwrap(), 0);
        }
        assert_eq!(FieldPoly::zero(&f8).count_roots(), Err(Error::ZeroPolynomial));
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let f = rand_poly(&f8, &mut rng, 5);
            if let Some(d) = f.degree() {
                assert!(f.count_roots().unwrap() <= d || d == 0);
            }
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let field = FieldCtx::new(6, None).unwrap();
        for _ in 0..100 {
            let f = rand_poly(&field, &mut rng, 6);
            let g = rand_poly(&field, &mut rng, 5);
            let x = GfElem(rng.gen_range(0..64));
            assert_eq!(f.mul(&g).eval(x), field.mul(f.eval(x), g.eval(x)));
            assert_eq!(f.add(&g).eval(x), f.eval(x) + g.eval(x));
        }
    }

    #[test]
    fn literal_grammar() {
        let f16 = FieldCtx::new(4, None).unwrap();
        let f = FieldPoly::parse(&f16, "x^6+x^5+a^3*x^3").unwrap();
        assert_eq!(f.to_string(), "x^6+x^5+a^3*x^3");
        let g = FieldPoly::parse(&f16, "x^7 + a*x^4 + 0x3*x + 1").unwrap();
        assert_eq!(g.coeff(4), f16.generator());
        assert_eq!(g.coeff(1), GfElem(3));
        assert_eq!(g.coeff(0), GfElem::ONE);
        assert_eq!(g.to_string(), "x^7+a^1*x^4+a^4*x+1");
        assert_eq!(FieldPoly::parse(&f16, &g.to_string()).unwrap(), g);
        assert_eq!(FieldPoly::parse(&f16, "x^{14}").unwrap().degree(), Some(14));
        assert_eq!(FieldPoly::parse(&f16, "x^2+x^2").unwrap().to_string(), "0");
        for bad in ["x^6+", "x^6+q", "x^a", "0x1f*x", "b^2*x"] {
            let err = FieldPoly::parse(&f16, bad).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{bad}");
        }
    }
}
