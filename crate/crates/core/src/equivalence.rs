//! Equivalence of polynomials under `f -> psi^k(a*f(b*x + c) + d)`, where
//! `psi` squares every coefficient.

use crate::error::{Error, Result};
use crate::gf2t::{FieldCtx, GfElem};
use crate::poly::FieldPoly;

/// `f -> psi^frob(a*f(b*x + c) + d)` with `a, b` nonzero.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transform {
    pub a: GfElem,
    pub b: GfElem,
    pub c: GfElem,
    pub d: GfElem,
    pub frob: u32,
}

impl Transform {
    pub const IDENTITY: Transform =
        Transform { a: GfElem::ONE, b: GfElem::ONE, c: GfElem::ZERO, d: GfElem::ZERO, frob: 0 };

    pub fn new(field: &FieldCtx, a: GfElem, b: GfElem, c: GfElem, d: GfElem, frob: u32) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DegenerateTransform);
        }
        Ok(Transform { a, b, c, d, frob: frob % field.t() })
    }

    pub fn apply<'f>(&self, f: &FieldPoly<'f>) -> FieldPoly<'f> {
        f.compose_affine(self.a, self.b, self.c, self.d).frobenius_pow(self.frob)
    }

    pub fn inverse(&self, field: &FieldCtx) -> Transform {
        // psi^-k (a f(bx+c) + d) = g  gives  f = a' (psi^k ... ) written with psi last
        let inv_a = field.inv(self.a).expect("a is nonzero");
        let inv_b = field.inv(self.b).expect("b is nonzero");
        let k = self.frob;
        let lift = |x: GfElem| field.frobenius(x, k);
        Transform {
            a: lift(inv_a),
            b: lift(inv_b),
            c: lift(field.mul(inv_b, self.c)),
            d: lift(field.mul(inv_a, self.d)),
            frob: (field.t() - k) % field.t(),
        }
    }
}

fn check_shape(f: &FieldPoly) -> Result<usize> {
    match f.degree() {
        Some(d @ (6 | 7)) if d < f.field().q() => Ok(d),
        Some(d) if d == 6 || d == 7 => Err(Error::DegreeTooLarge { degree: d, q: f.field().q() }),
        Some(d) => Err(Error::UnsupportedShape(d)),
        None => Err(Error::UnsupportedShape(0)),
    }
}

/// Reduces `f` to the normalized shape and returns the transform that does it.
///
/// Degree 6: monic, no constant, `x^5` coefficient in `{0, 1}`, and when it
/// is 1 the `x^4` coefficient is in `{0, mu}`. Degree 7: monic, no constant,
/// no `x^6` term, `x^5` coefficient in `{0, 1}`.
pub fn normalize_shape<'f>(f: &FieldPoly<'f>) -> Result<(FieldPoly<'f>, Transform)> {
    let field = f.field();
    let deg = check_shape(f)?;
    let lead_inv = field.inv(f.leading())?;
    let monic = f.scale(lead_inv);
    let (scale, shift) = if deg == 6 {
        let a5 = monic.coeff(5);
        let s = if a5.is_zero() { GfElem::ONE } else { a5 };
        // x -> s(x + r): the x^4 coefficient becomes b + r + r^2 when a5 = 1
        let r = if a5.is_zero() {
            GfElem::ZERO
        } else {
            let b = field.div(monic.coeff(4), field.pow(s, 2))?;
            let target = if field.trace(b) { b + field.mu() } else { b };
            field.solve_artin_schreier(target).expect("trace zero by construction")
        };
        (s, field.mul(s, r))
    } else {
        // (x + r)^7 has x^6 coefficient r
        let r = monic.coeff(6);
        let a5 = monic.compose_affine(GfElem::ONE, GfElem::ONE, r, GfElem::ZERO).coeff(5);
        let s = if a5.is_zero() { GfElem::ONE } else { field.sqrt(a5) };
        (s, r)
    };
    let a = field.mul(lead_inv, field.inv(field.pow(scale, deg as u64))?);
    let mut t = Transform::new(field, a, scale, shift, GfElem::ZERO, 0)?;
    t.d = t.apply(f).coeff(0);
    let g = t.apply(f);
    Ok((g, t))
}

/// Visits every monic, zero-constant image of `f` under `x -> b*x + c`
/// (`b != 0`) and coefficient Frobenius. The slice holds the coefficients of
/// `x^(deg-1)` down to `x^1`.
pub fn for_each_image(f: &FieldPoly, mut visit: impl FnMut(&[GfElem])) -> Result<()> {
    let field = f.field();
    let deg = check_shape(f)?;
    let order = field.q() as u64 - 1;
    let lead_inv = field.inv(f.leading())?;
    let mut key = vec![GfElem::ZERO; deg - 1];
    for k in 0..field.t() {
        let g = f.scale(lead_inv).frobenius_pow(k);
        for c in field.elements() {
            let h = g.compose_affine(GfElem::ONE, GfElem::ONE, c, GfElem::ZERO);
            let logs: Vec<Option<u64>> =
                (0..deg).map(|i| field.log(h.coeff(i)).map(u64::from)).collect();
            for j in 0..order {
                // b = g^j; the x^i coefficient picks up b^(i - deg)
                for (slot, i) in (1..deg).rev().enumerate() {
                    key[slot] = match logs[i] {
                        Some(l) => field.exp(l + j * (order - 1) * (deg - i) as u64 % order),
                        None => GfElem::ZERO,
                    };
                }
                visit(&key);
            }
        }
    }
    Ok(())
}

fn key_bits(key: &[GfElem]) -> impl Iterator<Item = u32> + '_ {
    key.iter().map(|x| x.0)
}

/// The orbit member whose coefficient masks, read from `x^(deg-1)` down to
/// `x^1`, are lexicographically smallest.
pub fn canonical_form<'f>(f: &FieldPoly<'f>) -> Result<FieldPoly<'f>> {
    let mut best: Option<Vec<GfElem>> = None;
    for_each_image(f, |key| {
        let better = match &best {
            None => true,
            Some(b) => key_bits(key).lt(key_bits(b)),
        };
        if better {
            best = Some(key.to_vec());
        }
    })?;
    let key = best.expect("orbit is nonempty");
    Ok(from_key(f.field(), &key))
}

/// Rebuilds `x^deg + key[0] x^(deg-1) + ... + key[deg-2] x`.
pub fn from_key<'f>(field: &'f FieldCtx, key: &[GfElem]) -> FieldPoly<'f> {
    let deg = key.len() + 1;
    let mut coeffs = vec![GfElem::ZERO; deg + 1];
    coeffs[deg] = GfElem::ONE;
    for (slot, &x) in key.iter().enumerate() {
        coeffs[deg - 1 - slot] = x;
    }
    FieldPoly::new(field, coeffs)
}

/// Inverse of [`from_key`] for monic polynomials.
pub fn to_key(f: &FieldPoly) -> Vec<GfElem> {
    let deg = f.degree().unwrap_or(0);
    (1..deg).rev().map(|i| f.coeff(i)).collect()
}
