//! Arithmetic in the binary field GF(2^t), 2 <= t <= 16.
//!
//! Elements are bit masks over the polynomial basis: bit `i` is the
//! coefficient of `x^i` in the reduced representative. Addition is XOR,
//! multiplication goes through discrete-log tables built once per field.

use std::fmt;

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

pub const MIN_T: u32 = 2;
pub const MAX_T: u32 = 16;

/// Primitive polynomials used when the smallest irreducible of degree `t`
/// does not have `x` as a primitive element. Index is `t`.
const PRIMITIVE_FALLBACK: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// An element of GF(2^t) as a polynomial-basis bit mask.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct GfElem(pub u32);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// characteristic 2: addition is xor
impl Add for GfElem {
    type Output = GfElem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: GfElem) -> GfElem {
        GfElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for GfElem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: GfElem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// A binary field GF(2^t) with its modulus, generator and log tables.
///
/// Immutable once built; share it by reference across workers.
#[derive(Clone)]
pub struct FieldCtx {
    t: u32,
    q: usize,
    modulus: u32,
    generator: GfElem,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`, doubled so sums of two logs need no reduction.
    exp: Vec<u32>,
    trace_mask: u32,
    mu: GfElem,
    /// Echelon basis of the F_2-linear map r -> r^2 + r: (pivot bit, image, preimage),
    /// sorted by descending pivot.
    as_basis: Vec<(u32, u32, u32)>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("t", &self.t)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.modulus == other.modulus && self.generator == other.generator
    }
}

impl Eq for FieldCtx {}

// Carry-less arithmetic on raw masks, used before the tables exist.

fn degree_of(mask: u32) -> i32 {
    31 - mask.leading_zeros() as i32
}

fn gf2_rem(mut a: u32, m: u32) -> u32 {
    let dm = degree_of(m);
    while a != 0 && degree_of(a) >= dm {
        a ^= m << (degree_of(a) - dm);
    }
    a
}

fn slow_mul(mut a: u32, mut b: u32, modulus: u32, t: u32) -> u32 {
    let mut r = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> t) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn slow_pow(mut x: u32, mut n: u64, modulus: u32, t: u32) -> u32 {
    let mut r = 1;
    while n > 0 {
        if n & 1 == 1 {
            r = slow_mul(r, x, modulus, t);
        }
        x = slow_mul(x, x, modulus, t);
        n >>= 1;
    }
    r
}

/// Trial division by every binary polynomial of degree `1..=t/2`.
pub fn is_irreducible(modulus: u32) -> bool {
    let t = degree_of(modulus);
    if t < 1 {
        return false;
    }
    if t == 1 {
        return true;
    }
    let max_div = 1u32 << (t / 2 + 1);
    (2..max_div).all(|d| gf2_rem(modulus, d) != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_primitive_mask(x: u32, modulus: u32, t: u32) -> bool {
    if x == 0 {
        return false;
    }
    let order = (1u64 << t) - 1;
    prime_factors(order).into_iter().all(|p| slow_pow(x, order / p, modulus, t) != 1)
}

/// The default modulus for `t`: the smallest irreducible of degree `t` when
/// `x` generates its multiplicative group, otherwise a shipped primitive
/// polynomial.
pub fn default_modulus(t: u32) -> Result<u32> {
    if !(MIN_T..=MAX_T).contains(&t) {
        return Err(Error::UnsupportedDegree(t));
    }
    let smallest = ((1u32 << t) | 1..1u32 << (t + 1))
        .step_by(2)
        .find(|&m| is_irreducible(m))
        .expect("an irreducible of every degree exists");
    if is_primitive_mask(2, smallest, t) {
        Ok(smallest)
    } else {
        Ok(PRIMITIVE_FALLBACK[t as usize])
    }
}

/// Parses a modulus written in hex, with or without a `0x` prefix.
pub fn parse_modulus_hex(s: &str) -> Result<u32> {
    let digits = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(digits, 16)
        .map_err(|_| crate::error::parse_err(s, "expected a hexadecimal modulus"))
}

impl FieldCtx {
    /// Builds GF(2^t). With `modulus = None` the default modulus for `t` is used.
    pub fn new(t: u32, modulus: Option<u32>) -> Result<Self> {
        if !(MIN_T..=MAX_T).contains(&t) {
            return Err(Error::UnsupportedDegree(t));
        }
        let modulus = match modulus {
            Some(m) => m,
            None => default_modulus(t)?,
        };
        if degree_of(modulus) != t as i32 {
            return Err(Error::ModulusDegreeMismatch { modulus, t });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ModulusNotIrreducible(modulus));
        }
        let q = 1usize << t;
        let generator = (2..q as u32)
            .find(|&g| is_primitive_mask(g, modulus, t))
            .expect("the multiplicative group of a field is cyclic");

        let order = q - 1;
        let mut log = vec![0u32; q];
        let mut exp = vec![0u32; 2 * order];
        let mut x = 1u32;
        for k in 0..order {
            exp[k] = x;
            exp[k + order] = x;
            log[x as usize] = k as u32;
            x = slow_mul(x, generator, modulus, t);
        }
        debug_assert_eq!(x, 1);

        let mut ctx = FieldCtx {
            t,
            q,
            modulus,
            generator: GfElem(generator),
            log,
            exp,
            trace_mask: 0,
            mu: GfElem::ZERO,
            as_basis: Vec::new(),
        };

        ctx.trace_mask = (0..t)
            .filter(|&i| ctx.trace_slow(GfElem(1 << i)))
            .fold(0, |acc, i| acc | (1 << i));
        ctx.mu = (0..q as u32)
            .map(GfElem)
            .find(|&x| ctx.trace(x))
            .expect("trace is onto F_2");

        let mut basis: Vec<(u32, u32, u32)> = Vec::new();
        for i in 0..t {
            let mut pre = 1u32 << i;
            let mut img = ctx.sqr(GfElem(pre)).0 ^ pre;
            for &(p, bimg, bpre) in &basis {
                if (img >> p) & 1 == 1 {
                    img ^= bimg;
                    pre ^= bpre;
                }
            }
            if img != 0 {
                basis.push((degree_of(img) as u32, img, pre));
                basis.sort_by_key(|b| std::cmp::Reverse(b.0));
            }
        }
        ctx.as_basis = basis;
        Ok(ctx)
    }

    #[inline]
    pub fn t(&self) -> u32 {
        self.t
    }

    /// Field order `q = 2^t`.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn modulus_hex(&self) -> String {
        format!("{:#x}", self.modulus)
    }

    #[inline]
    pub fn generator(&self) -> GfElem {
        self.generator
    }

    /// The smallest (by mask) element of trace one.
    #[inline]
    pub fn mu(&self) -> GfElem {
        self.mu
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + Clone {
        (0..self.q as u32).map(GfElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = GfElem> + Clone {
        (1..self.q as u32).map(GfElem)
    }

    pub fn contains(&self, x: GfElem) -> bool {
        (x.0 as usize) < self.q
    }

    /// Discrete log base the generator; `None` for zero.
    #[inline]
    pub fn log(&self, x: GfElem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// `g^k` for any `k`.
    #[inline]
    pub fn exp(&self, k: u64) -> GfElem {
        GfElem(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Raw table access for hot loops: `k < 2(q-1)`.
    #[inline]
    pub(crate) fn exp_raw(&self, k: usize) -> u32 {
        self.exp[k]
    }

    #[inline]
    pub(crate) fn log_raw(&self, x: u32) -> u32 {
        self.log[x as usize]
    }

    #[inline]
    pub fn mul(&self, x: GfElem, y: GfElem) -> GfElem {
        if x.0 == 0 || y.0 == 0 {
            return GfElem::ZERO;
        }
        GfElem(self.exp[(self.log[x.0 as usize] + self.log[y.0 as usize]) as usize])
    }

    #[inline]
    pub fn sqr(&self, x: GfElem) -> GfElem {
        self.mul(x, x)
    }

    /// `x^n` with `0^0 = 1`.
    pub fn pow(&self, x: GfElem, n: u64) -> GfElem {
        if n == 0 {
            return GfElem::ONE;
        }
        match self.log(x) {
            None => GfElem::ZERO,
            Some(l) => {
                let order = self.q as u64 - 1;
                self.exp((l as u64 * (n % order)) % order)
            }
        }
    }

    pub fn inv(&self, x: GfElem) -> Result<GfElem> {
        let l = self.log(x).ok_or(Error::DivisionByZero)?;
        let order = self.q as u32 - 1;
        Ok(GfElem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, x: GfElem, y: GfElem) -> Result<GfElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, x: GfElem, k: u32) -> GfElem {
        (0..k % self.t).fold(x, |acc, _| self.sqr(acc))
    }

    /// The unique square root, `x^(2^(t-1))`.
    pub fn sqrt(&self, x: GfElem) -> GfElem {
        self.frobenius(x, self.t - 1)
    }

    fn trace_slow(&self, x: GfElem) -> bool {
        let mut acc = GfElem::ZERO;
        let mut y = x;
        for _ in 0..self.t {
            acc += y;
            y = GfElem(slow_mul(y.0, y.0, self.modulus, self.t));
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Absolute trace to F_2.
    #[inline]
    pub fn trace(&self, x: GfElem) -> bool {
        (x.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// A root `r` of `r^2 + r = b` when `Tr(b) = 0`; the other root is `r + 1`.
    pub fn solve_artin_schreier(&self, b: GfElem) -> Option<GfElem> {
        if self.trace(b) {
            return None;
        }
        let r = if self.t % 2 == 1 {
            // half-trace: b + b^4 + b^16 + ...
            let mut acc = GfElem::ZERO;
            let mut y = b;
            for _ in 0..=(self.t - 1) / 2 {
                acc += y;
                y = self.sqr(self.sqr(y));
            }
            acc
        } else {
            let mut w = b.0;
            let mut r = 0;
            for &(pivot, img, pre) in &self.as_basis {
                if (w >> pivot) & 1 == 1 {
                    w ^= img;
                    r ^= pre;
                }
            }
            debug_assert_eq!(w, 0);
            GfElem(r)
        };
        debug_assert_eq!(self.sqr(r) + r, b);
        Some(r)
    }

    /// `"0"`, `"1"`, or `"a^k"` with `k` the discrete log.
    pub fn display(&self, x: GfElem) -> String {
        match x.0 {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ => format!("a^{}", self.log[x.0 as usize]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_moduli_match_named_roots() {
        let f8 = FieldCtx::new(3, None).unwrap();
        assert_eq!(f8.modulus(), 0b1011);
        assert_eq!(f8.generator(), GfElem(2));
        let f16 = FieldCtx::new(4, None).unwrap();
        assert_eq!(f16.modulus(), 0b10011);
        assert_eq!(f16.generator(), GfElem(2));
        assert_eq!(f8.modulus_hex(), "0xb");
    }

    #[test]
    fn every_default_modulus_has_x_primitive() {
        for t in MIN_T..=MAX_T {
            let f = FieldCtx::new(t, None).unwrap();
            assert_eq!(f.generator(), GfElem(2), "t = {t}");
        }
    }

    #[test]
    fn fallback_table_is_primitive() {
        for t in MIN_T..=MAX_T {
            let m = PRIMITIVE_FALLBACK[t as usize];
            assert!(is_irreducible(m));
            assert!(is_primitive_mask(2, m, t), "t = {t}");
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(FieldCtx::new(3, Some(0b1111)).unwrap_err(), Error::ModulusNotIrreducible(0b1111));
        assert_eq!(FieldCtx::new(17, None).unwrap_err(), Error::UnsupportedDegree(17));
        assert_eq!(FieldCtx::new(1, None).unwrap_err(), Error::UnsupportedDegree(1));
        assert!(matches!(FieldCtx::new(4, Some(0b1011)), Err(Error::ModulusDegreeMismatch { .. })));
        // custom modulus where x is not primitive still gets a primitive generator
        let f = FieldCtx::new(8, Some(0x11B)).unwrap();
        assert_ne!(f.generator(), GfElem(2));
        assert!(is_primitive_mask(f.generator().0, 0x11B, 8));
    }

    #[test]
    fn small_products() {
        let f8 = FieldCtx::new(3, None).unwrap();
        let a = GfElem(0b010);
        assert_eq!(f8.mul(a, GfElem(0b100)), GfElem(0b011));
        assert_eq!(f8.mul(GfElem::ZERO, a), GfElem::ZERO);
        assert_eq!(f8.pow(a, 7), GfElem::ONE);
        assert_eq!(f8.inv(a).unwrap(), GfElem(0b101));
        assert_eq!(f8.inv(GfElem::ONE).unwrap(), GfElem::ONE);
        assert_eq!(f8.inv(GfElem::ZERO), Err(Error::DivisionByZero));

        let f16 = FieldCtx::new(4, None).unwrap();
        let b = GfElem(0b0010);
        let b2 = f16.sqr(b);
        assert_eq!(f16.mul(b2, b2), GfElem(0b0011));
        assert_eq!(f16.pow(b, 5), GfElem(0b0110));
        assert_eq!(f16.pow(GfElem::ZERO, 0), GfElem::ONE);
        assert_eq!(f16.pow(GfElem::ZERO, 3), GfElem::ZERO);
        assert_eq!(f16.pow(b, 0), GfElem::ONE);
    }

    #[test]
    fn trace_examples() {
        for t in [3, 5, 7] {
            assert!(FieldCtx::new(t, None).unwrap().trace(GfElem::ONE));
        }
        let f4 = FieldCtx::new(2, None).unwrap();
        assert!(!f4.trace(GfElem::ONE));
        let f8 = FieldCtx::new(3, None).unwrap();
        assert!(!f8.trace(GfElem(2)));
    }

    #[test]
    fn artin_schreier_examples() {
        let f4 = FieldCtx::new(2, None).unwrap();
        assert_eq!(f4.solve_artin_schreier(GfElem(2)), None);
        let f8 = FieldCtx::new(3, None).unwrap();
        assert_eq!(f8.solve_artin_schreier(GfElem::ZERO).map(|r| r.0 <= 1), Some(true));
        let alpha = GfElem(2);
        let r = f8.solve_artin_schreier(alpha).unwrap();
        assert_eq!(f8.sqr(r) + r, alpha);
        let brute: Vec<_> = f8.elements().filter(|&x| f8.sqr(x) + x == alpha).collect();
        assert_eq!(brute.len(), 2);
        assert!(brute.contains(&r));
    }

    #[test]
    fn display_uses_discrete_log() {
        let f16 = FieldCtx::new(4, None).unwrap();
        assert_eq!(f16.display(GfElem::ZERO), "0");
        assert_eq!(f16.display(GfElem::ONE), "1");
        assert_eq!(f16.display(f16.generator()), "a^1");
        assert_eq!(f16.display(GfElem(0b0011)), "a^4");
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in MIN_T..=MAX_T {
            let f = FieldCtx::new(t, None).unwrap();
            let q = f.q() as u32;
            for _ in 0..10_000 {
                let (x, y, z) = (
                    GfElem(rng.gen_range(0..q)),
                    GfElem(rng.gen_range(0..q)),
                    GfElem(rng.gen_range(0..q)),
                );
                assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                assert_eq!(f.mul(x, y), f.mul(y, x));
                assert_eq!(f.mul(x, y + z), f.mul(x, y) + f.mul(x, z));
                // table product agrees with carry-less product
                assert_eq!(f.mul(x, y).0, slow_mul(x.0, y.0, f.modulus(), t));
            }
        }
    }

    #[test]
    fn inverses_and_group_order() {
        for t in MIN_T..=12 {
            let f = FieldCtx::new(t, None).unwrap();
            let order = f.q() as u64 - 1;
            for x in f.nonzero_elements() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), GfElem::ONE);
                assert_eq!(f.pow(x, order), GfElem::ONE);
                assert_eq!(f.exp(f.log(x).unwrap() as u64), x);
                assert_eq!(f.sqr(f.sqrt(x)), x);
            }
        }
    }

    #[test]
    fn trace_is_linear_and_balanced() {
        for t in [3, 4] {
            let f = FieldCtx::new(t, None).unwrap();
            for x in f.elements() {
                assert_eq!(f.trace(f.sqr(x)), f.trace(x));
                for y in f.elements() {
                    assert_eq!(f.trace(x + y), f.trace(x) ^ f.trace(y));
                }
            }
        }
        for t in MIN_T..=12 {
            let f = FieldCtx::new(t, None).unwrap();
            let ones = f.elements().filter(|&x| f.trace(x)).count();
            assert_eq!(ones, f.q() / 2);
            for x in f.elements() {
                assert_eq!(f.trace(x), f.trace_slow(x));
            }
            assert!(f.trace(f.mu()));
            assert!(f.elements().take_while(|&x| x != f.mu()).all(|x| !f.trace(x)));
        }
    }

    #[test]
    fn artin_schreier_solvable_iff_trace_zero() {
        for t in MIN_T..=12 {
            let f = FieldCtx::new(t, None).unwrap();
            for b in f.elements() {
                match f.solve_artin_schreier(b) {
                    Some(r) => {
                        assert!(!f.trace(b));
                        assert_eq!(f.sqr(r) + r, b);
                    }
                    None => assert!(f.trace(b)),
                }
            }
        }
    }

    #[test]
    fn parses_hex_moduli() {
        assert_eq!(parse_modulus_hex("0xB").unwrap(), 0xB);
        assert_eq!(parse_modulus_hex("13").unwrap(), 0x13);
        assert!(parse_modulus_hex("zz").is_err());
    }
}
