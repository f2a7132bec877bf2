//! Verification suites: coefficient restrictions on degree 6 permutations,
//! the one-root quintic family, the algebraic identities between extracted
//! coefficients, and the known tables.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivalence::{canonical_form, Transform};
use crate::error::{Error, Result};
use crate::fixtures::Equations;
use crate::gf2t::{FieldCtx, GfElem};
use crate::poly::FieldPoly;
use crate::symbolic::{SymPoly, Var, MAX_VARS};

use super::{classify, normalized_permutations, pack_key, ClassifyOptions, ExpectedTables, Mode};

#[derive(Clone, Debug, Serialize)]
pub struct DicksonReport {
    pub t: u32,
    pub pass: bool,
    /// Permutations checked after removing the excepted classes.
    pub checked: usize,
    pub excluded: usize,
    pub counterexamples: Vec<String>,
}

/// Checks the coefficient restrictions on every degree 6 permutation found in
/// the normalized space, and on one random non-normalized orbit member each.
///
/// With `f = x^6 + a x^5 + b x^4 + c x^3 + ...`: for even `t`, `c = a^3 != 0`;
/// for odd `t`, `a != 0`, `c != 0` and `c != a^3`. Excepted: the class of
/// `x^6`, and for `t = 5` the class of `x^6 + x^5 + x^2`.
pub fn verify_dickson_restrictions(t: u32, seed: u64) -> Result<DicksonReport> {
    if !(3..=7).contains(&t) {
        return Err(Error::InvalidArgument(format!("restriction suite takes 3 <= t <= 7, got {t}")));
    }
    let field = FieldCtx::new(t, None)?;
    let mut excepted = vec![pack_key(&canonical_form(&FieldPoly::parse(&field, "x^6")?)?)];
    if t == 5 {
        excepted.push(pack_key(&canonical_form(&FieldPoly::parse(&field, "x^6+x^5+x^2")?)?));
    }
    let holds = |f: &FieldPoly| {
        let lead = field.inv(f.leading()).expect("nonzero leading coefficient");
        let a = field.mul(f.coeff(5), lead);
        let c = field.mul(f.coeff(3), lead);
        let a3 = field.pow(a, 3);
        if t.is_multiple_of(2) {
            c == a3 && !c.is_zero()
        } else {
            !a.is_zero() && !c.is_zero() && c != a3
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.q() as u32;
    let mut report = DicksonReport { t, pass: true, checked: 0, excluded: 0, counterexamples: Vec::new() };
    let mut seen_class = BTreeMap::new();
    for c in normalized_permutations(&field, 6, Mode::Verify)? {
        let f = FieldPoly::new(&field, c[..7].to_vec());
        let class = pack_key(&canonical_form(&f)?);
        if excepted.contains(&class) {
            report.excluded += 1;
            continue;
        }
        report.checked += 1;
        if !holds(&f) {
            report.counterexamples.push(f.to_string());
        }
        if seen_class.insert(class, ()).is_none() {
            // the restrictions are stated for any monic form, not just normalized ones
            let tr = Transform::new(
                &field,
                GfElem(rng.gen_range(1..q)),
                GfElem(rng.gen_range(1..q)),
                GfElem(rng.gen_range(0..q)),
                GfElem(rng.gen_range(0..q)),
                0,
            )?;
            let g = tr.apply(&f);
            if !holds(&g) {
                report.counterexamples.push(g.to_string());
            }
        }
    }
    report.pass = report.counterexamples.is_empty();
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuinticReport {
    pub t: u32,
    pub pass: bool,
    pub checked: usize,
    /// Values of the parameter where the root count is not one.
    pub failures: Vec<(GfElem, usize)>,
}

/// `x^5 + c x^2 + x + c^2 + c` has exactly one root for every `c` outside `{0, 1}`.
pub fn verify_quintic_lemma(t: u32) -> Result<QuinticReport> {
    if t.is_multiple_of(2) || !(3..=11).contains(&t) {
        return Err(Error::InvalidArgument(format!("quintic suite takes odd 3 <= t <= 11, got {t}")));
    }
    let field = FieldCtx::new(t, None)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for c in field.elements().skip(2) {
        let g = quintic(&field, c);
        let roots = g.count_roots()?;
        checked += 1;
        if roots != 1 {
            failures.push((c, roots));
        }
    }
    Ok(QuinticReport { t, pass: failures.is_empty(), checked, failures })
}

fn quintic(field: &FieldCtx, c: GfElem) -> FieldPoly<'_> {
    let c2c = field.sqr(c) + c;
    FieldPoly::new(field, vec![c2c, GfElem::ONE, c, GfElem::ZERO, GfElem::ZERO, GfElem::ONE])
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl IdentityCheck {
    fn symbolic(name: &str, lhs: &SymPoly, rhs: &SymPoly) -> IdentityCheck {
        let diff = lhs.add(rhs);
        IdentityCheck {
            name: name.into(),
            pass: diff.is_zero(),
            detail: if diff.is_zero() {
                "exact".into()
            } else {
                format!("difference ({} monomials): {}", diff.len(), diff)
            },
        }
    }
}

fn v(c: char) -> Var {
    Var::from_letter(c).expect("letter in range")
}

/// Samples used by the numeric identity checks over GF(2^13).
pub const IDENTITY_SAMPLES: usize = 1000;

/// Runs the identity checks on the embedded equations.
pub fn verify_proof_identities(seed: u64) -> Result<Vec<IdentityCheck>> {
    check_identities(&Equations::embedded()?, seed)
}

/// As [`verify_proof_identities`] on a caller-supplied equation table.
pub fn check_identities(eqs: &Equations, seed: u64) -> Result<Vec<IdentityCheck>> {
    let e = v('e');
    let p = |s: &str| SymPoly::parse(s).expect("literal");
    let c1 = p("c+1");
    let mut out = Vec::new();

    let (e4, e5, e6, e7, e9, e10) =
        (eqs.poly("E4"), eqs.poly("E5"), eqs.poly("E6"), eqs.poly("E7"), eqs.poly("E9"), eqs.poly("E10"));
    out.push(IdentityCheck::symbolic("E5 = (c+1) E4 E6", e5, &c1.mul(e4).mul(e6)));
    let (_, rem) = e7.divmod_in_var(e6, e)?;
    out.push(IdentityCheck::symbolic("E7 mod E6 = E10", &rem, e10));
    let c8c18 = p("c^8").mul(&c1.pow(8));
    out.push(IdentityCheck::symbolic("E10 = c^8 (c+1)^8 E9", e10, &c8c18.mul(e9)));
    out.push(IdentityCheck::symbolic("E4 = e^2 + (c+1) e + gamma", e4, eqs.poly("E4_gamma")));

    // symbolic reading of reducing E6 by E9
    let (_, e6_mod) = e6.divmod_in_var(e9, e)?;
    let target = c1.pow(6);
    let agrees = e6_mod == target;
    out.push(IdentityCheck {
        name: "E6 mod E9 (in e), informational".into(),
        pass: true,
        detail: if agrees {
            "remainder is exactly (c+1)^6".into()
        } else {
            format!("remainder differs from (c+1)^6 in {} monomials", e6_mod.add(&target).len())
        },
    });

    let field = FieldCtx::new(13, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    out.push(numeric_e6_on_e9_roots(&field, e6, e9, &mut rng));
    out.extend(numeric_on_e1_surface(&field, eqs, &mut rng));
    Ok(out)
}

fn random_outside_01(field: &FieldCtx, rng: &mut impl Rng) -> GfElem {
    GfElem(rng.gen_range(2..field.q() as u32))
}

fn numeric_e6_on_e9_roots(field: &FieldCtx, e6: &SymPoly, e9: &SymPoly, rng: &mut impl Rng) -> IdentityCheck {
    let (e6, e9) = (e6.compile(), e9.compile());
    let e = v('e');
    let mut roots = Vec::new();
    let (mut tested, mut mismatches) = (0usize, 0usize);
    for _ in 0..IDENTITY_SAMPLES {
        let mut vals = [GfElem::ZERO; MAX_VARS];
        vals[1] = GfElem(rng.gen_range(0..field.q() as u32));
        vals[2] = random_outside_01(field, rng);
        let uni = e9.univariate(field, e, &vals);
        // plain scan over the field
        roots.clear();
        roots.extend(field.elements().filter(|&y| {
            uni.iter().rev().fold(GfElem::ZERO, |acc, &k| field.mul(acc, y) + k).is_zero()
        }));
        let want = field.pow(vals[2] + GfElem::ONE, 6);
        for &y in &roots {
            vals[4] = y;
            tested += 1;
            if e6.eval(field, &vals) != want {
                mismatches += 1;
            }
        }
    }
    IdentityCheck {
        name: "E6 = (c+1)^6 on roots of E9 over GF(2^13)".into(),
        pass: mismatches == 0 && tested > 0,
        detail: format!("{tested} roots tested, {mismatches} mismatches"),
    }
}

fn numeric_on_e1_surface(field: &FieldCtx, eqs: &Equations, rng: &mut impl Rng) -> [IdentityCheck; 2] {
    let get = |n: &str| eqs.poly(n).compile();
    let (e1, e2, e3, e4, e5, e7) = (get("E1"), get("E2"), get("E3"), get("E4"), get("E5"), get("E7"));
    let d = v('d');
    let (mut bad2, mut bad3, mut without_c) = (0usize, 0usize, 0usize);
    for _ in 0..IDENTITY_SAMPLES {
        let mut vals = [GfElem::ZERO; MAX_VARS];
        vals[0] = GfElem::ONE;
        vals[1] = GfElem(rng.gen_range(0..field.q() as u32));
        vals[2] = random_outside_01(field, rng);
        vals[4] = GfElem(rng.gen_range(0..field.q() as u32));
        // E1 is k0 + c d^2 in d
        let uni = e1.univariate(field, d, &vals);
        debug_assert!(uni.len() == 3 && uni[1].is_zero());
        let d2 = field.div(uni[0], uni[2]).expect("c is nonzero");
        vals[3] = field.sqrt(d2);
        debug_assert!(e1.eval(field, &vals).is_zero());
        let c = vals[2];
        let c1_4 = field.pow(c + GfElem::ONE, 4);
        if field.mul(field.pow(c, 4), e2.eval(field, &vals)) != e5.eval(field, &vals) {
            bad2 += 1;
        }
        let lhs = field.mul(field.pow(c, 23), e3.eval(field, &vals));
        let e47 = field.pow(field.mul(e4.eval(field, &vals), e7.eval(field, &vals)), 4);
        let rhs = field.mul(field.mul(c, c1_4), e47);
        if lhs != rhs {
            bad3 += 1;
        }
        if lhs == field.mul(c1_4, e47) {
            without_c += 1;
        }
    }
    [
        IdentityCheck {
            name: "c^4 E2 = E5 on E1 = 0 over GF(2^13)".into(),
            pass: bad2 == 0,
            detail: format!("{IDENTITY_SAMPLES} points, {bad2} mismatches"),
        },
        IdentityCheck {
            name: "c^23 E3 = c (c+1)^4 E4^4 E7^4 on E1 = 0 over GF(2^13)".into(),
            pass: bad3 == 0,
            detail: format!(
                "{IDENTITY_SAMPLES} points, {bad3} mismatches; \
                 c^23 E3 = (c+1)^4 E4^4 E7^4 holds at {without_c}"
            ),
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub degree: u32,
    pub t: u32,
    pub pass: bool,
    pub found_classes: usize,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    /// Listed entries whose degree is wrong.
    pub malformed: Vec<String>,
    /// What each malformed entry was resolved to, when the count matches.
    pub resolution: Vec<String>,
    /// Listed well-formed entries fall in distinct classes.
    pub listed_pairwise_inequivalent: bool,
}

/// The `(degree, t)` pairs compared against the embedded tables.
pub const TABLE_CASES: [(u32, u32); 10] =
    [(6, 3), (6, 4), (6, 5), (6, 6), (6, 7), (7, 3), (7, 4), (7, 5), (7, 6), (7, 7)];

pub fn verify_expected_tables(opts: &ClassifyOptions) -> Result<Vec<TableCheck>> {
    TABLE_CASES.iter().map(|&(deg, t)| check_table(deg, t, opts)).collect()
}

pub fn check_table(deg: u32, t: u32, opts: &ClassifyOptions) -> Result<TableCheck> {
    let tables = ExpectedTables::embedded()?;
    let field = FieldCtx::new(t, None)?;
    let report = classify(deg, t, opts)?;
    let entries = tables.get(deg, t).unwrap_or(&[]);
    let malformed: Vec<String> = entries.iter().filter(|e| e.malformed).map(|e| e.source.clone()).collect();
    let mut listed = Vec::new();
    for e in entries.iter().filter(|e| !e.malformed) {
        listed.push(pack_key(&canonical_form(&FieldPoly::parse(&field, &e.source)?)?));
    }
    let mut distinct = listed.clone();
    distinct.sort();
    distinct.dedup();
    let pairwise = distinct.len() == listed.len();
    let diff = &report.table_diff;
    let mut resolution = Vec::new();
    if !malformed.is_empty() && diff.extra.len() == malformed.len() {
        for (bad, found) in malformed.iter().zip(&diff.extra) {
            let witness = report
                .classes
                .iter()
                .find(|c| &c.canonical == found)
                .map(|c| c.witness.clone())
                .unwrap_or_default();
            resolution.push(format!("{bad} -> class of {found} (witness {witness})"));
        }
    }
    let pass = diff.missing.is_empty() && diff.extra.len() == resolution.len() && pairwise;
    Ok(TableCheck {
        degree: deg,
        t,
        pass,
        found_classes: report.classes.len(),
        missing: diff.missing.clone(),
        extra: diff.extra.clone(),
        malformed,
        resolution,
        listed_pairwise_inequivalent: pairwise,
    })
}
