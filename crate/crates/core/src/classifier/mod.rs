//! Exhaustive classification of normalized degree 6 and 7 permutation
//! polynomials, and the verification suites built on it.

mod fast;
mod report;
mod space;
mod suites;
mod tables;

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digitcomb::wrap_params;
use crate::equivalence::{for_each_image, from_key};
use crate::error::{Error, Result};
use crate::gf2t::{FieldCtx, GfElem};
use crate::perm::is_pp_exhaustive;
use crate::poly::FieldPoly;

pub use fast::{lemma_offsets, plan_branches, univariate_roots, BranchPlan, Filter};
pub use report::{table_diff, ClassEntry, ClassificationReport, TableDiff};
pub use space::{CandidateSpace, Coeffs};
pub use suites::{
    check_identities, check_table, verify_dickson_restrictions, verify_expected_tables,
    verify_proof_identities, verify_quintic_lemma, DicksonReport, IdentityCheck, QuinticReport,
    TableCheck, IDENTITY_SAMPLES, TABLE_CASES,
};
pub use tables::{ExpectedTables, TableEntry};

use space::{add_square_term, tabulate_without_linear, SlopeKernel};

/// Largest `t` the searches accept.
pub const MAX_SEARCH_T: u32 = 11;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every candidate is decided directly.
    Verify,
    /// Candidates are first pruned by necessary conditions.
    Fast,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub mode: Mode,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Restricts the search to these `x^3` coefficient masks.
    pub x3_values: Option<std::ops::Range<u32>>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { mode: Mode::Verify, workers: None, x3_values: None }
    }
}

impl ClassifyOptions {
    pub fn mode(mode: Mode) -> Self {
        ClassifyOptions { mode, ..Default::default() }
    }
}

/// Packs coefficients of `x^(deg-1)` down to `x^1`, 16 bits each, first
/// coefficient most significant; integer order is the canonical order.
pub fn pack_key(f: &FieldPoly) -> u128 {
    let deg = f.degree().unwrap_or(0);
    pack_slice(&(1..deg).rev().map(|i| f.coeff(i)).collect::<Vec<_>>())
}

fn pack_slice(key: &[GfElem]) -> u128 {
    key.iter().fold(0u128, |acc, x| (acc << 16) | x.0 as u128)
}

fn pack_coeffs(c: &Coeffs, deg: usize) -> u128 {
    (1..deg).rev().fold(0u128, |acc, i| (acc << 16) | c[i].0 as u128)
}

fn unpack(key: u128, deg: usize) -> Vec<GfElem> {
    (0..deg - 1).rev().map(|i| GfElem(((key >> (16 * i)) & 0xFFFF) as u32)).collect()
}

#[derive(Default)]
struct Tally {
    candidates: u64,
    pps: Vec<Coeffs>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.candidates += other.candidates;
        self.pps.extend(other.pps);
        self
    }
}

fn check_bounds(deg: u32, t: u32) -> Result<()> {
    if deg != 6 && deg != 7 {
        return Err(Error::UnsupportedShape(deg as usize));
    }
    if t > MAX_SEARCH_T {
        return Err(Error::SearchTooLarge(t));
    }
    if t >= 63 || (1u64 << t) <= deg as u64 {
        return Err(Error::FieldTooSmall { deg, t });
    }
    Ok(())
}

/// Classifies over the field with the default modulus for `t`.
pub fn classify(deg: u32, t: u32, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    check_bounds(deg, t)?;
    let field = FieldCtx::new(t, None)?;
    classify_in(&field, deg, opts)
}

pub fn classify_in(field: &FieldCtx, deg: u32, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    check_bounds(deg, field.t())?;
    let start = Instant::now();
    let run = || search(field, deg as usize, opts);
    let tally = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Data(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let classes = group_classes(field, deg as usize, tally.pps.clone())?;
    let table_diff = table_diff(field, deg, &classes, &ExpectedTables::embedded()?)?;
    Ok(ClassificationReport {
        degree: deg,
        t: field.t(),
        modulus_hex: field.modulus_hex(),
        mode: opts.mode,
        candidates_tested: tally.candidates,
        pps_found: tally.pps.len() as u64,
        classes,
        table_diff,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn search(field: &FieldCtx, deg: usize, opts: &ClassifyOptions) -> Result<Tally> {
    let space = CandidateSpace::new(field, deg);
    let q = field.q() as u32;
    let range = opts.x3_values.clone().unwrap_or(0..q);
    let range = range.start.min(q)..range.end.min(q);
    let plans = match opts.mode {
        Mode::Fast => fast::plan_branches(&space, &wrap_params(deg as u32, field.t())?)?,
        Mode::Verify => None,
    };
    let root_filter = opts.mode == Mode::Fast && deg == 6 && field.t() % 2 == 1;
    let tally = range
        .into_par_iter()
        .map(|x3| {
            let x3 = GfElem(x3);
            // every candidate with this x^3 coefficient is decided below
            let mut tally = Tally { candidates: space.size() / q as u64, ..Default::default() };
            let mut accept = |c: &Coeffs| {
                let f = FieldPoly::new(field, c[..=deg].to_vec());
                if root_filter && (f.count_roots() != Ok(1)) {
                    return;
                }
                if is_pp_exhaustive(&f).is_pp {
                    tally.pps.push(*c);
                }
            };
            match &plans {
                None => kernel_partition(&space, x3, None, &mut accept),
                Some(plans) => {
                    for plan in plans {
                        if plan.rejects_all {
                            continue;
                        }
                        if plan.solve.is_none() {
                            kernel_partition(&space, x3, Some(plan.top), &mut accept);
                            continue;
                        }
                        let head_is_x3 = fast::slot_of(deg, plan.outer[0].0) == 3;
                        if head_is_x3 {
                            fast::search_branch(field, deg, plan, x3, &mut accept);
                        } else if x3.0 < plan.outer[0].1.len() as u32 {
                            // the x^3 coefficient is solved for; spread the head variable instead
                            let part = plan.outer[0].1[x3.0 as usize];
                            fast::search_branch(field, deg, plan, part, &mut accept);
                        }
                    }
                }
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally)
}

/// Decides every candidate with the given `x^3` coefficient, optionally only
/// on one `x^5` branch, by the slope kernel over the `x^1` coefficient.
fn kernel_partition(space: &CandidateSpace, x3: GfElem, top: Option<GfElem>, accept: &mut impl FnMut(&Coeffs)) {
    let field = space.field;
    let mut kernel = SlopeKernel::new(field);
    let (mut base, mut vals, mut slopes) = (Vec::new(), Vec::new(), Vec::new());
    space.for_each_block(x3, |prefix| {
        if top.is_some_and(|t| t != prefix[5]) {
            return;
        }
        tabulate_without_linear(field, prefix, space.deg, &mut base);
        for x2 in field.elements() {
            add_square_term(field, &base, x2, &mut vals);
            kernel.collision_free_slopes(&vals, &mut slopes);
            for &s in &slopes {
                let mut c = *prefix;
                c[2] = x2;
                c[1] = s;
                accept(&c);
            }
        }
    });
}

/// Every permutation in the normalized candidate space.
pub fn normalized_permutations(field: &FieldCtx, deg: usize, mode: Mode) -> Result<Vec<Coeffs>> {
    check_bounds(deg as u32, field.t())?;
    let mut pps = search(field, deg, &ClassifyOptions::mode(mode))?.pps;
    pps.sort_by_key(|c| pack_coeffs(c, deg));
    Ok(pps)
}

/// Groups permutations into equivalence classes, ordered by canonical form.
fn group_classes(field: &FieldCtx, deg: usize, mut pps: Vec<Coeffs>) -> Result<Vec<ClassEntry>> {
    pps.sort_by_key(|c| pack_coeffs(c, deg));
    let mut class_of: HashMap<u128, usize> = HashMap::new();
    // (canonical key, least witness key, members)
    let mut classes: Vec<(u128, u128, u64)> = Vec::new();
    for c in &pps {
        let key = pack_coeffs(c, deg);
        if let Some(&i) = class_of.get(&key) {
            classes[i].2 += 1;
            continue;
        }
        let f = FieldPoly::new(field, c[..=deg].to_vec());
        let idx = classes.len();
        let mut least = u128::MAX;
        for_each_image(&f, |img| {
            let k = pack_slice(img);
            least = least.min(k);
            class_of.insert(k, idx);
        })?;
        // pps are sorted, so the first member seen is the least
        classes.push((least, key, 1));
    }
    classes.sort_by_key(|c| c.0);
    Ok(classes
        .into_iter()
        .map(|(canon, witness, members)| ClassEntry {
            canonical: from_key(field, &unpack(canon, deg)).to_string(),
            witness: from_key(field, &unpack(witness, deg)).to_string(),
            members,
        })
        .collect())
}
