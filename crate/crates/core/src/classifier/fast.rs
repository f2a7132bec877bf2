//! Pruned search: the extracted top coefficients of `f^(m+u)` must vanish
//! for a permutation, so one of them is solved for a single coefficient and
//! the others are checked on the survivors.

use crate::digitcomb::WrapParams;
use crate::error::Result;
use crate::gf2t::{FieldCtx, GfElem};
use crate::symbolic::{hermite_symbolic, Compiled, SymPoly, Var, MAX_VARS};

use super::space::{CandidateSpace, Coeffs};

/// Offsets `u` whose coefficients are used once `m` is past the bound where
/// the extracted forms hold.
pub fn lemma_offsets(deg: u32, r: u64, m: u64) -> Option<&'static [u64]> {
    match (deg, r) {
        (6, 4) if m >= 42 => Some(&[5, 13]),
        (6, 2) if m >= 85 => Some(&[2, 6, 40]),
        (7, 1) => Some(&[0]),
        (7, 2) if m >= 146 => Some(&[1, 3, 11, 13, 19]),
        (7, 4) if m >= 36 => Some(&[1, 3, 9, 15, 19]),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Filter {
    pub u: u64,
    pub poly: SymPoly,
    pub compiled: Compiled,
}

/// How one value of the `x^5` coefficient is searched.
#[derive(Clone, Debug)]
pub struct BranchPlan {
    pub top: GfElem,
    pub filters: Vec<Filter>,
    /// Some filter is a nonzero constant.
    pub rejects_all: bool,
    /// `(filter index, variable)` solved for; `None` when nothing prunes.
    pub solve: Option<(usize, Var)>,
    /// Enumerated variables with their domains, partition variable first.
    pub outer: Vec<(Var, Vec<GfElem>)>,
}

fn var(i: usize) -> Var {
    Var::new(i).expect("index below MAX_VARS")
}

/// Coefficient slot (`x^k`) of variable `A_i`.
pub fn slot_of(deg: usize, v: Var) -> usize {
    deg - v.index()
}

pub fn plan_branches(space: &CandidateSpace, wrap: &WrapParams) -> Result<Option<Vec<BranchPlan>>> {
    let Some(offsets) = lemma_offsets(wrap.deg, wrap.r, wrap.m) else { return Ok(None) };
    let field = space.field;
    let deg = space.deg;
    let q = field.q() as u64;
    let mut plans = Vec::new();
    for (top, second) in space.branches() {
        let pins: Vec<(Var, bool)> = if deg == 6 {
            vec![(var(1), top == GfElem::ONE)]
        } else {
            vec![(var(1), false), (var(2), top == GfElem::ONE)]
        };
        let mut filters = Vec::new();
        let mut rejects_all = false;
        for &u in offsets {
            let n = wrap.m + u;
            if n == 0 || n > q - 2 || n.is_multiple_of(2) {
                continue;
            }
            let poly = hermite_symbolic(wrap.deg, wrap.r, wrap.m, u, &pins)?;
            if poly.is_zero() {
                continue;
            }
            if poly.vars().is_empty() {
                rejects_all = true;
            }
            let compiled = poly.compile();
            filters.push(Filter { u, poly, compiled });
        }
        // degree 6: x^4 is free only on the x^5 = 0 branch
        let first_free = if deg == 6 && top == GfElem::ONE { 3 } else { deg - 4 };
        let free: Vec<Var> = (first_free..deg).map(var).collect();
        let mut solve: Option<(usize, Var, (u64, usize))> = None;
        for (i, f) in filters.iter().enumerate() {
            for &v in &free {
                let d = f.compiled.degree_in(v);
                if d == 0 {
                    continue;
                }
                let score = (d, f.compiled.num_terms());
                if solve.as_ref().is_none_or(|s| score < s.2) {
                    solve = Some((i, v, score));
                }
            }
        }
        let solve = solve.map(|(i, v, _)| (i, v));
        let mut outer: Vec<(Var, Vec<GfElem>)> = Vec::new();
        for i in (deg - 4).max(2)..deg {
            let v = var(i);
            if Some(v) == solve.map(|s| s.1) {
                continue;
            }
            let domain = match (deg, i, &second) {
                (6, 2, Some(list)) => list.clone(),
                _ => field.elements().collect(),
            };
            outer.push((v, domain));
        }
        // partition on the x^3 coefficient when it is enumerated
        if let Some(pos) = outer.iter().position(|(v, _)| slot_of(deg, *v) == 3) {
            outer.swap(0, pos);
        }
        plans.push(BranchPlan { top, filters, rejects_all, solve, outer });
    }
    Ok(Some(plans))
}

/// All roots in the field of `sum_k coeffs[k] y^k`.
pub fn univariate_roots(field: &FieldCtx, coeffs: &[GfElem], out: &mut Vec<GfElem>) {
    out.clear();
    let deg = coeffs.iter().rposition(|c| !c.is_zero());
    match deg {
        None => out.extend(field.elements()),
        Some(0) => {}
        Some(1) => out.push(field.div(coeffs[0], coeffs[1]).expect("leading term nonzero")),
        Some(2) => {
            let (k0, k1, k2) = (coeffs[0], coeffs[1], coeffs[2]);
            if k1.is_zero() {
                out.push(field.sqrt(field.div(k0, k2).expect("nonzero")));
            } else {
                // y = (k1/k2) z turns it into z^2 + z = k0 k2 / k1^2
                let scale = field.div(k1, k2).expect("nonzero");
                let rhs = field.div(field.mul(k0, k2), field.sqr(k1)).expect("nonzero");
                if let Some(z) = field.solve_artin_schreier(rhs) {
                    out.push(field.mul(scale, z));
                    out.push(field.mul(scale, z + GfElem::ONE));
                }
            }
        }
        Some(_) => out.extend(field.elements().filter(|&y| {
            coeffs.iter().rev().fold(GfElem::ZERO, |acc, &k| field.mul(acc, y) + k).is_zero()
        })),
    }
}

/// Runs one branch with the partition variable fixed to `part`, calling
/// `found` for each candidate that passes every filter.
pub fn search_branch(
    field: &FieldCtx,
    deg: usize,
    plan: &BranchPlan,
    part: GfElem,
    mut found: impl FnMut(&Coeffs),
) {
    let Some((primary, solve_var)) = plan.solve else { return };
    if plan.rejects_all {
        return;
    }
    let mut values = [GfElem::ZERO; MAX_VARS];
    values[0] = plan.top;
    if deg == 7 {
        values[0] = GfElem::ZERO;
        values[1] = plan.top;
    }
    let (head, rest) = plan.outer.split_first().expect("at least one enumerated variable");
    if !head.1.contains(&part) {
        return;
    }
    values[head.0.index() - 1] = part;
    let mut idx = vec![0usize; rest.len()];
    let mut roots = Vec::new();
    'outer: loop {
        for (k, (v, dom)) in rest.iter().enumerate() {
            values[v.index() - 1] = dom[idx[k]];
        }
        let uni = plan.filters[primary].compiled.univariate(field, solve_var, &values);
        univariate_roots(field, &uni, &mut roots);
        for &y in &roots {
            values[solve_var.index() - 1] = y;
            let ok = plan
                .filters
                .iter()
                .enumerate()
                .all(|(i, f)| i == primary || f.compiled.eval(field, &values).is_zero());
            if ok {
                let mut c: Coeffs = [GfElem::ZERO; 8];
                c[deg] = GfElem::ONE;
                for i in 1..deg {
                    c[deg - i] = values[i - 1];
                }
                found(&c);
            }
        }
        // odometer over the remaining domains
        for k in (0..rest.len()).rev() {
            idx[k] += 1;
            if idx[k] < rest[k].1.len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitcomb::wrap_params;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roots_of_small_univariates() {
        let field = FieldCtx::new(5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut out = Vec::new();
        for _ in 0..500 {
            let len = rng.gen_range(1..=4);
            let coeffs: Vec<GfElem> = (0..len)
                .map(|_| if rng.gen_bool(0.2) { GfElem::ZERO } else { GfElem(rng.gen_range(0..32)) })
                .collect();
            univariate_roots(&field, &coeffs, &mut out);
            out.sort();
            let want: Vec<GfElem> = field
                .elements()
                .filter(|&y| coeffs.iter().rev().fold(GfElem::ZERO, |a, &k| field.mul(a, y) + k).is_zero())
                .collect();
            assert_eq!(out, want, "{coeffs:?}");
        }
    }

    #[test]
    fn gates_follow_the_bounds() {
        assert!(lemma_offsets(6, 2, 21).is_none());
        assert!(lemma_offsets(6, 2, 85).is_some());
        assert!(lemma_offsets(6, 4, 10).is_none());
        assert_eq!(lemma_offsets(7, 1, 9), Some(&[0u64][..]));
        let field = FieldCtx::new(6, None).unwrap();
        let plans = plan_branches(&CandidateSpace::new(&field, 7), &wrap_params(7, 6).unwrap())
            .unwrap()
            .unwrap();
        assert!(plans.iter().all(|p| p.rejects_all));
        let field = FieldCtx::new(7, None).unwrap();
        assert!(plan_branches(&CandidateSpace::new(&field, 6), &wrap_params(6, 7).unwrap())
            .unwrap()
            .is_none());
    }
}
