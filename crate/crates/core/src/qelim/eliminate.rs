use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::chains::{is_circ_normal, minimize, Chain, GammaSet};
use crate::error::{Error, Result};
use crate::semantics::{decode, valuation_count, Program, Space, TruthValue};
use crate::syntax::{exp_set, free_vars, max_exp, max_exponent, min_exp, Base, CircTerm, Formula};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Quant {
    Forall,
    Exists,
}

/// `(E p) matrix` as a quantifier-free formula in the remaining variables.
pub fn eliminate_exists(matrix: &Formula, p: &str, limits: &Limits) -> Result<Formula> {
    eliminate(matrix, p, Quant::Exists, limits)
}

/// `(A p) matrix` as a quantifier-free formula in the remaining variables.
pub fn eliminate_forall(matrix: &Formula, p: &str, limits: &Limits) -> Result<Formula> {
    eliminate(matrix, p, Quant::Forall, limits)
}

/// Checks the shape the eliminations require: quantifier-free, `o`-normal,
/// and no exponent of `p` above the smallest exponent of another variable.
pub fn check_matrix(matrix: &Formula, p: &str) -> Result<()> {
    if !matrix.is_quantifier_free() {
        return Err(Error::NotQuantifierFree(matrix.to_string()));
    }
    if !is_circ_normal(matrix) {
        return Err(Error::MalformedCirc(matrix.to_string()));
    }
    let own = exp_set(matrix, &BTreeSet::from([Base::var(p)]))?;
    let rest: BTreeSet<Base> = free_vars(matrix)
        .into_iter()
        .filter(|q| q != p)
        .map(Base::Var)
        .collect();
    if let Some(low) = min_exp(&exp_set(matrix, &rest)?) {
        if max_exp(&own) > low {
            return Err(Error::Precondition(format!(
                "exponents of `{p}` exceed those of the other variables in `{matrix}`"
            )));
        }
    }
    Ok(())
}

pub(crate) fn eliminate(matrix: &Formula, p: &str, q: Quant, limits: &Limits) -> Result<Formula> {
    check_matrix(matrix, p)?;
    let vars = free_vars(matrix);
    if !vars.contains(p) {
        return Ok(matrix.clone());
    }
    let others: Vec<String> = vars.into_iter().filter(|x| x != p).collect();
    let mut names = vec![p.to_string()];
    names.extend(others.iter().cloned());
    let prog = Program::compile_with_free(matrix, &names);
    let m = max_exponent(matrix);
    for g in candidate_sets(matrix, p, &others, m) {
        if let Some(chains) = tabulate(&prog, &others, &g, q, m, limits)? {
            return Ok(Formula::or_all(chains.iter().map(Chain::to_formula).collect()));
        }
    }
    Err(Error::Engine(format!(
        "no term set with exponents up to {} determines the value of `{p}`-quantified `{matrix}`",
        2 * m + 2
    )))
}

/// Term sets to try, smallest first: the `p`-free terms of the matrix with
/// their successors, then full ladders of growing height.
fn candidate_sets(matrix: &Formula, p: &str, others: &[String], m: u32) -> Vec<GammaSet> {
    let own = Base::var(p);
    let near: Vec<CircTerm> = GammaSet::of(matrix)
        .terms()
        .iter()
        .filter(|t| t.base != own)
        .flat_map(|t| [t.clone(), t.succ()])
        .collect();
    let mut out = vec![GammaSet::new(near)];
    for h in m + 1..=2 * m + 2 {
        let g = GammaSet::ladder_over(others.iter().cloned().map(Base::Var), h);
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

enum Miss {
    Undetermined,
    Failed(Error),
}

impl From<Error> for Miss {
    fn from(e: Error) -> Self {
        Miss::Failed(e)
    }
}

/// Value of every term of `g` under the ranks in `vals` (aligned with `others`).
fn term_value(t: &CircTerm, others: &[String], vals: &[TruthValue]) -> TruthValue {
    let base = match &t.base {
        Base::Bottom => TruthValue::ZERO,
        Base::Top => return TruthValue::Top,
        Base::Var(x) => vals[others.iter().position(|y| y == x).expect("term over a known variable")],
    };
    match base {
        TruthValue::Rank(r) => TruthValue::Rank(r + t.exponent),
        TruthValue::Top => TruthValue::Top,
    }
}

/// Is every gap between consecutive distinct ranks (with `0` included) at most `gap`?
fn compressed(vals: &[TruthValue], gap: u32) -> bool {
    let ranks: BTreeSet<u32> = vals
        .iter()
        .filter_map(|v| match v {
            TruthValue::Rank(r) => Some(*r),
            TruthValue::Top => None,
        })
        .chain([0])
        .collect();
    ranks.iter().zip(ranks.iter().skip(1)).all(|(a, b)| b - a <= gap)
}

/// Exact `sup` or `inf` of the matrix over `V↑` with the other slots fixed.
fn quantified_value(prog: &Program, vals: &[TruthValue], q: Quant, m: u32) -> Result<TruthValue> {
    let top_rank = vals
        .iter()
        .filter_map(|v| match v {
            TruthValue::Rank(r) => Some(*r),
            TruthValue::Top => None,
        })
        .max()
        .unwrap_or(0);
    // beyond `far` every p-term lies above every other term, so the matrix
    // is either constant or climbs with `p` towards 1
    let far = top_rank + m + 2;
    let mut slots = Vec::with_capacity(vals.len() + 1);
    slots.push(TruthValue::ZERO);
    slots.extend_from_slice(vals);
    let mut at = |w: TruthValue| {
        slots[0] = w;
        prog.eval(&slots, Space::VUp)
    };
    let mut acc = at(TruthValue::Top)?;
    for r in 0..=far {
        let v = at(TruthValue::Rank(r))?;
        acc = match q {
            Quant::Exists => acc.max(v),
            Quant::Forall => acc.min(v),
        };
    }
    if q == Quant::Exists && at(TruthValue::Rank(far))? != at(TruthValue::Rank(far + 1))? {
        acc = TruthValue::Top;
    }
    Ok(acc)
}

/// For each order type of the other variables on `g`, the class of `g` that
/// the quantified matrix equals. `None` when some order type admits more
/// than one answer, or an answer outside `g`.
fn tabulate(
    prog: &Program,
    others: &[String],
    g: &GammaSet,
    q: Quant,
    m: u32,
    limits: &Limits,
) -> Result<Option<Vec<Chain>>> {
    let h = g.terms().iter().map(|t| t.exponent).max().unwrap_or(0);
    let gap = h.max(m) + 3;
    let n = others.len();
    let bound = (n as u32 + 1) * gap;
    let domain: Vec<TruthValue> = (0..=bound).map(TruthValue::Rank).chain([TruthValue::Top]).collect();
    let total = valuation_count(domain.len() as u64, n, limits.max_valuations, "order types during elimination")?;
    let merge = |mut a: BTreeMap<Chain, usize>, b: BTreeMap<Chain, usize>| -> std::result::Result<_, Miss> {
        for (c, i) in b {
            match a.get(&c) {
                Some(&j) if j != i => return Err(Miss::Undetermined),
                Some(_) => {}
                None => {
                    a.insert(c, i);
                }
            }
        }
        Ok(a)
    };
    let table = (0..total)
        .into_par_iter()
        .try_fold(BTreeMap::new, |mut acc, idx| {
            let mut vals = vec![TruthValue::ZERO; n];
            decode(idx, &domain, &mut vals);
            if !compressed(&vals, gap) {
                return Ok(acc);
            }
            let mut classes: BTreeMap<TruthValue, Vec<CircTerm>> = BTreeMap::new();
            for t in g.terms() {
                classes.entry(term_value(t, others, &vals)).or_default().push(t.clone());
            }
            let value = quantified_value(prog, &vals, q, m)?;
            let Some(i) = classes.keys().position(|&v| v == value) else {
                return Err(Miss::Undetermined);
            };
            let chain = Chain::new(classes.into_values().collect())?;
            match acc.get(&chain) {
                Some(&j) if j != i => return Err(Miss::Undetermined),
                Some(_) => {}
                None => {
                    acc.insert(chain, i);
                }
            }
            Ok(acc)
        })
        .try_reduce(BTreeMap::new, merge);
    let table = match table {
        Ok(t) => t,
        Err(Miss::Undetermined) => return Ok(None),
        Err(Miss::Failed(e)) => return Err(e),
    };
    let mut out = BTreeSet::new();
    for (c, i) in table {
        let value = c.classes()[i][0].clone();
        let c = minimize(&c, Some(&value))?;
        if !c.is_vacuous() {
            out.insert(c);
        }
    }
    Ok(Some(out.into_iter().collect()))
}
