use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::syntax::{Base, CircTerm, Formula};
use crate::Limits;

use super::{enumerate_chains, Chain, GammaSet};

/// Pushes every `o` down onto atoms: `o` distributes over `&`, `|` and `->`,
/// and `o^n 1` collapses to `1`. A `1` operand is then absorbed by its parent.
pub fn circ_normal_form(a: &Formula) -> Result<Formula> {
    fn push(a: &Formula, n: u32) -> Result<Formula> {
        Ok(match a {
            Formula::Var(_) | Formula::Bottom => Formula::circ_n(a.clone(), n),
            Formula::Top => Formula::Top,
            Formula::Circ(x) => push(x, n + 1)?,
            Formula::And(x, y) => match (push(x, n)?, push(y, n)?) {
                (Formula::Top, z) | (z, Formula::Top) => z,
                (x, y) => Formula::and(x, y),
            },
            Formula::Or(x, y) => match (push(x, n)?, push(y, n)?) {
                (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
                (x, y) => Formula::or(x, y),
            },
            Formula::Implies(x, y) => match (push(x, n)?, push(y, n)?) {
                (_, Formula::Top) => Formula::Top,
                (Formula::Top, y) => y,
                (x, y) => Formula::implies(x, y),
            },
            Formula::Forall(..) | Formula::Exists(..) => {
                return Err(Error::NotQuantifierFree(a.to_string()))
            }
        })
    }
    push(a, 0)
}

/// Quantifier-free with every `o` applied to an atom or another `o`.
pub fn is_circ_normal(a: &Formula) -> bool {
    match a {
        Formula::Var(_) | Formula::Bottom | Formula::Top => true,
        Formula::Circ(_) => a.as_circ_term().is_some(),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            is_circ_normal(x) && is_circ_normal(y)
        }
        Formula::Forall(..) | Formula::Exists(..) => false,
    }
}

/// The term of `c`'s set that `a` equals on every valuation ordered by `c`.
pub fn value_under_chain(a: &Formula, c: &Chain) -> Result<CircTerm> {
    if let Some(t) = a.as_circ_term() {
        c.class_of(&t).ok_or_else(|| Error::MissingTerm(t.to_string()))?;
        return Ok(t);
    }
    match a {
        Formula::And(x, y) => {
            let (d, e) = (value_under_chain(x, c)?, value_under_chain(y, c)?);
            Ok(if c.less(&d, &e)? { d } else { e })
        }
        Formula::Or(x, y) => {
            let (d, e) = (value_under_chain(x, c)?, value_under_chain(y, c)?);
            Ok(if c.less(&e, &d)? { d } else { e })
        }
        Formula::Implies(x, y) => {
            let (d, e) = (value_under_chain(x, c)?, value_under_chain(y, c)?);
            Ok(if c.less(&e, &d)? { e } else { CircTerm::top() })
        }
        Formula::Circ(_) => Err(Error::MalformedCirc(a.to_string())),
        _ => Err(Error::NotQuantifierFree(a.to_string())),
    }
}

fn check_input(a: &Formula, g: &GammaSet) -> Result<()> {
    if !a.is_quantifier_free() {
        return Err(Error::NotQuantifierFree(a.to_string()));
    }
    if !is_circ_normal(a) {
        return Err(Error::MalformedCirc(a.to_string()));
    }
    match GammaSet::of(a).terms().iter().find(|t| !g.contains(t)) {
        Some(t) => Err(Error::MissingTerm(t.to_string())),
        None => Ok(()),
    }
}

/// Every chain over `g` paired with the value of `a` under it.
pub fn chain_normal_form_terms(a: &Formula, g: &GammaSet, limits: &Limits) -> Result<Vec<(Chain, CircTerm)>> {
    check_input(a, g)?;
    enumerate_chains(g, limits)?
        .into_par_iter()
        .map(|c| {
            let v = value_under_chain(a, &c)?;
            Ok((c, v))
        })
        .collect()
}

/// `⋁ C & A^C` over all chains `C` over `g`.
pub fn chain_normal_form(a: &Formula, g: &GammaSet, limits: &Limits) -> Result<Formula> {
    let terms = chain_normal_form_terms(a, g, limits)?;
    Ok(Formula::or_all(
        terms
            .into_iter()
            .map(|(c, v)| Formula::and(c.to_formula(), v.to_formula()))
            .collect(),
    ))
}

/// A breach of one of the three coherence conditions on a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `o^high S` lies strictly below `o^low S` with `low < high`.
    Inverted { base: Base, high: u32, low: u32 },
    /// Two exponents of `S` share a class other than the last.
    Shared { base: Base, low: u32, high: u32 },
    /// `o^i S` and `o^(i+1) S` are more than one class apart.
    Gap { base: Base, exponent: u32 },
}

/// The first violation in condition order, with the class to merge from.
fn first_violation(c: &Chain) -> Option<(Violation, usize)> {
    let mut ladders: BTreeMap<&Base, BTreeMap<u32, usize>> = BTreeMap::new();
    for (i, class) in c.classes().iter().enumerate() {
        for t in class.iter().filter(|t| !t.is_top()) {
            ladders.entry(&t.base).or_default().insert(t.exponent, i);
        }
    }
    for (base, ladder) in &ladders {
        for (&low, &cl) in ladder {
            for (&high, &ch) in ladder.range(low + 1..) {
                if ch < cl {
                    return Some((Violation::Inverted { base: (*base).clone(), high, low }, ch));
                }
            }
        }
    }
    let last = c.len() - 1;
    for (base, ladder) in &ladders {
        for (&low, &cl) in ladder {
            if let Some((&high, _)) = ladder.range(low + 1..).find(|(_, &ch)| ch == cl && cl < last) {
                return Some((Violation::Shared { base: (*base).clone(), low, high }, cl));
            }
        }
    }
    for (base, ladder) in &ladders {
        for (&e, &ce) in ladder {
            if let Some(&cn) = ladder.get(&(e + 1)) {
                if cn > ce + 1 {
                    return Some((Violation::Gap { base: (*base).clone(), exponent: e }, ce));
                }
            }
        }
    }
    None
}

/// The coherence violations of `c`, first one only; `None` means minimal.
pub fn find_violation(c: &Chain) -> Option<Violation> {
    first_violation(c).map(|(v, _)| v)
}

pub fn satisfies_minimality(c: &Chain) -> bool {
    first_violation(c).is_none()
}

/// Absorbs the value term into the top class, then merges classes upward
/// until the three coherence conditions hold.
pub fn minimize(c: &Chain, value: Option<&CircTerm>) -> Result<Chain> {
    let mut c = c.clone();
    if let Some(v) = value {
        let i = c.class_of(v).ok_or_else(|| Error::MissingTerm(v.to_string()))?;
        if i + 1 < c.len() {
            c = c.merge_from(i);
        }
    }
    while let Some((_, from)) = first_violation(&c) {
        c = c.merge_from(from);
    }
    Ok(c)
}

/// The distinct minimal chains whose disjunction is equivalent to `a`.
pub fn minimal_chains(a: &Formula, g: &GammaSet, limits: &Limits) -> Result<Vec<Chain>> {
    let terms = chain_normal_form_terms(a, g, limits)?;
    let chains = terms
        .par_iter()
        .map(|(c, v)| minimize(c, Some(v)))
        .collect::<Result<Vec<Chain>>>()?;
    Ok(chains.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
}

pub fn minimal_normal_form(a: &Formula, g: &GammaSet, limits: &Limits) -> Result<Formula> {
    let chains = minimal_chains(a, g, limits)?;
    Ok(Formula::or_all(chains.iter().map(Chain::to_formula).collect()))
}
