//! `o`-normal form, `o`-chains over a finite term set, and the chain and
//! minimal normal forms built from them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::syntax::{free_vars, max_exponent, Base, CircTerm, Formula};
use crate::Limits;

mod normal;

pub use normal::{
    chain_normal_form, chain_normal_form_terms, circ_normal_form, is_circ_normal, minimal_chains,
    find_violation, minimal_normal_form, minimize, satisfies_minimality, value_under_chain, Violation,
};

/// A finite set of `o`-terms containing `0` and `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GammaSet(BTreeSet<CircTerm>);

impl GammaSet {
    /// Adds `0` and `1` if missing.
    pub fn new(terms: impl IntoIterator<Item = CircTerm>) -> GammaSet {
        let mut set: BTreeSet<CircTerm> = terms.into_iter().collect();
        set.insert(CircTerm::bottom(0));
        set.insert(CircTerm::top());
        GammaSet(set)
    }

    /// Every `o^j p`, `o^k 0` occurring in `a`, plus `0` and `1`.
    pub fn of(a: &Formula) -> GammaSet {
        fn go(a: &Formula, out: &mut BTreeSet<CircTerm>) {
            if let Some(t) = a.as_circ_term() {
                out.insert(t);
                return;
            }
            match a {
                Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
                    go(x, out);
                    go(y, out);
                }
                Formula::Circ(x) | Formula::Forall(_, x) | Formula::Exists(_, x) => go(x, out),
                _ => {}
            }
        }
        let mut set = BTreeSet::new();
        go(a, &mut set);
        GammaSet::new(set)
    }

    /// The full ladder `{o^i S : S a variable of a or 0, i <= m} ∪ {1}` with
    /// `m` the largest exponent in `a`.
    pub fn ladder(a: &Formula) -> GammaSet {
        let vars: Vec<Base> = free_vars(a).into_iter().map(Base::Var).collect();
        GammaSet::ladder_over(vars, max_exponent(a))
    }

    /// `{o^i S : S in bases ∪ {0}, i <= m} ∪ {1}`.
    pub fn ladder_over(bases: impl IntoIterator<Item = Base>, m: u32) -> GammaSet {
        let mut all: BTreeSet<Base> = bases.into_iter().collect();
        all.insert(Base::Bottom);
        all.remove(&Base::Top);
        GammaSet::new(all.into_iter().flat_map(|b| (0..=m).map(move |i| CircTerm::new(b.clone(), i))))
    }

    pub fn terms(&self) -> &BTreeSet<CircTerm> {
        &self.0
    }

    pub fn contains(&self, t: &CircTerm) -> bool {
        self.0.contains(t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, t: CircTerm) {
        self.0.insert(t);
    }

    /// Number of chains over this set, or `None` on overflow.
    pub fn chain_count(&self) -> Option<u128> {
        // by[c] = chains with c classes; each inner term joins one of the c
        // classes or opens a new one in one of the c - 1 inner gaps
        let inner = self.len().saturating_sub(2);
        let mut by: Vec<u128> = vec![0, 1, 1];
        for _ in 0..inner {
            let mut next = vec![0u128; by.len() + 1];
            for (c, &n) in by.iter().enumerate().skip(1) {
                next[c] = next[c].checked_add(n.checked_mul(c as u128)?)?;
                next[c + 1] = next[c + 1].checked_add(n.checked_mul(c as u128 - 1)?)?;
            }
            by = next;
        }
        by.iter().try_fold(0u128, |acc, &n| acc.checked_add(n))
    }
}

impl FromIterator<CircTerm> for GammaSet {
    fn from_iter<I: IntoIterator<Item = CircTerm>>(iter: I) -> Self {
        GammaSet::new(iter)
    }
}

/// An ordered partition of a term set: members of a class are equal, each
/// class lies strictly below the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    classes: Vec<Vec<CircTerm>>,
}

impl Chain {
    /// Validates the anchors and disjointness, and canonicalises class order.
    pub fn new(classes: Vec<Vec<CircTerm>>) -> Result<Chain> {
        let mut seen = BTreeSet::new();
        let mut classes = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::Precondition("chain classes must be nonempty".into()));
            }
            class.sort();
            for t in class.iter() {
                if !seen.insert(t.clone()) {
                    return Err(Error::Precondition(format!("term `{t}` occurs twice in a chain")));
                }
            }
        }
        let bottom = CircTerm::bottom(0);
        if !classes.first().is_some_and(|c| c.contains(&bottom)) {
            return Err(Error::Precondition("`0` must be in the first class".into()));
        }
        if !classes.last().is_some_and(|c| c.contains(&CircTerm::top())) {
            return Err(Error::Precondition("`1` must be in the last class".into()));
        }
        Ok(Chain { classes })
    }

    pub fn classes(&self) -> &[Vec<CircTerm>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn gamma(&self) -> GammaSet {
        GammaSet::new(self.classes.iter().flatten().cloned())
    }

    /// Index of the class holding `t`.
    pub fn class_of(&self, t: &CircTerm) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(t))
    }

    fn rank(&self, t: &CircTerm) -> Result<usize> {
        self.class_of(t)
            .ok_or_else(|| Error::MissingTerm(t.to_string()))
    }

    /// `a <_C b`.
    pub fn less(&self, a: &CircTerm, b: &CircTerm) -> Result<bool> {
        Ok(self.rank(a)? < self.rank(b)?)
    }

    /// Does the chain put `0` and `1` in one class? Such chains evaluate to `0`
    /// everywhere.
    pub fn is_vacuous(&self) -> bool {
        self.classes.len() == 1
    }

    /// Collapses classes `from..` into one top class.
    pub fn merge_from(&self, from: usize) -> Chain {
        let mut classes: Vec<Vec<CircTerm>> = self.classes[..from].to_vec();
        let mut top: Vec<CircTerm> = self.classes[from..].iter().flatten().cloned().collect();
        top.sort();
        classes.push(top);
        Chain { classes }
    }

    /// `(S1 * S2) & ... & (Sn-1 * Sn)` with `*` the biconditional inside a
    /// class and `-<` across a class boundary.
    pub fn to_formula(&self) -> Formula {
        let mut parts = Vec::new();
        let mut prev: Option<&CircTerm> = None;
        for class in &self.classes {
            for (i, t) in class.iter().enumerate() {
                if let Some(p) = prev {
                    let (a, b) = (p.to_formula(), t.to_formula());
                    parts.push(if i == 0 { Formula::prec(a, b) } else { Formula::iff(a, b) });
                }
                prev = Some(t);
            }
        }
        Formula::and_chain(parts)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let names: Vec<String> = class.iter().map(|t| t.to_string()).collect();
            f.write_str(&names.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|c| c.iter().map(|t| t.to_string()).collect())
            .collect();
        text.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text: Vec<Vec<String>> = Vec::deserialize(d)?;
        let classes = text
            .iter()
            .map(|c| c.iter().map(|t| CircTerm::parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Chain::new(classes).map_err(serde::de::Error::custom)
    }
}

/// All chains over `g`, in canonical order.
pub fn enumerate_chains(g: &GammaSet, limits: &Limits) -> Result<Vec<Chain>> {
    let bottom = CircTerm::bottom(0);
    let top = CircTerm::top();
    if !g.contains(&bottom) || !g.contains(&top) {
        return Err(Error::Precondition("the term set must contain `0` and `1`".into()));
    }
    let count = g.chain_count().unwrap_or(u128::MAX);
    if count > limits.max_chains as u128 {
        return Err(Error::limit("chains", count.min(u64::MAX as u128) as u64, limits.max_chains));
    }
    let mut acc = vec![vec![vec![bottom.clone()], vec![top.clone()]], vec![vec![bottom.clone(), top.clone()]]];
    for t in g.terms().iter().filter(|t| **t != bottom && **t != top) {
        let mut next = Vec::with_capacity(acc.len() * 4);
        for classes in &acc {
            for i in 0..classes.len() {
                let mut c = classes.clone();
                c[i].push(t.clone());
                next.push(c);
            }
            for gap in 1..classes.len() {
                let mut c = classes.clone();
                c.insert(gap, vec![t.clone()]);
                next.push(c);
            }
        }
        acc = next;
    }
    let mut chains: Vec<Chain> = acc
        .into_iter()
        .map(|mut classes| {
            classes.iter_mut().for_each(|c| c.sort());
            Chain { classes }
        })
        .collect();
    chains.sort();
    Ok(chains)
}

#[cfg(test)]
mod tests;
