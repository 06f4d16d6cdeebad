//! Exact truth-value semantics.
//!
//! Truth values are rank-encoded: `Rank(n)` is `1 - 1/(n+1)` and `Top` is `1`,
//! so no floating point is ever involved. `V_k` admits `Rank(0..=k-2)` and `Top`.

mod compiled;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{free_vars, max_exponent, Formula};
use crate::Limits;

pub use compiled::Program;

/// An element of `V↑` (and of every `V_k` that admits it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    /// `1 - 1/(n+1)`.
    Rank(u32),
    /// `1`.
    Top,
}

impl TruthValue {
    pub const ZERO: TruthValue = TruthValue::Rank(0);

    pub fn is_top(self) -> bool {
        self == TruthValue::Top
    }

    /// The value as an exact fraction `(numerator, denominator)`.
    pub fn as_fraction(self) -> (u64, u64) {
        match self {
            TruthValue::Rank(n) => (n as u64, n as u64 + 1),
            TruthValue::Top => (1, 1),
        }
    }

    pub fn to_f64(self) -> f64 {
        let (n, d) = self.as_fraction();
        n as f64 / d as f64
    }

    /// Gödel implication.
    pub fn implies(self, other: TruthValue) -> TruthValue {
        if self <= other {
            TruthValue::Top
        } else {
            other
        }
    }
}

impl fmt::Display for TruthValue {
    /// `"0"`, `"1/2"`, `"2/3"`, ..., `"1"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TruthValue::Rank(0) => f.write_str("0"),
            TruthValue::Rank(n) => write!(f, "{}/{}", n, n + 1),
            TruthValue::Top => f.write_str("1"),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TruthValue::Rank(n) => s.serialize_u32(*n),
            TruthValue::Top => s.serialize_str("top"),
        }
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Rank(u32),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Rank(n) => Ok(TruthValue::Rank(n)),
            Raw::Word(w) if w == "top" => Ok(TruthValue::Top),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a rank or \"top\", got {w:?}"
            ))),
        }
    }
}

/// Evaluation space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// `{1 - 1/n : n >= 1} ∪ {1}`.
    VUp,
    /// The `k`-element set, `k >= 2`.
    VFin(u32),
}

impl Space {
    pub fn fin(k: u32) -> Result<Space> {
        if k < 2 {
            return Err(Error::Precondition(format!("V_k needs k >= 2, got {k}")));
        }
        Ok(Space::VFin(k))
    }

    pub fn admits(self, v: TruthValue) -> bool {
        match (self, v) {
            (_, TruthValue::Top) | (Space::VUp, _) => true,
            (Space::VFin(k), TruthValue::Rank(n)) => n + 2 <= k,
        }
    }

    pub(crate) fn check(self, v: TruthValue) -> Result<()> {
        if self.admits(v) {
            Ok(())
        } else {
            Err(Error::Inadmissible {
                value: v.to_string(),
                space: self.to_string(),
            })
        }
    }

    /// All values of a finite space in increasing order. `VUp` yields nothing.
    pub fn values(self) -> Vec<TruthValue> {
        match self {
            Space::VUp => Vec::new(),
            Space::VFin(k) => (0..k - 1)
                .map(TruthValue::Rank)
                .chain(std::iter::once(TruthValue::Top))
                .collect(),
        }
    }

    /// Successor used by `o`, without admissibility checks.
    pub(crate) fn succ(self, v: TruthValue) -> TruthValue {
        match (self, v) {
            (_, TruthValue::Top) => TruthValue::Top,
            (Space::VUp, TruthValue::Rank(n)) => TruthValue::Rank(n + 1),
            (Space::VFin(k), TruthValue::Rank(n)) => {
                if n + 1 + 2 <= k {
                    TruthValue::Rank(n + 1)
                } else {
                    TruthValue::Top
                }
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::VUp => f.write_str("vup"),
            Space::VFin(k) => write!(f, "vk:{k}"),
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;

    /// `"vup"` or `"vk:K"`.
    fn from_str(s: &str) -> Result<Space> {
        let bad = || Error::Precondition(format!("bad space `{s}` (expected `vup` or `vk:K`)"));
        if s.eq_ignore_ascii_case("vup") {
            return Ok(Space::VUp);
        }
        let k = s.strip_prefix("vk:").ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?;
        Space::fin(k)
    }
}

/// Value of `o` applied to a formula of value `v`.
pub fn circ_step(v: TruthValue, s: Space) -> Result<TruthValue> {
    s.check(v)?;
    Ok(s.succ(v))
}

/// Partial assignment of truth values to variable names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(pub BTreeMap<String, TruthValue>);

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn with(mut self, p: impl Into<String>, v: TruthValue) -> Self {
        self.0.insert(p.into(), v);
        self
    }

    pub fn get(&self, p: &str) -> Option<TruthValue> {
        self.0.get(p).copied()
    }

    pub fn set(&mut self, p: impl Into<String>, v: TruthValue) {
        self.0.insert(p.into(), v);
    }

    fn check(&self, s: Space) -> Result<()> {
        self.0.values().try_for_each(|v| s.check(*v))
    }
}

impl FromIterator<(String, TruthValue)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, TruthValue)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

/// Evaluates a quantifier-free formula.
pub fn eval(a: &Formula, v: &Valuation, s: Space) -> Result<TruthValue> {
    if !a.is_quantifier_free() {
        return Err(Error::NotQuantifierFree(a.to_string()));
    }
    v.check(s)?;
    let prog = Program::compile(a);
    prog.eval(&prog.slots_from(v)?, s)
}

/// Evaluates any formula over a finite space; quantifiers range over all of `V_k`.
pub fn eval_quantified(a: &Formula, v: &Valuation, s: Space) -> Result<TruthValue> {
    if s == Space::VUp && !a.is_quantifier_free() {
        return Err(Error::Precondition(
            "quantifiers over V↑ are evaluated through elimination, not enumeration".into(),
        ));
    }
    v.check(s)?;
    let prog = Program::compile(a);
    prog.eval(&prog.slots_from(v)?, s)
}

/// Number of valuations `values^vars`, or a resource error when above `cap`.
pub(crate) fn valuation_count(values: u64, vars: usize, cap: u64, what: &str) -> Result<u64> {
    let mut n: u64 = 1;
    for _ in 0..vars {
        n = n.saturating_mul(values);
    }
    if n > cap {
        return Err(Error::limit(what, n, cap));
    }
    Ok(n)
}

/// Decodes a mixed-radix index into slot values.
pub(crate) fn decode(mut idx: u64, domain: &[TruthValue], out: &mut [TruthValue]) {
    let d = domain.len() as u64;
    for slot in out.iter_mut() {
        *slot = domain[(idx % d) as usize];
        idx /= d;
    }
}

/// First valuation over `V_k` under which `a` is not `1`, if any.
pub fn find_counter_fin(a: &Formula, k: u32, limits: &Limits) -> Result<Option<Valuation>> {
    let s = Space::fin(k)?;
    let prog = Program::compile(a);
    let domain = s.values();
    search_counter(&prog, &domain, s, limits, &format!("valuations over V_{k}"))
}

fn search_counter(
    prog: &Program,
    domain: &[TruthValue],
    s: Space,
    limits: &Limits,
    what: &str,
) -> Result<Option<Valuation>> {
    let n = prog.free_count();
    let total = valuation_count(domain.len() as u64, n, limits.max_valuations, what)?;
    let failing = (0..total).into_par_iter().find_first(|&idx| {
        let mut slots = vec![TruthValue::ZERO; n];
        decode(idx, domain, &mut slots);
        !matches!(prog.eval(&slots, s), Ok(TruthValue::Top))
    });
    Ok(failing.map(|idx| {
        let mut slots = vec![TruthValue::ZERO; n];
        decode(idx, domain, &mut slots);
        prog.free_names().iter().cloned().zip(slots).collect()
    }))
}

/// Is `a` a tautology over `V_k`? Exhaustive over the free variables.
pub fn is_tautology_fin(a: &Formula, k: u32, limits: &Limits) -> Result<bool> {
    Ok(find_counter_fin(a, k, limits)?.is_none())
}

/// Default rank bound `n * (m + 2)` for the bounded `V↑` check.
pub fn default_rank_bound(a: &Formula) -> u32 {
    let n = free_vars(a).len() as u32;
    n * (max_exponent(a) + 2)
}

/// First valuation with ranks `<= bound` (or `1`) under which the
/// quantifier-free `a` is not `1` over `V↑`.
pub fn find_counter_qfree_up(a: &Formula, bound: Option<u32>, limits: &Limits) -> Result<Option<Valuation>> {
    if !a.is_quantifier_free() {
        return Err(Error::NotQuantifierFree(a.to_string()));
    }
    let bound = bound.unwrap_or_else(|| default_rank_bound(a));
    let domain: Vec<TruthValue> = (0..=bound)
        .map(TruthValue::Rank)
        .chain(std::iter::once(TruthValue::Top))
        .collect();
    let prog = Program::compile(a);
    search_counter(&prog, &domain, Space::VUp, limits, "bounded-rank valuations over V↑")
}

/// Is the quantifier-free `a` a tautology over `V↑`? Checked on ranks up to
/// `bound` (default `n * (m + 2)`).
pub fn is_tautology_qfree_up(a: &Formula, bound: Option<u32>, limits: &Limits) -> Result<bool> {
    Ok(find_counter_qfree_up(a, bound, limits)?.is_none())
}

/// Do `a` and `b` take equal values under every valuation of their free
/// variables over `V_k`? Returns the first disagreeing valuation.
pub fn find_disagreement_fin(a: &Formula, b: &Formula, k: u32, limits: &Limits) -> Result<Option<Valuation>> {
    let s = Space::fin(k)?;
    let mut names: BTreeSet<String> = free_vars(a);
    names.extend(free_vars(b));
    let names: Vec<String> = names.into_iter().collect();
    let pa = Program::compile_with_free(a, &names);
    let pb = Program::compile_with_free(b, &names);
    let domain = s.values();
    let total = valuation_count(domain.len() as u64, names.len(), limits.max_valuations, "valuations")?;
    let bad = (0..total).into_par_iter().find_first(|&idx| {
        let mut slots = vec![TruthValue::ZERO; names.len()];
        decode(idx, &domain, &mut slots);
        pa.eval(&slots, s).ok() != pb.eval(&slots, s).ok()
    });
    Ok(bad.map(|idx| {
        let mut slots = vec![TruthValue::ZERO; names.len()];
        decode(idx, &domain, &mut slots);
        names.iter().cloned().zip(slots).collect()
    }))
}

/// Semantic equality over `V_k` (exhaustive).
pub fn equivalent_fin(a: &Formula, b: &Formula, k: u32, limits: &Limits) -> Result<bool> {
    Ok(find_disagreement_fin(a, b, k, limits)?.is_none())
}
