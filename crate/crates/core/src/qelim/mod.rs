//! Quantifier elimination, ground classification and the decision procedure,
//! with a trace of every rewrite.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chains::{circ_normal_form, is_circ_normal, value_under_chain, Chain};
use crate::error::{Error, Result};
use crate::semantics::{eval, Space, TruthValue, Valuation};
use crate::syntax::{
    exp_set, free_vars, max_bottom_exponent, max_exp, max_exponent, min_exp, qd, rectify, substitute, Base,
    CircTerm, Formula,
};
use crate::Limits;

mod eliminate;
mod verify;

pub use eliminate::{check_matrix, eliminate_exists, eliminate_forall};
pub use verify::{verify_trace, StepCheck, TraceReport};

use eliminate::{eliminate, Quant};

/// Outcome of deciding a closed formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "k")]
pub enum Verdict {
    /// Equivalent to `1`.
    Valid,
    /// Equivalent to `o^k 0`.
    EquivCirc(u32),
}

impl Verdict {
    /// The value the formula takes, in `V↑` or any `V_j` with `j > k + 1`.
    pub fn value(self) -> TruthValue {
        match self {
            Verdict::Valid => TruthValue::Top,
            Verdict::EquivCirc(k) => TruthValue::Rank(k),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("VALID"),
            Verdict::EquivCirc(k) => write!(f, "EQUIV o^{k} 0"),
        }
    }
}

/// The result licensing a rewrite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justification {
    /// Renaming bound variables apart.
    Rectify,
    /// Pushing `o` onto atoms.
    Prop9,
    /// Unfolding a quantifier over `0, o 0, ...` so inner exponents stay lowest.
    Lemma19,
    /// Eliminating an innermost existential.
    Lemma20,
    /// Eliminating an innermost universal.
    Lemma21,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

mod as_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::syntax::Formula;

    pub fn serialize<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// One rewrite: `before` and `after` are whole formulas that differ only at `locus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(with = "as_text")]
    pub before: Formula,
    #[serde(with = "as_text")]
    pub after: Formula,
    pub justification: Justification,
    /// Child indices from the root: `0` is the left (or only) operand, `1` the right.
    pub locus: Vec<usize>,
}

impl TraceStep {
    /// The rewritten subformula before and after, if the locus exists in both.
    pub fn redexes(&self) -> Option<(&Formula, &Formula)> {
        Some((self.before.at(&self.locus)?, self.after.at(&self.locus)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    #[serde(with = "as_text")]
    pub initial: Formula,
    #[serde(rename = "final", with = "as_text")]
    pub final_formula: Formula,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn new(initial: Formula) -> Trace {
        Trace {
            final_formula: initial.clone(),
            initial,
            steps: Vec::new(),
        }
    }

    /// Replaces the subformula at `locus` of the current formula.
    fn rewrite(&mut self, locus: Vec<usize>, with: Formula, justification: Justification) {
        let before = self.final_formula.clone();
        let after = before.replace_at(&locus, with).expect("locus taken from the current formula");
        if after == before {
            return;
        }
        self.final_formula = after.clone();
        self.steps.push(TraceStep {
            before,
            after,
            justification,
            locus,
        });
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Does each step start where the previous one ended?
    pub fn is_connected(&self) -> bool {
        let mut cur = &self.initial;
        for s in &self.steps {
            if &s.before != cur {
                return false;
            }
            cur = &s.after;
        }
        cur == &self.final_formula
    }
}

/// `(A p) A(p)` to `A(0) & (A p) A(o p)`, and dually `|` for `E`.
pub fn expand_base(q: &Formula) -> Result<Formula> {
    match q {
        Formula::Forall(p, body) => Ok(Formula::and(
            substitute(body, p, &Formula::Bottom),
            Formula::forall(p.clone(), substitute(body, p, &Formula::circ(Formula::var(p.clone())))),
        )),
        Formula::Exists(p, body) => Ok(Formula::or(
            substitute(body, p, &Formula::Bottom),
            Formula::exists(p.clone(), substitute(body, p, &Formula::circ(Formula::var(p.clone())))),
        )),
        _ => Err(Error::Precondition(format!("`{q}` is not quantified at the root"))),
    }
}

fn quantifier_parts(f: &Formula) -> Option<(&String, &Formula)> {
    match f {
        Formula::Forall(p, b) | Formula::Exists(p, b) => Some((p, b)),
        _ => None,
    }
}

fn children(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => vec![x, y],
        Formula::Circ(x) | Formula::Forall(_, x) | Formula::Exists(_, x) => vec![x],
        _ => vec![],
    }
}

/// Paths of quantifiers whose scope holds no other quantifier, leftmost first.
pub fn innermost_quantifiers(a: &Formula) -> Vec<Vec<usize>> {
    fn go(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if let Some((_, body)) = quantifier_parts(f) {
            if body.is_quantifier_free() {
                out.push(path.clone());
                return;
            }
        }
        for (i, c) in children(f).into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(a, &mut Vec::new(), &mut out);
    out
}

/// Paths of maximal quantifier-free subformulas not in `o`-normal form.
fn unnormalized(a: &Formula) -> Vec<Vec<usize>> {
    fn go(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if f.is_quantifier_free() {
            if !is_circ_normal(f) {
                out.push(path.clone());
            }
            return;
        }
        for (i, c) in children(f).into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(a, &mut Vec::new(), &mut out);
    out
}

/// Outermost `o` nodes whose operand contains a quantifier.
fn circ_over_quantifiers(a: &Formula) -> Vec<Vec<usize>> {
    fn go(f: &Formula, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if f.is_quantifier_free() {
            return;
        }
        if matches!(f, Formula::Circ(_)) {
            out.push(path.clone());
            return;
        }
        for (i, c) in children(f).into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(a, &mut Vec::new(), &mut out);
    out
}

/// `o^n a` with the `o`s moved inside connectives and quantifiers until they
/// reach quantifier-free operands.
fn push_circ(a: &Formula, n: u32) -> Formula {
    if a.is_quantifier_free() {
        return Formula::circ_n(a.clone(), n);
    }
    match a {
        Formula::Circ(x) => push_circ(x, n + 1),
        Formula::And(x, y) => Formula::and(push_circ(x, n), push_circ(y, n)),
        Formula::Or(x, y) => Formula::or(push_circ(x, n), push_circ(y, n)),
        Formula::Implies(x, y) => Formula::implies(push_circ(x, n), push_circ(y, n)),
        Formula::Forall(p, x) => Formula::forall(p.clone(), push_circ(x, n)),
        Formula::Exists(p, x) => Formula::exists(p.clone(), push_circ(x, n)),
        Formula::Var(_) | Formula::Bottom | Formula::Top => unreachable!("atoms are quantifier-free"),
    }
}

/// Variables bound by innermost quantifiers.
fn innermost_vars(a: &Formula) -> BTreeSet<Base> {
    innermost_quantifiers(a)
        .iter()
        .filter_map(|path| quantifier_parts(a.at(path)?).map(|(p, _)| Base::var(p.clone())))
        .collect()
}

/// Unfolds outer quantifiers `(Q q) B(q)` into `B(0), ..., B(o^(m-1) 0)` and
/// `(Q q) B(o^m q)`, with `m` the largest exponent of an innermost-bound
/// variable, so that no such exponent exceeds an exponent of an outer variable.
pub fn sharp_transform(a: &Formula) -> Result<Formula> {
    let mut trace = Trace::new(a.clone());
    sharp_into(&mut trace)?;
    Ok(trace.final_formula)
}

fn sharp_into(trace: &mut Trace) -> Result<()> {
    let a = trace.final_formula.clone();
    let inner = innermost_vars(&a);
    let m = max_exp(&exp_set(&a, &inner)?);
    if m == 0 {
        return Ok(());
    }
    loop {
        let cur = &trace.final_formula;
        let Some(path) = pending_unfold(cur, m) else {
            return Ok(());
        };
        let node = cur.at(&path).expect("path from the current formula");
        let (q, body) = quantifier_parts(node).expect("quantifier node");
        let copies: Vec<Formula> = (0..m)
            .map(|k| substitute(body, q, &Formula::circ_n(Formula::Bottom, k)))
            .collect();
        let lifted = substitute(body, q, &Formula::circ_n(Formula::var(q.clone()), m));
        let replacement = match node {
            Formula::Forall(..) => Formula::and_chain(
                copies.into_iter().chain([Formula::forall(q.clone(), lifted)]).collect(),
            ),
            _ => or_chain(copies.into_iter().chain([Formula::exists(q.clone(), lifted)]).collect()),
        };
        trace.rewrite(path, replacement, Justification::Lemma19);
    }
}

fn or_chain(items: Vec<Formula>) -> Formula {
    items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
}

/// First non-innermost quantifier, inner ones first, whose variable still
/// occurs with an exponent below `m`.
fn pending_unfold(a: &Formula, m: u32) -> Option<Vec<usize>> {
    fn go(f: &Formula, m: u32, path: &mut Vec<usize>, out: &mut Option<Vec<usize>>) {
        for (i, c) in children(f).into_iter().enumerate() {
            path.push(i);
            go(c, m, path, out);
            path.pop();
            if out.is_some() {
                return;
            }
        }
        if let Some((q, body)) = quantifier_parts(f) {
            if body.is_quantifier_free() {
                return;
            }
            let exps = exp_set(body, &BTreeSet::from([Base::var(q.clone())])).unwrap_or_default();
            if min_exp(&exps).is_some_and(|low| low < m) {
                *out = Some(path.clone());
            }
        }
    }
    let mut out = None;
    go(a, m, &mut Vec::new(), &mut out);
    out
}

/// A variable-free, quantifier-free equivalent of the closed `a`, with the
/// trace of rewrites that produced it.
pub fn eliminate_all(a: &Formula, limits: &Limits) -> Result<(Formula, Trace)> {
    let open: Vec<String> = free_vars(a).into_iter().collect();
    if !open.is_empty() {
        return Err(Error::OpenFormula(open));
    }
    let mut trace = Trace::new(a.clone());
    loop {
        let renamed = rectify(&trace.final_formula);
        trace.rewrite(vec![], renamed, Justification::Rectify);
        for path in circ_over_quantifiers(&trace.final_formula) {
            let sub = trace.final_formula.at(&path).expect("path from the current formula");
            trace.rewrite(path, push_circ(sub, 0), Justification::Prop9);
        }
        for path in unnormalized(&trace.final_formula) {
            let sub = trace.final_formula.at(&path).expect("path from the current formula");
            let nf = circ_normal_form(sub)?;
            trace.rewrite(path, nf, Justification::Prop9);
        }
        if trace.final_formula.is_quantifier_free() {
            break;
        }
        sharp_into(&mut trace)?;
        for path in innermost_quantifiers(&trace.final_formula) {
            let node = trace.final_formula.at(&path).expect("path from the current formula");
            let (replacement, why) = match node {
                Formula::Forall(p, m) => (eliminate(m, p, Quant::Forall, limits)?, Justification::Lemma21),
                Formula::Exists(p, m) => (eliminate(m, p, Quant::Exists, limits)?, Justification::Lemma20),
                _ => unreachable!("innermost_quantifiers yields quantifier nodes"),
            };
            trace.rewrite(path, replacement, why);
        }
    }
    Ok((trace.final_formula.clone(), trace))
}

/// `2^(qd(a) + l)` with `l` the largest exponent in `a`, saturating.
pub fn exponent_bound(a: &Formula) -> u64 {
    let e = qd(a) + max_exponent(a);
    1u64.checked_shl(e).unwrap_or(u64::MAX)
}

/// The strict chain `0 < o 0 < ... < o^n 0 < 1`.
fn strict_ground_chain(n: u32) -> Chain {
    let mut classes: Vec<Vec<CircTerm>> = (0..=n).map(|k| vec![CircTerm::bottom(k)]).collect();
    classes.push(vec![CircTerm::top()]);
    Chain::new(classes).expect("anchors are in place")
}

/// Classifies a variable-free, quantifier-free formula as `1` or `o^k 0`.
pub fn classify_ground(a: &Formula) -> Result<Verdict> {
    if !a.is_quantifier_free() {
        return Err(Error::NotQuantifierFree(a.to_string()));
    }
    let vars = free_vars(a);
    if !vars.is_empty() {
        return Err(Error::Precondition(format!(
            "ground classification needs a variable-free formula; found {}",
            vars.into_iter().collect::<Vec<_>>().join(", ")
        )));
    }
    let nf = circ_normal_form(a)?;
    let value = value_under_chain(&nf, &strict_ground_chain(max_bottom_exponent(&nf)))?;
    let verdict = if value.is_top() {
        Verdict::Valid
    } else {
        Verdict::EquivCirc(value.exponent)
    };
    let direct = eval(a, &Valuation::new(), Space::VUp)?;
    if direct != verdict.value() {
        return Err(Error::Engine(format!(
            "ground classification of `{a}` gave {verdict} but evaluation gives {direct}"
        )));
    }
    Ok(verdict)
}

/// Decides the closed `a`: eliminates quantifiers, then classifies the result.
pub fn decide(a: &Formula, limits: &Limits) -> Result<(Verdict, Trace)> {
    let (ground, trace) = eliminate_all(a, limits)?;
    Ok((classify_ground(&ground)?, trace))
}

#[cfg(test)]
mod tests;
