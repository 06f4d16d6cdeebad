//! Formula syntax: the AST, derived connectives, substitution, renaming and the
//! syntactic metrics used by the elimination procedure.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::{is_identifier, parse};
pub use print::{print, print_with, PrintOptions};

/// A formula over the nine primitive constructors.
///
/// Negation, equivalence and the strict-order connective are not part of the
/// tree; see [`Formula::neg`], [`Formula::iff`] and [`Formula::prec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tag", content = "children")]
pub enum Formula {
    Var(String),
    Bottom,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Circ(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn circ(a: Formula) -> Formula {
        Formula::Circ(Box::new(a))
    }

    /// `n`-fold application of `o`.
    pub fn circ_n(a: Formula, n: u32) -> Formula {
        (0..n).fold(a, |acc, _| Formula::circ(acc))
    }

    pub fn forall(p: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(p.into(), Box::new(body))
    }

    pub fn exists(p: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(p.into(), Box::new(body))
    }

    /// `a -> 0`
    pub fn neg(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// Strict order: `(a -> b) & ((b -> a) -> a)`.
    pub fn prec(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(Formula::implies(b, a.clone()), a),
        )
    }

    /// Conjunction of all items, built as a balanced tree; `1` when empty.
    pub fn and_all(items: Vec<Formula>) -> Formula {
        balanced(items, Formula::Top, Formula::and)
    }

    /// Disjunction of all items, built as a balanced tree; `0` when empty.
    pub fn or_all(items: Vec<Formula>) -> Formula {
        balanced(items, Formula::Bottom, Formula::or)
    }

    /// Left-nested conjunction, matching how the parser associates `&`.
    pub fn and_chain(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Bottom | Formula::Top)
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Circ(a) => a.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    pub fn is_quantified(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
        }
    }

    /// Splits `o^k B` into `(k, B)` where `B` is not an `o`.
    pub fn peel_circ(&self) -> (u32, &Formula) {
        let mut k = 0;
        let mut cur = self;
        while let Formula::Circ(inner) = cur {
            k += 1;
            cur = inner;
        }
        (k, cur)
    }

    /// The `o`-term this formula denotes, if it is `o^k` of an atom.
    /// `o^k 1` is reported as plain `1`.
    pub fn as_circ_term(&self) -> Option<CircTerm> {
        let (k, base) = self.peel_circ();
        match base {
            Formula::Var(p) => Some(CircTerm::new(Base::Var(p.clone()), k)),
            Formula::Bottom => Some(CircTerm::new(Base::Bottom, k)),
            Formula::Top => Some(CircTerm::top()),
            _ => None,
        }
    }

    /// Child formula at `path` (0 = left/only child, 1 = right child).
    pub fn at(&self, path: &[usize]) -> Option<&Formula> {
        let mut cur = self;
        for &step in path {
            cur = match (cur, step) {
                (Formula::And(a, _) | Formula::Or(a, _) | Formula::Implies(a, _), 0) => a,
                (Formula::And(_, b) | Formula::Or(_, b) | Formula::Implies(_, b), 1) => b,
                (Formula::Circ(a) | Formula::Forall(_, a) | Formula::Exists(_, a), 0) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replaces the subformula at `path`; `None` if the path does not exist.
    pub fn replace_at(&self, path: &[usize], with: Formula) -> Option<Formula> {
        let Some((&step, rest)) = path.split_first() else {
            return Some(with);
        };
        Some(match (self, step) {
            (Formula::And(a, b), 0) => Formula::and(a.replace_at(rest, with)?, (**b).clone()),
            (Formula::And(a, b), 1) => Formula::and((**a).clone(), b.replace_at(rest, with)?),
            (Formula::Or(a, b), 0) => Formula::or(a.replace_at(rest, with)?, (**b).clone()),
            (Formula::Or(a, b), 1) => Formula::or((**a).clone(), b.replace_at(rest, with)?),
            (Formula::Implies(a, b), 0) => {
                Formula::implies(a.replace_at(rest, with)?, (**b).clone())
            }
            (Formula::Implies(a, b), 1) => {
                Formula::implies((**a).clone(), b.replace_at(rest, with)?)
            }
            (Formula::Circ(a), 0) => Formula::circ(a.replace_at(rest, with)?),
            (Formula::Forall(p, a), 0) => Formula::forall(p.clone(), a.replace_at(rest, with)?),
            (Formula::Exists(p, a), 0) => Formula::exists(p.clone(), a.replace_at(rest, with)?),
            _ => return None,
        })
    }
}

fn balanced(mut items: Vec<Formula>, empty: Formula, join: fn(Formula, Formula) -> Formula) -> Formula {
    match items.len() {
        0 => empty,
        1 => items.pop().unwrap(),
        n => {
            let right = items.split_off(n / 2);
            join(balanced(items, empty.clone(), join), balanced(right, empty, join))
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Atomic base of an `o`-term. Ordered `0 < variables (by name) < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    Bottom,
    Var(String),
    Top,
}

impl Base {
    pub fn to_formula(&self) -> Formula {
        match self {
            Base::Bottom => Formula::Bottom,
            Base::Var(p) => Formula::Var(p.clone()),
            Base::Top => Formula::Top,
        }
    }

    pub fn var(name: impl Into<String>) -> Base {
        Base::Var(name.into())
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Bottom => f.write_str("0"),
            Base::Var(p) => f.write_str(p),
            Base::Top => f.write_str("1"),
        }
    }
}

/// `o^exponent base`. Field order gives the canonical ordering by base, then exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CircTerm {
    pub base: Base,
    pub exponent: u32,
}

impl CircTerm {
    /// Builds `o^exponent base`; any power of `1` collapses to `1`.
    pub fn new(base: Base, exponent: u32) -> CircTerm {
        let exponent = if base == Base::Top { 0 } else { exponent };
        CircTerm { base, exponent }
    }

    pub fn bottom(exponent: u32) -> CircTerm {
        CircTerm::new(Base::Bottom, exponent)
    }

    pub fn var(name: impl Into<String>, exponent: u32) -> CircTerm {
        CircTerm::new(Base::Var(name.into()), exponent)
    }

    pub fn top() -> CircTerm {
        CircTerm::new(Base::Top, 0)
    }

    pub fn is_top(&self) -> bool {
        self.base == Base::Top
    }

    /// `o` applied once more.
    pub fn succ(&self) -> CircTerm {
        CircTerm::new(self.base.clone(), self.exponent + 1)
    }

    pub fn to_formula(&self) -> Formula {
        Formula::circ_n(self.base.to_formula(), self.exponent)
    }

    /// Parses `"0"`, `"p"`, `"o o p"`, `"o2 p"` or `"o^2 p"`.
    pub fn parse(text: &str) -> Result<CircTerm> {
        let t = text.trim();
        let err = |m: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("bad term `{text}`: {m}"),
        };
        let mut exponent = 0u32;
        let mut words: Vec<&str> = t.split_whitespace().collect();
        let Some(last) = words.pop() else {
            return Err(err("empty"));
        };
        for w in words {
            let w = w.trim_start_matches('◦');
            let digits = w
                .strip_prefix("o^")
                .or_else(|| w.strip_prefix('o'))
                .ok_or_else(|| err("expected o prefix"))?;
            exponent += if digits.is_empty() {
                1
            } else {
                digits.parse::<u32>().map_err(|_| err("bad exponent"))?
            };
        }
        let base = match last {
            "0" | "⊥" | "bot" => Base::Bottom,
            "1" | "⊤" | "top" => Base::Top,
            p if is_identifier(p) => Base::Var(p.to_string()),
            _ => return Err(err("bad base")),
        };
        Ok(CircTerm::new(base, exponent))
    }
}

impl fmt::Display for CircTerm {
    /// Prints `o^j base` in the concrete formula syntax (`o o p`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.exponent {
            f.write_str("o ")?;
        }
        write!(f, "{}", self.base)
    }
}

/// Free variables of `a`.
pub fn free_vars(a: &Formula) -> BTreeSet<String> {
    fn go(a: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match a {
            Formula::Var(p) => {
                if !bound.contains(p) {
                    out.insert(p.clone());
                }
            }
            Formula::Bottom | Formula::Top => {}
            Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
                go(x, bound, out);
                go(y, bound, out);
            }
            Formula::Circ(x) => go(x, bound, out),
            Formula::Forall(p, x) | Formula::Exists(p, x) => {
                bound.push(p.clone());
                go(x, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(a, &mut Vec::new(), &mut out);
    out
}

/// Every variable name occurring in `a`, free or bound (including binders).
pub fn all_names(a: &Formula) -> BTreeSet<String> {
    fn go(a: &Formula, out: &mut BTreeSet<String>) {
        match a {
            Formula::Var(p) => {
                out.insert(p.clone());
            }
            Formula::Bottom | Formula::Top => {}
            Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
                go(x, out);
                go(y, out);
            }
            Formula::Circ(x) => go(x, out),
            Formula::Forall(p, x) | Formula::Exists(p, x) => {
                out.insert(p.clone());
                go(x, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(a, &mut out);
    out
}

/// `base` followed by the smallest numeric suffix that is not in `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    (1u64..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !used.contains(n))
        .expect("unbounded suffix search")
}

/// Replaces the free occurrences of `p` in `a` by `x`, renaming binders of `a`
/// that would capture a free variable of `x`.
pub fn substitute(a: &Formula, p: &str, x: &Formula) -> Formula {
    let x_free = free_vars(x);
    let mut used = all_names(a);
    used.extend(all_names(x));
    subst(a, p, x, &x_free, &mut used)
}

fn subst(
    a: &Formula,
    p: &str,
    x: &Formula,
    x_free: &BTreeSet<String>,
    used: &mut BTreeSet<String>,
) -> Formula {
    match a {
        Formula::Var(q) if q == p => x.clone(),
        Formula::Var(_) | Formula::Bottom | Formula::Top => a.clone(),
        Formula::And(l, r) => Formula::and(subst(l, p, x, x_free, used), subst(r, p, x, x_free, used)),
        Formula::Or(l, r) => Formula::or(subst(l, p, x, x_free, used), subst(r, p, x, x_free, used)),
        Formula::Implies(l, r) => {
            Formula::implies(subst(l, p, x, x_free, used), subst(r, p, x, x_free, used))
        }
        Formula::Circ(b) => Formula::circ(subst(b, p, x, x_free, used)),
        Formula::Forall(q, b) | Formula::Exists(q, b) => {
            if q == p || !free_vars(b).contains(p) {
                return a.clone();
            }
            let (q2, b2) = if x_free.contains(q) {
                let fresh = fresh_name(q, used);
                used.insert(fresh.clone());
                let renamed = subst(b, q, &Formula::Var(fresh.clone()), &BTreeSet::new(), used);
                (fresh, renamed)
            } else {
                (q.clone(), (**b).clone())
            };
            let body = subst(&b2, p, x, x_free, used);
            match a {
                Formula::Forall(..) => Formula::forall(q2, body),
                _ => Formula::exists(q2, body),
            }
        }
    }
}

/// Alpha-variant of `a` in which every binder names a distinct variable that
/// also differs from all free variables.
pub fn rectify(a: &Formula) -> Formula {
    let mut used = free_vars(a);
    let mut all = all_names(a);
    rect(a, &BTreeMap::new(), &mut used, &mut all)
}

fn rect(
    a: &Formula,
    env: &BTreeMap<String, String>,
    used: &mut BTreeSet<String>,
    all: &mut BTreeSet<String>,
) -> Formula {
    match a {
        Formula::Var(p) => Formula::Var(env.get(p).cloned().unwrap_or_else(|| p.clone())),
        Formula::Bottom | Formula::Top => a.clone(),
        Formula::And(l, r) => Formula::and(rect(l, env, used, all), rect(r, env, used, all)),
        Formula::Or(l, r) => Formula::or(rect(l, env, used, all), rect(r, env, used, all)),
        Formula::Implies(l, r) => Formula::implies(rect(l, env, used, all), rect(r, env, used, all)),
        Formula::Circ(b) => Formula::circ(rect(b, env, used, all)),
        Formula::Forall(q, b) | Formula::Exists(q, b) => {
            let name = if used.contains(q) {
                let n = fresh_name(q, all);
                all.insert(n.clone());
                n
            } else {
                q.clone()
            };
            used.insert(name.clone());
            let mut inner = env.clone();
            inner.insert(q.clone(), name.clone());
            let body = rect(b, &inner, used, all);
            match a {
                Formula::Forall(..) => Formula::forall(name, body),
                _ => Formula::exists(name, body),
            }
        }
    }
}

/// True when no two binders share a name and no binder shadows a free variable.
pub fn is_rectified(a: &Formula) -> bool {
    fn go(a: &Formula, seen: &mut BTreeSet<String>) -> bool {
        match a {
            Formula::Var(_) | Formula::Bottom | Formula::Top => true,
            Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
                go(x, seen) && go(y, seen)
            }
            Formula::Circ(x) => go(x, seen),
            Formula::Forall(p, x) | Formula::Exists(p, x) => seen.insert(p.clone()) && go(x, seen),
        }
    }
    let mut seen = free_vars(a);
    go(a, &mut seen)
}

/// Quantifier depth. `o` and `1` add nothing.
pub fn qd(a: &Formula) -> u32 {
    match a {
        Formula::Var(_) | Formula::Bottom | Formula::Top => 0,
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => qd(x).max(qd(y)),
        Formula::Circ(x) => qd(x),
        Formula::Forall(_, x) | Formula::Exists(_, x) => qd(x) + 1,
    }
}

/// The set of `o^k v` occurrences with `v` in `bases`.
///
/// Requires every quantifier-free subformula to be in `o`-normal form: `o` may
/// only be applied to an atom, to another `o`, or to a quantified formula.
pub fn op_set(a: &Formula, bases: &BTreeSet<Base>) -> Result<BTreeSet<CircTerm>> {
    let mut out = BTreeSet::new();
    op_into(a, bases, &mut out)?;
    Ok(out)
}

fn op_into(a: &Formula, bases: &BTreeSet<Base>, out: &mut BTreeSet<CircTerm>) -> Result<()> {
    match a {
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            op_into(x, bases, out)?;
            op_into(y, bases, out)
        }
        Formula::Forall(_, x) | Formula::Exists(_, x) => op_into(x, bases, out),
        _ => {
            let (k, inner) = a.peel_circ();
            let base = match inner {
                Formula::Var(p) => Base::Var(p.clone()),
                Formula::Bottom => Base::Bottom,
                Formula::Top => Base::Top,
                Formula::Forall(..) | Formula::Exists(..) => return op_into(inner, bases, out),
                other if k > 0 => return Err(Error::MalformedCirc(print(&Formula::circ(other.clone())))),
                other => return op_into(other, bases, out),
            };
            if bases.contains(&base) {
                out.insert(CircTerm::new(base, k));
            }
            Ok(())
        }
    }
}

/// `{k : o^k v ∈ op_set(a, bases)}`.
pub fn exp_set(a: &Formula, bases: &BTreeSet<Base>) -> Result<BTreeSet<u32>> {
    Ok(op_set(a, bases)?.into_iter().map(|t| t.exponent).collect())
}

/// Maximum of an exponent set; `0` for the empty set.
pub fn max_exp(set: &BTreeSet<u32>) -> u32 {
    set.iter().next_back().copied().unwrap_or(0)
}

/// Minimum of an exponent set; `None` stands for `+∞` on the empty set.
pub fn min_exp(set: &BTreeSet<u32>) -> Option<u32> {
    set.iter().next().copied()
}

/// Largest `o`-exponent over variables and `0` (the `l` of the elimination
/// bounds). An `o` over a compound formula counts for every atom below it.
pub fn max_exponent(a: &Formula) -> u32 {
    deepest_atom(a, &|f| matches!(f, Formula::Var(_) | Formula::Bottom)).unwrap_or(0)
}

/// Largest exponent `k` of an `o^k 0` occurrence, counted as for [`max_exponent`].
pub fn max_bottom_exponent(a: &Formula) -> u32 {
    deepest_atom(a, &|f| matches!(f, Formula::Bottom)).unwrap_or(0)
}

/// Largest number of `o`s above an atom accepted by `counts`.
fn deepest_atom(a: &Formula, counts: &dyn Fn(&Formula) -> bool) -> Option<u32> {
    match a {
        Formula::Var(_) | Formula::Bottom | Formula::Top => counts(a).then_some(0),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            deepest_atom(x, counts).max(deepest_atom(y, counts))
        }
        Formula::Forall(_, x) | Formula::Exists(_, x) => deepest_atom(x, counts),
        Formula::Circ(x) => deepest_atom(x, counts).map(|e| e + 1),
    }
}

/// True if no `o` occurs in `a`.
pub fn is_circ_free(a: &Formula) -> bool {
    match a {
        Formula::Var(_) | Formula::Bottom | Formula::Top => true,
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            is_circ_free(x) && is_circ_free(y)
        }
        Formula::Circ(_) => false,
        Formula::Forall(_, x) | Formula::Exists(_, x) => is_circ_free(x),
    }
}

/// Universal closure over the free variables in lexicographic order
/// (the first name becomes the outermost binder).
pub fn universal_closure(a: &Formula) -> Formula {
    free_vars(a)
        .into_iter()
        .rev()
        .fold(a.clone(), |acc, p| Formula::forall(p, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn bases(xs: &[Base]) -> BTreeSet<Base> {
        xs.iter().cloned().collect()
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(substitute(&f("p -> q"), "p", &Formula::Bottom), f("0 -> q"));
        let a = Formula::forall("p", f("p | q"));
        let got = substitute(&a, "q", &f("o p"));
        assert_eq!(got, Formula::forall("p1", f("p1 | o p")));
        let a = Formula::prec(f("p"), f("o p"));
        assert_eq!(
            substitute(&a, "p", &Formula::Bottom),
            Formula::prec(Formula::Bottom, f("o 0"))
        );
    }

    #[test]
    fn substitute_leaves_bound_occurrences() {
        let a = f("p & A p. p");
        assert_eq!(substitute(&a, "p", &Formula::Top), f("1 & A p. p"));
    }

    #[test]
    fn rectify_examples() {
        let a = Formula::and(Formula::forall("p", f("p")), Formula::exists("p", f("p")));
        let r = rectify(&a);
        assert_eq!(r, Formula::and(Formula::forall("p", f("p")), Formula::exists("p1", f("p1"))));
        assert_eq!(rectify(&r), r);
        let nested = f("A p. E p. p");
        assert_eq!(rectify(&nested), f("A p. E p1. p1"));
        assert!(is_rectified(&rectify(&f("p & A p. E q. p & q"))));
    }

    #[test]
    fn rectify_avoids_free_names() {
        let a = f("p1 & E p. E p. p");
        let r = rectify(&a);
        assert!(is_rectified(&r));
        assert_eq!(free_vars(&r), free_vars(&a));
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(free_vars(&f("A p. p | q")), ["q".to_string()].into());
        assert!(free_vars(&f("o o 0")).is_empty());
        assert_eq!(free_vars(&f("E p. q <-> o p")), ["q".to_string()].into());
    }

    #[test]
    fn qd_examples() {
        assert_eq!(qd(&f("p -> 0")), 0);
        assert_eq!(qd(&f("A p. E q. p & q")), 2);
        assert_eq!(qd(&f("o A p. p")), 1);
        assert_eq!(qd(&Formula::Top), 0);
    }

    #[test]
    fn op_set_examples() {
        let a = f("o o p | q");
        assert_eq!(op_set(&a, &bases(&[Base::var("p")])).unwrap(), [CircTerm::var("p", 2)].into());
        assert_eq!(op_set(&a, &bases(&[Base::var("q")])).unwrap(), [CircTerm::var("q", 0)].into());
        let b = f("E r. o r -> o o 0");
        assert_eq!(
            op_set(&b, &bases(&[Base::var("r"), Base::Bottom])).unwrap(),
            [CircTerm::var("r", 1), CircTerm::bottom(2)].into()
        );
    }

    #[test]
    fn op_set_rejects_malformed_circ() {
        let err = op_set(&f("o (p & q)"), &bases(&[Base::var("p")])).unwrap_err();
        assert!(matches!(err, Error::MalformedCirc(_)));
    }

    #[test]
    fn exp_set_examples() {
        let pq = bases(&[Base::var("p"), Base::var("q")]);
        assert_eq!(exp_set(&f("o o p | o q"), &pq).unwrap(), [1, 2].into());
        let e = exp_set(&f("p"), &bases(&[Base::var("q")])).unwrap();
        assert!(e.is_empty());
        assert_eq!(max_exp(&e), 0);
        assert_eq!(min_exp(&e), None);
        assert_eq!(exp_set(&f("A p. o o o p -> o q"), &bases(&[Base::var("p")])).unwrap(), [3].into());
    }

    #[test]
    fn universal_closure_examples() {
        assert_eq!(universal_closure(&f("p | ~p")), f("A p. p | ~p"));
        let closed = f("A p. p");
        assert_eq!(universal_closure(&closed), closed);
        assert_eq!(
            universal_closure(&f("(p -> q) | (q -> p)")),
            f("A p. A q. (p -> q) | (q -> p)")
        );
    }

    #[test]
    fn circ_term_parse_and_display() {
        assert_eq!(CircTerm::parse("o2 p").unwrap(), CircTerm::var("p", 2));
        assert_eq!(CircTerm::parse("o o p").unwrap(), CircTerm::var("p", 2));
        assert_eq!(CircTerm::parse("0").unwrap(), CircTerm::bottom(0));
        assert_eq!(CircTerm::parse("o 1").unwrap(), CircTerm::top());
        assert_eq!(CircTerm::var("p", 2).to_string(), "o o p");
    }

    #[test]
    fn locus_navigation() {
        let a = f("(p & q) | o r");
        assert_eq!(a.at(&[0, 1]), Some(&f("q")));
        assert_eq!(a.at(&[1, 0]), Some(&f("r")));
        assert_eq!(a.replace_at(&[1], Formula::Top).unwrap(), f("(p & q) | 1"));
        assert!(a.at(&[2]).is_none());
    }

    #[test]
    fn exponents_count_circ_over_compound_formulas() {
        assert_eq!(max_exponent(&f("o o p | o 0")), 2);
        assert_eq!(max_exponent(&f("o (p & o (0 -> 1))")), 2);
        assert_eq!(max_bottom_exponent(&f("o (p & o (0 -> 1))")), 2);
        assert_eq!(max_bottom_exponent(&f("o o p | o 1")), 0);
        assert_eq!(max_exponent(&f("o 1")), 0);
    }
}
