//! Translation of quantified propositional formulas into the monadic
//! second-order theory of one successor (S1S).
//!
//! A propositional variable `p` becomes a set variable `Xp` read as a
//! predecessor-closed set of naturals: the set `{0, .., n-1}` stands for the
//! truth value `1 - 1/(n+1)` and the whole of `ω` for `1`. A formula `A` is
//! valid over `V↑` exactly when the S1S sentence [`reduction`] of `A` holds.
//! No S1S decision procedure is included; the text form is meant for
//! external tools.

use std::collections::BTreeSet;

use crate::syntax::{all_names, fresh_name, rectify, Formula};

mod text;

pub use text::{parse_s1s, print_s1s};

/// An individual term: a variable under some number of successors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Succ(Box<Term>),
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum S1S {
    /// `X(t)`: set variable applied to a term.
    Pred(String, Term),
    Eq(Term, Term),
    Not(Box<S1S>),
    And(Box<S1S>, Box<S1S>),
    Or(Box<S1S>, Box<S1S>),
    Implies(Box<S1S>, Box<S1S>),
    All(String, Box<S1S>),
    Ex(String, Box<S1S>),
    All2(String, Box<S1S>),
    Ex2(String, Box<S1S>),
}

impl S1S {
    pub fn pred(x: impl Into<String>, t: Term) -> S1S {
        S1S::Pred(x.into(), t)
    }

    pub fn not(a: S1S) -> S1S {
        S1S::Not(Box::new(a))
    }

    pub fn and(a: S1S, b: S1S) -> S1S {
        S1S::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: S1S, b: S1S) -> S1S {
        S1S::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: S1S, b: S1S) -> S1S {
        S1S::Implies(Box::new(a), Box::new(b))
    }

    pub fn all(x: impl Into<String>, a: S1S) -> S1S {
        S1S::All(x.into(), Box::new(a))
    }

    pub fn ex(x: impl Into<String>, a: S1S) -> S1S {
        S1S::Ex(x.into(), Box::new(a))
    }

    pub fn all2(x: impl Into<String>, a: S1S) -> S1S {
        S1S::All2(x.into(), Box::new(a))
    }

    pub fn ex2(x: impl Into<String>, a: S1S) -> S1S {
        S1S::Ex2(x.into(), Box::new(a))
    }

    /// Number of nodes, terms excluded.
    pub fn size(&self) -> usize {
        match self {
            S1S::Pred(..) | S1S::Eq(..) => 1,
            S1S::Not(a) | S1S::All(_, a) | S1S::Ex(_, a) | S1S::All2(_, a) | S1S::Ex2(_, a) => 1 + a.size(),
            S1S::And(a, b) | S1S::Or(a, b) | S1S::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Set variables occurring free.
    pub fn free_set_vars(&self) -> BTreeSet<String> {
        fn go(a: &S1S, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match a {
                S1S::Pred(x, _) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                S1S::Eq(..) => {}
                S1S::Not(b) | S1S::All(_, b) | S1S::Ex(_, b) => go(b, bound, out),
                S1S::And(b, c) | S1S::Or(b, c) | S1S::Implies(b, c) => {
                    go(b, bound, out);
                    go(c, bound, out);
                }
                S1S::All2(x, b) | S1S::Ex2(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Set variable standing for the propositional variable `p`.
pub fn set_var(p: &str) -> String {
    format!("X{p}")
}

/// Set variable standing for `0`; always interpreted as the empty set.
pub const BOTTOM_SET: &str = "Xbot";

struct Namer {
    y: usize,
    z: usize,
}

impl Namer {
    fn next(counter: &mut usize, base: &str) -> String {
        let name = if *counter == 0 { base.to_string() } else { format!("{base}{counter}") };
        *counter += 1;
        name
    }
}

/// `TV(X(x))`: the set `X` is closed under predecessor.
pub fn predecessor_closed(set: &str, z: &str) -> S1S {
    S1S::all(
        z,
        S1S::implies(
            S1S::pred(set, Term::succ(Term::var(z))),
            S1S::pred(set, Term::var(z)),
        ),
    )
}

/// Replaces every `o B` by `A q. (q -> B) | q` with `q` fresh.
pub fn expand_circ(a: &Formula) -> Formula {
    fn go(a: &Formula, used: &mut BTreeSet<String>) -> Formula {
        match a {
            Formula::Var(_) | Formula::Bottom | Formula::Top => a.clone(),
            Formula::And(x, y) => Formula::and(go(x, used), go(y, used)),
            Formula::Or(x, y) => Formula::or(go(x, used), go(y, used)),
            Formula::Implies(x, y) => Formula::implies(go(x, used), go(y, used)),
            Formula::Forall(p, x) => Formula::forall(p.clone(), go(x, used)),
            Formula::Exists(p, x) => Formula::exists(p.clone(), go(x, used)),
            Formula::Circ(x) => {
                let body = go(x, used);
                let q = fresh_name("c", used);
                used.insert(q.clone());
                let qv = Formula::var(q.clone());
                Formula::forall(q, Formula::or(Formula::implies(qv.clone(), body), qv))
            }
        }
    }
    let mut used = all_names(a);
    go(a, &mut used)
}

/// `A^x` for the individual variable `x`. The input is rectified and
/// `o`-expanded first.
pub fn translate_formula(a: &Formula, x: &str) -> S1S {
    let a = rectify(&expand_circ(&rectify(a)));
    let mut namer = Namer { y: 0, z: 0 };
    translate(&a, x, &mut namer)
}

fn translate(a: &Formula, x: &str, n: &mut Namer) -> S1S {
    match a {
        Formula::Var(p) => S1S::pred(set_var(p), Term::var(x)),
        Formula::Bottom => S1S::pred(BOTTOM_SET, Term::var(x)),
        Formula::Top => {
            let z = Namer::next(&mut n.z, "z");
            S1S::all(z.clone(), S1S::Eq(Term::var(z.clone()), Term::var(z)))
        }
        Formula::And(b, c) => S1S::and(translate(b, x, n), translate(c, x, n)),
        Formula::Or(b, c) => S1S::or(translate(b, x, n), translate(c, x, n)),
        Formula::Implies(b, c) => {
            let y = Namer::next(&mut n.y, "y");
            let everywhere = S1S::all(y.clone(), S1S::implies(translate(b, &y, n), translate(c, &y, n)));
            let somewhere = S1S::ex(y.clone(), S1S::and(translate(b, &y, n), S1S::not(translate(c, &y, n))));
            S1S::or(everywhere, S1S::and(somewhere, translate(c, x, n)))
        }
        Formula::Forall(p, b) => {
            let z = Namer::next(&mut n.z, "z");
            let set = set_var(p);
            S1S::all2(set.clone(), S1S::implies(predecessor_closed(&set, &z), translate(b, x, n)))
        }
        Formula::Exists(p, b) => {
            let z = Namer::next(&mut n.z, "z");
            let set = set_var(p);
            S1S::ex2(set.clone(), S1S::and(predecessor_closed(&set, &z), translate(b, x, n)))
        }
        Formula::Circ(_) => unreachable!("o is expanded before translation"),
    }
}

/// The S1S sentence `(all2 Xbot)((all x) ~Xbot(x) -> (all x) A^x)`.
/// Free variables of `a` stay free set variables of the result.
pub fn reduction(a: &Formula) -> S1S {
    S1S::all2(
        BOTTOM_SET,
        S1S::implies(
            S1S::all("x", S1S::not(S1S::pred(BOTTOM_SET, Term::var("x")))),
            S1S::all("x", translate_formula(a, "x")),
        ),
    )
}

#[cfg(test)]
mod tests;
