use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::semantics::{eval, equivalent_fin, is_tautology_fin, Space, TruthValue, Valuation};
use crate::syntax::parse;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn t(s: &str) -> CircTerm {
    CircTerm::parse(s).unwrap()
}

fn chain(classes: &[&[&str]]) -> Chain {
    Chain::new(classes.iter().map(|c| c.iter().map(|s| t(s)).collect()).collect()).unwrap()
}

fn gamma(terms: &[&str]) -> GammaSet {
    GammaSet::new(terms.iter().map(|s| t(s)))
}

fn lim() -> Limits {
    Limits::default()
}

/// Generate-and-filter: every map from terms to class labels `0..n`,
/// kept when the labels used form a prefix and the anchors sit at the ends.
fn naive_chain_count(g: &GammaSet) -> usize {
    let terms: Vec<&CircTerm> = g.terms().iter().collect();
    let n = terms.len();
    let mut seen = BTreeSet::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut label = vec![0; n];
        for l in label.iter_mut() {
            *l = code % n;
            code /= n;
        }
        let used: BTreeSet<usize> = label.iter().copied().collect();
        let k = used.len();
        if used != (0..k).collect() {
            continue;
        }
        let at = |x: &CircTerm| label[terms.iter().position(|y| *y == x).unwrap()];
        if at(&CircTerm::bottom(0)) != 0 || at(&CircTerm::top()) != k - 1 {
            continue;
        }
        seen.insert(label);
    }
    seen.len()
}

/// The chain a valuation induces on `g`: terms grouped by value, ascending.
fn chain_of(g: &GammaSet, v: &Valuation, s: Space) -> Chain {
    let mut by: BTreeMap<TruthValue, Vec<CircTerm>> = BTreeMap::new();
    for x in g.terms() {
        by.entry(eval(&x.to_formula(), v, s).unwrap()).or_default().push(x.clone());
    }
    Chain::new(by.into_values().collect()).unwrap()
}

fn valuations(vars: &[String], s: Space) -> Vec<Valuation> {
    let vals = s.values();
    let mut out = vec![Valuation::new()];
    for p in vars {
        out = out
            .into_iter()
            .flat_map(|v| vals.iter().map(move |&x| v.clone().with(p, x)))
            .collect();
    }
    out
}

const CORPUS: &[&str] = &[
    "p",
    "0",
    "o 0",
    "o p -> p",
    "p -> q",
    "(p -> q) | (q -> p)",
    "o p & ~p",
    "~~p -> o q",
    "o o p | q",
    "(p -> o 0) -> p",
    "o p <-> q",
    "p -< o p",
    "(o q -> p) & q",
];

#[test]
fn chain_examples() {
    assert_eq!(chain(&[&["0"], &["1"]]).to_formula(), f("0 -< 1"));
    assert_eq!(chain(&[&["0", "p"], &["1"]]).to_formula(), f("(0 <-> p) & (p -< 1)"));
    assert_eq!(
        chain(&[&["0"], &["p"], &["o p", "1"]]).to_formula(),
        f("(0 -< p) & (p -< o p) & (o p <-> 1)")
    );
    assert!(Chain::new(vec![vec![t("p")], vec![t("0"), t("1")]]).is_err());
    assert!(Chain::new(vec![vec![t("0"), t("p")], vec![t("p"), t("1")]]).is_err());
}

#[test]
fn enumerate_examples() {
    let two = enumerate_chains(&gamma(&[]), &lim()).unwrap();
    assert_eq!(two, vec![chain(&[&["0"], &["1"]]), chain(&[&["0", "1"]])]);
    assert_eq!(enumerate_chains(&gamma(&["p"]), &lim()).unwrap().len(), 4);
}

#[test]
fn enumerate_matches_naive_count() {
    for terms in [&[][..], &["p"], &["p", "q"], &["p", "o p", "q"], &["o 0", "p", "o p", "q"]] {
        let g = gamma(terms);
        let chains = enumerate_chains(&g, &lim()).unwrap();
        let distinct: BTreeSet<&Chain> = chains.iter().collect();
        assert_eq!(distinct.len(), chains.len());
        assert_eq!(chains.len(), naive_chain_count(&g), "{terms:?}");
        assert_eq!(g.chain_count(), Some(chains.len() as u128));
    }
}

#[test]
fn enumerate_respects_limit() {
    let g = gamma(&["p", "q", "r", "o p", "o q", "o r"]);
    let small = Limits { max_chains: 100, ..Limits::default() };
    assert!(enumerate_chains(&g, &small).unwrap_err().is_resource_limit());
}

#[test]
fn disjunction_of_all_chains_is_a_tautology() {
    for terms in [&["p"][..], &["p", "q"], &["p", "o p"], &["o 0", "p"]] {
        let chains = enumerate_chains(&gamma(terms), &lim()).unwrap();
        let all = Formula::or_all(chains.iter().map(Chain::to_formula).collect());
        for k in 2..=6 {
            assert!(is_tautology_fin(&all, k, &lim()).unwrap(), "{terms:?} k={k}");
        }
    }
}

#[test]
fn circ_normal_form_examples() {
    assert_eq!(circ_normal_form(&f("o (p & q)")).unwrap(), f("o p & o q"));
    assert_eq!(circ_normal_form(&f("o (p -> q)")).unwrap(), f("o p -> o q"));
    assert_eq!(circ_normal_form(&f("o o (p | 1)")).unwrap(), Formula::Top);
    assert!(matches!(circ_normal_form(&f("A p. p")), Err(Error::NotQuantifierFree(_))));
}

#[test]
fn circ_normal_form_preserves_meaning_and_is_idempotent() {
    for s in ["o (p & q)", "o (p -> o (q | 0))", "o ~p", "o o (p | 1)", "o (o p -> p) & q", "o (1 -> p)"] {
        let a = f(s);
        let n = circ_normal_form(&a).unwrap();
        assert!(is_circ_normal(&n));
        assert_eq!(circ_normal_form(&n).unwrap(), n);
        for k in 2..=5 {
            assert!(equivalent_fin(&a, &n, k, &lim()).unwrap(), "{s} k={k}");
        }
    }
}

#[test]
fn value_under_chain_examples() {
    let c = chain(&[&["0"], &["p"], &["1"]]);
    assert_eq!(value_under_chain(&f("p | 0"), &c).unwrap(), t("p"));
    assert_eq!(value_under_chain(&f("p -> 0"), &c).unwrap(), t("0"));
    assert_eq!(value_under_chain(&f("(p -> 0) -> 0"), &c).unwrap(), t("1"));
    assert!(matches!(value_under_chain(&f("q"), &c), Err(Error::MissingTerm(_))));
}

#[test]
fn value_under_chain_agrees_with_evaluation() {
    for s in CORPUS {
        let a = f(s);
        let g = GammaSet::of(&a);
        let vars: Vec<String> = crate::syntax::free_vars(&a).into_iter().collect();
        for k in 2..=6 {
            let space = Space::VFin(k);
            for v in valuations(&vars, space) {
                let c = chain_of(&g, &v, space);
                let val = value_under_chain(&a, &c).unwrap();
                assert_eq!(eval(&val.to_formula(), &v, space).unwrap(), eval(&a, &v, space).unwrap(), "{s}");
            }
        }
    }
}

#[test]
fn chain_normal_form_examples() {
    assert_eq!(
        chain_normal_form(&Formula::Bottom, &gamma(&[]), &lim()).unwrap(),
        f("(0 -< 1) & 0 | (0 <-> 1) & 0")
    );
    let terms = chain_normal_form_terms(&f("p"), &gamma(&["p"]), &lim()).unwrap();
    assert_eq!(terms.len(), 4);
    assert!(terms.iter().all(|(_, v)| *v == t("p")));
    assert!(matches!(
        chain_normal_form(&f("q"), &gamma(&["p"]), &lim()),
        Err(Error::MissingTerm(_))
    ));
}

#[test]
fn normal_forms_preserve_meaning() {
    for s in CORPUS {
        let a = f(s);
        let ladder = GammaSet::ladder(&a);
        let sets = if ladder.len() <= 7 { vec![GammaSet::of(&a), ladder] } else { vec![GammaSet::of(&a)] };
        for g in sets {
            let cnf = chain_normal_form(&a, &g, &lim()).unwrap();
            let chains = minimal_chains(&a, &g, &lim()).unwrap();
            assert!(chains.iter().all(satisfies_minimality), "{s}");
            let mnf = Formula::or_all(chains.iter().map(Chain::to_formula).collect());
            for k in 2..=5 {
                assert!(equivalent_fin(&a, &cnf, k, &lim()).unwrap(), "chain nf {s} k={k}");
                assert!(equivalent_fin(&a, &mnf, k, &lim()).unwrap(), "minimal nf {s} k={k}");
            }
        }
    }
}

#[test]
fn minimal_normal_form_of_circ_bottom() {
    let chains = minimal_chains(&f("o 0"), &gamma(&["o 0"]), &lim()).unwrap();
    assert_eq!(chains, vec![chain(&[&["0"], &["o 0", "1"]]), chain(&[&["0", "o 0", "1"]])]);
}

#[test]
fn minimize_merges_each_kind_of_violation() {
    let inverted = chain(&[&["0"], &["o p"], &["p"], &["1"]]);
    assert!(matches!(find_violation(&inverted), Some(Violation::Inverted { .. })));
    assert_eq!(minimize(&inverted, None).unwrap(), chain(&[&["0"], &["o p", "p", "1"]]));

    let shared = chain(&[&["0"], &["p", "o p"], &["1"]]);
    assert!(matches!(find_violation(&shared), Some(Violation::Shared { .. })));
    assert_eq!(minimize(&shared, None).unwrap(), chain(&[&["0"], &["p", "o p", "1"]]));

    let gap = chain(&[&["0"], &["p"], &["q"], &["o p"], &["1"]]);
    assert!(matches!(find_violation(&gap), Some(Violation::Gap { .. })));
    assert_eq!(minimize(&gap, None).unwrap(), chain(&[&["0"], &["p", "q", "o p", "1"]]));

    let ok = chain(&[&["0"], &["p"], &["o p"], &["1"]]);
    assert!(satisfies_minimality(&ok));
    assert_eq!(minimize(&ok, Some(&t("o p"))).unwrap(), chain(&[&["0"], &["p"], &["o p", "1"]]));
}

#[test]
fn chain_json() {
    let c = chain(&[&["0"], &["p", "o p"], &["1"]]);
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(json, r#"[["0"],["p","o p"],["1"]]"#);
    assert_eq!(serde_json::from_str::<Chain>(&json).unwrap(), c);
    assert_eq!(serde_json::from_str::<Chain>(r#"[["0"],["o1 p","p"],["1"]]"#).unwrap(), c);
    assert!(serde_json::from_str::<Chain>(r#"[["p"],["0","1"]]"#).is_err());
}
