use super::*;
use crate::semantics::{equivalent_fin, eval_quantified, find_disagreement_fin, is_tautology_fin};
use crate::syntax::{parse, universal_closure};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

/// Brute force over `V↑` restricted to ranks `<= bound`: sup or inf of
/// `matrix` over `p` (the top value included), for a fixed valuation.
fn bounded_up_quantifier(matrix: &Formula, p: &str, v: &Valuation, bound: u32, exists: bool) -> TruthValue {
    let vals = (0..=bound).map(TruthValue::Rank).chain([TruthValue::Top]);
    let each = vals.map(|w| eval(matrix, &v.clone().with(p, w), Space::VUp).unwrap());
    if exists {
        each.max().unwrap()
    } else {
        each.min().unwrap()
    }
}

#[test]
fn verdict_display() {
    assert_eq!(Verdict::Valid.to_string(), "VALID");
    assert_eq!(Verdict::EquivCirc(1).to_string(), "EQUIV o^1 0");
}

#[test]
fn expand_base_examples() {
    assert_eq!(expand_base(&f("A p. p")).unwrap(), f("0 & A p. o p"));
    assert_eq!(
        expand_base(&f("E p. p <-> q")).unwrap(),
        f("(0 <-> q) | E p. o p <-> q")
    );
    assert!(expand_base(&f("p")).is_err());
    for s in ["A p. p | (p -> q)", "E p. (p <-> q) & o p", "A p. E q. p -> o q"] {
        let a = f(s);
        assert!(equivalent_fin(&a, &expand_base(&a).unwrap(), 4, &lim()).unwrap(), "{s}");
    }
}

#[test]
fn sharp_transform_examples() {
    let a = f("A q. E p. q | o p");
    assert_eq!(sharp_transform(&a).unwrap(), f("(E p. 0 | o p) & A q. E p. o q | o p"));
    let flat = f("A q. E p. q | p");
    assert_eq!(sharp_transform(&flat).unwrap(), flat);
    for s in ["A q. E p. q | o p", "E q. A p. (o o p -> q) | p", "A r. E q. A p. (o p <-> q) | r"] {
        let a = f(s);
        let b = sharp_transform(&a).unwrap();
        assert!(qd(&b) <= qd(&a));
        assert!(max_exponent(&b) <= 2 * max_exponent(&a));
        for k in [3, 5] {
            assert!(equivalent_fin(&a, &b, k, &lim()).unwrap(), "{s} k={k}");
        }
    }
}

#[test]
fn eliminate_examples() {
    let top = eliminate_exists(&f("p"), "p", &lim()).unwrap();
    assert_eq!(eval(&top, &Valuation::new(), Space::VUp).unwrap(), TruthValue::Top);
    let e = eliminate_exists(&f("q -< p"), "p", &lim()).unwrap();
    assert!(is_tautology_fin(&e, 5, &lim()).unwrap());
    let e = eliminate_exists(&f("(q -< p) & (p -< r)"), "p", &lim()).unwrap();
    for k in 2..=6 {
        assert!(equivalent_fin(&e, &f("o q -< r"), k, &lim()).unwrap(), "k={k}");
    }
    let bottom = eliminate_forall(&f("p"), "p", &lim()).unwrap();
    assert_eq!(eval(&bottom, &Valuation::new(), Space::VUp).unwrap(), TruthValue::ZERO);
    let a = eliminate_forall(&f("(q -> p) | (p -> r)"), "p", &lim()).unwrap();
    for k in 2..=6 {
        assert!(equivalent_fin(&a, &f("(q -> o r) | r"), k, &lim()).unwrap(), "k={k}");
    }
    let em = eliminate_forall(&f("p | ~p"), "p", &lim()).unwrap();
    assert_eq!(eval(&em, &Valuation::new(), Space::VUp).unwrap(), TruthValue::Rank(1));
    assert_eq!(eval(&em, &Valuation::new(), Space::VFin(3)).unwrap(), TruthValue::Rank(1));
}

#[test]
fn eliminate_rejects_bad_matrices() {
    assert!(matches!(eliminate_exists(&f("A q. p"), "p", &lim()), Err(Error::NotQuantifierFree(_))));
    assert!(matches!(eliminate_exists(&f("o (p & q)"), "p", &lim()), Err(Error::MalformedCirc(_))));
    assert!(matches!(eliminate_exists(&f("o p & q"), "p", &lim()), Err(Error::Precondition(_))));
}

const MATRICES: &[&str] = &[
    "p",
    "p | ~p",
    "~p | ~~p",
    "(q -> p) | (p -> r)",
    "(q -< p) & (p -< r)",
    "(p <-> q) | (p <-> o r)",
    "(o q -< p) & (p -< r)",
    "o p <-> o q",
    "(p -> q) -> r",
    "(o p -> o q) & (o q -> o o r)",
    "p -< o q",
    "(p <-> o 0) | q",
    "~(p <-> q) -> r",
];

#[test]
fn eliminations_match_brute_force_quantifiers() {
    for s in MATRICES {
        let m = f(s);
        for exists in [true, false] {
            let out = if exists {
                eliminate_exists(&m, "p", &lim())
            } else {
                eliminate_forall(&m, "p", &lim())
            }
            .unwrap();
            assert!(!free_vars(&out).contains("p"), "{s}");
            let q = if exists {
                Formula::exists("p", m.clone())
            } else {
                Formula::forall("p", m.clone())
            };
            for k in 2..=5 {
                let bad = find_disagreement_fin(&q, &out, k, &lim()).unwrap();
                assert!(bad.is_none(), "{s} exists={exists} k={k} at {bad:?}");
            }
            let others: Vec<String> = free_vars(&m).into_iter().filter(|x| x != "p").collect();
            let bound = 8;
            let mut v = vec![0u32; others.len()];
            loop {
                let val: Valuation = others
                    .iter()
                    .zip(&v)
                    .map(|(x, &r)| (x.clone(), if r > bound { TruthValue::Top } else { TruthValue::Rank(r) }))
                    .collect();
                let want = bounded_up_quantifier(&m, "p", &val, 3 * bound, exists);
                assert_eq!(eval(&out, &val, Space::VUp).unwrap(), want, "{s} exists={exists} {val:?}");
                let Some(i) = v.iter().position(|&r| r <= bound) else { break };
                v[i] += 1;
                v[..i].iter_mut().for_each(|r| *r = 0);
            }
        }
    }
}

#[test]
fn eliminate_all_examples() {
    let (g, t) = eliminate_all(&f("A p. A q. (p -> q) | (q -> p)"), &lim()).unwrap();
    assert!(free_vars(&g).is_empty() && g.is_quantifier_free());
    assert_eq!(eval(&g, &Valuation::new(), Space::VUp).unwrap(), TruthValue::Top);
    assert!(t.is_connected());
    let (g, _) = eliminate_all(&f("A p. p | ~p"), &lim()).unwrap();
    assert_eq!(eval(&g, &Valuation::new(), Space::VUp).unwrap(), TruthValue::Rank(1));
    let (g, t) = eliminate_all(&f("o o 0"), &lim()).unwrap();
    assert_eq!(g, f("o o 0"));
    assert!(t.is_empty());
    assert!(matches!(eliminate_all(&f("A p. q"), &lim()), Err(Error::OpenFormula(v)) if v == vec!["q".to_string()]));
}

#[test]
fn classify_ground_examples() {
    assert_eq!(classify_ground(&f("0 -> o 0")).unwrap(), Verdict::Valid);
    assert_eq!(classify_ground(&f("o 0 | o o 0")).unwrap(), Verdict::EquivCirc(2));
    assert_eq!(classify_ground(&f("o 0 -> 0")).unwrap(), Verdict::EquivCirc(0));
    assert_eq!(classify_ground(&f("o (0 -> o 0)")).unwrap(), Verdict::Valid);
    assert!(classify_ground(&f("p")).is_err());
    assert!(classify_ground(&f("A p. p")).is_err());
}

#[test]
fn decide_examples() {
    assert_eq!(decide(&f("A p. A q. (p -> q) | (q -> p)"), &lim()).unwrap().0, Verdict::Valid);
    assert_eq!(decide(&f("A p. p | ~p"), &lim()).unwrap().0, Verdict::EquivCirc(1));
    assert_eq!(decide(&f("E p. p <-> o 0"), &lim()).unwrap().0, Verdict::Valid);
}

#[test]
fn decide_agrees_with_finite_spaces() {
    for s in [
        "A p. p | ~p",
        "A p. ~p | ~~p",
        "A p. A q. (p -> q) | (q -> p)",
        "A p. E q. p -< q",
        "E p. A q. q -> p",
        "A p. E q. q <-> o p",
        "A p. A q. (o p -> o q) -> ((p -> q) | o q)",
        "A p. (A q. q) -> p",
        "E p. A q. (q -> p) | ~q",
        "A q. (q <-> 0) | E p. q <-> o p",
        "A p. o p -> p",
        "A p. A q. (p <-> q) | (q -> p)",
        "A r. o (o ((A q. q) | r) -> r) & r",
        "A p. o (E q. q -< p) -> o A q. p | ~q",
    ] {
        let a = f(s);
        let (verdict, trace) = decide(&a, &lim()).unwrap();
        assert!(trace.is_connected());
        match verdict {
            Verdict::Valid => {
                for k in 2..=6 {
                    assert!(is_tautology_fin(&a, k, &lim()).unwrap(), "{s} k={k}");
                }
            }
            Verdict::EquivCirc(k) => {
                let v = eval_quantified(&a, &Valuation::new(), Space::VFin(k + 2)).unwrap();
                assert_eq!(v, TruthValue::Rank(k), "{s}");
                assert!((k as u64) <= exponent_bound(&a), "{s}");
            }
        }
        let report = verify_trace(&trace, &[3, 4, 5], &lim());
        assert!(report.passed(), "{s}: {:?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn decide_is_idempotent_on_its_output() {
    let (_, t) = decide(&f("A p. p | ~p"), &lim()).unwrap();
    let (v, again) = decide(&t.final_formula, &lim()).unwrap();
    assert_eq!(v, Verdict::EquivCirc(1));
    assert!(again.is_empty());
}

#[test]
fn verify_trace_catches_a_corrupted_step() {
    assert!(verify_trace(&Trace::new(f("1")), &[3], &lim()).passed());
    let (_, mut t) = decide(&f("A p. p | ~p"), &lim()).unwrap();
    assert!(verify_trace(&t, &[3, 4, 5], &lim()).passed());
    let last = t.steps.len() - 1;
    let step = &mut t.steps[last];
    step.locus = vec![];
    step.after = Formula::Bottom;
    step.before = Formula::Top;
    let report = verify_trace(&t, &[3], &lim());
    assert!(!report.passed());
    assert!(report.failures().any(|c| matches!(c, StepCheck::Mismatch { .. })));
}

#[test]
fn trace_json_round_trips() {
    let (_, t) = decide(&universal_closure(&f("p | ~p")), &lim()).unwrap();
    let json = serde_json::to_value(&t).unwrap();
    assert!(json["initial"].is_string() && json["final"].is_string());
    let step = &json["steps"][0];
    for key in ["before", "after", "justification", "locus"] {
        assert!(!step[key].is_null(), "{key}");
    }
    let back: Trace = serde_json::from_value(json).unwrap();
    assert_eq!(back, t);
}
