use super::*;
use crate::syntax::parse;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn x(name: &str) -> Term {
    Term::var(name)
}

#[test]
fn atoms() {
    assert_eq!(translate_formula(&f("p"), "x"), S1S::pred("Xp", x("x")));
    assert_eq!(translate_formula(&f("0"), "x"), S1S::pred(BOTTOM_SET, x("x")));
    assert_eq!(print_s1s(&translate_formula(&f("1"), "x")), "(all z)(z = z)");
}

#[test]
fn implication_example() {
    let want = S1S::or(
        S1S::all("y", S1S::implies(S1S::pred("Xp", x("y")), S1S::pred("Xq", x("y")))),
        S1S::and(
            S1S::ex("y", S1S::and(S1S::pred("Xp", x("y")), S1S::not(S1S::pred("Xq", x("y"))))),
            S1S::pred("Xq", x("x")),
        ),
    );
    assert_eq!(translate_formula(&f("p -> q"), "x"), want);
    assert_eq!(
        print_s1s(&want),
        "(all y)(Xp(y) -> Xq(y)) | ((ex y)(Xp(y) & ~Xq(y)) & Xq(x))"
    );
}

#[test]
fn quantifier_example() {
    let want = S1S::ex2("Xp", S1S::and(predecessor_closed("Xp", "z"), S1S::pred("Xp", x("x"))));
    assert_eq!(translate_formula(&f("E p. p"), "x"), want);
    assert_eq!(print_s1s(&predecessor_closed("Xp", "z")), "(all z)(Xp(s(z)) -> Xp(z))");
}

#[test]
fn reduction_examples() {
    assert_eq!(
        print_s1s(&reduction(&Formula::Top)),
        "(all2 Xbot)((all x)~Xbot(x) -> (all x)(all z)(z = z))"
    );
    assert_eq!(
        print_s1s(&reduction(&Formula::Bottom)),
        "(all2 Xbot)((all x)~Xbot(x) -> (all x)Xbot(x))"
    );
    assert!(reduction(&f("A p. p")).free_set_vars().is_empty());
    assert_eq!(
        reduction(&f("p | q")).free_set_vars(),
        BTreeSet::from(["Xp".to_string(), "Xq".to_string()])
    );
}

#[test]
fn fresh_names_per_occurrence() {
    let text = print_s1s(&translate_formula(&f("A p. A q. (p -> q) -> p"), "x"));
    for name in ["(all z)", "(all z1)", "(all y)", "(all y1)", "(all y2)"] {
        assert!(text.contains(name), "{name} in {text}");
    }
}

#[test]
fn circ_is_expanded_through_a_fresh_universal() {
    let a = expand_circ(&f("o c"));
    assert_eq!(a, f("A c1. (c1 -> c) | c1"));
    let s = translate_formula(&f("o p"), "x");
    assert!(matches!(s, S1S::All2(ref v, _) if v.starts_with("Xc")));
}

/// Node count of the translation, by the defining recursion.
fn expected_size(a: &Formula) -> usize {
    match a {
        Formula::Var(_) | Formula::Bottom => 1,
        Formula::Top => 2,
        Formula::And(b, c) | Formula::Or(b, c) => 1 + expected_size(b) + expected_size(c),
        Formula::Implies(b, c) => 7 + 2 * expected_size(b) + 3 * expected_size(c),
        Formula::Forall(_, b) | Formula::Exists(_, b) => 6 + expected_size(b),
        Formula::Circ(b) => 17 + 3 * expected_size(b),
    }
}

#[test]
fn translation_size() {
    for s in ["p", "p -> q", "A p. (p -> q) -> p", "o (p & q)", "E p. p | ~p", "o o 0 -> 1"] {
        let a = f(s);
        assert_eq!(translate_formula(&a, "x").size(), expected_size(&a), "{s}");
    }
    for s in ["p & q | r", "A p. E q. p | q & 0", "A p. A q. A r. (p | q) & (r | 1)"] {
        let a = f(s);
        assert!(translate_formula(&a, "x").size() <= 6 * a.size(), "{s}");
    }
}

#[test]
fn text_round_trip() {
    for s in ["A p. p | ~p", "o p -> E q. q", "(p -> q) | (q -> p)", "1 & 0"] {
        let phi = reduction(&f(s));
        let text = print_s1s(&phi);
        assert_eq!(parse_s1s(&text).unwrap(), phi, "{text}");
        assert_eq!(print_s1s(&parse_s1s(&text).unwrap()), text);
    }
    assert!(parse_s1s("Xp(x) &").is_err());
    assert!(parse_s1s("(all x Xp(x)").is_err());
}
