//! Axiom schemas of the calculus, instantiated over `p`, `q`, `r`.
//!
//! Every instance is valid over `V↑` and every `V_k`; the self-test and the
//! acceptance suite decide their universal closures.

use crate::syntax::{parse, universal_closure, Formula};

/// A named instance of an axiom schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub schema: &'static str,
    pub formula: Formula,
}

impl Instance {
    /// The universal closure, ready for the decision procedure.
    pub fn closed(&self) -> Formula {
        universal_closure(&self.formula)
    }
}

/// Schemas over metavariables `A`, `B`, `C`, and `B(s)` with `s` bound.
const SCHEMAS: &[(&str, &str)] = &[
    ("I1", "$A -> ($B -> $A)"),
    ("I2", "$A & $B -> $A"),
    ("I3", "$A & $B -> $B"),
    ("I4", "$A -> ($B -> $A & $B)"),
    ("I5", "$A -> $A | $B"),
    ("I6", "$B -> $A | $B"),
    ("I7", "$A & ~$A -> $B"),
    ("I8", "($A -> ~$A) -> ~$A"),
    ("I9", "0 -> $A"),
    ("I10", "$A -> 1"),
    ("I11", "($A -> ($B -> $C)) -> (($A -> $B) -> ($A -> $C))"),
    ("I12", "($A -> $C) & ($B -> $C) -> ($A | $B -> $C)"),
    ("LC", "($A -> $B) | ($B -> $A)"),
    ("AA", "(A s. $A | $Bs) -> $A | (A s. $Bs)"),
    ("G1", "o ($A -> $B) <-> (o $A -> o $B)"),
    ("G2", "$A -< o $A"),
    ("G3", "(o $A -> o $B) -> (($A -> $B) | o $B)"),
    ("G4", "($A -> o $B) -> (($A -> $C) | ($C -> $B))"),
    ("G5", "($A <-> 0) | (E s. $A <-> o s)"),
    ("G6", "($A -< $B) -> (o $A -> $B)"),
];

/// Substitutions for `A`, `B`, `C`, `Bs`.
const FILLINGS: &[[&str; 4]] = &[
    ["p", "q", "r", "s -> q"],
    ["p & q", "o r", "~p", "q | o s"],
    ["o p", "p -> q", "q | r", "(s -> p) & r"],
];

fn instantiate(schema: &str, fill: &[&str; 4]) -> Formula {
    let text = ["$Bs", "$A", "$B", "$C"]
        .iter()
        .zip([fill[3], fill[0], fill[1], fill[2]])
        .fold(schema.to_string(), |t, (slot, with)| t.replace(slot, &format!("({with})")));
    parse(&text).expect("corpus schemas are well formed")
}

/// Every schema under every filling.
pub fn axiom_instances() -> Vec<Instance> {
    SCHEMAS
        .iter()
        .flat_map(|&(schema, text)| {
            FILLINGS.iter().map(move |fill| Instance {
                schema,
                formula: instantiate(text, fill),
            })
        })
        .collect()
}
