use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::{free_vars, Formula};

use super::{Space, TruthValue, Valuation};

#[derive(Debug, Clone, Copy)]
enum Node {
    Slot(usize),
    Bottom,
    Top,
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Circ(usize),
    Forall(usize, usize),
    Exists(usize, usize),
}

/// A formula flattened into an index-addressed node array, with every free
/// variable and every binder assigned its own slot.
///
/// Free variables occupy slots `0..free_count()` in the order given at
/// compile time; binders use the slots after them.
#[derive(Debug, Clone)]
pub struct Program {
    nodes: Vec<Node>,
    root: usize,
    free: Vec<String>,
    slots: usize,
}

impl Program {
    /// Compiles with the free variables in lexicographic order.
    pub fn compile(a: &Formula) -> Program {
        let names: Vec<String> = free_vars(a).into_iter().collect();
        Program::compile_with_free(a, &names)
    }

    /// Compiles with an explicit free-variable order. Names in `free` that do
    /// not occur still get a slot; free variables of `a` missing from `free`
    /// are appended.
    pub fn compile_with_free(a: &Formula, free: &[String]) -> Program {
        let mut free = free.to_vec();
        for p in free_vars(a) {
            if !free.contains(&p) {
                free.push(p);
            }
        }
        let mut env: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, p) in free.iter().enumerate() {
            env.entry(p.clone()).or_default().push(i);
        }
        let mut prog = Program {
            nodes: Vec::with_capacity(a.size()),
            root: 0,
            slots: free.len(),
            free,
        };
        prog.root = prog.build(a, &mut env);
        prog
    }

    fn build(&mut self, a: &Formula, env: &mut HashMap<String, Vec<usize>>) -> usize {
        let node = match a {
            Formula::Var(p) => Node::Slot(*env[p].last().expect("free variables are pre-registered")),
            Formula::Bottom => Node::Bottom,
            Formula::Top => Node::Top,
            Formula::And(x, y) => {
                let (x, y) = (self.build(x, env), self.build(y, env));
                Node::And(x, y)
            }
            Formula::Or(x, y) => {
                let (x, y) = (self.build(x, env), self.build(y, env));
                Node::Or(x, y)
            }
            Formula::Implies(x, y) => {
                let (x, y) = (self.build(x, env), self.build(y, env));
                Node::Implies(x, y)
            }
            Formula::Circ(x) => Node::Circ(self.build(x, env)),
            Formula::Forall(p, x) | Formula::Exists(p, x) => {
                let slot = self.slots;
                self.slots += 1;
                env.entry(p.clone()).or_default().push(slot);
                let body = self.build(x, env);
                env.get_mut(p).expect("pushed above").pop();
                if matches!(a, Formula::Forall(..)) {
                    Node::Forall(slot, body)
                } else {
                    Node::Exists(slot, body)
                }
            }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn free_names(&self) -> &[String] {
        &self.free
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Free-slot values looked up from a valuation.
    pub fn slots_from(&self, v: &Valuation) -> Result<Vec<TruthValue>> {
        self.free
            .iter()
            .map(|p| v.get(p).ok_or_else(|| Error::UnboundVariable(p.clone())))
            .collect()
    }

    /// Evaluates with the free slots set to `free`. Quantifiers need a finite space.
    pub fn eval(&self, free: &[TruthValue], s: Space) -> Result<TruthValue> {
        let mut slots = vec![TruthValue::ZERO; self.slots];
        slots[..free.len()].copy_from_slice(free);
        let domain = s.values();
        self.run(self.root, &mut slots, s, &domain)
    }

    fn run(&self, n: usize, slots: &mut Vec<TruthValue>, s: Space, domain: &[TruthValue]) -> Result<TruthValue> {
        Ok(match self.nodes[n] {
            Node::Slot(i) => slots[i],
            Node::Bottom => TruthValue::ZERO,
            Node::Top => TruthValue::Top,
            Node::And(x, y) => {
                let a = self.run(x, slots, s, domain)?;
                if a == TruthValue::ZERO {
                    a
                } else {
                    a.min(self.run(y, slots, s, domain)?)
                }
            }
            Node::Or(x, y) => {
                let a = self.run(x, slots, s, domain)?;
                if a.is_top() {
                    a
                } else {
                    a.max(self.run(y, slots, s, domain)?)
                }
            }
            Node::Implies(x, y) => {
                let a = self.run(x, slots, s, domain)?;
                let b = self.run(y, slots, s, domain)?;
                a.implies(b)
            }
            Node::Circ(x) => s.succ(self.run(x, slots, s, domain)?),
            Node::Forall(slot, body) | Node::Exists(slot, body) => {
                if domain.is_empty() {
                    return Err(Error::Precondition(
                        "quantifiers need a finite truth-value space".into(),
                    ));
                }
                let forall = matches!(self.nodes[n], Node::Forall(..));
                let mut acc = if forall { TruthValue::Top } else { TruthValue::ZERO };
                for &w in domain {
                    slots[slot] = w;
                    let val = self.run(body, slots, s, domain)?;
                    acc = if forall { acc.min(val) } else { acc.max(val) };
                    if (forall && acc == TruthValue::ZERO) || (!forall && acc.is_top()) {
                        break;
                    }
                }
                acc
            }
        })
    }
}
