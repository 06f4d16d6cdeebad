use rayon::prelude::*;
use serde::Serialize;

use crate::semantics::{find_disagreement_fin, Valuation};
use crate::Limits;

use super::Trace;

/// Result of checking one step in one `V_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StepCheck {
    Pass { step: usize, k: u32 },
    /// The redexes differ under `valuation`.
    Mismatch { step: usize, k: u32, valuation: Valuation },
    /// Too many valuations to enumerate.
    Skipped { step: usize, k: u32, reason: String },
    /// The step does not fit the trace: bad locus, or not a single-site rewrite.
    Malformed { step: usize, reason: String },
}

impl StepCheck {
    pub fn is_failure(&self) -> bool {
        matches!(self, StepCheck::Mismatch { .. } | StepCheck::Malformed { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub checks: Vec<StepCheck>,
}

impl TraceReport {
    /// No mismatches and no malformed steps. Skipped checks do not count against.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(StepCheck::is_failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StepCheck> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c, StepCheck::Skipped { .. })).count()
    }
}

/// Checks every step: the rewritten subformulas must agree under all
/// valuations of their free variables over each `V_k`.
pub fn verify_trace(t: &Trace, ks: &[u32], limits: &Limits) -> TraceReport {
    let mut checks: Vec<StepCheck> = t
        .steps
        .par_iter()
        .enumerate()
        .flat_map_iter(|(step, s)| {
            let Some((before, after)) = s.redexes() else {
                return vec![StepCheck::Malformed {
                    step,
                    reason: format!("locus {:?} is missing", s.locus),
                }];
            };
            if s.before.replace_at(&s.locus, after.clone()).as_ref() != Some(&s.after) {
                return vec![StepCheck::Malformed {
                    step,
                    reason: "formulas differ outside the locus".into(),
                }];
            }
            ks.iter()
                .map(|&k| match find_disagreement_fin(before, after, k, limits) {
                    Ok(None) => StepCheck::Pass { step, k },
                    Ok(Some(valuation)) => StepCheck::Mismatch { step, k, valuation },
                    Err(e) if e.is_resource_limit() => StepCheck::Skipped {
                        step,
                        k,
                        reason: e.to_string(),
                    },
                    Err(e) => StepCheck::Malformed {
                        step,
                        reason: e.to_string(),
                    },
                })
                .collect()
        })
        .collect();
    let mut cur = &t.initial;
    for (step, s) in t.steps.iter().enumerate() {
        if &s.before != cur {
            checks.push(StepCheck::Malformed {
                step,
                reason: "does not start where the previous step ended".into(),
            });
        }
        cur = &s.after;
    }
    if cur != &t.final_formula {
        checks.push(StepCheck::Malformed {
            step: t.steps.len(),
            reason: "final formula differs from the last step".into(),
        });
    }
    TraceReport { checks }
}
