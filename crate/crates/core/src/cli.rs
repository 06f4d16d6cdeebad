//! The `gqp` command-line front end.
//!
//! Exit codes: `0` success (and `VALID` for `decide`), `10` for an
//! `EQUIV o^k 0` verdict, `1` for usage, parse and other errors, `2` when a
//! resource cap was hit.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::chains::{chain_normal_form, circ_normal_form, minimal_chains, Chain, GammaSet};
use crate::corpus::axiom_instances;
use crate::error::{Error, Result};
use crate::qelim::{decide, verify_trace, Trace, TraceReport, Verdict};
use crate::s1s::{print_s1s, reduction};
use crate::semantics::{eval_quantified, find_counter_qfree_up, is_tautology_fin, Space, TruthValue, Valuation};
use crate::syntax::{free_vars, parse, substitute, universal_closure, CircTerm, Formula};
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_EQUIV: i32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Circ,
    Chain,
    Minimal,
}

#[derive(Debug, Parser)]
#[command(name = "gqp", version, about = "Decision procedure for quantified propositional Goedel logic")]
pub struct Config {
    /// Cap on valuations visited by any exhaustive check.
    #[arg(long, global = true, env = "GQP_MAX_VALUATIONS", default_value_t = Limits::DEFAULT_MAX_VALUATIONS,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_valuations: u64,
    /// Cap on chains built by a normal-form construction.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_MAX_CHAINS,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_chains: u64,
    /// Largest rank tried by `nf --verify`; defaults to a bound derived from the formula.
    #[arg(long, global = true)]
    pub rank_bound: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Sizes of the finite truth-value sets used by cross-checks.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub ks: Vec<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a formula: VALID or EQUIV o^k 0. Free variables are closed universally.
    Decide {
        /// Formula text, or `@path` to read it from a file.
        formula: String,
        /// Print the rewrite trace.
        #[arg(long)]
        trace: bool,
        /// Check every trace step over the `--ks` spaces.
        #[arg(long)]
        verify: bool,
        /// Reject open formulas instead of closing them.
        #[arg(long)]
        no_close: bool,
    },
    /// Evaluate a formula under a valuation.
    Eval {
        formula: String,
        /// `vup` or `vk:K`.
        #[arg(long, default_value = "vup")]
        space: Space,
        /// JSON file mapping variables to ranks or "top".
        #[arg(long)]
        val: Option<PathBuf>,
    },
    /// Print a normal form of a quantifier-free formula.
    Nf {
        formula: String,
        #[arg(long, value_enum, default_value_t = Kind::Minimal)]
        kind: Kind,
        /// Extra terms for the chain set, comma separated (`o p,q`).
        #[arg(long, value_delimiter = ',')]
        gamma: Vec<String>,
        /// Check the result against the input over `V↑` up to `--rank-bound`.
        #[arg(long)]
        verify: bool,
    },
    /// Print the S1S sentence that holds iff the formula is valid.
    Translate { formula: String },
    /// Run the axiom corpus and differential checks.
    Selftest,
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            max_valuations: self.max_valuations,
            max_chains: self.max_chains,
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match Config::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&config, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                EXIT_LIMIT
            } else {
                EXIT_ERROR
            }
        }
    }
}

fn read_formula(arg: &str) -> Result<Formula> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Precondition(format!("cannot read `{path}`: {e}")))?;
            parse(&text)
        }
        None => parse(arg),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Precondition(format!("write failed: {e}"))
}

fn execute(c: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = c.limits();
    match &c.command {
        Command::Decide {
            formula,
            trace,
            verify,
            no_close,
        } => {
            let mut a = read_formula(formula)?;
            let open: Vec<String> = free_vars(&a).into_iter().collect();
            if !open.is_empty() {
                if *no_close {
                    return Err(Error::OpenFormula(open));
                }
                writeln!(err, "warning: closing free variables {}", open.join(", ")).map_err(io)?;
                a = universal_closure(&a);
            }
            let (verdict, t) = decide(&a, &limits)?;
            let report = verify.then(|| verify_trace(&t, &c.ks, &limits));
            print_decision(c.format, verdict, trace.then_some(&t), report.as_ref(), out).map_err(io)?;
            if report.as_ref().is_some_and(|r| !r.passed()) {
                writeln!(err, "error: trace verification failed").map_err(io)?;
                return Ok(EXIT_ERROR);
            }
            Ok(match verdict {
                Verdict::Valid => EXIT_OK,
                Verdict::EquivCirc(_) => EXIT_EQUIV,
            })
        }
        Command::Eval { formula, space, val } => {
            let a = read_formula(formula)?;
            let v = match val {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Precondition(format!("cannot read `{}`: {e}", path.display())))?;
                    serde_json::from_str(&text)
                        .map_err(|e| Error::Precondition(format!("bad valuation file: {e}")))?
                }
                None => Valuation::new(),
            };
            let value = evaluate(&a, &v, *space, &limits)?;
            match c.format {
                Format::Text => writeln!(out, "{value}"),
                Format::Json => writeln!(out, "{}", json!({ "value": value, "text": value.to_string() })),
            }
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Nf {
            formula,
            kind,
            gamma,
            verify,
        } => {
            let input = read_formula(formula)?;
            let a = circ_normal_form(&input)?;
            let extra = gamma.iter().map(|t| CircTerm::parse(t)).collect::<Result<Vec<_>>>()?;
            let (nf, chains): (Formula, Option<Vec<Chain>>) = match kind {
                Kind::Circ => (a, None),
                Kind::Chain => {
                    let g = GammaSet::new(GammaSet::of(&a).terms().iter().cloned().chain(extra));
                    (chain_normal_form(&a, &g, &limits)?, None)
                }
                Kind::Minimal => {
                    let g = GammaSet::new(GammaSet::ladder(&a).terms().iter().cloned().chain(extra));
                    let chains = minimal_chains(&a, &g, &limits)?;
                    (Formula::or_all(chains.iter().map(Chain::to_formula).collect()), Some(chains))
                }
            };
            match c.format {
                Format::Text => writeln!(out, "{nf}"),
                Format::Json => writeln!(out, "{}", json!({ "formula": nf.to_string(), "chains": chains })),
            }
            .map_err(io)?;
            if *verify {
                let same = Formula::iff(input.clone(), nf.clone());
                if let Some(v) = find_counter_qfree_up(&same, c.rank_bound, &limits)? {
                    let v = serde_json::to_string(&v).expect("valuations serialize");
                    writeln!(err, "error: normal form differs from the input at {v}").map_err(io)?;
                    return Ok(EXIT_ERROR);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Translate { formula } => {
            let a = read_formula(formula)?;
            let phi = reduction(&a);
            let open = phi.free_set_vars();
            if !open.is_empty() {
                let names: Vec<String> = open.iter().cloned().collect();
                writeln!(err, "warning: free set variables {}", names.join(", ")).map_err(io)?;
            }
            match c.format {
                Format::Text => writeln!(out, "{}", print_s1s(&phi)),
                Format::Json => writeln!(out, "{}", json!({ "s1s": print_s1s(&phi), "free_set_vars": open })),
            }
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let ok = selftest(&limits, &c.ks, out).map_err(io)?;
            Ok(if ok { EXIT_OK } else { EXIT_ERROR })
        }
    }
}

/// Value of `a` under `v`. Over `V↑` a quantified formula is evaluated by
/// substituting `o^n 0` (or `1`) for each free variable and deciding the result.
pub fn evaluate(a: &Formula, v: &Valuation, s: Space, limits: &Limits) -> Result<TruthValue> {
    if s != Space::VUp || a.is_quantifier_free() {
        return eval_quantified(a, v, s);
    }
    let mut closed = a.clone();
    for p in free_vars(a) {
        let value = v.get(&p).ok_or_else(|| Error::UnboundVariable(p.clone()))?;
        let term = match value {
            TruthValue::Top => Formula::Top,
            TruthValue::Rank(n) => Formula::circ_n(Formula::Bottom, n),
        };
        closed = substitute(&closed, &p, &term);
    }
    Ok(decide(&closed, limits)?.0.value())
}

fn print_decision(
    format: Format,
    verdict: Verdict,
    trace: Option<&Trace>,
    report: Option<&TraceReport>,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    if format == Format::Json {
        let mut doc = json!({ "verdict": verdict, "text": verdict.to_string() });
        if let Some(t) = trace {
            doc["trace"] = serde_json::to_value(t).expect("traces serialize");
        }
        if let Some(r) = report {
            doc["verification"] = json!({ "passed": r.passed(), "skipped": r.skipped(), "checks": r.checks });
        }
        return writeln!(out, "{doc}");
    }
    writeln!(out, "{verdict}")?;
    if let Some(t) = trace {
        writeln!(out, "initial: {}", t.initial)?;
        for (i, s) in t.steps.iter().enumerate() {
            let (before, after) = s.redexes().expect("engine traces have valid loci");
            writeln!(out, "{:>3}. {:<8} at {:?}: {} => {}", i + 1, s.justification, s.locus, before, after)?;
        }
        writeln!(out, "final: {}", t.final_formula)?;
    }
    if let Some(r) = report {
        let status = if r.passed() { "passed" } else { "FAILED" };
        writeln!(out, "verification {status}: {} checks, {} skipped", r.checks.len(), r.skipped())?;
        for f in r.failures() {
            writeln!(out, "  {f:?}")?;
        }
    }
    Ok(())
}

/// Formulas that are not valid, with the exponent their verdict must carry.
const NON_VALID: &[(&str, u32)] = &[
    ("A p. p | ~p", 1),
    ("A p. o p -> p", 0),
    ("A p. ~~p -> p", 1),
    ("o o 0", 2),
    ("A p. A q. (A r. (p -> r) | (r -> q)) -> (p -> q)", 0),
];

/// Decides the axiom corpus and a few known non-valid formulas, cross-checks
/// against finite spaces and verifies every trace. One line per check.
pub fn selftest(limits: &Limits, ks: &[u32], out: &mut dyn Write) -> std::io::Result<bool> {
    let mut all_ok = true;
    let mut line = |ok: bool, name: &str, detail: String, out: &mut dyn Write| {
        all_ok &= ok;
        writeln!(out, "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" })
    };
    for i in axiom_instances() {
        let a = i.closed();
        let name = format!("{} {}", i.schema, i.formula);
        let detail = match decide(&a, limits) {
            Err(e) => Err(e.to_string()),
            Ok((Verdict::EquivCirc(k), _)) => Err(format!("decided EQUIV o^{k} 0")),
            Ok((Verdict::Valid, t)) => {
                let finite = ks.iter().try_for_each(|&k| match is_tautology_fin(&a, k, limits) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(format!("not a tautology over V_{k}")),
                    Err(e) => Err(e.to_string()),
                });
                let report = verify_trace(&t, &[3, 4, 5], limits);
                finite.and_then(|()| {
                    if report.passed() {
                        Ok(format!("VALID, {} steps verified", t.len()))
                    } else {
                        Err("trace verification failed".to_string())
                    }
                })
            }
        };
        match detail {
            Ok(d) => line(true, &name, d, out)?,
            Err(d) => line(false, &name, d, out)?,
        }
    }
    for &(text, want) in NON_VALID {
        let a = parse(text).expect("self-test formulas parse");
        let got = decide(&a, limits).map(|(v, _)| v);
        let direct = eval_quantified(&a, &Valuation::new(), Space::VFin(want + 2));
        let ok = got == Ok(Verdict::EquivCirc(want)) && direct == Ok(TruthValue::Rank(want));
        let detail = format!("decided {got:?}, V_{} value {direct:?}", want + 2);
        line(ok, text, detail, out)?;
    }
    Ok(all_ok)
}
