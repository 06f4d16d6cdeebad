use super::Formula;

/// Printer configuration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrintOptions {
    /// Print `a -> 0` as `~a`.
    pub tilde_negation: bool,
}

/// Prints with minimal parentheses; the output reparses to the same tree.
pub fn print(f: &Formula) -> String {
    print_with(f, PrintOptions::default())
}

pub fn print_with(f: &Formula, opts: PrintOptions) -> String {
    let mut out = String::new();
    write(f, 0, true, opts, &mut out);
    out
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// `ctx` is the binding strength the position demands; `open_right` says
/// whether nothing follows this position, so a quantifier may extend to it.
fn write(f: &Formula, ctx: u8, open_right: bool, opts: PrintOptions, out: &mut String) {
    match f {
        Formula::Var(p) => out.push_str(p),
        Formula::Bottom => out.push('0'),
        Formula::Top => out.push('1'),
        Formula::Implies(a, b) if opts.tilde_negation && **b == Formula::Bottom => {
            out.push('~');
            write(a, UNARY, open_right, opts, out);
        }
        Formula::Circ(a) => {
            out.push_str("o ");
            write(a, UNARY, open_right, opts, out);
        }
        Formula::And(a, b) => binary(a, b, " & ", AND, (AND, UNARY), ctx, open_right, opts, out),
        Formula::Or(a, b) => binary(a, b, " | ", OR, (OR, AND), ctx, open_right, opts, out),
        Formula::Implies(a, b) => binary(a, b, " -> ", IMP, (OR, IMP), ctx, open_right, opts, out),
        Formula::Forall(p, body) | Formula::Exists(p, body) => {
            let q = if matches!(f, Formula::Forall(..)) { "A" } else { "E" };
            if !open_right {
                out.push('(');
            }
            out.push_str(q);
            out.push(' ');
            out.push_str(p);
            out.push_str(". ");
            write(body, 0, true, opts, out);
            if !open_right {
                out.push(')');
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    a: &Formula,
    b: &Formula,
    op: &str,
    level: u8,
    (left_ctx, right_ctx): (u8, u8),
    ctx: u8,
    open_right: bool,
    opts: PrintOptions,
    out: &mut String,
) {
    let parens = ctx > level;
    if parens {
        out.push('(');
    }
    write(a, left_ctx, false, opts, out);
    out.push_str(op);
    write(b, right_ctx, parens || open_right, opts, out);
    if parens {
        out.push(')');
    }
}
