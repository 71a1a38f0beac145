use crate::formula::{Formula, Rule, Style};

// Binding strength, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

pub(crate) fn print(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    match style {
        Style::Raw => raw(f, &mut out),
        Style::Sugared => sugared(f, IMP, &mut out),
    }
    out
}

fn raw(f: &Formula, out: &mut String) {
    match f {
        Formula::Bottom => out.push_str("bot"),
        Formula::Atom(a) => out.push_str(a.name()),
        Formula::And(l, r) => binary_raw(l, " & ", r, out),
        Formula::Or(l, r) => binary_raw(l, " | ", r, out),
        Formula::Implies(l, r) => binary_raw(l, " -> ", r, out),
    }
}

fn binary_raw(l: &Formula, op: &str, r: &Formula, out: &mut String) {
    out.push('(');
    raw(l, out);
    out.push_str(op);
    raw(r, out);
    out.push(')');
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Bottom | Formula::Atom(_) => UNARY,
        _ if f.is_top() || f.negated().is_some() => UNARY,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(..) => IMP,
    }
}

fn sugared(f: &Formula, min: u8, out: &mut String) {
    let own = precedence(f);
    let paren = own < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Bottom => out.push_str("bot"),
        Formula::Atom(a) => out.push_str(a.name()),
        _ if f.is_top() => out.push_str("top"),
        Formula::Implies(a, c) if c.is_bottom() => {
            out.push('~');
            sugared(a, UNARY, out);
        }
        // `&` and `|` associate to the left, `->` to the right.
        Formula::And(l, r) => {
            sugared(l, AND, out);
            out.push_str(" & ");
            sugared(r, UNARY, out);
        }
        Formula::Or(l, r) => {
            sugared(l, OR, out);
            out.push_str(" | ");
            sugared(r, AND, out);
        }
        Formula::Implies(l, r) => {
            sugared(l, OR, out);
            out.push_str(" -> ");
            sugared(r, IMP, out);
        }
    }
    if paren {
        out.push(')');
    }
}

/// `body -> head`, or the bare head when the body is `top`.
pub(crate) fn print_rule(rule: &Rule) -> String {
    let mut out = String::new();
    if rule.body().is_top() {
        sugared(rule.head(), IMP, &mut out);
    } else {
        sugared(rule.body(), OR, &mut out);
        out.push_str(" -> ");
        sugared(rule.head(), IMP, &mut out);
    }
    out
}
