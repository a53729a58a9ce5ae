//! Precedence-aware pretty-printer for type expressions.
//!
//! `print_type` produces concrete syntax that parses back to the same tree
//! (modulo sugar: the full interval prints as `Int`).

use super::ast::{FieldExpr, TypeExpr};

/// Binding strength, loosest first. Used to decide where parentheses go.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Rec,
    Arrow,
    Union,
    Diff,
    Inter,
    Neg,
}

pub fn print_type(t: &TypeExpr) -> String {
    let mut s = String::new();
    go(t, Prec::Rec, &mut s);
    s
}

fn paren_if(cond: bool, out: &mut String, body: impl FnOnce(&mut String)) {
    if cond {
        out.push('(');
        body(out);
        out.push(')');
    } else {
        body(out);
    }
}

fn go(t: &TypeExpr, ctx: Prec, out: &mut String) {
    match t {
        TypeExpr::Any => out.push_str("Any"),
        TypeExpr::Empty => out.push_str("Empty"),
        TypeExpr::Tag(name) => {
            out.push('`');
            out.push_str(name);
        }
        TypeExpr::Interval(None, None) => out.push_str("Int"),
        TypeExpr::Interval(lo, hi) => {
            out.push('[');
            match lo {
                Some(n) => out.push_str(&n.to_string()),
                None => out.push('*'),
            }
            out.push_str("..");
            match hi {
                Some(n) => out.push_str(&n.to_string()),
                None => out.push('*'),
            }
            out.push(']');
        }
        TypeExpr::Var(name) => out.push_str(name),
        TypeExpr::Prod(a, b) => {
            out.push('(');
            go(a, Prec::Rec, out);
            out.push_str(", ");
            go(b, Prec::Rec, out);
            out.push(')');
        }
        TypeExpr::Arrow(a, b) => paren_if(ctx > Prec::Arrow, out, |out| {
            go(a, Prec::Union, out);
            out.push_str(" -> ");
            go(b, Prec::Arrow, out);
        }),
        TypeExpr::Union(a, b) => paren_if(ctx > Prec::Union, out, |out| {
            go(a, Prec::Union, out);
            out.push_str(" | ");
            // Union is left-associative in the parser, so a right child at
            // the same level needs parentheses to round-trip structurally.
            go(b, Prec::Diff, out);
        }),
        // `a & not b` prints as a difference only when it was built as one;
        // the AST has no distinct difference node, so Inter(a, Neg(b)) is
        // rendered with `\` for readability.
        TypeExpr::Inter(a, b) => match b.as_ref() {
            TypeExpr::Neg(n) => paren_if(ctx > Prec::Diff, out, |out| {
                go(a, Prec::Diff, out);
                out.push_str(" \\ ");
                go(n, Prec::Inter, out);
            }),
            _ => paren_if(ctx > Prec::Inter, out, |out| {
                go(a, Prec::Inter, out);
                out.push_str(" & ");
                go(b, Prec::Neg, out);
            }),
        },
        TypeExpr::Neg(a) => paren_if(ctx > Prec::Neg, out, |out| {
            out.push_str("not ");
            go(a, Prec::Neg, out);
        }),
        TypeExpr::Rec(name, body) => paren_if(ctx > Prec::Rec, out, |out| {
            out.push_str("rec ");
            out.push_str(name);
            out.push_str(" = ");
            go(body, Prec::Rec, out);
        }),
        TypeExpr::Record(fields, open) => {
            out.push('{');
            let mut first = true;
            for (label, FieldExpr { ty, optional }) in fields {
                if !first {
                    out.push_str(", ");
                }
                first = false;
                out.push_str(label);
                out.push_str(if *optional { " ?: " } else { ": " });
                go(ty, Prec::Rec, out);
            }
            if *open {
                if !first {
                    out.push_str(", ");
                }
                out.push_str("..");
            }
            out.push('}');
        }
    }
}
