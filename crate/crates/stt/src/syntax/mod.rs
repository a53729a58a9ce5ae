//! Concrete syntax: lexer, parser, pretty-printer, and well-formedness
//! checks for the type and expression languages.

pub mod ast;
mod lexer;
mod parser;
mod printer;
mod validate;

use std::collections::HashMap;

use thiserror::Error;

pub use lexer::Pos;
pub use printer::print_type;
pub use validate::{validate_all, validate_type};

use ast::{Decl, Expr, TypeExpr};

/// An unexpected token, with the position it occurred at and a description
/// of what would have been accepted there.
#[derive(Debug, Clone, Error)]
#[error("syntax error at {pos}: expected {expected}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub expected: String,
}

impl SyntaxError {
    pub fn new(pos: Pos, expected: &str) -> Self {
        SyntaxError {
            pos,
            expected: expected.to_string(),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum ParseError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    /// The named binder reaches itself without crossing a type constructor,
    /// so the recursion does not define a unique type.
    #[error("non-contractive recursion through `{0}`")]
    Contractivity(String),
    #[error("unbound type variable `{0}`")]
    UnboundVar(String),
}

/// Parse and validate a standalone type. `decls` supplies named types the
/// source may refer to; pass an empty map when there are none.
pub fn parse_type(src: &str, decls: &HashMap<String, TypeExpr>) -> Result<TypeExpr, ParseError> {
    let mut p = parser::Parser::new(src)?;
    let t = p.ty()?;
    if !p.at_eof() {
        return Err(ParseError::Syntax(SyntaxError::new(
            p_pos(&p),
            "end of input",
        )));
    }
    validate_type(&t, decls)?;
    Ok(t)
}

/// Parse a standalone expression. Type annotations inside it are validated
/// against `decls`.
pub fn parse_expr(src: &str, decls: &HashMap<String, TypeExpr>) -> Result<Expr, ParseError> {
    let mut p = parser::Parser::new(src)?;
    let e = p.expr()?;
    if !p.at_eof() {
        return Err(ParseError::Syntax(SyntaxError::new(
            p_pos(&p),
            "end of input",
        )));
    }
    validate_expr_types(&e, decls)?;
    Ok(e)
}

/// Parse a whole program: a sequence of `type`, `let`, and `multi`
/// declarations. Type declarations may be mutually recursive and may appear
/// in any order; all are validated together.
pub fn parse_decls(src: &str) -> Result<Vec<Decl>, ParseError> {
    let mut p = parser::Parser::new(src)?;
    let decls = p.decls()?;
    let mut tydecls: HashMap<String, TypeExpr> = HashMap::new();
    for d in &decls {
        if let Decl::Type(name, t) = d {
            if tydecls.insert(name.clone(), t.clone()).is_some() {
                return Err(ParseError::Syntax(SyntaxError::new(
                    Pos { line: 1, col: 1 },
                    &format!("a single definition of type `{name}`"),
                )));
            }
        }
    }
    validate_all(None, &tydecls)?;
    for d in &decls {
        match d {
            Decl::Type(_, _) => {}
            Decl::Let(_, ann, e) => {
                if let Some(t) = ann {
                    validate_type(t, &tydecls)?;
                }
                validate_expr_types(e, &tydecls)?;
            }
        }
    }
    Ok(decls)
}

/// Validate every type annotation occurring inside an expression.
fn validate_expr_types(e: &Expr, decls: &HashMap<String, TypeExpr>) -> Result<(), ParseError> {
    let check = |t: &TypeExpr| validate_type(t, decls);
    match e {
        Expr::IntLit(_) | Expr::TagLit(_) | Expr::Var(_) => Ok(()),
        Expr::Pair(a, b) | Expr::Concat(a, b) => {
            validate_expr_types(a, decls)?;
            validate_expr_types(b, decls)
        }
        Expr::Proj(a, _) | Expr::RecLit(_, a) | Expr::Delete(a, _) | Expr::Select(a, _) => {
            validate_expr_types(a, decls)
        }
        Expr::Fun(f) => validate_fun(f, decls),
        Expr::Multi(fs) => {
            for f in fs {
                validate_fun(f, decls)?;
            }
            Ok(())
        }
        Expr::App(f, args) => {
            validate_expr_types(f, decls)?;
            for a in args {
                validate_expr_types(a, decls)?;
            }
            Ok(())
        }
        Expr::Let {
            ann, bound, body, ..
        } => {
            if let Some(t) = ann {
                check(t)?;
            }
            validate_expr_types(bound, decls)?;
            validate_expr_types(body, decls)
        }
    }
}

fn validate_fun(f: &ast::FunDef, decls: &HashMap<String, TypeExpr>) -> Result<(), ParseError> {
    for g in &f.groups {
        for (_, t) in g {
            validate_type(t, decls)?;
        }
    }
    if let Some(t) = &f.ret {
        validate_type(t, decls)?;
    }
    validate_expr_types(&f.body, decls)
}

fn p_pos(p: &parser::Parser) -> Pos {
    p.current_pos()
}

#[cfg(test)]
mod tests {
    use super::ast::TypeExpr;
    use super::*;

    fn pt(src: &str) -> TypeExpr {
        parse_type(src, &HashMap::new()).unwrap()
    }

    #[test]
    fn round_trip_basic_types() {
        for src in [
            "Any",
            "Empty",
            "Int",
            "`ok",
            "[1..5]",
            "[*..0]",
            "[-3..*]",
            "(Int, Any) -> `ok",
            "Int -> Int -> Int",
            "(Int -> Int) -> Int",
            "`a | `b & `c",
            "not `a | `b",
            "Int \\ [0..0]",
            "(Int, (Any, Empty))",
            "rec X = (`nil | (`cons, (Int, X)))",
            "{x: Int, y ?: `ok}",
            "{x: Int, ..}",
            "{}",
            "{..}",
        ] {
            let t = pt(src);
            let printed = print_type(&t);
            assert_eq!(pt(&printed), t, "round trip failed for {src}: {printed}");
        }
    }

    #[test]
    fn full_interval_prints_as_int() {
        assert_eq!(print_type(&pt("[*..*]")), "Int");
    }

    #[test]
    fn triple_nests_right() {
        assert_eq!(pt("(Int, Int, Int)"), pt("(Int, (Int, Int))"));
    }

    #[test]
    fn arrow_is_right_associative_and_loose() {
        assert_eq!(pt("Int -> Int -> Int"), pt("Int -> (Int -> Int)"));
        assert_eq!(pt("`a | `b -> `c"), pt("(`a | `b) -> `c"));
    }

    #[test]
    fn precedence_not_amp_diff_pipe() {
        assert_eq!(pt("not `a & `b"), pt("(not `a) & `b"));
        assert_eq!(pt("`a & `b \\ `c"), pt("(`a & `b) \\ `c"));
        assert_eq!(pt("`a \\ `b | `c"), pt("(`a \\ `b) | `c"));
    }

    #[test]
    fn non_contractive_recursion_is_rejected() {
        for src in ["rec X = X | X", "rec X = not X", "rec X = X", "rec X = X & Int"] {
            match parse_type(src, &HashMap::new()) {
                Err(ParseError::Contractivity(name)) => assert_eq!(name, "X"),
                other => panic!("expected contractivity error for {src}, got {other:?}"),
            }
        }
        // Guarded recursion is fine.
        pt("rec X = (X, X)");
        pt("rec X = X -> X");
        pt("rec X = {next ?: X}");
    }

    #[test]
    fn nested_rec_at_connective_level() {
        // Y's expansion needs X, whose expansion needs Y: not contractive.
        assert!(matches!(
            parse_type("rec X = rec Y = X | Y", &HashMap::new()),
            Err(ParseError::Contractivity(_))
        ));
        // Here the inner reference crosses a product, so both are fine.
        pt("rec X = rec Y = (X, Int) | `nil");
    }

    #[test]
    fn unbound_type_variable() {
        assert!(matches!(
            parse_type("X | Int", &HashMap::new()),
            Err(ParseError::UnboundVar(name)) if name == "X"
        ));
    }

    #[test]
    fn mutually_recursive_decls() {
        let decls = parse_decls(
            "type Tree = `leaf | (`node, (Forest, Int))\n\
             type Forest = `nil | (`cons, (Tree, Forest))",
        )
        .unwrap();
        assert_eq!(decls.len(), 2);
        assert!(parse_decls("type A = B | Int\ntype B = A | `x").is_err());
    }

    #[test]
    fn expressions_parse() {
        let decls = HashMap::new();
        parse_expr("fun (x: Int) : Int { x }", &decls).unwrap();
        parse_expr("fun (x: Int ;; y: Int) { (x, y) }", &decls).unwrap();
        parse_expr("multi { fun (x: Int) { x } ; fun (x: `a) { `b } }", &decls).unwrap();
        parse_expr("f(1, 2)", &decls).unwrap();
        parse_expr("(1, `a)[0]", &decls).unwrap();
        parse_expr("{x => 1, y => `a}<x>", &decls).unwrap();
        parse_expr("r \\ x", &decls).unwrap();
        parse_expr("let x: Int = 3 in (x, x)", &decls).unwrap();
        parse_expr("{a => 1} + {b => 2}", &decls).unwrap();
    }

    #[test]
    fn program_declarations_parse() {
        let src = "type T = Int | `none\n\
                   let f = fun (x: T) : T { x }\n\
                   multi g { fun (x: Int) : Int { x } ; fun (x: `a) : `a { x } }\n\
                   let y = g(3)";
        let decls = parse_decls(src).unwrap();
        assert_eq!(decls.len(), 4);
    }
}
