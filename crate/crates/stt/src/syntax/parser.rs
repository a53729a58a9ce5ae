//! Recursive-descent parser for types, expressions, and declarations.
//!
//! Operator precedence for types, loosest first:
//! `rec`, then `->` (right-associative), `|`, `\`, `&`, `not`.

use num_bigint::BigInt;

use super::ast::*;
use super::lexer::{lex, Pos, Spanned, Tok};
use super::{ParseError, SyntaxError};

pub struct Parser {
    toks: Vec<Spanned>,
    idx: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            idx: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].tok
    }

    fn peek2(&self) -> &Tok {
        let i = (self.idx + 1).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.idx].pos
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.idx].tok.clone();
        if self.idx < self.toks.len() - 1 {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.err(&format!("`{t}`")))
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::Syntax(SyntaxError::new(self.pos(), expected))
    }

    fn eat_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.err("an identifier")),
        }
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn current_pos(&self) -> Pos {
        self.pos()
    }

    // ---- types ----

    pub fn ty(&mut self) -> Result<TypeExpr, ParseError> {
        if let Tok::Ident(s) = self.peek() {
            if s == "rec" {
                self.next();
                let name = self.eat_ident()?;
                self.expect(Tok::Eq)?;
                let body = self.ty()?;
                return Ok(TypeExpr::Rec(name, Box::new(body)));
            }
        }
        self.ty_arrow()
    }

    fn ty_arrow(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.ty_union()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.ty_arrow()?;
            Ok(TypeExpr::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn ty_union(&mut self) -> Result<TypeExpr, ParseError> {
        let mut t = self.ty_diff()?;
        while *self.peek() == Tok::Pipe {
            self.next();
            t = TypeExpr::union(t, self.ty_diff()?);
        }
        Ok(t)
    }

    fn ty_diff(&mut self) -> Result<TypeExpr, ParseError> {
        let mut t = self.ty_inter()?;
        while *self.peek() == Tok::Backslash {
            self.next();
            t = TypeExpr::diff(t, self.ty_inter()?);
        }
        Ok(t)
    }

    fn ty_inter(&mut self) -> Result<TypeExpr, ParseError> {
        let mut t = self.ty_neg()?;
        while *self.peek() == Tok::Amp {
            self.next();
            t = TypeExpr::inter(t, self.ty_neg()?);
        }
        Ok(t)
    }

    fn ty_neg(&mut self) -> Result<TypeExpr, ParseError> {
        if let Tok::Ident(s) = self.peek() {
            if s == "not" {
                self.next();
                return Ok(TypeExpr::neg(self.ty_neg()?));
            }
        }
        self.ty_atom()
    }

    fn ty_atom(&mut self) -> Result<TypeExpr, ParseError> {
        match self.peek().clone() {
            Tok::Tag(name) => {
                self.next();
                Ok(TypeExpr::Tag(name))
            }
            Tok::Ident(s) => match s.as_str() {
                "Any" => {
                    self.next();
                    Ok(TypeExpr::Any)
                }
                "Empty" => {
                    self.next();
                    Ok(TypeExpr::Empty)
                }
                "Int" => {
                    self.next();
                    Ok(TypeExpr::int())
                }
                "Bool" => {
                    self.next();
                    Ok(TypeExpr::bool())
                }
                _ => {
                    self.next();
                    Ok(TypeExpr::Var(s))
                }
            },
            Tok::LBracket => self.interval(),
            Tok::LParen => {
                self.next();
                let first = self.ty()?;
                let mut parts = vec![first];
                while *self.peek() == Tok::Comma {
                    self.next();
                    parts.push(self.ty()?);
                }
                self.expect(Tok::RParen)?;
                // (T1,...,Tn) is the right-nested pair (T1,(T2,...)).
                let mut t = parts.pop().unwrap();
                while let Some(l) = parts.pop() {
                    t = TypeExpr::prod(l, t);
                }
                Ok(t)
            }
            Tok::LBrace => self.record_type(),
            _ => Err(self.err("a type")),
        }
    }

    fn interval(&mut self) -> Result<TypeExpr, ParseError> {
        let start = self.pos();
        self.expect(Tok::LBracket)?;
        let lo = self.bound()?;
        self.expect(Tok::DotDot)?;
        let hi = self.bound()?;
        self.expect(Tok::RBracket)?;
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return Err(ParseError::Syntax(SyntaxError::new(
                    start,
                    "an interval with lo <= hi",
                )));
            }
        }
        Ok(TypeExpr::Interval(lo, hi))
    }

    fn bound(&mut self) -> Result<Option<BigInt>, ParseError> {
        match self.peek().clone() {
            Tok::Star => {
                self.next();
                Ok(None)
            }
            Tok::Int(n) => {
                self.next();
                Ok(Some(n))
            }
            _ => Err(self.err("an integer or `*`")),
        }
    }

    fn record_type(&mut self) -> Result<TypeExpr, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut fields = Vec::new();
        let mut open = false;
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.next();
                    break;
                }
                Tok::DotDot => {
                    self.next();
                    self.expect(Tok::RBrace)?;
                    open = true;
                    break;
                }
                Tok::Ident(label) => {
                    self.next();
                    let optional = match self.peek() {
                        Tok::Colon => {
                            self.next();
                            false
                        }
                        Tok::QColon => {
                            self.next();
                            true
                        }
                        _ => return Err(self.err("`:` or `?:`")),
                    };
                    let ty = self.ty()?;
                    fields.push((label, FieldExpr { ty, optional }));
                    if *self.peek() == Tok::Comma {
                        self.next();
                    }
                }
                _ => return Err(self.err("a field label, `..`, or `}`")),
            }
        }
        Ok(TypeExpr::Record(fields, open))
    }

    // ---- expressions ----

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Ident(s) = self.peek() {
            match s.as_str() {
                "let" => return self.let_expr(),
                "fun" => {
                    self.next();
                    return Ok(Expr::Fun(self.fun_def()?));
                }
                "multi" => {
                    self.next();
                    return Ok(Expr::Multi(self.multi_branches()?));
                }
                _ => {}
            }
        }
        self.concat()
    }

    fn let_expr(&mut self) -> Result<Expr, ParseError> {
        self.next(); // let
        let name = self.eat_ident()?;
        let ann = if *self.peek() == Tok::Colon {
            self.next();
            Some(self.ty()?)
        } else {
            None
        };
        self.expect(Tok::Eq)?;
        let bound = self.expr()?;
        match self.peek() {
            Tok::Ident(s) if s == "in" => {
                self.next();
            }
            _ => return Err(self.err("`in`")),
        }
        let body = self.expr()?;
        Ok(Expr::Let {
            name,
            ann,
            bound: Box::new(bound),
            body: Box::new(body),
        })
    }

    fn fun_def(&mut self) -> Result<FunDef, ParseError> {
        let groups = self.param_groups()?;
        let ret = if *self.peek() == Tok::Colon {
            self.next();
            Some(self.ty()?)
        } else {
            None
        };
        self.expect(Tok::LBrace)?;
        let body = self.expr()?;
        self.expect(Tok::RBrace)?;
        Ok(FunDef {
            groups,
            ret,
            body: Box::new(body),
        })
    }

    fn param_groups(&mut self) -> Result<Vec<ParamGroup>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut groups = Vec::new();
        let mut group = Vec::new();
        loop {
            let name = self.eat_ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            if group.iter().any(|(n, _)| *n == name) {
                return Err(ParseError::Syntax(SyntaxError::new(
                    self.pos(),
                    "distinct parameter names within a group",
                )));
            }
            group.push((name, ty));
            match self.peek() {
                Tok::Comma => {
                    self.next();
                }
                Tok::SemiSemi => {
                    self.next();
                    groups.push(std::mem::take(&mut group));
                }
                Tok::RParen => {
                    self.next();
                    groups.push(group);
                    return Ok(groups);
                }
                _ => return Err(self.err("`,`, `;;`, or `)`")),
            }
        }
    }

    fn branch(&mut self) -> Result<FunDef, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == "fun" => {
                self.next();
                self.fun_def()
            }
            _ => Err(self.err("`fun`")),
        }
    }

    fn multi_branches(&mut self) -> Result<Vec<FunDef>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut branches = vec![self.branch()?];
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.next();
                    if *self.peek() == Tok::RBrace {
                        self.next();
                        break;
                    }
                    branches.push(self.branch()?);
                }
                Tok::RBrace => {
                    self.next();
                    break;
                }
                _ => return Err(self.err("`;` or `}`")),
            }
        }
        let arity: Vec<usize> = branches[0].groups.iter().map(|g| g.len()).collect();
        for b in &branches {
            let a: Vec<usize> = b.groups.iter().map(|g| g.len()).collect();
            if a != arity {
                return Err(ParseError::Syntax(SyntaxError::new(
                    self.pos(),
                    "multi branches with identical group arities",
                )));
            }
        }
        Ok(branches)
    }

    fn concat(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.postfix()?;
        while *self.peek() == Tok::Plus {
            self.next();
            e = Expr::Concat(Box::new(e), Box::new(self.postfix()?));
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.primary()?;
        loop {
            match self.peek().clone() {
                Tok::LParen => {
                    self.next();
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Comma {
                        self.next();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    e = Expr::App(Box::new(e), args);
                }
                Tok::LBracket => {
                    self.next();
                    let idx = match self.peek().clone() {
                        Tok::Int(n) if n == BigInt::from(0) => 0u8,
                        Tok::Int(n) if n == BigInt::from(1) => 1u8,
                        _ => return Err(self.err("`0` or `1`")),
                    };
                    self.next();
                    self.expect(Tok::RBracket)?;
                    e = Expr::Proj(Box::new(e), idx);
                }
                Tok::Lt => {
                    self.next();
                    let label = self.eat_ident()?;
                    self.expect(Tok::Gt)?;
                    e = Expr::Select(Box::new(e), label);
                }
                Tok::Backslash => {
                    self.next();
                    let label = self.eat_ident()?;
                    e = Expr::Delete(Box::new(e), label);
                }
                _ => return Ok(e),
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::IntLit(n))
            }
            Tok::Tag(name) => {
                self.next();
                Ok(Expr::TagLit(name))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Expr::Var(s))
            }
            Tok::LParen => {
                self.next();
                let first = self.expr()?;
                let mut parts = vec![first];
                while *self.peek() == Tok::Comma {
                    self.next();
                    parts.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                let mut e = parts.pop().unwrap();
                while let Some(l) = parts.pop() {
                    e = Expr::Pair(Box::new(l), Box::new(e));
                }
                Ok(e)
            }
            Tok::LBrace => {
                self.next();
                // {a => e, b => e2} desugars to {a => e} + {b => e2}.
                let mut items = Vec::new();
                loop {
                    let label = self.eat_ident()?;
                    self.expect(Tok::FatArrow)?;
                    let e = self.expr()?;
                    items.push((label, e));
                    match self.peek() {
                        Tok::Comma => {
                            self.next();
                        }
                        Tok::RBrace => {
                            self.next();
                            break;
                        }
                        _ => return Err(self.err("`,` or `}`")),
                    }
                }
                let mut iter = items.into_iter();
                let (l, e) = iter.next().unwrap();
                let mut acc = Expr::RecLit(l, Box::new(e));
                for (l, e) in iter {
                    acc = Expr::Concat(Box::new(acc), Box::new(Expr::RecLit(l, Box::new(e))));
                }
                Ok(acc)
            }
            _ => Err(self.err("an expression")),
        }
    }

    // ---- declarations ----

    pub fn decls(&mut self) -> Result<Vec<Decl>, ParseError> {
        let mut out = Vec::new();
        while !self.at_eof() {
            out.push(self.decl()?);
            if *self.peek() == Tok::Semi {
                self.next();
            }
        }
        Ok(out)
    }

    pub fn decl(&mut self) -> Result<Decl, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "type" => {
                self.next();
                let name = self.eat_ident()?;
                self.expect(Tok::Eq)?;
                let ty = self.ty()?;
                Ok(Decl::Type(name, ty))
            }
            Tok::Ident(s) if s == "let" => {
                self.next();
                let name = self.eat_ident()?;
                let ann = if *self.peek() == Tok::Colon {
                    self.next();
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::Eq)?;
                let e = self.expr()?;
                Ok(Decl::Let(name, ann, e))
            }
            Tok::Ident(s) if s == "multi" && matches!(self.peek2(), Tok::Ident(_)) => {
                self.next();
                let name = self.eat_ident()?;
                let branches = self.multi_branches()?;
                Ok(Decl::Let(name, None, Expr::Multi(branches)))
            }
            _ => Err(self.err("`type`, `let`, or `multi` declaration")),
        }
    }
}
