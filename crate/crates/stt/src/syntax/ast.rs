//! Surface syntax trees for types, expressions, and declarations.

use num_bigint::BigInt;

/// A user-facing type tree. Recursive types go through [`TypeExpr::Rec`]
/// binders; `T1 \ T2` desugars to `T1 & not T2` during parsing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    /// A backquoted tag such as `` `nil ``; denotes a singleton.
    Tag(String),
    /// An integer interval; `None` bounds are infinite.
    Interval(Option<BigInt>, Option<BigInt>),
    Any,
    Empty,
    Prod(Box<TypeExpr>, Box<TypeExpr>),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Union(Box<TypeExpr>, Box<TypeExpr>),
    Inter(Box<TypeExpr>, Box<TypeExpr>),
    Neg(Box<TypeExpr>),
    Var(String),
    Rec(String, Box<TypeExpr>),
    /// Record type: ordered fields plus an open/closed flag
    /// (`{ l : T, m ?: U }` closed, `{ l : T, .. }` open).
    Record(Vec<(String, FieldExpr)>, bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldExpr {
    pub ty: TypeExpr,
    pub optional: bool,
}

impl TypeExpr {
    pub fn prod(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::Prod(Box::new(l), Box::new(r))
    }
    pub fn arrow(d: TypeExpr, c: TypeExpr) -> TypeExpr {
        TypeExpr::Arrow(Box::new(d), Box::new(c))
    }
    pub fn union(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::Union(Box::new(l), Box::new(r))
    }
    pub fn inter(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::Inter(Box::new(l), Box::new(r))
    }
    pub fn neg(t: TypeExpr) -> TypeExpr {
        TypeExpr::Neg(Box::new(t))
    }
    /// `l \ r`, kept only as a constructor: it builds `l & not r`.
    pub fn diff(l: TypeExpr, r: TypeExpr) -> TypeExpr {
        TypeExpr::inter(l, TypeExpr::neg(r))
    }
    pub fn int() -> TypeExpr {
        TypeExpr::Interval(None, None)
    }
    /// `Bool` abbreviates `` `true | `false ``.
    pub fn bool() -> TypeExpr {
        TypeExpr::union(
            TypeExpr::Tag("true".into()),
            TypeExpr::Tag("false".into()),
        )
    }
    pub fn singleton_int(n: impl Into<BigInt>) -> TypeExpr {
        let n = n.into();
        TypeExpr::Interval(Some(n.clone()), Some(n))
    }
}

/// One parameter group of a function: `;;`-separated groups each hold a
/// comma-separated list of typed parameters.
pub type ParamGroup = Vec<(String, TypeExpr)>;

#[derive(Debug, Clone, PartialEq)]
pub struct FunDef {
    pub groups: Vec<ParamGroup>,
    pub ret: Option<TypeExpr>,
    pub body: Box<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    IntLit(BigInt),
    TagLit(String),
    Var(String),
    Pair(Box<Expr>, Box<Expr>),
    /// `e[0]` or `e[1]`.
    Proj(Box<Expr>, u8),
    Fun(FunDef),
    Multi(Vec<FunDef>),
    /// `f(a, b)`: one application feeds one parameter group.
    App(Box<Expr>, Vec<Expr>),
    /// Single-field record literal `{ l => e }`.
    RecLit(String, Box<Expr>),
    Concat(Box<Expr>, Box<Expr>),
    Delete(Box<Expr>, String),
    /// Field selection `e<l>`.
    Select(Box<Expr>, String),
    Let {
        name: String,
        ann: Option<TypeExpr>,
        bound: Box<Expr>,
        body: Box<Expr>,
    },
}

/// A top-level declaration in an `.stt` file.
#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Type(String, TypeExpr),
    Let(String, Option<TypeExpr>, Expr),
}
