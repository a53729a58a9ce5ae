//! A strict, call-by-value evaluator.
//!
//! Evaluation is defined on type-checked programs, so most runtime errors
//! are unreachable; they are still reported rather than panicking, both for
//! robustness and because tests deliberately run ill-typed terms to observe
//! that the type system would have caught them.
//!
//! Overloaded functions dispatch on the *most specific* branch: among the
//! branches whose domain contains the argument, the one whose domain is a
//! subtype of all the others. Formation checking guarantees this branch
//! exists and is unique whenever dispatch is reached from well-typed code.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::syntax::ast::{Decl, Expr, FunDef};
use crate::types::bdd::Bdd;
use crate::types::descr::{Descr, FieldTy, ProdAtom, RecordAtom};
use crate::types::leaves::{IntLeaf, TagLeaf};
use crate::types::{Engine, TypeId};

/// Runtime values. Functions close over their defining environment; a
/// recursive binding closes over itself by name.
#[derive(Debug, Clone)]
pub enum Value {
    Int(BigInt),
    Tag(String),
    Pair(Rc<(Value, Value)>),
    Record(Rc<BTreeMap<String, Value>>),
    Closure(Rc<Closure>),
}

#[derive(Debug)]
pub struct Closure {
    pub branches: Vec<FunDef>,
    pub env: Env,
    /// Name the closure is bound to, for self-reference.
    pub rec_name: Option<String>,
}

pub type Env = std::collections::HashMap<String, Value>;

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Tag(t) => write!(f, "`{t}"),
            Value::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Value::Record(r) => {
                write!(f, "{{")?;
                for (i, (k, v)) in r.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k} => {v}")?;
                }
                write!(f, "}}")
            }
            Value::Closure(_) => write!(f, "<fun>"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}` at runtime")]
    UnboundVar(String),
    #[error("applied a non-function value {0}")]
    NotAFunction(String),
    #[error("projected a non-pair value {0}")]
    NotAPair(String),
    #[error("record operation on a non-record value {0}")]
    NotARecord(String),
    #[error("field `{0}` absent at runtime")]
    MissingField(String),
    #[error("no branch accepts the argument {0}")]
    NoMatchingBranch(String),
    #[error("call arity mismatch")]
    Arity,
    #[error("evaluation depth limit exceeded")]
    DepthExceeded,
}

const DEPTH_LIMIT: usize = 256;

/// The best static type of a runtime value, used for dispatch. Exact for
/// data; for closures it is the type declared by the annotations (or the
/// top of the function kind where annotations are missing), which is what
/// dispatch on function arguments can reasonably observe.
pub fn value_type(eng: &mut Engine, v: &Value) -> TypeId {
    match v {
        Value::Int(n) => eng.mk(Descr::from_ints(IntLeaf::single(n))),
        Value::Tag(t) => eng.mk(Descr::from_tags(TagLeaf::single(t))),
        Value::Pair(p) => {
            let (a, b) = (value_type(eng, &p.0), value_type(eng, &p.1));
            eng.mk(Descr::from_prod(Bdd::atom(ProdAtom(a, b))))
        }
        Value::Record(r) => {
            let mut fields = BTreeMap::new();
            for (k, field) in r.iter() {
                let t = value_type(eng, field);
                fields.insert(k.clone(), FieldTy { ty: t, opt: false });
            }
            let atom = RecordAtom {
                fields,
                default: FieldTy::bot(),
            };
            eng.mk(Descr::from_recd(Bdd::atom(atom)))
        }
        Value::Closure(c) => {
            let mut t = eng.any_arrow();
            for b in &c.branches {
                if let Some(sig) = crate::typing::signature(eng, b) {
                    t = eng.inter(t, sig);
                }
            }
            t
        }
    }
}

fn branch_domain(eng: &mut Engine, b: &FunDef) -> TypeId {
    let tys: Vec<TypeId> = b.groups[0].iter().map(|(_, ty)| eng.norm(ty)).collect();
    let mut it = tys.into_iter().rev();
    let mut t = it.next().expect("empty parameter group");
    for s in it {
        t = eng.mk(Descr::from_prod(Bdd::atom(ProdAtom(s, t))));
    }
    t
}

struct Evaluator<'a> {
    eng: &'a mut Engine,
    depth: usize,
}

impl<'a> Evaluator<'a> {
    fn eval(&mut self, env: &Env, e: &Expr) -> Result<Value, EvalError> {
        self.depth += 1;
        if self.depth > DEPTH_LIMIT {
            return Err(EvalError::DepthExceeded);
        }
        let r = self.eval_inner(env, e);
        self.depth -= 1;
        r
    }

    fn eval_inner(&mut self, env: &Env, e: &Expr) -> Result<Value, EvalError> {
        match e {
            Expr::IntLit(n) => Ok(Value::Int(n.clone())),
            Expr::TagLit(t) => Ok(Value::Tag(t.clone())),
            Expr::Var(x) => env
                .get(x)
                .cloned()
                .ok_or_else(|| EvalError::UnboundVar(x.clone())),
            Expr::Pair(a, b) => {
                let (va, vb) = (self.eval(env, a)?, self.eval(env, b)?);
                Ok(Value::Pair(Rc::new((va, vb))))
            }
            Expr::Proj(e1, side) => match self.eval(env, e1)? {
                Value::Pair(p) => Ok(if *side == 0 {
                    p.0.clone()
                } else {
                    p.1.clone()
                }),
                v => Err(EvalError::NotAPair(v.to_string())),
            },
            Expr::RecLit(label, e1) => {
                let v = self.eval(env, e1)?;
                let mut m = BTreeMap::new();
                m.insert(label.clone(), v);
                Ok(Value::Record(Rc::new(m)))
            }
            Expr::Concat(a, b) => {
                let (va, vb) = (self.eval(env, a)?, self.eval(env, b)?);
                match (va, vb) {
                    (Value::Record(ra), Value::Record(rb)) => {
                        let mut m = (*ra).clone();
                        for (k, v) in rb.iter() {
                            m.insert(k.clone(), v.clone());
                        }
                        Ok(Value::Record(Rc::new(m)))
                    }
                    (Value::Record(_), v) | (v, _) => Err(EvalError::NotARecord(v.to_string())),
                }
            }
            Expr::Delete(e1, label) => match self.eval(env, e1)? {
                Value::Record(r) => {
                    let mut m = (*r).clone();
                    m.remove(label);
                    Ok(Value::Record(Rc::new(m)))
                }
                v => Err(EvalError::NotARecord(v.to_string())),
            },
            Expr::Select(e1, label) => match self.eval(env, e1)? {
                Value::Record(r) => r
                    .get(label)
                    .cloned()
                    .ok_or_else(|| EvalError::MissingField(label.clone())),
                v => Err(EvalError::NotARecord(v.to_string())),
            },
            Expr::Fun(f) => Ok(Value::Closure(Rc::new(Closure {
                branches: vec![f.clone()],
                env: env.clone(),
                rec_name: None,
            }))),
            Expr::Multi(bs) => Ok(Value::Closure(Rc::new(Closure {
                branches: bs.clone(),
                env: env.clone(),
                rec_name: None,
            }))),
            Expr::App(f, args) => {
                let vf = self.eval(env, f)?;
                let mut vargs = Vec::new();
                for a in args {
                    vargs.push(self.eval(env, a)?);
                }
                let mut it = vargs.into_iter().rev();
                let mut va = it.next().ok_or(EvalError::Arity)?;
                for v in it {
                    va = Value::Pair(Rc::new((v, va)));
                }
                self.apply(vf, va)
            }
            Expr::Let {
                name, bound, body, ..
            } => {
                let vb = self.eval(env, bound)?;
                let mut inner = env.clone();
                inner.insert(name.clone(), vb);
                self.eval(&inner, body)
            }
        }
    }

    fn apply(&mut self, vf: Value, va: Value) -> Result<Value, EvalError> {
        let c = match &vf {
            Value::Closure(c) => c.clone(),
            v => return Err(EvalError::NotAFunction(v.to_string())),
        };
        let vt = value_type(self.eng, &va);
        // Most specific branch whose domain contains the argument.
        let mut accepting = Vec::new();
        for (i, b) in c.branches.iter().enumerate() {
            let dom = branch_domain(self.eng, b);
            if self.eng.is_subtype(vt, dom) {
                accepting.push((i, dom));
            }
        }
        let chosen = accepting
            .iter()
            .find(|(_, d)| {
                accepting
                    .iter()
                    .all(|(_, d2)| self.eng.is_subtype(*d, *d2))
            })
            .map(|(i, _)| *i)
            .ok_or_else(|| EvalError::NoMatchingBranch(va.to_string()))?;
        let b = &c.branches[chosen];

        let mut inner = c.env.clone();
        if let Some(name) = &c.rec_name {
            inner.insert(name.clone(), vf.clone());
        }
        bind_group(&mut inner, &b.groups[0], va)?;
        if b.groups.len() > 1 {
            let rest = FunDef {
                groups: b.groups[1..].to_vec(),
                ret: b.ret.clone(),
                body: b.body.clone(),
            };
            return Ok(Value::Closure(Rc::new(Closure {
                branches: vec![rest],
                env: inner,
                rec_name: None,
            })));
        }
        self.eval(&inner, &b.body)
    }
}

/// Bind the parameters of one group against a right-nested tuple value.
fn bind_group(
    env: &mut Env,
    group: &[(String, crate::syntax::ast::TypeExpr)],
    mut v: Value,
) -> Result<(), EvalError> {
    for (i, (name, _)) in group.iter().enumerate() {
        if i + 1 == group.len() {
            env.insert(name.clone(), v);
            return Ok(());
        }
        match v {
            Value::Pair(p) => {
                env.insert(name.clone(), p.0.clone());
                v = p.1.clone();
            }
            _ => return Err(EvalError::Arity),
        }
    }
    Err(EvalError::Arity)
}

/// Evaluate one expression in an environment.
pub fn eval(eng: &mut Engine, env: &Env, e: &Expr) -> Result<Value, EvalError> {
    Evaluator { eng, depth: 0 }.eval(env, e)
}

/// Run a whole program, producing the value of each binding in order.
/// Function bindings see themselves recursively.
pub fn run_program(eng: &mut Engine, decls: &[Decl]) -> Result<Vec<(String, Value)>, EvalError> {
    run_program_in(eng, decls, Env::new())
}

/// Like [`run_program`], starting from an existing environment (used by
/// interactive sessions, where bindings accumulate).
pub fn run_program_in(
    eng: &mut Engine,
    decls: &[Decl],
    mut env: Env,
) -> Result<Vec<(String, Value)>, EvalError> {
    let tydecls: Vec<(String, crate::syntax::ast::TypeExpr)> = decls
        .iter()
        .filter_map(|d| match d {
            Decl::Type(n, t) if eng.decl(n).is_none() => Some((n.clone(), t.clone())),
            _ => None,
        })
        .collect();
    eng.load_decls(&tydecls);
    let mut out = Vec::new();
    for d in decls {
        if let Decl::Let(name, _, e) = d {
            let v = match e {
                Expr::Fun(f) => Value::Closure(Rc::new(Closure {
                    branches: vec![f.clone()],
                    env: env.clone(),
                    rec_name: Some(name.clone()),
                })),
                Expr::Multi(bs) => Value::Closure(Rc::new(Closure {
                    branches: bs.clone(),
                    env: env.clone(),
                    rec_name: Some(name.clone()),
                })),
                _ => eval(eng, &env, e)?,
            };
            env.insert(name.clone(), v.clone());
            out.push((name.clone(), v));
        }
    }
    Ok(out)
}
