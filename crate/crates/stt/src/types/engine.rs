//! The engine: an interning store of type descriptors plus normalization
//! from surface type expressions.
//!
//! Recursive types get a *slot* — a stable id whose descriptor is computed
//! lazily the first time something inspects it. Laziness matters because a
//! binder's body may mention other binders at connective level (e.g.
//! `rec X = (rec Y = X | `a, Int)`), and contractivity only guarantees that
//! chasing such references terminates, not that any particular fill order
//! works eagerly.

use std::collections::HashMap;

use crate::syntax::ast::TypeExpr;

use super::bdd::Bdd;
use super::descr::{ArrowAtom, Descr, FieldTy, ProdAtom, RecordAtom, TypeId};
use super::leaves::{IntLeaf, TagLeaf};

pub const EMPTY: TypeId = 0;
pub const ANY: TypeId = 1;

/// Algorithm switches. All settings decide the same relation; tests check
/// that verdicts never depend on them.
#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Cache emptiness verdicts across queries.
    pub memo: bool,
    /// In the arrow emptiness loop, skip the domain-difference branch when
    /// only one positive arrow remains and the codomain side is untouched.
    pub strict_subset_opt: bool,
    /// Try two cheap sufficient conditions before recursing in the arrow
    /// emptiness loop.
    pub early_cutoff: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            memo: true,
            strict_subset_opt: true,
            early_cutoff: false,
        }
    }
}

pub struct Engine {
    pub config: Config,
    store: Vec<Descr>,
    intern: HashMap<Descr, TypeId>,
    /// Slots whose descriptor is not computed yet: body + the binder
    /// environment it must be normalized under.
    pending: HashMap<TypeId, (TypeExpr, HashMap<String, TypeId>)>,
    /// Named `type` declarations, visible to every normalization.
    decls: HashMap<String, TypeId>,
    /// Persistent emptiness cache (both polarities), see the subtyping
    /// module for the discipline that keeps it sound.
    pub(crate) empty_memo: HashMap<TypeId, bool>,
    /// Cache for the application operator on types.
    pub(crate) apply_memo: HashMap<(TypeId, TypeId), TypeId>,
}

impl Engine {
    pub fn new(config: Config) -> Self {
        let mut e = Engine {
            config,
            store: Vec::new(),
            intern: HashMap::new(),
            pending: HashMap::new(),
            decls: HashMap::new(),
            empty_memo: HashMap::new(),
            apply_memo: HashMap::new(),
        };
        let empty = e.mk(Descr::empty());
        let any = e.mk(Descr::any());
        assert_eq!((empty, any), (EMPTY, ANY));
        e
    }

    /// Intern a descriptor, reusing an existing id when the same descriptor
    /// was seen before. Structural, not semantic: two ids may still denote
    /// the same set.
    pub fn mk(&mut self, d: Descr) -> TypeId {
        if let Some(&id) = self.intern.get(&d) {
            return id;
        }
        let id = self.store.len();
        self.store.push(d.clone());
        self.intern.insert(d, id);
        id
    }

    /// The descriptor behind an id, forcing a pending slot if needed.
    pub fn descr(&mut self, id: TypeId) -> Descr {
        self.ensure_filled(id);
        self.store[id].clone()
    }

    fn ensure_filled(&mut self, id: TypeId) {
        if let Some((body, env)) = self.pending.remove(&id) {
            let d = self.norm_descr(&body, &env);
            self.store[id] = d;
        }
    }

    /// Register mutually recursive named type declarations. Bodies are
    /// normalized lazily, so declaration order does not matter.
    pub fn load_decls(&mut self, decls: &[(String, TypeExpr)]) {
        for (name, _) in decls {
            let slot = self.store.len();
            self.store.push(Descr::empty());
            self.decls.insert(name.clone(), slot);
        }
        for (name, body) in decls {
            let slot = self.decls[name];
            self.pending.insert(slot, (body.clone(), HashMap::new()));
        }
    }

    pub fn decl(&self, name: &str) -> Option<TypeId> {
        self.decls.get(name).copied()
    }

    /// Normalize a (validated) type expression to an id.
    pub fn norm(&mut self, t: &TypeExpr) -> TypeId {
        self.norm_in(t, &HashMap::new())
    }

    fn norm_in(&mut self, t: &TypeExpr, env: &HashMap<String, TypeId>) -> TypeId {
        match t {
            TypeExpr::Var(x) => env
                .get(x)
                .copied()
                .or_else(|| self.decl(x))
                .unwrap_or_else(|| panic!("unbound variable `{x}` survived validation")),
            TypeExpr::Rec(name, body) => {
                let slot = self.store.len();
                self.store.push(Descr::empty());
                let mut inner = env.clone();
                inner.insert(name.clone(), slot);
                self.pending.insert(slot, ((**body).clone(), inner));
                slot
            }
            _ => {
                let d = self.norm_descr(t, env);
                self.mk(d)
            }
        }
    }

    /// Normalize to a descriptor. Connectives recurse here directly — which
    /// may force other slots, but never the one being filled, because
    /// validated recursion always crosses a constructor first.
    fn norm_descr(&mut self, t: &TypeExpr, env: &HashMap<String, TypeId>) -> Descr {
        match t {
            TypeExpr::Any => Descr::any(),
            TypeExpr::Empty => Descr::empty(),
            TypeExpr::Tag(name) => Descr::from_tags(TagLeaf::single(name)),
            TypeExpr::Interval(lo, hi) => {
                Descr::from_ints(IntLeaf::interval(lo.clone(), hi.clone()))
            }
            TypeExpr::Prod(a, b) => {
                let (na, nb) = (self.norm_in(a, env), self.norm_in(b, env));
                Descr::from_prod(Bdd::atom(ProdAtom(na, nb)))
            }
            TypeExpr::Arrow(a, b) => {
                let (na, nb) = (self.norm_in(a, env), self.norm_in(b, env));
                Descr::from_arrw(Bdd::atom(ArrowAtom(na, nb)))
            }
            TypeExpr::Record(fields, open) => {
                let mut map = std::collections::BTreeMap::new();
                for (label, f) in fields {
                    let ty = self.norm_in(&f.ty, env);
                    map.insert(
                        label.clone(),
                        FieldTy {
                            ty,
                            opt: f.optional,
                        },
                    );
                }
                let default = if *open {
                    FieldTy { ty: ANY, opt: true }
                } else {
                    FieldTy::bot()
                };
                Descr::from_recd(Bdd::atom(RecordAtom {
                    fields: map,
                    default,
                }))
            }
            TypeExpr::Union(a, b) => {
                let da = self.norm_descr(a, env);
                let db = self.norm_descr(b, env);
                da.union(&db)
            }
            TypeExpr::Inter(a, b) => {
                let da = self.norm_descr(a, env);
                let db = self.norm_descr(b, env);
                da.inter(&db)
            }
            TypeExpr::Neg(a) => self.norm_descr(a, env).neg(),
            TypeExpr::Var(_) => {
                let id = self.norm_in(t, env);
                self.descr(id)
            }
            TypeExpr::Rec(_, _) => {
                let id = self.norm_in(t, env);
                self.descr(id)
            }
        }
    }

    // Set operations on ids.

    pub fn union(&mut self, a: TypeId, b: TypeId) -> TypeId {
        let (da, db) = (self.descr(a), self.descr(b));
        self.mk(da.union(&db))
    }

    pub fn inter(&mut self, a: TypeId, b: TypeId) -> TypeId {
        let (da, db) = (self.descr(a), self.descr(b));
        self.mk(da.inter(&db))
    }

    pub fn diff(&mut self, a: TypeId, b: TypeId) -> TypeId {
        let (da, db) = (self.descr(a), self.descr(b));
        self.mk(da.diff(&db))
    }

    pub fn neg(&mut self, a: TypeId) -> TypeId {
        let d = self.descr(a).neg();
        self.mk(d)
    }

    /// Number of interned descriptors (diagnostics only).
    pub fn size(&self) -> usize {
        self.store.len()
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Config::default())
    }
}
