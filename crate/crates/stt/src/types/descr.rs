//! Internal type descriptors.
//!
//! A type denotes a set of values drawn from five disjoint kinds: tags,
//! integers, pairs, functions, and records. A descriptor keeps one component
//! per kind — a leaf set for the base kinds and a decision diagram over
//! constructor atoms for the others — and denotes the union of its
//! components. Set operations are componentwise, since values of different
//! kinds never overlap.

use std::collections::BTreeMap;

use super::bdd::Bdd;
use super::leaves::{IntLeaf, TagLeaf};

/// Handle to an interned descriptor in an [`Engine`](super::engine::Engine).
pub type TypeId = usize;

/// What a record holds at one label: a set of values, plus whether the
/// field may also be absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldTy {
    pub ty: TypeId,
    pub opt: bool,
}

impl FieldTy {
    /// The absent field: no value is allowed, absence is.
    pub fn bot() -> Self {
        FieldTy {
            ty: super::engine::EMPTY,
            opt: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProdAtom(pub TypeId, pub TypeId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowAtom(pub TypeId, pub TypeId);

/// A record atom maps finitely many labels to field sets and everything
/// else to `default`. Surface syntax only produces `default` of absent
/// (closed records) or anything-or-absent (open records); internal record
/// operations use other defaults transiently.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordAtom {
    pub fields: BTreeMap<String, FieldTy>,
    pub default: FieldTy,
}

impl RecordAtom {
    pub fn field(&self, label: &str) -> FieldTy {
        self.fields.get(label).copied().unwrap_or(self.default)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Descr {
    pub tags: TagLeaf,
    pub ints: IntLeaf,
    pub prod: Bdd<ProdAtom>,
    pub arrw: Bdd<ArrowAtom>,
    pub recd: Bdd<RecordAtom>,
}

impl Descr {
    pub fn empty() -> Self {
        Descr {
            tags: TagLeaf::empty(),
            ints: IntLeaf::empty(),
            prod: Bdd::False,
            arrw: Bdd::False,
            recd: Bdd::False,
        }
    }

    pub fn any() -> Self {
        Descr {
            tags: TagLeaf::any(),
            ints: IntLeaf::any(),
            prod: Bdd::True,
            arrw: Bdd::True,
            recd: Bdd::True,
        }
    }

    pub fn from_tags(tags: TagLeaf) -> Self {
        Descr {
            tags,
            ..Descr::empty()
        }
    }

    pub fn from_ints(ints: IntLeaf) -> Self {
        Descr {
            ints,
            ..Descr::empty()
        }
    }

    pub fn from_prod(b: Bdd<ProdAtom>) -> Self {
        Descr {
            prod: b,
            ..Descr::empty()
        }
    }

    pub fn from_arrw(b: Bdd<ArrowAtom>) -> Self {
        Descr {
            arrw: b,
            ..Descr::empty()
        }
    }

    pub fn from_recd(b: Bdd<RecordAtom>) -> Self {
        Descr {
            recd: b,
            ..Descr::empty()
        }
    }

    pub fn union(&self, o: &Descr) -> Descr {
        Descr {
            tags: self.tags.union(&o.tags),
            ints: self.ints.union(&o.ints),
            prod: self.prod.union(&o.prod),
            arrw: self.arrw.union(&o.arrw),
            recd: self.recd.union(&o.recd),
        }
    }

    pub fn inter(&self, o: &Descr) -> Descr {
        Descr {
            tags: self.tags.inter(&o.tags),
            ints: self.ints.inter(&o.ints),
            prod: self.prod.inter(&o.prod),
            arrw: self.arrw.inter(&o.arrw),
            recd: self.recd.inter(&o.recd),
        }
    }

    pub fn diff(&self, o: &Descr) -> Descr {
        Descr {
            tags: self.tags.diff(&o.tags),
            ints: self.ints.diff(&o.ints),
            prod: self.prod.diff(&o.prod),
            arrw: self.arrw.diff(&o.arrw),
            recd: self.recd.diff(&o.recd),
        }
    }

    pub fn neg(&self) -> Descr {
        Descr {
            tags: self.tags.neg(),
            ints: self.ints.neg(),
            prod: self.prod.neg(),
            arrw: self.arrw.neg(),
            recd: self.recd.neg(),
        }
    }

    /// Syntactic bottom: every component is the empty diagram/leaf. The
    /// converse does not hold — a non-`False` diagram can still denote the
    /// empty set; deciding that is the emptiness procedure's job.
    pub fn is_syntactically_empty(&self) -> bool {
        self.tags.is_empty()
            && self.ints.is_empty()
            && self.prod.is_false()
            && self.arrw.is_false()
            && self.recd.is_false()
    }
}
