//! Example values for non-empty types.
//!
//! `sample` is deterministic: integers come from the leftmost interval
//! (preferring the value nearest zero on unbounded ones), tags are the
//! lexicographically least (or the least `#fresh<n>` name for cofinite
//! sets), and structured witnesses take the leftmost viable branch of the
//! same decompositions the emptiness check uses. Function types cannot be
//! inhabited by a finite printable value, so they are witnessed by an
//! opaque `<fun: T>` token carrying the rendered type.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;

use crate::types::descr::{FieldTy, RecordAtom};
use crate::types::{Descr, Engine, TypeId, ANY, EMPTY};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Int(BigInt),
    Tag(String),
    Pair(Box<Witness>, Box<Witness>),
    Record(BTreeMap<String, Witness>),
    Fun(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Int(n) => write!(f, "{n}"),
            Witness::Tag(t) => write!(f, "`{t}"),
            Witness::Pair(a, b) => write!(f, "({a}, {b})"),
            Witness::Record(m) => {
                write!(f, "{{")?;
                for (i, (l, w)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{l} => {w}")?;
                }
                write!(f, "}}")
            }
            Witness::Fun(ty) => write!(f, "<fun: {ty}>"),
        }
    }
}

impl Engine {
    /// A canonical inhabitant of `t`, or `None` when `t` is empty.
    pub fn sample(&mut self, t: TypeId) -> Option<Witness> {
        let mut guard = HashSet::new();
        self.sample_rec(t, &mut guard)
    }

    fn sample_rec(&mut self, t: TypeId, guard: &mut HashSet<TypeId>) -> Option<Witness> {
        if self.is_empty(t) || !guard.insert(t) {
            return None;
        }
        let d = self.descr(t);
        let w = self.sample_descr(&d, guard);
        guard.remove(&t);
        w
    }

    fn sample_descr(&mut self, d: &Descr, guard: &mut HashSet<TypeId>) -> Option<Witness> {
        if let Some(tag) = d.tags.sample() {
            return Some(Witness::Tag(tag));
        }
        if let Some(n) = d.ints.sample() {
            return Some(Witness::Int(n));
        }
        // Pairs: per path, pick the leftmost split of the negatives between
        // the two components that leaves both sides inhabited.
        for (pos, neg) in d.prod.paths() {
            let (mut s1, mut s2) = (ANY, ANY);
            for a in &pos {
                s1 = self.inter(s1, a.0);
                s2 = self.inter(s2, a.1);
            }
            for mask in 0..(1u32 << neg.len()) {
                let (mut a1, mut a2) = (s1, s2);
                for (i, n) in neg.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        a1 = self.diff(a1, n.0);
                    } else {
                        a2 = self.diff(a2, n.1);
                    }
                }
                if self.is_empty(a1) || self.is_empty(a2) {
                    continue;
                }
                if let (Some(w1), Some(w2)) =
                    (self.sample_rec(a1, guard), self.sample_rec(a2, guard))
                {
                    return Some(Witness::Pair(Box::new(w1), Box::new(w2)));
                }
            }
        }
        // Functions: build the one-path type back and render it.
        for (pos, neg) in d.arrw.paths() {
            let mut b = crate::types::bdd::Bdd::True;
            for a in &pos {
                b = b.inter(&crate::types::bdd::Bdd::atom(*a));
            }
            for a in &neg {
                b = b.diff(&crate::types::bdd::Bdd::atom(*a));
            }
            let id = self.mk(Descr::from_arrw(b));
            if !self.is_empty(id) {
                let positive = if pos.is_empty() {
                    "Empty -> Any".to_string()
                } else {
                    let arrows = pos
                        .iter()
                        .map(|a| {
                            let l = self.render(a.0);
                            let r = self.render(a.1);
                            format!("({l}) -> ({r})")
                        })
                        .collect::<Vec<_>>();
                    arrows.join(" & ")
                };
                return Some(Witness::Fun(positive));
            }
        }
        // Records: per path, pick the leftmost assignment of negatives to
        // the label (or a fresh one) at which they will be escaped.
        for (pos, neg) in d.recd.paths() {
            if let Some(w) = self.sample_record_path(&pos, &neg, guard) {
                return Some(w);
            }
        }
        None
    }

    fn sample_record_path(
        &mut self,
        pos: &[RecordAtom],
        neg: &[RecordAtom],
        guard: &mut HashSet<TypeId>,
    ) -> Option<Witness> {
        let mut labels: BTreeSet<String> = BTreeSet::new();
        for a in pos.iter().chain(neg.iter()) {
            labels.extend(a.fields.keys().cloned());
        }
        let labels: Vec<String> = labels.into_iter().collect();
        let top = FieldTy { ty: ANY, opt: true };
        let mut pos_at = Vec::new();
        for l in &labels {
            let f = pos
                .iter()
                .fold(top, |acc, a| {
                    let fl = a.field(l);
                    self.field_inter(acc, fl)
                });
            pos_at.push(f);
        }
        let pos_def = pos.iter().fold(top, |acc, a| {
            let d = a.default;
            self.field_inter(acc, d)
        });
        // A finite record is absent at almost every label, so the positive
        // default must tolerate absence.
        if !pos_def.opt {
            return None;
        }
        let base = labels.len() + 1;
        let count = base.pow(neg.len() as u32);
        'iota: for mut code in 0..count {
            let mut iota = Vec::with_capacity(neg.len());
            for _ in 0..neg.len() {
                iota.push(code % base);
                code /= base;
            }
            // Per explicit label, what must the field avoid?
            let mut fields: BTreeMap<String, Witness> = BTreeMap::new();
            for (li, l) in labels.iter().enumerate() {
                let mut avoid = FieldTy {
                    ty: EMPTY,
                    opt: false,
                };
                for (ni, n) in neg.iter().enumerate() {
                    if iota[ni] == li {
                        let fl = n.field(l);
                        avoid = self.field_union(avoid, fl);
                    }
                }
                if pos_at[li].opt && !avoid.opt {
                    // Absence is allowed by the positives and escapes every
                    // negative mapped here, so leave the field out.
                    continue;
                }
                let present_ty = self.diff(pos_at[li].ty, avoid.ty);
                match self.sample_rec(present_ty, guard) {
                    Some(w) => {
                        fields.insert(l.clone(), w);
                    }
                    None => continue 'iota,
                }
            }
            // Negatives escaped at an unlisted label.
            let mut fresh = 0usize;
            for (ni, n) in neg.iter().enumerate() {
                if iota[ni] != labels.len() {
                    continue;
                }
                let nd = n.default;
                if !nd.opt {
                    // The record is absent somewhere the negative demands a
                    // value, so it already escapes it.
                    continue;
                }
                let escape_ty = self.diff(pos_def.ty, nd.ty);
                match self.sample_rec(escape_ty, guard) {
                    Some(w) => {
                        let mut name = format!("fresh{fresh}");
                        while labels.contains(&name) || fields.contains_key(&name) {
                            fresh += 1;
                            name = format!("fresh{fresh}");
                        }
                        fresh += 1;
                        fields.insert(name, w);
                    }
                    None => continue 'iota,
                }
            }
            return Some(Witness::Record(fields));
        }
        None
    }
}
