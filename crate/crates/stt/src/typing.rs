//! Expression typing.
//!
//! Types of expressions are computed bottom-up. Each elimination form has a
//! type-level operator: application, projection, record selection /
//! concatenation / deletion. All of them work on the disjunctive normal
//! form of the relevant kind and are exact except where noted.
//!
//! Overloaded functions (`multi`) get two formation checks before their
//! intersection type is granted: every overlap of branch domains must have
//! a unique most-specific handler (no ambiguity), and a branch whose domain
//! refines another's must also refine its result (specialization).

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::syntax::ast::{Decl, Expr, FunDef};
use crate::types::bdd::Bdd;
use crate::types::descr::{ArrowAtom, Descr, FieldTy, ProdAtom, RecordAtom};
use crate::types::{Engine, TypeId, ANY, EMPTY};

/// Applying a function type enumerates subsets of the arrows in one
/// intersection; beyond this many arrows the enumeration is refused rather
/// than attempted.
pub const ARROW_LIMIT: usize = 12;

/// Reserved tag used internally by field deletion; not expressible in
/// source programs (user tags cannot start with `#`).
const DELETED_TAG: &str = "#deleted";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
    #[error("expected a function, found a value of type {0}")]
    NotAFunction(String),
    #[error("expected a pair, found a value of type {0}")]
    NotAPair(String),
    #[error("expected a record, found a value of type {0}")]
    NotARecord(String),
    #[error("argument of type {arg} is not accepted: the domain is {dom}")]
    ArgumentType {
        dom: String,
        arg: String,
        /// A value in the argument type that the domain rejects.
        witness: Option<String>,
    },
    #[error("field `{label}` may be undefined in a value of type {ty}")]
    PossiblyUndefined { label: String, ty: String },
    #[error("type {got} is not a subtype of the annotation {expected}")]
    Annotation {
        expected: String,
        got: String,
        /// A value in the computed type that the annotation rejects.
        witness: Option<String>,
    },
    #[error(
        "ambiguous dispatch: branches {i} and {j} both accept {witness} \
         and no branch handles their whole overlap most specifically"
    )]
    Ambiguity { i: usize, j: usize, witness: String },
    #[error(
        "branch {i} specializes the domain of branch {j} but its result \
         type {ti} is not a subtype of {tj}"
    )]
    Specialization {
        i: usize,
        j: usize,
        ti: String,
        tj: String,
    },
    #[error("function type too complex: {arrows} arrows in one intersection (limit {limit})")]
    TooComplex { arrows: usize, limit: usize },
}

impl Engine {
    fn arrow_ty(&mut self, s: TypeId, t: TypeId) -> TypeId {
        self.mk(Descr::from_arrw(Bdd::atom(ArrowAtom(s, t))))
    }

    fn prod_ty(&mut self, s: TypeId, t: TypeId) -> TypeId {
        self.mk(Descr::from_prod(Bdd::atom(ProdAtom(s, t))))
    }

    /// Top of the function kind.
    pub fn any_arrow(&mut self) -> TypeId {
        self.arrow_ty(EMPTY, ANY)
    }

    /// Top of the pair kind.
    pub fn any_prod(&mut self) -> TypeId {
        self.prod_ty(ANY, ANY)
    }

    /// Top of the record kind.
    pub fn any_record(&mut self) -> TypeId {
        self.mk(Descr::from_recd(Bdd::True))
    }

    /// The set of arguments a value of (function) type `t` certainly
    /// accepts: intersecting over the summands of the normal form, the
    /// union of the positive domains of each. Summands denoting the empty
    /// set contribute nothing and are skipped — keeping them would shrink
    /// the domain spuriously.
    pub fn dom(&mut self, t: TypeId) -> TypeId {
        let d = self.descr(t);
        let mut out = ANY;
        for (pos, neg) in d.arrw.paths() {
            if self.arrow_path_empty(&pos, &neg) {
                continue;
            }
            let mut u = EMPTY;
            for ArrowAtom(s, _) in &pos {
                u = self.union(u, *s);
            }
            out = self.inter(out, u);
        }
        out
    }

    fn arrow_path_empty(&mut self, pos: &[ArrowAtom], neg: &[ArrowAtom]) -> bool {
        let mut b = Bdd::True;
        for a in pos {
            b = b.inter(&Bdd::atom(*a));
        }
        for a in neg {
            b = b.diff(&Bdd::atom(*a));
        }
        let id = self.mk(Descr::from_arrw(b));
        self.is_empty(id)
    }

    /// Result type of applying a value of type `tf` to one of type `ta`,
    /// assuming `ta <: dom(tf)`. Per summand, the union over the subsets Q
    /// of the positive arrows that the argument may escape (the argument is
    /// not inside the domains of Q alone) of the intersection of the
    /// remaining result types. Negative arrows say nothing about results.
    pub fn apply(&mut self, tf: TypeId, ta: TypeId) -> Result<TypeId, TypeError> {
        if let Some(&r) = self.apply_memo.get(&(tf, ta)) {
            return Ok(r);
        }
        if self.is_empty(ta) {
            return Ok(EMPTY);
        }
        let d = self.descr(tf);
        let mut result = EMPTY;
        for (pos, neg) in d.arrw.paths() {
            if self.arrow_path_empty(&pos, &neg) {
                continue;
            }
            if pos.len() > ARROW_LIMIT {
                return Err(TypeError::TooComplex {
                    arrows: pos.len(),
                    limit: ARROW_LIMIT,
                });
            }
            for q in 0..(1u32 << pos.len()) {
                if q == (1 << pos.len()) - 1 {
                    continue; // Q must be a proper subset
                }
                let mut qdom = EMPTY;
                for (i, ArrowAtom(s, _)) in pos.iter().enumerate() {
                    if q & (1 << i) != 0 {
                        qdom = self.union(qdom, *s);
                    }
                }
                if self.is_subtype(ta, qdom) {
                    continue;
                }
                let mut acc = ANY;
                for (i, ArrowAtom(_, r)) in pos.iter().enumerate() {
                    if q & (1 << i) == 0 {
                        acc = self.inter(acc, *r);
                    }
                }
                result = self.union(result, acc);
            }
        }
        self.apply_memo.insert((tf, ta), result);
        Ok(result)
    }

    /// Type of `e[side]` for `e` of (pair) type `t`. Per summand, the
    /// negatives distribute into the chosen component for every subset N′,
    /// but a subset only counts when the complementary component is
    /// non-empty for it.
    pub fn proj(&mut self, t: TypeId, side: u8) -> TypeId {
        let d = self.descr(t);
        let mut result = EMPTY;
        for (pos, neg) in d.prod.paths() {
            let (mut s1, mut s2) = (ANY, ANY);
            for ProdAtom(a, b) in &pos {
                s1 = self.inter(s1, *a);
                s2 = self.inter(s2, *b);
            }
            let (keep, other) = if side == 0 { (s1, s2) } else { (s2, s1) };
            for mask in 0..(1u32 << neg.len()) {
                // The chosen component excludes the negatives in N′; the
                // other component must still be inhabited against the rest.
                let mut piece = keep;
                let mut complement = other;
                for (i, n) in neg.iter().enumerate() {
                    let (nk, no) = if side == 0 { (n.0, n.1) } else { (n.1, n.0) };
                    if mask & (1 << i) != 0 {
                        piece = self.diff(piece, nk);
                    } else {
                        complement = self.diff(complement, no);
                    }
                }
                if self.is_empty(complement) {
                    continue;
                }
                result = self.union(result, piece);
            }
        }
        result
    }

    // ---- record type operators ----

    /// Decompose a type below the record kind into a union of record
    /// atoms. Exact whenever each negative default absorbs the positive
    /// default; otherwise the negative cannot be expressed by finitely
    /// many atoms (it would need "differs somewhere unlisted") and is
    /// dropped, which over-approximates — safe for result types.
    fn record_atoms(&mut self, t: TypeId) -> Vec<RecordAtom> {
        let d = self.descr(t);
        let mut out = Vec::new();
        'path: for (pos, neg) in d.recd.paths() {
            let mut labels: std::collections::BTreeSet<String> = Default::default();
            for a in &pos {
                labels.extend(a.fields.keys().cloned());
            }
            let top = FieldTy { ty: ANY, opt: true };
            let mut fields = BTreeMap::new();
            for l in &labels {
                let f = pos.iter().fold(top, |acc, a| {
                    let fl = a.field(l);
                    self.field_inter(acc, fl)
                });
                if self.field_is_bot(f) {
                    continue 'path;
                }
                fields.insert(l.clone(), f);
            }
            let default = pos.iter().fold(top, |acc, a| {
                let fd = a.default;
                self.field_inter(acc, fd)
            });
            if self.field_is_bot(default) {
                continue 'path;
            }
            let mut atoms = vec![RecordAtom { fields, default }];
            for n in &neg {
                let mut next = Vec::new();
                for a in atoms {
                    let exact = {
                        let (ad, nd) = (a.default, n.default);
                        (!ad.opt || nd.opt) && self.is_subtype(ad.ty, nd.ty)
                    };
                    if !exact {
                        // Keep the atom unrefined (over-approximation).
                        next.push(a);
                        continue;
                    }
                    let mut ls: std::collections::BTreeSet<&String> =
                        a.fields.keys().collect();
                    ls.extend(n.fields.keys());
                    let ls: Vec<String> = ls.into_iter().cloned().collect();
                    for l in ls {
                        let af = a.field(&l);
                        let nf = n.field(&l);
                        let f = FieldTy {
                            ty: self.diff(af.ty, nf.ty),
                            opt: af.opt && !nf.opt,
                        };
                        if self.field_is_bot(f) {
                            continue;
                        }
                        let mut refined = a.clone();
                        refined.fields.insert(l, f);
                        next.push(refined);
                    }
                }
                atoms = next;
            }
            out.extend(atoms);
        }
        out
    }

    fn field_is_bot(&mut self, f: FieldTy) -> bool {
        !f.opt && self.is_empty(f.ty)
    }

    fn atoms_to_type(&mut self, atoms: Vec<RecordAtom>) -> TypeId {
        let mut b = Bdd::False;
        for a in atoms {
            b = b.union(&Bdd::atom(a));
        }
        self.mk(Descr::from_recd(b))
    }

    /// Type of `e<label>` for `e` of (record) type `t`. Errors if any atom
    /// of the decomposition admits absence of the field.
    pub fn rec_select(&mut self, t: TypeId, label: &str) -> Result<TypeId, TypeError> {
        let atoms = self.record_atoms(t);
        let mut f = FieldTy {
            ty: EMPTY,
            opt: false,
        };
        for a in &atoms {
            let fl = a.field(label);
            f = self.field_union(f, fl);
        }
        if f.opt && !atoms.is_empty() {
            return Err(TypeError::PossiblyUndefined {
                label: label.to_string(),
                ty: self.render(t),
            });
        }
        Ok(f.ty)
    }

    /// Merge one field: keep the left unless it meets the selector, in
    /// which case what remains of it unions with the right.
    fn merge_field(&mut self, f1: FieldTy, f2: FieldTy, sel: Option<TypeId>) -> FieldTy {
        match sel {
            // Selector is the absence marker itself.
            None => {
                if !f1.opt {
                    f1
                } else {
                    FieldTy {
                        ty: self.union(f1.ty, f2.ty),
                        opt: f2.opt,
                    }
                }
            }
            Some(c) => {
                let i = self.inter(f1.ty, c);
                if self.is_empty(i) {
                    f1
                } else {
                    let rest = self.diff(f1.ty, c);
                    FieldTy {
                        ty: self.union(rest, f2.ty),
                        opt: f1.opt || f2.opt,
                    }
                }
            }
        }
    }

    fn merge_atom(
        &mut self,
        r1: &RecordAtom,
        r2: &RecordAtom,
        sel: Option<TypeId>,
    ) -> RecordAtom {
        let mut labels: std::collections::BTreeSet<&String> = r1.fields.keys().collect();
        labels.extend(r2.fields.keys());
        let labels: Vec<String> = labels.into_iter().cloned().collect();
        let mut fields = BTreeMap::new();
        for l in labels {
            let (f1, f2) = (r1.field(&l), r2.field(&l));
            fields.insert(l, self.merge_field(f1, f2, sel));
        }
        let default = self.merge_field(r1.default, r2.default, sel);
        RecordAtom { fields, default }
    }

    /// Type of `e1 + e2`: fields of the right operand win where they are
    /// surely defined, fall back to the left where they may be absent.
    pub fn rec_concat(&mut self, t1: TypeId, t2: TypeId) -> TypeId {
        let a1 = self.record_atoms(t1);
        let a2 = self.record_atoms(t2);
        let mut out = Vec::new();
        for r2 in &a2 {
            for r1 in &a1 {
                out.push(self.merge_atom(r2, r1, None));
            }
        }
        self.atoms_to_type(out)
    }

    /// Type of `e \ label`: the field becomes surely absent, everything
    /// else is untouched.
    pub fn rec_delete(&mut self, t: TypeId, label: &str) -> TypeId {
        let marker = self.mk(Descr::from_tags(crate::types::leaves::TagLeaf::single(
            DELETED_TAG,
        )));
        let killer = RecordAtom {
            fields: std::iter::once((label.to_string(), FieldTy::bot())).collect(),
            default: FieldTy {
                ty: marker,
                opt: false,
            },
        };
        let atoms = self.record_atoms(t);
        let mut out = Vec::new();
        for a in &atoms {
            out.push(self.merge_atom(&killer, a, Some(marker)));
        }
        self.atoms_to_type(out)
    }

    // ---- overloaded function formation ----

    /// Check an overloaded function given per-branch (domain, result)
    /// signatures; on success the value has the intersection of the branch
    /// arrows. Ambiguity: every non-empty overlap of two domains must have
    /// a unique least accepting domain among all branches. Specialization:
    /// a branch whose domain is contained in another's must produce a
    /// result contained in the other's result.
    pub fn check_multi(&mut self, sigs: &[(TypeId, TypeId)]) -> Result<TypeId, TypeError> {
        for (i, &(si, ti)) in sigs.iter().enumerate() {
            for (j, &(sj, tj)) in sigs.iter().enumerate() {
                if i != j && self.is_subtype(si, sj) && !self.is_subtype(ti, tj) {
                    return Err(TypeError::Specialization {
                        i,
                        j,
                        ti: self.render(ti),
                        tj: self.render(tj),
                    });
                }
            }
        }
        for i in 0..sigs.len() {
            for j in (i + 1)..sigs.len() {
                let overlap = self.inter(sigs[i].0, sigs[j].0);
                if self.is_empty(overlap) {
                    continue;
                }
                let accepting: Vec<usize> = (0..sigs.len())
                    .filter(|&h| self.is_subtype(overlap, sigs[h].0))
                    .collect();
                let least = accepting.iter().copied().find(|&h| {
                    accepting
                        .iter()
                        .all(|&h2| self.is_subtype(sigs[h].0, sigs[h2].0))
                });
                if least.is_none() {
                    let witness = self
                        .sample(overlap)
                        .map(|w| w.to_string())
                        .unwrap_or_else(|| "<value>".to_string());
                    return Err(TypeError::Ambiguity { i, j, witness });
                }
            }
        }
        let mut t = ANY;
        for &(si, ti) in sigs {
            let a = self.arrow_ty(si, ti);
            t = self.inter(t, a);
        }
        Ok(t)
    }
}

/// Variable typing environment.
pub type TypeEnv = HashMap<String, TypeId>;

/// The curried arrow type a function definition declares, from annotations
/// alone (requires a return annotation). Used to pre-bind recursive
/// definitions.
pub fn signature(eng: &mut Engine, f: &FunDef) -> Option<TypeId> {
    let ret = f.ret.as_ref()?;
    let mut t = eng.norm(ret);
    for g in f.groups.iter().rev() {
        let tys: Vec<TypeId> = g.iter().map(|(_, ty)| eng.norm(ty)).collect();
        let s = product_of(eng, &tys);
        t = eng.arrow_ty(s, t);
    }
    Some(t)
}

fn product_of(eng: &mut Engine, tys: &[TypeId]) -> TypeId {
    let mut it = tys.iter().rev();
    let mut t = *it.next().expect("empty parameter group");
    for &s in it {
        t = eng.prod_ty(s, t);
    }
    t
}

fn type_fun(eng: &mut Engine, env: &TypeEnv, f: &FunDef) -> Result<TypeId, TypeError> {
    let mut inner = env.clone();
    let mut groups = Vec::new();
    for g in &f.groups {
        let mut tys = Vec::new();
        for (name, ty) in g {
            let id = eng.norm(ty);
            inner.insert(name.clone(), id);
            tys.push(id);
        }
        groups.push(product_of(eng, &tys));
    }
    let tb = type_of(eng, &inner, &f.body)?;
    let ret = match &f.ret {
        Some(r) => {
            let rid = eng.norm(r);
            if !eng.is_subtype(tb, rid) {
                let escape = eng.diff(tb, rid);
                return Err(TypeError::Annotation {
                    expected: eng.render(rid),
                    got: eng.render(tb),
                    witness: eng.sample(escape).map(|w| w.to_string()),
                });
            }
            rid
        }
        None => tb,
    };
    let mut t = ret;
    for &g in groups.iter().rev() {
        t = eng.arrow_ty(g, t);
    }
    Ok(t)
}

fn type_multi(eng: &mut Engine, env: &TypeEnv, branches: &[FunDef]) -> Result<TypeId, TypeError> {
    let mut sigs = Vec::new();
    for b in branches {
        let full = type_fun(eng, env, b)?;
        // Split the outermost arrow back off: the dispatch domain is the
        // first group, the rest is the branch's contribution.
        let tys: Vec<TypeId> = b.groups[0].iter().map(|(_, ty)| eng.norm(ty)).collect();
        let s = product_of(eng, &tys);
        let rest = eng.apply(full, s)?;
        sigs.push((s, rest));
    }
    eng.check_multi(&sigs)
}

pub fn type_of(eng: &mut Engine, env: &TypeEnv, e: &Expr) -> Result<TypeId, TypeError> {
    match e {
        Expr::IntLit(n) => Ok(eng.mk(Descr::from_ints(crate::types::leaves::IntLeaf::single(n)))),
        Expr::TagLit(t) => Ok(eng.mk(Descr::from_tags(crate::types::leaves::TagLeaf::single(t)))),
        Expr::Var(x) => env
            .get(x)
            .copied()
            .ok_or_else(|| TypeError::UnboundVar(x.clone())),
        Expr::Pair(a, b) => {
            let (ta, tb) = (type_of(eng, env, a)?, type_of(eng, env, b)?);
            Ok(eng.prod_ty(ta, tb))
        }
        Expr::Proj(e1, side) => {
            let t = type_of(eng, env, e1)?;
            let top = eng.any_prod();
            if !eng.is_subtype(t, top) {
                return Err(TypeError::NotAPair(eng.render(t)));
            }
            Ok(eng.proj(t, *side))
        }
        Expr::RecLit(label, e1) => {
            let t = type_of(eng, env, e1)?;
            let atom = RecordAtom {
                fields: std::iter::once((label.clone(), FieldTy { ty: t, opt: false }))
                    .collect(),
                default: FieldTy::bot(),
            };
            Ok(eng.mk(Descr::from_recd(Bdd::atom(atom))))
        }
        Expr::Concat(a, b) => {
            let (ta, tb) = (type_of(eng, env, a)?, type_of(eng, env, b)?);
            let top = eng.any_record();
            for t in [ta, tb] {
                if !eng.is_subtype(t, top) {
                    return Err(TypeError::NotARecord(eng.render(t)));
                }
            }
            Ok(eng.rec_concat(ta, tb))
        }
        Expr::Delete(e1, label) => {
            let t = type_of(eng, env, e1)?;
            let top = eng.any_record();
            if !eng.is_subtype(t, top) {
                return Err(TypeError::NotARecord(eng.render(t)));
            }
            Ok(eng.rec_delete(t, label))
        }
        Expr::Select(e1, label) => {
            let t = type_of(eng, env, e1)?;
            let top = eng.any_record();
            if !eng.is_subtype(t, top) {
                return Err(TypeError::NotARecord(eng.render(t)));
            }
            eng.rec_select(t, label)
        }
        Expr::Fun(f) => type_fun(eng, env, f),
        Expr::Multi(branches) => type_multi(eng, env, branches),
        Expr::App(f, args) => {
            let tf = type_of(eng, env, f)?;
            let top = eng.any_arrow();
            if !eng.is_subtype(tf, top) {
                return Err(TypeError::NotAFunction(eng.render(tf)));
            }
            let mut atys = Vec::new();
            for a in args {
                atys.push(type_of(eng, env, a)?);
            }
            let ta = product_of(eng, &atys);
            let dom = eng.dom(tf);
            if !eng.is_subtype(ta, dom) {
                let escape = eng.diff(ta, dom);
                return Err(TypeError::ArgumentType {
                    dom: eng.render(dom),
                    arg: eng.render(ta),
                    witness: eng.sample(escape).map(|w| w.to_string()),
                });
            }
            eng.apply(tf, ta)
        }
        Expr::Let {
            name,
            ann,
            bound,
            body,
        } => {
            let tb = type_of(eng, env, bound)?;
            let bound_ty = match ann {
                Some(a) => {
                    let aid = eng.norm(a);
                    if !eng.is_subtype(tb, aid) {
                        let escape = eng.diff(tb, aid);
                        return Err(TypeError::Annotation {
                            expected: eng.render(aid),
                            got: eng.render(tb),
                            witness: eng.sample(escape).map(|w| w.to_string()),
                        });
                    }
                    aid
                }
                None => tb,
            };
            let mut inner = env.clone();
            inner.insert(name.clone(), bound_ty);
            type_of(eng, &inner, body)
        }
    }
}

/// Type-check a whole program: named types first, then each binding in
/// order. A function binding with full return annotations may refer to
/// itself (or be a recursive `multi`); its annotated signature is bound
/// while its bodies are checked.
pub fn check_program(
    eng: &mut Engine,
    decls: &[Decl],
) -> Result<Vec<(String, TypeId)>, (String, TypeError)> {
    check_program_in(eng, decls, TypeEnv::new())
}

/// Like [`check_program`], starting from an existing environment (used by
/// interactive sessions, where bindings accumulate).
pub fn check_program_in(
    eng: &mut Engine,
    decls: &[Decl],
    mut env: TypeEnv,
) -> Result<Vec<(String, TypeId)>, (String, TypeError)> {
    let tydecls: Vec<(String, crate::syntax::ast::TypeExpr)> = decls
        .iter()
        .filter_map(|d| match d {
            Decl::Type(n, t) => Some((n.clone(), t.clone())),
            _ => None,
        })
        .collect();
    eng.load_decls(&tydecls);
    let mut out = Vec::new();
    for d in decls {
        if let Decl::Let(name, ann, e) = d {
            let presig = match e {
                Expr::Fun(f) => signature(eng, f),
                Expr::Multi(bs) => {
                    let sigs: Option<Vec<TypeId>> =
                        bs.iter().map(|b| signature(eng, b)).collect();
                    sigs.map(|v| {
                        let mut t = ANY;
                        for s in v {
                            t = eng.inter(t, s);
                        }
                        t
                    })
                }
                _ => None,
            };
            let mut inner = env.clone();
            if let Some(sig) = presig {
                inner.insert(name.clone(), sig);
            }
            let t = type_of(eng, &inner, e).map_err(|err| (name.clone(), err))?;
            let bound_ty = match ann {
                Some(a) => {
                    let aid = eng.norm(a);
                    if !eng.is_subtype(t, aid) {
                        let escape = eng.diff(t, aid);
                        let err = TypeError::Annotation {
                            expected: eng.render(aid),
                            got: eng.render(t),
                            witness: eng.sample(escape).map(|w| w.to_string()),
                        };
                        return Err((name.clone(), err));
                    }
                    aid
                }
                None => t,
            };
            env.insert(name.clone(), bound_ty);
            out.push((name.clone(), bound_ty));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_decls, parse_expr, parse_type};

    fn ty(eng: &mut Engine, src: &str) -> TypeId {
        let t = parse_type(src, &Default::default()).unwrap();
        eng.norm(&t)
    }

    fn infer(eng: &mut Engine, src: &str) -> Result<TypeId, TypeError> {
        let e = parse_expr(src, &Default::default()).unwrap();
        type_of(eng, &TypeEnv::new(), &e)
    }

    #[test]
    fn application_result_types() {
        let mut eng = Engine::default();
        let t = infer(&mut eng, "(fun (x: Int) { x })(3)").unwrap();
        let int = ty(&mut eng, "Int");
        assert!(eng.equiv(t, int));

        // Overloaded application unions only the reachable results.
        let f = ty(&mut eng, "(`a -> [1..1]) & (`b -> [2..2])");
        let a = ty(&mut eng, "`a");
        let ab = ty(&mut eng, "`a | `b");
        let r1 = eng.apply(f, a).unwrap();
        let one = ty(&mut eng, "[1..1]");
        assert!(eng.equiv(r1, one));
        let r2 = eng.apply(f, ab).unwrap();
        let onetwo = ty(&mut eng, "[1..2]");
        assert!(eng.equiv(r2, onetwo));
    }

    #[test]
    fn domain_of_intersections_and_unions() {
        let mut eng = Engine::default();
        // An intersection of arrows accepts the union of the domains.
        let f = ty(&mut eng, "(`a -> Int) & (`b -> Int)");
        let d = eng.dom(f);
        let ab = ty(&mut eng, "`a | `b");
        assert!(eng.equiv(d, ab));
        // A union of arrows only guarantees the common domain.
        let g = ty(&mut eng, "(`a -> Int) | (`b -> Int)");
        let dg = eng.dom(g);
        assert!(eng.is_empty(dg));
    }

    #[test]
    fn argument_mismatch_carries_a_witness() {
        let mut eng = Engine::default();
        match infer(&mut eng, "(fun (x: [0..5]) { x })(7)") {
            Err(TypeError::ArgumentType { witness, .. }) => {
                assert_eq!(witness.as_deref(), Some("7"));
            }
            other => panic!("expected an argument error, got {other:?}"),
        }
    }

    #[test]
    fn projection_refines_through_negations() {
        let mut eng = Engine::default();
        // Removing a sub-square only narrows a component when the other
        // component is fully covered by the removal.
        let t = ty(&mut eng, "([0..9], [0..9]) \\ ([0..4], [0..9])");
        let p0 = eng.proj(t, 0);
        let five_nine = ty(&mut eng, "[5..9]");
        assert!(eng.equiv(p0, five_nine));
        let p1 = eng.proj(t, 1);
        let zero_nine = ty(&mut eng, "[0..9]");
        assert!(eng.equiv(p1, zero_nine));

        let u = ty(&mut eng, "([0..9], [0..9]) \\ ([0..4], [0..4])");
        let q0 = eng.proj(u, 0);
        assert!(eng.equiv(q0, zero_nine));
    }

    #[test]
    fn pair_expressions() {
        let mut eng = Engine::default();
        let t = infer(&mut eng, "(1, `x)[0]").unwrap();
        let one = ty(&mut eng, "[1..1]");
        assert!(eng.equiv(t, one));
        assert!(matches!(
            infer(&mut eng, "3[0]"),
            Err(TypeError::NotAPair(_))
        ));
    }

    #[test]
    fn record_concatenation_law() {
        let mut eng = Engine::default();
        let t1 = ty(&mut eng, "{a: Int, b: Int}");
        let t2 = ty(&mut eng, "{a ?: Bool}");
        let r = eng.rec_concat(t1, t2);
        let expect = ty(&mut eng, "{a: Int | Bool, b: Int}");
        assert!(eng.equiv(r, expect));
        // A surely-present right field always wins.
        let t3 = ty(&mut eng, "{a: Bool}");
        let r2 = eng.rec_concat(t1, t3);
        let expect2 = ty(&mut eng, "{a: Bool, b: Int}");
        assert!(eng.equiv(r2, expect2));
    }

    #[test]
    fn record_deletion_marks_sure_absence() {
        let mut eng = Engine::default();
        let t = ty(&mut eng, "{a: Int, b: Int}");
        let r = eng.rec_delete(t, "a");
        let expect = ty(&mut eng, "{a ?: Empty, b: Int}");
        assert!(eng.equiv(r, expect));

        let open = ty(&mut eng, "{a: Int, ..}");
        let r2 = eng.rec_delete(open, "a");
        let expect2 = ty(&mut eng, "{a ?: Empty, ..}");
        assert!(eng.equiv(r2, expect2));
    }

    #[test]
    fn record_selection() {
        let mut eng = Engine::default();
        let t = infer(&mut eng, "({a => 1} + {b => 2})<b>").unwrap();
        let two = ty(&mut eng, "[2..2]");
        assert!(eng.equiv(t, two));
        // Selecting a possibly-absent field is rejected.
        let opt = ty(&mut eng, "{a ?: Int}");
        assert!(matches!(
            eng.rec_select(opt, "a"),
            Err(TypeError::PossiblyUndefined { .. })
        ));
        // Deletion makes later selection fail.
        assert!(matches!(
            infer(&mut eng, "({a => 1, b => 2} \\ a)<a>"),
            Err(TypeError::PossiblyUndefined { .. })
        ));
    }

    #[test]
    fn overload_formation_and_type() {
        let mut eng = Engine::default();
        let t = infer(
            &mut eng,
            "multi { fun (x: `a) { 1 }; fun (x: `b) { 2 } }",
        )
        .unwrap();
        let expect = ty(&mut eng, "(`a -> [1..1]) & (`b -> [2..2])");
        assert!(eng.equiv(t, expect));
    }

    #[test]
    fn ambiguous_overlap_is_rejected() {
        let mut eng = Engine::default();
        let r = infer(
            &mut eng,
            "multi { fun (x: Int | Bool) { 1 }; fun (x: Bool | `c) { 2 } }",
        );
        assert!(matches!(r, Err(TypeError::Ambiguity { .. })));
        // A third branch covering exactly the overlap resolves it (its
        // result must refine both, hence the shared annotations).
        let ok = infer(
            &mut eng,
            "multi { fun (x: Int | Bool) : Int { 1 }; fun (x: Bool | `c) : Int { 2 }; \
                     fun (x: Bool) : Int { 3 } }",
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn specialization_is_enforced() {
        let mut eng = Engine::default();
        let r = infer(
            &mut eng,
            "multi { fun (x: [0..9]) : `a { `a }; fun (x: Int) : `b { `b } }",
        );
        assert!(matches!(r, Err(TypeError::Specialization { .. })));
        let ok = infer(
            &mut eng,
            "multi { fun (x: [0..9]) : `a { `a }; fun (x: Int) : `a | `b { `b } }",
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn annotated_recursion_in_programs() {
        let mut eng = Engine::default();
        let decls = parse_decls(
            "type List = `nil | (Int, List);
             let loop = fun (x: Int) : Int { loop(x) };
             let r = loop(5)",
        )
        .unwrap();
        let out = check_program(&mut eng, &decls).unwrap();
        let int = ty(&mut eng, "Int");
        assert!(eng.equiv(out[1].1, int));
    }

    #[test]
    fn annotation_violations_are_reported() {
        let mut eng = Engine::default();
        let decls = parse_decls("let x : Bool = 3").unwrap();
        match check_program(&mut eng, &decls) {
            Err((name, TypeError::Annotation { witness, .. })) => {
                assert_eq!(name, "x");
                assert_eq!(witness.as_deref(), Some("3"));
            }
            other => panic!("expected an annotation error, got {other:?}"),
        }
    }
}
