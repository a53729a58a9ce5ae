//! The subtyping decision procedure.
//!
//! `S <: T` holds exactly when `S & not T` denotes the empty set, so
//! everything reduces to deciding emptiness of a descriptor. Base kinds are
//! immediate (their leaves are canonical). For each constructed kind the
//! diagram is unfolded into its root-to-true paths, and each path — an
//! intersection of atoms and negated atoms — is checked by the kind's
//! decomposition rule, which recurses into emptiness of component types.
//!
//! Recursive types make the recursion cyclic, so the procedure is
//! coinductive: a type currently being decomposed is assumed empty when met
//! again. Hypotheses proved under assumptions stay conditional until the
//! top-level query succeeds, at which point all of them are facts and enter
//! the persistent cache; when a branch fails, everything it conditionally
//! proved is rolled back. Negative verdicts are cached immediately: extra
//! assumptions only ever push a verdict toward "empty", so a "non-empty"
//! obtained under assumptions holds unconditionally.

use std::collections::{BTreeSet, HashSet};

use crate::types::bdd::Bdd;
use crate::types::descr::{ArrowAtom, FieldTy, ProdAtom, RecordAtom};
use crate::types::{Engine, TypeId, ANY, EMPTY};

/// Hypotheses of one top-level emptiness query: `list` in proof order (so a
/// failing branch can truncate back to its entry point), `set` for O(1)
/// cycle detection.
#[derive(Default)]
struct Hyp {
    list: Vec<TypeId>,
    set: HashSet<TypeId>,
}

impl Engine {
    pub fn is_subtype(&mut self, s: TypeId, t: TypeId) -> bool {
        let d = self.diff(s, t);
        self.is_empty(d)
    }

    pub fn equiv(&mut self, s: TypeId, t: TypeId) -> bool {
        self.is_subtype(s, t) && self.is_subtype(t, s)
    }

    pub fn is_empty(&mut self, t: TypeId) -> bool {
        let mut hyp = Hyp::default();
        let res = self.empty_rec(t, &mut hyp);
        if res && self.config.memo {
            for id in hyp.list.drain(..) {
                self.empty_memo.insert(id, true);
            }
        }
        res
    }

    fn empty_rec(&mut self, t: TypeId, hyp: &mut Hyp) -> bool {
        if t == EMPTY {
            return true;
        }
        if t == ANY {
            return false;
        }
        if self.config.memo {
            if let Some(&v) = self.empty_memo.get(&t) {
                return v;
            }
        }
        if hyp.set.contains(&t) {
            return true;
        }
        let d = self.descr(t);
        if !d.tags.is_empty() || !d.ints.is_empty() {
            if self.config.memo {
                self.empty_memo.insert(t, false);
            }
            return false;
        }
        let snapshot = hyp.list.len();
        hyp.list.push(t);
        hyp.set.insert(t);
        let res = self.prods_empty(&d.prod, hyp)
            && self.arrows_empty(&d.arrw, hyp)
            && self.records_empty(&d.recd, hyp);
        if !res {
            for id in hyp.list.drain(snapshot..) {
                hyp.set.remove(&id);
            }
            if self.config.memo {
                self.empty_memo.insert(t, false);
            }
        }
        res
    }

    fn subty(&mut self, s: TypeId, t: TypeId, hyp: &mut Hyp) -> bool {
        let d = self.diff(s, t);
        self.empty_rec(d, hyp)
    }

    // ---- products ----
    //
    // A path is ⋀P ∧ ⋀¬N over pair atoms. The positives fuse into a single
    // rectangle (S1, S2) componentwise; the rectangle minus the negatives is
    // empty iff every way of splitting the negatives between the two
    // components covers one of them entirely.

    fn prods_empty(&mut self, b: &Bdd<ProdAtom>, hyp: &mut Hyp) -> bool {
        for (pos, neg) in b.paths() {
            let (mut s1, mut s2) = (ANY, ANY);
            for ProdAtom(a1, a2) in &pos {
                s1 = self.inter(s1, *a1);
                s2 = self.inter(s2, *a2);
            }
            if self.empty_rec(s1, hyp) || self.empty_rec(s2, hyp) {
                continue;
            }
            if !self.phi_prod(s1, s2, &neg, hyp) {
                return false;
            }
        }
        true
    }

    /// Both components here are non-empty on entry; peeling one negative
    /// (T1, T2), the remainder is empty iff it is empty both when the
    /// first component escapes T1 and when the second escapes T2.
    fn phi_prod(&mut self, s1: TypeId, s2: TypeId, n: &[ProdAtom], hyp: &mut Hyp) -> bool {
        let Some((ProdAtom(t1, t2), rest)) = n.split_first() else {
            return false;
        };
        let fst = self.subty(s1, *t1, hyp) || {
            let d = self.diff(s1, *t1);
            self.phi_prod(d, s2, rest, hyp)
        };
        fst && (self.subty(s2, *t2, hyp) || {
            let d = self.diff(s2, *t2);
            self.phi_prod(s1, d, rest, hyp)
        })
    }

    // ---- arrows ----
    //
    // A path ⋀P ∧ ⋀¬N is empty iff some negative T1 -> T2 swallows the
    // positives: T1 must sit inside the union of the positive domains, and
    // for every proper subset P' of P, either T1 is inside the domains of
    // P' or the codomains of P \ P' intersect within T2.

    fn arrows_empty(&mut self, b: &Bdd<ArrowAtom>, hyp: &mut Hyp) -> bool {
        'path: for (pos, neg) in b.paths() {
            let mut dom = EMPTY;
            for ArrowAtom(s1, _) in &pos {
                dom = self.union(dom, *s1);
            }
            for ArrowAtom(t1, t2) in &neg {
                if self.subty(*t1, dom, hyp) {
                    let nt2 = self.neg(*t2);
                    if self.phi_arrow(*t1, nt2, false, &pos, hyp) {
                        continue 'path;
                    }
                }
            }
            return false;
        }
        true
    }

    /// The subset exploration with both accumulators folded into the first
    /// two parameters: `t1` is the original domain minus the domains chosen
    /// so far, `t2` the chosen codomains intersected with the negated
    /// original codomain. `t2_touched` tracks whether any codomain was
    /// intersected in yet; while it is false the all-chosen subset is the
    /// full P, whose check is known to hold already.
    fn phi_arrow(
        &mut self,
        t1: TypeId,
        t2: TypeId,
        t2_touched: bool,
        p: &[ArrowAtom],
        hyp: &mut Hyp,
    ) -> bool {
        let Some((ArrowAtom(s1, s2), rest)) = p.split_first() else {
            return self.empty_rec(t1, hyp) || self.empty_rec(t2, hyp);
        };
        if self.config.early_cutoff {
            // The subset consisting of everything not yet excluded must
            // itself pass; if it already fails, no point recursing.
            let mut remaining_dom = EMPTY;
            let mut remaining_cod = t2;
            for ArrowAtom(r1, r2) in p {
                remaining_dom = self.union(remaining_dom, *r1);
                remaining_cod = self.inter(remaining_cod, *r2);
            }
            if !self.subty(t1, remaining_dom, hyp) && !self.empty_rec(remaining_cod, hyp) {
                return false;
            }
        }
        if self.config.strict_subset_opt && rest.is_empty() && !t2_touched {
            // Only one arrow left to assign and no codomain chosen yet: the
            // branch that excludes it would test the full-subset case,
            // which holds by construction. Skip straight past it.
            let c = self.inter(t2, *s2);
            return self.phi_arrow(t1, c, true, rest, hyp);
        }
        let c = self.inter(t2, *s2);
        if !self.phi_arrow(t1, c, true, rest, hyp) {
            return false;
        }
        let d = self.diff(t1, *s1);
        self.phi_arrow(d, t2, t2_touched, rest, hyp)
    }

    // ---- records ----

    pub(crate) fn field_inter(&mut self, a: FieldTy, b: FieldTy) -> FieldTy {
        FieldTy {
            ty: self.inter(a.ty, b.ty),
            opt: a.opt && b.opt,
        }
    }

    pub(crate) fn field_union(&mut self, a: FieldTy, b: FieldTy) -> FieldTy {
        FieldTy {
            ty: self.union(a.ty, b.ty),
            opt: a.opt || b.opt,
        }
    }

    fn field_sub(&mut self, a: FieldTy, b: FieldTy, hyp: &mut Hyp) -> bool {
        (!a.opt || b.opt) && self.subty(a.ty, b.ty, hyp)
    }

    fn field_bot(&mut self, a: FieldTy, hyp: &mut Hyp) -> bool {
        !a.opt && self.empty_rec(a.ty, hyp)
    }

    /// A path ⋀P ∧ ⋀¬N over record atoms is empty iff every assignment ι of
    /// negatives to "the label where that negative is respected" — one of
    /// the finitely many explicit labels, or `_` for the common default —
    /// ends up respecting some negative completely.
    fn records_empty(&mut self, b: &Bdd<RecordAtom>, hyp: &mut Hyp) -> bool {
        'path: for (pos, neg) in b.paths() {
            let mut labels: BTreeSet<String> = BTreeSet::new();
            for a in pos.iter().chain(neg.iter()) {
                labels.extend(a.fields.keys().cloned());
            }
            let labels: Vec<String> = labels.into_iter().collect();
            let top = FieldTy { ty: ANY, opt: true };
            let pos_at = |eng: &mut Engine, l: &str| {
                pos.iter()
                    .fold(top, |acc, a| eng.field_inter(acc, a.field(l)))
            };
            let pos_def = pos.iter().fold(top, |acc, a| {
                let d = a.default;
                self.field_inter(acc, d)
            });
            // No quasi-constant map can put an impossible mandatory value
            // at infinitely many labels (or at any explicit one).
            if self.field_bot(pos_def, hyp) {
                continue 'path;
            }
            let mut bottom_label = false;
            for l in &labels {
                let f = pos_at(self, l);
                if self.field_bot(f, hyp) {
                    bottom_label = true;
                    break;
                }
            }
            if bottom_label {
                continue 'path;
            }
            // Enumerate ι : N -> labels ∪ {_} (the last index is `_`).
            let base = labels.len() + 1;
            let count = base.pow(neg.len() as u32);
            for mut code in 0..count {
                let mut iota = Vec::with_capacity(neg.len());
                for _ in 0..neg.len() {
                    iota.push(code % base);
                    code /= base;
                }
                let mut holds = false;
                for (li, l) in labels.iter().enumerate() {
                    let p = pos_at(self, l);
                    let mut u = FieldTy {
                        ty: EMPTY,
                        opt: false,
                    };
                    for (ni, n) in neg.iter().enumerate() {
                        if iota[ni] == li {
                            let f = n.field(l);
                            u = self.field_union(u, f);
                        }
                    }
                    if self.field_sub(p, u, hyp) {
                        holds = true;
                        break;
                    }
                }
                if !holds {
                    for (ni, n) in neg.iter().enumerate() {
                        if iota[ni] == labels.len() {
                            let d = n.default;
                            if self.field_sub(pos_def, d, hyp) {
                                holds = true;
                                break;
                            }
                        }
                    }
                }
                if !holds {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;
    use std::collections::HashMap;

    fn eng() -> Engine {
        Engine::default()
    }

    fn id(e: &mut Engine, src: &str) -> TypeId {
        let t = parse_type(src, &HashMap::new()).unwrap();
        e.norm(&t)
    }

    fn sub(e: &mut Engine, s: &str, t: &str) -> bool {
        let (a, b) = (id(e, s), id(e, t));
        e.is_subtype(a, b)
    }

    fn eqv(e: &mut Engine, s: &str, t: &str) -> bool {
        let (a, b) = (id(e, s), id(e, t));
        e.equiv(a, b)
    }

    #[test]
    fn base_kinds() {
        let e = &mut eng();
        assert!(sub(e, "[1..5]", "Int"));
        assert!(!sub(e, "Int", "[1..5]"));
        assert!(eqv(e, "Int \\ [0..*]", "[*..-1]"));
        assert!(sub(e, "`a", "`a | `b"));
        assert!(!sub(e, "`a | `b", "`a"));
        assert!(eqv(e, "not (not `a)", "`a"));
        assert!(sub(e, "Empty", "`a"));
        assert!(sub(e, "Bool", "`true | `false | `maybe"));
        // Distinct kinds are disjoint.
        assert!(eqv(e, "Int & `a", "Empty"));
        assert!(eqv(e, "Int & (Any, Any)", "Empty"));
        assert!(eqv(e, "Int & (Empty -> Any)", "Empty"));
        assert!(eqv(e, "Int & ((Empty -> Any) | not (Empty -> Any))", "Int"));
    }

    #[test]
    fn product_distribution_laws() {
        let e = &mut eng();
        assert!(eqv(e, "(`a | `b, Int)", "(`a, Int) | (`b, Int)"));
        assert!(eqv(
            e,
            "(Int, Int) \\ (`e, `o)",
            "(Int, Int)"
        ));
        // Difference splits pointwise.
        assert!(eqv(
            e,
            "([0..9], [0..9]) \\ ([0..4], [0..4])",
            "([5..9], [0..9]) | ([0..9], [5..9])"
        ));
        assert!(sub(e, "([1..2], [1..2])", "(Int, Int)"));
        assert!(!sub(e, "(Int, Int)", "([1..2], Int)"));
        // A product with an empty side is empty.
        assert!(eqv(e, "(Empty, Int)", "Empty"));
    }

    #[test]
    fn arrow_axioms() {
        let e = &mut eng();
        // Contravariant domain, covariant codomain.
        assert!(sub(e, "Int -> [0..0]", "[1..5] -> Int"));
        assert!(!sub(e, "[1..5] -> Int", "Int -> Int"));
        // Every function type is below Empty -> Any.
        assert!(sub(e, "Int -> Int", "Empty -> Any"));
        assert!(sub(e, "`a -> `b", "Empty -> `z"));
        // An arrow with empty domain accepts anything vacuously.
        assert!(sub(e, "Empty -> `a", "Empty -> `b"));
        // Union in the domain is intersection of arrows.
        assert!(eqv(e, "`a | `b -> Int", "(`a -> Int) & (`b -> Int)"));
        // Intersection of arrows is not the arrow of intersections.
        assert!(sub(
            e,
            "(`e -> `o) & (`o -> `e)",
            "`e | `o -> `e | `o"
        ));
        assert!(!sub(e, "`e | `o -> `e | `o", "(`e -> `o) & (`o -> `e)"));
    }

    #[test]
    fn recursive_types() {
        let e = &mut eng();
        // Homogeneous list element covariance.
        assert!(sub(
            e,
            "rec X = `nil | ([0..5], X)",
            "rec Y = `nil | (Int, Y)"
        ));
        assert!(!sub(
            e,
            "rec X = `nil | (Int, X)",
            "rec Y = `nil | ([0..5], Y)"
        ));
        // A recursive type is equivalent to its unfolding.
        assert!(eqv(
            e,
            "rec X = `nil | (Int, X)",
            "`nil | (Int, rec X = `nil | (Int, X))"
        ));
        // A recursion with no base case denotes no value at all: values
        // are finite, so the type is empty.
        assert!(eqv(e, "rec X = (Int, X)", "Empty"));
    }

    #[test]
    fn record_subtyping() {
        let e = &mut eng();
        // Width subtyping needs openness.
        assert!(sub(e, "{x: Int, y: Int}", "{x: Int, ..}"));
        assert!(!sub(e, "{x: Int, y: Int}", "{x: Int}"));
        // Depth subtyping.
        assert!(sub(e, "{x: [0..5]}", "{x: Int}"));
        assert!(!sub(e, "{x: Int}", "{x: [0..5]}"));
        // Mandatory is below optional.
        assert!(sub(e, "{x: Int}", "{x ?: Int}"));
        assert!(!sub(e, "{x ?: Int}", "{x: Int}"));
        // Open vs closed.
        assert!(sub(e, "{}", "{..}"));
        assert!(!sub(e, "{..}", "{}"));
        // A mandatory field with no possible value empties the record.
        assert!(eqv(e, "{x: Empty, ..}", "Empty"));
        // {x ?: Empty, ..}: x is surely absent.
        assert!(sub(e, "{}", "{x ?: Empty, ..}"));
        assert!(!sub(e, "{x: Int}", "{x ?: Empty, ..}"));
        assert!(eqv(e, "{x: Int, ..} & {x ?: Empty, ..}", "Empty"));
        // Union at a field distributes.
        assert!(eqv(e, "{x: `a | `b}", "{x: `a} | {x: `b}"));
        // But union of records is not a record of unions across labels.
        assert!(!eqv(e, "{x: `a, y: `a} | {x: `b, y: `b}", "{x: `a | `b, y: `a | `b}"));
    }

    #[test]
    fn config_invariance_spot_checks() {
        let cases = [
            ("(`e -> `o) & (`o -> `e)", "`e|`o -> `e|`o", true),
            ("Int -> Int", "[0..9] -> Int", true),
            ("Int -> Int", "Int -> [0..9]", false),
            ("(Int -> Int) & (`a -> `a)", "Int|`a -> Int|`a", true),
            ("Int|`a -> Int|`a", "(Int -> Int) & (`a -> `a)", false),
        ];
        for memo in [false, true] {
            for strict in [false, true] {
                for early in [false, true] {
                    let mut e = Engine::new(crate::types::Config {
                        memo,
                        strict_subset_opt: strict,
                        early_cutoff: early,
                    });
                    for (s, t, want) in &cases {
                        assert_eq!(
                            sub(&mut e, s, t),
                            *want,
                            "{s} <: {t} under memo={memo} strict={strict} early={early}"
                        );
                    }
                }
            }
        }
    }
}
