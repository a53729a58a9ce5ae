//! An independent membership oracle.
//!
//! `member` decides whether a first-order value inhabits a type expression
//! by direct structural recursion on the *syntax* — it shares no code with
//! the subtyping engine (no normal forms, no memoization, no emptiness).
//! Together with a finite universe of enumerated values it cross-checks the
//! engine: if the engine claims `S <: T`, no enumerated value may inhabit
//! `S` without inhabiting `T`; if the engine claims `S` is non-empty, the
//! witness it produces must satisfy `member`.
//!
//! Termination: named types and `rec` binders only unfold at the head of a
//! union/intersection/negation chain, and contractivity (checked at parse
//! time) bounds the length of such chains; every other recursive call
//! descends into a strictly smaller value.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::eval::Value;
use crate::syntax::ast::{FieldExpr, TypeExpr};
use crate::witness::Witness;

/// Decide `v ∈ t` for first-order `v` (integers, tags, pairs, records).
/// Closures inhabit arrow types but nothing about their graph is checked;
/// the test universe never contains them.
pub fn member(v: &Value, t: &TypeExpr, decls: &HashMap<String, TypeExpr>) -> bool {
    match t {
        TypeExpr::Any => true,
        TypeExpr::Empty => false,
        TypeExpr::Tag(s) => matches!(v, Value::Tag(x) if x == s),
        TypeExpr::Interval(lo, hi) => match v {
            Value::Int(n) => {
                lo.as_ref().map_or(true, |b| b <= n) && hi.as_ref().map_or(true, |b| n <= b)
            }
            _ => false,
        },
        TypeExpr::Prod(a, b) => match v {
            Value::Pair(p) => member(&p.0, a, decls) && member(&p.1, b, decls),
            _ => false,
        },
        TypeExpr::Arrow(_, _) => matches!(v, Value::Closure(_)),
        TypeExpr::Record(fields, open) => match v {
            Value::Record(r) => {
                for (label, FieldExpr { ty, optional }) in fields {
                    match r.get(label) {
                        Some(fv) => {
                            if !member(fv, ty, decls) {
                                return false;
                            }
                        }
                        None => {
                            if !optional {
                                return false;
                            }
                        }
                    }
                }
                *open || r.keys().all(|k| fields.iter().any(|(l, _)| l == k))
            }
            _ => false,
        },
        TypeExpr::Union(a, b) => member(v, a, decls) || member(v, b, decls),
        TypeExpr::Inter(a, b) => member(v, a, decls) && member(v, b, decls),
        TypeExpr::Neg(a) => !member(v, a, decls),
        TypeExpr::Var(x) => {
            let body = decls
                .get(x)
                .unwrap_or_else(|| panic!("oracle: unknown type name `{x}`"));
            member(v, body, decls)
        }
        TypeExpr::Rec(name, body) => {
            // Unfold once: occurrences of the binder see the whole rec.
            let mut inner = decls.clone();
            inner.insert(name.clone(), t.clone());
            member(v, body, &inner)
        }
    }
}

/// Finite universe of first-order values for exhaustive cross-checks.
#[derive(Debug, Clone)]
pub struct Universe {
    pub tags: Vec<String>,
    pub int_lo: i64,
    pub int_hi: i64,
    pub labels: Vec<String>,
    pub depth: usize,
    /// How many values of the previous depth seed each compound layer.
    pub breadth: usize,
}

impl Default for Universe {
    fn default() -> Self {
        Universe {
            tags: vec!["a".into(), "b".into(), "c".into(), "nil".into()],
            int_lo: -3,
            int_hi: 3,
            labels: vec!["x".into(), "y".into()],
            depth: 2,
            breadth: 16,
        }
    }
}

/// Enumerate the universe: base integers and tags, then pairs and records
/// built over a bounded slice of the previous layer.
pub fn enumerate(u: &Universe) -> Vec<Value> {
    let mut all: Vec<Value> = Vec::new();
    for n in u.int_lo..=u.int_hi {
        all.push(Value::Int(BigInt::from(n)));
    }
    for t in &u.tags {
        all.push(Value::Tag(t.clone()));
    }
    for _ in 0..u.depth {
        let seed: Vec<Value> = all.iter().take(u.breadth).cloned().collect();
        let mut next = Vec::new();
        for a in &seed {
            for b in &seed {
                next.push(Value::Pair(std::rc::Rc::new((a.clone(), b.clone()))));
            }
        }
        // Records: every assignment of present/absent per label, with a
        // seeded value where present (including the empty record).
        let nl = u.labels.len();
        for mask in 0..(1usize << nl) {
            let present: Vec<&String> = u
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, l)| l)
                .collect();
            let mut combos: Vec<std::collections::BTreeMap<String, Value>> =
                vec![Default::default()];
            for l in present {
                let mut grown = Vec::new();
                for c in &combos {
                    for v in &seed {
                        let mut c2 = c.clone();
                        c2.insert(l.clone(), v.clone());
                        grown.push(c2);
                    }
                }
                combos = grown;
            }
            for c in combos {
                next.push(Value::Record(std::rc::Rc::new(c)));
            }
        }
        all.extend(next);
    }
    all
}

/// Convert a generated witness back into a value, when it is first-order.
pub fn witness_value(w: &Witness) -> Option<Value> {
    match w {
        Witness::Int(n) => Some(Value::Int(n.clone())),
        Witness::Tag(t) => Some(Value::Tag(t.clone())),
        Witness::Pair(a, b) => {
            let (va, vb) = (witness_value(a)?, witness_value(b)?);
            Some(Value::Pair(std::rc::Rc::new((va, vb))))
        }
        Witness::Record(fields) => {
            let mut m = std::collections::BTreeMap::new();
            for (k, v) in fields {
                m.insert(k.clone(), witness_value(v)?);
            }
            Some(Value::Record(std::rc::Rc::new(m)))
        }
        Witness::Fun(_) => None,
    }
}

/// Generate a random function-free type over the universe's alphabet.
/// Used by the cross-check sweeps.
pub fn random_type(rng: &mut impl rand::Rng, u: &Universe, depth: usize) -> TypeExpr {
    let leaf = depth == 0;
    let pick = if leaf { rng.gen_range(0..4) } else { rng.gen_range(0..9) };
    match pick {
        0 => TypeExpr::Tag(u.tags[rng.gen_range(0..u.tags.len())].clone()),
        1 => {
            let a = rng.gen_range(u.int_lo..=u.int_hi);
            let b = rng.gen_range(u.int_lo..=u.int_hi);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let lo = if rng.gen_bool(0.15) { None } else { Some(BigInt::from(lo)) };
            let hi = if rng.gen_bool(0.15) { None } else { Some(BigInt::from(hi)) };
            TypeExpr::Interval(lo, hi)
        }
        2 => TypeExpr::Any,
        3 => TypeExpr::Empty,
        4 => TypeExpr::prod(
            random_type(rng, u, depth - 1),
            random_type(rng, u, depth - 1),
        ),
        5 => TypeExpr::union(
            random_type(rng, u, depth - 1),
            random_type(rng, u, depth - 1),
        ),
        6 => TypeExpr::inter(
            random_type(rng, u, depth - 1),
            random_type(rng, u, depth - 1),
        ),
        7 => TypeExpr::neg(random_type(rng, u, depth - 1)),
        _ => {
            let n = rng.gen_range(0..=u.labels.len());
            let mut fields = Vec::new();
            for l in u.labels.iter().take(n) {
                fields.push((
                    l.clone(),
                    FieldExpr {
                        ty: random_type(rng, u, depth - 1),
                        optional: rng.gen_bool(0.3),
                    },
                ));
            }
            TypeExpr::Record(fields, rng.gen_bool(0.5))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;
    use crate::types::Engine;
    use rand::SeedableRng;

    fn t(src: &str) -> TypeExpr {
        parse_type(src, &Default::default()).unwrap()
    }

    #[test]
    fn membership_basics() {
        let d = HashMap::new();
        let int3 = Value::Int(3.into());
        assert!(member(&int3, &t("[0..5]"), &d));
        assert!(!member(&int3, &t("[4..5]"), &d));
        assert!(member(&int3, &t("Int \\ [4..5]"), &d));
        assert!(member(&Value::Tag("a".into()), &t("`a | `b"), &d));
        assert!(!member(&Value::Tag("c".into()), &t("`a | `b"), &d));
        let pair = Value::Pair(std::rc::Rc::new((int3.clone(), Value::Tag("a".into()))));
        assert!(member(&pair, &t("([0..5], `a)"), &d));
        assert!(!member(&pair, &t("([0..5], `b)"), &d));
        assert!(member(&pair, &t("not [0..0]"), &d));
    }

    #[test]
    fn membership_records_and_recursion() {
        let d = HashMap::new();
        let mut m = std::collections::BTreeMap::new();
        m.insert("x".to_string(), Value::Int(1.into()));
        let r = Value::Record(std::rc::Rc::new(m));
        assert!(member(&r, &t("{x: Int}"), &d));
        assert!(member(&r, &t("{x: Int, y ?: Bool}"), &d));
        assert!(!member(&r, &t("{x: Int, y: Bool}"), &d));
        assert!(member(&r, &t("{x: Int, ..}"), &d));
        assert!(!member(&r, &t("{y: Int, ..}"), &d));
        // Closed records reject extra fields.
        assert!(!member(&r, &t("{}"), &d));

        let list = t("rec X = `nil | (Int, X)");
        let nil = Value::Tag("nil".into());
        let cons = |h: i64, tl: Value| {
            Value::Pair(std::rc::Rc::new((Value::Int(h.into()), tl)))
        };
        assert!(member(&nil, &list, &d));
        assert!(member(&cons(1, cons(2, nil.clone())), &list, &d));
        assert!(!member(&cons(1, Value::Tag("a".into())), &list, &d));
    }

    #[test]
    fn engine_agrees_with_oracle_on_golden_pairs() {
        let u = Universe::default();
        let values = enumerate(&u);
        let pairs = [
            ("[0..5]", "Int"),
            ("`a | `b", "`a | `b | `c"),
            ("([0..5], `a)", "(Int, `a | `b)"),
            ("{x: [0..2]}", "{x: Int, ..}"),
            ("{x: Int, y: Int}", "{x: Int, ..}"),
            ("Int \\ [0..0]", "Int"),
            ("([0..9], [0..9]) \\ ([0..4], [0..4])", "([0..9], [0..9])"),
            ("{x: Int} & {y ?: Empty, ..}", "{x: Int}"),
        ];
        for (s, tt) in pairs {
            let (se, te) = (t(s), t(tt));
            let mut eng = Engine::default();
            let (sid, tid) = (eng.norm(&se), eng.norm(&te));
            let claim = eng.is_subtype(sid, tid);
            let d = HashMap::new();
            let refuted = values
                .iter()
                .any(|v| member(v, &se, &d) && !member(v, &te, &d));
            assert!(
                claim && !refuted,
                "engine / oracle disagree on {s} <: {tt} (claim={claim}, refuted={refuted})"
            );
        }
    }

    #[test]
    fn random_sweep_small() {
        let u = Universe::default();
        let values = enumerate(&u);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = HashMap::new();
        for _ in 0..200 {
            let s = random_type(&mut rng, &u, 2);
            let tt = random_type(&mut rng, &u, 2);
            let mut eng = Engine::default();
            let (sid, tid) = (eng.norm(&s), eng.norm(&tt));
            if eng.is_subtype(sid, tid) {
                for v in &values {
                    assert!(
                        !member(v, &s, &d) || member(v, &tt, &d),
                        "claimed subtype refuted by {v} for {s:?} <: {tt:?}"
                    );
                }
            } else {
                // The engine refutes with a witness; the oracle must agree
                // the witness separates the two types.
                let diff = eng.diff(sid, tid);
                let w = eng.sample(diff).expect("non-subtype without witness");
                if let Some(v) = witness_value(&w) {
                    assert!(member(&v, &s, &d), "witness {v} not in {s:?}");
                    assert!(!member(&v, &tt, &d), "witness {v} in {tt:?}");
                }
            }
        }
    }
}
