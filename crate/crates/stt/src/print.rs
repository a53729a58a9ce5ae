//! Rendering internal descriptors back into surface type syntax.
//!
//! The result is a disjunctive normal form, one summand per kind and
//! diagram path, so it is faithful but not minimal. Cycles through
//! recursive types come out as `rec` binders with generated names.

use std::collections::HashMap;

use crate::syntax::ast::{FieldExpr, TypeExpr};
use crate::syntax::print_type;
use crate::types::descr::RecordAtom;
use crate::types::{Engine, FieldTy, TypeId, ANY, EMPTY};

impl Engine {
    /// Surface syntax for an id.
    pub fn render(&mut self, t: TypeId) -> String {
        let e = self.to_expr(t);
        print_type(&e)
    }

    /// Reconstruct a type expression denoting the same set as `t`.
    pub fn to_expr(&mut self, t: TypeId) -> TypeExpr {
        let mut stack = HashMap::new();
        self.expr_rec(t, &mut stack)
    }

    fn expr_rec(&mut self, t: TypeId, stack: &mut HashMap<TypeId, (String, bool)>) -> TypeExpr {
        if t == EMPTY {
            return TypeExpr::Empty;
        }
        if t == ANY {
            return TypeExpr::Any;
        }
        if let Some((name, used)) = stack.get_mut(&t) {
            *used = true;
            return TypeExpr::Var(name.clone());
        }
        let name = format!("X{t}");
        stack.insert(t, (name.clone(), false));
        let d = self.descr(t);
        let mut parts: Vec<TypeExpr> = Vec::new();

        // Tags.
        if !d.tags.is_empty() {
            let listed = d
                .tags
                .tags
                .iter()
                .cloned()
                .map(TypeExpr::Tag)
                .reduce(TypeExpr::union);
            if d.tags.cofinite {
                // All tags but the listed ones: the tag kind is what is left
                // after removing every other kind from Any.
                let other_kinds = TypeExpr::union(
                    TypeExpr::int(),
                    TypeExpr::union(
                        TypeExpr::prod(TypeExpr::Any, TypeExpr::Any),
                        TypeExpr::union(
                            TypeExpr::arrow(TypeExpr::Empty, TypeExpr::Any),
                            TypeExpr::Record(vec![], true),
                        ),
                    ),
                );
                let excluded = match listed {
                    Some(l) => TypeExpr::union(other_kinds, l),
                    None => other_kinds,
                };
                parts.push(TypeExpr::neg(excluded));
            } else {
                parts.extend(listed);
            }
        }

        // Integers.
        for (lo, hi) in &d.ints.ivs {
            parts.push(TypeExpr::Interval(lo.clone(), hi.clone()));
        }

        // Pairs.
        for (pos, neg) in d.prod.paths() {
            let mut summand = if pos.is_empty() {
                TypeExpr::prod(TypeExpr::Any, TypeExpr::Any)
            } else {
                pos.iter()
                    .map(|a| {
                        let l = self.expr_rec(a.0, stack);
                        let r = self.expr_rec(a.1, stack);
                        TypeExpr::prod(l, r)
                    })
                    .reduce(TypeExpr::inter)
                    .unwrap()
            };
            for a in &neg {
                let l = self.expr_rec(a.0, stack);
                let r = self.expr_rec(a.1, stack);
                summand = TypeExpr::diff(summand, TypeExpr::prod(l, r));
            }
            parts.push(summand);
        }

        // Functions.
        for (pos, neg) in d.arrw.paths() {
            let mut summand = if pos.is_empty() {
                TypeExpr::arrow(TypeExpr::Empty, TypeExpr::Any)
            } else {
                pos.iter()
                    .map(|a| {
                        let l = self.expr_rec(a.0, stack);
                        let r = self.expr_rec(a.1, stack);
                        TypeExpr::arrow(l, r)
                    })
                    .reduce(TypeExpr::inter)
                    .unwrap()
            };
            for a in &neg {
                let l = self.expr_rec(a.0, stack);
                let r = self.expr_rec(a.1, stack);
                summand = TypeExpr::diff(summand, TypeExpr::arrow(l, r));
            }
            parts.push(summand);
        }

        // Records.
        for (pos, neg) in d.recd.paths() {
            let mut summand = if pos.is_empty() {
                TypeExpr::Record(vec![], true)
            } else {
                let atoms: Vec<TypeExpr> = pos
                    .iter()
                    .map(|a| self.record_atom_expr(a, stack))
                    .collect();
                atoms.into_iter().reduce(TypeExpr::inter).unwrap()
            };
            for a in &neg {
                let r = self.record_atom_expr(a, stack);
                summand = TypeExpr::diff(summand, r);
            }
            parts.push(summand);
        }

        let (_, used) = stack.remove(&t).unwrap();
        let body = parts.into_iter().reduce(TypeExpr::union).unwrap_or(TypeExpr::Empty);
        if used {
            TypeExpr::Rec(name, Box::new(body))
        } else {
            body
        }
    }

    fn record_atom_expr(
        &mut self,
        a: &RecordAtom,
        stack: &mut HashMap<TypeId, (String, bool)>,
    ) -> TypeExpr {
        let fields = a
            .fields
            .iter()
            .map(|(l, f)| {
                (
                    l.clone(),
                    FieldExpr {
                        ty: self.expr_rec(f.ty, stack),
                        optional: f.opt,
                    },
                )
            })
            .collect();
        // Open unless the default is exactly "absent". Other defaults only
        // occur in transient internal atoms, which render approximately.
        let open = a.default != FieldTy::bot();
        TypeExpr::Record(fields, open)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    /// Rendering then re-normalizing must give back an equivalent type.
    #[test]
    fn render_round_trips_semantically() {
        for src in [
            "Any",
            "Empty",
            "Int",
            "Bool",
            "`a | [1..5]",
            "not `a",
            "not Int",
            "(Int, `a | `b)",
            "(Int -> Int) & (`a -> `a)",
            "(Int, Int) \\ ([0..4], [0..4])",
            "{x: Int, y ?: `ok}",
            "{x: Int, ..} \\ {x: [0..9], ..}",
            "rec X = `nil | (Int, X)",
            "rec X = `leaf | (X, X)",
            "not (rec X = `nil | (Int, X))",
        ] {
            let mut e = Engine::default();
            let t = parse_type(src, &HashMap::new()).unwrap();
            let id = e.norm(&t);
            let rendered = e.render(id);
            let back = parse_type(&rendered, &HashMap::new())
                .unwrap_or_else(|err| panic!("render of {src} unparsable: {rendered}: {err}"));
            let id2 = e.norm(&back);
            assert!(
                e.equiv(id, id2),
                "render of {src} not equivalent: {rendered}"
            );
        }
    }
}
