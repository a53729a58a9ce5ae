//! Well-formedness checks on type expressions: every variable must be bound
//! (by a `rec` binder or a `type` declaration), and recursion must be
//! contractive — a binder may not reach itself through unions, intersections,
//! and negations alone. Crossing a product, arrow, or record constructor
//! breaks the cycle, so `rec X = (X, X)` is fine while `rec X = X | X` and
//! `rec X = not X` are not.

use std::collections::HashMap;

use super::ast::TypeExpr;
use super::ParseError;

/// One node per `rec` binder occurrence and per named declaration.
type NodeId = usize;

struct Checker {
    decl_nodes: HashMap<String, NodeId>,
    node_names: Vec<String>,
    edges: Vec<Vec<NodeId>>,
}

impl Checker {
    fn fresh(&mut self, name: &str) -> NodeId {
        let id = self.node_names.len();
        self.node_names.push(name.to_string());
        self.edges.push(Vec::new());
        id
    }

    /// Walk `t`, recording an edge whenever expanding `current` immediately
    /// requires expanding another binder (i.e. the reference sits at
    /// connective level, not under a type constructor).
    fn walk(
        &mut self,
        t: &TypeExpr,
        current: Option<NodeId>,
        scope: &mut Vec<(String, NodeId)>,
    ) -> Result<(), ParseError> {
        match t {
            TypeExpr::Any
            | TypeExpr::Empty
            | TypeExpr::Tag(_)
            | TypeExpr::Interval(_, _) => Ok(()),
            TypeExpr::Var(x) => {
                let target = scope
                    .iter()
                    .rev()
                    .find(|(n, _)| n == x)
                    .map(|(_, id)| *id)
                    .or_else(|| self.decl_nodes.get(x).copied());
                match target {
                    Some(id) => {
                        if let Some(cur) = current {
                            self.edges[cur].push(id);
                        }
                        Ok(())
                    }
                    None => Err(ParseError::UnboundVar(x.clone())),
                }
            }
            TypeExpr::Union(a, b) | TypeExpr::Inter(a, b) => {
                self.walk(a, current, scope)?;
                self.walk(b, current, scope)
            }
            TypeExpr::Neg(a) => self.walk(a, current, scope),
            TypeExpr::Rec(name, body) => {
                let node = self.fresh(name);
                if let Some(cur) = current {
                    self.edges[cur].push(node);
                }
                scope.push((name.clone(), node));
                let r = self.walk(body, Some(node), scope);
                scope.pop();
                r
            }
            TypeExpr::Prod(a, b) | TypeExpr::Arrow(a, b) => {
                self.walk(a, None, scope)?;
                self.walk(b, None, scope)
            }
            TypeExpr::Record(fields, _) => {
                for (_, f) in fields {
                    self.walk(&f.ty, None, scope)?;
                }
                Ok(())
            }
        }
    }

    fn find_cycle(&self) -> Option<String> {
        // Iterative DFS with the usual three-color scheme.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let n = self.node_names.len();
        let mut color = vec![Color::White; n];
        for start in 0..n {
            if color[start] != Color::White {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            color[start] = Color::Gray;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next < self.edges[node].len() {
                    let child = self.edges[node][*next];
                    *next += 1;
                    match color[child] {
                        Color::Gray => return Some(self.node_names[child].clone()),
                        Color::White => {
                            color[child] = Color::Gray;
                            stack.push((child, 0));
                        }
                        Color::Black => {}
                    }
                } else {
                    color[node] = Color::Black;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// Check a single type against a set of named declarations (which may
/// reference each other in any order, including mutually).
pub fn validate_type(
    t: &TypeExpr,
    decls: &HashMap<String, TypeExpr>,
) -> Result<(), ParseError> {
    validate_all(Some(t), decls)
}

/// Check a whole declaration set, plus an optional extra standalone type.
pub fn validate_all(
    extra: Option<&TypeExpr>,
    decls: &HashMap<String, TypeExpr>,
) -> Result<(), ParseError> {
    let mut c = Checker {
        decl_nodes: HashMap::new(),
        node_names: Vec::new(),
        edges: Vec::new(),
    };
    let names: Vec<&String> = {
        let mut v: Vec<&String> = decls.keys().collect();
        v.sort();
        v
    };
    for name in &names {
        let id = c.fresh(name);
        c.decl_nodes.insert((*name).clone(), id);
    }
    for name in &names {
        let node = c.decl_nodes[*name];
        c.walk(&decls[*name], Some(node), &mut Vec::new())?;
    }
    if let Some(t) = extra {
        c.walk(t, None, &mut Vec::new())?;
    }
    match c.find_cycle() {
        Some(name) => Err(ParseError::Contractivity(name)),
        None => Ok(()),
    }
}
