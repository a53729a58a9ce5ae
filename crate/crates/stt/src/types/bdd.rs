//! Ternary decision diagrams over ordered constructor atoms.
//!
//! A node `(a ? L : M : R)` denotes `(a ∧ L) ∨ M ∨ (¬a ∧ R)`. Atoms are kept
//! strictly increasing along every root-to-leaf path. The middle ("don't
//! care") branch makes union lazy: two diagrams over the same atom merge by
//! pushing the disagreement into the middle instead of multiplying out the
//! product of their branches. Intersection and difference do materialize the
//! middle branches as they descend.

use std::rc::Rc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bdd<A> {
    False,
    True,
    Node(Rc<BddNode<A>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BddNode<A> {
    pub atom: A,
    pub left: Bdd<A>,
    pub mid: Bdd<A>,
    pub right: Bdd<A>,
}

impl<A: Clone + Ord> Bdd<A> {
    pub fn atom(a: A) -> Self {
        Bdd::node(a, Bdd::True, Bdd::False, Bdd::False)
    }

    /// Smart constructor: applies `(a ? L : 1 : R) = 1` and
    /// `(a ? B : M : B) = B ∨ M`, which keep diagrams small without
    /// changing their meaning.
    pub fn node(atom: A, left: Bdd<A>, mid: Bdd<A>, right: Bdd<A>) -> Self {
        if mid == Bdd::True {
            return Bdd::True;
        }
        if left == right {
            return left.union(&mid);
        }
        Bdd::Node(Rc::new(BddNode {
            atom,
            left,
            mid,
            right,
        }))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Bdd::False)
    }

    pub fn union(&self, other: &Bdd<A>) -> Bdd<A> {
        match (self, other) {
            (Bdd::True, _) | (_, Bdd::True) => Bdd::True,
            (Bdd::False, b) => b.clone(),
            (b, Bdd::False) => b.clone(),
            (Bdd::Node(n1), Bdd::Node(n2)) => {
                if Rc::ptr_eq(n1, n2) {
                    return self.clone();
                }
                match n1.atom.cmp(&n2.atom) {
                    std::cmp::Ordering::Equal => Bdd::node(
                        n1.atom.clone(),
                        n1.left.union(&n2.left),
                        n1.mid.union(&n2.mid),
                        n1.right.union(&n2.right),
                    ),
                    std::cmp::Ordering::Less => Bdd::node(
                        n1.atom.clone(),
                        n1.left.clone(),
                        n1.mid.union(other),
                        n1.right.clone(),
                    ),
                    std::cmp::Ordering::Greater => Bdd::node(
                        n2.atom.clone(),
                        n2.left.clone(),
                        n2.mid.union(self),
                        n2.right.clone(),
                    ),
                }
            }
        }
    }

    pub fn inter(&self, other: &Bdd<A>) -> Bdd<A> {
        match (self, other) {
            (Bdd::False, _) | (_, Bdd::False) => Bdd::False,
            (Bdd::True, b) => b.clone(),
            (b, Bdd::True) => b.clone(),
            (Bdd::Node(n1), Bdd::Node(n2)) => {
                if Rc::ptr_eq(n1, n2) {
                    return self.clone();
                }
                match n1.atom.cmp(&n2.atom) {
                    std::cmp::Ordering::Equal => Bdd::node(
                        n1.atom.clone(),
                        n1.left.union(&n1.mid).inter(&n2.left.union(&n2.mid)),
                        Bdd::False,
                        n1.right.union(&n1.mid).inter(&n2.right.union(&n2.mid)),
                    ),
                    std::cmp::Ordering::Less => Bdd::node(
                        n1.atom.clone(),
                        n1.left.union(&n1.mid).inter(other),
                        Bdd::False,
                        n1.right.union(&n1.mid).inter(other),
                    ),
                    std::cmp::Ordering::Greater => Bdd::node(
                        n2.atom.clone(),
                        n2.left.union(&n2.mid).inter(self),
                        Bdd::False,
                        n2.right.union(&n2.mid).inter(self),
                    ),
                }
            }
        }
    }

    pub fn diff(&self, other: &Bdd<A>) -> Bdd<A> {
        match (self, other) {
            (Bdd::False, _) | (_, Bdd::True) => Bdd::False,
            (b, Bdd::False) => b.clone(),
            (Bdd::True, Bdd::Node(n2)) => Bdd::node(
                n2.atom.clone(),
                Bdd::True.diff(&n2.left.union(&n2.mid)),
                Bdd::False,
                Bdd::True.diff(&n2.right.union(&n2.mid)),
            ),
            (Bdd::Node(n1), Bdd::Node(n2)) => {
                if Rc::ptr_eq(n1, n2) {
                    return Bdd::False;
                }
                match n1.atom.cmp(&n2.atom) {
                    std::cmp::Ordering::Equal => Bdd::node(
                        n1.atom.clone(),
                        n1.left.union(&n1.mid).diff(&n2.left.union(&n2.mid)),
                        Bdd::False,
                        n1.right.union(&n1.mid).diff(&n2.right.union(&n2.mid)),
                    ),
                    std::cmp::Ordering::Less => Bdd::node(
                        n1.atom.clone(),
                        n1.left.union(&n1.mid).diff(other),
                        Bdd::False,
                        n1.right.union(&n1.mid).diff(other),
                    ),
                    std::cmp::Ordering::Greater => Bdd::node(
                        n2.atom.clone(),
                        self.diff(&n2.left.union(&n2.mid)),
                        Bdd::False,
                        self.diff(&n2.right.union(&n2.mid)),
                    ),
                }
            }
        }
    }

    pub fn neg(&self) -> Bdd<A> {
        Bdd::True.diff(self)
    }

    /// Disjunctive normal form: each entry is one root-to-`True` path, as
    /// (atoms taken positively, atoms taken negatively). The diagram denotes
    /// the union over all entries of `⋀ pos ∧ ⋀ ¬neg`.
    pub fn paths(&self) -> Vec<(Vec<A>, Vec<A>)> {
        let mut out = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        self.walk(&mut pos, &mut neg, &mut out);
        out
    }

    fn walk(&self, pos: &mut Vec<A>, neg: &mut Vec<A>, out: &mut Vec<(Vec<A>, Vec<A>)>) {
        match self {
            Bdd::False => {}
            Bdd::True => out.push((pos.clone(), neg.clone())),
            Bdd::Node(n) => {
                pos.push(n.atom.clone());
                n.left.walk(pos, neg, out);
                pos.pop();
                n.mid.walk(pos, neg, out);
                neg.push(n.atom.clone());
                n.right.walk(pos, neg, out);
                neg.pop();
            }
        }
    }

    /// Every atom mentioned anywhere in the diagram.
    pub fn atoms(&self) -> Vec<A> {
        let mut out = Vec::new();
        fn go<A: Clone>(b: &Bdd<A>, out: &mut Vec<A>) {
            if let Bdd::Node(n) = b {
                out.push(n.atom.clone());
                go(&n.left, out);
                go(&n.mid, out);
                go(&n.right, out);
            }
        }
        go(self, &mut out);
        out
    }

    /// Check the strict atom ordering invariant along every path. Used by
    /// tests; `prev` is the largest atom seen above, exclusive.
    pub fn paths_ordered(&self) -> bool {
        fn go<A: Ord>(b: &Bdd<A>, prev: Option<&A>) -> bool {
            match b {
                Bdd::False | Bdd::True => true,
                Bdd::Node(n) => {
                    if let Some(p) = prev {
                        if *p >= n.atom {
                            return false;
                        }
                    }
                    go(&n.left, Some(&n.atom))
                        && go(&n.mid, Some(&n.atom))
                        && go(&n.right, Some(&n.atom))
                }
            }
        }
        go(self, None)
    }
}
