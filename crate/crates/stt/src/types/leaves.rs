//! Leaf algebras for the base kinds: finite/cofinite sets of tags, and
//! finite unions of (possibly unbounded) integer intervals. Both support
//! exact union, intersection, difference, and complement, and keep a
//! canonical form so structural equality is meaningful.

use num_bigint::BigInt;
use std::collections::BTreeSet;

/// A set of atomic tags: either a finite set (`cofinite = false`) or the
/// complement of a finite set (`cofinite = true`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TagLeaf {
    pub tags: BTreeSet<String>,
    pub cofinite: bool,
}

impl TagLeaf {
    pub fn empty() -> Self {
        TagLeaf {
            tags: BTreeSet::new(),
            cofinite: false,
        }
    }

    pub fn any() -> Self {
        TagLeaf {
            tags: BTreeSet::new(),
            cofinite: true,
        }
    }

    pub fn single(tag: &str) -> Self {
        TagLeaf {
            tags: std::iter::once(tag.to_string()).collect(),
            cofinite: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.tags.is_empty()
    }

    pub fn is_any(&self) -> bool {
        self.cofinite && self.tags.is_empty()
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.tags.contains(tag) != self.cofinite
    }

    pub fn neg(&self) -> Self {
        TagLeaf {
            tags: self.tags.clone(),
            cofinite: !self.cofinite,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self.cofinite, other.cofinite) {
            (false, false) => TagLeaf {
                tags: self.tags.union(&other.tags).cloned().collect(),
                cofinite: false,
            },
            (true, true) => TagLeaf {
                tags: self.tags.intersection(&other.tags).cloned().collect(),
                cofinite: true,
            },
            // finite ∪ co(F) = co(F \ finite)
            (false, true) => TagLeaf {
                tags: other.tags.difference(&self.tags).cloned().collect(),
                cofinite: true,
            },
            (true, false) => other.union(self),
        }
    }

    pub fn inter(&self, other: &Self) -> Self {
        self.neg().union(&other.neg()).neg()
    }

    pub fn diff(&self, other: &Self) -> Self {
        self.inter(&other.neg())
    }

    /// A canonical inhabitant: the least tag of a finite set, or the least
    /// `#fresh<n>` name avoiding the excluded set of a cofinite one.
    pub fn sample(&self) -> Option<String> {
        if self.cofinite {
            for n in 0.. {
                let cand = format!("#fresh{n}");
                if !self.tags.contains(&cand) {
                    return Some(cand);
                }
            }
            unreachable!()
        } else {
            self.tags.iter().next().cloned()
        }
    }
}

/// A lower or upper interval bound; `None` stands for the corresponding
/// infinity.
pub type Bound = Option<BigInt>;

/// A set of integers as a canonical list of intervals: sorted, pairwise
/// disjoint, and never adjacent (so `[1..2] ∪ [3..4]` is stored as `[1..4]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntLeaf {
    pub ivs: Vec<(Bound, Bound)>,
}

/// `-inf`-biased comparison of lower bounds.
fn lo_le(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (None, _) => true,
        (_, None) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

/// `+inf`-biased comparison of upper bounds.
fn hi_le(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, _) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

impl IntLeaf {
    pub fn empty() -> Self {
        IntLeaf { ivs: Vec::new() }
    }

    pub fn any() -> Self {
        IntLeaf {
            ivs: vec![(None, None)],
        }
    }

    /// A single interval; callers guarantee `lo <= hi` when both are finite.
    pub fn interval(lo: Bound, hi: Bound) -> Self {
        if let (Some(l), Some(h)) = (&lo, &hi) {
            assert!(l <= h, "malformed interval");
        }
        IntLeaf { ivs: vec![(lo, hi)] }
    }

    pub fn single(n: &BigInt) -> Self {
        Self::interval(Some(n.clone()), Some(n.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn is_any(&self) -> bool {
        self.ivs.len() == 1 && self.ivs[0] == (None, None)
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        self.ivs.iter().any(|(lo, hi)| {
            lo.as_ref().map_or(true, |l| l <= n) && hi.as_ref().map_or(true, |h| n <= h)
        })
    }

    pub fn neg(&self) -> Self {
        let mut out = Vec::new();
        // Start of the gap currently being built; cleared when the previous
        // interval extends to +inf.
        let mut gap_lo: Option<Bound> = Some(None);
        for (lo, hi) in &self.ivs {
            if let Some(l) = lo {
                let g = gap_lo.take().expect("intervals not canonical");
                out.push((g, Some(l - 1)));
            }
            gap_lo = hi.as_ref().map(|h| Some(h + 1));
        }
        if let Some(g) = gap_lo {
            out.push((g, None));
        }
        IntLeaf { ivs: out }
    }

    pub fn inter(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (a, b) = (&self.ivs, &other.ivs);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let lo = if lo_le(&a[i].0, &b[j].0) { &b[j].0 } else { &a[i].0 };
            let hi = if hi_le(&a[i].1, &b[j].1) { &a[i].1 } else { &b[j].1 };
            let nonempty = match (lo, hi) {
                (Some(l), Some(h)) => l <= h,
                _ => true,
            };
            if nonempty {
                out.push((lo.clone(), hi.clone()));
            }
            if hi_le(&a[i].1, &b[j].1) {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntLeaf { ivs: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.neg().inter(&other.neg()).neg()
    }

    pub fn diff(&self, other: &Self) -> Self {
        self.inter(&other.neg())
    }

    /// A canonical inhabitant: the least element of the first interval, or
    /// the value nearest zero when the set is unbounded below.
    pub fn sample(&self) -> Option<BigInt> {
        let (lo, hi) = self.ivs.first()?;
        Some(match (lo, hi) {
            (Some(l), _) => l.clone(),
            (None, Some(h)) if *h < BigInt::from(0) => h.clone(),
            _ => BigInt::from(0),
        })
    }
}
