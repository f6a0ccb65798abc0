use std::cmp::Ordering;

use crate::quiver::{ArrowId, Quiver, VertexId};

/// A path in the quiver: either the stationary path at a vertex or a
/// nonempty sequence of composable arrows, read left to right.
///
/// Paths are ordered by length first, then lexicographically by arrow
/// index, which is the canonical basis order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Stationary(VertexId),
    Arrows(Vec<ArrowId>),
}

impl Path {
    pub fn stationary(v: VertexId) -> Self {
        Path::Stationary(v)
    }

    pub fn arrow(a: ArrowId) -> Self {
        Path::Arrows(vec![a])
    }

    /// Builds a path from arrows, checking that consecutive arrows compose.
    /// Returns `None` for an empty or non-composable sequence.
    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Option<Self> {
        if arrows.is_empty() {
            return None;
        }
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return None;
            }
        }
        Some(Path::Arrows(arrows))
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Stationary(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_stationary(&self) -> bool {
        matches!(self, Path::Stationary(_))
    }

    /// The arrow sequence; empty for a stationary path.
    pub fn arrows(&self) -> &[ArrowId] {
        match self {
            Path::Stationary(_) => &[],
            Path::Arrows(a) => a,
        }
    }

    pub fn first(&self) -> Option<ArrowId> {
        self.arrows().first().copied()
    }

    pub fn last(&self) -> Option<ArrowId> {
        self.arrows().last().copied()
    }

    pub fn source(&self, q: &Quiver) -> VertexId {
        match self {
            Path::Stationary(v) => *v,
            Path::Arrows(a) => q.source(a[0]),
        }
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        match self {
            Path::Stationary(v) => *v,
            Path::Arrows(a) => q.target(a[a.len() - 1]),
        }
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        !self.is_stationary() && self.source(q) == self.target(q)
    }

    pub fn contains_arrow(&self, a: ArrowId) -> bool {
        self.arrows().contains(&a)
    }

    /// Same source and target as the arrow `a`.
    pub fn is_parallel_to(&self, q: &Quiver, a: ArrowId) -> bool {
        self.source(q) == q.source(a) && self.target(q) == q.target(a)
    }

    /// Contiguous subpath test on arrow sequences. Stationary paths are
    /// subpaths of the paths through their vertex.
    pub fn is_subpath_of(&self, q: &Quiver, other: &Path) -> bool {
        match (self, other) {
            (Path::Stationary(v), Path::Stationary(w)) => v == w,
            (Path::Stationary(v), Path::Arrows(arrows)) => {
                q.source(arrows[0]) == *v || arrows.iter().any(|&a| q.target(a) == *v)
            }
            (Path::Arrows(_), Path::Stationary(_)) => false,
            (Path::Arrows(small), Path::Arrows(big)) => {
                small.len() <= big.len() && big.windows(small.len()).any(|w| w == small.as_slice())
            }
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Path::Stationary(a), Path::Stationary(b)) => a.cmp(b),
            (Path::Stationary(_), Path::Arrows(_)) => Ordering::Less,
            (Path::Arrows(_), Path::Stationary(_)) => Ordering::Greater,
            (Path::Arrows(a), Path::Arrows(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
        }
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_length_then_lexicographic() {
        let p = Path::Arrows(vec![ArrowId(1)]);
        let q = Path::Arrows(vec![ArrowId(0), ArrowId(1)]);
        let e = Path::Stationary(VertexId(3));
        assert!(e < p);
        assert!(p < q);
        assert!(Path::Arrows(vec![ArrowId(0), ArrowId(2)]) < Path::Arrows(vec![ArrowId(1), ArrowId(0)]));
    }
}
