use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::path::Path;
use crate::path_algebra::{rat, Element};
use crate::quiver::{AlgebraPresentation, ArrowId, VertexId};

/// An infinite maximal path, recorded by its generating cycle in the
/// rotation whose arrow sequence is least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteMaximalPath {
    pub generating_cycle: Path,
    pub member_arrows: Vec<ArrowId>,
}

impl InfiniteMaximalPath {
    pub fn cycle(&self) -> &[ArrowId] {
        self.generating_cycle.arrows()
    }

    /// The cycle read from position `i`.
    pub fn rotation(&self, i: usize) -> Path {
        let c = self.cycle();
        let n = c.len();
        Path::Arrows((0..n).map(|k| c[(i + k) % n]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// Arrows on no infinite maximal path; their paths span the radical.
    Radical,
    /// Arrows of the i-th infinite maximal path.
    Component(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub abar_arrows: Vec<ArrowId>,
    pub component_arrows: Vec<Vec<ArrowId>>,
    pub abar_vertices: Vec<VertexId>,
    pub component_vertices: Vec<Vec<VertexId>>,
    arrow_part: Vec<Part>,
}

impl Partition {
    pub fn part_of_arrow(&self, a: ArrowId) -> Part {
        self.arrow_part[a.0]
    }

    /// The part holding a nonstationary basis path. Every arrow of a
    /// nonzero path lies in the same part.
    pub fn part_of_path(&self, p: &Path) -> Option<Part> {
        p.first().map(|a| self.part_of_arrow(a))
    }

    pub fn component_count(&self) -> usize {
        self.component_arrows.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalPathReport {
    pub left_maximal: Vec<Path>,
    pub right_maximal: Vec<Path>,
    pub finite_maximal: Vec<Path>,
    pub infinite_maximal: Vec<InfiniteMaximalPath>,
}

/// Everything derived from the maximal paths of a valid presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStructure {
    pub report: MaximalPathReport,
    pub partition: Partition,
    /// Nonstationary basis paths on no infinite maximal path, in basis order.
    pub radical: Vec<Path>,
}

impl PathStructure {
    pub(crate) fn compute(p: &AlgebraPresentation) -> Result<Self> {
        p.require_valid()?;
        let q = p.quiver();
        let infinite = infinite_maximal_paths(p);
        let mut arrow_part = vec![Part::Radical; q.arrow_count()];
        for (i, g) in infinite.iter().enumerate() {
            for &a in &g.member_arrows {
                arrow_part[a.0] = Part::Component(i);
            }
        }
        let abar_arrows: Vec<ArrowId> = q.arrows().filter(|a| arrow_part[a.0] == Part::Radical).collect();
        let vertices_of = |arrows: &[ArrowId]| -> Vec<VertexId> {
            let set: BTreeSet<VertexId> = arrows.iter().flat_map(|&a| [q.source(a), q.target(a)]).collect();
            set.into_iter().collect()
        };
        let partition = Partition {
            abar_vertices: vertices_of(&abar_arrows),
            component_vertices: infinite.iter().map(|g| vertices_of(&g.member_arrows)).collect(),
            component_arrows: infinite.iter().map(|g| g.member_arrows.clone()).collect(),
            abar_arrows,
            arrow_part,
        };

        let bound = p.max_path_length();
        let mut radical = Vec::new();
        let mut level: Vec<Path> = partition.abar_arrows.iter().map(|&a| Path::arrow(a)).collect();
        let mut len = 1;
        while !level.is_empty() {
            if len > bound {
                return Err(Error::BoundExceeded { bound, witness: q.format_path(&level[0]) });
            }
            radical.extend(level.iter().cloned());
            let mut next = BTreeSet::new();
            for path in &level {
                for &a in &partition.abar_arrows {
                    if let Some(r) = p.concat(path, &Path::arrow(a)) {
                        next.insert(r);
                    }
                }
            }
            level = next.into_iter().collect();
            len += 1;
        }

        let candidates: Vec<Path> = q.vertices().map(Path::Stationary).chain(radical.iter().cloned()).collect();
        let left_maximal: Vec<Path> = candidates.iter().filter(|w| is_left_maximal(p, w)).cloned().collect();
        let right_maximal: Vec<Path> = candidates.iter().filter(|w| is_right_maximal(p, w)).cloned().collect();
        let finite_maximal = left_maximal.iter().filter(|w| right_maximal.contains(w)).cloned().collect();
        Ok(PathStructure {
            report: MaximalPathReport { left_maximal, right_maximal, finite_maximal, infinite_maximal: infinite },
            partition,
            radical,
        })
    }

    pub fn infinite(&self) -> &[InfiniteMaximalPath] {
        &self.report.infinite_maximal
    }

    /// Length of the longest radical path; powers of the radical beyond it vanish.
    pub fn radical_length(&self) -> usize {
        self.radical.last().map(Path::len).unwrap_or(0)
    }

    pub fn longest_finite_maximal(&self) -> usize {
        self.report.finite_maximal.iter().map(Path::len).max().unwrap_or(0)
    }

    pub fn is_finite_maximal(&self, w: &Path) -> bool {
        self.report.finite_maximal.contains(w)
    }
}

/// No arrow extends `w` on the left.
pub fn is_left_maximal(p: &AlgebraPresentation, w: &Path) -> bool {
    let q = p.quiver();
    q.arrows_into(w.source(q)).into_iter().all(|a| p.concat(&Path::arrow(a), w).is_none())
}

/// No arrow extends `w` on the right.
pub fn is_right_maximal(p: &AlgebraPresentation, w: &Path) -> bool {
    let q = p.quiver();
    q.arrows_from(w.target(q)).into_iter().all(|a| p.concat(w, &Path::arrow(a)).is_none())
}

/// The longest basis path starting with `alpha` that repeats no arrow.
pub fn gamma_r(p: &AlgebraPresentation, alpha: ArrowId) -> Path {
    fn longest(p: &AlgebraPresentation, path: Path) -> Path {
        let q = p.quiver();
        let mut best = path.clone();
        for b in q.arrows_from(path.target(q)) {
            if path.contains_arrow(b) {
                continue;
            }
            if let Some(next) = p.concat(&path, &Path::arrow(b)) {
                let cand = longest(p, next);
                if cand.len() > best.len() {
                    best = cand;
                }
            }
        }
        best
    }
    longest(p, Path::arrow(alpha))
}

fn canonical_rotation(cycle: &[ArrowId]) -> Vec<ArrowId> {
    let n = cycle.len();
    (0..n)
        .map(|i| (0..n).map(|k| cycle[(i + k) % n]).collect::<Vec<_>>())
        .min()
        .expect("nonempty cycle")
}

/// Generating cycles of the infinite maximal paths: for each arrow the
/// repeat-free path from it, kept when it is a cycle all of whose powers
/// survive. Powers are tested far enough to contain every window of
/// relation length.
pub fn infinite_maximal_paths(p: &AlgebraPresentation) -> Vec<InfiniteMaximalPath> {
    let q = p.quiver();
    let max_rel = p.relations().max_len();
    let mut found: BTreeSet<Vec<ArrowId>> = BTreeSet::new();
    for a in q.arrows() {
        let c = gamma_r(p, a);
        if !c.is_cycle(q) {
            continue;
        }
        let len = c.len();
        let copies = max_rel.div_ceil(len) + 1;
        let power: Vec<ArrowId> = c.arrows().iter().copied().cycle().take(len * copies.max(2)).collect();
        if p.in_ideal(&Path::Arrows(power)) {
            continue;
        }
        found.insert(canonical_rotation(c.arrows()));
    }
    let mut out: Vec<InfiniteMaximalPath> = found
        .into_iter()
        .map(|cycle| {
            let mut members = cycle.clone();
            members.sort();
            InfiniteMaximalPath { generating_cycle: Path::Arrows(cycle), member_arrows: members }
        })
        .collect();
    out.sort_by(|x, y| x.generating_cycle.cmp(&y.generating_cycle));
    out
}

pub fn classify_maximal(p: &AlgebraPresentation, max_len: usize) -> Result<MaximalPathReport> {
    if max_len == p.max_path_length() {
        return Ok(p.structure()?.report.clone());
    }
    Ok(PathStructure::compute(&p.clone().with_max_path_length(max_len))?.report)
}

pub fn partition(p: &AlgebraPresentation) -> Result<Partition> {
    Ok(p.structure()?.partition.clone())
}

pub fn radical_basis(p: &AlgebraPresentation) -> Result<Vec<Path>> {
    Ok(p.structure()?.radical.clone())
}

/// Sum of the generating cycles of `g`, one rotation per member arrow.
pub fn m_gamma(g: &InfiniteMaximalPath) -> Element {
    (0..g.cycle().len()).map(|i| (g.rotation(i), rat(1))).collect()
}

/// When `alpha A alpha` is nonzero, the sum of the nonzero rotations of the
/// repeat-free cycle from `alpha`.
pub fn z_alpha(p: &AlgebraPresentation, alpha: ArrowId) -> Option<Element> {
    let c = gamma_r(p, alpha);
    if !c.is_cycle(p.quiver()) || p.concat(&c, &Path::arrow(alpha)).is_none() {
        return None;
    }
    let arrows = c.arrows();
    let n = arrows.len();
    Some(
        (0..n)
            .map(|i| Path::Arrows((0..n).map(|k| arrows[(i + k) % n]).collect()))
            .filter(|r| p.is_basis_path(r))
            .map(|r| (r, rat(1)))
            .collect(),
    )
}

/// The finite maximal path parallel to `alpha` that neither starts nor
/// ends with it, if any.
pub fn bar_gamma(p: &AlgebraPresentation, alpha: ArrowId) -> Result<Option<Path>> {
    let q = p.quiver();
    Ok(p.structure()?
        .report
        .finite_maximal
        .iter()
        .find(|w| w.is_parallel_to(q, alpha) && w.first() != Some(alpha) && w.last() != Some(alpha))
        .cloned())
}

/// A basis of the degree-0 part of the center: combinations of stationary
/// paths commuting with every arrow.
pub fn center_degree_zero(p: &AlgebraPresentation) -> Vec<Element> {
    let q = p.quiver();
    let n = q.vertex_count();
    let rows: Vec<Vec<_>> = q
        .arrows()
        .map(|a| {
            let mut row = vec![rat(0); n];
            row[q.source(a).0] += rat(1);
            row[q.target(a).0] -= rat(1);
            row
        })
        .collect();
    linalg::nullspace(&rows, n)
        .into_iter()
        .map(|v| q.vertices().map(|u| (Path::Stationary(u), v[u.0].clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn cycle2() -> AlgebraPresentation {
        parse_quiver("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\n").unwrap()
    }

    #[test]
    fn gamma_r_examples() {
        let p = parse_quiver("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation a b a b\nrelation b a b a\n").unwrap();
        let q = p.quiver();
        assert_eq!(q.format_path(&gamma_r(&p, q.arrow_id("a").unwrap())), "a.b");
        let z = z_alpha(&p, q.arrow_id("a").unwrap()).unwrap();
        assert_eq!(p.format_element(&z), "1*a.b + 1*b.a");
    }

    #[test]
    fn two_cycle_has_one_infinite_path() {
        let p = cycle2();
        let s = p.structure().unwrap();
        assert_eq!(s.infinite().len(), 1);
        assert_eq!(p.quiver().format_path(&s.infinite()[0].generating_cycle), "a.b");
        assert!(s.radical.is_empty());
        assert_eq!(p.format_element(&m_gamma(&s.infinite()[0])), "1*a.b + 1*b.a");
    }

    #[test]
    fn kronecker_maximal_paths() {
        let p = parse_quiver("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n").unwrap();
        let r = classify_maximal(&p, 8).unwrap();
        let names: Vec<String> = r.finite_maximal.iter().map(|w| p.quiver().format_path(w)).collect();
        assert_eq!(names, ["a", "b"]);
        let b = bar_gamma(&p, p.quiver().arrow_id("a").unwrap()).unwrap().unwrap();
        assert_eq!(p.quiver().format_path(&b), "b");
    }

    #[test]
    fn bound_exceeded_is_reported() {
        let p = parse_quiver("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelation a b a b a b\n").unwrap();
        assert!(matches!(classify_maximal(&p, 3), Err(Error::BoundExceeded { .. })));
        assert!(classify_maximal(&p, 6).is_ok());
    }
}
