use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::maximal_paths::bar_gamma;
use crate::quiver::{AlgebraPresentation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Kronecker,
    /// Every arrow has one parallel partner and the pairs form a line.
    DoubledLine,
    /// Every arrow has one parallel partner and the pairs form a cycle.
    DoubledCycle,
    GeneralGentle,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Kronecker => "kronecker",
            Shape::DoubledLine => "doubled line",
            Shape::DoubledCycle => "doubled cycle",
            Shape::GeneralGentle => "gentle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterClassReport {
    pub shape: Shape,
    pub group_description: String,
    /// Arrows with a parallel finite maximal path avoiding them at both ends.
    pub n_bar_gamma: usize,
}

/// The group of vertex-fixing automorphisms modulo inner ones, for a gentle
/// or locally gentle algebra, as a symbolic description.
pub fn outer_class(p: &AlgebraPresentation) -> Result<OuterClassReport> {
    if p.is_polynomial_ring() {
        return Err(Error::PolynomialRing);
    }
    if !p.classification().is_gentle() {
        return Err(Error::NotGentle(p.report().reason()));
    }
    let q = p.quiver();
    let m = q.arrow_count();
    let mut n_bar_gamma = 0;
    for a in q.arrows() {
        if bar_gamma(p, a)?.is_some() {
            n_bar_gamma += 1;
        }
    }
    let shape = doubled_shape(p);
    let group_description = match shape {
        Shape::Kronecker => "GL_2(k)".to_string(),
        Shape::DoubledLine | Shape::DoubledCycle => format!("Z/2Z ⋉ (k^×)^{m}"),
        Shape::GeneralGentle if n_bar_gamma == 0 => format!("(k^×)^{m}"),
        Shape::GeneralGentle => format!("(k^×)^{m} ⋉ k^{n_bar_gamma}"),
    };
    Ok(OuterClassReport { shape, group_description, n_bar_gamma })
}

fn doubled_shape(p: &AlgebraPresentation) -> Shape {
    let q = p.quiver();
    let mut pairs: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for a in q.arrows() {
        *pairs.entry((q.source(a), q.target(a))).or_default() += 1;
    }
    if pairs.values().any(|&c| c != 2) || pairs.keys().any(|(s, t)| s == t) {
        return Shape::GeneralGentle;
    }
    let edges: BTreeSet<(VertexId, VertexId)> = pairs.keys().map(|&(s, t)| (s.min(t), s.max(t))).collect();
    if edges.len() != pairs.len() {
        return Shape::GeneralGentle;
    }
    let mut degree = vec![0usize; q.vertex_count()];
    for (s, t) in &edges {
        degree[s.0] += 1;
        degree[t.0] += 1;
    }
    let vertices = q.vertex_count();
    if !q.is_connected() || degree.iter().any(|&d| d > 2) {
        return Shape::GeneralGentle;
    }
    match edges.len() {
        1 if vertices == 2 && p.relations().is_empty() => Shape::Kronecker,
        e if e >= 2 && e + 1 == vertices => Shape::DoubledLine,
        e if e >= 3 && e == vertices => Shape::DoubledCycle,
        _ => Shape::GeneralGentle,
    }
}
