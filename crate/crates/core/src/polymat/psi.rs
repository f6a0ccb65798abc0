use num_traits::Zero;

use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::maximal_paths::InfiniteMaximalPath;
use crate::path::Path;
use crate::path_algebra::{rat, Element, Rational};
use crate::quiver::{AlgebraPresentation, ArrowId, Quiver, VertexId};

/// Matrix model of the paths along one generating cycle `c_0 ... c_{n-1}`:
/// `c_i` goes to `E_{i,i+1}` and the closing arrow picks up a factor `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEmbedding {
    cycle: Vec<ArrowId>,
    sources: Vec<VertexId>,
}

impl CycleEmbedding {
    pub fn new(q: &Quiver, g: &InfiniteMaximalPath) -> Self {
        let cycle = g.cycle().to_vec();
        let sources = cycle.iter().map(|&a| q.source(a)).collect();
        CycleEmbedding { cycle, sources }
    }

    /// The embedding of an algebra whose only maximal path is infinite.
    pub fn for_presentation(p: &AlgebraPresentation) -> Result<Self> {
        let s = p.structure()?;
        match (s.infinite(), s.report.finite_maximal.is_empty(), s.partition.abar_arrows.is_empty()) {
            ([g], true, true) => Ok(CycleEmbedding::new(p.quiver(), g)),
            _ => Err(Error::Shape(format!(
                "expected exactly one maximal path, infinite; found {} infinite and {} finite",
                s.infinite().len(),
                s.report.finite_maximal.len()
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle(&self) -> &[ArrowId] {
        &self.cycle
    }

    /// Vertices met by the cycle.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v = self.sources.clone();
        v.sort();
        v.dedup();
        v
    }

    /// The path of length `len` along the cycle from position `i`.
    pub fn path_from(&self, i: usize, len: usize) -> Path {
        if len == 0 {
            return Path::Stationary(self.sources[i]);
        }
        let n = self.n();
        Path::Arrows((0..len).map(|t| self.cycle[(i + t) % n]).collect())
    }

    fn position(&self, a: ArrowId) -> Option<usize> {
        self.cycle.iter().position(|&c| c == a)
    }

    pub fn embed_path(&self, q: &Quiver, path: &Path) -> Result<PolyMatrix> {
        let n = self.n();
        let mut m = PolyMatrix::zero(n);
        match path {
            Path::Stationary(v) => {
                for (i, s) in self.sources.iter().enumerate() {
                    if s == v {
                        m.set(i, i, Poly::one());
                    }
                }
            }
            Path::Arrows(arrows) => {
                let i0 = self
                    .position(arrows[0])
                    .ok_or_else(|| Error::NotInImage(format!("arrow {} is off the cycle", q.arrow_name(arrows[0]))))?;
                if arrows.iter().enumerate().any(|(t, &a)| self.cycle[(i0 + t) % n] != a) {
                    return Err(Error::NotInImage(format!("{} does not follow the cycle", q.format_path(path))));
                }
                let len = arrows.len();
                let j = (i0 + len) % n;
                let power = (len + i0 - j) / n;
                m.set(i0, j, Poly::monomial(rat(1), power));
            }
        }
        Ok(m)
    }

    pub fn embed(&self, q: &Quiver, x: &Element) -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(self.n());
        for (path, c) in x.terms() {
            let e = self.embed_path(q, path)?.scale(&Poly::constant(c.clone()));
            m = &m + &e;
        }
        Ok(m)
    }

    /// Inverse of [`CycleEmbedding::embed`] on its image.
    pub fn preimage(&self, q: &Quiver, m: &PolyMatrix) -> Result<Element> {
        let n = self.n();
        if m.n() != n {
            return Err(Error::NotInImage(format!("expected a {n}x{n} matrix, got {}x{}", m.n(), m.n())));
        }
        let mut out = Element::zero();
        let mut vertex_coeff: Vec<(VertexId, Rational)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in m.get(i, j).coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if k == 0 && j < i {
                        return Err(Error::NotInImage(format!(
                            "constant term of entry ({}, {}) below the diagonal is {c}",
                            i + 1,
                            j + 1
                        )));
                    }
                    let len = k * n + j - i;
                    if len == 0 {
                        let v = self.sources[i];
                        match vertex_coeff.iter().find(|(u, _)| *u == v) {
                            Some((_, prev)) if prev != c => {
                                return Err(Error::NotInImage(format!(
                                    "diagonal constants differ at vertex {}: {prev} and {c}",
                                    q.vertex_name(v)
                                )));
                            }
                            Some(_) => {}
                            None => {
                                vertex_coeff.push((v, c.clone()));
                                out.add_term(Path::Stationary(v), c.clone());
                            }
                        }
                    } else {
                        out.add_term(self.path_from(i, len), c.clone());
                    }
                }
            }
        }
        // A vertex whose diagonal constants are partly zero is caught here.
        if &self.embed(q, &out)? != m {
            return Err(Error::NotInImage("diagonal constants differ at a repeated vertex".into()));
        }
        Ok(out)
    }
}

pub fn psi_embed(p: &AlgebraPresentation, x: &Element) -> Result<PolyMatrix> {
    CycleEmbedding::for_presentation(p)?.embed(p.quiver(), x)
}

pub fn psi_preimage(p: &AlgebraPresentation, m: &PolyMatrix) -> Result<Element> {
    CycleEmbedding::for_presentation(p)?.preimage(p.quiver(), m)
}
