use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::path::Path;
use crate::path_algebra::{rat, Element, Rational};
use crate::quiver::{AlgebraPresentation, ArrowId, VertexId};

/// An algebra endomorphism stored by its values on vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    vertex_images: Vec<Element>,
    arrow_images: Vec<Element>,
    certified: bool,
}

/// Which of the standard subgroups an automorphism lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    /// Fixes every vertex.
    pub in_h: bool,
    /// Maps the span of the vertices into itself.
    pub in_hhat: bool,
    /// Graded part is the identity.
    pub in_aut0: bool,
}

impl Endomorphism {
    pub fn identity(p: &AlgebraPresentation) -> Self {
        let q = p.quiver();
        Endomorphism {
            vertex_images: q.vertices().map(|v| p.vertex_element(v)).collect(),
            arrow_images: q.arrows().map(|a| p.arrow_element(a)).collect(),
            certified: true,
        }
    }

    /// Uncertified map from explicit images of every generator.
    pub fn new(vertex_images: Vec<Element>, arrow_images: Vec<Element>) -> Self {
        Endomorphism { vertex_images, arrow_images, certified: false }
    }

    /// Uncertified map fixing the vertices and the unlisted arrows.
    pub fn on_arrows(p: &AlgebraPresentation, images: impl IntoIterator<Item = (ArrowId, Element)>) -> Self {
        let mut f = Endomorphism::identity(p);
        f.certified = false;
        for (a, x) in images {
            f.arrow_images[a.0] = x;
        }
        f
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn vertex_image(&self, v: VertexId) -> &Element {
        &self.vertex_images[v.0]
    }

    pub fn arrow_image(&self, a: ArrowId) -> &Element {
        &self.arrow_images[a.0]
    }

    pub fn vertex_images(&self) -> &[Element] {
        &self.vertex_images
    }

    pub fn arrow_images(&self) -> &[Element] {
        &self.arrow_images
    }

    pub(crate) fn mark_certified(mut self) -> Self {
        self.certified = true;
        self
    }

    pub fn apply_path(&self, p: &AlgebraPresentation, path: &Path) -> Element {
        match path {
            Path::Stationary(v) => self.vertex_images[v.0].clone(),
            Path::Arrows(arrows) => {
                let mut acc = self.arrow_images[arrows[0].0].clone();
                for a in &arrows[1..] {
                    if acc.is_zero() {
                        break;
                    }
                    acc = p.multiply(&acc, &self.arrow_images[a.0]);
                }
                acc
            }
        }
    }

    pub fn apply(&self, p: &AlgebraPresentation, x: &Element) -> Element {
        let mut out = Element::zero();
        for (path, c) in x.terms() {
            out.add_scaled(&self.apply_path(p, path), c);
        }
        out
    }

    /// `self` after `inner`: generators go to `self(inner(g))`.
    pub fn compose(&self, p: &AlgebraPresentation, inner: &Endomorphism) -> Endomorphism {
        Endomorphism {
            vertex_images: inner.vertex_images.iter().map(|x| self.apply(p, x)).collect(),
            arrow_images: inner.arrow_images.iter().map(|x| self.apply(p, x)).collect(),
            certified: self.certified && inner.certified,
        }
    }

    pub fn is_identity(&self, p: &AlgebraPresentation) -> bool {
        let q = p.quiver();
        q.vertices().all(|v| self.vertex_images[v.0] == p.vertex_element(v))
            && q.arrows().all(|a| self.arrow_images[a.0] == p.arrow_element(a))
    }

    /// Checks the homomorphism identities on generators and relations.
    pub fn verify(mut self, p: &AlgebraPresentation) -> Result<Endomorphism> {
        let q = p.quiver();
        if self.vertex_images.len() != q.vertex_count() || self.arrow_images.len() != q.arrow_count() {
            return Err(Error::Certification("images must be given for every vertex and arrow".into()));
        }
        let name = |v: VertexId| q.vertex_name(v).to_string();
        let mut sum = Element::zero();
        for v in q.vertices() {
            let e = &self.vertex_images[v.0];
            if &p.multiply(e, e) != e {
                return Err(Error::Certification(format!("f(e_{0})*f(e_{0}) != f(e_{0})", name(v))));
            }
            for w in q.vertices().filter(|&w| w != v) {
                if !p.multiply(e, &self.vertex_images[w.0]).is_zero() {
                    return Err(Error::Certification(format!("f(e_{})*f(e_{}) != 0", name(v), name(w))));
                }
            }
            sum = sum.plus(e);
        }
        if sum != p.one() {
            return Err(Error::Certification("the vertex images do not sum to 1".into()));
        }
        for a in q.arrows() {
            let s = &self.vertex_images[q.source(a).0];
            let t = &self.vertex_images[q.target(a).0];
            let x = &self.arrow_images[a.0];
            if &p.product(&[s, x, t]) != x {
                return Err(Error::Certification(format!(
                    "f(e_{})*f({2})*f(e_{}) != f({2})",
                    name(q.source(a)),
                    name(q.target(a)),
                    q.arrow_name(a)
                )));
            }
        }
        for r in p.relations().generators() {
            if !self.apply_path(p, r).is_zero() {
                return Err(Error::Certification(format!("relation {} is not sent to 0", q.format_path(r))));
            }
        }
        self.certified = true;
        Ok(self)
    }

    /// Images never lower path length below one on arrows.
    pub fn preserves_radical(&self) -> bool {
        self.arrow_images.iter().all(|x| x.paths().all(|p| !p.is_stationary()))
    }

    /// The map sending each generator to the component of its image in the
    /// generator's own degree.
    pub fn graded_part(&self, p: &AlgebraPresentation) -> Result<Endomorphism> {
        if p.is_polynomial_ring() {
            return Err(Error::PolynomialRing);
        }
        let g = Endomorphism {
            vertex_images: self.vertex_images.iter().map(|x| x.degree_part(0)).collect(),
            arrow_images: self.arrow_images.iter().map(|x| x.degree_part(1)).collect(),
            certified: false,
        };
        g.verify(p).map_err(|e| match e {
            Error::Certification(m) => Error::Certification(format!("graded part is not a homomorphism: {m}")),
            other => other,
        })
    }

    pub fn membership(&self, p: &AlgebraPresentation) -> Result<Membership> {
        let q = p.quiver();
        let in_h = q.vertices().all(|v| self.vertex_images[v.0] == p.vertex_element(v));
        let mut hit = vec![false; q.vertex_count()];
        let in_hhat = self.vertex_images.iter().all(|x| match x.terms().collect::<Vec<_>>().as_slice() {
            [(Path::Stationary(w), c)] if c.is_one() && !hit[w.0] => {
                hit[w.0] = true;
                true
            }
            _ => false,
        });
        let in_aut0 = self.graded_part(p)?.is_identity(p);
        Ok(Membership { in_h, in_hhat, in_aut0 })
    }

    /// Inverse of a graded automorphism: vertices are permuted and arrows
    /// go to combinations of arrows.
    pub fn invert_graded(&self, p: &AlgebraPresentation) -> Result<Endomorphism> {
        let q = p.quiver();
        let mut inverse_vertex = vec![None; q.vertex_count()];
        for v in q.vertices() {
            match self.vertex_images[v.0].terms().collect::<Vec<_>>().as_slice() {
                [(Path::Stationary(w), c)] if c.is_one() && inverse_vertex[w.0].is_none() => {
                    inverse_vertex[w.0] = Some(v)
                }
                _ => {
                    return Err(Error::NotInvertible(format!(
                        "graded map does not permute the vertices at e_{}",
                        q.vertex_name(v)
                    )))
                }
            }
        }
        let m = q.arrow_count();
        // column a holds the coordinates of the image of arrow a
        let mut matrix = vec![vec![Rational::zero(); m]; m];
        for a in q.arrows() {
            for (path, c) in self.arrow_images[a.0].terms() {
                match path.arrows() {
                    [b] if path.len() == 1 => matrix[b.0][a.0] = c.clone(),
                    _ => return Err(Error::NotInvertible(format!("image of {} is not linear", q.arrow_name(a)))),
                }
            }
        }
        let mut arrow_images = Vec::with_capacity(m);
        for b in q.arrows() {
            let mut unit = vec![Rational::zero(); m];
            unit[b.0] = rat(1);
            let x = linalg::solve(&matrix, &unit, m)
                .ok_or_else(|| Error::Certification("not an automorphism: the graded part is singular on arrows".into()))?;
            arrow_images.push(q.arrows().map(|a| (Path::arrow(a), x[a.0].clone())).collect());
        }
        let inv = Endomorphism {
            vertex_images: inverse_vertex
                .into_iter()
                .map(|v| p.vertex_element(v.expect("vertex images form a permutation")))
                .collect(),
            arrow_images,
            certified: false,
        }
        .verify(p)?;
        if !inv.compose(p, self).is_identity(p) {
            return Err(Error::NotInvertible("graded map has no graded inverse".into()));
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex46() -> AlgebraPresentation {
        AlgebraPresentation::from_parts(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a b", "b a b a"])
            .unwrap()
    }

    fn on(p: &AlgebraPresentation, a: &str, b: &str) -> Endomorphism {
        let q = p.quiver();
        Endomorphism::on_arrows(
            p,
            [
                (q.arrow_id("a").unwrap(), p.parse_element(a).unwrap()),
                (q.arrow_id("b").unwrap(), p.parse_element(b).unwrap()),
            ],
        )
    }

    #[test]
    fn certification() {
        let p = ex46();
        assert!(Endomorphism::identity(&p).verify(&p).is_ok());
        assert!(on(&p, "a + 2*a.b.a", "b - 2*b.a.b").verify(&p).is_ok());
        let err = on(&p, "a + a.b", "b").verify(&p).unwrap_err();
        assert_eq!(err, Error::Certification("f(e_1)*f(a)*f(e_2) != f(a)".into()));
    }

    #[test]
    fn graded_parts_and_membership() {
        let p = ex46();
        let f = on(&p, "a + a.b.a", "b").verify(&p).unwrap();
        assert!(f.graded_part(&p).unwrap().is_identity(&p));
        let m = f.membership(&p).unwrap();
        assert!(m.in_h && m.in_hhat && m.in_aut0);
        let s = on(&p, "2*a", "3*b").verify(&p).unwrap();
        assert_eq!(s.graded_part(&p).unwrap(), s);
        assert!(!s.membership(&p).unwrap().in_aut0);
        let inv = s.invert_graded(&p).unwrap();
        assert_eq!(inv.arrow_image(ArrowId(0)), &p.parse_element("1/2*a").unwrap());
    }

    #[test]
    fn vertex_swap() {
        let p = ex46();
        let swap = Endomorphism::new(
            vec![p.parse_element("e_2").unwrap(), p.parse_element("e_1").unwrap()],
            vec![p.parse_element("b").unwrap(), p.parse_element("a").unwrap()],
        )
        .verify(&p)
        .unwrap();
        let m = swap.membership(&p).unwrap();
        assert!(m.in_hhat && !m.in_h && !m.in_aut0);
        assert!(swap.invert_graded(&p).unwrap().compose(&p, &swap).is_identity(&p));
    }

    /// Both Kronecker arrows run 1 -> 2, so exchanging the vertices cannot
    /// be a homomorphism.
    #[test]
    fn kronecker_vertex_swap_is_rejected() {
        let p = AlgebraPresentation::from_parts(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap();
        let swap = Endomorphism::new(
            vec![p.parse_element("e_2").unwrap(), p.parse_element("e_1").unwrap()],
            vec![p.parse_element("a").unwrap(), p.parse_element("b").unwrap()],
        );
        assert!(matches!(swap.verify(&p), Err(Error::Certification(_))));
    }
}
