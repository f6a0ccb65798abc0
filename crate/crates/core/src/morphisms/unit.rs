use num_traits::{One, Zero};

use super::endomorphism::Endomorphism;
use crate::error::{Error, Result};
use crate::maximal_paths::Part;
use crate::path::Path;
use crate::path_algebra::{rat, Element};
use crate::polymat::{CycleEmbedding, PolyMatrix};
use crate::quiver::AlgebraPresentation;

/// An invertible element together with its verified inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    value: Element,
    inverse: Element,
}

impl Unit {
    pub fn one(p: &AlgebraPresentation) -> Self {
        Unit { value: p.one(), inverse: p.one() }
    }

    pub fn value(&self) -> &Element {
        &self.value
    }

    pub fn inverse(&self) -> &Element {
        &self.inverse
    }

    pub fn is_one(&self, p: &AlgebraPresentation) -> bool {
        self.value == p.one()
    }

    /// True when every vertex carries coefficient one.
    pub fn is_normalized(&self, p: &AlgebraPresentation) -> bool {
        p.vertex_coefficients(&self.value).iter().all(One::is_one)
    }

    pub fn times(&self, p: &AlgebraPresentation, other: &Unit) -> Unit {
        Unit {
            value: p.multiply(&self.value, &other.value),
            inverse: p.multiply(&other.inverse, &self.inverse),
        }
    }

    /// Pairs a value with an inverse the caller has already established.
    pub(crate) fn from_parts(value: Element, inverse: Element) -> Unit {
        Unit { value, inverse }
    }

    pub fn inverted(&self) -> Unit {
        Unit { value: self.inverse.clone(), inverse: self.value.clone() }
    }
}

/// Inverts `u`, or reports which part of it fails to be invertible.
///
/// After dividing out the vertex coefficients, `u = 1 + r` with `r` in the
/// arrow ideal. The radical part of `r` is nilpotent and inverted by a
/// finite geometric series; the part on each infinite maximal path is
/// inverted through its polynomial matrix model.
pub fn invert_unit(p: &AlgebraPresentation, u: &Element) -> Result<Unit> {
    let q = p.quiver();
    let s = p.structure()?;
    let coeffs = p.vertex_coefficients(u);
    if let Some(v) = q.vertices().find(|v| coeffs[v.0].is_zero()) {
        return Err(Error::NotAUnit(format!("coefficient of e_{} is zero", q.vertex_name(v))));
    }
    let u0_inv: Element = q.vertices().map(|v| (Path::Stationary(v), rat(1) / coeffs[v.0].clone())).collect();
    let r = p.multiply(&u0_inv, u).minus(&p.one());

    let radical = r.filter(|w| s.partition.part_of_path(w) == Some(Part::Radical));
    let mut inverse = geometric_inverse(p, &radical, s.radical_length() + 1)?;

    for (i, g) in s.infinite().iter().enumerate() {
        let part = r.filter(|w| s.partition.part_of_path(w) == Some(Part::Component(i)));
        if part.is_zero() {
            continue;
        }
        let embedding = CycleEmbedding::new(q, g);
        let n = embedding.n();
        let m = &PolyMatrix::identity(n) + &embedding.embed(q, &part)?;
        let not_unit = |why: String| Error::NotAUnit(format!("component {i}: {why}"));
        let inv = m.inverse().map_err(|e| not_unit(e.to_string()))?;
        let tail = embedding
            .preimage(q, &(&inv - &PolyMatrix::identity(n)))
            .map_err(|e| not_unit(format!("inverse leaves the image: {e}")))?;
        inverse = p.multiply(&inverse, &p.one().plus(&tail));
    }
    let inverse = p.multiply(&inverse, &u0_inv);
    if p.multiply(u, &inverse) != p.one() || p.multiply(&inverse, u) != p.one() {
        return Err(Error::NotAUnit("computed inverse fails verification".into()));
    }
    Ok(Unit { value: u.clone(), inverse })
}

/// `(1 + r)^-1 = sum (-r)^k` for nilpotent `r`.
fn geometric_inverse(p: &AlgebraPresentation, r: &Element, bound: usize) -> Result<Element> {
    let mut sum = p.one();
    let neg = r.neg();
    let mut power = p.one();
    for _ in 0..bound {
        power = p.multiply(&power, &neg);
        if power.is_zero() {
            return Ok(sum);
        }
        sum = sum.plus(&power);
    }
    if power.is_zero() {
        Ok(sum)
    } else {
        Err(Error::NotAUnit("radical part is not nilpotent within the radical length".into()))
    }
}

/// Conjugation `w -> u^-1 w u` without restricting the degree-0 part.
pub(crate) fn conjugation(p: &AlgebraPresentation, u: &Unit) -> Endomorphism {
    let q = p.quiver();
    let conj = |x: &Element| p.product(&[&u.inverse, x, &u.value]);
    Endomorphism::new(
        q.vertices().map(|v| conj(&p.vertex_element(v))).collect(),
        q.arrows().map(|a| conj(&p.arrow_element(a))).collect(),
    )
    .mark_certified()
}

/// The inner automorphism `w -> u^-1 w u` of a unit with degree-0 part 1.
pub fn inner_automorphism(p: &AlgebraPresentation, u: &Unit) -> Result<Endomorphism> {
    if !u.is_normalized(p) {
        return Err(Error::NotAUnit(format!(
            "inner automorphisms take units with degree-0 part 1, got {}",
            p.format_element(&u.value)
        )));
    }
    conjugation(p, u).verify(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex46() -> AlgebraPresentation {
        AlgebraPresentation::from_parts(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a b", "b a b a"])
            .unwrap()
    }

    fn free_cycle() -> AlgebraPresentation {
        AlgebraPresentation::from_parts(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[]).unwrap()
    }

    #[test]
    fn units_of_the_free_cycle() {
        let p = free_cycle();
        let u = invert_unit(&p, &p.parse_element("1 + a").unwrap()).unwrap();
        assert_eq!(p.format_element(u.inverse()), "1 - 1*a");
        assert!(matches!(invert_unit(&p, &p.parse_element("1 + a.b").unwrap()), Err(Error::NotAUnit(_))));
        assert!(matches!(invert_unit(&p, &p.parse_element("e_1 + a").unwrap()), Err(Error::NotAUnit(_))));
        let f = inner_automorphism(&p, &u).unwrap();
        let b = p.quiver().arrow_id("b").unwrap();
        assert_eq!(f.arrow_image(b), &p.parse_element("b + b.a - a.b - a.b.a").unwrap());
    }

    #[test]
    fn worked_inner_automorphism() {
        let p = ex46();
        let u = invert_unit(&p, &p.parse_element("1 - a.b + b.a").unwrap()).unwrap();
        assert_eq!(p.format_element(u.inverse()), "1 + 1*a.b - 1*b.a");
        let f = inner_automorphism(&p, &u).unwrap();
        let q = p.quiver();
        assert_eq!(f.arrow_image(q.arrow_id("a").unwrap()), &p.parse_element("a + 2*a.b.a").unwrap());
        assert_eq!(f.arrow_image(q.arrow_id("b").unwrap()), &p.parse_element("b - 2*b.a.b").unwrap());
        assert!(inner_automorphism(&p, &Unit::one(&p)).unwrap().is_identity(&p));
    }

    #[test]
    fn scaled_units() {
        let p = ex46();
        let u = invert_unit(&p, &p.parse_element("2*e_1 + 3*e_2 + a").unwrap()).unwrap();
        assert_eq!(p.multiply(u.value(), u.inverse()), p.one());
        assert!(inner_automorphism(&p, &u).is_err());
    }
}
