use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::maximal_paths::{m_gamma, Part};
use crate::morphisms::{conjugation, invert_unit, Endomorphism, Unit};
use crate::path::Path;
use crate::path_algebra::{rat, Element};
use crate::polymat::{modified_smith, CycleEmbedding, Poly, PolyMatrix};
use crate::quiver::AlgebraPresentation;

/// For a map that agrees with some `Delta_u` on component `index`, returns
/// such a `u` restricted to that component, normalized so every vertex on
/// the cycle has coefficient one.
///
/// Under the matrix model `F` of the component, any conjugating matrix `P`
/// satisfies `P F(g(w)) = Psi(w) P`. With `G_k` the image of the path of
/// length `n + k` from the first cycle position, the rows `e_r G_k` for a
/// fixed `r` already intertwine, so `P` is read off directly. Its content is
/// divided out and the modified Smith form gives `P = d U V` with `U V` in
/// the image of the embedding.
pub(crate) fn component_unit(
    p: &AlgebraPresentation,
    g: &Endomorphism,
    index: usize,
    degree_cap: usize,
) -> Result<Element> {
    let q = p.quiver();
    let s = p.structure()?;
    let gamma = &s.infinite()[index];
    let emb = CycleEmbedding::new(q, gamma);
    let n = emb.n();
    let on_component =
        |x: &Element| x.filter(|w| w.is_stationary() || s.partition.part_of_path(w) == Some(Part::Component(index)));
    let model = |x: &Element| emb.embed(q, &on_component(&g.apply(p, x)));
    let fail = |why: String| Error::NoSolution(format!("component {index}: {why}"));

    let central = PolyMatrix::identity(n).scale(&Poly::x());
    if model(&m_gamma(gamma))? != central {
        return Err(fail("the central cycle sum is not fixed".into()));
    }
    let images: Vec<PolyMatrix> =
        (0..n).map(|k| model(&Element::from_path(emb.path_from(0, n + k)))).collect::<Result<_>>()?;
    let rows = (0..n)
        .map(|r| PolyMatrix::from_rows(images.iter().map(|m| m.rows()[r].clone()).collect()))
        .find(|m| m.as_ref().map_or(true, |m| !m.is_zero()))
        .ok_or_else(|| fail("every candidate intertwiner vanishes".into()))??;
    let content = rows.rows().iter().flatten().fold(Poly::zero(), |acc, e| Poly::gcd(&acc, e));
    let intertwiner = PolyMatrix::from_rows(
        rows.rows().iter().map(|row| row.iter().map(|e| e.exact_div(&content)).collect()).collect(),
    )?;
    let degree = intertwiner.max_degree().unwrap_or(0);
    if degree > degree_cap {
        return Err(Error::CapExhausted {
            cap: degree_cap,
            context: format!("conjugating matrix on component {index} has degree {degree}"),
        });
    }

    let generators = emb
        .vertices()
        .into_iter()
        .map(Path::Stationary)
        .chain(emb.cycle().iter().map(|&a| Path::arrow(a)));
    for w in generators {
        let x = Element::from_path(w.clone());
        if &intertwiner * &model(&x)? != &emb.embed(q, &x)? * &intertwiner {
            return Err(fail(format!("the map is not a conjugation on {}", q.format_path(&w))));
        }
    }

    let smith = modified_smith(&intertwiner);
    let d = smith.d.get(0, 0).clone();
    if !smith.sigma_is_identity() || !d.is_constant() || d.is_zero() || smith.d != PolyMatrix::identity(n).scale(&d) {
        return Err(fail("conjugating matrix is not a scalar times an invertible one".into()));
    }
    let u = emb.preimage(q, &(&smith.u * &smith.v))?;
    let first = u.coefficient(&Path::Stationary(emb.vertices()[0]));
    if first.is_zero() {
        return Err(fail("conjugating element has no constant term".into()));
    }
    let u = u.scaled(&(rat(1) / first));
    if emb.vertices().iter().any(|&v| !u.coefficient(&Path::Stationary(v)).is_one()) {
        return Err(fail("graded part of the conjugation is not the identity".into()));
    }
    Ok(u)
}

/// The unit `u` with `f = Delta_u`, for an algebra whose only maximal path
/// is infinite.
pub fn solve_conjugation_unique_max(p: &AlgebraPresentation, f: &Endomorphism, degree_cap: usize) -> Result<Unit> {
    if p.is_polynomial_ring() {
        return Err(Error::PolynomialRing);
    }
    CycleEmbedding::for_presentation(p)?;
    let f = if f.is_certified() { f.clone() } else { f.clone().verify(p)? };
    if !f.membership(p)?.in_aut0 {
        return Err(Error::structure("conjugation", "graded part of the map is not the identity"));
    }
    let unit = invert_unit(p, &component_unit(p, &f, 0, degree_cap)?)?;
    let delta = conjugation(p, &unit);
    if delta.arrow_images() != f.arrow_images() || delta.vertex_images() != f.vertex_images() {
        return Err(Error::NoSolution("recovered unit does not reproduce the map".into()));
    }
    Ok(unit)
}
