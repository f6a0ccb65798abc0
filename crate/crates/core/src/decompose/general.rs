use super::conjugation::component_unit;
use super::string_stage::string_stage;
use super::{Decomposition, Factor};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::maximal_paths::Part;
use crate::morphisms::{conjugation, invert_unit, make_derivation, Derivation, DerivationType, Endomorphism, Unit};
use crate::path::Path;
use crate::path_algebra::{rat, Element};
use crate::quiver::AlgebraPresentation;

fn certified(p: &AlgebraPresentation, f: &Endomorphism) -> Result<Endomorphism> {
    if f.is_certified() {
        Ok(f.clone())
    } else {
        f.clone().verify(p)
    }
}

/// Removes the part of each arrow image that avoids the arrow itself.
///
/// For `f` in `Aut_0` those terms are finite maximal paths of length at
/// least two, so `d = -sum d_(a, y_a)` is a derivation and `exp(d) . f`
/// sends every arrow into the ideal it generates. Returns `d` and that map.
pub fn peel_type_ii(p: &AlgebraPresentation, f: &Endomorphism, cap: Option<usize>) -> Result<(Derivation, Endomorphism)> {
    let q = p.quiver();
    let stage = "type II peel";
    let f = certified(p, f)?;
    let assignments: Vec<_> = q
        .arrows()
        .map(|a| (a, f.arrow_image(a).filter(|w| !w.contains_arrow(a)).neg()))
        .filter(|(_, y)| !y.is_zero())
        .collect();
    let d = make_derivation(p, &assignments).map_err(|e| Error::structure(stage, e.to_string()))?;
    if !d.is_zero() && !d.has_type(DerivationType::II) && !d.has_type(DerivationType::III) {
        return Err(Error::structure(stage, "terms avoiding their arrow are not finite maximal paths"));
    }
    let g = d.exponentiate(p, cap)?.compose(p, &f);
    if let Some(a) = q.arrows().find(|&a| g.arrow_image(a).paths().any(|w| !w.contains_arrow(a))) {
        return Err(Error::structure(stage, format!("image of {} still has terms avoiding it", q.arrow_name(a))));
    }
    Ok((d, g))
}

/// Factors an automorphism of a finite-dimensional string algebra that
/// fixes the vertices and has identity graded part as
/// `exp(type II) . rho . Delta_u` with `rho` a product of self-loop
/// exponentials.
pub fn decompose_string(p: &AlgebraPresentation, f: &Endomorphism, config: &Config) -> Result<Decomposition> {
    if p.dimension().is_none() || !p.classification().is_valid() {
        return Err(Error::Shape("a finite-dimensional string algebra is required".into()));
    }
    let f = certified(p, f)?;
    let m = f.membership(p)?;
    if !(m.in_h && m.in_aut0) {
        return Err(Error::structure("string stage", "the map must fix the vertices and have identity graded part"));
    }
    let arrows: Vec<_> = p.quiver().arrows().collect();
    let parts = string_stage(p, &f, &arrows, config.nilpotency_cap)?;
    let mut factors = Vec::new();
    if !parts.type_ii.is_zero() {
        factors.push(Factor::ExpTypeII(parts.type_ii));
    }
    if !parts.rho_generators.is_empty() {
        factors.push(Factor::DOfA { map: parts.rho, generators: parts.rho_generators });
    }
    if !parts.unit.is_one(p) {
        factors.push(Factor::Inner(parts.unit));
    }
    Decomposition::checked(p, factors, &f, config)
}

/// Factors any certified automorphism of a string or locally string algebra
/// as `gr . exp(type II) . rho . Delta_u`, dropping trivial factors.
///
/// After removing the graded part and the terms avoiding their arrow, each
/// infinite component is matched by a conjugation found from its matrix
/// model, the vertices are straightened by a second conjugation, and what is
/// left moves only the arrows off the infinite paths, where the
/// level-by-level string stage finishes.
pub fn decompose_general(p: &AlgebraPresentation, f: &Endomorphism, config: &Config) -> Result<Decomposition> {
    config.validate()?;
    if p.is_polynomial_ring() {
        return Err(Error::PolynomialRing);
    }
    let q = p.quiver();
    let s = p.structure()?;
    let cap = config.nilpotency_cap;
    let f = certified(p, f)?;

    let graded = f.graded_part(p)?;
    let f0 = if graded.is_identity(p) { f.clone() } else { graded.invert_graded(p)?.compose(p, &f) };

    let (peeled, g1) = peel_type_ii(p, &f0, cap)?;

    // the components come first: on an infinite component the vertex
    // correction below need not be a unit until they are matched
    let mut q_value = p.one();
    for i in 0..s.infinite().len() {
        let u = component_unit(p, &g1, i, config.conjugation_degree_cap)?;
        let on_cycle: Element = s.partition.component_vertices[i]
            .iter()
            .map(|&v| (Path::Stationary(v), rat(1)))
            .collect();
        q_value = q_value.plus(&u.minus(&on_cycle));
    }
    let qu = invert_unit(p, &q_value)?;
    let g2 = conjugation(p, &qu.inverted()).compose(p, &g1);

    // g2(e_v) = w^-1 e_v w for w = sum e_v g2(e_v)
    let w_value: Element = q
        .vertices()
        .map(|v| p.multiply(&p.vertex_element(v), g2.vertex_image(v)))
        .fold(Element::zero(), |acc, x| acc.plus(&x));
    let w = invert_unit(p, &w_value)?;
    let g3 = conjugation(p, &w.inverted()).compose(p, &g2);
    let moved = q
        .arrows()
        .find(|&a| s.partition.part_of_arrow(a) != Part::Radical && g3.arrow_image(a) != &p.arrow_element(a));
    if let Some(a) = moved {
        return Err(Error::structure("component conjugation", format!("arrow {} is still moved", q.arrow_name(a))));
    }

    let parts = string_stage(p, &g3, &s.partition.abar_arrows, cap)?;

    // f0 = exp(-peeled) . Delta_{wq} . exp(D) . rho . Delta_u
    //    = exp(D - peeled) . rho . Delta_{u . X^-1(wq)},  X = exp(D) . rho
    let mut rho_inverse = Endomorphism::identity(p);
    for d in &parts.rho_generators {
        rho_inverse = d.scaled(p, &rat(-1))?.exponentiate(p, cap)?.compose(p, &rho_inverse);
    }
    let x_inverse = rho_inverse.compose(p, &parts.type_ii.scaled(p, &rat(-1))?.exponentiate(p, cap)?);
    let wq = w.times(p, &qu);
    let pulled = Unit::from_parts(x_inverse.apply(p, wq.value()), x_inverse.apply(p, wq.inverse()));
    let unit = parts.unit.times(p, &pulled);
    let type_ii = parts.type_ii.plus(p, &peeled.scaled(p, &rat(-1))?)?;

    let mut factors = Vec::new();
    if !graded.is_identity(p) {
        factors.push(Factor::Graded(graded));
    }
    if !type_ii.is_zero() {
        factors.push(Factor::ExpTypeII(type_ii));
    }
    if !parts.rho_generators.is_empty() {
        factors.push(Factor::DOfA { map: parts.rho, generators: parts.rho_generators });
    }
    if !unit.is_one(p) {
        factors.push(Factor::Inner(unit));
    }
    Decomposition::checked(p, factors, &f, config)
}
