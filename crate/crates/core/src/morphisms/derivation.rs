use std::collections::BTreeSet;
use std::fmt;


use super::endomorphism::Endomorphism;
use crate::error::{Error, Result};
use crate::maximal_paths::{bar_gamma, is_left_maximal, is_right_maximal, Part};
use crate::path::Path;
use crate::path_algebra::{rat, Element, Rational};
use crate::quiver::{AlgebraPresentation, ArrowId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivationType {
    /// Arrows off every infinite maximal path, each sent into `a A a`.
    I,
    /// Arrows sent to combinations of left maximal paths of length at least two.
    II,
    /// Arrows sent to multiples of their parallel finite maximal path.
    III,
    Other,
}

impl fmt::Display for DerivationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivationType::I => "I",
            DerivationType::II => "II",
            DerivationType::III => "III",
            DerivationType::Other => "other",
        })
    }
}

/// A derivation killing the vertices, stored by its values on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    arrow_images: Vec<Element>,
    tags: BTreeSet<DerivationType>,
}

/// Builds the derivation sending each listed arrow to the sum of its
/// assigned elements and every other generator to zero.
///
/// Every path in an assignment `(a, x)` must be parallel to `a`, left
/// maximal or starting with `a`, and right maximal or ending with `a`.
/// The Leibniz identity on each relation is then checked directly.
pub fn make_derivation(p: &AlgebraPresentation, assignments: &[(ArrowId, Element)]) -> Result<Derivation> {
    let q = p.quiver();
    for (a, x) in assignments {
        let arrow = q.arrow_name(*a).to_string();
        let fail = |reason: String| Error::DerivationCondition { arrow: arrow.clone(), reason };
        for w in x.paths() {
            let shown = q.format_path(w);
            if !p.is_basis_path(w) {
                return Err(fail(format!("{shown} is zero in the algebra")));
            }
            if !w.is_parallel_to(q, *a) {
                return Err(fail(format!("{shown} is not parallel to {arrow}")));
            }
            if w.first() != Some(*a) && !is_left_maximal(p, w) {
                return Err(fail(format!("{shown} is neither left maximal nor starts with {arrow}")));
            }
            if w.last() != Some(*a) && !is_right_maximal(p, w) {
                return Err(fail(format!("{shown} is neither right maximal nor ends with {arrow}")));
            }
        }
    }
    let mut images = vec![Element::zero(); q.arrow_count()];
    for (a, x) in assignments {
        images[a.0] = images[a.0].plus(x);
    }
    Derivation::from_images(p, images)
}

impl Derivation {
    pub fn zero(p: &AlgebraPresentation) -> Self {
        Derivation {
            arrow_images: vec![Element::zero(); p.quiver().arrow_count()],
            tags: [DerivationType::I, DerivationType::II, DerivationType::III].into(),
        }
    }

    /// Checks the Leibniz identity on relations and classifies.
    pub(crate) fn from_images(p: &AlgebraPresentation, arrow_images: Vec<Element>) -> Result<Derivation> {
        let q = p.quiver();
        let mut d = Derivation { arrow_images, tags: BTreeSet::new() };
        for a in q.arrows() {
            let x = &d.arrow_images[a.0];
            if x.paths().any(|w| !w.is_parallel_to(q, a)) {
                return Err(Error::DerivationCondition {
                    arrow: q.arrow_name(a).to_string(),
                    reason: "image is not parallel to the arrow".into(),
                });
            }
        }
        for r in p.relations().generators() {
            if !d.apply_path(p, r).is_zero() {
                return Err(Error::DerivationCondition {
                    arrow: q.format_path(r),
                    reason: "Leibniz rule fails on this relation".into(),
                });
            }
        }
        d.tags = d.classify(p)?;
        Ok(d)
    }

    fn classify(&self, p: &AlgebraPresentation) -> Result<BTreeSet<DerivationType>> {
        let q = p.quiver();
        let s = p.structure()?;
        let mut tags = BTreeSet::new();
        let assigned: Vec<ArrowId> = q.arrows().filter(|a| !self.arrow_images[a.0].is_zero()).collect();
        let type_i = assigned.iter().all(|&a| {
            s.partition.part_of_arrow(a) == Part::Radical
                && self.arrow_images[a.0].paths().all(|w| w.len() >= 2 && w.first() == Some(a) && w.last() == Some(a))
        });
        let type_ii = assigned.iter().all(|&a| {
            self.arrow_images[a.0].paths().all(|w| {
                w.len() >= 2
                    && is_left_maximal(p, w)
                    && (w.last() == Some(a) || is_right_maximal(p, w))
            })
        });
        let mut type_iii = true;
        for &a in &assigned {
            let x = &self.arrow_images[a.0];
            let ok = match bar_gamma(p, a)? {
                Some(g) => x.len() == 1 && x.paths().next() == Some(&g),
                None => false,
            };
            type_iii &= ok;
        }
        if type_i {
            tags.insert(DerivationType::I);
        }
        if type_ii {
            tags.insert(DerivationType::II);
        }
        if type_iii {
            tags.insert(DerivationType::III);
        }
        if tags.is_empty() {
            tags.insert(DerivationType::Other);
        }
        Ok(tags)
    }

    pub fn tags(&self) -> &BTreeSet<DerivationType> {
        &self.tags
    }

    pub fn has_type(&self, t: DerivationType) -> bool {
        self.tags.contains(&t)
    }

    pub fn arrow_image(&self, a: ArrowId) -> &Element {
        &self.arrow_images[a.0]
    }

    pub fn arrow_images(&self) -> &[Element] {
        &self.arrow_images
    }

    pub fn is_zero(&self) -> bool {
        self.arrow_images.iter().all(Element::is_zero)
    }

    /// Nonzero assignments in arrow order.
    pub fn assignments(&self) -> Vec<(ArrowId, Element)> {
        self.arrow_images
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (ArrowId(i), x.clone()))
            .collect()
    }

    pub fn scaled(&self, p: &AlgebraPresentation, c: &Rational) -> Result<Derivation> {
        Derivation::from_images(p, self.arrow_images.iter().map(|x| x.scaled(c)).collect())
    }

    pub fn plus(&self, p: &AlgebraPresentation, other: &Derivation) -> Result<Derivation> {
        Derivation::from_images(p, self.arrow_images.iter().zip(&other.arrow_images).map(|(x, y)| x.plus(y)).collect())
    }

    pub fn apply_path(&self, p: &AlgebraPresentation, w: &Path) -> Element {
        let arrows = match w {
            Path::Stationary(_) => return Element::zero(),
            Path::Arrows(a) => a,
        };
        let mut out = Element::zero();
        for (i, a) in arrows.iter().enumerate() {
            let image = &self.arrow_images[a.0];
            if image.is_zero() {
                continue;
            }
            let mut term = image.clone();
            if i > 0 {
                term = p.multiply(&Element::from_path(Path::Arrows(arrows[..i].to_vec())), &term);
            }
            if i + 1 < arrows.len() && !term.is_zero() {
                term = p.multiply(&term, &Element::from_path(Path::Arrows(arrows[i + 1..].to_vec())));
            }
            out.add_scaled(&term, &rat(1));
        }
        out
    }

    pub fn apply(&self, p: &AlgebraPresentation, x: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.apply_path(p, w), c);
        }
        out
    }

    /// Default iteration cap: one more than the longest finite maximal path,
    /// and at least two.
    pub fn default_cap(p: &AlgebraPresentation) -> Result<usize> {
        Ok((p.structure()?.longest_finite_maximal() + 1).max(2))
    }

    /// `exp(d)` on generators, summing `d^k(g)/k!` until the iterates
    /// vanish. Fails when some generator still has a nonzero iterate after
    /// `cap` applications.
    pub fn exponentiate(&self, p: &AlgebraPresentation, cap: Option<usize>) -> Result<Endomorphism> {
        let q = p.quiver();
        let cap = match cap {
            Some(c) => c,
            None => Derivation::default_cap(p)?,
        };
        let mut images = Vec::with_capacity(q.arrow_count());
        for a in q.arrows() {
            let mut term = p.arrow_element(a);
            let mut sum = term.clone();
            let mut k = 0;
            loop {
                term = self.apply(p, &term);
                if term.is_zero() {
                    break;
                }
                k += 1;
                if k >= cap {
                    return Err(Error::NilpotencyCap { cap, arrow: q.arrow_name(a).to_string() });
                }
                term = term.scaled(&(rat(1) / rat(k as i64)));
                sum = sum.plus(&term);
            }
            images.push(sum);
        }
        let vertices = q.vertices().map(|v| p.vertex_element(v)).collect();
        Endomorphism::new(vertices, images).verify(p)
    }
}
