//! Splitting automorphisms into graded, exponential and inner factors, and
//! the shape of the outer automorphism group of a gentle algebra.

mod conjugation;
mod general;
mod outer;
mod string_stage;

use std::fmt::Write;

pub use crate::maximal_paths::bar_gamma;
pub use conjugation::solve_conjugation_unique_max;
pub use general::{decompose_general, decompose_string, peel_type_ii};
pub use outer::{outer_class, OuterClassReport, Shape};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::morphisms::{format_morphism, inner_automorphism, Derivation, Endomorphism, Unit};
use crate::quiver::AlgebraPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// A graded automorphism: vertices permuted, arrows to combinations of arrows.
    Graded(Endomorphism),
    ExpTypeII(Derivation),
    ExpTypeI(Derivation),
    /// A product of self-loop exponentials, `exp(d_1) . exp(d_2) . ...`.
    DOfA { map: Endomorphism, generators: Vec<Derivation> },
    Inner(Unit),
}

impl Factor {
    pub fn name(&self) -> &'static str {
        match self {
            Factor::Graded(_) => "graded",
            Factor::ExpTypeII(_) => "exp-type-II",
            Factor::ExpTypeI(_) => "exp-type-I",
            Factor::DOfA { .. } => "D(A)",
            Factor::Inner(_) => "inner",
        }
    }

    pub fn endomorphism(&self, p: &AlgebraPresentation, cap: Option<usize>) -> Result<Endomorphism> {
        match self {
            Factor::Graded(g) => Ok(g.clone()),
            Factor::ExpTypeII(d) | Factor::ExpTypeI(d) => d.exponentiate(p, cap),
            Factor::DOfA { map, .. } => Ok(map.clone()),
            Factor::Inner(u) => inner_automorphism(p, u),
        }
    }

    pub fn describe(&self, p: &AlgebraPresentation) -> String {
        let q = p.quiver();
        let derivation = |d: &Derivation| {
            d.assignments()
                .iter()
                .map(|(a, x)| format!("{} -> {}", q.arrow_name(*a), p.format_element(x)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            Factor::Graded(g) => format_morphism(p, g, true).replace('\n', "; "),
            Factor::ExpTypeII(d) | Factor::ExpTypeI(d) => format!("exp({})", derivation(d)),
            Factor::DOfA { generators, .. } => {
                generators.iter().map(|d| format!("exp({})", derivation(d))).collect::<Vec<_>>().join(" . ")
            }
            Factor::Inner(u) => format!("conjugation by {}", p.format_element(u.value())),
        }
    }
}

/// `f = factors[0] . factors[1] . ... . residual`; the residual is the
/// identity for every decomposition this module returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub residual: Endomorphism,
}

impl Decomposition {
    pub fn recompose(&self, p: &AlgebraPresentation, cap: Option<usize>) -> Result<Endomorphism> {
        let mut acc = Endomorphism::identity(p);
        for factor in &self.factors {
            acc = acc.compose(p, &factor.endomorphism(p, cap)?);
        }
        Ok(acc.compose(p, &self.residual))
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inner_unit(&self) -> Option<&Unit> {
        self.factors.iter().find_map(|f| match f {
            Factor::Inner(u) => Some(u),
            _ => None,
        })
    }

    pub fn has_dofa(&self) -> bool {
        self.factors.iter().any(|f| matches!(f, Factor::DOfA { .. }))
    }

    fn checked(p: &AlgebraPresentation, factors: Vec<Factor>, f: &Endomorphism, config: &Config) -> Result<Self> {
        let d = Decomposition { factors, residual: Endomorphism::identity(p) };
        let back = d.recompose(p, config.nilpotency_cap)?;
        if back.vertex_images() != f.vertex_images() || back.arrow_images() != f.arrow_images() {
            return Err(Error::structure("assembly", "factors do not recompose to the input"));
        }
        Ok(d)
    }

    pub fn render(&self, p: &AlgebraPresentation) -> String {
        if self.factors.is_empty() {
            return "identity\n".to_string();
        }
        let mut out = String::new();
        for factor in &self.factors {
            let _ = writeln!(out, "{}: {}", factor.name(), factor.describe(p));
        }
        out
    }
}

#[cfg(test)]
mod tests;
