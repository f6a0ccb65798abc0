use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::maximal_paths::{is_left_maximal, is_right_maximal, Part};
use crate::morphisms::{conjugation, invert_unit, Derivation, DerivationType, Endomorphism, Unit};
use crate::path::Path;
use crate::path_algebra::{rat, Element, Rational};
use crate::quiver::{AlgebraPresentation, ArrowId};

/// `g = exp(type_ii) . rho . Delta_unit`, with `rho` the product of the
/// exponentials of `rho_generators` in order.
pub(crate) struct StringParts {
    pub type_ii: Derivation,
    pub rho: Endomorphism,
    pub rho_generators: Vec<Derivation>,
    pub unit: Unit,
}

enum Column {
    Cycle(Path),
    SelfLoop(ArrowId, Path),
    LeftMaximal(ArrowId, Path),
}

/// Splits a map that fixes the vertices, agrees with the identity in
/// degree one and moves only `arrows` (all off the infinite paths).
///
/// Works level by level: at length `n` the degree-`n` error on each arrow
/// is cancelled by an inner automorphism `1 - y` with `y` a combination of
/// cycles of length `n - 1`, plus corrections `a -> a w a` and
/// `a -> (left maximal)`. Among all `y` that work, the one of least norm in
/// the path basis is used.
pub(crate) fn string_stage(
    p: &AlgebraPresentation,
    g: &Endomorphism,
    arrows: &[ArrowId],
    cap: Option<usize>,
) -> Result<StringParts> {
    let q = p.quiver();
    let s = p.structure()?;
    let stage = "string stage";
    if q.arrows().any(|a| !arrows.contains(&a) && g.arrow_image(a) != &p.arrow_element(a))
        || q.vertices().any(|v| g.vertex_image(v) != &p.vertex_element(v))
    {
        return Err(Error::structure(stage, "map must fix the vertices and the arrows on infinite paths"));
    }
    if arrows.iter().any(|&a| s.partition.part_of_arrow(a) != Part::Radical) {
        return Err(Error::structure(stage, "only arrows off the infinite paths are handled here"));
    }

    let radical_of_len = |n: usize| s.radical.iter().filter(move |w| w.len() == n);
    let mut cur = g.clone();
    let mut unit = Unit::one(p);
    let mut accumulated = Endomorphism::identity(p);
    let mut rho_generators = Vec::new();

    for n in 1..=s.radical_length() {
        let mut error = BTreeMap::new();
        for &a in arrows {
            let diff = cur.arrow_image(a).minus(&p.arrow_element(a));
            if let Some(low) = diff.min_degree().filter(|&d| d < n) {
                return Err(Error::structure(
                    stage,
                    format!("image of {} differs from it in degree {low}", q.arrow_name(a)),
                ));
            }
            for (w, c) in diff.degree_part(n).terms() {
                error.insert((a, w.clone()), c.clone());
            }
        }
        if error.is_empty() {
            continue;
        }
        if n == 1 {
            return Err(Error::structure(stage, "graded part is not the identity"));
        }

        let mut columns = Vec::new();
        columns.extend(radical_of_len(n - 1).filter(|w| w.is_cycle(q)).map(|w| Column::Cycle(w.clone())));
        for &a in arrows {
            for w in radical_of_len(n).filter(|w| w.first() == Some(a) && w.last() == Some(a)) {
                columns.push(Column::SelfLoop(a, w.clone()));
            }
        }
        for &a in arrows {
            for w in radical_of_len(n).filter(|w| {
                w.is_parallel_to(q, a) && is_left_maximal(p, w) && (w.last() == Some(a) || is_right_maximal(p, w))
            }) {
                columns.push(Column::LeftMaximal(a, w.clone()));
            }
        }

        // rows are (arrow, path) coordinates; every column contributes -1
        // on its own coordinate except the cycles, which act by commutator
        let mut rows: BTreeMap<(ArrowId, Path), Vec<Rational>> = BTreeMap::new();
        let width = columns.len();
        let mut entry = |key: (ArrowId, Path), col: usize, c: Rational| {
            rows.entry(key).or_insert_with(|| vec![rat(0); width])[col] += c;
        };
        for (col, column) in columns.iter().enumerate() {
            match column {
                Column::Cycle(w) => {
                    let y = Element::from_path(w.clone());
                    for &a in arrows {
                        let x = p.arrow_element(a);
                        for (path, c) in p.multiply(&y, &x).minus(&p.multiply(&x, &y)).terms() {
                            entry((a, path.clone()), col, c.clone());
                        }
                    }
                }
                Column::SelfLoop(a, w) | Column::LeftMaximal(a, w) => entry((*a, w.clone()), col, rat(-1)),
            }
        }
        for key in error.keys() {
            rows.entry(key.clone()).or_insert_with(|| vec![rat(0); width]);
        }
        let keys: Vec<_> = rows.keys().cloned().collect();
        let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
        let rhs: Vec<Rational> = keys.iter().map(|k| -error.get(k).cloned().unwrap_or_else(|| rat(0))).collect();
        let solution = linalg::solve(&matrix, &rhs, width).ok_or_else(|| {
            Error::structure(stage, format!("no inner or triangular correction cancels the degree-{n} error"))
        })?;

        let cycle_count = columns.iter().filter(|c| matches!(c, Column::Cycle(_))).count();
        let mut y = Element::zero();
        let mut self_loops = vec![Element::zero(); q.arrow_count()];
        let mut left_maximal = vec![Element::zero(); q.arrow_count()];
        for (column, c) in columns.iter().zip(&solution) {
            match column {
                Column::Cycle(w) => y.add_term(w.clone(), c.clone()),
                Column::SelfLoop(a, w) => self_loops[a.0].add_term(w.clone(), c.clone()),
                Column::LeftMaximal(a, w) => left_maximal[a.0].add_term(w.clone(), c.clone()),
            }
        }
        if cycle_count > 0 {
            y = least_norm(&matrix, &rhs, &solution, &columns, cycle_count);
        }

        let v = invert_unit(p, &p.one().minus(&y))?;
        let d_one = Derivation::from_images(p, self_loops)?;
        let d_two = Derivation::from_images(p, left_maximal)?;
        let step_one = d_one.scaled(p, &rat(-1))?.exponentiate(p, cap)?;
        let step_two = d_two.scaled(p, &rat(-1))?.exponentiate(p, cap)?;
        cur = step_two.compose(p, &step_one.compose(p, &conjugation(p, &v).compose(p, &cur)));
        if arrows.iter().any(|&a| !cur.arrow_image(a).minus(&p.arrow_element(a)).degree_part(n).is_zero()) {
            return Err(Error::structure(stage, format!("degree-{n} error survived its correction")));
        }

        // g = (accumulated) . Delta_{v^-1} . exp(d_one) . exp(d_two) . cur,
        // and Delta_z . Y = Y . Delta_{Y^-1(z)}
        let pull_back = |x: &Element| step_two.apply(p, &step_one.apply(p, x));
        let moved = v.inverted().times(p, &unit);
        unit = Unit::from_parts(pull_back(moved.value()), pull_back(moved.inverse()));
        accumulated = accumulated.compose(p, &d_one.exponentiate(p, cap)?.compose(p, &d_two.exponentiate(p, cap)?));
        if !d_one.is_zero() {
            rho_generators.push(d_one);
        }
    }
    if !cur.is_identity(p) {
        return Err(Error::structure(stage, "residual map is not the identity"));
    }

    // move the left maximal corrections to the front: what remains after
    // removing rho must be the exponential of a single such derivation
    let mut rho = Endomorphism::identity(p);
    let mut rho_inverse = Endomorphism::identity(p);
    for d in &rho_generators {
        rho = rho.compose(p, &d.exponentiate(p, cap)?);
        rho_inverse = d.scaled(p, &rat(-1))?.exponentiate(p, cap)?.compose(p, &rho_inverse);
    }
    let front = accumulated.compose(p, &rho_inverse);
    let type_ii = Derivation::from_images(
        p,
        q.arrows().map(|a| front.arrow_image(a).minus(&p.arrow_element(a))).collect(),
    )?;
    if !type_ii.has_type(DerivationType::II) || type_ii.exponentiate(p, cap)?.arrow_images() != front.arrow_images() {
        return Err(Error::structure(stage, "left maximal corrections do not separate from the self-loop ones"));
    }
    let recomposed = type_ii.exponentiate(p, cap)?.compose(p, &rho.compose(p, &conjugation(p, &unit)));
    if recomposed.arrow_images() != g.arrow_images() || recomposed.vertex_images() != g.vertex_images() {
        return Err(Error::structure(stage, "factors do not recompose to the input"));
    }
    Ok(StringParts { type_ii, rho, rho_generators, unit })
}

/// The cycle part of a solution replaced by the solution of least norm of
/// the same commutator equation, the other columns held fixed.
fn least_norm(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
    solution: &[Rational],
    columns: &[Column],
    cycle_count: usize,
) -> Element {
    let reduced_rhs: Vec<Rational> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let fixed = linalg::dot(&row[cycle_count..], &solution[cycle_count..]);
            b - fixed
        })
        .collect();
    let cycle_block: Vec<Vec<Rational>> = matrix.iter().map(|row| row[..cycle_count].to_vec()).collect();
    let start = linalg::solve(&cycle_block, &reduced_rhs, cycle_count).expect("the full solution restricts to one");
    let best = linalg::project_out(&start, &linalg::nullspace(&cycle_block, cycle_count));
    columns
        .iter()
        .zip(best)
        .filter_map(|(column, c)| match column {
            Column::Cycle(w) => Some((w.clone(), c)),
            _ => None,
        })
        .collect()
}
