#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stringalg::maximal_paths::{bar_gamma, is_left_maximal, is_right_maximal, Part};
use stringalg::morphisms::{inner_automorphism, invert_unit, make_derivation, Derivation, Endomorphism, Unit};
use stringalg::path_algebra::rat;
use stringalg::{AlgebraPresentation, Element, Path, Rational};

pub fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> AlgebraPresentation {
    AlgebraPresentation::from_parts(vertices, arrows, relations).unwrap()
}

pub fn worked() -> AlgebraPresentation {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a b", "b a b a"])
}

pub fn kronecker() -> AlgebraPresentation {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[])
}

pub fn free_two_cycle() -> AlgebraPresentation {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[])
}

pub fn free_three_cycle() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")], &[])
}

pub fn cycle_with_tail() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")], &["a c"])
}

pub fn truncated_loop() -> AlgebraPresentation {
    build(&["1", "2"], &[("x", "1", "1"), ("c", "1", "2")], &["x x x", "x c"])
}

pub fn long_relations() -> AlgebraPresentation {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a b a b", "b a b a b a"])
}

/// Two infinite components (the cycle `ab` and the loop `d`) joined by a
/// string part `c`, `e`.
pub fn two_components() -> AlgebraPresentation {
    build(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"), ("d", "3", "3"), ("e", "3", "4")],
        &["a c", "c d", "d e"],
    )
}

pub fn a3_with_relation() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &["a b"])
}

/// Gentle, with exactly the arrows `b` and `e` admitting a parallel
/// maximal path that avoids them at both ends.
pub fn two_bar_gamma() -> AlgebraPresentation {
    build(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "3", "4"), ("e", "3", "4")],
        &["a c", "c d"],
    )
}

pub fn triangle() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")], &[])
}

pub fn figure_eight() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "1"), ("c", "1", "3"), ("d", "3", "1")], &["b a", "d c"])
}

pub fn doubled_three_cycle() -> AlgebraPresentation {
    build(
        &["1", "2", "3"],
        &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3"), ("a3", "3", "1"), ("b3", "3", "1")],
        &["a1 b2", "b1 a2", "a2 b3", "b2 a3", "a3 a1", "b3 b1"],
    )
}

pub fn triangle_with_tail() -> AlgebraPresentation {
    build(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "3", "4")], &["b d"])
}

pub fn truncated_three_cycle() -> AlgebraPresentation {
    build(
        &["1", "2", "3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        &["a b c a b", "b c a b c", "c a b c a"],
    )
}

pub fn truncated_polynomial() -> AlgebraPresentation {
    build(&["1"], &[("x", "1", "1")], &["x x x x"])
}

pub fn kronecker_with_tail() -> AlgebraPresentation {
    build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3")], &["a c"])
}

pub fn all_presentations() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("worked", worked()),
        ("kronecker", kronecker()),
        ("free two-cycle", free_two_cycle()),
        ("free three-cycle", free_three_cycle()),
        ("cycle with tail", cycle_with_tail()),
        ("truncated loop", truncated_loop()),
        ("long relations", long_relations()),
        ("two components", two_components()),
        ("A3 with relation", a3_with_relation()),
        ("two bar-gamma", two_bar_gamma()),
        ("triangle", triangle()),
        ("figure eight", figure_eight()),
        ("doubled three-cycle", doubled_three_cycle()),
        ("triangle with tail", triangle_with_tail()),
        ("truncated three-cycle", truncated_three_cycle()),
        ("truncated polynomial", truncated_polynomial()),
        ("kronecker with tail", kronecker_with_tail()),
    ]
}

/// String part plus zero, one or two infinite components.
pub fn mixed_presentations() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("worked", worked()),
        ("truncated loop", truncated_loop()),
        ("cycle with tail", cycle_with_tail()),
        ("two components", two_components()),
        ("triangle", triangle()),
    ]
}

/// Gentle, not the polynomial ring, one maximal path which is infinite.
pub fn unique_infinite_presentations() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("free two-cycle", free_two_cycle()),
        ("free three-cycle", free_three_cycle()),
        ("figure eight", figure_eight()),
        ("doubled three-cycle", doubled_three_cycle()),
    ]
}

pub const TEST_DEGREE: usize = 6;

pub fn small_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    rat(c)
}

pub fn random_element(p: &AlgebraPresentation, rng: &mut ChaCha8Rng, max_len: usize, terms: usize) -> Element {
    let basis = p.enumerate_basis(max_len);
    let mut x = Element::zero();
    for _ in 0..terms {
        let w = basis.choose(rng).unwrap().clone();
        x.add_term(w, small_coefficient(rng));
    }
    x
}

fn pick_assignments(
    p: &AlgebraPresentation,
    rng: &mut ChaCha8Rng,
    candidates: Vec<(stringalg::ArrowId, Path)>,
) -> Option<Derivation> {
    if candidates.is_empty() {
        return None;
    }
    let count = rng.gen_range(1..=candidates.len().min(3));
    let chosen: Vec<_> = candidates
        .choose_multiple(rng, count)
        .map(|(a, w)| (*a, Element::term(small_coefficient(rng), w.clone())))
        .collect();
    Some(make_derivation(p, &chosen).expect("assignments meet the derivation conditions"))
}

/// Arrows to left maximal paths of length at least two that are right
/// maximal or end with the arrow.
pub fn random_type_ii(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Option<Derivation> {
    let q = p.quiver();
    let basis = p.enumerate_basis(TEST_DEGREE);
    let mut candidates = Vec::new();
    for a in q.arrows() {
        for w in basis.iter().filter(|w| w.len() >= 2 && w.is_parallel_to(q, a)) {
            if is_left_maximal(p, w) && (w.last() == Some(a) || is_right_maximal(p, w)) {
                candidates.push((a, w.clone()));
            }
        }
    }
    pick_assignments(p, rng, candidates)
}

/// Arrows off the infinite paths to paths starting and ending with them.
pub fn random_type_i(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Option<Derivation> {
    let s = p.structure().unwrap();
    let basis = p.enumerate_basis(TEST_DEGREE);
    let mut candidates = Vec::new();
    for &a in &s.partition.abar_arrows {
        for w in basis.iter().filter(|w| w.len() >= 2 && w.first() == Some(a) && w.last() == Some(a)) {
            candidates.push((a, w.clone()));
        }
    }
    pick_assignments(p, rng, candidates)
}

/// Arrows to their parallel finite maximal path avoiding them at both ends.
/// No chosen image runs through a chosen arrow, so the derivation squares
/// to zero (on the Kronecker quiver `a -> b` and `b -> a` together would not
/// be nilpotent).
pub fn random_type_iii(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Option<Derivation> {
    let mut candidates: Vec<_> =
        p.quiver().arrows().filter_map(|a| bar_gamma(p, a).unwrap().map(|g| (a, g))).collect();
    candidates.shuffle(rng);
    let mut chosen: Vec<(stringalg::ArrowId, Path)> = Vec::new();
    for (a, g) in candidates {
        let clashes = chosen.iter().any(|(b, h)| g.contains_arrow(*b) || h.contains_arrow(a));
        if !clashes {
            chosen.push((a, g));
        }
    }
    pick_assignments(p, rng, chosen)
}

pub fn random_derivation(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Option<Derivation> {
    match rng.gen_range(0..3) {
        0 => random_type_i(p, rng),
        1 => random_type_ii(p, rng),
        _ => random_type_iii(p, rng),
    }
}

/// `1 + y` for a random `y` without stationary terms, retried until it is
/// invertible.
pub fn random_unit(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Unit {
    let basis: Vec<Path> = p.enumerate_basis(4).into_iter().filter(|w| !w.is_stationary()).collect();
    for _ in 0..50 {
        let mut y = Element::zero();
        for _ in 0..rng.gen_range(1..=3) {
            y.add_term(basis.choose(rng).unwrap().clone(), small_coefficient(rng));
        }
        if let Ok(u) = invert_unit(p, &p.one().plus(&y)) {
            return u;
        }
    }
    Unit::one(p)
}

/// Each arrow scaled by a random nonzero constant.
pub fn random_scaling(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Endomorphism {
    let images: Vec<_> = p.quiver().arrows().map(|a| (a, p.arrow_element(a).scaled(&small_coefficient(rng)))).collect();
    Endomorphism::on_arrows(p, images).verify(p).unwrap()
}

/// A random product of library-built automorphisms. With `graded` false
/// every factor lies in `Aut_0`.
pub fn random_automorphism(p: &AlgebraPresentation, rng: &mut ChaCha8Rng, graded: bool) -> Endomorphism {
    let mut f = Endomorphism::identity(p);
    for _ in 0..rng.gen_range(1..=4) {
        let factor = match rng.gen_range(0..5) {
            0 if graded => random_scaling(p, rng),
            1 => inner_automorphism(p, &random_unit(p, rng)).unwrap(),
            2 | 3 => match random_derivation(p, rng) {
                Some(d) if graded || d.arrow_images().iter().all(|x| x.paths().all(|w| w.len() >= 2)) => {
                    d.exponentiate(p, None).unwrap()
                }
                _ => continue,
            },
            _ => inner_automorphism(p, &random_unit(p, rng)).unwrap(),
        };
        f = f.compose(p, &factor);
    }
    f
}

/// The part of the positive-length basis a path belongs to.
pub fn part(p: &AlgebraPresentation, w: &Path) -> Option<Part> {
    p.structure().unwrap().partition.part_of_path(w)
}
