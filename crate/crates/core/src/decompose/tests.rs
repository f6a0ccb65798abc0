use super::*;
use crate::morphisms::{invert_unit, make_derivation};

fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> AlgebraPresentation {
    AlgebraPresentation::from_parts(vertices, arrows, relations).unwrap()
}

fn ex46() -> AlgebraPresentation {
    build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &["a b a b", "b a b a"])
}

fn map(p: &AlgebraPresentation, lines: &str) -> Endomorphism {
    crate::morphisms::parse_morphism(p, lines).unwrap().verify(p).unwrap()
}

#[test]
fn worked_inner_map_is_a_single_conjugation() {
    let p = ex46();
    let f = map(&p, "map a = a + 2*a.b.a\nmap b = b - 2*b.a.b");
    let d = decompose_string(&p, &f, &Config::default()).unwrap();
    assert_eq!(d.factors.len(), 1);
    assert_eq!(p.format_element(d.inner_unit().unwrap().value()), "1 - 1*a.b + 1*b.a");
    let g = decompose_general(&p, &f, &Config::default()).unwrap();
    assert_eq!(g, d);
}

#[test]
fn worked_outer_map_needs_a_self_loop_factor() {
    let p = ex46();
    let f = map(&p, "map a = a + a.b.a");
    let d = decompose_string(&p, &f, &Config::default()).unwrap();
    assert!(d.has_dofa());
    assert_eq!(d.recompose(&p, None).unwrap().arrow_images(), f.arrow_images());
    assert!(decompose_string(&p, &Endomorphism::identity(&p), &Config::default()).unwrap().is_trivial());
}

#[test]
fn free_cycle_conjugation_round_trips() {
    let p = build(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")], &[]);
    let u = invert_unit(&p, &p.parse_element("1 + a + b + a.b").unwrap()).unwrap();
    let f = crate::morphisms::inner_automorphism(&p, &u).unwrap();
    let found = solve_conjugation_unique_max(&p, &f, 32).unwrap();
    assert_eq!(found, u);
    let d = decompose_general(&p, &f, &Config::default()).unwrap();
    assert_eq!(d.factors, vec![Factor::Inner(u)]);
}

#[test]
fn mixed_presentation_round_trip() {
    // two-cycle with a tail; the tail arrow c carries the string part
    let p = build(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3")], &["a c"]);
    let q = p.quiver();
    let u = invert_unit(&p, &p.parse_element("1 + a + b + a.b - 2*c").unwrap()).unwrap();
    let inner = crate::morphisms::inner_automorphism(&p, &u).unwrap();
    let d = decompose_general(&p, &inner, &Config::default()).unwrap();
    assert_eq!(d.recompose(&p, None).unwrap().arrow_images(), inner.arrow_images());
    let scale = map(&p, "map c = 2*c\nmap a = 3*a");
    let both = scale.compose(&p, &inner);
    let d = decompose_general(&p, &both, &Config::default()).unwrap();
    assert_eq!(d.factors[0], Factor::Graded(scale));
    let c = q.arrow_id("c").unwrap();
    assert!(make_derivation(&p, &[(c, p.parse_element("c").unwrap())]).is_ok());
}

#[test]
fn outer_class_reports() {
    let kronecker = build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]);
    assert_eq!(outer_class(&kronecker).unwrap().group_description, "GL_2(k)");
    let doubled = build(
        &["1", "2", "3"],
        &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3"), ("a3", "3", "1"), ("b3", "3", "1")],
        &["a1 b2", "b1 a2", "a2 b3", "b2 a3", "a3 a1", "b3 b1"],
    );
    let report = outer_class(&doubled).unwrap();
    assert_eq!(report.shape, Shape::DoubledCycle);
    assert_eq!(report.group_description, "Z/2Z ⋉ (k^×)^6");
    let gadget = build(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "1", "2"), ("c", "2", "3"), ("d", "3", "4"), ("e", "3", "4")],
        &["a c", "c d"],
    );
    let report = outer_class(&gadget).unwrap();
    assert_eq!(report.n_bar_gamma, 2);
    assert_eq!(report.group_description, "(k^×)^5 ⋉ k^2");
    let loop_only = build(&["1"], &[("x", "1", "1")], &[]);
    assert_eq!(outer_class(&loop_only), Err(Error::PolynomialRing));
    assert!(matches!(outer_class(&ex46()), Ok(_) | Err(Error::NotGentle(_))));
}
