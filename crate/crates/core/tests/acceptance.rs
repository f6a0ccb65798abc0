//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Run with `cargo test -p stringalg --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stringalg::decompose::{decompose_general, decompose_string, outer_class, Factor};
use stringalg::maximal_paths::{center_degree_zero, radical_basis, Part};
use stringalg::morphisms::{
    inner_automorphism, invert_unit, parse_morphism, Derivation, DerivationType, Endomorphism,
};
use stringalg::path_algebra::rat;
use stringalg::polymat::{modified_smith, parse_matrix, Poly, PolyMatrix};
use stringalg::{AlgebraPresentation, Config, Element, Path};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn smith_golden() -> Outcome {
    let m = parse_matrix("6*x^3 - 4*x^2, -3*x + 2, 9*x^2 - 4; 2*x^2 - 1, -1, 3*x + 2; 2*x^3, -x + 1, 3*x^2 + 2*x")
        .map_err(|e| e.to_string())?;
    let first = parse_matrix("3*x - 2, 0, 0; -1, -1, 0; 2*x^2 + x, 1, 3*x + 2").map_err(|e| e.to_string())?;
    let f = modified_smith(&m);
    let step = f.steps.first().ok_or("no elimination step")?;
    ensure(step.result == first, || format!("first elimination gave {}", step.result.to_text()))?;
    ensure(f.reconstruct() == m, || "U D P V differs from M".into())?;
    ensure(f.u.in_bn() && f.v.in_bn(), || "U(0) or V(0) not unit upper triangular".into())?;
    ensure(f.d.is_diagonal(), || "D not diagonal".into())?;
    Ok(format!("{} elimination steps", f.steps.len()))
}

fn worked() -> AlgebraPresentation {
    common::worked()
}

fn morphism(p: &AlgebraPresentation, text: &str) -> Result<Endomorphism, String> {
    parse_morphism(p, text).and_then(|f| f.verify(p)).map_err(|e| e.to_string())
}

fn worked_inner_map() -> Outcome {
    let p = worked();
    let u = invert_unit(&p, &p.parse_element("1 - a.b + b.a").unwrap()).map_err(|e| e.to_string())?;
    let f = inner_automorphism(&p, &u).map_err(|e| e.to_string())?;
    let expected = morphism(&p, "map a = a + 2*a.b.a\nmap b = b - 2*b.a.b")?;
    ensure(f.arrow_images() == expected.arrow_images() && f.vertex_images() == expected.vertex_images(), || {
        "conjugation map differs".into()
    })?;
    Ok("conjugation by 1 - ab + ba matches".into())
}

fn worked_inner_decomposition() -> Outcome {
    let p = worked();
    let f = morphism(&p, "map a = a + 2*a.b.a\nmap b = b - 2*b.a.b")?;
    let d = decompose_string(&p, &f, &Config::default()).map_err(|e| e.to_string())?;
    ensure(d.factors.len() == 1 && matches!(d.factors[0], Factor::Inner(_)), || {
        format!("factors: {}", d.render(&p).trim())
    })?;
    let back = d.recompose(&p, None).map_err(|e| e.to_string())?;
    ensure(back.arrow_images() == f.arrow_images(), || "inner factor does not reproduce the map".into())?;
    Ok(d.render(&p).trim().to_string())
}

fn worked_outer_decomposition() -> Outcome {
    let p = worked();
    let f = morphism(&p, "map a = a + a.b.a")?;
    let d = decompose_string(&p, &f, &Config::default()).map_err(|e| e.to_string())?;
    ensure(d.has_dofa(), || format!("no D(A) factor: {}", d.render(&p).trim()))?;
    let back = d.recompose(&p, None).map_err(|e| e.to_string())?;
    ensure(back.arrow_images() == f.arrow_images() && back.vertex_images() == f.vertex_images(), || {
        "recomposition differs".into()
    })?;
    Ok(d.render(&p).trim().replace('\n', "; "))
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let degree = rng.gen_range(0..=4);
    Poly::from_ints(&(0..=degree).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>())
}

fn smith_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut nonsingular = 0;
    for case in 0..200 {
        let n = rng.gen_range(1..=5);
        let rows = (0..n).map(|_| (0..n).map(|_| random_poly(&mut rng)).collect()).collect();
        let m = PolyMatrix::from_rows(rows).map_err(|e| e.to_string())?;
        let f = modified_smith(&m);
        ensure(f.u.in_bn() && f.v.in_bn(), || format!("case {case}: factor outside B_n"))?;
        ensure(f.d.is_diagonal(), || format!("case {case}: D not diagonal"))?;
        ensure(f.reconstruct() == m, || format!("case {case}: reconstruction differs"))?;
        let det = m.det();
        ensure(det == f.d.det() || det == f.d.det().scale(&rat(-1)), || format!("case {case}: det(M) != ±det(D)"))?;
        ensure(det == f.d.det().scale(&rat(f.sigma_sign())), || format!("case {case}: sign of sigma"))?;
        if !det.is_zero() {
            nonsingular += 1;
        }
    }
    Ok(format!("200 matrices, {nonsingular} nonsingular"))
}

/// Presentations with at least one typed derivation.
fn derivation_presentations() -> Vec<(&'static str, AlgebraPresentation)> {
    vec![
        ("worked", common::worked()),
        ("kronecker", kronecker()),
        ("truncated loop", truncated_loop()),
        ("long relations", long_relations()),
        ("two bar-gamma", two_bar_gamma()),
        ("triangle", triangle()),
        ("triangle with tail", triangle_with_tail()),
        ("truncated three-cycle", truncated_three_cycle()),
        ("truncated polynomial", truncated_polynomial()),
        ("kronecker with tail", kronecker_with_tail()),
    ]
}

/// Random product of vertices and arrows, as the list of factors.
fn generator_word(p: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Vec<Element> {
    let q = p.quiver();
    let mut gens: Vec<Element> = q.vertices().map(|v| p.vertex_element(v)).collect();
    gens.extend(q.arrows().map(|a| p.arrow_element(a)));
    (0..rng.gen_range(2..=5)).map(|_| gens.choose(rng).unwrap().clone()).collect()
}

fn leibniz_holds(p: &AlgebraPresentation, d: &Derivation, word: &[Element]) -> bool {
    let refs: Vec<&Element> = word.iter().collect();
    let lhs = d.apply(p, &p.product(&refs));
    let mut rhs = Element::zero();
    for i in 0..word.len() {
        let hit = d.apply(p, &word[i]);
        let mut factors = refs.clone();
        factors[i] = &hit;
        rhs = rhs.plus(&p.product(&factors));
    }
    lhs == rhs
}

fn kills_basis(basis: &[Path], f: impl Fn(&Element) -> Element) -> bool {
    basis.iter().all(|w| f(&Element::from_path(w.clone())).is_zero())
}

fn derivation_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let presentations = derivation_presentations();
    let mut built = 0;
    let mut type_ii_checked = 0;
    let mut commutations = 0;
    for (name, p) in &presentations {
        ensure(p.quiver().arrow_count() <= 10, || format!("{name}: too many arrows"))?;
        let basis = p.enumerate_basis(TEST_DEGREE);
        let mut here = 0;
        let mut attempts = 0;
        while here < 12 {
            attempts += 1;
            ensure(attempts < 500, || format!("{name}: could not build derivations"))?;
            let Some(d) = random_derivation(p, &mut rng) else { continue };
            here += 1;
            for _ in 0..5 {
                let word = generator_word(p, &mut rng);
                ensure(leibniz_holds(p, &d, &word), || format!("{name}: Leibniz fails"))?;
            }
            let x = random_element(p, &mut rng, 4, 3);
            let y = random_element(p, &mut rng, 4, 3);
            let lhs = d.apply(p, &p.multiply(&x, &y));
            let rhs = p.multiply(&d.apply(p, &x), &y).plus(&p.multiply(&x, &d.apply(p, &y)));
            ensure(lhs == rhs, || format!("{name}: Leibniz fails on elements"))?;

            let forward = d.exponentiate(p, None).map_err(|e| format!("{name}: {e}"))?;
            let back = d.scaled(p, &rat(-1)).and_then(|m| m.exponentiate(p, None)).map_err(|e| e.to_string())?;
            ensure(forward.compose(p, &back).is_identity(p) && back.compose(p, &forward).is_identity(p), || {
                format!("{name}: exp(d) exp(-d) is not the identity")
            })?;

            if d.has_type(DerivationType::II) {
                type_ii_checked += 1;
                ensure(kills_basis(&basis, |w| d.apply(p, &d.apply(p, w))), || format!("{name}: d^2 != 0"))?;
                for _ in 0..3 {
                    let other = if rng.gen_bool(0.5) { random_type_i(p, &mut rng) } else { random_type_ii(p, &mut rng) };
                    let Some(e) = other else { continue };
                    commutations += 1;
                    ensure(kills_basis(&basis, |w| d.apply(p, &e.apply(p, w))), || {
                        format!("{name}: type II after another derivation is nonzero")
                    })?;
                    ensure(kills_basis(&basis, |w| e.apply(p, &d.apply(p, w))), || {
                        format!("{name}: another derivation after type II is nonzero")
                    })?;
                }
            }
        }
        built += here;
    }
    ensure(built >= 100, || format!("only {built} derivations"))?;
    Ok(format!(
        "{} presentations, {built} derivations, {type_ii_checked} of type II, {commutations} commutation pairs",
        presentations.len()
    ))
}

fn decomposition_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let config = Config::default();
    let mixed = mixed_presentations();
    let mut with_dofa = 0;
    for round in 0..100 {
        let (name, p) = &mixed[round % mixed.len()];
        let f = random_automorphism(p, &mut rng, true);
        let d = decompose_general(p, &f, &config).map_err(|e| format!("{name} #{round}: {e}"))?;
        let back = d.recompose(p, None).map_err(|e| e.to_string())?;
        ensure(back.arrow_images() == f.arrow_images() && back.vertex_images() == f.vertex_images(), || {
            format!("{name} #{round}: recomposition differs")
        })?;
        if d.has_dofa() {
            with_dofa += 1;
        }
    }
    let unique = unique_infinite_presentations();
    let mut inner = 0;
    for round in 0..40 {
        let (name, p) = &unique[round % unique.len()];
        let f = random_automorphism(p, &mut rng, false);
        let d = decompose_general(p, &f, &config).map_err(|e| format!("{name} #{round}: {e}"))?;
        let single = match d.factors.as_slice() {
            [] => f.is_identity(p),
            [Factor::Inner(u)] => inner_automorphism(p, u).map(|g| g.arrow_images() == f.arrow_images()).unwrap_or(false),
            _ => false,
        };
        ensure(single, || format!("{name} #{round}: not a single inner factor: {}", d.render(p).trim()))?;
        inner += 1;
    }
    Ok(format!("100 mixed round trips ({with_dofa} with D(A)), {inner} single inner factors"))
}

fn structural_suite() -> Outcome {
    const DEGREE: usize = 8;
    let mut pairs = 0;
    for (name, p) in all_presentations() {
        let q = p.quiver();
        if q.is_connected() {
            let center = center_degree_zero(&p);
            ensure(center.len() == 1, || format!("{name}: degree-0 center has dimension {}", center.len()))?;
        }

        // powers of the radical die out within the number of basis elements
        let radical = radical_basis(&p).map_err(|e| e.to_string())?;
        let mut power: Vec<Path> = radical.clone();
        let mut steps = 1;
        while !power.is_empty() {
            ensure(steps <= radical.len() + 1, || format!("{name}: radical not nilpotent"))?;
            let mut next = Vec::new();
            for x in &power {
                for r in &radical {
                    if let Some(w) = p.concat(x, r) {
                        if !next.contains(&w) {
                            next.push(w);
                        }
                    }
                }
            }
            power = next;
            steps += 1;
        }

        let basis: Vec<Path> = p.enumerate_basis(DEGREE).into_iter().filter(|w| !w.is_stationary()).collect();
        for w in &basis {
            let pw = part(&p, w).ok_or_else(|| format!("{name}: {} has no part", q.format_path(w)))?;
            ensure(w.arrows().iter().all(|&a| p.structure().unwrap().partition.part_of_arrow(a) == pw), || {
                format!("{name}: {} mixes parts", q.format_path(w))
            })?;
            if pw == Part::Radical {
                ensure(radical.contains(w), || format!("{name}: {} missing from the radical", q.format_path(w)))?;
            }
        }
        for x in &basis {
            for y in basis.iter().filter(|y| x.len() + y.len() <= DEGREE) {
                pairs += 1;
                if let Some(xy) = p.concat(x, y) {
                    ensure(part(&p, x) == part(&p, y) && part(&p, &xy) == part(&p, x), || {
                        format!("{name}: {} . {} leaves its part", q.format_path(x), q.format_path(y))
                    })?;
                }
            }
        }
    }
    Ok(format!("{} presentations, {pairs} path pairs", all_presentations().len()))
}

fn outer_golden() -> Outcome {
    let cases = [
        (kronecker(), "GL_2(k)"),
        (doubled_three_cycle(), "Z/2Z ⋉ (k^×)^6"),
        (two_bar_gamma(), "(k^×)^5 ⋉ k^2"),
    ];
    let mut seen = Vec::new();
    for (p, expected) in cases {
        let report = outer_class(&p).map_err(|e| e.to_string())?;
        ensure(report.group_description == expected, || {
            format!("expected {expected}, got {}", report.group_description)
        })?;
        seen.push(report.group_description);
    }
    Ok(seen.join(" | "))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 modified Smith form golden example", Duration::from_secs(1), smith_golden),
        ("2a worked algebra: conjugation by 1 - ab + ba", Duration::from_secs(1), worked_inner_map),
        ("2b worked algebra: inner map decomposes to one inner factor", Duration::from_secs(1), worked_inner_decomposition),
        ("2c worked algebra: a -> a + aba needs a D(A) factor", Duration::from_secs(1), worked_outer_decomposition),
        ("3 Smith factorization on 200 random matrices", Duration::from_secs(30), smith_suite),
        ("4 derivations: Leibniz, exponentials, type II identities", Duration::from_secs(60), derivation_suite),
        ("5 decomposition round trips", Duration::from_secs(300), decomposition_suite),
        ("6 structural lemmas", Duration::from_secs(60), structural_suite),
        ("7 outer automorphism group reports", Duration::from_secs(1), outer_golden),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
