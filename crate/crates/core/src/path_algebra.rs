use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::path::Path;
use crate::quiver::{AlgebraPresentation, ArrowId, Quiver, RelationSet, VertexId};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A finite linear combination of basis paths with nonzero rational
/// coefficients, iterated in basis order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Path, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_path(p: Path) -> Self {
        Element::term(rat(1), p)
    }

    pub fn term(c: Rational, p: Path) -> Self {
        let mut e = Element::zero();
        e.add_term(p, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, p: Path, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (p, v) in &other.terms {
            self.add_term(p.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &rat(1));
        out
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &rat(-1));
        out
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Element {
        self.scaled(&rat(-1))
    }

    /// Terms whose paths satisfy the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Path) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// The homogeneous component of the given length.
    pub fn degree_part(&self, n: usize) -> Element {
        self.filter(|p| p.len() == n)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }
}

impl FromIterator<(Path, Rational)> for Element {
    fn from_iter<I: IntoIterator<Item = (Path, Rational)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (p, c) in iter {
            e.add_term(p, c);
        }
        e
    }
}

/// Does some generator occur in `arrows` inside a window that meets
/// positions `lo..hi`? Used to test only the windows a product creates.
fn hits_relation(rel: &RelationSet, arrows: &[ArrowId], lo: usize, hi: usize) -> bool {
    for &len in rel.lengths() {
        if len > arrows.len() {
            break;
        }
        let first = lo.saturating_sub(len - 1);
        let last = hi.min(arrows.len() - len);
        for start in first..=last {
            if rel.is_generator(&arrows[start..start + len]) {
                return true;
            }
        }
    }
    false
}

impl AlgebraPresentation {
    /// True iff some relation generator is a subpath of `p`.
    pub fn in_ideal(&self, p: &Path) -> bool {
        let arrows = p.arrows();
        !arrows.is_empty() && hits_relation(self.relations(), arrows, 0, arrows.len() - 1)
    }

    pub fn is_basis_path(&self, p: &Path) -> bool {
        !self.in_ideal(p)
    }

    /// Product of two basis paths, or `None` when it vanishes.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        let quiver = self.quiver();
        if p.target(quiver) != q.source(quiver) {
            return None;
        }
        match (p, q) {
            (Path::Stationary(_), _) => Some(q.clone()),
            (_, Path::Stationary(_)) => Some(p.clone()),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut joined = Vec::with_capacity(a.len() + b.len());
                joined.extend_from_slice(a);
                joined.extend_from_slice(b);
                if hits_relation(self.relations(), &joined, a.len() - 1, a.len()) {
                    None
                } else {
                    Some(Path::Arrows(joined))
                }
            }
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (p, c) in x.terms() {
            for (q, d) in y.terms() {
                if let Some(r) = self.concat(p, q) {
                    out.add_term(r, c * d);
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[&Element]) -> Element {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f);
        }
        acc
    }

    pub fn one(&self) -> Element {
        self.quiver().vertices().map(|v| (Path::Stationary(v), rat(1))).collect()
    }

    pub fn vertex_element(&self, v: VertexId) -> Element {
        Element::from_path(Path::Stationary(v))
    }

    pub fn arrow_element(&self, a: ArrowId) -> Element {
        Element::from_path(Path::arrow(a))
    }

    /// The degree-0 part as coefficients per vertex.
    pub fn vertex_coefficients(&self, x: &Element) -> Vec<Rational> {
        self.quiver().vertices().map(|v| x.coefficient(&Path::Stationary(v))).collect()
    }

    /// All basis paths of length at most `max_len`, in basis order.
    pub fn enumerate_basis(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.quiver().vertices().map(Path::Stationary).collect();
        let mut level: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            level = if len == 1 {
                self.quiver().arrows().map(Path::arrow).collect()
            } else {
                self.extend_level(&level)
            };
            if level.is_empty() {
                break;
            }
            out.extend(level.iter().cloned());
        }
        out
    }

    fn extend_level(&self, level: &[Path]) -> Vec<Path> {
        let q = self.quiver();
        let mut next = BTreeSet::new();
        for p in level {
            for a in q.arrows_from(p.target(q)) {
                if let Some(r) = self.concat(p, &Path::arrow(a)) {
                    next.insert(r);
                }
            }
        }
        next.into_iter().collect()
    }

    /// The basis paths of one length.
    pub fn basis_of_length(&self, n: usize) -> Vec<Path> {
        if n == 0 {
            return self.quiver().vertices().map(Path::Stationary).collect();
        }
        let mut level: Vec<Path> = self.quiver().arrows().map(Path::arrow).collect();
        for _ in 1..n {
            level = self.extend_level(&level);
        }
        level
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.dimension().is_some()
    }

    pub fn format_element(&self, x: &Element) -> String {
        format_element(self.quiver(), x)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        parse_element(self, text).map_err(|message| Error::Parse { line: 1, message })
    }
}

/// Decides finite-dimensionality: with `m` one less than the longest
/// relation, the basis is infinite iff the graph on basis paths of length
/// `m`, joined when one extends to the next by an arrow, has a cycle.
/// Returns the dimension when finite.
pub fn finite_dimension(q: &Quiver, rel: &RelationSet) -> Option<usize> {
    let m = rel.max_len().saturating_sub(1).max(1);
    let extend = |p: &[ArrowId]| -> Vec<Vec<ArrowId>> {
        let last = *p.last().expect("nonempty");
        q.arrows_from(q.target(last))
            .into_iter()
            .filter_map(|a| {
                let mut joined = p.to_vec();
                joined.push(a);
                (!hits_relation(rel, &joined, joined.len() - 1, joined.len() - 1)).then_some(joined)
            })
            .collect()
    };
    let mut count = q.vertex_count();
    let mut level: Vec<Vec<ArrowId>> = q.arrows().map(|a| vec![a]).collect();
    for _ in 1..m {
        count += level.len();
        level = level.iter().flat_map(|p| extend(p)).collect();
    }
    // level now holds the basis paths of length m
    let index: HashMap<Vec<ArrowId>, usize> = level.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let succ: Vec<Vec<usize>> = level
        .iter()
        .map(|p| extend(p).into_iter().map(|r| index[&r[1..]]).collect())
        .collect();
    // iterative three-colour depth-first search for a cycle
    let mut colour = vec![0u8; level.len()];
    for start in 0..level.len() {
        if colour[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i];
                *i += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return None,
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    while !level.is_empty() {
        count += level.len();
        level = level.iter().flat_map(|p| extend(p)).collect();
    }
    Some(count)
}

fn format_coefficient_term(out: &mut String, c: &Rational, body: Option<&str>) {
    let first = out.is_empty();
    let magnitude = c.abs();
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    out.push_str(&magnitude.to_string());
    if let Some(b) = body {
        out.push('*');
        out.push_str(b);
    }
}

/// Text form `c1*p1 + c2*p2 + ...` in basis order. When every vertex
/// carries the same coefficient the degree-0 part is written as that
/// scalar, so `1 - 1*a.b + 1*b.a` denotes the unit 1 - ab + ba.
pub fn format_element(q: &Quiver, x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let stationary: Vec<Rational> = q.vertices().map(|v| x.coefficient(&Path::Stationary(v))).collect();
    let uniform = q.vertex_count() > 0 && !stationary[0].is_zero() && stationary.iter().all(|c| *c == stationary[0]);
    if uniform {
        format_coefficient_term(&mut out, &stationary[0], None);
    }
    for (p, c) in x.terms() {
        if uniform && p.is_stationary() {
            continue;
        }
        format_coefficient_term(&mut out, c, Some(&q.format_path(p)));
    }
    out
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let ok = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit());
    if !ok(num) || !ok(den) {
        return None;
    }
    let n: num_bigint::BigInt = num.parse().ok()?;
    let d: num_bigint::BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn parse_element(p: &AlgebraPresentation, text: &str) -> std::result::Result<Element, String> {
    let q = p.quiver();
    let text = text.trim();
    if text.is_empty() {
        return Err("empty element".into());
    }
    // split into signed terms; identifiers never contain '+' or '-'
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for ch in text.chars() {
        if ch == '+' || ch == '-' || ch == '−' {
            if !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = false;
            }
            if ch != '+' {
                negative = !negative;
            }
            current.clear();
        } else {
            current.push(ch);
        }
    }
    if current.trim().is_empty() {
        return Err(format!("dangling sign in `{text}`"));
    }
    terms.push((negative, current));
    let mut out = Element::zero();
    for (negative, term) in terms {
        let term = term.trim();
        let (coefficient, path) = match term.split_once('*') {
            Some((c, path)) => {
                let c = parse_rational(c).ok_or_else(|| format!("bad coefficient `{}`", c.trim()))?;
                (c, Some(path.trim()))
            }
            None => match parse_rational(term) {
                Some(c) => (c, None),
                None => (rat(1), Some(term)),
            },
        };
        let coefficient = if negative { -coefficient } else { coefficient };
        match path {
            None => out.add_scaled(&p.one(), &coefficient),
            Some("1") => out.add_scaled(&p.one(), &coefficient),
            Some(path) => {
                let path = q.parse_path(path)?;
                if p.in_ideal(&path) {
                    continue;
                }
                out.add_term(path, coefficient);
            }
        }
    }
    Ok(out)
}
