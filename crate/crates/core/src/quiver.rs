use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::maximal_paths::PathStructure;
use crate::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// Characters that may not appear in identifiers because the element,
/// morphism and matrix text formats use them as punctuation.
const RESERVED: &[char] = &['.', '*', '+', '-', '/', ':', '#', '=', ',', ';', '·', '(', ')'];

fn check_identifier(id: &str, kind: &str) -> std::result::Result<(), String> {
    if id.is_empty() {
        return Err(format!("empty {kind} identifier"));
    }
    if let Some(c) = id.chars().find(|c| c.is_whitespace() || RESERVED.contains(c)) {
        return Err(format!("{kind} identifier `{id}` contains reserved character `{c}`"));
    }
    if kind == "arrow" {
        if id.starts_with("e_") {
            return Err(format!("arrow identifier `{id}` clashes with stationary path syntax"));
        }
        if id.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("arrow identifier `{id}` would read as a coefficient"));
        }
    }
    Ok(())
}

/// A finite quiver with named vertices and arrows, kept in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            q.add_vertex(v.as_ref()).map_err(|m| Error::Parse { line: 0, message: m })?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())
                .map_err(|m| Error::Parse { line: 0, message: m })?;
        }
        if q.arrows.is_empty() {
            return Err(Error::Parse { line: 0, message: "quiver has no arrows".into() });
        }
        Ok(q)
    }

    fn add_vertex(&mut self, id: &str) -> std::result::Result<(), String> {
        check_identifier(id, "vertex")?;
        if self.vertex_index.contains_key(id) {
            return Err(format!("duplicate vertex `{id}`"));
        }
        self.vertex_index.insert(id.to_string(), VertexId(self.vertices.len()));
        self.vertices.push(id.to_string());
        Ok(())
    }

    fn add_arrow(&mut self, id: &str, s: &str, t: &str) -> std::result::Result<(), String> {
        check_identifier(id, "arrow")?;
        if self.arrow_index.contains_key(id) {
            return Err(format!("duplicate arrow `{id}`"));
        }
        let source = *self.vertex_index.get(s).ok_or(format!("arrow `{id}` uses unknown vertex `{s}`"))?;
        let target = *self.vertex_index.get(t).ok_or(format!("arrow `{id}` uses unknown vertex `{t}`"))?;
        self.arrow_index.insert(id.to_string(), ArrowId(self.arrows.len()));
        self.arrows.push(Arrow { name: id.to_string(), source, target });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn arrows_from(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.source(a) == v).collect()
    }

    pub fn arrows_into(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.target(a) == v).collect()
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        self.unreachable_from_first().is_none()
    }

    fn unreachable_from_first(&self) -> Option<VertexId> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let next = if a.source.0 == v {
                    a.target.0
                } else if a.target.0 == v {
                    a.source.0
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.iter().position(|s| !s).map(VertexId)
    }

    pub fn format_path(&self, p: &Path) -> String {
        match p {
            Path::Stationary(v) => format!("e_{}", self.vertex_name(*v)),
            Path::Arrows(arrows) => arrows.iter().map(|&a| self.arrow_name(a)).collect::<Vec<_>>().join("."),
        }
    }

    /// Reads `e_<vertex>`, a `.`/`·`-joined arrow list, or a juxtaposed
    /// arrow list such as `aba`.
    pub fn parse_path(&self, text: &str) -> std::result::Result<Path, String> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            return self
                .vertex_id(v)
                .map(Path::Stationary)
                .ok_or_else(|| format!("unknown vertex `{v}`"));
        }
        let mut arrows = Vec::new();
        for token in text.split(['.', '·']) {
            if token.is_empty() {
                return Err(format!("empty arrow in path `{text}`"));
            }
            arrows.extend(self.split_juxtaposed(token)?);
        }
        Path::from_arrows(self, arrows).ok_or_else(|| format!("path `{text}` is not composable"))
    }

    fn split_juxtaposed(&self, token: &str) -> std::result::Result<Vec<ArrowId>, String> {
        if let Some(a) = self.arrow_id(token) {
            return Ok(vec![a]);
        }
        // count segmentations of every suffix so ambiguity can be reported
        let chars: Vec<(usize, char)> = token.char_indices().collect();
        let n = chars.len();
        let offset = |i: usize| if i == n { token.len() } else { chars[i].0 };
        let mut ways: Vec<Option<(usize, ArrowId, usize)>> = vec![None; n + 1];
        let mut count = vec![0usize; n + 1];
        count[n] = 1;
        for i in (0..n).rev() {
            for j in (i + 1)..=n {
                if let Some(a) = self.arrow_id(&token[offset(i)..offset(j)]) {
                    if count[j] > 0 {
                        count[i] += count[j];
                        ways[i] = Some((j, a, count[j]));
                    }
                }
            }
        }
        match count[0] {
            0 => Err(format!("unknown arrow `{token}`")),
            1 => {
                let mut out = Vec::new();
                let mut i = 0;
                while i < n {
                    let (j, a, _) = ways[i].expect("segmentation exists");
                    out.push(a);
                    i = j;
                }
                Ok(out)
            }
            _ => Err(format!("ambiguous juxtaposed path `{token}`; separate arrows with `.`")),
        }
    }
}

/// The monomial generators of the ideal, kept minimal under the subpath
/// order and sorted in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    generators: Vec<Path>,
    lookup: HashSet<Vec<ArrowId>>,
    lengths: Vec<usize>,
}

impl RelationSet {
    /// Minimizes the given generators. Every generator must be a composable
    /// path of length at least two.
    pub fn new(q: &Quiver, paths: Vec<Path>) -> Result<Self> {
        for p in &paths {
            if p.len() < 2 {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("relation `{}` has length below 2", q.format_path(p)),
                });
            }
        }
        let unique: BTreeSet<Path> = paths.into_iter().collect();
        let generators: Vec<Path> = unique
            .iter()
            .filter(|g| !unique.iter().any(|h| h != *g && h.is_subpath_of(q, g)))
            .cloned()
            .collect();
        let lookup = generators.iter().map(|g| g.arrows().to_vec()).collect();
        let lengths: BTreeSet<usize> = generators.iter().map(Path::len).collect();
        Ok(RelationSet { generators, lookup, lengths: lengths.into_iter().collect() })
    }

    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.lengths.last().copied().unwrap_or(0)
    }

    pub(crate) fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub(crate) fn is_generator(&self, arrows: &[ArrowId]) -> bool {
        self.lookup.contains(arrows)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    String,
    LocallyString,
    Gentle,
    LocallyGentle,
    Invalid,
}

impl Classification {
    pub fn is_valid(self) -> bool {
        self != Classification::Invalid
    }

    pub fn is_gentle(self) -> bool {
        matches!(self, Classification::Gentle | Classification::LocallyGentle)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::String => "string",
            Classification::LocallyString => "locally-string",
            Classification::Gentle => "gentle",
            Classification::LocallyGentle => "locally-gentle",
            Classification::Invalid => "invalid",
        })
    }
}

/// One failed axiom together with the vertex, arrow or path pair that
/// witnesses the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: &'static str,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub classification: Classification,
    /// Failures of the string axioms; nonempty exactly when invalid.
    pub string_violations: Vec<Violation>,
    /// Failures of the additional gentle axioms.
    pub gentle_violations: Vec<Violation>,
    pub dimension: Option<usize>,
}

impl ValidationReport {
    pub fn reason(&self) -> String {
        if !self.string_violations.is_empty() {
            return join(&self.string_violations);
        }
        if self.gentle_violations.is_empty() {
            "all gentle conditions hold".to_string()
        } else {
            format!("string conditions hold; not gentle: {}", join(&self.gentle_violations))
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub const DEFAULT_MAX_PATH_LENGTH: usize = 64;

/// A quiver with monomial relations, classified on construction.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    relations: RelationSet,
    report: ValidationReport,
    max_path_length: usize,
    structure: OnceLock<Result<PathStructure>>,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: RelationSet) -> Self {
        let report = validate_presentation(&quiver, &relations);
        AlgebraPresentation {
            quiver,
            relations,
            report,
            max_path_length: DEFAULT_MAX_PATH_LENGTH,
            structure: OnceLock::new(),
        }
    }

    /// Builds a presentation from identifier lists, relations given as
    /// space-separated arrow names.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> Result<Self> {
        let quiver = Quiver::new(vertices, arrows)?;
        let mut paths = Vec::new();
        for r in relations {
            paths.push(relation_path(&quiver, r.split_whitespace(), 0)?);
        }
        let relations = RelationSet::new(&quiver, paths)?;
        Ok(AlgebraPresentation::new(quiver, relations))
    }

    /// Guard on path lengths for the finite maximal path search.
    pub fn with_max_path_length(mut self, n: usize) -> Self {
        self.max_path_length = n.max(1);
        self.structure = OnceLock::new();
        self
    }

    pub fn max_path_length(&self) -> usize {
        self.max_path_length
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn classification(&self) -> Classification {
        self.report.classification
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn dimension(&self) -> Option<usize> {
        self.report.dimension
    }

    pub fn require_valid(&self) -> Result<()> {
        if self.classification().is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPresentation(self.report.reason()))
        }
    }

    /// One vertex, one loop, no relations.
    pub fn is_polynomial_ring(&self) -> bool {
        self.quiver.vertex_count() == 1 && self.quiver.arrow_count() == 1 && self.relations.is_empty()
    }

    /// Maximal path structure, computed once.
    pub fn structure(&self) -> Result<&PathStructure> {
        self.structure
            .get_or_init(|| PathStructure::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }
}

fn relation_path<'a>(q: &Quiver, names: impl Iterator<Item = &'a str>, line: usize) -> Result<Path> {
    let mut arrows = Vec::new();
    let mut text = Vec::new();
    for name in names {
        text.push(name);
        let a = q.arrow_id(name).ok_or_else(|| Error::Parse {
            line,
            message: format!("relation uses unknown arrow `{name}`"),
        })?;
        arrows.push(a);
    }
    let text = text.join(" ");
    if arrows.len() < 2 {
        return Err(Error::Parse { line, message: format!("relation `{text}` has length below 2") });
    }
    Path::from_arrows(q, arrows).ok_or_else(|| Error::Parse {
        line,
        message: format!("relation `{text}` is not a composable path"),
    })
}

/// Reads the line-oriented quiver format:
/// `vertex <id>`, `arrow <id> : <src> -> <tgt>`, `relation <arrow> <arrow> ...`.
pub fn parse_quiver(text: &str) -> Result<AlgebraPresentation> {
    let mut q = Quiver {
        vertices: Vec::new(),
        arrows: Vec::new(),
        vertex_index: HashMap::new(),
        arrow_index: HashMap::new(),
    };
    let mut relation_lines: Vec<(usize, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "vertex" => {
                if rest.split_whitespace().count() != 1 {
                    return Err(err(format!("expected `vertex <id>`, found `{content}`")));
                }
                q.add_vertex(rest).map_err(err)?;
            }
            "arrow" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| err(format!("expected `arrow <id> : <src> -> <tgt>`, found `{content}`")))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| err(format!("expected `<src> -> <tgt>` in `{content}`")))?;
                q.add_arrow(name.trim(), s.trim(), t.trim()).map_err(err)?;
            }
            "relation" => {
                relation_lines.push((line, rest.split_whitespace().map(str::to_string).collect()));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    if q.arrows.is_empty() {
        return Err(Error::Parse { line: text.lines().count(), message: "quiver has no arrows".into() });
    }
    let mut paths = Vec::new();
    for (line, names) in &relation_lines {
        paths.push(relation_path(&q, names.iter().map(String::as_str), *line)?);
    }
    let relations = RelationSet::new(&q, paths)?;
    Ok(AlgebraPresentation::new(q, relations))
}

/// Writes a presentation back in the quiver file format.
pub fn format_quiver(p: &AlgebraPresentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    for v in q.vertices() {
        out.push_str(&format!("vertex {}\n", q.vertex_name(v)));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            q.arrow_name(a),
            q.vertex_name(q.source(a)),
            q.vertex_name(q.target(a))
        ));
    }
    for r in p.relations().generators() {
        let names: Vec<&str> = r.arrows().iter().map(|&a| q.arrow_name(a)).collect();
        out.push_str(&format!("relation {}\n", names.join(" ")));
    }
    out
}

/// Checks the string axioms (degree bounds, connectivity, the two
/// "at least one composite vanishes" conditions) and the gentle refinements
/// ("exactly one", quadratic relations). Never fails; it reports.
pub fn validate_presentation(q: &Quiver, rel: &RelationSet) -> ValidationReport {
    let mut string_v = Vec::new();
    let mut gentle_v = Vec::new();
    if let Some(v) = q.unreachable_from_first() {
        string_v.push(Violation {
            condition: "connected",
            witness: format!("vertex {} is not connected to vertex {}", q.vertex_name(v), q.vertex_name(VertexId(0))),
        });
    }
    for v in q.vertices() {
        let indeg = q.arrows_into(v).len();
        let outdeg = q.arrows_from(v).len();
        if indeg > 2 {
            string_v.push(Violation {
                condition: "degree",
                witness: format!("vertex {} has indegree {indeg}", q.vertex_name(v)),
            });
        }
        if outdeg > 2 {
            string_v.push(Violation {
                condition: "degree",
                witness: format!("vertex {} has outdegree {outdeg}", q.vertex_name(v)),
            });
        }
    }
    let name = |a: ArrowId| q.arrow_name(a).to_string();
    for alpha in q.arrows() {
        let incoming = q.arrows_into(q.source(alpha));
        for (i, &b1) in incoming.iter().enumerate() {
            for &b2 in &incoming[i + 1..] {
                let z1 = rel.is_generator(&[b1, alpha]);
                let z2 = rel.is_generator(&[b2, alpha]);
                let witness = format!("{}.{} and {}.{}", name(b1), name(alpha), name(b2), name(alpha));
                if !z1 && !z2 {
                    string_v.push(Violation { condition: "incoming-composite", witness: format!("{witness} are both nonzero") });
                } else if z1 && z2 {
                    gentle_v.push(Violation { condition: "incoming-exactly-one", witness: format!("{witness} are both relations") });
                }
            }
        }
        let outgoing = q.arrows_from(q.target(alpha));
        for (i, &b1) in outgoing.iter().enumerate() {
            for &b2 in &outgoing[i + 1..] {
                let z1 = rel.is_generator(&[alpha, b1]);
                let z2 = rel.is_generator(&[alpha, b2]);
                let witness = format!("{}.{} and {}.{}", name(alpha), name(b1), name(alpha), name(b2));
                if !z1 && !z2 {
                    string_v.push(Violation { condition: "outgoing-composite", witness: format!("{witness} are both nonzero") });
                } else if z1 && z2 {
                    gentle_v.push(Violation { condition: "outgoing-exactly-one", witness: format!("{witness} are both relations") });
                }
            }
        }
    }
    for g in rel.generators() {
        if g.len() != 2 {
            gentle_v.push(Violation {
                condition: "quadratic-relations",
                witness: format!("relation {} has length {}", q.format_path(g), g.len()),
            });
        }
    }
    let dimension = crate::path_algebra::finite_dimension(q, rel);
    let classification = match (string_v.is_empty(), gentle_v.is_empty(), dimension.is_some()) {
        (false, _, _) => Classification::Invalid,
        (true, true, true) => Classification::Gentle,
        (true, true, false) => Classification::LocallyGentle,
        (true, false, true) => Classification::String,
        (true, false, false) => Classification::LocallyString,
    };
    ValidationReport { classification, string_violations: string_v, gentle_violations: gentle_v, dimension }
}
