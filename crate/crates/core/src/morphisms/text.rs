use super::endomorphism::Endomorphism;
use crate::error::{Error, Result};
use crate::quiver::AlgebraPresentation;

/// Reads `map e_<v> = <element>` and `map <arrow> = <element>` lines.
/// Generators without a line are fixed. Blank lines and `#` comments are
/// skipped. The result is not certified.
pub fn parse_morphism(p: &AlgebraPresentation, text: &str) -> Result<Endomorphism> {
    let q = p.quiver();
    let mut vertices: Vec<_> = q.vertices().map(|v| p.vertex_element(v)).collect();
    let mut arrows: Vec<_> = q.arrows().map(|a| p.arrow_element(a)).collect();
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line.strip_prefix("map").filter(|r| r.starts_with(char::is_whitespace));
        let Some((lhs, rhs)) = rest.and_then(|r| r.split_once('=')) else {
            return Err(err(format!("expected `map <generator> = <element>`, got `{line}`")));
        };
        let lhs = lhs.trim();
        if !seen.insert(lhs.to_string()) {
            return Err(err(format!("generator `{lhs}` mapped twice")));
        }
        let image = p.parse_element(rhs).map_err(|e| match e {
            Error::Parse { message, .. } => err(message),
            other => other,
        })?;
        if let Some(v) = lhs.strip_prefix("e_").and_then(|name| q.vertex_id(name)) {
            vertices[v.0] = image;
        } else if let Some(a) = q.arrow_id(lhs) {
            arrows[a.0] = image;
        } else {
            return Err(err(format!("unknown generator `{lhs}`")));
        }
    }
    Ok(Endomorphism::new(vertices, arrows))
}

/// One `map` line per generator, vertices first. With `changed_only`,
/// generators sent to themselves are omitted.
pub fn format_morphism(p: &AlgebraPresentation, f: &Endomorphism, changed_only: bool) -> String {
    let q = p.quiver();
    let mut lines = Vec::new();
    for v in q.vertices() {
        let x = f.vertex_image(v);
        if !changed_only || *x != p.vertex_element(v) {
            lines.push(format!("map e_{} = {}", q.vertex_name(v), p.format_element(x)));
        }
    }
    for a in q.arrows() {
        let x = f.arrow_image(a);
        if !changed_only || *x != p.arrow_element(a) {
            lines.push(format!("map {} = {}", q.arrow_name(a), p.format_element(x)));
        }
    }
    lines.join("\n")
}
