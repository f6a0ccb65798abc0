use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use stringalg::decompose::{decompose_general, outer_class, Factor};
use stringalg::maximal_paths::{center_degree_zero, classify_maximal, radical_basis};
use stringalg::morphisms::{format_morphism, inner_automorphism, invert_unit, make_derivation, parse_morphism, Derivation};
use stringalg::polymat::{modified_smith, parse_matrix};
use stringalg::{parse_quiver, AlgebraPresentation, Config, Element, Error, Path};

#[derive(Parser)]
#[command(name = "stringalg", version, about = "Exact computations in string and locally string algebras")]
struct Cli {
    /// Longest path any enumeration may visit.
    #[arg(long = "max-len", value_name = "N", global = true)]
    max_len: Option<usize>,
    /// Largest entry degree accepted when solving for a conjugating unit.
    #[arg(long = "cap-degree", value_name = "N", global = true)]
    cap_degree: Option<usize>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the string and gentle axioms and report the dimension.
    Validate { quiver: PathBuf },
    /// List the basis paths, up to --max-len when infinite-dimensional.
    Basis { quiver: PathBuf },
    /// List the left, right, finite and infinite maximal paths.
    Maximal { quiver: PathBuf },
    /// List the basis of the radical part.
    Radical { quiver: PathBuf },
    /// Basis of the degree-zero part of the center.
    Center0 { quiver: PathBuf },
    /// Check a derivation given by `map <arrow> = <element>` lines.
    Derivation { quiver: PathBuf, derivation: PathBuf },
    /// Exponentiate a derivation given by `map <arrow> = <element>` lines.
    Exp { quiver: PathBuf, derivation: PathBuf },
    /// Conjugation by the unit whose element text is in the file.
    Inner { quiver: PathBuf, unit: PathBuf },
    /// Factor an automorphism given by `map` lines.
    Decompose { quiver: PathBuf, morphism: PathBuf },
    /// Modified Smith factorization `M = U * D * P_sigma * V`.
    Smith { matrix: PathBuf },
    /// Outer automorphism group of a gentle algebra.
    OuterClass { quiver: PathBuf },
}

/// A report with its text and JSON renderings built side by side.
struct Report {
    text: Vec<String>,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: Vec<String>, json: Value) -> Self {
        Report { text, json, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::InvalidPresentation(_)
        | Error::Shape(_)
        | Error::NotGentle(_)
        | Error::PolynomialRing
        | Error::NotInImage(_) => 2,
        Error::Certification(_)
        | Error::DerivationCondition { .. }
        | Error::NotAUnit(_)
        | Error::Structure { .. }
        | Error::NoSolution(_)
        | Error::NotInvertible(_) => 3,
        Error::NilpotencyCap { .. } | Error::CapExhausted { .. } | Error::BoundExceeded { .. } => 4,
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, message: format!("cannot read {}: {e}", path.display()) })
}

fn load_quiver(path: &PathBuf, config: &Config) -> Result<AlgebraPresentation, Error> {
    Ok(parse_quiver(&read(path)?)?.with_max_path_length(config.max_path_length))
}

fn load_valid(path: &PathBuf, config: &Config) -> Result<AlgebraPresentation, Error> {
    let p = load_quiver(path, config)?;
    p.require_valid()?;
    Ok(p)
}

/// `map <arrow> = <element>` lines; arrows without a line go to zero.
fn parse_assignments(p: &AlgebraPresentation, text: &str) -> Result<Derivation, Error> {
    let q = p.quiver();
    let mut assignments = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| Error::Parse { line: i + 1, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rest = line.strip_prefix("map").filter(|r| r.starts_with(char::is_whitespace));
        let Some((lhs, rhs)) = rest.and_then(|r| r.split_once('=')) else {
            return Err(err(format!("expected `map <arrow> = <element>`, got `{line}`")));
        };
        let a = q.arrow_id(lhs.trim()).ok_or_else(|| err(format!("unknown arrow `{}`", lhs.trim())))?;
        if assignments.iter().any(|(b, _)| *b == a) {
            return Err(err(format!("arrow `{}` assigned twice", lhs.trim())));
        }
        let x = p.parse_element(rhs).map_err(|e| match e {
            Error::Parse { message, .. } => err(message),
            other => other,
        })?;
        assignments.push((a, x));
    }
    make_derivation(p, &assignments)
}

fn paths(p: &AlgebraPresentation, list: &[Path]) -> Vec<String> {
    list.iter().map(|w| p.quiver().format_path(w)).collect()
}

fn morphism_lines(p: &AlgebraPresentation, f: &stringalg::morphisms::Endomorphism) -> Vec<String> {
    format_morphism(p, f, false).lines().map(str::to_string).collect()
}

fn validate(config: &Config, file: &PathBuf) -> Result<Report, Error> {
    let p = load_quiver(file, config)?;
    let r = p.report();
    let dims = match r.dimension {
        Some(d) => format!("finite-dimensional; dim {d}"),
        None => "infinite-dimensional".to_string(),
    };
    if !r.classification.is_valid() {
        let reason = r.reason();
        return Ok(Report {
            text: vec![format!("invalid; {reason}")],
            json: json!({ "classification": "invalid", "reason": reason }),
            code: 2,
        });
    }
    Ok(Report::ok(
        vec![format!("{}; {dims}", r.classification)],
        json!({ "classification": r.classification.to_string(), "dimension": r.dimension, "reason": r.reason() }),
    ))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let mut config = Config::default();
    if let Some(n) = cli.max_len {
        config.max_path_length = n;
    }
    if let Some(n) = cli.cap_degree {
        config.conjugation_degree_cap = n;
    }
    config.validate()?;

    match &cli.command {
        Command::Validate { quiver } => validate(&config, quiver),
        Command::Basis { quiver } => {
            let p = load_valid(quiver, &config)?;
            let bound = match p.dimension() {
                // every basis path lies on a finite maximal path
                Some(_) => p.structure()?.longest_finite_maximal(),
                None => cli.max_len.unwrap_or(8),
            };
            let basis = paths(&p, &p.enumerate_basis(bound));
            let mut text = basis.clone();
            let header = match p.dimension() {
                Some(d) => format!("dim {d}"),
                None => format!("{} paths of length at most {bound}", basis.len()),
            };
            text.insert(0, header);
            Ok(Report::ok(text, json!({ "dimension": p.dimension(), "max_len": bound, "basis": basis })))
        }
        Command::Maximal { quiver } => {
            let p = load_valid(quiver, &config)?;
            let r = classify_maximal(&p, config.max_path_length)?;
            let infinite: Vec<String> =
                r.infinite_maximal.iter().map(|g| p.quiver().format_path(&g.generating_cycle)).collect();
            let (left, right, finite) = (paths(&p, &r.left_maximal), paths(&p, &r.right_maximal), paths(&p, &r.finite_maximal));
            let mut text = Vec::new();
            for (label, list) in [("left", &left), ("right", &right), ("finite", &finite)] {
                text.extend(list.iter().map(|w| format!("{label}: {w}")));
            }
            text.extend(infinite.iter().map(|c| format!("infinite: ({c})^∞")));
            Ok(Report::ok(
                text,
                json!({ "left": left, "right": right, "finite": finite, "infinite_cycles": infinite }),
            ))
        }
        Command::Radical { quiver } => {
            let p = load_valid(quiver, &config)?;
            let radical = paths(&p, &radical_basis(&p)?);
            let length = p.structure()?.radical_length();
            let mut text = vec![format!("dim {}; longest path {length}", radical.len())];
            text.extend(radical.iter().cloned());
            Ok(Report::ok(text, json!({ "dimension": radical.len(), "longest": length, "basis": radical })))
        }
        Command::Center0 { quiver } => {
            let p = load_valid(quiver, &config)?;
            let basis: Vec<String> = center_degree_zero(&p).iter().map(|x| p.format_element(x)).collect();
            let mut text = vec![format!("dim {}", basis.len())];
            text.extend(basis.iter().cloned());
            Ok(Report::ok(text, json!({ "dimension": basis.len(), "basis": basis })))
        }
        Command::Derivation { quiver, derivation } => {
            let p = load_valid(quiver, &config)?;
            let d = parse_assignments(&p, &read(derivation)?)?;
            let types: Vec<String> = d.tags().iter().map(|t| t.to_string()).collect();
            let lines: Vec<String> = d
                .assignments()
                .iter()
                .map(|(a, x)| format!("map {} = {}", p.quiver().arrow_name(*a), p.format_element(x)))
                .collect();
            let mut text = vec![format!("types: {}", if types.is_empty() { "none".to_string() } else { types.join(", ") })];
            text.extend(lines.iter().cloned());
            Ok(Report::ok(text, json!({ "types": types, "assignments": lines })))
        }
        Command::Exp { quiver, derivation } => {
            let p = load_valid(quiver, &config)?;
            let d = parse_assignments(&p, &read(derivation)?)?;
            let f = d.exponentiate(&p, config.nilpotency_cap)?;
            let lines = morphism_lines(&p, &f);
            Ok(Report::ok(lines.clone(), json!({ "map": lines })))
        }
        Command::Inner { quiver, unit } => {
            let p = load_valid(quiver, &config)?;
            let x: Element = p.parse_element(&read(unit)?)?;
            let u = invert_unit(&p, &x)?;
            let f = inner_automorphism(&p, &u)?;
            let (value, inverse) = (p.format_element(u.value()), p.format_element(u.inverse()));
            let lines = morphism_lines(&p, &f);
            let mut text = vec![format!("unit: {value}"), format!("inverse: {inverse}")];
            text.extend(lines.iter().cloned());
            Ok(Report::ok(text, json!({ "unit": value, "inverse": inverse, "map": lines })))
        }
        Command::Decompose { quiver, morphism } => {
            let p = load_valid(quiver, &config)?;
            let f = parse_morphism(&p, &read(morphism)?)?.verify(&p)?;
            let d = decompose_general(&p, &f, &config)?;
            let verified = d.recompose(&p, config.nilpotency_cap)? == f;
            let factors: Vec<Value> = d
                .factors
                .iter()
                .map(|x| {
                    let detail = match x {
                        Factor::Inner(u) => json!({ "unit": p.format_element(u.value()) }),
                        _ => json!({ "map": morphism_lines(&p, &x.endomorphism(&p, config.nilpotency_cap).unwrap_or_else(|_| f.clone())) }),
                    };
                    json!({ "kind": x.name(), "description": x.describe(&p), "detail": detail })
                })
                .collect();
            let mut text: Vec<String> = d.render(&p).lines().map(str::to_string).collect();
            text.push(format!("verified: {verified}"));
            Ok(Report { text, json: json!({ "factors": factors, "verified": verified }), code: if verified { 0 } else { 3 } })
        }
        Command::Smith { matrix } => {
            let m = parse_matrix(&read(matrix)?)?;
            let f = modified_smith(&m);
            let verified = f.reconstruct() == m && f.u.in_bn() && f.v.in_bn() && f.d.is_diagonal();
            let sigma: Vec<usize> = f.sigma.iter().map(|j| j + 1).collect();
            let rows = |x: &stringalg::polymat::PolyMatrix| x.to_string().lines().map(str::to_string).collect::<Vec<_>>();
            let mut text = vec!["U =".to_string()];
            text.extend(rows(&f.u));
            text.push("D =".to_string());
            text.extend(rows(&f.d));
            text.push(format!("sigma = {sigma:?}"));
            text.push("V =".to_string());
            text.extend(rows(&f.v));
            text.push(format!("elimination steps: {}", f.steps.len()));
            text.push(format!("verified: {verified}"));
            Ok(Report {
                text,
                json: json!({
                    "u": rows(&f.u), "d": rows(&f.d), "sigma": sigma, "v": rows(&f.v),
                    "steps": f.steps.len(), "verified": verified,
                }),
                code: if verified { 0 } else { 3 },
            })
        }
        Command::OuterClass { quiver } => {
            let p = load_valid(quiver, &config)?;
            let r = outer_class(&p)?;
            let shape = format!("{:?}", r.shape);
            Ok(Report::ok(
                vec![
                    format!("shape: {shape}"),
                    format!("group: {}", r.group_description),
                    format!("arrows with a parallel avoiding maximal path: {}", r.n_bar_gamma),
                ],
                json!({ "shape": shape, "group": r.group_description, "n_bar_gamma": r.n_bar_gamma }),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                for line in &report.text {
                    println!("{line}");
                }
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exit": exit_code(&e) }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
