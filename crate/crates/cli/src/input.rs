//! Line-oriented input files.
//!
//! ```text
//! # comment
//! field Q(i)
//! ring x10 x11 x20 x21 x30 x31 x40 x41 grading (x10,x11) (x20,x21) (x30,x31) (x40,x41)
//! use paper-constants
//! let P = x10*x20 - x11*x21
//!     + x30*x40
//! ```
//!
//! Fields: `Q`, `Q(i)`, `GF(p)`, `Q[t]/(<monic or not polynomial in t>)`.
//! Indented lines continue the previous `let`.

use std::collections::HashMap;
use std::sync::Arc;

use syzcert::field::FieldSpec;
use syzcert::poly::{parse, parse_with, PolyError, Polynomial, Ring};
use syzcert::verify::catalog;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Poly { line: usize, source: PolyError },
    #[error("no `ring` line before line {0}")]
    NoRing(usize),
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A ring with named polynomials, in definition order.
#[derive(Clone, Debug)]
pub struct Input {
    pub ring: Arc<Ring>,
    pub env: HashMap<String, Polynomial>,
    pub order: Vec<String>,
}

impl Input {
    pub fn get(&self, name: &str) -> Result<&Polynomial, InputError> {
        self.env.get(name).ok_or_else(|| InputError::Unknown(name.to_string()))
    }

    /// Looks up a comma-separated list of names.
    pub fn get_list(&self, names: &str) -> Result<Vec<Polynomial>, InputError> {
        split_names(names).map(|n| self.get(n).cloned()).collect()
    }
}

pub fn split_names(names: &str) -> impl Iterator<Item = &str> {
    names.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn read_file(path: &str) -> Result<Input, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_string(), source })?;
    parse_input(&text)
}

pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "Q" => return Ok(FieldSpec::Rational),
        "Q(i)" => return Ok(FieldSpec::GaussianRational),
        _ => {}
    }
    if let Some(p) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
        return FieldSpec::prime(p).map_err(|e| e.to_string());
    }
    if let Some(rest) = t.strip_prefix("Q[") {
        let (var, modulus) = rest.split_once("]/(").ok_or_else(|| format!("bad field `{text}`"))?;
        let modulus = modulus.strip_suffix(')').ok_or_else(|| format!("bad field `{text}`"))?;
        let ring = Ring::new(FieldSpec::Rational, &[var]).map_err(|e| e.to_string())?;
        let m = parse(modulus, &ring).map_err(|e| e.to_string())?;
        let deg = m.total_degree().ok_or("zero modulus")? as usize;
        let mut coeffs = vec![num_rational::BigRational::default(); deg + 1];
        for (mono, c) in m.terms() {
            coeffs[mono.degree() as usize] = c.as_rational().expect("rational");
        }
        return FieldSpec::extension(var, coeffs).map_err(|e| e.to_string());
    }
    Err(format!("unknown field `{text}`; expected Q, Q(i), GF(p) or Q[t]/(m)"))
}

fn parse_ring(field: FieldSpec, rest: &str) -> Result<Arc<Ring>, String> {
    let (vars, grading) = match rest.split_once("grading") {
        Some((v, g)) => (v, Some(g)),
        None => (rest, None),
    };
    let vars: Vec<&str> = vars.split([' ', ',', '\t']).filter(|s| !s.is_empty()).collect();
    let Some(g) = grading else {
        return Ring::new(field, &vars).map_err(|e| e.to_string());
    };
    let pairs: Vec<(&str, &str)> = g
        .split(')')
        .map(|p| p.trim().trim_start_matches('(').trim())
        .filter(|p| !p.is_empty())
        .map(|p| p.split_once(',').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| format!("bad pair `{p}`")))
        .collect::<Result<_, _>>()?;
    let pairs: [(&str, &str); 4] = pairs.try_into().map_err(|_| "grading needs four pairs".to_string())?;
    Ring::graded(field, &vars, pairs).map_err(|e| e.to_string())
}

/// Logical lines: indented lines are glued onto the previous one.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(line.trim());
                continue;
            }
        }
        out.push((k + 1, line.trim().to_string()));
    }
    out
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let mut field = FieldSpec::Rational;
    let mut ring: Option<Arc<Ring>> = None;
    let mut env = HashMap::new();
    let mut order = Vec::new();
    for (line, content) in logical_lines(text) {
        let syntax = |msg: String| InputError::Syntax { line, msg };
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((&content, ""));
        match head {
            "field" => {
                if ring.is_some() {
                    return Err(syntax("`field` must precede `ring`".into()));
                }
                field = parse_field(rest).map_err(syntax)?;
            }
            "ring" => {
                if ring.is_some() {
                    return Err(syntax("only one `ring` line is allowed".into()));
                }
                ring = Some(parse_ring(field.clone(), rest).map_err(syntax)?);
            }
            "use" => {
                if rest.trim() != "paper-constants" {
                    return Err(syntax(format!("unknown catalog `{}`", rest.trim())));
                }
                let r = ring.as_ref().ok_or(InputError::NoRing(line))?;
                let consts = catalog::bindings(r).map_err(|source| InputError::Poly { line, source })?;
                let mut names: Vec<String> = consts.keys().cloned().collect();
                names.sort();
                env.extend(consts);
                order.extend(names);
            }
            "let" => {
                let r = ring.as_ref().ok_or(InputError::NoRing(line))?;
                let (name, expr) = rest.split_once('=').ok_or_else(|| syntax("expected `let <name> = <expr>`".into()))?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(syntax(format!("bad name `{name}`")));
                }
                if r.var_index(name).is_some() {
                    return Err(syntax(format!("`{name}` is a ring variable")));
                }
                let p = parse_with(expr.trim(), r, &env).map_err(|source| InputError::Poly { line, source })?;
                if env.insert(name.to_string(), p).is_none() {
                    order.push(name.to_string());
                }
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }
    let ring = ring.ok_or(InputError::NoRing(0))?;
    Ok(Input { ring, env, order })
}
