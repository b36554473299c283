//! JSON file formats. Output is compact, with sorted keys and a trailing
//! newline, so equal values always serialize to identical bytes.
//!
//! - group: `{"n": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}`
//! - brace: `{"n": .., "dot": [[..]], "circ": [[..]]}`
//! - permutation set: `{"deg": .., "perms": [[..], ..]}`
//! - semidirect product: `{"a": <brace>, "b": <brace>, "phi": [[..]], "theta": [[..]]}`
//!   where each brace is inline or a path relative to this file
//! - catalog: `{"circ": <group>, "entries": [{"dot": .., "type": .., "provenance": ..}]}`

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::brace::{BraceError, SkewBrace};
use crate::enumerate::BraceCatalog;
use crate::group::{FiniteGroup, GroupError};
use crate::hom::PermHom;
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("bad file contents: {0}")]
    Format(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Brace(#[from] BraceError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn finish(v: Value) -> String {
    let mut s = serde_json::to_string(&v).expect("values serialize");
    s.push('\n');
    s
}

fn check_n(n: usize, rows: &[Vec<usize>], what: &str) -> Result<(), IoError> {
    if rows.len() != n {
        return Err(IoError::Format(format!(
            "{what} has {} rows but n = {n}",
            rows.len()
        )));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    n: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BraceFile {
    n: usize,
    dot: Vec<Vec<usize>>,
    circ: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PermSetFile {
    deg: usize,
    perms: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SdpFile {
    a: Value,
    b: Value,
    phi: Vec<Vec<usize>>,
    theta: Vec<Vec<usize>>,
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, IoError> {
    let f: GroupFile = serde_json::from_str(text)?;
    check_n(f.n, &f.table, "table")?;
    Ok(FiniteGroup::from_rows(&f.table)?)
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    finish(group_value(g))
}

fn group_value(g: &FiniteGroup) -> Value {
    json!({"n": g.n(), "table": g.rows()})
}

/// The two validated group tables of a brace file, without checking the
/// brace axiom.
pub fn parse_brace_groups(text: &str) -> Result<(FiniteGroup, FiniteGroup), IoError> {
    let f: BraceFile = serde_json::from_str(text)?;
    brace_groups(f)
}

fn brace_groups(f: BraceFile) -> Result<(FiniteGroup, FiniteGroup), IoError> {
    check_n(f.n, &f.dot, "dot")?;
    check_n(f.n, &f.circ, "circ")?;
    Ok((
        FiniteGroup::from_rows(&f.dot)?,
        FiniteGroup::from_rows(&f.circ)?,
    ))
}

pub fn parse_brace(text: &str) -> Result<SkewBrace, IoError> {
    let (dot, circ) = parse_brace_groups(text)?;
    Ok(SkewBrace::new(dot, circ)?)
}

pub fn brace_to_json(b: &SkewBrace) -> String {
    finish(json!({"n": b.n(), "dot": b.dot().rows(), "circ": b.circ().rows()}))
}

fn perms(deg: usize, rows: Vec<Vec<usize>>) -> Result<Vec<Permutation>, IoError> {
    rows.into_iter()
        .map(|r| {
            if r.len() != deg {
                return Err(IoError::Format(format!(
                    "permutation of length {} in a set of degree {deg}",
                    r.len()
                )));
            }
            Ok(Permutation::new(r)?)
        })
        .collect()
}

/// A permutation set; it must be closed under composition.
pub fn parse_perm_set(text: &str) -> Result<PermGroup, IoError> {
    let f: PermSetFile = serde_json::from_str(text)?;
    let elements = perms(f.deg, f.perms)?;
    Ok(PermGroup::from_elements(f.deg, elements)?)
}

pub fn perm_set_to_json(s: &PermGroup) -> String {
    let perms: Vec<&[usize]> = s.elements().iter().map(Permutation::as_slice).collect();
    finish(json!({"deg": s.deg(), "perms": perms}))
}

/// Raw contents of a semidirect product file: the two braces and the image
/// tables of φ and θ, indexed by `B` and acting on `A`.
#[derive(Debug, Clone)]
pub struct SdpInput {
    pub a: SkewBrace,
    pub b: SkewBrace,
    pub phi: PermHom,
    pub theta: PermHom,
}

/// Parses a semidirect product file. Brace paths are resolved against
/// `base`, normally the directory of the file itself.
pub fn parse_sdp(text: &str, base: &Path) -> Result<SdpInput, IoError> {
    let f: SdpFile = serde_json::from_str(text)?;
    let load = |v: Value| -> Result<SkewBrace, IoError> {
        let file: BraceFile = match v {
            Value::String(p) => serde_json::from_str(&read_file(&base.join(p))?)?,
            other => serde_json::from_value(other)?,
        };
        let (dot, circ) = brace_groups(file)?;
        Ok(SkewBrace::new(dot, circ)?)
    };
    let a = load(f.a)?;
    let b = load(f.b)?;
    let phi = PermHom::new(perms(a.n(), f.phi)?);
    let theta = PermHom::new(perms(a.n(), f.theta)?);
    Ok(SdpInput { a, b, phi, theta })
}

pub fn sdp_to_json(a: &SkewBrace, b: &SkewBrace, phi: &PermHom, theta: &PermHom) -> String {
    let table = |h: &PermHom| -> Vec<Vec<usize>> {
        h.images().iter().map(|p| p.as_slice().to_vec()).collect()
    };
    let brace = |x: &SkewBrace| json!({"n": x.n(), "dot": x.dot().rows(), "circ": x.circ().rows()});
    finish(json!({"a": brace(a), "b": brace(b), "phi": table(phi), "theta": table(theta)}))
}

pub fn catalog_to_json(cat: &BraceCatalog) -> String {
    let entries: Vec<Value> = cat
        .entries()
        .iter()
        .map(|e| {
            json!({
                "dot": e.brace.dot().rows(),
                "type": e.type_label,
                "provenance": e.provenance.to_string(),
            })
        })
        .collect();
    finish(json!({"circ": group_value(cat.circ()), "entries": entries}))
}

/// A comma-separated list of element indices, such as `0,2,4`.
pub fn parse_subset(text: &str) -> Result<Vec<usize>, IoError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| IoError::Format(format!("not an element index: {s:?}")))
        })
        .collect()
}
