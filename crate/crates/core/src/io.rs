//! Text formats: hypergraphs (`.hg`), complexes (`.sc`), part files, chain
//! certificates (`.chain`) and family manifests.
//!
//! Every format is line based, `#` starts a comment, and files end with a
//! newline. Writers emit canonical (sorted) content.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::chain::{ChainCertificate, ChainLink};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spheres::DoublyCoveringSphere;
use crate::{Rational, Vertex};

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> Result<Vec<(usize, &str)>> {
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(Error::parse(text.lines().count(), "missing trailing newline"));
    }
    Ok(text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect())
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("expected a non-negative integer, found {t:?}"))))
        .collect()
}

fn header(lines: &[(usize, &str)], what: &str) -> Result<(usize, usize)> {
    let &(line, text) = lines.first().ok_or_else(|| Error::parse(1, format!("missing `{what}` header")))?;
    match numbers(line, text)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::parse(line, format!("header must be `{what}`"))),
    }
}

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn hg_from_lines(lines: &[(usize, &str)]) -> Result<Hypergraph> {
    let (k, n) = header(lines, "k n")?;
    let mut edges = Vec::with_capacity(lines.len().saturating_sub(1));
    for &(line, text) in &lines[1..] {
        let e = numbers(line, text)?;
        if e.len() != k {
            return Err(Error::parse(line, format!("edge has {} vertices, expected {k}", e.len())));
        }
        if let Some(v) = e.iter().find(|&&v| v >= n) {
            return Err(Error::parse(line, format!("vertex {v} out of range (n = {n})")));
        }
        edges.push(e);
    }
    Hypergraph::new(k, n, edges).map_err(|e| match e {
        Error::InvalidEdge { edge, reason } => Error::parse(0, format!("edge {edge:?}: {reason}")),
        other => other,
    })
}

pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    hg_from_lines(&content_lines(text)?)
}

pub fn write_hg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.k(), h.n());
    for e in h.edges() {
        out.push_str(&join(e));
        out.push('\n');
    }
    out
}

pub fn parse_sc(text: &str) -> Result<SimplicialComplex> {
    let lines = content_lines(text)?;
    let (d, n) = header(&lines, "d n")?;
    let mut facets = Vec::with_capacity(lines.len().saturating_sub(1));
    for &(line, text) in &lines[1..] {
        let f = numbers(line, text)?;
        if f.len() != d + 1 {
            return Err(Error::DimMismatch { expected: d + 1, found: f.len() });
        }
        if let Some(v) = f.iter().find(|&&v| v >= n) {
            return Err(Error::parse(line, format!("vertex {v} out of range (n = {n})")));
        }
        facets.push(f);
    }
    SimplicialComplex::new(d, facets)
}

/// `n` is written as one more than the largest vertex label.
pub fn write_sc(c: &SimplicialComplex) -> String {
    let n = c.vertices().last().map_or(0, |v| v + 1);
    let mut out = format!("{} {}\n", c.dim(), n);
    for f in c.facets() {
        out.push_str(&join(f));
        out.push('\n');
    }
    out
}

/// One line per base vertex listing its host vertices.
pub fn parse_parts(text: &str) -> Result<Vec<Vec<Vertex>>> {
    content_lines(text)?
        .into_iter()
        .map(|(line, t)| {
            let mut p = numbers(line, t)?;
            p.sort_unstable();
            Ok(p)
        })
        .collect()
}

pub fn write_parts(parts: &[Vec<Vertex>]) -> String {
    parts.iter().map(|p| format!("{}\n", join(p))).collect()
}

fn parse_rational(line: usize, t: &str) -> Result<Rational> {
    let bad = || Error::parse(line, format!("expected a rational p/q, found {t:?}"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (t.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn rational_str(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn write_chain(c: &ChainCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "LINKS {}", c.links.len());
    for (name, r) in [("EPSILON", c.epsilon), ("GAMMA", c.gamma), ("M1", c.m1), ("M2", c.m2)] {
        let _ = writeln!(out, "{name} {}", rational_str(r));
    }
    for link in &c.links {
        out.push_str("BASE\n");
        out.push_str(&write_hg(&link.base));
        out.push_str("PARTS\n");
        out.push_str(&write_parts(&link.parts));
    }
    out.push_str("SHARED\n");
    for s in &c.shared_edges {
        out.push_str(&join(s));
        out.push('\n');
    }
    out
}

pub fn parse_chain(text: &str) -> Result<ChainCertificate> {
    let lines = content_lines(text)?;
    let mut it = lines.into_iter().peekable();
    let mut keyed = |key: &str| -> Result<(usize, String)> {
        let (line, t) = it.next().ok_or_else(|| Error::parse(0, format!("missing `{key}`")))?;
        match t.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok((line, rest.trim().to_string())),
            _ => Err(Error::parse(line, format!("expected `{key} ...`"))),
        }
    };
    let (line, count) = keyed("LINKS")?;
    let count: usize = count.parse().map_err(|_| Error::parse(line, "link count must be an integer"))?;
    let mut params = [Rational::from_integer(0); 4];
    for (slot, key) in params.iter_mut().zip(["EPSILON", "GAMMA", "M1", "M2"]) {
        let (line, v) = keyed(key)?;
        *slot = parse_rational(line, &v)?;
    }
    let rest: Vec<(usize, &str)> = it.collect();
    let mut pos = 0;
    let expect = |pos: usize, word: &str| -> Result<()> {
        match rest.get(pos) {
            Some(&(_, t)) if t == word => Ok(()),
            Some(&(line, _)) => Err(Error::parse(line, format!("expected `{word}`"))),
            None => Err(Error::parse(0, format!("missing `{word}`"))),
        }
    };
    let mut links = Vec::with_capacity(count);
    for _ in 0..count {
        expect(pos, "BASE")?;
        pos += 1;
        let end = rest[pos..].iter().position(|&(_, t)| t == "PARTS").map(|i| pos + i);
        let end = end.ok_or_else(|| Error::parse(rest[pos - 1].0, "BASE without PARTS"))?;
        let base = hg_from_lines(&rest[pos..end])?;
        pos = end + 1;
        let mut parts = Vec::with_capacity(base.n());
        for _ in 0..base.n() {
            let &(line, t) = rest.get(pos).ok_or_else(|| Error::parse(0, "too few PARTS lines"))?;
            let mut p = numbers(line, t)?;
            p.sort_unstable();
            parts.push(p);
            pos += 1;
        }
        links.push(ChainLink { base, parts });
    }
    expect(pos, "SHARED")?;
    let mut shared_edges = Vec::new();
    for &(line, t) in &rest[pos + 1..] {
        let mut s = numbers(line, t)?;
        s.sort_unstable();
        shared_edges.push(s);
    }
    let [epsilon, gamma, m1, m2] = params;
    Ok(ChainCertificate { links, shared_edges, epsilon, gamma, m1, m2 })
}

/// One line per path edge: its positions, its F facet and its F' facet.
pub fn write_manifest(d: &DoublyCoveringSphere) -> String {
    let k = d.path.k;
    let mut out = String::new();
    for (i, (f, fp)) in d.family_f.iter().zip(&d.family_fp).enumerate() {
        let e: Vec<usize> = (i..i + k).collect();
        let _ = writeln!(out, "e: {} | f: {} | fp: {}", join(&e), join(f), join(fp));
    }
    out
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_hg(path: &Path) -> Result<Hypergraph> {
    parse_hg(&read_to_string(path)?)
}

pub fn load_sc(path: &Path) -> Result<SimplicialComplex> {
    parse_sc(&read_to_string(path)?)
}

pub fn load_chain(path: &Path) -> Result<ChainCertificate> {
    parse_chain(&read_to_string(path)?)
}
