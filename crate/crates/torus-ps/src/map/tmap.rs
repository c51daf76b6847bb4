//! TMAP text format.
//!
//! ```text
//! tmap 1 <n> <m> [triangulation]
//! v <vertex-id> <d0> <d1> ... <dk>
//! ```
//!
//! Darts are listed counterclockwise around each vertex; `twin(d) = d ^ 1`.
//! Tokens are separated by exactly one space.

use super::{Dart, TorusMap};
use crate::error::{Error, Result};

pub(crate) fn tokens(line: &str, lineno: usize) -> Result<Vec<&str>> {
    if line.is_empty() {
        return Err(Error::Parse { line: lineno, msg: "empty line".into() });
    }
    let t: Vec<&str> = line.split(' ').collect();
    if t.iter().any(|x| x.is_empty() || x.contains(|c: char| c.is_whitespace())) {
        return Err(Error::Parse { line: lineno, msg: "tokens must be separated by single spaces".into() });
    }
    Ok(t)
}

pub(crate) fn num(tok: &str, lineno: usize) -> Result<usize> {
    if tok.len() > 1 && tok.starts_with('0') || tok.starts_with('+') {
        return Err(Error::Parse { line: lineno, msg: format!("bad integer {tok:?}") });
    }
    tok.parse().map_err(|_| Error::Parse { line: lineno, msg: format!("bad integer {tok:?}") })
}

pub(crate) fn lines(text: &str) -> Vec<&str> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    body.split('\n').collect()
}

/// Parses the `v` lines of a rotation block; returns per-vertex dart lists.
pub(crate) fn parse_rotations(ls: &[&str], first_line: usize, n: usize, nd: usize) -> Result<Vec<Vec<Dart>>> {
    let mut rot: Vec<Option<Vec<Dart>>> = vec![None; n];
    let mut seen = vec![false; nd];
    for (i, l) in ls.iter().enumerate() {
        let ln = first_line + i;
        let t = tokens(l, ln)?;
        if t[0] != "v" || t.len() < 3 {
            return Err(Error::Parse { line: ln, msg: "expected a vertex line".into() });
        }
        let v = num(t[1], ln)?;
        if v >= n || rot[v].is_some() {
            return Err(Error::Parse { line: ln, msg: format!("bad or repeated vertex id {v}") });
        }
        let mut ds = Vec::with_capacity(t.len() - 2);
        for x in &t[2..] {
            let d = num(x, ln)?;
            if d >= nd {
                return Err(Error::Parse { line: ln, msg: format!("dart {d} out of range") });
            }
            if seen[d] {
                return Err(Error::DuplicateDart(d));
            }
            seen[d] = true;
            ds.push(d);
        }
        rot[v] = Some(ds);
    }
    if let Some(d) = seen.iter().position(|&s| !s) {
        return Err(Error::MissingDart(d));
    }
    rot.into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(Error::Parse { line: first_line, msg: format!("vertex {v} missing") }))
        .collect()
}

pub fn parse_map(text: &str) -> Result<TorusMap> {
    let ls = lines(text);
    let h = tokens(ls[0], 1)?;
    if h.len() < 4 || h.len() > 5 || h[0] != "tmap" || h[1] != "1" {
        return Err(Error::Parse { line: 1, msg: "expected `tmap 1 <n> <m> [triangulation]`".into() });
    }
    let n = num(h[2], 1)?;
    let m = num(h[3], 1)?;
    let tri = match h.get(4) {
        None => false,
        Some(&"triangulation") => true,
        Some(x) => return Err(Error::Parse { line: 1, msg: format!("unknown flag {x:?}") }),
    };
    if ls.len() != n + 1 {
        return Err(Error::Parse { line: ls.len(), msg: format!("expected {n} vertex lines") });
    }
    let rot = parse_rotations(&ls[1..], 2, n, 2 * m)?;
    let map = TorusMap::from_rotations(&rot)?;
    if tri {
        map.check_triangulation()?;
    }
    Ok(map)
}

pub(crate) fn write_rotations(out: &mut String, rot: &[Vec<Dart>]) {
    use std::fmt::Write;
    for (v, r) in rot.iter().enumerate() {
        let _ = write!(out, "v {v}");
        for d in r {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
}

pub fn write_map(map: &TorusMap) -> String {
    let tri = map.is_triangulation_shape() && map.check_triangulation().is_ok();
    let mut s = format!("tmap 1 {} {}{}\n", map.n(), map.m(), if tri { " triangulation" } else { "" });
    write_rotations(&mut s, &map.rotations());
    s
}
