//! Orientations of torus maps, γ, Schnyder colorings and dual acyclicity.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::map::homology::{Homology, HomologyBasis};
use crate::map::tmap::{lines, num, tokens};
use crate::map::{edge_of, twin, Dart, TorusMap, Walk};

/// One tail dart per edge: edge `e` leaves `vertex(tail[e])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub tail: Vec<Dart>,
}

/// Per-edge integers relative to the reference direction of dart `2e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowVector(pub Vec<i64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchnyderColoring {
    pub color: Vec<u8>,
    /// Color of the first outgoing dart met ccw from each vertex's first dart.
    pub offset: Vec<u8>,
}

impl Orientation {
    /// Every edge directed along its even dart.
    pub fn reference(map: &TorusMap) -> Orientation {
        Orientation { tail: (0..map.m()).map(|e| 2 * e).collect() }
    }

    pub fn from_tails(map: &TorusMap, tail: Vec<Dart>) -> Result<Orientation> {
        if tail.len() != map.m() || tail.iter().enumerate().any(|(e, &d)| edge_of(d) != e) {
            return Err(Error::Other("tail table does not match the edges".into()));
        }
        Ok(Orientation { tail })
    }

    #[inline]
    pub fn is_out(&self, d: Dart) -> bool {
        self.tail[edge_of(d)] == d
    }

    pub fn reverse(&mut self, e: usize) {
        self.tail[e] ^= 1;
    }

    pub fn reverse_walk(&mut self, w: &[Dart]) {
        for &d in w {
            self.reverse(edge_of(d));
        }
    }

    pub fn outdegree(&self, map: &TorusMap, v: usize) -> usize {
        map.darts_at(v).filter(|&d| self.is_out(d)).count()
    }

    pub fn out_darts<'a>(&'a self, map: &'a TorusMap, v: usize) -> impl Iterator<Item = Dart> + 'a {
        map.darts_at(v).filter(move |&d| self.is_out(d))
    }
}

pub fn is_three_orientation(map: &TorusMap, d: &Orientation) -> bool {
    let mut out = vec![0u32; map.n()];
    for &t in &d.tail {
        out[map.vertex(t)] += 1;
    }
    out.iter().all(|&k| k == 3)
}

/// Characteristic flow of the edges of `d` not oriented as in `d2`, oriented
/// as in `d`.
pub fn delta(d: &Orientation, d2: &Orientation) -> FlowVector {
    FlowVector(
        d.tail
            .iter()
            .zip(&d2.tail)
            .map(|(&a, &b)| if a == b { 0 } else if a & 1 == 0 { 1 } else { -1 })
            .collect(),
    )
}

/// Face potentials `p` with `t(e) = p(left of 2e) - p(right of 2e)`, when they
/// exist. A flow is in the integer span of ccw facial flows iff they do.
pub fn face_potentials(map: &TorusMap, t: &FlowVector) -> Option<Vec<i64>> {
    let nf = map.f();
    let mut p = vec![i64::MAX; nf];
    p[0] = 0;
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        for d in map.face_darts(f) {
            let g = map.face_right(d);
            // dart d has f on its left
            let te = t.0[edge_of(d)];
            let across = if d & 1 == 0 { te } else { -te };
            let want = p[f] - across;
            if p[g] == i64::MAX {
                p[g] = want;
                stack.push(g);
            } else if p[g] != want {
                return None;
            }
        }
    }
    Some(p)
}

pub fn is_zero_homologous(map: &TorusMap, t: &FlowVector) -> bool {
    face_potentials(map, t).is_some()
}

pub fn homologous(map: &TorusMap, d: &Orientation, d2: &Orientation) -> bool {
    is_zero_homologous(map, &delta(d, d2))
}

/// Edges leaving the walk on its right minus edges leaving it on its left.
/// Each visit of a vertex counts the outgoing darts strictly inside its own
/// left and right sectors; darts of edges on the walk are skipped.
pub fn gamma(map: &TorusMap, d: &Orientation, c: &Walk) -> i64 {
    let k = c.darts.len();
    let on: std::collections::HashSet<usize> = c.darts.iter().map(|&x| edge_of(x)).collect();
    let mut g = 0i64;
    for i in 0..k {
        let out = c.darts[i];
        let inn = twin(c.darts[(i + k - 1) % k]);
        let mut x = map.next_ccw(out);
        while x != inn {
            if d.is_out(x) && !on.contains(&edge_of(x)) {
                g -= 1;
            }
            x = map.next_ccw(x);
        }
        let mut x = map.next_ccw(inn);
        while x != out {
            if d.is_out(x) && !on.contains(&edge_of(x)) {
                g += 1;
            }
            x = map.next_ccw(x);
        }
    }
    g
}

pub fn is_htc(map: &TorusMap, d: &Orientation, basis: &HomologyBasis) -> bool {
    gamma(map, d, &basis.b1) == 0 && gamma(map, d, &basis.b2) == 0
}

/// Outgoing darts of `v` in ccw order from its first dart.
fn outs(map: &TorusMap, d: &Orientation, v: usize) -> Vec<Dart> {
    map.darts_at(v).filter(|&x| d.is_out(x)).collect()
}

/// Colors a 3-orientation by propagating one `Z_3` offset per vertex.
///
/// With out-darts `o0, o1, o2` at `v` colored `c, c+1, c+2`, an incoming dart
/// lying strictly between `oj` and `oj+1` must carry color `c + j + 2`.
pub fn color_edges(map: &TorusMap, d: &Orientation) -> Result<SchnyderColoring> {
    let n = map.n();
    let mut slot = vec![0u8; map.num_darts()];
    for v in 0..n {
        let o = outs(map, d, v);
        if o.len() != 3 {
            return Err(Error::NotThreeOrientation);
        }
        let mut j = 2u8;
        for x in map.darts_at(v) {
            if d.is_out(x) {
                j = (j + 1) % 3;
                slot[x] = j;
            } else {
                // sector after out-dart j, or before o0 (sector 2)
                slot[x] = (j + 2) % 3;
            }
        }
    }
    // color(tail dart) = off(tail) + slot; color(head dart) = off(head) + slot
    let mut off = vec![u8::MAX; n];
    for s in 0..n {
        if off[s] != u8::MAX {
            continue;
        }
        off[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for x in map.darts_at(v) {
                let w = map.head(x);
                let c = (off[v] + slot[x]) % 3;
                let want = (c + 3 - slot[twin(x)]) % 3;
                if off[w] == u8::MAX {
                    off[w] = want;
                    stack.push(w);
                } else if off[w] != want {
                    return Err(Error::NotSchnyder(w));
                }
            }
        }
    }
    let color = d.tail.iter().map(|&t| (off[map.vertex(t)] + slot[t]) % 3).collect();
    Ok(SchnyderColoring { color, offset: off })
}

/// Checks the local Schnyder property directly from colors.
pub fn check_schnyder(map: &TorusMap, d: &Orientation, c: &SchnyderColoring) -> Result<()> {
    for v in 0..map.n() {
        let o = outs(map, d, v);
        if o.len() != 3 {
            return Err(Error::NotThreeOrientation);
        }
        let c0 = c.color[edge_of(o[0])];
        if (0..3).any(|j| c.color[edge_of(o[j])] != (c0 + j as u8) % 3) {
            return Err(Error::NotSchnyder(v));
        }
        let mut cur = 2u8;
        for x in map.darts_at(v) {
            if d.is_out(x) {
                cur = (cur + 1) % 3;
            } else {
                let in_color = c.color[edge_of(x)];
                let lo = (c0 + cur) % 3;
                if in_color != (lo + 2) % 3 {
                    return Err(Error::NotSchnyder(v));
                }
            }
        }
    }
    Ok(())
}

/// The dual map and the orientation in which dual dart `d` (shared id) runs
/// from the face on the left of `d` to the face on its right.
pub fn dual_orientation(map: &TorusMap, d: &Orientation) -> (TorusMap, Orientation) {
    (map.dual(), d.clone())
}

/// Whether the dual orientation of `d` has a directed cycle whose homology
/// class is nonzero. Intersection numbers with the primal basis cycles serve
/// as a `Z^2` potential inside each strongly connected component.
pub fn has_noncontractible_directed_cycle(map: &TorusMap, d: &Orientation, hom: &Homology) -> bool {
    let nf = map.f();
    let mut g: DiGraph<(), Dart> = DiGraph::with_capacity(nf, map.m());
    for _ in 0..nf {
        g.add_node(());
    }
    for &t in &d.tail {
        g.add_edge(NodeIndex::new(map.face_of(t)), NodeIndex::new(map.face_right(t)), t);
    }
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0usize; nf];
    for (i, s) in sccs.iter().enumerate() {
        for x in s {
            comp[x.index()] = i;
        }
    }
    let mut pot: Vec<Option<[i64; 2]>> = vec![None; nf];
    for s in &sccs {
        let r = s[0].index();
        pot[r] = Some([0, 0]);
        let mut stack = vec![r];
        while let Some(f) = stack.pop() {
            let pf = pot[f].unwrap();
            for er in g.edges(NodeIndex::new(f)) {
                use petgraph::visit::EdgeRef;
                let h = er.target().index();
                if comp[h] != comp[f] {
                    continue;
                }
                let w = hom.dual_weight(*er.weight());
                let want = [pf[0] + w[0], pf[1] + w[1]];
                match pot[h] {
                    None => {
                        pot[h] = Some(want);
                        stack.push(h);
                    }
                    Some(p) if p != want => return true,
                    _ => {}
                }
            }
        }
    }
    false
}

/// Directed cycles of the color-`i` subgraph, where every vertex has exactly
/// one outgoing edge.
pub fn monochromatic_cycles(map: &TorusMap, d: &Orientation, c: &SchnyderColoring, i: u8) -> Vec<Walk> {
    let n = map.n();
    let mut succ = vec![usize::MAX; n];
    for &t in &d.tail {
        if c.color[edge_of(t)] == i {
            succ[map.vertex(t)] = t;
        }
    }
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = map.head(succ[v]);
        }
        if state[v] == 1 {
            let start = path.iter().position(|&x| x == v).unwrap();
            cycles.push(Walk::closed(path[start..].iter().map(|&x| succ[x]).collect()));
        }
        for x in path {
            state[x] = 2;
        }
    }
    cycles
}

/// Every pair of colors has a pair of monochromatic cycles sharing a vertex.
pub fn is_crossing(map: &TorusMap, d: &Orientation, c: &SchnyderColoring) -> bool {
    let verts: Vec<Vec<Vec<usize>>> = (0..3)
        .map(|i| {
            monochromatic_cycles(map, d, c, i)
                .iter()
                .map(|w| w.darts.iter().map(|&x| map.vertex(x)).collect())
                .collect()
        })
        .collect();
    let meets = |a: &[Vec<usize>], b: &[Vec<usize>]| {
        a.iter().any(|ca| b.iter().any(|cb| ca.iter().any(|v| cb.contains(v))))
    };
    meets(&verts[0], &verts[1]) && meets(&verts[1], &verts[2]) && meets(&verts[0], &verts[2])
}

pub fn write_orientation(d: &Orientation) -> String {
    use std::fmt::Write;
    let mut s = format!("torient 1 {}\n", d.tail.len());
    for (e, t) in d.tail.iter().enumerate() {
        let _ = writeln!(s, "e {e} {t}");
    }
    s
}

pub fn parse_orientation(map: &TorusMap, text: &str) -> Result<Orientation> {
    let ls = lines(text);
    let h = tokens(ls[0], 1)?;
    if h.len() != 3 || h[0] != "torient" || h[1] != "1" {
        return Err(Error::Parse { line: 1, msg: "expected `torient 1 <m>`".into() });
    }
    let m = num(h[2], 1)?;
    if m != map.m() || ls.len() != m + 1 {
        return Err(Error::Parse { line: 1, msg: format!("expected {} edges", map.m()) });
    }
    let mut tail = vec![usize::MAX; m];
    for (i, l) in ls[1..].iter().enumerate() {
        let t = tokens(l, i + 2)?;
        if t.len() != 3 || t[0] != "e" {
            return Err(Error::Parse { line: i + 2, msg: "expected `e <edge> <tail-dart>`".into() });
        }
        let (e, d) = (num(t[1], i + 2)?, num(t[2], i + 2)?);
        if e >= m || edge_of(d) != e || tail[e] != usize::MAX {
            return Err(Error::Parse { line: i + 2, msg: format!("bad tail {d} for edge {e}") });
        }
        tail[e] = d;
    }
    Ok(Orientation { tail })
}

pub fn write_coloring(c: &SchnyderColoring) -> String {
    use std::fmt::Write;
    let mut s = String::from("tcolor 1\n");
    for (e, k) in c.color.iter().enumerate() {
        let _ = writeln!(s, "e {e} {k}");
    }
    s
}

pub fn parse_coloring(text: &str) -> Result<Vec<u8>> {
    let ls = lines(text);
    if ls[0] != "tcolor 1" {
        return Err(Error::Parse { line: 1, msg: "expected `tcolor 1`".into() });
    }
    let mut out = Vec::with_capacity(ls.len() - 1);
    for (i, l) in ls[1..].iter().enumerate() {
        let t = tokens(l, i + 2)?;
        if t.len() != 3 || t[0] != "e" || num(t[1], i + 2)? != i {
            return Err(Error::Parse { line: i + 2, msg: "expected `e <edge> <color>`".into() });
        }
        let k = num(t[2], i + 2)?;
        if k > 2 {
            return Err(Error::Parse { line: i + 2, msg: "color must be 0, 1 or 2".into() });
        }
        out.push(k as u8);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex};

    #[test]
    fn one_vertex_every_orientation_has_outdegree_three() {
        let g = gen_one_vertex();
        for mask in 0..8usize {
            let d = Orientation { tail: (0..3).map(|e| 2 * e + (mask >> e & 1)).collect() };
            assert!(is_three_orientation(&g, &d));
        }
    }

    #[test]
    fn delta_of_self_is_zero() {
        let g = gen_k7();
        let d = Orientation::reference(&g);
        let t = delta(&d, &d);
        assert!(t.0.iter().all(|&x| x == 0));
        assert!(is_zero_homologous(&g, &t));
    }

    #[test]
    fn facial_walk_is_zero_homologous() {
        let g = gen_k7();
        let mut d = Orientation::reference(&g);
        for f in 0..g.f() {
            let fw: Vec<Dart> = g.face_darts(f).collect();
            for &x in &fw {
                d.tail[edge_of(x)] = x;
            }
            let mut d2 = d.clone();
            d2.reverse_walk(&fw);
            assert!(is_zero_homologous(&g, &delta(&d, &d2)));
        }
    }

    #[test]
    fn basis_cycle_is_not_zero_homologous() {
        let g = gen_k7();
        let h = Homology::new(&g);
        let mut d = Orientation::reference(&g);
        for &x in &h.basis.b1.darts {
            d.tail[edge_of(x)] = x;
        }
        let mut d2 = d.clone();
        d2.reverse_walk(&h.basis.b1.darts);
        assert!(!is_zero_homologous(&g, &delta(&d, &d2)));
    }

    #[test]
    fn gamma_reverses_with_direction() {
        let g = gen_k7();
        let h = Homology::new(&g);
        let d = Orientation::reference(&g);
        for b in [&h.basis.b1, &h.basis.b2] {
            assert_eq!(gamma(&g, &d, b), -gamma(&g, &d, &b.reversed()));
        }
    }

    #[test]
    fn sidecars_round_trip() {
        let g = gen_k7();
        let d = Orientation::reference(&g);
        assert_eq!(parse_orientation(&g, &write_orientation(&d)).unwrap(), d);
        let c = SchnyderColoring { color: (0..21).map(|e| (e % 3) as u8).collect(), offset: vec![] };
        assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c.color);
    }
}
