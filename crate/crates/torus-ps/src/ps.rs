//! The angle-graph traversal producing a unicellular map with stems.

use std::fmt;

use crate::error::{Error, Result};
use crate::map::tmap::{lines, num, tokens};
use crate::map::{edge_of, twin, Angle, Dart, TorusMap};
use crate::orient::Orientation;

/// A map with stems. Half-edges `h` carry a vertex, a ccw successor and a
/// mate; a stem is its own mate. Edge halves come in pairs `(2k, 2k + 1)`
/// for the first `2 * edges` ids, stems follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnicellularMap {
    pub vert: Vec<usize>,
    pub next: Vec<usize>,
    pub prev: Vec<usize>,
    pub first: Vec<usize>,
    pub edges: usize,
    /// The root angle lies just before this half-edge in ccw order.
    pub root: Option<usize>,
    /// Dart of the source map each half-edge came from, when known.
    pub origin: Vec<Dart>,
}

impl UnicellularMap {
    /// Builds from per-vertex ccw lists; ids below `2 * edges` are edge halves.
    pub fn from_rotations(rot: &[Vec<usize>], edges: usize, root: Option<usize>) -> UnicellularMap {
        let nh: usize = rot.iter().map(|r| r.len()).sum();
        let mut u = UnicellularMap {
            vert: vec![usize::MAX; nh],
            next: vec![usize::MAX; nh],
            prev: vec![usize::MAX; nh],
            first: Vec::with_capacity(rot.len()),
            edges,
            root,
            origin: (0..nh).collect(),
        };
        for (v, r) in rot.iter().enumerate() {
            for i in 0..r.len() {
                let (x, y) = (r[i], r[(i + 1) % r.len()]);
                u.vert[x] = v;
                u.next[x] = y;
                u.prev[y] = x;
            }
            u.first.push(r.first().copied().unwrap_or(usize::MAX));
        }
        u
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    pub fn num_halves(&self) -> usize {
        self.vert.len()
    }

    pub fn num_stems(&self) -> usize {
        self.vert.len() - 2 * self.edges
    }

    #[inline]
    pub fn is_stem(&self, h: usize) -> bool {
        h >= 2 * self.edges
    }

    #[inline]
    pub fn mate(&self, h: usize) -> usize {
        if self.is_stem(h) {
            h
        } else {
            h ^ 1
        }
    }

    /// Next half-edge along the face on the left.
    #[inline]
    pub fn phi(&self, h: usize) -> usize {
        self.prev[self.mate(h)]
    }

    pub fn around(&self, v: usize) -> Vec<usize> {
        let s = self.first[v];
        if s == usize::MAX {
            return Vec::new();
        }
        let mut out = vec![s];
        let mut x = self.next[s];
        while x != s {
            out.push(x);
            x = self.next[x];
        }
        out
    }

    pub fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.around(v)).collect()
    }

    pub fn stems_at(&self, v: usize) -> usize {
        self.around(v).into_iter().filter(|&h| self.is_stem(h)).count()
    }

    pub fn face_count(&self) -> usize {
        let mut seen = vec![false; self.num_halves()];
        let mut faces = 0;
        for h in 0..self.num_halves() {
            if seen[h] || self.vert[h] == usize::MAX {
                continue;
            }
            faces += 1;
            let mut x = h;
            while !seen[x] {
                seen[x] = true;
                x = self.phi(x);
            }
        }
        faces
    }

    /// The face walk in `phi` order from `start`.
    pub fn walk_from(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut x = self.phi(start);
        while x != start {
            out.push(x);
            x = self.phi(x);
        }
        out
    }

    /// The face walk starting just after the root angle; the half-edge at
    /// the root comes last when it is a stem.
    pub fn root_walk(&self) -> Option<Vec<usize>> {
        self.root.map(|r| self.walk_from(self.prev[r]))
    }

    /// Skeleton rotations (stems dropped).
    pub fn skeleton_rotations(&self) -> Vec<Vec<Dart>> {
        (0..self.n()).map(|v| self.around(v).into_iter().filter(|&h| !self.is_stem(h)).collect()).collect()
    }
}

/// Output of the traversal.
#[derive(Clone, Debug)]
pub struct PsOutput {
    pub u: UnicellularMap,
    /// Angles visited, as darts of the source map, starting at the root.
    pub angle_cycle: Vec<Dart>,
    /// Per source edge: kept as an edge of `u`.
    pub in_p: Vec<bool>,
    /// Per source edge: turned into a stem.
    pub is_stem: Vec<bool>,
    /// Source edges whose duals form `Q` (those not kept in `u`).
    pub q_edges: Vec<usize>,
}

/// Why a traversal output is not a spanning unicellular map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reason {
    UnreachedVertex,
    UncoveredEdge,
    DualCycle,
    FaceCount,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::UnreachedVertex => "unreached_vertex",
            Reason::UncoveredEdge => "uncovered_edge",
            Reason::DualCycle => "dual_cycle",
            Reason::FaceCount => "face_count",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Runs the traversal from the angle `a0` on the oriented map.
///
/// The state is a dart `d` standing for the angle just before it. An
/// unmarked edge entering the current vertex is kept and the walk crosses
/// to its other end; an unmarked outgoing edge becomes a stem; marked edges
/// are crossed when outgoing and passed when entering.
pub fn run_ps(map: &TorusMap, o: &Orientation, a0: Angle) -> PsOutput {
    let m = map.m();
    let mut marked = vec![false; m];
    let mut in_p = vec![false; m];
    let mut is_stem = vec![false; m];
    let mut cycle = Vec::with_capacity(2 * m);
    let d0 = a0.dart;
    let mut d = d0;
    loop {
        cycle.push(d);
        let e = edge_of(d);
        let leaving = o.is_out(d);
        let nd = match (marked[e], leaving) {
            (false, false) => {
                in_p[e] = true;
                map.next_ccw(twin(d))
            }
            (false, true) => {
                is_stem[e] = true;
                map.next_ccw(d)
            }
            (true, false) => map.next_ccw(d),
            (true, true) => map.next_ccw(twin(d)),
        };
        marked[e] = true;
        d = nd;
        if d == d0 {
            break;
        }
    }

    // U keeps the rotation of the map restricted to kept darts and stem darts
    let kept: Vec<usize> = (0..m).filter(|&e| in_p[e]).collect();
    let mut id = vec![usize::MAX; map.num_darts()];
    let mut origin = Vec::new();
    for (k, &e) in kept.iter().enumerate() {
        id[2 * e] = 2 * k;
        id[2 * e + 1] = 2 * k + 1;
        origin.extend([2 * e, 2 * e + 1]);
    }
    for (e, &s) in is_stem.iter().enumerate() {
        if s {
            let t = o.tail[e];
            id[t] = origin.len();
            origin.push(t);
        }
    }
    let rot: Vec<Vec<usize>> =
        (0..map.n()).map(|v| map.darts_at(v).filter(|&x| id[x] != usize::MAX).map(|x| id[x]).collect()).collect();
    let root = Some(id[d0]).filter(|&r| r != usize::MAX);
    let mut u = UnicellularMap::from_rotations(&rot, kept.len(), root);
    u.origin = origin;
    let q_edges = (0..m).filter(|&e| !in_p[e]).collect();
    PsOutput { u, angle_cycle: cycle, in_p, is_stem, q_edges }
}

/// Checks that the output spans all vertices, covers all edges, that the
/// duals of the edges left out form a tree, and that `u` has one face.
pub fn check_unicellular(map: &TorusMap, out: &PsOutput) -> std::result::Result<(), Reason> {
    let mut reached = vec![false; map.n()];
    for &d in &out.angle_cycle {
        reached[map.vertex(d)] = true;
    }
    if reached.iter().any(|&r| !r) {
        return Err(Reason::UnreachedVertex);
    }
    if (0..map.m()).any(|e| !out.in_p[e] && !out.is_stem[e]) {
        return Err(Reason::UncoveredEdge);
    }
    // Q: acyclic with f - 1 edges in the dual
    let mut dsu: Vec<usize> = (0..map.f()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for &e in &out.q_edges {
        let (a, b) = (find(&mut dsu, map.face_of(2 * e)), find(&mut dsu, map.face_of(2 * e + 1)));
        if a == b {
            return Err(Reason::DualCycle);
        }
        dsu[a] = b;
    }
    if out.q_edges.len() + 1 != map.f() || out.u.face_count() != 1 {
        return Err(Reason::FaceCount);
    }
    Ok(())
}

/// Angle cycle as numbered lines `k vertex dart`.
pub fn format_angle_cycle(map: &TorusMap, out: &PsOutput) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    for (k, &d) in out.angle_cycle.iter().enumerate() {
        let _ = writeln!(s, "{} {} {}", k + 1, map.vertex(d), d);
    }
    s
}

/// TUNI text: `tuni 1 <n>`, one `v` line per vertex listing skeleton darts,
/// `stem <vertex> <after-dart>` lines and an optional
/// `root <vertex> <before>` line. A stem is inserted ccw after the named
/// dart and after stems already placed there. `<before>` is a skeleton dart
/// or `s<i>` for the `i`-th stem line.
pub fn write_tuni(u: &UnicellularMap) -> String {
    use std::fmt::Write;
    let mut s = format!("tuni 1 {}\n", u.n());
    let mut stem_lines = Vec::new();
    let mut stem_no = vec![usize::MAX; u.num_halves()];
    for v in 0..u.n() {
        let r = u.around(v);
        let _ = write!(s, "v {v}");
        for &h in &r {
            if !u.is_stem(h) {
                let _ = write!(s, " {h}");
            }
        }
        s.push('\n');
        // anchor each stem to the nearest skeleton dart before it
        let Some(k0) = r.iter().position(|&h| !u.is_stem(h)) else { continue };
        let l = r.len();
        let mut anchor = r[k0];
        for i in 1..l {
            let h = r[(k0 + i) % l];
            if u.is_stem(h) {
                stem_no[h] = stem_lines.len();
                stem_lines.push((v, anchor));
            } else {
                anchor = h;
            }
        }
    }
    for (v, a) in stem_lines {
        let _ = writeln!(s, "stem {v} {a}");
    }
    if let Some(r) = u.root {
        if u.is_stem(r) {
            let _ = writeln!(s, "root {} s{}", u.vert[r], stem_no[r]);
        } else {
            let _ = writeln!(s, "root {} {}", u.vert[r], r);
        }
    }
    s
}

pub fn parse_tuni(text: &str) -> Result<UnicellularMap> {
    let ls = lines(text);
    let h = tokens(ls[0], 1)?;
    if h.len() != 3 || h[0] != "tuni" || h[1] != "1" {
        return Err(Error::Parse { line: 1, msg: "expected `tuni 1 <n>`".into() });
    }
    let n = num(h[2], 1)?;
    if ls.len() < n + 1 {
        return Err(Error::Parse { line: ls.len(), msg: format!("expected {n} vertex lines") });
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut nd = 0;
    for (i, l) in ls[1..=n].iter().enumerate() {
        let t = tokens(l, i + 2)?;
        if t[0] != "v" || t.len() < 2 || num(t[1], i + 2)? != i {
            return Err(Error::Parse { line: i + 2, msg: "expected `v <vertex> <darts>`".into() });
        }
        for x in &t[2..] {
            let d = num(x, i + 2)?;
            nd = nd.max(d + 1);
            rot[i].push(d);
        }
    }
    if nd % 2 == 1 {
        return Err(Error::TwinNotInvolution);
    }
    let mut seen = vec![false; nd];
    for &d in rot.iter().flatten() {
        if std::mem::replace(&mut seen[d], true) {
            return Err(Error::DuplicateDart(d));
        }
    }
    if let Some(d) = seen.iter().position(|&s| !s) {
        return Err(Error::MissingDart(d));
    }
    let mut stems = Vec::new();
    let mut root = None;
    for (i, l) in ls[n + 1..].iter().enumerate() {
        let ln = n + 2 + i;
        let t = tokens(l, ln)?;
        match (t[0], t.len()) {
            ("stem", 3) => {
                let (v, a) = (num(t[1], ln)?, num(t[2], ln)?);
                if v >= n || !rot[v].contains(&a) {
                    return Err(Error::Parse { line: ln, msg: "stem anchor not at vertex".into() });
                }
                stems.push((v, a));
            }
            ("root", 3) if root.is_none() => {
                let v = num(t[1], ln)?;
                let r = match t[2].strip_prefix('s') {
                    Some(k) => {
                        let k = num(k, ln)?;
                        if k >= stems.len() && k >= ls.len() {
                            return Err(Error::Parse { line: ln, msg: "bad stem reference".into() });
                        }
                        nd + k
                    }
                    None => num(t[2], ln)?,
                };
                root = Some((v, r, ln));
            }
            _ => return Err(Error::Parse { line: ln, msg: "expected a stem or root line".into() }),
        }
    }
    // place stems after their anchors, in line order
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); nd];
    for (k, &(_, a)) in stems.iter().enumerate() {
        after[a].push(nd + k);
    }
    let mut full = Vec::with_capacity(n);
    for r in &rot {
        let mut x = Vec::new();
        for &d in r {
            x.push(d);
            x.extend(&after[d]);
        }
        full.push(x);
    }
    for (k, &(v, _)) in stems.iter().enumerate() {
        if !full[v].contains(&(nd + k)) {
            return Err(Error::Parse { line: 0, msg: "stem placed at wrong vertex".into() });
        }
    }
    let root = match root {
        None => None,
        Some((v, r, ln)) => {
            if r >= nd + stems.len() || !full[v].contains(&r) {
                return Err(Error::Parse { line: ln, msg: "root not at vertex".into() });
            }
            Some(r)
        }
    };
    Ok(UnicellularMap::from_rotations(&full, nd / 2, root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::minimal_rooted;
    use crate::map::homology::Homology;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random};

    fn ps_of(g: &TorusMap) -> PsOutput {
        let h = Homology::new(g);
        let (o, a, _) = minimal_rooted(g, &h).unwrap();
        run_ps(g, &o, a)
    }

    #[test]
    fn k7_gives_unicellular_map() {
        let g = gen_k7();
        let out = ps_of(&g);
        assert_eq!(check_unicellular(&g, &out), Ok(()));
        assert_eq!(out.u.n(), 7);
        assert_eq!(out.u.edges, 8);
        assert_eq!(out.u.num_stems(), 13);
        assert_eq!(out.angle_cycle.len(), 42);
        assert!(out.u.is_stem(out.u.root.unwrap()));
    }

    #[test]
    fn random_minimal_outputs_are_unicellular() {
        for seed in 0..60u64 {
            let g = gen_random(1 + seed as usize * 2, seed);
            let out = ps_of(&g);
            assert_eq!(check_unicellular(&g, &out), Ok(()), "seed {seed}");
            assert_eq!(out.u.edges, g.n() + 1);
            assert_eq!(out.u.num_stems(), 2 * g.n() - 1);
            assert_eq!(out.angle_cycle.len(), 2 * g.m());
            assert!(out.u.is_stem(out.u.root.unwrap()));
        }
    }

    #[test]
    fn one_vertex_any_orientation_terminates() {
        let g = gen_one_vertex();
        for mask in 0..8usize {
            let o = Orientation { tail: (0..3).map(|e| 2 * e + (mask >> e & 1)).collect() };
            for d in 0..6 {
                let out = run_ps(&g, &o, g.angle(d));
                let mut c = out.angle_cycle.clone();
                c.sort();
                c.dedup();
                assert_eq!(c.len(), out.angle_cycle.len(), "angle cycle is simple");
            }
        }
    }

    #[test]
    fn tuni_round_trip() {
        let rot = vec![vec![0, 4, 2, 5, 1, 3]];
        let u = UnicellularMap::from_rotations(&rot, 2, Some(4));
        let t = write_tuni(&u);
        let v = parse_tuni(&t).unwrap();
        assert_eq!(v.rotations(), u.rotations());
        assert_eq!(v.root, u.root);
        assert_eq!(write_tuni(&v), t);
    }
}
