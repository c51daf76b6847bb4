//! Lattice, HTC and rigidity ground truth over one homology class.
//!
//! Faces are bits of a `u64`. In the dual of an orientation, dual dart `d`
//! goes from the face left of the tail dart to the face on its right. A face
//! set is closed when no dual arc leaves it; its boundary is then a clockwise
//! 0-homologous oriented subgraph. An orientation is minimal for `f0` iff no
//! nonempty closed set avoids `f0`, which is checked here over all face sets.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::{is_minimal, minimize};
use crate::map::homology::Homology;
use crate::map::{edge_of, Dart, TorusMap};
use crate::orient::{color_edges, is_crossing, is_htc, Orientation};

const MAX_FACES: usize = 20;

fn face_check(map: &TorusMap) -> Result<()> {
    if map.f() > MAX_FACES {
        return Err(Error::OracleCap(map.m()));
    }
    Ok(())
}

/// Successor masks of the dual orientation.
fn dual_succ(map: &TorusMap, d: &Orientation) -> Vec<u64> {
    let mut succ = vec![0u64; map.f()];
    for &t in &d.tail {
        succ[map.face_of(t)] |= 1 << map.face_right(t);
    }
    succ
}

fn is_closed(succ: &[u64], x: u64) -> bool {
    let mut bits = x;
    while bits != 0 {
        let a = bits.trailing_zeros() as usize;
        if succ[a] & !x != 0 {
            return false;
        }
        bits &= bits - 1;
    }
    true
}

/// Faces `f0` for which `d` is not minimal, by trying every face set.
pub fn nonminimal_faces(map: &TorusMap, d: &Orientation) -> u64 {
    let f = map.f();
    let full = (1u64 << f) - 1;
    let succ = dual_succ(map, d);
    let mut bad = 0u64;
    for x in 1..full {
        if is_closed(&succ, x) {
            bad |= full & !x;
        }
    }
    bad
}

fn reach(succ: &[u64], a: usize) -> u64 {
    let mut seen = 1u64 << a;
    let mut frontier = seen;
    while frontier != 0 {
        let b = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = succ[b] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Inclusion-minimal nonempty closed face sets avoiding `f0`.
fn minimal_closed(succ: &[u64], f0: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for a in 0..succ.len() {
        let r = reach(succ, a);
        if r >> f0 & 1 == 1 || out.contains(&r) {
            continue;
        }
        let mut bits = r;
        let mut sink = true;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if reach(succ, b) != r {
                sink = false;
                break;
            }
        }
        if sink {
            out.push(r);
        }
    }
    out
}

/// Reverses every edge with exactly one side in `x`.
fn flip_boundary(map: &TorusMap, d: &Orientation, x: u64) -> Orientation {
    let mut o = d.clone();
    for e in 0..map.m() {
        let (l, r) = (map.face_of(2 * e), map.face_of(2 * e + 1));
        if (x >> l & 1) != (x >> r & 1) {
            o.reverse(e);
        }
    }
    o
}

fn reversed(d: &Orientation) -> Orientation {
    Orientation { tail: d.tail.iter().map(|&t| t ^ 1).collect() }
}

/// Results of [`LatticeOracle::check`] for one root face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub f0: usize,
    pub class_size: usize,
    /// Members with no closed face set avoiding `f0`.
    pub oracle_minima: usize,
    /// `minimize` returns the oracle minimum from every member.
    pub minimize_agrees: bool,
    /// `is_minimal` holds exactly at the oracle minimum.
    pub is_minimal_matches: bool,
    /// Every member but the minimum has a lower neighbor, every member but
    /// the maximum a higher one, and all members are reached from the
    /// minimum by going up.
    pub hasse_ok: bool,
}

impl LatticeReport {
    pub fn ok(&self) -> bool {
        self.oracle_minima == 1 && self.minimize_agrees && self.is_minimal_matches && self.hasse_ok
    }
}

/// One homology class with per-member exhaustive minimality data.
pub struct LatticeOracle<'a> {
    map: &'a TorusMap,
    class: &'a [Orientation],
    bad: Vec<u64>,
    bad_rev: Vec<u64>,
    index: HashMap<Vec<usize>, usize>,
}

impl<'a> LatticeOracle<'a> {
    pub fn new(map: &'a TorusMap, class: &'a [Orientation]) -> Result<LatticeOracle<'a>> {
        face_check(map)?;
        let bad = class.iter().map(|d| nonminimal_faces(map, d)).collect();
        let bad_rev = class.iter().map(|d| nonminimal_faces(map, &reversed(d))).collect();
        let index = class.iter().enumerate().map(|(i, d)| (d.tail.clone(), i)).collect();
        Ok(LatticeOracle { map, class, bad, bad_rev, index })
    }

    /// Indices of members that are minimal for `f0`.
    pub fn minima(&self, f0: usize) -> Vec<usize> {
        (0..self.class.len()).filter(|&i| self.bad[i] >> f0 & 1 == 0).collect()
    }

    fn maxima(&self, f0: usize) -> Vec<usize> {
        (0..self.class.len()).filter(|&i| self.bad_rev[i] >> f0 & 1 == 0).collect()
    }

    fn neighbors(&self, i: usize, f0: usize, up: bool) -> Vec<usize> {
        let d = &self.class[i];
        let base = if up { reversed(d) } else { d.clone() };
        let succ = dual_succ(self.map, &base);
        minimal_closed(&succ, f0)
            .into_iter()
            .filter_map(|x| self.index.get(&flip_boundary(self.map, d, x).tail).copied())
            .collect()
    }

    pub fn check(&self, f0: usize) -> LatticeReport {
        let map = self.map;
        let minima = self.minima(f0);
        let maxima = self.maxima(f0);
        let mut report = LatticeReport {
            f0,
            class_size: self.class.len(),
            oracle_minima: minima.len(),
            minimize_agrees: false,
            is_minimal_matches: false,
            hasse_ok: false,
        };
        if minima.len() != 1 || maxima.len() != 1 {
            return report;
        }
        let (lo, hi) = (minima[0], maxima[0]);
        let min = &self.class[lo];
        report.minimize_agrees = self.class.iter().all(|d| &minimize(map, d, f0) == min);
        report.is_minimal_matches = self.class.iter().enumerate().all(|(i, d)| is_minimal(map, d, f0) == (i == lo));
        let mut ok = true;
        let mut up: Vec<Vec<usize>> = Vec::with_capacity(self.class.len());
        for i in 0..self.class.len() {
            let above = self.neighbors(i, f0, true);
            let below = self.neighbors(i, f0, false);
            ok &= (i == hi) == above.is_empty() && (i == lo) == below.is_empty();
            up.push(above);
        }
        let mut seen = vec![false; self.class.len()];
        seen[lo] = true;
        let mut queue = VecDeque::from([lo]);
        while let Some(i) = queue.pop_front() {
            for &j in &up[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        report.hasse_ok = ok && seen.iter().all(|&s| s);
        report
    }
}

/// [`LatticeOracle::check`] for a single root face.
pub fn lattice_check(map: &TorusMap, class: &[Orientation], f0: usize) -> Result<LatticeReport> {
    Ok(LatticeOracle::new(map, class)?.check(f0))
}

/// Edges with the same direction in every member.
pub fn rigid_edges(class: &[Orientation]) -> Vec<usize> {
    let Some(first) = class.first() else { return Vec::new() };
    (0..first.tail.len()).filter(|&e| class.iter().all(|d| d.tail[e] == first.tail[e])).collect()
}

/// Faces reached from the left of `t[0]` without crossing `t`, and
/// `V - E + F` of that side not counting the walk itself.
fn side(map: &TorusMap, t: &[Dart; 3]) -> (HashSet<usize>, i64) {
    let te: Vec<usize> = t.iter().map(|&d| edge_of(d)).collect();
    let tv: Vec<usize> = t.iter().map(|&d| map.vertex(d)).collect();
    let mut faces = HashSet::from([map.face_of(t[0])]);
    let mut stack = vec![map.face_of(t[0])];
    while let Some(f) = stack.pop() {
        for d in map.face_darts(f) {
            if !te.contains(&edge_of(d)) && faces.insert(map.face_right(d)) {
                stack.push(map.face_right(d));
            }
        }
    }
    let mut verts = HashSet::new();
    let mut edges = HashSet::new();
    for &f in &faces {
        for d in map.face_darts(f) {
            if !tv.contains(&map.vertex(d)) {
                verts.insert(map.vertex(d));
            }
            if !te.contains(&edge_of(d)) {
                edges.insert(edge_of(d));
            }
        }
    }
    let chi = verts.len() as i64 - edges.len() as i64 + faces.len() as i64;
    (faces, chi)
}

/// Contractible non-facial closed walks of three distinct edges, walks
/// through loops included, each with the faces of its disk.
pub fn contractible_triangles(map: &TorusMap) -> Vec<([Dart; 3], HashSet<usize>)> {
    let hom = Homology::new(map);
    let mut out = Vec::new();
    for d1 in 0..map.num_darts() {
        for d2 in map.darts_at(map.head(d1)) {
            for d3 in map.darts_at(map.head(d2)) {
                let t = [d1, d2, d3];
                let (e1, e2, e3) = (edge_of(d1), edge_of(d2), edge_of(d3));
                if map.head(d3) != map.vertex(d1) || e1 == e2 || e2 == e3 || e1 == e3 {
                    continue;
                }
                if hom.walk_voltage(&t) != [0, 0] || map.phi(d1) == d2 && map.phi(d2) == d3 {
                    continue;
                }
                let (inside, chi) = side(map, &t);
                if chi == 1 {
                    out.push((t, inside));
                }
            }
        }
    }
    out
}

/// Vertices inside the disk of a contractible triangle and not on it.
pub fn strict_interior_vertices(map: &TorusMap) -> Vec<bool> {
    let mut strict = vec![false; map.n()];
    for (t, inside) in contractible_triangles(map) {
        let corners: Vec<usize> = t.iter().map(|&d| map.vertex(d)).collect();
        for &f in &inside {
            for d in map.face_darts(f) {
                if !corners.contains(&map.vertex(d)) {
                    strict[map.vertex(d)] = true;
                }
            }
        }
    }
    strict
}

/// Edges inside the disk of a contractible triangle with an end on it.
pub fn rigid_by_triangles(map: &TorusMap) -> Vec<usize> {
    let mut rigid = vec![false; map.m()];
    for (t, inside) in contractible_triangles(map) {
        let corners: Vec<usize> = t.iter().map(|&d| map.vertex(d)).collect();
        for (e, r) in rigid.iter_mut().enumerate() {
            let (a, b) = (2 * e, 2 * e + 1);
            *r |= inside.contains(&map.face_of(a))
                && inside.contains(&map.face_of(b))
                && (corners.contains(&map.vertex(a)) || corners.contains(&map.vertex(b)));
        }
    }
    (0..map.m()).filter(|&e| rigid[e]).collect()
}

/// Edges lying on the boundary of some closed face set of some member,
/// that is, in a 0-homologous oriented subgraph.
pub fn flippable_edges(map: &TorusMap, class: &[Orientation]) -> Result<Vec<usize>> {
    face_check(map)?;
    let full = (1u64 << map.f()) - 1;
    let mut hit = vec![false; map.m()];
    for d in class {
        let succ = dual_succ(map, d);
        for x in 1..full {
            if is_closed(&succ, x) {
                for (e, h) in hit.iter_mut().enumerate() {
                    let (l, r) = (map.face_of(2 * e), map.face_of(2 * e + 1));
                    *h |= (x >> l & 1) != (x >> r & 1);
                }
            }
        }
    }
    Ok((0..map.m()).filter(|&e| hit[e]).collect())
}

/// How the orientations with γ = 0 on both basis cycles sit among classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HtcReport {
    /// Classes holding at least one such orientation.
    pub classes_hit: usize,
    /// The class hit holds nothing else.
    pub exact: bool,
    /// Every such orientation has a Schnyder coloring.
    pub colorable: bool,
    /// The class contains a crossing wood.
    pub has_crossing: bool,
    pub size: usize,
}

impl HtcReport {
    pub fn ok(&self) -> bool {
        self.classes_hit == 1 && self.exact && self.colorable && self.has_crossing
    }
}

pub fn htc_check(map: &TorusMap, classes: &[Vec<Orientation>]) -> HtcReport {
    let hom = Homology::new(map);
    let mut report = HtcReport { classes_hit: 0, exact: true, colorable: true, has_crossing: false, size: 0 };
    for c in classes {
        let flags: Vec<bool> = c.iter().map(|d| is_htc(map, d, &hom.basis)).collect();
        if !flags.iter().any(|&b| b) {
            continue;
        }
        report.classes_hit += 1;
        report.exact &= flags.iter().all(|&b| b);
        report.size = c.len();
        for d in c {
            match color_edges(map, d) {
                Ok(col) => report.has_crossing |= is_crossing(map, d, &col),
                Err(_) => report.colorable = false,
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_three_orientations, gen_k7, gen_one_vertex, gen_random, homology_classes, nested_small};

    fn all_classes(g: &TorusMap) -> Vec<Vec<Orientation>> {
        homology_classes(g, &enumerate_three_orientations(g).unwrap())
    }

    #[test]
    fn one_vertex_lattices() {
        let g = gen_one_vertex();
        for c in all_classes(&g) {
            let o = LatticeOracle::new(&g, &c).unwrap();
            for f0 in 0..g.f() {
                let r = o.check(f0);
                assert!(r.ok(), "{r:?}");
            }
        }
    }

    #[test]
    fn small_random_lattices() {
        for (n, seed) in [(3, 1), (5, 2), (6, 8)] {
            let g = gen_random(n, seed);
            for c in all_classes(&g) {
                let o = LatticeOracle::new(&g, &c).unwrap();
                for f0 in 0..g.f() {
                    assert!(o.check(f0).ok());
                }
            }
        }
    }

    #[test]
    fn exactly_one_htc_class() {
        for g in [gen_one_vertex(), gen_k7(), gen_random(4, 3)] {
            let r = htc_check(&g, &all_classes(&g));
            assert!(r.ok(), "{r:?}");
        }
    }

    fn htc_class(g: &TorusMap) -> Vec<Orientation> {
        let hom = Homology::new(g);
        all_classes(g).into_iter().find(|c| is_htc(g, &c[0], &hom.basis)).unwrap()
    }

    #[test]
    fn k7_has_no_rigid_edges() {
        let g = gen_k7();
        assert!(rigid_by_triangles(&g).is_empty());
        assert!(rigid_edges(&htc_class(&g)).is_empty());
    }

    #[test]
    fn nested_fixture_rigid_edges() {
        let (g, p) = nested_small();
        let rigid = rigid_edges(&htc_class(&g));
        let mut at_p: Vec<usize> = g.darts_at(p).map(|d| d >> 1).collect();
        at_p.sort_unstable();
        assert_eq!(rigid, at_p);
        assert_eq!(rigid_by_triangles(&g), at_p);
    }

    #[test]
    fn rigid_edges_match_lemma_and_triangles() {
        for seed in 0..6 {
            let g = gen_random(7, seed);
            let tri = rigid_by_triangles(&g);
            for c in all_classes(&g) {
                let rigid = rigid_edges(&c);
                let flip = flippable_edges(&g, &c).unwrap();
                let complement: Vec<usize> = (0..g.m()).filter(|e| !flip.contains(e)).collect();
                assert_eq!(rigid, complement);
                if is_htc(&g, &c[0], &Homology::new(&g).basis) {
                    assert_eq!(rigid, tri, "seed {seed}");
                }
            }
        }
    }
}
