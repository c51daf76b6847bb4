//! Rotation-system maps on the torus.
//!
//! Darts are numbered `0..2m`; the two darts of edge `e` are `2e` and `2e + 1`,
//! so `twin(d) = d ^ 1`. Each dart has an origin vertex and `next_ccw` gives the
//! following dart counterclockwise around that vertex.
//!
//! Faces are the orbits of `phi(d) = prev_ccw(twin(d))`. Following `phi` walks a
//! face counterclockwise with the face on the left of every dart, and
//! `face_of(d)` is that left face. Every left/right statement in the crate uses
//! this convention.

pub mod canon;
pub mod homology;
pub mod tmap;
pub mod triangles;

use crate::error::{Error, Result};

pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Clone, Debug)]
pub struct TorusMap {
    // per-dart tables are stored as u32 to halve their footprint
    vert: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    first: Vec<Dart>,
    face: Vec<u32>,
    face_first: Vec<Dart>,
    face_len: Vec<usize>,
}

/// An angle is the corner at `vertex` lying just before `dart` in
/// counterclockwise order, between `prev_ccw(dart)` and `dart`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    pub vertex: usize,
    pub dart: Dart,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleStep {
    NextVertex,
    PrevVertex,
    NextFace,
    PrevFace,
}

/// A sequence of darts where each dart starts at the head of the previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub darts: Vec<Dart>,
    pub closed: bool,
}

impl Walk {
    pub fn closed(darts: Vec<Dart>) -> Walk {
        Walk { darts, closed: true }
    }

    pub fn reversed(&self) -> Walk {
        Walk {
            darts: self.darts.iter().rev().map(|&d| twin(d)).collect(),
            closed: self.closed,
        }
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

impl TorusMap {
    /// Builds a map from the ccw dart lists of each vertex.
    pub fn from_rotations(rot: &[Vec<Dart>]) -> Result<TorusMap> {
        if rot.is_empty() {
            return Err(Error::Other("map has no vertices".into()));
        }
        let nd: usize = rot.iter().map(|r| r.len()).sum();
        let mut vert = vec![usize::MAX; nd];
        let mut next = vec![usize::MAX; nd];
        let mut prev = vec![usize::MAX; nd];
        let mut first = Vec::with_capacity(rot.len());
        for (v, r) in rot.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::Other(format!("vertex {v} has no darts")));
            }
            for (i, &d) in r.iter().enumerate() {
                if d >= nd {
                    return Err(Error::MissingDart(nd - 1));
                }
                if vert[d] != usize::MAX {
                    return Err(Error::DuplicateDart(d));
                }
                vert[d] = v;
                let nx = r[(i + 1) % r.len()];
                next[d] = nx;
            }
            first.push(r[0]);
        }
        if let Some(d) = vert.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MissingDart(d));
        }
        if nd % 2 == 1 {
            return Err(Error::TwinNotInvolution);
        }
        if nd >= u32::MAX as usize {
            return Err(Error::Other("map too large".into()));
        }
        for d in 0..nd {
            prev[next[d]] = d;
        }
        let narrow = |x: Vec<usize>| x.into_iter().map(|y| y as u32).collect();
        let mut map = TorusMap {
            vert: narrow(vert),
            next: narrow(next),
            prev: narrow(prev),
            first,
            face: vec![u32::MAX; nd],
            face_first: Vec::new(),
            face_len: Vec::new(),
        };
        map.build_faces();
        if !map.is_connected() {
            return Err(Error::Other("map not connected".into()));
        }
        let chi = map.n() as i64 - map.m() as i64 + map.f() as i64;
        if chi != 0 {
            return Err(Error::Genus(chi));
        }
        Ok(map)
    }

    /// Builds a map from counterclockwise face boundaries given as vertex
    /// cycles. Only usable when no two edges join the same pair of vertices.
    pub fn from_faces(n: usize, faces: &[Vec<usize>]) -> Result<TorusMap> {
        use std::collections::HashMap;
        let mut dart_of: HashMap<(usize, usize), Dart> = HashMap::new();
        let mut ne = 0;
        for f in faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                if dart_of.contains_key(&(a, b)) {
                    return Err(Error::Other(format!("directed edge {a}->{b} repeated")));
                }
                let d = match dart_of.get(&(b, a)) {
                    Some(&t) => twin(t),
                    None => {
                        ne += 1;
                        2 * (ne - 1)
                    }
                };
                dart_of.insert((a, b), d);
            }
        }
        let nd = 2 * ne;
        let mut next = vec![usize::MAX; nd];
        let mut vert = vec![usize::MAX; nd];
        for f in faces {
            let k = f.len();
            for i in 0..k {
                let (a, b, c) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                let bc = dart_of[&(b, c)];
                let ba = *dart_of
                    .get(&(b, a))
                    .ok_or_else(|| Error::Other(format!("edge {a}-{b} on one face only")))?;
                next[bc] = ba;
                vert[bc] = b;
                vert[ba] = b;
            }
        }
        let mut rot = vec![Vec::new(); n];
        let mut seen = vec![false; nd];
        for d in 0..nd {
            if seen[d] {
                continue;
            }
            if next[d] == usize::MAX {
                return Err(Error::Other("incomplete rotation".into()));
            }
            let v = vert[d];
            if !rot[v].is_empty() {
                return Err(Error::Other(format!("vertex {v} is not a disk")));
            }
            let mut x = d;
            loop {
                seen[x] = true;
                rot[v].push(x);
                x = next[x];
                if x == d {
                    break;
                }
            }
        }
        TorusMap::from_rotations(&rot)
    }

    fn build_faces(&mut self) {
        let nd = self.vert.len();
        self.face_first.clear();
        self.face_len.clear();
        for d in 0..nd {
            if self.face[d] != u32::MAX {
                continue;
            }
            let f = self.face_first.len();
            self.face_first.push(d);
            let mut x = d;
            let mut len = 0;
            loop {
                self.face[x] = f as u32;
                len += 1;
                x = self.phi(x);
                if x == d {
                    break;
                }
            }
            self.face_len.push(len);
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.darts_at(v) {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn n(&self) -> usize {
        self.first.len()
    }

    pub fn m(&self) -> usize {
        self.vert.len() / 2
    }

    pub fn f(&self) -> usize {
        self.face_first.len()
    }

    pub fn num_darts(&self) -> usize {
        self.vert.len()
    }

    #[inline]
    pub fn vertex(&self, d: Dart) -> usize {
        self.vert[d] as usize
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.vert[twin(d)] as usize
    }

    #[inline]
    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.next[d] as Dart
    }

    #[inline]
    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.prev[d] as Dart
    }

    /// Next dart along the face on the left of `d`.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.prev[twin(d)] as Dart
    }

    #[inline]
    pub fn phi_inv(&self, d: Dart) -> Dart {
        twin(self.next[d] as Dart)
    }

    /// Face on the left of `d`.
    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.face[d] as usize
    }

    #[inline]
    pub fn face_right(&self, d: Dart) -> usize {
        self.face[twin(d)] as usize
    }

    pub fn first_dart(&self, v: usize) -> Dart {
        self.first[v]
    }

    pub fn face_first_dart(&self, f: usize) -> Dart {
        self.face_first[f]
    }

    pub fn face_len(&self, f: usize) -> usize {
        self.face_len[f]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.darts_at(v).count()
    }

    /// Darts around `v` in ccw order starting from its first dart.
    pub fn darts_at(&self, v: usize) -> Orbit<'_> {
        Orbit { start: self.first[v], cur: Some(self.first[v]), step: &self.next }
    }

    /// Darts of face `f` in ccw order.
    pub fn face_darts(&self, f: usize) -> FaceOrbit<'_> {
        let s = self.face_first[f];
        FaceOrbit { map: self, start: s, cur: Some(s) }
    }

    pub fn face_walk(&self, f: usize) -> Walk {
        Walk::closed(self.face_darts(f).collect())
    }

    pub fn angle(&self, d: Dart) -> Angle {
        Angle { vertex: self.vert[d] as usize, dart: d }
    }

    /// Face containing angle `a`.
    pub fn angle_face(&self, a: Angle) -> usize {
        self.face_of(self.prev_ccw(a.dart))
    }

    pub fn angle_step(&self, a: Angle, kind: AngleStep) -> Angle {
        let d = match kind {
            AngleStep::NextVertex => self.next_ccw(a.dart),
            AngleStep::PrevVertex => self.prev_ccw(a.dart),
            AngleStep::NextFace => self.next_ccw(twin(a.dart)),
            AngleStep::PrevFace => twin(self.prev_ccw(a.dart)),
        };
        self.angle(d)
    }

    pub fn is_triangulation_shape(&self) -> bool {
        self.face_len.iter().all(|&l| l == 3) && self.m() == 3 * self.n()
    }

    /// Checks that every face is a triangle and that no contractible loop or
    /// contractible 2-cycle exists.
    pub fn check_triangulation(&self) -> Result<()> {
        if let Some(f) = self.face_len.iter().position(|&l| l != 3) {
            return Err(Error::NotTriangle(f));
        }
        let hom = homology::Homology::new(self);
        if let Some(k) = hom.short_contractible_cycle(self, 0..self.n()) {
            return Err(Error::ContractibleCycle(k));
        }
        Ok(())
    }

    /// The dual map. Dual dart `d` crosses primal edge `edge_of(d)` from the
    /// face on the left of `d` to the face on its right, so edge ids and dart
    /// ids are shared between the two maps.
    pub fn dual(&self) -> TorusMap {
        let mut rot = vec![Vec::new(); self.f()];
        for (f, r) in rot.iter_mut().enumerate() {
            r.extend(self.face_darts(f));
        }
        TorusMap::from_rotations(&rot).expect("dual of a torus map is a torus map")
    }

    pub fn rotations(&self) -> Vec<Vec<Dart>> {
        (0..self.n()).map(|v| self.darts_at(v).collect()).collect()
    }
}

pub struct Orbit<'a> {
    start: Dart,
    cur: Option<Dart>,
    step: &'a [u32],
}

impl Iterator for Orbit<'_> {
    type Item = Dart;
    fn next(&mut self) -> Option<Dart> {
        let d = self.cur?;
        let nx = self.step[d] as Dart;
        self.cur = if nx == self.start { None } else { Some(nx) };
        Some(d)
    }
}

pub struct FaceOrbit<'a> {
    map: &'a TorusMap,
    start: Dart,
    cur: Option<Dart>,
}

impl Iterator for FaceOrbit<'_> {
    type Item = Dart;
    fn next(&mut self) -> Option<Dart> {
        let d = self.cur?;
        let nx = self.map.phi(d);
        self.cur = if nx == self.start { None } else { Some(nx) };
        Some(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex};

    #[test]
    fn one_vertex_counts() {
        let g = gen_one_vertex();
        assert_eq!((g.n(), g.m(), g.f()), (1, 3, 2));
        assert!(g.is_triangulation_shape());
        g.check_triangulation().unwrap();
    }

    #[test]
    fn k7_counts() {
        let g = gen_k7();
        assert_eq!((g.n(), g.m(), g.f()), (7, 21, 14));
        g.check_triangulation().unwrap();
    }

    #[test]
    fn angle_steps_invert() {
        let g = gen_k7();
        for d in 0..g.num_darts() {
            let a = g.angle(d);
            let b = g.angle_step(a, AngleStep::NextVertex);
            assert_eq!(g.angle_step(b, AngleStep::PrevVertex), a);
            let c = g.angle_step(a, AngleStep::NextFace);
            assert_eq!(g.angle_step(c, AngleStep::PrevFace), a);
        }
    }

    #[test]
    fn vertex_orbit_of_one_vertex_map() {
        let g = gen_one_vertex();
        let a = g.angle(0);
        let mut b = a;
        for _ in 0..6 {
            b = g.angle_step(b, AngleStep::NextVertex);
        }
        assert_eq!(a, b);
    }

    #[test]
    fn next_face_cycles_through_face_corners() {
        let g = gen_k7();
        for d in 0..g.num_darts() {
            let a = g.angle(d);
            let f = g.angle_face(a);
            let mut b = a;
            let mut seen = Vec::new();
            for _ in 0..3 {
                assert_eq!(g.angle_face(b), f);
                seen.push(b.vertex);
                b = g.angle_step(b, AngleStep::NextFace);
            }
            assert_eq!(a, b);
            // the three corners visited are the three vertices of the face circuit
            let mut fv: Vec<usize> = g.face_darts(f).map(|x| g.vertex(x)).collect();
            fv.sort();
            seen.sort();
            assert_eq!(fv, seen);
        }
    }

    #[test]
    fn angle_graph_is_two_regular() {
        let g = gen_k7();
        let nd = g.num_darts();
        let mut indeg = vec![0; nd];
        for d in 0..nd {
            let a = g.angle(d);
            indeg[g.angle_step(a, AngleStep::NextVertex).dart] += 1;
            indeg[g.angle_step(a, AngleStep::NextFace).dart] += 1;
        }
        assert!(indeg.iter().all(|&k| k == 2));
    }

    #[test]
    fn dual_swaps_counts() {
        let g = gen_one_vertex();
        let d = g.dual();
        assert_eq!((d.n(), d.m(), d.f()), (2, 3, 1));
        let k = gen_k7().dual();
        assert_eq!((k.n(), k.m(), k.f()), (14, 21, 7));
    }

    #[test]
    fn dual_dart_goes_left_to_right() {
        let g = gen_k7();
        let d = g.dual();
        for x in 0..g.num_darts() {
            assert_eq!(d.vertex(x), g.face_of(x));
            assert_eq!(d.head(x), g.face_right(x));
        }
    }

    #[test]
    fn double_dual_is_isomorphic() {
        for g in [gen_one_vertex(), gen_k7()] {
            let dd = g.dual().dual();
            assert!(canon::is_isomorphic(&g, &dd));
        }
    }

    #[test]
    fn rejects_disconnected_or_odd() {
        assert_eq!(TorusMap::from_rotations(&[vec![0, 1, 2]]).unwrap_err(), Error::TwinNotInvolution);
        assert!(matches!(TorusMap::from_rotations(&[vec![0, 0]]), Err(Error::DuplicateDart(0))));
    }
}
