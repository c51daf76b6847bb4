//! Fixture generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::map::{twin, Dart, TorusMap};

/// One vertex, three loops. Each loop is non-contractible and the two faces
/// are triangles.
pub fn gen_one_vertex() -> TorusMap {
    TorusMap::from_rotations(&[vec![0, 2, 4, 1, 3, 5]]).expect("fixture")
}

pub(crate) fn k7_faces() -> Vec<Vec<usize>> {
    let mut faces = Vec::with_capacity(14);
    for i in 0..7 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 3) % 7, (i + 2) % 7]);
    }
    faces
}

/// The complete graph on seven vertices embedded as a triangulation.
pub fn gen_k7() -> TorusMap {
    TorusMap::from_faces(7, &k7_faces()).expect("fixture")
}

fn insert_in_face(faces: &mut Vec<Vec<usize>>, which: usize, p: usize) {
    let f = faces.swap_remove(which);
    let (a, b, c) = (f[0], f[1], f[2]);
    faces.push(vec![a, b, p]);
    faces.push(vec![b, c, p]);
    faces.push(vec![c, a, p]);
}

/// K7 with a degree-3 vertex inserted in a face, then a second one inserted in
/// a face of the first. Returns the map and the two new vertices.
pub fn nested_k7() -> (TorusMap, usize, usize) {
    let mut faces = k7_faces();
    insert_in_face(&mut faces, 0, 7);
    let i = faces.iter().position(|f| f.contains(&7)).unwrap();
    insert_in_face(&mut faces, i, 8);
    (TorusMap::from_faces(9, &faces).expect("fixture"), 7, 8)
}

/// Adds a degree-3 vertex inside face `f`. Returns the map and the vertex.
pub fn insert_vertex(map: &TorusMap, f: usize) -> (TorusMap, usize) {
    let m = map.m();
    let p = map.n();
    let face: Vec<Dart> = map.face_darts(f).collect();
    assert_eq!(face.len(), 3);
    let mut rot = map.rotations();
    for (i, &d) in face.iter().enumerate() {
        let r = &mut rot[map.vertex(d)];
        let at = r.iter().position(|&x| x == d).unwrap();
        r.insert(at + 1, 2 * (m + i));
    }
    let spokes = |order: [usize; 3]| order.iter().map(|&i| 2 * (m + i) + 1).collect::<Vec<_>>();
    for order in [[0, 1, 2], [0, 2, 1]] {
        let mut r = rot.clone();
        r.push(spokes(order));
        if let Ok(g) = TorusMap::from_rotations(&r) {
            if g.check_triangulation().is_ok() {
                return (g, p);
            }
        }
    }
    panic!("face {f} does not take a vertex");
}

/// A 7-vertex random triangulation with one vertex added in a face, so
/// that it has a separating triangle and still 24 edges.
pub fn nested_small() -> (TorusMap, usize) {
    insert_vertex(&gen_random(7, 5), 0)
}

/// Growing rotation system with `Z^2` dart voltages, so that contractibility
/// of a short cycle is a local test.
struct Grower {
    vert: Vec<usize>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    first: Vec<Dart>,
    volt: Vec<[i64; 2]>,
}

impl Grower {
    fn one_vertex() -> Grower {
        let rot = [0usize, 2, 4, 1, 3, 5];
        let mut next = vec![0; 6];
        let mut prev = vec![0; 6];
        for i in 0..6 {
            next[rot[i]] = rot[(i + 1) % 6];
            prev[rot[(i + 1) % 6]] = rot[i];
        }
        let g0 = [1, 0];
        let g1 = [0, 1];
        let g2 = [-1, 1];
        let neg = |x: [i64; 2]| [-x[0], -x[1]];
        Grower {
            vert: vec![0; 6],
            next,
            prev,
            first: vec![0],
            volt: vec![g0, neg(g0), g1, neg(g1), g2, neg(g2)],
        }
    }

    fn around(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut x = self.next[d];
        while x != d {
            out.push(x);
            x = self.next[x];
        }
        out
    }

    fn set_cycle(&mut self, v: usize, ds: &[Dart]) {
        for i in 0..ds.len() {
            let (x, y) = (ds[i], ds[(i + 1) % ds.len()]);
            self.next[x] = y;
            self.prev[y] = x;
            self.vert[x] = v;
        }
        self.first[v] = ds[0];
    }

    fn insert_before(&mut self, x: Dart, y: Dart) {
        let p = self.prev[y];
        self.next[p] = x;
        self.prev[x] = p;
        self.next[x] = y;
        self.prev[y] = x;
        self.vert[x] = self.vert[y];
    }

    fn insert_after(&mut self, x: Dart, y: Dart) {
        let nx = self.next[y];
        self.insert_before(x, nx);
    }

    fn clean_at(&self, v: usize) -> bool {
        let mut keys: Vec<(usize, [i64; 2])> = self
            .around(self.first[v])
            .into_iter()
            .map(|d| (self.vert[twin(d)], self.volt[d]))
            .collect();
        if keys.iter().any(|&(h, g)| h == v && g == [0, 0]) {
            return false;
        }
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }

    /// Splits `v` along darts `a != b`: the darts strictly between them move
    /// to a new vertex joined to `v` by a new edge, with two new triangles.
    fn split(&mut self, a: Dart, b: Dart) -> bool {
        if b == twin(a) {
            return false;
        }
        let v = self.vert[a];
        let rot = self.around(a);
        let j = rot.iter().position(|&x| x == b).unwrap();
        let p: Vec<Dart> = rot[1..j].to_vec();
        let q: Vec<Dart> = rot[j + 1..].to_vec();
        let mut touched = rot.clone();
        touched.extend([twin(a), twin(b), self.prev[twin(a)], self.next[twin(b)]]);
        let saved: Vec<(Dart, usize, Dart, Dart)> =
            touched.iter().map(|&x| (x, self.vert[x], self.next[x], self.prev[x])).collect();
        let first_v = self.first[v];
        let nd = self.vert.len();
        let (t, a2, b2) = (nd, nd + 2, nd + 4);
        self.vert.extend([usize::MAX; 6]);
        self.next.extend([usize::MAX; 6]);
        self.prev.extend([usize::MAX; 6]);
        let zero = [0, 0];
        let (ga, gb) = (self.volt[a], self.volt[b]);
        self.volt.extend([zero, zero, ga, [-ga[0], -ga[1]], gb, [-gb[0], -gb[1]]]);
        let w = self.first.len();
        self.first.push(usize::MAX);
        let mut rv = vec![a, t, b];
        rv.extend(&q);
        let mut rw = vec![twin(t), a2];
        rw.extend(&p);
        rw.push(b2);
        self.set_cycle(v, &rv);
        self.set_cycle(w, &rw);
        self.insert_before(twin(a2), twin(a));
        self.insert_after(twin(b2), twin(b));
        if self.clean_at(v) && self.clean_at(w) {
            self.first[v] = a;
            return true;
        }
        for (x, vx, nx, px) in saved {
            self.vert[x] = vx;
            self.next[x] = nx;
            self.prev[x] = px;
        }
        self.vert.truncate(nd);
        self.next.truncate(nd);
        self.prev.truncate(nd);
        self.first.pop();
        self.first[v] = first_v;
        self.volt.truncate(nd);
        false
    }

    fn into_map(self) -> TorusMap {
        let rot: Vec<Vec<Dart>> = self.first.iter().map(|&d| self.around(d)).collect();
        TorusMap::from_rotations(&rot).expect("splits keep a torus map")
    }
}

/// A random triangulation on `n` vertices grown from the one-vertex map by
/// vertex splits, rejecting splits that create a contractible loop or
/// 2-cycle. Deterministic in `seed`.
pub fn gen_random(n: usize, seed: u64) -> TorusMap {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Grower::one_vertex();
    while g.first.len() < n {
        let v = rng.gen_range(0..g.first.len());
        let rot = g.around(g.first[v]);
        let i = rng.gen_range(0..rot.len());
        let mut j = rng.gen_range(0..rot.len() - 1);
        if j >= i {
            j += 1;
        }
        g.split(rot[i], rot[j]);
    }
    crate::map::canon::bfs_relabel(&g.into_map())
}

/// Breadth-first shortest dart path from `from` to `to`.
pub fn shortest_path(map: &TorusMap, from: usize, to: usize) -> Vec<Dart> {
    let mut via: Vec<Dart> = vec![usize::MAX; map.n()];
    let mut seen = vec![false; map.n()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for d in map.darts_at(v) {
            let w = map.head(d);
            if !seen[w] {
                seen[w] = true;
                via[w] = d;
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = to;
    while x != from {
        let d = via[x];
        path.push(d);
        x = map.vertex(d);
    }
    path.reverse();
    path
}
