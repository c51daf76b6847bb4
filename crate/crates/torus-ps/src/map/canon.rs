//! Canonical codes and isomorphism of rooted maps.
//!
//! Darts are relabeled in the breadth-first order in which they are reached
//! from the root through `next_ccw` and `twin`. The code lists, per label, the
//! labels of `next_ccw(d)` and `twin(d)`. Two rooted maps have equal codes iff a
//! dart bijection carries one rotation system onto the other.

use super::{twin, Dart, TorusMap};

struct Labeler {
    label: Vec<u32>,
    order: Vec<Dart>,
}

impl Labeler {
    fn new(nd: usize) -> Labeler {
        Labeler { label: vec![u32::MAX; nd], order: Vec::with_capacity(nd) }
    }

    fn reset(&mut self) {
        for &d in &self.order {
            self.label[d] = u32::MAX;
        }
        self.order.clear();
    }

    #[inline]
    fn get(&mut self, d: Dart) -> u32 {
        if self.label[d] == u32::MAX {
            self.label[d] = self.order.len() as u32;
            self.order.push(d);
        }
        self.label[d]
    }

    /// Emits code pairs one at a time; `sink` returns false to stop early.
    fn run(&mut self, map: &TorusMap, root: Dart, mut sink: impl FnMut(u32, u32) -> bool) -> bool {
        self.reset();
        self.get(root);
        let mut i = 0;
        while i < self.order.len() {
            let d = self.order[i];
            let a = self.get(map.next_ccw(d));
            let b = self.get(twin(d));
            if !sink(a, b) {
                return false;
            }
            i += 1;
        }
        true
    }
}

/// Code of `map` rooted at dart `root`.
pub fn canonical_code(map: &TorusMap, root: Dart) -> Vec<u8> {
    let nd = map.num_darts();
    let mut out = Vec::with_capacity(8 * nd + 8);
    out.extend_from_slice(&(map.n() as u32).to_le_bytes());
    out.extend_from_slice(&(nd as u32).to_le_bytes());
    let mut lab = Labeler::new(nd);
    lab.run(map, root, |a, b| {
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
        true
    });
    out
}

/// Minimum rooted code over all darts: a complete invariant of the unrooted map.
pub fn unrooted_code(map: &TorusMap) -> Vec<u8> {
    (0..map.num_darts()).map(|r| canonical_code(map, r)).min().expect("maps have darts")
}

fn pairs(map: &TorusMap, root: Dart) -> Vec<(u32, u32)> {
    let mut v = Vec::with_capacity(map.num_darts());
    Labeler::new(map.num_darts()).run(map, root, |a, b| {
        v.push((a, b));
        true
    });
    v
}

fn same_counts(a: &TorusMap, b: &TorusMap) -> bool {
    if a.n() != b.n() || a.m() != b.m() || a.f() != b.f() {
        return false;
    }
    let degs = |g: &TorusMap| {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    degs(a) == degs(b)
}

pub fn is_isomorphic_rooted(a: &TorusMap, ra: Dart, b: &TorusMap, rb: Dart) -> bool {
    same_counts(a, b) && pairs(a, ra) == pairs(b, rb)
}

/// Unrooted isomorphism: fixes one root of `a` and tries every root of `b`
/// whose vertex has the same degree.
pub fn is_isomorphic(a: &TorusMap, b: &TorusMap) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Returns a dart of `b` such that `(a, 0)` and `(b, dart)` are isomorphic as
/// rooted maps.
pub fn find_isomorphism(a: &TorusMap, b: &TorusMap) -> Option<Dart> {
    if !same_counts(a, b) {
        return None;
    }
    let target = pairs(a, 0);
    let deg = a.degree(a.vertex(0));
    let mut lab = Labeler::new(b.num_darts());
    (0..b.num_darts()).filter(|&r| b.degree(b.vertex(r)) == deg).find(|&r| {
        let mut i = 0;
        lab.run(b, r, |x, y| {
            let ok = target[i] == (x, y);
            i += 1;
            ok
        })
    })
}

/// Transports the rotation system along a dart relabeling that keeps
/// `twin(d) = d ^ 1`, together with a vertex relabeling.
pub fn relabel(map: &TorusMap, edge_perm: &[usize], flip: &[bool], vert_perm: &[usize]) -> TorusMap {
    let nd = map.num_darts();
    let dart = |d: Dart| 2 * edge_perm[d >> 1] + ((d & 1) ^ flip[d >> 1] as usize);
    let mut rot = vec![Vec::new(); map.n()];
    for v in 0..map.n() {
        rot[vert_perm[v]] = map.darts_at(v).map(dart).collect();
    }
    debug_assert_eq!(rot.iter().map(|r| r.len()).sum::<usize>(), nd);
    TorusMap::from_rotations(&rot).expect("relabeling keeps a valid map")
}

/// Renumbers vertices in BFS order and edges by first appearance around
/// them, so that neighbors get nearby ids.
pub fn bfs_relabel(map: &TorusMap) -> TorusMap {
    let n = map.n();
    let mut vert_perm = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    vert_perm[0] = 0;
    order.push(0);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for d in map.darts_at(v) {
            let w = map.head(d);
            if vert_perm[w] == usize::MAX {
                vert_perm[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut edge_perm = vec![usize::MAX; map.m()];
    let mut flip = vec![false; map.m()];
    let mut k = 0;
    for &v in &order {
        for d in map.darts_at(v) {
            if edge_perm[d >> 1] == usize::MAX {
                edge_perm[d >> 1] = k;
                flip[d >> 1] = d & 1 == 1;
                k += 1;
            }
        }
    }
    relabel(map, &edge_perm, &flip, &vert_perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    #[test]
    fn reflexive_for_every_root() {
        let g = gen_random(9, 3);
        for r in 0..g.num_darts() {
            assert!(is_isomorphic_rooted(&g, r, &g, r));
        }
    }

    #[test]
    fn bfs_relabel_is_isomorphic() {
        let g = gen_random(60, 2);
        assert!(is_isomorphic(&bfs_relabel(&g), &g));
    }

    #[test]
    fn k7_vs_one_vertex() {
        assert!(!is_isomorphic(&gen_k7(), &gen_one_vertex()));
    }

    #[test]
    fn k7_is_dart_transitive() {
        let g = gen_k7();
        let c0 = canonical_code(&g, 0);
        let same = (0..g.num_darts()).filter(|&r| canonical_code(&g, r) == c0).count();
        // orientation-preserving automorphisms of K7 on the torus act
        // transitively on the 42 darts
        assert_eq!(same, 42);
    }

    #[test]
    fn random_relabelings_are_isomorphic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for seed in 0..10 {
            let g = gen_random(5 + seed, seed as u64);
            let mut ep: Vec<usize> = (0..g.m()).collect();
            ep.shuffle(&mut rng);
            let flip: Vec<bool> = (0..g.m()).map(|_| rng.gen()).collect();
            let mut vp: Vec<usize> = (0..g.n()).collect();
            vp.shuffle(&mut rng);
            let h = relabel(&g, &ep, &flip, &vp);
            let r = 0;
            let hr = 2 * ep[r >> 1] + ((r & 1) ^ flip[r >> 1] as usize);
            assert!(is_isomorphic_rooted(&g, r, &h, hr));
            assert!(is_isomorphic(&g, &h));
            assert_eq!(unrooted_code(&g), unrooted_code(&h));
        }
    }

    #[test]
    fn different_random_maps_differ() {
        let a = gen_random(12, 1);
        let b = gen_random(12, 2);
        assert_eq!(is_isomorphic(&a, &b), unrooted_code(&a) == unrooted_code(&b));
    }
}
