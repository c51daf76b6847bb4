//! Homology of closed walks on the torus.
//!
//! A tree-cotree split gives a spanning tree of the dual (the cotree), a
//! spanning tree of the primal on the remaining edges, and exactly two leftover
//! edges. Their fundamental cycles form the basis `(b1, b2)`.
//!
//! Two independent tests decide contractibility:
//! * crossing signatures against `b1` and `b2`, computed from local rotations;
//! * a `Z^2` voltage on darts (tree edges 0, leftover edges unit vectors,
//!   cotree edges solved so that every face sums to zero).

use super::{edge_of, twin, Dart, TorusMap, Walk};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    pub b1: Walk,
    pub b2: Walk,
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub basis: HomologyBasis,
    volt: Vec<[i64; 2]>,
    on_basis: [Vec<i8>; 2],
    pub leftover: [usize; 2],
    pub cotree: Vec<bool>,
}

impl Homology {
    pub fn new(map: &TorusMap) -> Homology {
        let nd = map.num_darts();
        let m = map.m();
        let nf = map.f();

        // cotree: BFS spanning tree of the dual
        let mut cotree = vec![false; m];
        let mut fseen = vec![false; nf];
        let mut forder = Vec::with_capacity(nf);
        let mut fparent: Vec<Dart> = vec![usize::MAX; nf];
        fseen[0] = true;
        forder.push(0);
        let mut qi = 0;
        while qi < forder.len() {
            let f = forder[qi];
            qi += 1;
            for d in map.face_darts(f) {
                let g = map.face_right(d);
                if !fseen[g] {
                    fseen[g] = true;
                    cotree[edge_of(d)] = true;
                    fparent[g] = twin(d);
                    forder.push(g);
                }
            }
        }

        // primal tree on the remaining edges
        let n = map.n();
        let mut tree = vec![false; m];
        let mut vparent: Vec<Dart> = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut vseen = vec![false; n];
        let mut vorder = vec![0];
        vseen[0] = true;
        let mut qi = 0;
        while qi < vorder.len() {
            let v = vorder[qi];
            qi += 1;
            for d in map.darts_at(v) {
                if cotree[edge_of(d)] {
                    continue;
                }
                let w = map.head(d);
                if !vseen[w] {
                    vseen[w] = true;
                    tree[edge_of(d)] = true;
                    vparent[w] = twin(d);
                    depth[w] = depth[v] + 1;
                    vorder.push(w);
                }
            }
        }
        let left: Vec<usize> = (0..m).filter(|&e| !tree[e] && !cotree[e]).collect();
        assert_eq!(left.len(), 2, "torus map must leave two edges outside tree and cotree");
        let leftover = [left[0], left[1]];

        // voltages on reference darts 2e
        let mut val = vec![[0i64; 2]; m];
        val[leftover[0]] = [1, 0];
        val[leftover[1]] = [0, 1];
        let dv = |val: &Vec<[i64; 2]>, d: Dart| -> [i64; 2] {
            let x = val[edge_of(d)];
            if d & 1 == 0 {
                x
            } else {
                [-x[0], -x[1]]
            }
        };
        for &g in forder.iter().skip(1).rev() {
            let pd = fparent[g];
            let mut s = [0i64; 2];
            for d in map.face_darts(g) {
                if d != pd {
                    let x = dv(&val, d);
                    s[0] += x[0];
                    s[1] += x[1];
                }
            }
            // voltage(pd) = -s
            let e = edge_of(pd);
            val[e] = if pd & 1 == 0 { [-s[0], -s[1]] } else { s };
        }
        let mut volt = vec![[0i64; 2]; nd];
        for (d, v) in volt.iter_mut().enumerate() {
            *v = dv(&val, d);
        }

        let fundamental = |e: usize| -> Walk {
            let d = 2 * e;
            let (x, y) = (map.vertex(d), map.head(d));
            // climb from y and x to their common ancestor
            let mut up_y = Vec::new();
            let mut down_x = Vec::new();
            let (mut a, mut b) = (y, x);
            while depth[a] > depth[b] {
                up_y.push(vparent[a]);
                a = map.head(vparent[a]);
            }
            while depth[b] > depth[a] {
                down_x.push(twin(vparent[b]));
                b = map.head(vparent[b]);
            }
            while a != b {
                up_y.push(vparent[a]);
                a = map.head(vparent[a]);
                down_x.push(twin(vparent[b]));
                b = map.head(vparent[b]);
            }
            let mut darts = vec![d];
            darts.extend(up_y);
            darts.extend(down_x.into_iter().rev());
            Walk::closed(darts)
        };
        let b1 = fundamental(leftover[0]);
        let b2 = fundamental(leftover[1]);
        let mut on_basis = [vec![0i8; nd], vec![0i8; nd]];
        for (i, b) in [&b1, &b2].into_iter().enumerate() {
            for &d in &b.darts {
                on_basis[i][d] = 1;
                on_basis[i][twin(d)] = -1;
            }
        }
        Homology { basis: HomologyBasis { b1, b2 }, volt, on_basis, leftover, cotree }
    }

    #[inline]
    pub fn voltage(&self, d: Dart) -> [i64; 2] {
        self.volt[d]
    }

    pub fn voltages(&self) -> &[[i64; 2]] {
        &self.volt
    }

    pub fn walk_voltage(&self, darts: &[Dart]) -> [i64; 2] {
        let mut s = [0i64; 2];
        for &d in darts {
            s[0] += self.volt[d][0];
            s[1] += self.volt[d][1];
        }
        s
    }

    /// Contractibility decided by the crossing signatures against the basis.
    pub fn is_contractible(&self, map: &TorusMap, w: &Walk) -> bool {
        crossing_signature(map, w, &self.basis.b1) == 0 && crossing_signature(map, w, &self.basis.b2) == 0
    }

    /// Contractibility decided by the voltage sum.
    pub fn is_contractible_by_voltage(&self, w: &Walk) -> bool {
        self.walk_voltage(&w.darts) == [0, 0]
    }

    /// Signed crossings of a dual dart with `(b1, b2)`: dual dart `d` crosses
    /// `edge_of(d)` from the left of `d` to its right.
    #[inline]
    pub fn dual_weight(&self, d: Dart) -> [i64; 2] {
        [self.on_basis[0][d] as i64, self.on_basis[1][d] as i64]
    }

    /// Intersection numbers of a closed dual walk (given by primal dart ids)
    /// with the two basis cycles.
    pub fn dual_class(&self, darts: &[Dart]) -> [i64; 2] {
        let mut s = [0i64; 2];
        for &d in darts {
            let w = self.dual_weight(d);
            s[0] += w[0];
            s[1] += w[1];
        }
        s
    }

    /// Looks for a contractible loop or 2-cycle through the given vertices.
    /// Returns the cycle length found.
    pub fn short_contractible_cycle(&self, map: &TorusMap, verts: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut keys: Vec<(usize, [i64; 2])> = Vec::new();
        for v in verts {
            keys.clear();
            for d in map.darts_at(v) {
                let k = (map.head(d), self.volt[d]);
                if k.0 == v && k.1 == [0, 0] {
                    return Some(1);
                }
                keys.push(k);
            }
            keys.sort_unstable();
            if keys.windows(2).any(|w| w[0] == w[1]) {
                return Some(2);
            }
        }
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Off,
    Left,
    Right,
    On,
}

/// Left-to-right minus right-to-left crossings of the closed walk `w` over the
/// simple closed walk `b`. Stretches where `w` runs along `b` count once, by
/// comparing the side it arrives from with the side it leaves to.
pub fn crossing_signature(map: &TorusMap, w: &Walk, b: &Walk) -> i64 {
    let nd = map.num_darts();
    let nv = map.n();
    let mut on_vertex = vec![false; nv];
    let mut on_edge = vec![false; nd / 2];
    let mut side = vec![Side::Off; nd];
    let k = b.darts.len();
    for i in 0..k {
        let q = b.darts[i];
        let p = twin(b.darts[(i + k - 1) % k]);
        let x = map.vertex(q);
        on_vertex[x] = true;
        on_edge[edge_of(q)] = true;
        side[p] = Side::On;
        side[q] = Side::On;
        // darts strictly ccw between q and p are on the left
        let mut d = map.next_ccw(q);
        while d != p {
            side[d] = Side::Left;
            d = map.next_ccw(d);
        }
        let mut d = map.next_ccw(p);
        while d != q {
            side[d] = Side::Right;
            d = map.next_ccw(d);
        }
    }
    let l = w.darts.len();
    let onb: Vec<bool> = w.darts.iter().map(|&d| on_edge[edge_of(d)]).collect();
    let Some(s) = onb.iter().position(|&x| !x) else {
        return 0;
    };
    let mut total = 0i64;
    let mut i = s + 1;
    let end = s + 1 + l;
    while i < end {
        let prev = w.darts[(i - 1) % l];
        let x = map.head(prev);
        if !on_vertex[x] {
            i += 1;
            continue;
        }
        let entry = side[twin(prev)];
        let mut j = i;
        while onb[j % l] {
            j += 1;
        }
        let exit = side[w.darts[j % l]];
        match (entry, exit) {
            (Side::Left, Side::Right) => total += 1,
            (Side::Right, Side::Left) => total -= 1,
            _ => {}
        }
        i = j + 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random};

    fn check_basis(map: &TorusMap) {
        let h = Homology::new(map);
        let (b1, b2) = (&h.basis.b1, &h.basis.b2);
        assert!(!h.is_contractible(map, b1));
        assert!(!h.is_contractible(map, b2));
        let s12 = crossing_signature(map, b1, b2);
        let s21 = crossing_signature(map, b2, b1);
        assert_eq!(crossing_signature(map, b1, b1), 0);
        assert_eq!(crossing_signature(map, b2, b2), 0);
        assert_eq!((s12 * s21).abs(), 1, "basis matrix must be unimodular");
        assert_eq!(s12, -s21);
        for f in 0..map.f() {
            let fw = map.face_walk(f);
            assert_eq!(crossing_signature(map, &fw, b1), 0);
            assert_eq!(crossing_signature(map, &fw, b2), 0);
            assert_eq!(h.walk_voltage(&fw.darts), [0, 0]);
        }
        assert_eq!(h.walk_voltage(&b1.darts), [1, 0]);
        assert_eq!(h.walk_voltage(&b2.darts), [0, 1]);
    }

    #[test]
    fn basis_of_fixtures() {
        check_basis(&gen_one_vertex());
        check_basis(&gen_k7());
        for seed in 0..20 {
            check_basis(&gen_random(3 + seed as usize, seed));
        }
    }

    #[test]
    fn loops_of_one_vertex_map_are_noncontractible() {
        let g = gen_one_vertex();
        let h = Homology::new(&g);
        for e in 0..3 {
            let w = Walk::closed(vec![2 * e]);
            assert!(!h.is_contractible(&g, &w));
            assert!(!h.is_contractible_by_voltage(&w));
        }
    }

    #[test]
    fn reversed_walk_negates_signature() {
        let g = gen_random(30, 7);
        let h = Homology::new(&g);
        let w = h.basis.b2.clone();
        let r = w.reversed();
        assert_eq!(crossing_signature(&g, &w, &h.basis.b1), -crossing_signature(&g, &r, &h.basis.b1));
    }

    /// Random closed walks: signature against each basis cycle equals the
    /// voltage coordinate times the basis intersection number.
    #[test]
    fn signature_agrees_with_voltage() {
        use rand::{Rng, SeedableRng};
        for seed in 0..10u64 {
            let g = gen_random(12 + seed as usize, seed);
            let h = Homology::new(&g);
            let s12 = crossing_signature(&g, &h.basis.b1, &h.basis.b2);
            let s21 = crossing_signature(&g, &h.basis.b2, &h.basis.b1);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..200 {
                // random walk closed up through a shortest return path
                let mut darts = Vec::new();
                let start = rng.gen_range(0..g.n());
                let mut v = start;
                for _ in 0..rng.gen_range(1..20) {
                    let ds: Vec<_> = g.darts_at(v).collect();
                    let d = ds[rng.gen_range(0..ds.len())];
                    darts.push(d);
                    v = g.head(d);
                }
                darts.extend(crate::oracle::shortest_path(&g, v, start));
                let w = Walk::closed(darts);
                let [x, y] = h.walk_voltage(&w.darts);
                assert_eq!(crossing_signature(&g, &w, &h.basis.b1), y * s21);
                assert_eq!(crossing_signature(&g, &w, &h.basis.b2), x * s12);
            }
        }
    }
}
