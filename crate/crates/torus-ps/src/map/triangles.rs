//! Separating triangles: contractible 3-cycles that are not faces.

use std::collections::{HashMap, HashSet};

use super::homology::Homology;
use super::{edge_of, twin, Angle, Dart, TorusMap};

#[derive(Clone, Debug)]
pub struct SeparatingTriangle {
    /// Darts of the triangle, oriented with the disk on their left.
    pub darts: [Dart; 3],
    pub interior_faces: Vec<usize>,
    pub interior_vertices: Vec<usize>,
}

/// All separating triangles of a triangulation with per-angle predicates.
#[derive(Clone, Debug)]
pub struct TriangleRegions {
    pub triangles: Vec<SeparatingTriangle>,
    strict: Vec<bool>,
    cw: Vec<bool>,
}

impl TriangleRegions {
    pub fn new(map: &TorusMap, hom: &Homology) -> TriangleRegions {
        let triangles = separating_triangles(map, hom);
        let mut strict = vec![false; map.n()];
        let mut cw = vec![false; map.num_darts()];
        for t in &triangles {
            for &v in &t.interior_vertices {
                strict[v] = true;
            }
            let tv: Vec<usize> = t.darts.iter().map(|&d| map.vertex(d)).collect();
            let te: Vec<usize> = t.darts.iter().map(|&d| edge_of(d)).collect();
            let mut inside = vec![false; map.f()];
            for &f in &t.interior_faces {
                inside[f] = true;
            }
            for (d, flag) in cw.iter_mut().enumerate() {
                let a = map.angle(d);
                if !inside[map.angle_face(a)] {
                    continue;
                }
                if tv.contains(&a.vertex) && te.contains(&edge_of(d)) {
                    continue;
                }
                *flag = true;
            }
        }
        TriangleRegions { triangles, strict, cw }
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// The angle sits in the disk of a separating triangle at a vertex that is
    /// not on that triangle.
    pub fn angle_in_strict_interior(&self, a: Angle) -> bool {
        self.strict[a.vertex]
    }

    /// The angle sits in the disk of a separating triangle, except for angles
    /// at a triangle vertex lying just before a triangle edge in ccw order.
    pub fn angle_in_cw_interior(&self, a: Angle) -> bool {
        self.cw[a.dart]
    }

    pub fn vertex_strictly_inside(&self, v: usize) -> bool {
        self.strict[v]
    }
}

fn is_face(map: &TorusMap, t: [Dart; 3]) -> bool {
    let left = map.phi(t[0]) == t[1] && map.phi(t[1]) == t[2] && map.phi(t[2]) == t[0];
    let r = [twin(t[2]), twin(t[1]), twin(t[0])];
    let right = map.phi(r[0]) == r[1] && map.phi(r[1]) == r[2] && map.phi(r[2]) == r[0];
    left || right
}

/// Faces reachable from the left of `t[0]` without crossing the triangle,
/// together with the vertices strictly inside and the Euler characteristic.
fn region(map: &TorusMap, t: [Dart; 3]) -> (Vec<usize>, Vec<usize>, i64) {
    let te: HashSet<usize> = t.iter().map(|&d| edge_of(d)).collect();
    let tv: HashSet<usize> = t.iter().map(|&d| map.vertex(d)).collect();
    let mut seen = HashSet::new();
    let start = map.face_of(t[0]);
    let mut stack = vec![start];
    seen.insert(start);
    let mut faces = Vec::new();
    while let Some(f) = stack.pop() {
        faces.push(f);
        for d in map.face_darts(f) {
            if te.contains(&edge_of(d)) {
                continue;
            }
            let g = map.face_right(d);
            if seen.insert(g) {
                stack.push(g);
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
    let mut verts: Vec<usize> = verts.into_iter().collect();
    verts.sort_unstable();
    faces.sort_unstable();
    (faces, verts, chi)
}

/// Scans every path of two darts for a closing third dart; keeps contractible
/// non-facial triangles on three distinct vertices.
pub fn separating_triangles(map: &TorusMap, hom: &Homology) -> Vec<SeparatingTriangle> {
    let mut by_ends: HashMap<(usize, usize), Vec<Dart>> = HashMap::new();
    for d in 0..map.num_darts() {
        by_ends.entry((map.vertex(d), map.head(d))).or_default().push(d);
    }
    let mut seen: HashSet<[usize; 3]> = HashSet::new();
    let mut out = Vec::new();
    for d1 in 0..map.num_darts() {
        let (u, v) = (map.vertex(d1), map.head(d1));
        if u == v {
            continue;
        }
        for d2 in map.darts_at(v) {
            let w = map.head(d2);
            if w == u || w == v {
                continue;
            }
            let Some(closing) = by_ends.get(&(w, u)) else { continue };
            for &d3 in closing {
                let t = [d1, d2, d3];
                if hom.walk_voltage(&t) != [0, 0] {
                    continue;
                }
                let mut key = [edge_of(d1), edge_of(d2), edge_of(d3)];
                key.sort_unstable();
                if !seen.insert(key) {
                    continue;
                }
                if is_face(map, t) {
                    continue;
                }
                let (faces, verts, chi) = region(map, t);
                let (darts, faces, verts) = if chi == 1 {
                    (t, faces, verts)
                } else {
                    let r = [twin(d3), twin(d2), twin(d1)];
                    let (f2, v2, chi2) = region(map, r);
                    debug_assert_eq!(chi2, 1);
                    (r, f2, v2)
                };
                out.push(SeparatingTriangle { darts, interior_faces: faces, interior_vertices: verts });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex, nested_k7};

    #[test]
    fn none_in_k7_or_one_vertex() {
        for g in [gen_k7(), gen_one_vertex()] {
            let h = Homology::new(&g);
            assert!(separating_triangles(&g, &h).is_empty());
        }
    }

    #[test]
    fn nested_insertion_is_detected() {
        let (g, outer, inner) = nested_k7();
        let h = Homology::new(&g);
        let r = TriangleRegions::new(&g, &h);
        // the outer face of K7 becomes a separating triangle holding two
        // vertices; the first inserted vertex's inner face holds one more
        assert_eq!(r.triangles.len(), 2);
        let big = r.triangles.iter().max_by_key(|t| t.interior_vertices.len()).unwrap();
        assert_eq!(big.interior_vertices, {
            let mut v = vec![outer, inner];
            v.sort();
            v
        });
        for d in g.darts_at(inner) {
            assert!(r.angle_in_strict_interior(g.angle(d)));
            assert!(r.angle_in_cw_interior(g.angle(d)));
        }
        for v in 0..7 {
            for d in g.darts_at(v) {
                assert!(!r.angle_in_strict_interior(g.angle(d)));
            }
        }
    }
}
