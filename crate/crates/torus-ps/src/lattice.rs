//! Minimal orientation of a homology class with respect to a root face.
//!
//! In the dual orientation, dual dart `d` runs from the face on the left of
//! `d` to the face on its right. Let `X` be the set of faces with a directed
//! dual path to `f0`. Every dual edge between `X` and the other faces leaves
//! `X`; reversing all of them pulls their far ends into `X`. Repeating until
//! `X` covers every face gives the minimum.

use crate::map::TorusMap;
use crate::orient::Orientation;

/// Returns the minimal orientation homologous to `d` and the number of
/// reversed edges.
pub fn minimize_counted(map: &TorusMap, d: &Orientation, f0: usize) -> (Orientation, usize) {
    let mut o = d.clone();
    let nf = map.f();
    let mut in_x = vec![false; nf];
    let mut stack = vec![f0];
    in_x[f0] = true;
    let mut cut = Vec::new();
    let mut reversed = 0;
    loop {
        while let Some(g) = stack.pop() {
            for x in map.face_darts(g) {
                if o.is_out(x) {
                    // dual arc g -> right of x; a cut candidate while that face is outside X
                    if !in_x[map.face_right(x)] {
                        cut.push(x);
                    }
                } else {
                    // the tail dart is twin(x), whose left face points at g
                    let h = map.face_right(x);
                    if !in_x[h] {
                        in_x[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        // the whole cut is reversed before any far end joins X
        cut.retain(|&x| !in_x[map.face_right(x)]);
        if cut.is_empty() {
            break;
        }
        for &x in &cut {
            o.reverse(x >> 1);
        }
        reversed += cut.len();
        for x in cut.drain(..) {
            let h = map.face_right(x);
            if !in_x[h] {
                in_x[h] = true;
                stack.push(h);
            }
        }
    }
    debug_assert!(in_x.iter().all(|&b| b));
    (o, reversed)
}

pub fn minimize(map: &TorusMap, d: &Orientation, f0: usize) -> Orientation {
    minimize_counted(map, d, f0).0
}

/// Every face reaches `f0` in the dual orientation.
pub fn is_minimal(map: &TorusMap, d: &Orientation, f0: usize) -> bool {
    minimize_counted(map, d, f0).1 == 0
}

fn reversed_all(d: &Orientation) -> Orientation {
    Orientation { tail: d.tail.iter().map(|&t| t ^ 1).collect() }
}

/// Maximal element of the class: reversing every edge exchanges clockwise
/// and counterclockwise, hence minimum and maximum.
pub fn maximize(map: &TorusMap, d: &Orientation, f0: usize) -> Orientation {
    reversed_all(&minimize(map, &reversed_all(d), f0))
}
