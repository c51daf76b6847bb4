//! Building an HTC Schnyder wood from scratch and choosing a root angle.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::map::homology::Homology;
use crate::map::{edge_of, twin, Angle, Dart, TorusMap, Walk};
use crate::orient::{gamma, Orientation, SchnyderColoring};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub iterations: usize,
    pub initial_gamma: [i64; 2],
    pub attempts: usize,
    pub fallback_reversals: usize,
}

/// Some orientation where every vertex has outdegree 3.
///
/// Each edge first leaves the endpoint with the larger share of its quota
/// still open. Excess is then moved to vertices in deficit by reversing
/// directed paths, in phases of shortest augmenting paths over a layered
/// graph. The search runs over a flat per-vertex slot table rather than the
/// rotation system.
pub fn initial_three_orientation(map: &TorusMap) -> Result<Orientation> {
    let n = map.n();
    let nd = map.num_darts();
    let mut out = vec![0usize; n];
    let mut rem: Vec<usize> = (0..n).map(|v| map.degree(v)).collect();
    // slot of each dart; slots of a vertex are contiguous
    let mut start = vec![0usize; n + 1];
    for v in 0..n {
        start[v + 1] = start[v] + map.degree(v);
    }
    let mut slot = vec![0usize; nd];
    let mut head = vec![0u32; nd];
    for v in 0..n {
        for (i, d) in map.darts_at(v).enumerate() {
            slot[d] = start[v] + i;
            head[start[v] + i] = map.head(d) as u32;
        }
    }
    let mut mate = vec![0u32; nd];
    let mut is_out = vec![false; nd];
    for e in 0..map.m() {
        let (a, b) = (2 * e, 2 * e + 1);
        let (va, vb) = (map.vertex(a), map.vertex(b));
        let need = |v: usize| 3usize.saturating_sub(out[v]);
        let d = if need(vb) * rem[va] > need(va) * rem[vb] { b } else { a };
        out[map.vertex(d)] += 1;
        rem[va] -= 1;
        rem[vb] -= 1;
        is_out[slot[d]] = true;
        mate[slot[a]] = slot[b] as u32;
        mate[slot[b]] = slot[a] as u32;
    }
    let mut dist = vec![u32::MAX; n];
    let mut cur = vec![0usize; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut path: Vec<usize> = Vec::new();
    let mut owner = vec![0u32; nd];
    for v in 0..n {
        owner[start[v]..start[v + 1]].fill(v as u32);
    }
    loop {
        let excess: Vec<usize> = (0..n).filter(|&v| out[v] > 3).collect();
        if excess.is_empty() {
            break;
        }
        // layers: distance to a deficit vertex along outgoing edges
        dist.fill(u32::MAX);
        queue.clear();
        for v in 0..n {
            if out[v] < 3 {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        // stop once every excess vertex has a layer
        let mut missing = excess.len();
        'layers: while let Some(w) = queue.pop_front() {
            for s in start[w]..start[w + 1] {
                // the edge comes into w when the far slot is outgoing
                if !is_out[s] {
                    let u = head[s] as usize;
                    if dist[u] == u32::MAX {
                        dist[u] = dist[w] + 1;
                        queue.push_back(u);
                        if out[u] > 3 {
                            missing -= 1;
                            if missing == 0 {
                                break 'layers;
                            }
                        }
                    }
                }
            }
        }
        if excess.iter().all(|&s| dist[s] == u32::MAX) {
            return Err(Error::NoThreeOrientation);
        }
        cur.copy_from_slice(&start[..n]);
        for s in excess {
            while out[s] > 3 && dist[s] != u32::MAX {
                path.clear();
                let mut v = s;
                let reached = loop {
                    if dist[v] == 0 {
                        break out[v] < 3;
                    }
                    let mut step = None;
                    while cur[v] < start[v + 1] {
                        let x = cur[v];
                        let w = head[x] as usize;
                        if is_out[x] && dist[w] != u32::MAX && dist[w] + 1 == dist[v] {
                            step = Some(x);
                            break;
                        }
                        cur[v] += 1;
                    }
                    match step {
                        Some(x) => {
                            path.push(x);
                            v = head[x] as usize;
                        }
                        None => {
                            // dead end: retreat
                            dist[v] = u32::MAX;
                            match path.pop() {
                                Some(x) => v = owner[x] as usize,
                                None => break false,
                            }
                        }
                    }
                };
                if !reached {
                    if v == s && path.is_empty() && dist[s] == u32::MAX {
                        break;
                    }
                    // the endpoint filled up earlier in this phase
                    dist[v] = u32::MAX;
                    continue;
                }
                for &x in &path {
                    is_out[x] = false;
                    is_out[mate[x] as usize] = true;
                }
                out[s] -= 1;
                out[v] += 1;
            }
        }
    }
    if out.iter().any(|&k| k != 3) {
        return Err(Error::NoThreeOrientation);
    }
    let tail = (0..map.m()).map(|e| if is_out[slot[2 * e]] { 2 * e } else { 2 * e + 1 }).collect();
    Ok(Orientation { tail })
}

/// Second outgoing dart met turning ccw from `inn`.
fn middle_out(map: &TorusMap, o: &Orientation, inn: Dart) -> Dart {
    let mut seen = 0;
    let mut x = map.next_ccw(inn);
    loop {
        if o.is_out(x) {
            seen += 1;
            if seen == 2 {
                return x;
            }
        }
        x = map.next_ccw(x);
    }
}

fn gammas(map: &TorusMap, o: &Orientation, hom: &Homology) -> [i64; 2] {
    [gamma(map, o, &hom.basis.b1), gamma(map, o, &hom.basis.b2)]
}

fn cost(g: [i64; 2]) -> i64 {
    g[0].abs() + g[1].abs()
}

/// Reverses `cycle` if that strictly lowers `|γ(b1)| + |γ(b2)|`.
fn try_reverse(map: &TorusMap, o: &mut Orientation, hom: &Homology, cycle: &[Dart], g: &mut [i64; 2]) -> bool {
    o.reverse_walk(cycle);
    let g2 = gammas(map, o, hom);
    if cost(g2) < cost(*g) {
        *g = g2;
        true
    } else {
        o.reverse_walk(cycle);
        false
    }
}

/// Turns a 3-orientation into an HTC one by reversing directed
/// non-contractible cycles until γ vanishes on both basis cycles.
///
/// Candidates are middle cycles: follow, from each arrival, the second
/// outgoing dart in ccw order until an arrival dart repeats. A reversal is
/// kept only when it lowers `|γ(b1)| + |γ(b2)|`. When a whole round of middle
/// cycles gives nothing, directed cycles of small classes are searched in the
/// universal cover.
pub fn make_htc(map: &TorusMap, d: &Orientation, hom: &Homology) -> Result<(Orientation, BuildReport)> {
    let mut o = d.clone();
    let mut g = gammas(map, &o, hom);
    let mut rep = BuildReport { initial_gamma: g, ..Default::default() };
    let nd = map.num_darts();
    let bound = 64 * map.m();
    let mut visited = vec![0usize; nd];
    let mut pos = vec![0usize; nd];
    let mut round = 0;
    while cost(g) != 0 {
        round += 1;
        let mut improved = false;
        for start in 0..nd {
            if !o.is_out(start) || visited[start] == round {
                continue;
            }
            rep.attempts += 1;
            if rep.attempts > bound {
                return Err(Error::HtcExhausted);
            }
            let mut path = Vec::new();
            let mut x = start;
            while visited[x] != round {
                visited[x] = round;
                pos[x] = path.len();
                path.push(x);
                x = middle_out(map, &o, twin(x));
            }
            // x was reached before; it closes a new cycle only if it lies on this path
            if pos[x] >= path.len() || path[pos[x]] != x {
                continue;
            }
            let cycle = &path[pos[x]..];
            if hom.walk_voltage(cycle) == [0, 0] {
                continue;
            }
            if try_reverse(map, &mut o, hom, cycle, &mut g) {
                rep.iterations += 1;
                improved = true;
                break;
            }
        }
        if !improved && cost(g) != 0 {
            if let Some(c) = cover_cycle(map, &o, hom, g) {
                let ok = try_reverse(map, &mut o, hom, &c, &mut g);
                debug_assert!(ok);
                rep.iterations += 1;
                rep.fallback_reversals += 1;
            } else {
                return Err(Error::HtcExhausted);
            }
        }
    }
    Ok((o, rep))
}

/// Searches the `Z^2` cover of the directed graph for an edge-simple directed
/// closed walk whose reversal lowers the γ cost.
fn cover_cycle(map: &TorusMap, o: &Orientation, hom: &Homology, g: [i64; 2]) -> Option<Vec<Dart>> {
    const CLASSES: [[i64; 2]; 8] = [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, -1], [1, -1], [-1, 1]];
    let mut trial = o.clone();
    for v in 0..map.n() {
        let paths = cover_bfs(map, o, hom, v, 4 * map.n() + 16);
        for c in CLASSES {
            let Some(walk) = paths.get(&c) else { continue };
            let mut edges: Vec<usize> = walk.iter().map(|&d| edge_of(d)).collect();
            edges.sort_unstable();
            if edges.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            trial.reverse_walk(walk);
            let better = cost(gammas(map, &trial, hom)) < cost(g);
            trial.reverse_walk(walk);
            if better {
                return Some(walk.clone());
            }
        }
    }
    None
}

/// Directed BFS in the cover from the lift of `v` at the origin; returns, per
/// class, a dart walk from `v` to its lift translated by that class.
fn cover_bfs(map: &TorusMap, o: &Orientation, hom: &Homology, v: usize, cap: usize) -> HashMap<[i64; 2], Vec<Dart>> {
    let mut via: HashMap<(usize, [i64; 2]), Dart> = HashMap::new();
    let mut queue = VecDeque::from([(v, [0i64, 0])]);
    let mut found = HashMap::new();
    via.insert((v, [0, 0]), usize::MAX);
    while let Some((x, p)) = queue.pop_front() {
        if via.len() > cap || found.len() == 8 {
            break;
        }
        for d in map.darts_at(x) {
            if !o.is_out(d) {
                continue;
            }
            let g = hom.voltage(d);
            let state = (map.head(d), [p[0] + g[0], p[1] + g[1]]);
            if via.contains_key(&state) {
                continue;
            }
            via.insert(state, d);
            if state.0 == v && state.1[0].abs() <= 1 && state.1[1].abs() <= 1 {
                let mut walk = Vec::new();
                let mut s = state;
                while let Some(&dd) = via.get(&s).filter(|&&dd| dd != usize::MAX) {
                    walk.push(dd);
                    let gv = hom.voltage(dd);
                    s = (map.vertex(dd), [s.1[0] - gv[0], s.1[1] - gv[1]]);
                }
                walk.reverse();
                found.entry(state.1).or_insert(walk);
            }
            queue.push_back(state);
        }
    }
    found
}

/// Root angle: follow color-0 edges until a vertex repeats, then take the
/// angle just before the first outgoing dart at that vertex.
pub fn pick_root(map: &TorusMap, o: &Orientation, c: &SchnyderColoring) -> Angle {
    let v0 = monochromatic_landing(map, o, c, 0, 0);
    let d = map.darts_at(v0).find(|&d| o.is_out(d)).expect("3-orientation");
    map.angle(d)
}

/// Minimal HTC Schnyder wood rooted at an angle of the landing vertex.
///
/// The angle is the first one at that vertex, in ccw order from its first
/// dart, whose dart is outgoing once the class is minimized toward the face
/// of that angle.
pub fn minimal_rooted(map: &TorusMap, hom: &Homology) -> Result<(Orientation, Angle, BuildReport)> {
    let d = initial_three_orientation(map)?;
    let (d, report) = make_htc(map, &d, hom)?;
    let c = crate::orient::color_edges(map, &d)?;
    let v0 = monochromatic_landing(map, &d, &c, 0, 0);
    for x in map.darts_at(v0) {
        let a = map.angle(x);
        let m = crate::lattice::minimize(map, &d, map.angle_face(a));
        if m.is_out(x) {
            return Ok((m, a, report));
        }
    }
    Err(Error::Other("no root angle with an outgoing dart".into()))
}

/// First vertex met twice on the color-`i` path from `start`.
pub fn monochromatic_landing(map: &TorusMap, o: &Orientation, c: &SchnyderColoring, i: u8, start: usize) -> usize {
    let mut seen = vec![false; map.n()];
    let mut v = start;
    while !seen[v] {
        seen[v] = true;
        let d = map.darts_at(v).find(|&d| o.is_out(d) && c.color[edge_of(d)] == i).expect("one edge per color");
        v = map.head(d);
    }
    v
}

/// The color-`i` cycle through `v`, which must lie on one.
pub fn monochromatic_cycle_at(map: &TorusMap, o: &Orientation, c: &SchnyderColoring, i: u8, v: usize) -> Walk {
    let mut darts = Vec::new();
    let mut x = v;
    loop {
        let d = map.darts_at(x).find(|&d| o.is_out(d) && c.color[edge_of(d)] == i).unwrap();
        darts.push(d);
        x = map.head(d);
        if x == v {
            break;
        }
    }
    Walk::closed(darts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random, nested_k7};
    use crate::orient::{color_edges, is_htc, is_three_orientation};

    #[test]
    fn initial_orientation_has_outdegree_three() {
        for g in [gen_one_vertex(), gen_k7(), gen_random(80, 3), nested_k7().0] {
            let o = initial_three_orientation(&g).unwrap();
            assert!(is_three_orientation(&g, &o));
        }
    }

    #[test]
    fn htc_build_is_schnyder() {
        for seed in 0..40u64 {
            let g = gen_random(3 + seed as usize * 2, seed);
            let h = Homology::new(&g);
            let o = initial_three_orientation(&g).unwrap();
            let (htc, rep) = make_htc(&g, &o, &h).unwrap();
            assert!(is_three_orientation(&g, &htc));
            assert!(is_htc(&g, &htc, &h.basis), "seed {seed} {rep:?}");
            color_edges(&g, &htc).unwrap();
        }
    }

    #[test]
    fn already_htc_is_fixed_point() {
        let g = gen_k7();
        let h = Homology::new(&g);
        let (o, _) = make_htc(&g, &initial_three_orientation(&g).unwrap(), &h).unwrap();
        let (o2, rep) = make_htc(&g, &o, &h).unwrap();
        assert_eq!(o, o2);
        assert_eq!(rep.iterations, 0);
    }
}
