//! Exhaustive enumeration of 3-orientations and their homology classes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::map::homology::Homology;
use crate::map::TorusMap;
use crate::orient::Orientation;

/// Largest edge count accepted by the enumerators.
pub const ORACLE_MAX_EDGES: usize = 24;

/// Worker count: `TPS_THREADS` if set, otherwise the available parallelism.
pub fn threads() -> usize {
    std::env::var("TPS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|t| t.get()).unwrap_or(1))
}

fn check_cap(map: &TorusMap) -> Result<()> {
    if map.m() > ORACLE_MAX_EDGES {
        return Err(Error::OracleCap(map.m()));
    }
    Ok(())
}

/// Every 3-orientation, sorted by tail table.
///
/// Edges are decided in index order; a branch is cut as soon as some vertex
/// has more than three outgoing edges or can no longer reach three.
pub fn enumerate_three_orientations(map: &TorusMap) -> Result<Vec<Orientation>> {
    check_cap(map)?;
    let n = map.n();
    let m = map.m();
    let mut out = vec![0usize; n];
    let mut left = vec![0usize; n];
    for e in 0..m {
        let (a, b) = (map.vertex(2 * e), map.vertex(2 * e + 1));
        if a == b {
            out[a] += 1;
        } else {
            left[a] += 1;
            left[b] += 1;
        }
    }
    if (0..n).any(|v| out[v] > 3 || out[v] + left[v] < 3) {
        return Ok(Vec::new());
    }
    let mut tail = vec![0usize; m];
    let mut found = Vec::new();
    dfs(map, 0, &mut tail, &mut out, &mut left, &mut found);
    found.sort_by(|a: &Orientation, b| a.tail.cmp(&b.tail));
    Ok(found)
}

fn dfs(map: &TorusMap, e: usize, tail: &mut [usize], out: &mut [usize], left: &mut [usize], found: &mut Vec<Orientation>) {
    if e == tail.len() {
        found.push(Orientation { tail: tail.to_vec() });
        return;
    }
    let (a, b) = (map.vertex(2 * e), map.vertex(2 * e + 1));
    if a == b {
        // a loop adds one outgoing edge either way
        for d in [2 * e, 2 * e + 1] {
            tail[e] = d;
            dfs(map, e + 1, tail, out, left, found);
        }
        return;
    }
    left[a] -= 1;
    left[b] -= 1;
    for (d, v) in [(2 * e, a), (2 * e + 1, b)] {
        out[v] += 1;
        let w = a + b - v;
        if out[v] <= 3 && out[w] + left[w] >= 3 {
            tail[e] = d;
            dfs(map, e + 1, tail, out, left, found);
        }
        out[v] -= 1;
    }
    left[a] += 1;
    left[b] += 1;
}

/// Counts 3-orientations by testing all `2^m` assignments with bit masks,
/// split across [`threads`] workers. Independent of the search above.
pub fn count_three_orientations_brute(map: &TorusMap) -> Result<u64> {
    check_cap(map)?;
    let n = map.n();
    let m = map.m();
    // bit e set: edge e leaves the tail of its even dart
    let mut even = vec![0u32; n];
    let mut odd = vec![0u32; n];
    for e in 0..m {
        even[map.vertex(2 * e)] |= 1 << e;
        odd[map.vertex(2 * e + 1)] |= 1 << e;
    }
    let total: u64 = 1 << m;
    let workers = threads().min(64) as u64;
    let chunk = total.div_ceil(workers);
    let full: u32 = (1u32 << m) - 1;
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                let (even, odd) = (&even, &odd);
                s.spawn(move || {
                    let mut c = 0u64;
                    for x in k * chunk..((k + 1) * chunk).min(total) {
                        let x = x as u32;
                        let y = !x & full;
                        if (0..n).all(|v| (x & even[v]).count_ones() + (y & odd[v]).count_ones() == 3) {
                            c += 1;
                        }
                    }
                    c
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    }))
}

/// Homology key of an orientation: the voltage sum over its tail darts.
/// Two orientations share a key iff their difference is 0-homologous.
pub fn homology_key(hom: &Homology, d: &Orientation) -> [i64; 2] {
    d.tail.iter().fold([0, 0], |acc, &t| {
        let v = hom.voltage(t);
        [acc[0] + v[0], acc[1] + v[1]]
    })
}

/// Partition into homology classes, ordered by key; members keep their
/// input order.
pub fn homology_classes(map: &TorusMap, orients: &[Orientation]) -> Vec<Vec<Orientation>> {
    let hom = Homology::new(map);
    let mut by_key: BTreeMap<[i64; 2], Vec<Orientation>> = BTreeMap::new();
    for d in orients {
        by_key.entry(homology_key(&hom, d)).or_default().push(d.clone());
    }
    by_key.into_values().collect()
}
