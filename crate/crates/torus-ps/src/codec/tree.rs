//! Trees with two stems per vertex, their words, and the two special edges.

use crate::closure::{orient_from_root, strip_root_stem};
use crate::error::{Error, Result};
use crate::ps::UnicellularMap;

/// Where a special edge goes: its stem among the stems met along the walk
/// from the root (the root stem counts and comes last), and the corner
/// receiving its other end, as the index of the walk item leaving that
/// corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialRecord {
    pub stem_index: usize,
    pub target_angle_index: usize,
}

/// Builds a map from rotations over arbitrary labels. `mate[l]` is `None`
/// for stems. Edges are numbered by their smaller label, stems after.
fn assemble(rot: &[Vec<usize>], mate: &[Option<usize>], root: usize) -> (UnicellularMap, Vec<usize>) {
    let nl = mate.len();
    let mut id = vec![usize::MAX; nl];
    let present: Vec<bool> = {
        let mut p = vec![false; nl];
        rot.iter().flatten().for_each(|&l| p[l] = true);
        p
    };
    let mut k = 0;
    for l in 0..nl {
        if present[l] && id[l] == usize::MAX {
            if let Some(m) = mate[l] {
                id[l] = k;
                id[m] = k + 1;
                k += 2;
            }
        }
    }
    let edges = k / 2;
    for l in 0..nl {
        if present[l] && mate[l].is_none() {
            id[l] = k;
            k += 1;
        }
    }
    let r: Vec<Vec<usize>> = rot.iter().map(|v| v.iter().map(|&l| id[l]).collect()).collect();
    (UnicellularMap::from_rotations(&r, edges, Some(id[root])), id)
}

/// Cuts the two edges outside the discovery tree into stems, records how
/// to put them back and removes the root stem.
pub fn cut_special_edges(u: &UnicellularMap) -> Result<(UnicellularMap, [SpecialRecord; 2])> {
    let n = u.n();
    let r = u.root.ok_or(Error::RootStemAbsent)?;
    if !u.is_stem(r) {
        return Err(Error::RootStemAbsent);
    }
    if u.edges != n + 1 || u.face_count() != 1 {
        return Err(Error::NotUnicellular);
    }
    let tails = orient_from_root(u)?;
    let mut is_tail = vec![false; u.num_halves()];
    tails.iter().for_each(|&h| is_tail[h] = true);

    // the walk taken backwards from the root stem reaches vert[h] along h
    let walk = u.root_walk().unwrap();
    let mut reached = vec![false; n];
    reached[u.vert[r]] = true;
    let mut in_tree = vec![false; u.edges];
    for &h in walk.iter().rev() {
        if u.is_stem(h) || reached[u.vert[h]] {
            continue;
        }
        if !is_tail[h] {
            return Err(Error::NoSpanningTree);
        }
        reached[u.vert[h]] = true;
        in_tree[h / 2] = true;
    }
    if reached.iter().any(|&x| !x) {
        return Err(Error::NoSpanningTree);
    }
    let special: Vec<usize> = (0..u.edges).filter(|&e| !in_tree[e]).collect();
    debug_assert_eq!(special.len(), 2);
    let heads: Vec<usize> = special.iter().map(|&e| if is_tail[2 * e] { 2 * e + 1 } else { 2 * e }).collect();

    let mate: Vec<Option<usize>> =
        (0..u.num_halves()).map(|h| if u.is_stem(h) || !in_tree[h / 2] { None } else { Some(h ^ 1) }).collect();
    let rot: Vec<Vec<usize>> =
        u.rotations().into_iter().map(|v| v.into_iter().filter(|h| !heads.contains(h)).collect()).collect();
    let (full, id) = assemble(&rot, &mate, r);

    let fw = full.root_walk().unwrap();
    let mut pos = vec![usize::MAX; full.num_halves()];
    let mut stem_rank = vec![usize::MAX; full.num_halves()];
    let mut ns = 0;
    for (i, &h) in fw.iter().enumerate() {
        pos[h] = i;
        if full.is_stem(h) {
            stem_rank[h] = ns;
            ns += 1;
        }
    }
    // corner of each removed head: the nearest kept half before it
    let anchor = |h: usize| -> (usize, usize) {
        let mut x = u.prev[h];
        let mut skipped = 0;
        while heads.contains(&x) {
            x = u.prev[x];
            skipped += 1;
        }
        (x, skipped)
    };
    let mut recs: Vec<(SpecialRecord, usize)> = special
        .iter()
        .zip(&heads)
        .map(|(&e, &h)| {
            let stem = h ^ 1;
            debug_assert_eq!(stem / 2, e);
            let (a, skipped) = anchor(h);
            (SpecialRecord { stem_index: stem_rank[id[stem]], target_angle_index: pos[id[a]] }, skipped)
        })
        .collect();
    // heads sharing a corner are inserted in record order, each right
    // after the anchor, so the farther one goes first
    if recs[0].0.target_angle_index == recs[1].0.target_angle_index {
        recs.sort_by_key(|x| std::cmp::Reverse(x.1));
    } else {
        recs.sort_by_key(|x| x.0.stem_index);
    }
    let tree = strip_root_stem(&full)?;
    Ok((tree, [recs[0].0, recs[1].0]))
}

/// Inverse of [`cut_special_edges`].
pub fn reattach(tree: &UnicellularMap, recs: &[SpecialRecord; 2]) -> Result<UnicellularMap> {
    let root = tree.root.ok_or(Error::InvalidWord)?;
    let nh = tree.num_halves();
    // s0 goes right before the root half
    let s0 = nh;
    let mut rot = tree.rotations();
    let v0 = tree.vert[root];
    let k = rot[v0].iter().position(|&h| h == root).unwrap();
    rot[v0].insert(k, s0);
    let mut mate: Vec<Option<usize>> = (0..nh).map(|h| (!tree.is_stem(h)).then(|| h ^ 1)).collect();
    mate.push(None);
    let (full, _) = assemble(&rot, &mate, s0);
    let fw = full.root_walk().unwrap();
    let stems: Vec<usize> = fw.iter().copied().filter(|&h| full.is_stem(h)).collect();
    if recs[0].stem_index == recs[1].stem_index {
        return Err(Error::InvalidWord);
    }
    let mut rot = full.rotations();
    let mut mate: Vec<Option<usize>> = (0..full.num_halves()).map(|h| (!full.is_stem(h)).then(|| h ^ 1)).collect();
    for rec in recs {
        let (Some(&s), Some(&w)) = (stems.get(rec.stem_index), fw.get(rec.target_angle_index)) else {
            return Err(Error::InvalidWord);
        };
        if s == full.root.unwrap() {
            return Err(Error::InvalidWord);
        }
        let head = mate.len();
        mate.push(Some(s));
        mate[s] = Some(head);
        let v = full.vert[w];
        let k = rot[v].iter().position(|&h| h == w).unwrap();
        rot[v].insert(k + 1, head);
    }
    Ok(assemble(&rot, &mate, full.root.unwrap()).0)
}

/// Walk from the root: `1` down an edge, `0` up an edge or along a stem.
pub fn tree_to_bits(t: &UnicellularMap) -> Result<Vec<bool>> {
    let n = t.n();
    if t.edges + 1 != n || (0..n).any(|v| t.stems_at(v) != 2) {
        return Err(Error::InvalidWord);
    }
    let walk = t.root_walk().ok_or(Error::RootStemAbsent)?;
    let mut seen = vec![false; t.edges];
    let mut out = Vec::with_capacity(walk.len());
    for h in walk {
        if t.is_stem(h) {
            out.push(false);
        } else {
            out.push(!std::mem::replace(&mut seen[h / 2], true));
        }
    }
    Ok(out)
}

/// Rebuilds the tree: a `0` is a stem while the current vertex has fewer
/// than two, otherwise a step up.
pub fn bits_to_tree(w: &[bool]) -> Result<UnicellularMap> {
    if w.len() % 4 != 2 {
        return Err(Error::InvalidWord);
    }
    let n = (w.len() + 2) / 4;
    if w.iter().filter(|&&b| b).count() != n - 1 {
        return Err(Error::WeightMismatch);
    }
    // items leaving each vertex, in walk order
    let mut order: Vec<Vec<usize>> = vec![Vec::new()];
    let mut stems = vec![0usize];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut v = 0;
    let mut mate: Vec<Option<usize>> = Vec::new();
    for &b in w {
        if b {
            let c = order.len();
            if c == n {
                return Err(Error::InvalidWord);
            }
            let down = mate.len();
            mate.push(Some(down + 1));
            mate.push(Some(down));
            order[v].push(down);
            order.push(Vec::new());
            stems.push(0);
            stack.push((v, down + 1));
            v = c;
        } else if stems[v] < 2 {
            stems[v] += 1;
            order[v].push(mate.len());
            mate.push(None);
        } else {
            let Some((p, up)) = stack.pop() else { return Err(Error::InvalidWord) };
            order[v].push(up);
            v = p;
        }
    }
    if v != 0 || !stack.is_empty() || order.len() != n || stems.iter().any(|&s| s != 2) {
        return Err(Error::InvalidWord);
    }
    let root = *order[0].last().unwrap();
    let rot: Vec<Vec<usize>> = order.into_iter().map(|mut o| {
        o.reverse();
        o
    }).collect();
    Ok(assemble(&rot, &mate, root).0)
}

pub fn bits_to_string(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::InvalidWord),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::minimal_rooted;
    use crate::closure::recover_rooted;
    use crate::map::canon::canonical_code;
    use crate::map::homology::Homology;
    use crate::map::TorusMap;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random};
    use crate::ps::run_ps;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const FIXTURE: &str = "00110110000000100000010000";

    fn ps_u(g: &TorusMap) -> UnicellularMap {
        let h = Homology::new(g);
        let (o, a, _) = minimal_rooted(g, &h).unwrap();
        run_ps(g, &o, a).u
    }

    #[test]
    fn fixture_word_round_trips() {
        let w = parse_bits(FIXTURE).unwrap();
        let t = bits_to_tree(&w).unwrap();
        assert_eq!(t.n(), 7);
        assert!((0..7).all(|v| t.stems_at(v) == 2));
        assert_eq!(bits_to_string(&tree_to_bits(&t).unwrap()), FIXTURE);
    }

    #[test]
    fn single_vertex_word() {
        let t = bits_to_tree(&[false, false]).unwrap();
        assert_eq!((t.n(), t.edges, t.num_stems()), (1, 0, 2));
        assert_eq!(tree_to_bits(&t).unwrap(), vec![false, false]);
        assert_eq!(bits_to_tree(&[false, true]).unwrap_err(), Error::WeightMismatch);
        assert_eq!(bits_to_tree(&[false, false, false, false, false, true]).unwrap_err(), Error::InvalidWord);
    }

    fn random_word(n: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
        // random walk respecting the decoder's rules
        let mut w = Vec::new();
        let mut stems = vec![0usize];
        let mut stack = Vec::new();
        let mut v = 0;
        let mut made = 1;
        while !(v == 0 && stems[0] == 2 && made == n) {
            let can_down = made < n;
            if can_down && rng.gen_bool(0.4) {
                w.push(true);
                stack.push(v);
                stems.push(0);
                v = made;
                made += 1;
            } else if stems[v] < 2 {
                w.push(false);
                stems[v] += 1;
            } else if let Some(p) = stack.pop() {
                w.push(false);
                v = p;
            } else {
                w.push(true);
                stack.push(v);
                stems.push(0);
                v = made;
                made += 1;
            }
        }
        w
    }

    #[test]
    fn random_trees_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..60);
            let w = random_word(n, &mut rng);
            assert_eq!(w.len(), 4 * n - 2);
            let t = bits_to_tree(&w).unwrap();
            assert_eq!(tree_to_bits(&t).unwrap(), w);
        }
    }

    #[test]
    fn cut_then_reattach_restores_map() {
        let mut maps = vec![gen_one_vertex(), gen_k7()];
        maps.extend((0..40u64).map(|s| gen_random(2 + s as usize * 2, s)));
        for g in &maps {
            let u = ps_u(g);
            let (t, recs) = cut_special_edges(&u).unwrap();
            assert_eq!(t.edges + 1, g.n());
            assert!((0..g.n()).all(|v| t.stems_at(v) == 2));
            for r in &recs {
                assert!(r.stem_index < 2 * g.n() + 1);
                assert!(r.target_angle_index < 4 * g.n() - 1);
            }
            let w = tree_to_bits(&t).unwrap();
            let back = reattach(&bits_to_tree(&w).unwrap(), &recs).unwrap();
            let (a, b) = (recover_rooted(&u).unwrap(), recover_rooted(&back).unwrap());
            assert_eq!(canonical_code(&a.map, a.root.unwrap()), canonical_code(&b.map, b.root.unwrap()));
        }
    }

    #[test]
    fn k7_cut_shape() {
        let u = ps_u(&gen_k7());
        assert_eq!(u.edges, 8);
        let (t, _) = cut_special_edges(&u).unwrap();
        assert_eq!(t.edges, 6);
        assert_eq!(t.num_stems(), 14);
    }
}
