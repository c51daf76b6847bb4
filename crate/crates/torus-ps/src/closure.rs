//! Closing stems of a unicellular map back into a triangulation.
//!
//! Along the face walk, a stem `s` preceded by two edge sides `x`, `y` forms
//! an admissible triple: `s` is attached to the start of `x`, cutting off the
//! triangle `x y s` on its left. The border then reads `.. s' ..` where `s'`
//! is the new far half of `s`.

use crate::error::{Error, Result};
use crate::map::{Dart, TorusMap};
use crate::ps::UnicellularMap;

/// Result of closing every stem.
#[derive(Clone, Debug)]
pub struct Recovered {
    pub map: TorusMap,
    /// Dart at the root angle, when rooted.
    pub root: Option<Dart>,
    /// Dart of each half-edge of the input.
    pub dart_of: Vec<Dart>,
}

/// Mutable rotation system over the input halves; far halves of closed
/// stems and added stems are appended.
#[derive(Clone, Debug)]
pub struct SpecialFaceState {
    vert: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    // usize::MAX marks an open stem
    mate: Vec<usize>,
    edges: usize,
    n: usize,
    // border as a circular list over half ids
    bnext: Vec<usize>,
    bprev: Vec<usize>,
    pub border_len: usize,
    pub stems_left: usize,
    head: usize,
    seen: Vec<bool>,
}

impl SpecialFaceState {
    /// Border starts at `start` and follows the face walk.
    pub fn new(u: &UnicellularMap, start: usize) -> SpecialFaceState {
        let nh = u.num_halves();
        let walk = u.walk_from(start);
        let mut bnext = vec![usize::MAX; nh];
        let mut bprev = vec![usize::MAX; nh];
        for i in 0..walk.len() {
            let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
            bnext[a] = b;
            bprev[b] = a;
        }
        SpecialFaceState {
            vert: u.vert.clone(),
            next: u.next.clone(),
            prev: u.prev.clone(),
            mate: (0..nh).map(|h| if u.is_stem(h) { usize::MAX } else { h ^ 1 }).collect(),
            edges: u.edges,
            n: u.n(),
            bnext,
            bprev,
            border_len: walk.len(),
            stems_left: u.num_stems(),
            head: start,
            seen: vec![false; nh],
        }
    }

    fn push_half(&mut self) -> usize {
        for v in [&mut self.vert, &mut self.next, &mut self.prev, &mut self.mate, &mut self.bnext, &mut self.bprev] {
            v.push(usize::MAX);
        }
        self.seen.push(false);
        self.vert.len() - 1
    }

    #[inline]
    fn is_open_stem(&self, h: usize) -> bool {
        self.mate[h] == usize::MAX
    }

    /// Closes `s` if the two previous border items are edge sides. With
    /// `guard`, both must already have been passed in this sweep.
    pub fn try_close(&mut self, s: usize, guard: bool) -> bool {
        if !self.is_open_stem(s) || self.border_len < 5 {
            return false;
        }
        let y = self.bprev[s];
        let x = self.bprev[y];
        if self.is_open_stem(x) || self.is_open_stem(y) || x == s {
            return false;
        }
        if guard && !(self.seen[x] && self.seen[y]) {
            return false;
        }
        let t = self.push_half();
        self.mate[s] = t;
        self.mate[t] = s;
        let u = self.vert[x];
        let after = self.next[x];
        self.vert[t] = u;
        self.next[x] = t;
        self.prev[t] = x;
        self.next[t] = after;
        self.prev[after] = t;
        // border p x y s q becomes p t q
        let (p, q) = (self.bprev[x], self.bnext[s]);
        self.bnext[p] = t;
        self.bprev[t] = p;
        self.bnext[t] = q;
        self.bprev[q] = t;
        if [x, y, s].contains(&self.head) {
            self.head = t;
        }
        self.seen[t] = true;
        self.border_len -= 2;
        self.stems_left -= 1;
        true
    }

    /// One pass over the border from the current head, closing whenever
    /// possible. Returns the number of closures.
    pub fn sweep(&mut self, guard: bool) -> usize {
        self.seen.iter_mut().for_each(|b| *b = false);
        let mut c = self.head;
        let mut closed = 0;
        for _ in 0..self.border_len {
            let nx = self.bnext[c];
            if self.try_close(c, guard) {
                closed += 1;
            } else {
                self.seen[c] = true;
            }
            c = nx;
        }
        closed
    }

    /// Open stems preceded on the border by two edge sides.
    pub fn admissible(&self) -> Vec<usize> {
        if self.border_len < 5 {
            return Vec::new();
        }
        self.border()
            .into_iter()
            .filter(|&s| {
                let y = self.bprev[s];
                let x = self.bprev[y];
                self.is_open_stem(s) && !self.is_open_stem(x) && !self.is_open_stem(y) && x != s
            })
            .collect()
    }

    pub fn border(&self) -> Vec<usize> {
        let mut out = vec![self.head];
        let mut x = self.bnext[self.head];
        while x != self.head {
            out.push(x);
            x = self.bnext[x];
        }
        out
    }

    /// Adds an open stem in the corner where border item `b` leaves its
    /// vertex, so that the border meets it right before `b`.
    pub fn add_stem_before(&mut self, b: usize) -> usize {
        let s = self.push_half();
        let z = self.vert[b];
        let after = self.next[b];
        self.vert[s] = z;
        self.next[b] = s;
        self.prev[s] = b;
        self.next[s] = after;
        self.prev[after] = s;
        let a = self.bprev[b];
        self.bnext[a] = s;
        self.bprev[s] = a;
        self.bnext[s] = b;
        self.bprev[b] = s;
        self.border_len += 1;
        self.stems_left += 1;
        s
    }

    /// Finishes as a triangulation once the border is a triangle. Edge
    /// halves keep their ids; other halves are numbered in order of id,
    /// each with its mate right after it.
    pub fn finish(&self) -> Result<Recovered> {
        if self.stems_left != 0 || self.border_len != 3 {
            return Err(Error::NotAdmissible);
        }
        let total = self.vert.len();
        let mut dart = vec![usize::MAX; total];
        let mut k = 2 * self.edges;
        for h in 0..total {
            if h < 2 * self.edges {
                dart[h] = h;
            } else if dart[h] == usize::MAX {
                dart[h] = k;
                dart[self.mate[h]] = k + 1;
                k += 2;
            }
        }
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); self.n];
        let mut done = vec![false; total];
        for h in 0..total {
            if done[h] {
                continue;
            }
            let v = self.vert[h];
            let mut x = h;
            while !done[x] {
                done[x] = true;
                rot[v].push(dart[x]);
                x = self.next[x];
            }
        }
        let map = TorusMap::from_rotations(&rot)?;
        map.check_triangulation()?;
        Ok(Recovered { map, root: None, dart_of: dart })
    }
}

/// Edge directions read off the root: every stem leaves its vertex, and an
/// edge is directed away from the side met later in the walk from the root.
/// Returns the tail half of each edge followed by the stems.
pub fn orient_from_root(u: &UnicellularMap) -> Result<Vec<usize>> {
    let walk = u.root_walk().ok_or(Error::RootStemAbsent)?;
    let mut pos = vec![usize::MAX; u.num_halves()];
    for (i, &h) in walk.iter().enumerate() {
        pos[h] = i;
    }
    let mut tails: Vec<usize> = (0..u.edges).map(|e| if pos[2 * e] > pos[2 * e + 1] { 2 * e } else { 2 * e + 1 }).collect();
    tails.extend(2 * u.edges..u.num_halves());
    Ok(tails)
}

/// Single pass from the root angle; every stem must close when met.
pub fn recover_rooted(u: &UnicellularMap) -> Result<Recovered> {
    let r = u.root.ok_or(Error::RootStemAbsent)?;
    let mut st = SpecialFaceState::new(u, u.prev[r]);
    st.sweep(true);
    let mut rec = st.finish()?;
    rec.root = Some(rec.dart_of[r]);
    Ok(rec)
}

/// Closure without a root: two sweeps from an arbitrary border item.
pub fn recover_unrooted(u: &UnicellularMap) -> Result<TorusMap> {
    recover_unrooted_from(u, 0)
}

pub fn recover_unrooted_from(u: &UnicellularMap, start: usize) -> Result<TorusMap> {
    let mut st = SpecialFaceState::new(u, start);
    st.sweep(false);
    st.sweep(false);
    Ok(st.finish()?.map)
}

/// Closes admissible triples one at a time; `pick(k)` chooses which of the
/// `k` currently admissible stems goes next.
pub fn recover_in_order(u: &UnicellularMap, mut pick: impl FnMut(usize) -> usize) -> Result<Recovered> {
    let start = u.root.map_or(0, |r| u.prev[r]);
    let mut st = SpecialFaceState::new(u, start);
    loop {
        let a = st.admissible();
        if a.is_empty() {
            break;
        }
        st.try_close(a[pick(a.len()) % a.len()], false);
    }
    let mut rec = st.finish()?;
    rec.root = u.root.map(|r| rec.dart_of[r]);
    Ok(rec)
}

/// Membership checks for the class reached by the encoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub in_u_r: bool,
    pub balanced: bool,
    pub gamma0: bool,
}

impl ClassReport {
    pub fn all(&self) -> bool {
        self.in_u_r && self.balanced && self.gamma0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Hexagon { corners: [usize; 2] },
    Square { corner: usize },
}

/// Core of the skeleton left after repeatedly removing degree-1 vertices,
/// as a shape plus its two basic cycles (as half-edge walks).
pub fn core_cycles(u: &UnicellularMap) -> Option<(Shape, [Vec<usize>; 2])> {
    let n = u.n();
    let mut deg = vec![0usize; n];
    for h in 0..2 * u.edges {
        deg[u.vert[h]] += 1;
    }
    let mut alive = vec![true; u.edges];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if deg[v] != 1 {
            continue;
        }
        let h = u.around(v).into_iter().find(|&h| !u.is_stem(h) && alive[h / 2])?;
        alive[h / 2] = false;
        deg[v] = 0;
        let w = u.vert[h ^ 1];
        deg[w] -= 1;
        if deg[w] == 1 {
            stack.push(w);
        }
    }
    let live = |h: usize| !u.is_stem(h) && alive[h / 2];
    // follow a core path from half h until a branch vertex
    let follow = |mut h: usize| -> Vec<usize> {
        let mut path = vec![h];
        loop {
            let w = u.vert[h ^ 1];
            if deg[w] != 2 {
                return path;
            }
            h = u.around(w).into_iter().find(|&x| live(x) && x != h ^ 1).unwrap();
            path.push(h);
        }
    };
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] > 2).collect();
    match branch.as_slice() {
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let paths: Vec<Vec<usize>> = u.around(*a).into_iter().filter(|&h| live(h)).map(follow).collect();
            let back = |p: &Vec<usize>| -> Vec<usize> { p.iter().rev().map(|&h| h ^ 1).collect() };
            let c1 = [paths[0].clone(), back(&paths[1])].concat();
            let c2 = [paths[1].clone(), back(&paths[2])].concat();
            Some((Shape::Hexagon { corners: [*a, *b] }, [c1, c2]))
        }
        [c] if deg[*c] == 4 => {
            let mut used = vec![false; 2 * u.edges];
            let mut loops = Vec::new();
            for h in u.around(*c) {
                if live(h) && !used[h] {
                    let p = follow(h);
                    used[*p.last().unwrap() ^ 1] = true;
                    p.iter().for_each(|&x| used[x] = true);
                    loops.push(p);
                }
            }
            let [l1, l2]: [Vec<usize>; 2] = loops.try_into().ok()?;
            Some((Shape::Square { corner: *c }, [l1, l2]))
        }
        _ => None,
    }
}

/// Sum over a closed walk of outgoing halves on its right minus those on its
/// left, halves of the walk's own edges excluded.
pub fn gamma_u(u: &UnicellularMap, tails: &[usize], cyc: &[usize]) -> i64 {
    let mut on_cycle = vec![false; u.edges];
    cyc.iter().for_each(|&h| on_cycle[h / 2] = true);
    let mut is_tail = vec![false; u.num_halves()];
    tails.iter().for_each(|&h| is_tail[h] = true);
    let counted = |h: usize| is_tail[h] && (u.is_stem(h) || !on_cycle[h / 2]);
    let k = cyc.len();
    let mut g = 0;
    for i in 0..k {
        let out = cyc[i];
        let inn = cyc[(i + k - 1) % k] ^ 1;
        let mut x = u.next[out];
        while x != inn {
            if counted(x) {
                g -= 1;
            }
            x = u.next[x];
        }
        let mut x = u.next[inn];
        while x != out {
            if counted(x) {
                g += 1;
            }
            x = u.next[x];
        }
    }
    g
}

/// Stem counts and core shape of the rooted class: two stems per vertex,
/// one more at the root vertex, one less at hexagon corners, two less at the
/// square corner.
pub fn in_u_r(u: &UnicellularMap) -> bool {
    let Some(r) = u.root else { return false };
    if u.edges != u.n() + 1 || !u.is_stem(r) {
        return false;
    }
    let Some((shape, _)) = core_cycles(u) else { return false };
    let mut want = vec![2i64; u.n()];
    want[u.vert[r]] += 1;
    match shape {
        Shape::Hexagon { corners } => corners.iter().for_each(|&c| want[c] -= 1),
        Shape::Square { corner } => want[corner] -= 2,
    }
    (0..u.n()).all(|v| u.stems_at(v) as i64 == want[v])
}

pub fn is_balanced(u: &UnicellularMap) -> bool {
    recover_rooted(u).is_ok()
}

pub fn gamma0(u: &UnicellularMap) -> bool {
    let (Ok(tails), Some((_, cycles))) = (orient_from_root(u), core_cycles(u)) else { return false };
    cycles.iter().all(|c| gamma_u(u, &tails, c) == 0)
}

pub fn validate_class(u: &UnicellularMap) -> ClassReport {
    ClassReport { in_u_r: in_u_r(u), balanced: is_balanced(u), gamma0: gamma0(u) }
}

/// Removes the stem at the root; the root angle stays where it was.
pub fn strip_root_stem(u: &UnicellularMap) -> Result<UnicellularMap> {
    let r = u.root.ok_or(Error::RootStemAbsent)?;
    if !u.is_stem(r) {
        return Err(Error::RootStemAbsent);
    }
    let new_root = u.next[r];
    let id = |h: usize| if h > r { h - 1 } else { h };
    let rot: Vec<Vec<usize>> =
        u.rotations().into_iter().map(|rv| rv.into_iter().filter(|&h| h != r).map(id).collect()).collect();
    let mut out = UnicellularMap::from_rotations(&rot, u.edges, Some(id(new_root)));
    out.origin = (0..u.num_halves()).filter(|&h| h != r).map(|h| u.origin[h]).collect();
    Ok(out)
}

/// Closes the stripped map down to a quadrangle, then adds a stem at one of
/// its four corners (`choice` counted from the root angle) and closes it.
/// The added stem is the root of the result.
pub fn complete_quadrangle(u: &UnicellularMap, choice: usize) -> Result<Recovered> {
    let r = u.root.ok_or(Error::RootStemAbsent)?;
    let mut st = SpecialFaceState::new(u, u.prev[r]);
    st.sweep(true);
    if st.stems_left != 0 || st.border_len != 4 {
        return Err(Error::NotAdmissible);
    }
    let b = st.border();
    // corner 0 sits between the last and the first border items
    let s = st.add_stem_before(b[choice % 4]);
    if !st.try_close(s, false) {
        return Err(Error::NotAdmissible);
    }
    let mut rec = st.finish()?;
    rec.root = Some(rec.dart_of[s]);
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::minimal_rooted;
    use crate::map::canon::{canonical_code, is_isomorphic};
    use crate::map::homology::Homology;
    use crate::oracle::{gen_k7, gen_random};
    use crate::ps::{run_ps, PsOutput};

    fn ps_of(g: &TorusMap) -> (PsOutput, crate::orient::Orientation) {
        let h = Homology::new(g);
        let (o, a, _) = minimal_rooted(g, &h).unwrap();
        (run_ps(g, &o, a), o)
    }

    #[test]
    fn rooted_recovery_inverts_ps() {
        for seed in 0..40u64 {
            let g = gen_random(1 + seed as usize * 3, seed);
            let (out, _) = ps_of(&g);
            let rec = recover_rooted(&out.u).expect("closes");
            let r0 = out.u.origin[out.u.root.unwrap()];
            assert_eq!(canonical_code(&rec.map, rec.root.unwrap()), canonical_code(&g, r0), "seed {seed}");
        }
    }

    #[test]
    fn orientation_from_root_matches() {
        for seed in 0..30u64 {
            let g = gen_random(2 + seed as usize * 2, seed);
            let (out, o) = ps_of(&g);
            let tails = orient_from_root(&out.u).unwrap();
            for t in tails {
                assert!(o.is_out(out.u.origin[t]), "seed {seed}");
            }
        }
    }

    #[test]
    fn unrooted_recovery_any_start() {
        let g = gen_k7();
        let (out, _) = ps_of(&g);
        for s in 0..out.u.num_halves() {
            let h = recover_unrooted_from(&out.u, s).unwrap();
            assert!(is_isomorphic(&h, &g));
        }
    }

    #[test]
    fn class_of_ps_output() {
        for seed in 0..40u64 {
            let g = gen_random(1 + seed as usize * 3, seed);
            let (out, _) = ps_of(&g);
            let rep = validate_class(&out.u);
            assert!(rep.all(), "seed {seed}: {rep:?}");
        }
    }

    #[test]
    fn k7_quadrangle_completions() {
        let g = gen_k7();
        let (out, _) = ps_of(&g);
        let r0 = out.u.origin[out.u.root.unwrap()];
        let stripped = strip_root_stem(&out.u).unwrap();
        assert_eq!(stripped.num_stems(), 12);
        let mut codes: Vec<Vec<u8>> = (0..4)
            .map(|c| {
                let rec = complete_quadrangle(&stripped, c).unwrap();
                canonical_code(&rec.map, rec.root.unwrap())
            })
            .collect();
        assert_eq!(codes[0], canonical_code(&g, r0));
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 2);
    }
}
