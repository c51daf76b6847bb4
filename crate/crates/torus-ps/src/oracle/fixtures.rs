//! Named fixtures, negative traversal cases and fixture files.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::enumerate_three_orientations;
use super::gen::{gen_k7, gen_one_vertex, gen_random, nested_small};
use crate::build::minimal_rooted;
use crate::closure::{recover_in_order, recover_rooted};
use crate::error::{Error, Result};
use crate::lattice::is_minimal;
use crate::map::canon::canonical_code;
use crate::map::homology::Homology;
use crate::map::tmap::{lines, num, tokens, write_map};
use crate::map::{Angle, TorusMap};
use crate::orient::{is_htc, write_orientation, Orientation};
use crate::ps::{check_unicellular, run_ps, Reason};

/// Every map small enough for the enumerators, with a name.
pub fn oracle_fixtures() -> Vec<(String, TorusMap)> {
    let mut out = vec![
        ("one_vertex".to_string(), gen_one_vertex()),
        ("k7".to_string(), gen_k7()),
        ("nested8".to_string(), nested_small().0),
    ];
    for n in 2..=8 {
        for seed in 0..2 {
            out.push((format!("random_n{n}_s{seed}"), gen_random(n, seed)));
        }
    }
    out
}

/// A minimal non-HTC orientation on which the traversal fails.
#[derive(Clone, Debug)]
pub struct NegativeCase {
    pub name: String,
    pub map: TorusMap,
    pub orientation: Orientation,
    pub root: Angle,
    pub reason: Reason,
    /// The traversal visited every angle.
    pub all_angles: bool,
}

/// First minimal non-HTC orientation and root angle, in enumeration order,
/// whose traversal fails with `reason` and covers all angles or not.
pub fn find_negative(map: &TorusMap, reason: Reason, all_angles: bool) -> Result<Option<(Orientation, Angle)>> {
    let hom = Homology::new(map);
    for d in enumerate_three_orientations(map)? {
        if is_htc(map, &d, &hom.basis) {
            continue;
        }
        for x in 0..map.num_darts() {
            let a = map.angle(x);
            if !is_minimal(map, &d, map.angle_face(a)) {
                continue;
            }
            let out = run_ps(map, &d, a);
            if check_unicellular(map, &out) == Err(reason) && (out.angle_cycle.len() == 2 * map.m()) == all_angles {
                return Ok(Some((d, a)));
            }
        }
    }
    Ok(None)
}

/// The two failure modes: a traversal that misses a vertex, and one that
/// visits every angle but leaves a cycle in the dual.
pub fn negative_cases() -> Result<Vec<NegativeCase>> {
    let mut out = Vec::new();
    let wanted = [("unreached", Reason::UnreachedVertex, false), ("all_angles_not_unicellular", Reason::DualCycle, true)];
    for (name, reason, all) in wanted {
        let mut found = None;
        'search: for n in 1..=4 {
            let maps = if n == 1 { vec![gen_one_vertex()] } else { (0..4).map(|s| gen_random(n, s)).collect() };
            for g in maps {
                if let Some((d, a)) = find_negative(&g, reason, all)? {
                    found = Some((g, d, a));
                    break 'search;
                }
            }
        }
        let (map, orientation, root) = found.ok_or_else(|| Error::Other(format!("no {name} case found")))?;
        out.push(NegativeCase { name: name.into(), map, orientation, root, reason, all_angles: all });
    }
    Ok(out)
}

/// Root sidecar: `troot 1` then `angle <vertex> <dart>`.
pub fn write_root(a: Angle) -> String {
    format!("troot 1\nangle {} {}\n", a.vertex, a.dart)
}

pub fn parse_root(map: &TorusMap, text: &str) -> Result<Angle> {
    let ls = lines(text);
    if ls.len() != 2 || ls[0] != "troot 1" {
        return Err(Error::Parse { line: 1, msg: "expected `troot 1` and one angle line".into() });
    }
    let t = tokens(ls[1], 2)?;
    if t.len() != 3 || t[0] != "angle" {
        return Err(Error::Parse { line: 2, msg: "expected `angle <vertex> <dart>`".into() });
    }
    let (v, d) = (num(t[1], 2)?, num(t[2], 2)?);
    if d >= map.num_darts() || map.vertex(d) != v {
        return Err(Error::Parse { line: 2, msg: format!("dart {d} is not at vertex {v}") });
    }
    Ok(map.angle(d))
}

/// Rooted codes from `orders` random closing orders of the traversal output
/// of `g`, and the code of the single-sweep closure.
pub fn closure_orders(g: &TorusMap, orders: usize, seed: u64) -> Result<(Vec<u8>, Vec<Vec<u8>>)> {
    let hom = Homology::new(g);
    let (o, a, _) = minimal_rooted(g, &hom)?;
    let u = run_ps(g, &o, a).u;
    let code = |r: crate::closure::Recovered| canonical_code(&r.map, r.root.expect("rooted"));
    let base = code(recover_rooted(&u)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes = Vec::with_capacity(orders);
    for _ in 0..orders {
        codes.push(code(recover_in_order(&u, |k| rng.gen_range(0..k))?));
    }
    Ok((base, codes))
}

/// For every angle whose dart leaves its vertex in the minimal HTC wood
/// toward that angle's face and whose vertex is not strictly inside a
/// contractible triangle, the
/// traversal output closes back to the same rooted map. Returns the number
/// of angles checked.
pub fn bijection_spot_check(g: &TorusMap) -> Result<usize> {
    let hom = Homology::new(g);
    let (d, _, _) = minimal_rooted(g, &hom)?;
    let strict = super::lattice::strict_interior_vertices(g);
    let mut checked = 0;
    for x in 0..g.num_darts() {
        let a = g.angle(x);
        if strict[a.vertex] {
            continue;
        }
        let m = crate::lattice::minimize(g, &d, g.angle_face(a));
        if !m.is_out(x) {
            continue;
        }
        let out = run_ps(g, &m, a);
        check_unicellular(g, &out).map_err(|_| Error::NotUnicellular)?;
        let rec = recover_rooted(&out.u)?;
        if canonical_code(&rec.map, rec.root.expect("rooted")) != canonical_code(g, x) {
            return Err(Error::Other(format!("angle at dart {x} does not round trip")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Writes TMAP files for the oracle fixtures plus the K7 minimal wood and the
/// negative cases with their sidecars. Returns the paths written.
pub fn emit_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |e: std::io::Error| Error::Other(e.to_string());
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Result<()> {
        let p = dir.join(name);
        fs::write(&p, text).map_err(io)?;
        written.push(p);
        Ok(())
    };
    for (name, g) in oracle_fixtures() {
        put(format!("{name}.tmap"), write_map(&g))?;
    }
    let k7 = gen_k7();
    let (o, a, _) = minimal_rooted(&k7, &Homology::new(&k7))?;
    put("k7_minimal.torient".into(), write_orientation(&o))?;
    put("k7_minimal.troot".into(), write_root(a))?;
    for c in negative_cases()? {
        put(format!("neg_{}.tmap", c.name), write_map(&c.map))?;
        put(format!("neg_{}.torient", c.name), write_orientation(&c.orientation))?;
        put(format!("neg_{}.troot", c.name), write_root(c.root))?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tmap::parse_map;
    use crate::orient::parse_orientation;

    #[test]
    fn oracle_fixtures_fit_the_cap() {
        for (name, g) in oracle_fixtures() {
            assert!(g.m() <= 24, "{name}");
            g.check_triangulation().unwrap();
        }
    }

    #[test]
    fn negative_cases_have_their_reasons() {
        let cases = negative_cases().unwrap();
        assert_eq!(cases.len(), 2);
        for c in cases {
            let out = run_ps(&c.map, &c.orientation, c.root);
            assert_eq!(check_unicellular(&c.map, &out), Err(c.reason));
            assert_eq!(out.angle_cycle.len() == 2 * c.map.m(), c.all_angles);
            assert!(is_minimal(&c.map, &c.orientation, c.map.angle_face(c.root)));
            assert!(!is_htc(&c.map, &c.orientation, &Homology::new(&c.map).basis));
        }
    }

    #[test]
    fn sidecars_round_trip() {
        let g = gen_k7();
        let a = g.angle(17);
        assert_eq!(parse_root(&g, &write_root(a)).unwrap(), a);
        let wrong = format!("troot 1\nangle {} 17\n", (g.vertex(17) + 1) % 7);
        assert!(parse_root(&g, &wrong).is_err());
    }

    #[test]
    fn emitted_files_parse() {
        let dir = std::env::temp_dir().join(format!("tps-fixtures-{}", std::process::id()));
        let paths = emit_fixtures(&dir).unwrap();
        let text = |name: &str| fs::read_to_string(dir.join(name)).unwrap();
        let g = parse_map(&text("neg_unreached.tmap")).unwrap();
        parse_orientation(&g, &text("neg_unreached.torient")).unwrap();
        parse_root(&g, &text("neg_unreached.troot")).unwrap();
        assert!(paths.len() > 20);
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn closing_orders_agree() {
        for k in 0..3 {
            let (base, codes) = closure_orders(&gen_random(5 + 4 * k, k as u64), 5, k as u64).unwrap();
            assert!(codes.iter().all(|c| *c == base));
        }
    }

    #[test]
    fn every_admissible_root_round_trips() {
        for g in [gen_one_vertex(), gen_k7(), gen_random(6, 1), nested_small().0] {
            assert!(bijection_spot_check(&g).unwrap() > 0);
        }
    }
}
