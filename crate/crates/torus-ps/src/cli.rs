//! The `tps` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::build::minimal_rooted;
use crate::codec::{decode, encode_report, MAGIC};
use crate::error::{AtStage, Error, Stage, StageError};
use crate::lattice::is_minimal;
use crate::map::canon::is_isomorphic;
use crate::map::homology::Homology;
use crate::map::tmap::{parse_map, write_map};
use crate::map::triangles::separating_triangles;
use crate::oracle::{self, LatticeOracle};
use crate::orient::{color_edges, gamma, is_crossing, is_three_orientation, parse_orientation, Orientation};
use crate::map::TorusMap;

#[derive(Parser)]
#[command(name = "tps", version, about = "Encode toroidal triangulations through minimal Schnyder woods")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a fixture triangulation as TMAP.
    Gen {
        #[arg(value_parser = ["k7", "one-vertex", "random"])]
        kind: String,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode a TMAP file into a TPS1 container.
    Encode {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decode a TPS1 container into TMAP.
    Decode {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check map invariants, optionally isomorphism with another map.
    Verify {
        #[arg(default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Report γ, HTC status, minimality, separating triangles and crossing.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        orientation: Option<PathBuf>,
        #[arg(long)]
        f0: Option<usize>,
        /// Root angle sidecar; its face is used as `f0`.
        #[arg(long, conflicts_with = "f0")]
        root: Option<PathBuf>,
    },
    /// Encode then decode and compare, for one file or many random maps.
    Roundtrip {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive checks over all 3-orientations of a small map.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        f0: usize,
    },
    /// Time encoding and decoding on random maps of doubling size.
    Bench {
        #[arg(long, default_value_t = 10000)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        min_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn io_err(path: &Path, e: std::io::Error) -> StageError {
    StageError { stage: Stage::Map, source: Error::Other(format!("{}: {e}", path.display())) }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, StageError> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| io_err(path, e))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| io_err(path, e))
}

fn read_text(path: &Path) -> Result<String, StageError> {
    String::from_utf8(read_bytes(path)?)
        .map_err(|_| StageError { stage: Stage::Map, source: Error::Other("input is not UTF-8".into()) })
}

/// TMAP text, or a TPS1 container which is decoded first.
fn read_map(path: &Path) -> Result<TorusMap, StageError> {
    let bytes = read_bytes(path)?;
    if bytes.starts_with(MAGIC) {
        return decode(&bytes);
    }
    let text = String::from_utf8(bytes)
        .map_err(|_| StageError { stage: Stage::Map, source: Error::Other("input is not UTF-8".into()) })?;
    parse_map(&text).at(Stage::Map)
}

/// Writes data to the file, or to stdout when there is none. Returns true
/// if stdout is still free for a report.
fn write_out(output: &Option<PathBuf>, data: &[u8]) -> Result<bool, StageError> {
    match output {
        Some(p) => {
            std::fs::write(p, data).map_err(|e| io_err(p, e))?;
            Ok(true)
        }
        None => {
            std::io::stdout().write_all(data).map_err(|e| io_err(Path::new("-"), e))?;
            Ok(false)
        }
    }
}

fn emit(v: Value) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{v}");
}

fn run(cmd: Cmd) -> Result<(), StageError> {
    match cmd {
        Cmd::Gen { kind, n, seed, output } => {
            let g = match kind.as_str() {
                "k7" => oracle::gen_k7(),
                "one-vertex" => oracle::gen_one_vertex(),
                _ => {
                    if n == 0 {
                        return Err(Error::Other("n must be at least 1".into())).at(Stage::Oracle);
                    }
                    oracle::gen_random(n, seed)
                }
            };
            if write_out(&output, write_map(&g).as_bytes())? {
                emit(json!({"cmd": "gen", "kind": kind, "n": g.n(), "m": g.m(), "f": g.f()}));
            }
        }
        Cmd::Encode { input, output } => {
            let g = read_map(&input)?;
            let (bytes, rep) = encode_report(&g)?;
            if write_out(&output, &bytes)? {
                emit(json!({
                    "cmd": "encode", "n": rep.n, "payload_bits": rep.payload_bits,
                    "total_bits": rep.total_bits, "bytes": bytes.len(),
                }));
            }
        }
        Cmd::Decode { input, output } => {
            let g = decode(&read_bytes(&input)?)?;
            if write_out(&output, write_map(&g).as_bytes())? {
                emit(json!({"cmd": "decode", "n": g.n(), "m": g.m()}));
            }
        }
        Cmd::Verify { input, against } => {
            let g = read_map(&input)?;
            g.check_triangulation().at(Stage::Map)?;
            let hom = Homology::new(&g);
            let mut r = json!({
                "cmd": "verify", "n": g.n(), "m": g.m(), "f": g.f(), "triangulation": true,
                "separating_triangles": separating_triangles(&g, &hom).len(),
            });
            if let Some(p) = against {
                let iso = is_isomorphic(&g, &read_map(&p)?);
                r["isomorphic"] = json!(iso);
                emit(r);
                if !iso {
                    return Err(Error::Other("maps are not isomorphic".into())).at(Stage::Map);
                }
                return Ok(());
            }
            emit(r);
        }
        Cmd::Analyze { input, orientation, f0, root } => analyze(&input, orientation.as_deref(), f0, root.as_deref())?,
        Cmd::Roundtrip { input, count, n_max, seed } => roundtrip(input.as_deref(), count, n_max, seed)?,
        Cmd::Oracle { input, f0 } => oracle_report(&input, f0)?,
        Cmd::Bench { max_n, min_n, seed } => {
            let mut n = min_n.max(1);
            while n <= max_n {
                let g = oracle::gen_random(n, seed);
                let t = Instant::now();
                let (bytes, rep) = encode_report(&g)?;
                let enc = t.elapsed().as_secs_f64();
                let t = Instant::now();
                let back = decode(&bytes)?;
                let dec = t.elapsed().as_secs_f64();
                emit(json!({
                    "cmd": "bench", "n": n, "encode_s": enc, "decode_s": dec,
                    "payload_bits_per_n": rep.payload_bits as f64 / n as f64,
                    "total_bits": rep.total_bits, "ok": back.n() == n,
                }));
                n *= 2;
            }
        }
    }
    Ok(())
}

fn analyze(input: &Path, orientation: Option<&Path>, f0: Option<usize>, root: Option<&Path>) -> Result<(), StageError> {
    let g = read_map(input)?;
    g.check_triangulation().at(Stage::Map)?;
    let f0 = match root {
        Some(p) => Some(g.angle_face(oracle::parse_root(&g, &read_text(p)?).at(Stage::Map)?)),
        None => f0,
    };
    let hom = Homology::new(&g);
    let d: Orientation = match orientation {
        Some(p) => parse_orientation(&g, &read_text(p)?).at(Stage::Orientation)?,
        None => minimal_rooted(&g, &hom).at(Stage::Build)?.0,
    };
    if !is_three_orientation(&g, &d) {
        return Err(Error::NotThreeOrientation).at(Stage::Orientation);
    }
    let gam = [gamma(&g, &d, &hom.basis.b1), gamma(&g, &d, &hom.basis.b2)];
    let minimal_faces: Vec<usize> = (0..g.f()).filter(|&f| is_minimal(&g, &d, f)).collect();
    let crossing = color_edges(&g, &d).ok().map(|c| is_crossing(&g, &d, &c));
    let mut r = json!({
        "cmd": "analyze", "n": g.n(), "gamma": gam, "htc": gam == [0, 0],
        "schnyder": crossing.is_some(), "crossing": crossing,
        "minimal_faces": minimal_faces, "separating_triangles": separating_triangles(&g, &hom).len(),
    });
    if let Some(f) = f0 {
        if f >= g.f() {
            return Err(Error::Other(format!("face {f} out of range"))).at(Stage::Lattice);
        }
        r["f0"] = json!(f);
        r["minimal"] = json!(is_minimal(&g, &d, f));
    }
    emit(r);
    Ok(())
}

fn roundtrip(input: Option<&Path>, count: usize, n_max: usize, seed: u64) -> Result<(), StageError> {
    let one = |g: &TorusMap| -> Result<(usize, u64, bool), StageError> {
        let (bytes, rep) = encode_report(g)?;
        let back = decode(&bytes)?;
        Ok((g.n(), rep.total_bits, is_isomorphic(&back, g)))
    };
    if let Some(p) = input {
        let (n, bits, iso) = one(&read_map(p)?)?;
        emit(json!({"cmd": "roundtrip", "n": n, "total_bits": bits, "isomorphic": iso}));
        if !iso {
            return Err(Error::Other("decoded map is not isomorphic".into())).at(Stage::Codec);
        }
        return Ok(());
    }
    let lo = 3.min(n_max.max(1));
    let items: Vec<(usize, u64)> =
        (0..count as u64).map(|i| (lo + (i as usize * 7919 + seed as usize) % (n_max.max(lo) - lo + 1), seed + i)).collect();
    let workers = oracle::threads().min(items.len().max(1));
    let results: Vec<Result<(usize, u64, bool), StageError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let items = &items;
                s.spawn(move || {
                    items.iter().skip(w).step_by(workers).map(|&(n, sd)| (n, sd, one(&oracle::gen_random(n, sd)))).collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<_> = handles.into_iter().flat_map(|h| h.join().expect("worker")).collect();
        all.sort_by_key(|&(n, sd, _)| (sd, n));
        all.into_iter().map(|(_, _, r)| r).collect()
    });
    let mut failed = 0;
    for ((n, sd), r) in items.iter().zip(results) {
        let (_, bits, iso) = r?;
        failed += !iso as usize;
        emit(json!({"cmd": "roundtrip", "n": n, "seed": sd, "total_bits": bits, "isomorphic": iso}));
    }
    emit(json!({"cmd": "roundtrip", "count": count, "failed": failed}));
    if failed > 0 {
        return Err(Error::Other(format!("{failed} round trips failed"))).at(Stage::Codec);
    }
    Ok(())
}

fn oracle_report(input: &Path, f0: usize) -> Result<(), StageError> {
    let g = read_map(input)?;
    if f0 >= g.f() {
        return Err(Error::Other(format!("face {f0} out of range"))).at(Stage::Oracle);
    }
    let all = oracle::enumerate_three_orientations(&g).at(Stage::Oracle)?;
    let classes = oracle::homology_classes(&g, &all);
    let hom = Homology::new(&g);
    for (i, c) in classes.iter().enumerate() {
        let rep = LatticeOracle::new(&g, c).at(Stage::Oracle)?.check(f0);
        emit(json!({
            "cmd": "oracle", "class": i, "size": c.len(),
            "htc": gamma(&g, &c[0], &hom.basis.b1) == 0 && gamma(&g, &c[0], &hom.basis.b2) == 0,
            "lattice_ok": rep.ok(), "minimize_agrees": rep.minimize_agrees,
            "is_minimal_matches": rep.is_minimal_matches, "hasse_ok": rep.hasse_ok,
            "rigid_edges": oracle::rigid_edges(c),
        }));
    }
    let htc = oracle::htc_check(&g, &classes);
    emit(json!({
        "cmd": "oracle", "orientations": all.len(), "classes": classes.len(), "f0": f0,
        "htc_classes": htc.classes_hit, "htc_exact": htc.exact, "htc_colorable": htc.colorable,
        "rigid_by_triangles": oracle::rigid_by_triangles(&g),
    }));
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Usage errors
/// exit with 2, pipeline errors with 1.
pub fn main_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
