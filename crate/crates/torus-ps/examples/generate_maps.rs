//! Builds the sample triangulations and prints their sizes and TMAP text.
//!
//! ```text
//! cargo run --example generate_maps -- 12 7
//! ```

use torus_ps::map::tmap::write_map;
use torus_ps::oracle::{gen_k7, gen_one_vertex, gen_random, nested_k7};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(10);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    let maps = [
        ("one vertex", gen_one_vertex()),
        ("K7", gen_k7()),
        ("K7 with a vertex in a face", nested_k7().0),
        ("random", gen_random(n, seed)),
    ];
    for (name, g) in &maps {
        g.check_triangulation()?;
        println!("{name}: n={} m={} f={}", g.n(), g.m(), g.f());
    }
    print!("{}", write_map(&maps[3].1));
    Ok(())
}
