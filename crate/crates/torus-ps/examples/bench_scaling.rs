//! Times encode and decode on doubling sizes.
//!
//! ```text
//! cargo run --release --example bench_scaling -- 64000
//! ```

use std::time::Instant;

use torus_ps::codec::{decode, encode};
use torus_ps::oracle::gen_random;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(16000);
    let mut n = 1000;
    let mut last = None;
    while n <= max {
        let g = gen_random(n, 11);
        let t = Instant::now();
        let bytes = encode(&g)?;
        let enc = t.elapsed().as_secs_f64();
        let t = Instant::now();
        decode(&bytes)?;
        let dec = t.elapsed().as_secs_f64();
        let ratio = last.map(|p: f64| format!("{:.2}", enc / p)).unwrap_or_else(|| "-".into());
        println!("n={n:>7} encode {enc:>8.4} s (x{ratio}) decode {dec:>8.4} s, {} bytes", bytes.len());
        last = Some(enc);
        n *= 2;
    }
    Ok(())
}
