//! Encodes a random triangulation, shows the word and its bit budget, and
//! decodes it again.
//!
//! ```text
//! cargo run --release --example encode_decode -- 1000
//! ```

use torus_ps::codec::rank::rank;
use torus_ps::codec::{bits_to_string, decode, encode_report};
use torus_ps::map::canon::is_isomorphic;
use torus_ps::oracle::gen_random;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(12);
    let g = gen_random(n, 2);
    let (bytes, rep) = encode_report(&g)?;
    let ones = rep.word.iter().filter(|&&b| b).count();
    if n <= 20 {
        println!("word: {}", bits_to_string(&rep.word));
    }
    println!("word length {}, ones {ones}, rank {}", rep.word.len(), rank(&rep.word, ones)?);
    println!("payload {} bits ({:.4} per vertex), container {} bytes", rep.payload_bits, rep.payload_bits as f64 / n as f64, bytes.len());
    let back = decode(&bytes)?;
    println!("decoded isomorphic: {}", is_isomorphic(&back, &g));
    Ok(())
}
