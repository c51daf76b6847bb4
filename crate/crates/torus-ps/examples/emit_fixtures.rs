//! Writes the oracle fixtures, the K7 minimal wood and the negative traversal
//! cases as TMAP files with sidecars.
//!
//! ```text
//! cargo run --example emit_fixtures -- crates/torus-ps/fixtures
//! ```

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("fixtures"));
    let written = torus_ps::oracle::emit_fixtures(&dir)?;
    for p in &written {
        println!("{}", p.display());
    }
    Ok(())
}
