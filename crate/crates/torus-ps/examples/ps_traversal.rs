//! Runs the traversal on K7 from its minimal orientation and prints the angle
//! cycle and the resulting unicellular map.

use torus_ps::build::minimal_rooted;
use torus_ps::map::homology::Homology;
use torus_ps::oracle::gen_k7;
use torus_ps::ps::{check_unicellular, format_angle_cycle, run_ps, write_tuni};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_k7();
    let (o, a, _) = minimal_rooted(&g, &Homology::new(&g))?;
    let out = run_ps(&g, &o, a);
    check_unicellular(&g, &out).map_err(|r| r.code())?;
    println!("{} angles visited", out.angle_cycle.len());
    println!("{}", format_angle_cycle(&g, &out));
    println!("kept edges {}, stems {}, dual edges {:?}", out.u.edges, out.u.num_stems(), out.q_edges);
    print!("{}", write_tuni(&out.u));
    Ok(())
}
