//! Computes the minimal HTC orientation of a map, its Schnyder coloring and
//! its monochromatic cycles.

use torus_ps::build::minimal_rooted;
use torus_ps::map::homology::Homology;
use torus_ps::oracle::{gen_k7, gen_random};
use torus_ps::orient::{check_schnyder, color_edges, is_crossing, is_htc, monochromatic_cycles};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, g) in [("K7", gen_k7()), ("random n=40", gen_random(40, 3))] {
        let hom = Homology::new(&g);
        let (o, root, rep) = minimal_rooted(&g, &hom)?;
        let c = color_edges(&g, &o)?;
        check_schnyder(&g, &o, &c)?;
        println!("{name}");
        println!("  initial gamma {:?}, {} repair rounds", rep.initial_gamma, rep.iterations);
        println!("  HTC: {}", is_htc(&g, &o, &hom.basis));
        println!("  crossing: {}", is_crossing(&g, &o, &c));
        println!("  root angle: vertex {} dart {}", root.vertex, root.dart);
        for i in 0..3u8 {
            let cyc = monochromatic_cycles(&g, &o, &c, i);
            let lens: Vec<usize> = cyc.iter().map(|w| w.len()).collect();
            println!("  color {i}: {} cycles, lengths {lens:?}", cyc.len());
        }
    }
    Ok(())
}
