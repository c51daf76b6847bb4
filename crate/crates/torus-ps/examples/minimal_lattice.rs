//! Walks an orientation down to the minimum and up to the maximum of its
//! lattice for a chosen face.

use torus_ps::build::{initial_three_orientation, make_htc};
use torus_ps::lattice::{is_minimal, maximize, minimize_counted};
use torus_ps::map::homology::Homology;
use torus_ps::oracle::gen_random;
use torus_ps::orient::homologous;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_random(30, 8);
    let hom = Homology::new(&g);
    let (d, _) = make_htc(&g, &initial_three_orientation(&g)?, &hom)?;
    for f0 in [0, g.f() / 2, g.f() - 1] {
        let (min, flips) = minimize_counted(&g, &d, f0);
        let max = maximize(&g, &d, f0);
        let changed = |o: &torus_ps::orient::Orientation| (0..g.m()).filter(|&e| o.tail[e] != d.tail[e]).count();
        println!(
            "face {f0}: {flips} flips to the minimum ({} edges differ), maximum differs in {} edges",
            changed(&min),
            changed(&max)
        );
        assert!(is_minimal(&g, &min, f0));
        assert!(homologous(&g, &min, &max));
    }
    Ok(())
}
