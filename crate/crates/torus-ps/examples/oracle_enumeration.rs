//! Enumerates every 3-orientation of a small map, splits them into homology
//! classes and checks each class against the lattice and HTC oracles.

use torus_ps::map::homology::Homology;
use torus_ps::oracle::{
    count_three_orientations_brute, enumerate_three_orientations, gen_k7, homology_classes, htc_check, rigid_edges,
    LatticeOracle,
};
use torus_ps::orient::is_htc;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_k7();
    let all = enumerate_three_orientations(&g)?;
    println!("K7: {} orientations (brute force {})", all.len(), count_three_orientations_brute(&g)?);
    let classes = homology_classes(&g, &all);
    println!("{} homology classes, sizes {:?}", classes.len(), classes.iter().map(Vec::len).collect::<Vec<_>>());
    let htc = htc_check(&g, &classes);
    println!("HTC class: {htc:?}");
    let basis = Homology::new(&g).basis;
    for c in classes.iter().filter(|c| is_htc(&g, &c[0], &basis)) {
        let lat = LatticeOracle::new(&g, c)?;
        let ok = (0..g.f()).all(|f0| lat.check(f0).ok());
        println!("lattice checks on all {} faces: {ok}", g.f());
        println!("rigid edges: {:?}", rigid_edges(c));
    }
    Ok(())
}
