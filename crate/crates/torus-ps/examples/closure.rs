//! Closes a traversal output back into a triangulation, rooted and unrooted,
//! and through the quadrangle completion.

use torus_ps::build::minimal_rooted;
use torus_ps::closure::{complete_quadrangle, recover_rooted, recover_unrooted, strip_root_stem, validate_class};
use torus_ps::map::canon::{canonical_code, is_isomorphic};
use torus_ps::map::homology::Homology;
use torus_ps::oracle::gen_random;
use torus_ps::ps::run_ps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_random(25, 4);
    let (o, a, _) = minimal_rooted(&g, &Homology::new(&g))?;
    let u = run_ps(&g, &o, a).u;
    println!("class checks: {:?}", validate_class(&u));

    let rooted = recover_rooted(&u)?;
    let same = canonical_code(&rooted.map, rooted.root.expect("rooted")) == canonical_code(&g, a.dart);
    println!("rooted closure returns the rooted input: {same}");
    println!("unrooted closure isomorphic: {}", is_isomorphic(&recover_unrooted(&u)?, &g));

    let stripped = strip_root_stem(&u)?;
    for choice in 0..4 {
        let q = complete_quadrangle(&stripped, choice)?;
        println!("quadrangle corner {choice}: isomorphic {}", is_isomorphic(&q.map, &g));
    }
    Ok(())
}
