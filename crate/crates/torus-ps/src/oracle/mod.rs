//! Brute-force ground truth for small maps, and fixture generators.

mod enumerate;
mod fixtures;
mod gen;
mod lattice;

pub use enumerate::{
    count_three_orientations_brute, enumerate_three_orientations, homology_classes, homology_key, threads,
    ORACLE_MAX_EDGES,
};
pub use fixtures::{
    bijection_spot_check, closure_orders, emit_fixtures, find_negative, negative_cases, oracle_fixtures, parse_root,
    write_root, NegativeCase,
};
pub use gen::{gen_k7, gen_one_vertex, gen_random, insert_vertex, nested_k7, nested_small, shortest_path};
pub use lattice::{
    contractible_triangles, flippable_edges, htc_check, strict_interior_vertices, lattice_check, nonminimal_faces, rigid_by_triangles, rigid_edges, HtcReport, LatticeOracle,
    LatticeReport,
};
