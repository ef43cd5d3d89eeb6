//! Integral homology through the Smith normal form, including torsion.
//!
//! Run with `cargo run --example homology_snf`.

use spherand::homology::{reduced_homology, smith_normal_form, IntegerMatrix};
use spherand::SimplicialComplex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("invariant factors: {:?}", smith_normal_form(&m));

    // Six-vertex projective plane.
    let rp2 = SimplicialComplex::from_named_facets(&[
        vec!["1", "2", "3"],
        vec!["1", "3", "4"],
        vec!["1", "4", "5"],
        vec!["1", "5", "6"],
        vec!["1", "2", "6"],
        vec!["2", "3", "5"],
        vec!["2", "4", "5"],
        vec!["2", "4", "6"],
        vec!["3", "4", "6"],
        vec!["3", "5", "6"],
    ])?;
    println!("RP^2: f = {:?}, H = {}", rp2.f_vector(), reduced_homology(&rp2));

    let s2 = SimplicialComplex::sphere_boundary(2, "v")?;
    println!("boundary of a tetrahedron: H = {}", reduced_homology(&s2));
    println!("its suspension: H = {}", reduced_homology(&s2.suspension()?));
    Ok(())
}
