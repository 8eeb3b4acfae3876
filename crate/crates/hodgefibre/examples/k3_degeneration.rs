//! A K3 surface degenerating to two transverse quadrics (after blowing up
//! the 16 double points of the total space): the full pipeline from a
//! strata file to nearby fibre, weight dims and Jordan blocks.
//!
//! ```bash
//! cargo run --example k3_degeneration
//! ```

use hodgefibre::degeneration::middle_hodge_numbers;
use hodgefibre::files::{parse_json, DegenerationFile};
use hodgefibre::spectra::WeightDims;

fn main() {
    // The same JSON schema the `nearby` subcommand reads.
    let file: DegenerationFile = parse_json(
        include_str!("../tests/fixtures/k3.json"),
        "k3.json",
    )
    .unwrap();
    let family = file.to_stratification().unwrap();
    println!(
        "components: {} (all multiplicity 1)",
        family.components().len()
    );

    // Level classes of the special fibre.
    for m in 1..=3 {
        println!("E({m})  = {}", family.strata_level_class(m).unwrap());
    }

    let psi = family.nearby_fibre();
    println!("psi   = {psi}");
    assert_eq!(psi.to_string(), "1 + u + v + 18*u*v + u^2*v + u*v^2 + u^2*v^2");

    // At v = 1 the limit mixed Hodge structure shows its weight grading.
    println!("psi(t, 1) = {}", psi.specialize_v());

    // phi = psi - [E] measures the vanishing cohomology.
    println!("phi   = {}", family.vanishing_fibre().unwrap());

    // Middle cohomology H^2 carries 18 fixed classes and two size-2 blocks.
    let middle = middle_hodge_numbers(&psi, 2).unwrap();
    let wd = WeightDims::new(2, middle.weight_dimensions().unwrap()).unwrap();
    println!("weight dims   = {:?}", wd.dims());
    let blocks = wd.jordan_block_counts().unwrap();
    println!("jordan blocks = {blocks:?}");
    assert_eq!(blocks.get(&2), Some(&2));
    assert_eq!(blocks.get(&1), Some(&18));
}
