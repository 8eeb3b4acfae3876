//! A family of plane curves of degree d degenerating to d lines: nearby
//! fibre, middle cohomology of the smooth fibre, and the monodromy Jordan
//! blocks (maximally unipotent).
//!
//! ```bash
//! cargo run --example curve_degeneration
//! ```

use hodgefibre::classes::ClassExpr;
use hodgefibre::degeneration::{middle_hodge_numbers, Component, Stratification};
use hodgefibre::spectra::WeightDims;

fn lines_family(d: i64) -> Stratification {
    let components = (1..=d).map(|i| Component::new(format!("E{i}"), 1)).collect();
    let mut strata = Vec::new();
    for i in 1..=d {
        strata.push((vec![format!("E{i}")], ClassExpr::Projective(1)));
        for j in (i + 1)..=d {
            strata.push((vec![format!("E{i}"), format!("E{j}")], ClassExpr::Point));
        }
    }
    Stratification::new(components, strata, None, Some(1)).unwrap()
}

fn main() {
    for d in 2..=6 {
        let family = lines_family(d);
        let psi = family.nearby_fibre();

        // psi = (d - C(d,2))(1 + uv): only Tate classes survive the limit.
        println!("d = {d}");
        println!("  nearby fibre        = {psi}");
        assert_eq!(psi, family.nearby_fibre_open());

        // Middle cohomology H^1 of the smooth fibre, read off psi.
        let middle = middle_hodge_numbers(&psi, 1).unwrap();
        let genus = middle.total_dim() / 2;
        println!("  genus               = {genus}");
        assert_eq!(genus as i64, (d - 1) * (d - 2) / 2);

        // All of H^1 sits in g Jordan blocks of size 2.
        let wd = WeightDims::new(1, middle.weight_dimensions().unwrap()).unwrap();
        println!("  jordan blocks       = {:?}", wd.jordan_block_counts().unwrap());

        // The special fibre is the d lines; phi measures what vanishes.
        println!("  vanishing fibre     = {}", family.vanishing_fibre().unwrap());
    }
}
