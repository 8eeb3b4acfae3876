//! Degree-d surfaces degenerating to d planes, after resolving the ordinary
//! double points of the total space: the planes get blown up in d(d-1)
//! points and one exceptional quadric appears over each double point.
//!
//! ```bash
//! cargo run --example surface_degeneration
//! ```

use hodgefibre::classes::ClassExpr;
use hodgefibre::degeneration::{middle_hodge_numbers, Component, Stratification};
use hodgefibre::spectra::WeightDims;

fn surfaces_family(d: i64) -> Stratification {
    let mut components = Vec::new();
    let mut strata = Vec::new();
    for i in 1..=d {
        components.push(Component::new(format!("E{i}"), 1));
        strata.push((vec![format!("E{i}")], ClassExpr::BlowupP2(d * (d - 1))));
    }
    for i in 1..=d {
        for j in (i + 1)..=d {
            strata.push((
                vec![format!("E{i}"), format!("E{j}")],
                ClassExpr::Projective(1),
            ));
            // d double points sit on each of the C(d,2) double lines.
            for s in 1..=d {
                let f = format!("F{i}_{j}_{s}");
                components.push(Component::new(f.clone(), 1));
                strata.push((vec![f.clone()], ClassExpr::P1xP1));
                strata.push((vec![format!("E{i}"), f.clone()], ClassExpr::Projective(1)));
                strata.push((vec![format!("E{j}"), f.clone()], ClassExpr::Projective(1)));
                strata.push((vec![format!("E{i}"), format!("E{j}"), f], ClassExpr::Point));
            }
            for k in (j + 1)..=d {
                strata.push((
                    vec![format!("E{i}"), format!("E{j}"), format!("E{k}")],
                    ClassExpr::Point,
                ));
            }
        }
    }
    Stratification::new(components, strata, None, Some(2)).unwrap()
}

fn main() {
    for d in 2..=5 {
        let family = surfaces_family(d);
        println!("d = {d}");
        println!("  D(1)          = {}", family.strata_level_class(1).unwrap());
        println!("  D(2)          = {}", family.strata_level_class(2).unwrap());
        println!("  D(3)          = {}", family.strata_level_class(3).unwrap());

        let psi = family.nearby_fibre();
        println!("  nearby fibre  = {psi}");
        assert_eq!(psi, family.nearby_fibre_open());

        // Jordan blocks of the monodromy on H^2: size 3 blocks appear first
        // at d = 4 (quartic surfaces), C(d-1,3) of them.
        let middle = middle_hodge_numbers(&psi, 2).unwrap();
        let wd = WeightDims::new(2, middle.weight_dimensions().unwrap()).unwrap();
        println!("  jordan blocks = {:?}", wd.jordan_block_counts().unwrap());
    }
}
