//! The nearby fibre does not depend on the chosen normal crossing model:
//! blowing up an admissible center rewrites the strata but leaves psi
//! fixed. The vanishing fibre does change, because the special fibre does.
//!
//! ```bash
//! cargo run --example blowup_invariance
//! ```

use hodgefibre::classes::ClassExpr;
use hodgefibre::degeneration::{BlowupCenter, Component, Stratification};

fn main() {
    // Three lines forming a triangle.
    let triangle = Stratification::new(
        (1..=3).map(|i| Component::new(format!("E{i}"), 1)).collect(),
        vec![
            (vec!["E1".into()], ClassExpr::Projective(1)),
            (vec!["E2".into()], ClassExpr::Projective(1)),
            (vec!["E3".into()], ClassExpr::Projective(1)),
            (vec!["E1".into(), "E2".into()], ClassExpr::Point),
            (vec!["E1".into(), "E3".into()], ClassExpr::Point),
            (vec!["E2".into(), "E3".into()], ClassExpr::Point),
        ],
        None,
        Some(1),
    )
    .unwrap();

    // Blow up the point E1 cap E2 in the total space. The center has
    // codimension 2 and meets no other stratum: one cover, W_empty = point.
    let center = BlowupCenter {
        contained_in: vec!["E1".into(), "E2".into()],
        codimension: 2,
        covers: vec![(vec![], ClassExpr::Point)],
        new_id: "Estar".into(),
    };
    let moved = triangle.blowup_transform(&center).unwrap();

    println!("before:");
    for (subset, class) in triangle.cover_strata() {
        println!("  D({:?}) = {class}", subset.iter().collect::<Vec<_>>());
    }
    println!("after blowing up E1 cap E2:");
    for (subset, class) in moved.cover_strata() {
        println!("  D({:?}) = {class}", subset.iter().collect::<Vec<_>>());
    }

    // The new component separates E1 from E2 and carries multiplicity
    // e_1 + e_2 = 2.
    let exceptional = moved
        .components()
        .iter()
        .find(|c| c.id == "Estar")
        .unwrap();
    assert_eq!(exceptional.multiplicity, 2);
    assert!(moved.cover_class(&["E1", "E2"]).is_zero());

    // psi is exactly invariant.
    let (before, after) = (triangle.nearby_fibre(), moved.nearby_fibre());
    println!("psi before = {before}");
    println!("psi after  = {after}");
    assert_eq!(before, after);

    // phi is not: the special fibre gained a component. With the new
    // multiplicity 2 the reduced strata are no longer implied by the cover
    // strata, so the vanishing fibre now requires explicit classE data.
    println!("phi before = {}", triangle.vanishing_fibre().unwrap());
    println!(
        "phi after  -> {}",
        moved.vanishing_fibre().unwrap_err()
    );
}
