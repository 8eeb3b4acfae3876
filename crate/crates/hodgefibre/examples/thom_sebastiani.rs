//! Thom-Sebastiani for joins f(x) + g(y): convolution of equivariant Hodge
//! structures, computed through their fractional images.
//!
//! ```bash
//! cargo run --example thom_sebastiani
//! ```

use hodgefibre::equivariant::{thom_sebastiani, EquivariantHodgeStructure};
use hodgefibre::ring::exponent;
use hodgefibre::spectra::saito_spectrum;

fn main() {
    // Vanishing cohomology of x^2: one class, eigenvalue -1, weight 0.
    let x2 = EquivariantHodgeStructure::new([(0, exponent(1, 2), (0, 0), 1)]).unwrap();
    // Vanishing cohomology of x^3: eigenvalues exp(2*pi*i/3), exp(4*pi*i/3).
    let x3 = EquivariantHodgeStructure::new([
        (0, exponent(1, 3), (0, 0), 1),
        (0, exponent(2, 3), (0, 0), 1),
    ])
    .unwrap();

    // The fractional image places the angle-a part at bidegree (p+a, q+1-a).
    println!("phn(x^2) = {}", x2.hodge_number_polynomial());
    println!("phn(x^3) = {}", x3.hodge_number_polynomial());

    // x^2 + y^2 is a node: its reduced cohomology is one Tate class.
    let node = x2.convolution(&x2);
    println!("phn(x^2 + y^2) = {}", node.hodge_number_polynomial());

    // x^3 + y^2 is the cusp; convolution lands at angles 5/6 and 7/6 - 1.
    let cusp = x3.convolution(&x2);
    println!("phn(x^3 + y^2) = {}", cusp.hodge_number_polynomial());

    // On vanishing-fibre polynomials the join is minus the product.
    let phi = thom_sebastiani(&x3.hodge_number_polynomial(), &x2.hodge_number_polynomial());
    println!("phi(join)      = {phi}");
    assert_eq!(-&phi, cusp.hodge_number_polynomial());

    // The spectrum of the cusp, in Saito's normalization.
    println!("spectrum       = {}", saito_spectrum(&-phi));

    // The polynomial turns convolution into multiplication.
    assert_eq!(
        node.convolution(&cusp).hodge_number_polynomial(),
        node.hodge_number_polynomial() * cusp.hodge_number_polynomial()
    );
}
