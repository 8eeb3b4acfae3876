//! Hodge structures and their number polynomials: the dimension data of a
//! bigraded decomposition, and the operations the polynomial turns into
//! ring arithmetic.
//!
//! ```bash
//! cargo run --example hodge_structures
//! ```

use hodgefibre::hodge::HodgeStructure;
use hodgefibre::ring::Exponent;

fn bidegree(p: i64, q: i64) -> (Exponent, Exponent) {
    (Exponent::from(p), Exponent::from(q))
}

fn main() {
    // H^2 of a K3 surface: h^{2,0} = h^{0,2} = 1, h^{1,1} = 20.
    let k3 = HodgeStructure::new([
        (bidegree(2, 0), 1),
        (bidegree(1, 1), 20),
        (bidegree(0, 2), 1),
    ])
    .unwrap();
    println!("phn(K3 middle)        = {}", k3.hodge_number_polynomial());

    // H^1 of a genus-3 curve.
    let curve = HodgeStructure::new([(bidegree(1, 0), 3), (bidegree(0, 1), 3)]).unwrap();
    println!("phn(genus 3 curve)    = {}", curve.hodge_number_polynomial());

    // Direct sum, tensor product, internal Hom, dual: the polynomial sends
    // them to +, *, inverted * direct, and variable inversion.
    let sum = k3.sum(&curve);
    let tensor = k3.tensor(&curve);
    let hom = curve.hom(&k3);
    println!("phn(sum)              = {}", sum.hodge_number_polynomial());
    println!("phn(tensor)           = {}", tensor.hodge_number_polynomial());
    println!("phn(Hom(curve, K3))   = {}", hom.hodge_number_polynomial());
    assert_eq!(
        hom.hodge_number_polynomial(),
        curve.hodge_number_polynomial().invert_vars() * k3.hodge_number_polynomial()
    );
    assert_eq!(curve.dual().dual(), curve);

    // Weight-graded dimensions (weight = p + q).
    println!("weights of the tensor = {:?}", tensor.weight_dimensions().unwrap());

    // Validation reports the first violated symmetry.
    let invalid = HodgeStructure::new([(bidegree(1, 0), 2), (bidegree(0, 1), 1)]);
    println!("asymmetric input      -> {}", invalid.unwrap_err());
}
