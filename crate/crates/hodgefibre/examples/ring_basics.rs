//! The coefficient ring: Laurent polynomials in u, v with exact integer
//! coefficients and rational exponents.
//!
//! ```bash
//! cargo run --example ring_basics
//! ```

use hodgefibre::ring::{
    exponent, lefschetz, parse_polynomial, projective_space, torus, BidegreePolynomial,
};

fn main() {
    // Parse, compute, print in canonical form.
    let p = parse_polynomial("1 + u*v").unwrap();
    let q = &p * &p;
    println!("(1 + uv)^2            = {q}");

    // The built-in classes: L = uv, P_m = 1 + L + .. + L^m, (L - 1)^m.
    println!("lefschetz             = {}", lefschetz());
    println!("projective_space(2)   = {}", projective_space(2));
    println!("torus(2)              = {}", torus(2));

    // Exponents are rationals; monomials may sit at fractional bidegrees.
    let cusp = parse_polynomial("u^(5/6)*v^(7/6) + u^(7/6)*v^(5/6)").unwrap();
    println!("cusp                  = {cusp}");
    assert_eq!(cusp.coefficient(exponent(5, 6), exponent(7, 6)), 1.into());

    // Inversion u -> u^-1, v -> v^-1 and the v = 1 specialization.
    println!("cusp inverted         = {}", cusp.invert_vars());
    println!("cusp at v = 1         = {}", cusp.specialize_v());

    // Arithmetic is exact at any size.
    let big = projective_space(40).pow(3);
    println!(
        "P_40^3 has {} terms, top coefficient {}",
        big.num_terms(),
        big.coefficient(exponent(60, 1), exponent(60, 1))
    );

    // Parse errors carry byte offsets.
    let err = parse_polynomial("u^v").unwrap_err();
    println!("parse \"u^v\"           -> error at offset {}: {}", err.offset, err.message);

    assert_eq!(q.to_string(), "1 + 2*u*v + u^2*v^2");
    assert_eq!(BidegreePolynomial::zero().to_string(), "0");
}
