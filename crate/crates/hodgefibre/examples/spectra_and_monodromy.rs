//! Singularity spectra in their four presentations, read off an
//! equivariant Hodge number polynomial, and Jordan blocks from weight dims.
//!
//! ```bash
//! cargo run --example spectra_and_monodromy
//! ```

use std::collections::BTreeMap;

use hodgefibre::ring::parse_polynomial;
use hodgefibre::spectra::{
    m_invariants, saito_spectrum, varchenko_spectrum, WeightDims,
};

fn main() {
    // The cusp x^3 + y^2: two eigenvalue classes at weight 2.
    let cusp = parse_polynomial("u^(5/6)*v^(7/6) + u^(7/6)*v^(5/6)").unwrap();

    let table = m_invariants(&cusp).unwrap();
    println!("m(alpha, w):\n{table}\n");
    table.check_nonnegative().unwrap();

    // Characteristic pairs for n = 1 are symmetric about alpha = 0.
    println!("characteristic pairs (n = 1):\n{}\n", table.characteristic_pairs(1));

    // Both alphas are non-integral, so the spectral pairs coincide.
    assert_eq!(table.spectral_pairs(), table);

    // The two classical normalizations differ by t^-1.
    println!("saito     = {}", saito_spectrum(&cusp));
    println!("varchenko = {}", varchenko_spectrum(&cusp));

    // Monodromy Jordan blocks from the weight dims of H^2 of a K3 limit:
    // g is symmetric about k = 2, so giving the upper half suffices.
    let wd = WeightDims::new(2, BTreeMap::from([(2, 18), (3, 2)])).unwrap();
    println!("completed dims = {:?}", wd.dims());
    let blocks = wd.jordan_block_counts().unwrap();
    println!("jordan blocks  = {blocks:?}");
    assert_eq!(blocks, BTreeMap::from([(1, 18), (2, 2)]));

    // count(m) = g(k+m-1) - g(k+m+1) must be nonnegative; a grading that
    // breaks this is not a monodromy weight filtration.
    let bad = WeightDims::new(0, BTreeMap::from([(0, 1), (2, 3)])).unwrap();
    println!("invalid grading -> {}", bad.jordan_block_counts().unwrap_err());
}
