//! Hodge structures with a finite-order automorphism, recorded per
//! eigenvalue angle, their equivalence with fractional Hodge structures,
//! convolution, and the Thom-Sebastiani product.
//!
//! A weight-`k` piece at angle `a` with Hodge bidegree `(p, q)` corresponds
//! to the fractional bidegree `(p, q)` when `a = 0` and `(p+a, q+1-a)` when
//! `a > 0`; the latter lands in weight `k+1`. This is the only reading of
//! the correspondence under which bidegrees sum to the weight, and it
//! reproduces the known quadric and cusp Milnor-fibre computations.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::hodge::HodgeStructure;
use crate::ring::{BidegreePolynomial, Exponent};

/// Eigenvalue angle `a` with the eigenvalue `exp(2 pi i a)`; reduced, in `[0, 1)`.
pub type Angle = Rational64;

/// The conjugate angle `(1 - a) mod 1`.
fn conjugate_angle(a: Angle) -> Angle {
    if a.is_zero() {
        a
    } else {
        Angle::from(1) - a
    }
}

/// Violation found by [`EquivariantHodgeStructure::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("angle {angle} is outside [0, 1)")]
    AngleOutOfRange { angle: Angle },
    #[error("bidegree ({p}, {q}) does not sum to the weight {weight} of its piece (angle {angle})")]
    WeightMismatch {
        weight: i64,
        angle: Angle,
        p: i64,
        q: i64,
    },
    #[error("conjugation pairing fails: dimension {dim} at (weight {weight}, angle {angle}, ({p}, {q})) but {partner_dim} at angle {partner_angle}, ({q}, {p})")]
    PairingViolation {
        weight: i64,
        angle: Angle,
        p: i64,
        q: i64,
        dim: u64,
        partner_angle: Angle,
        partner_dim: u64,
    },
}

/// A finite-order automorphism on a direct sum of pure Hodge structures,
/// stored as dimension tables per (weight, eigenvalue angle).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivariantHodgeStructure {
    pieces: BTreeMap<(i64, Angle), BTreeMap<(i64, i64), u64>>,
}

impl EquivariantHodgeStructure {
    /// Builds from `(weight, angle, (p, q), dim)` records, accumulating
    /// duplicates, dropping zero dimensions and validating the invariants.
    pub fn new<I>(records: I) -> Result<Self, EquivariantError>
    where
        I: IntoIterator<Item = (i64, Angle, (i64, i64), u64)>,
    {
        let out = Self::from_records(records);
        out.validate()?;
        Ok(out)
    }

    fn from_records<I>(records: I) -> Self
    where
        I: IntoIterator<Item = (i64, Angle, (i64, i64), u64)>,
    {
        let mut pieces: BTreeMap<(i64, Angle), BTreeMap<(i64, i64), u64>> = BTreeMap::new();
        for (weight, angle, bidegree, dim) in records {
            if dim > 0 {
                *pieces
                    .entry((weight, angle))
                    .or_default()
                    .entry(bidegree)
                    .or_insert(0) += dim;
            }
        }
        EquivariantHodgeStructure { pieces }
    }

    /// The unit for convolution: weight 0, angle 0, one dimension at `(0, 0)`.
    pub fn unit() -> Self {
        Self::from_records([(0, Angle::zero(), (0, 0), 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn total_dim(&self) -> u64 {
        self.records().map(|(_, _, _, d)| d).sum()
    }

    /// Flattened `(weight, angle, (p, q), dim)` records in storage order.
    pub fn records(&self) -> impl Iterator<Item = (i64, Angle, (i64, i64), u64)> + '_ {
        self.pieces.iter().flat_map(|(&(weight, angle), table)| {
            table
                .iter()
                .map(move |(&bidegree, &dim)| (weight, angle, bidegree, dim))
        })
    }

    fn dim(&self, weight: i64, angle: Angle, bidegree: (i64, i64)) -> u64 {
        self.pieces
            .get(&(weight, angle))
            .and_then(|table| table.get(&bidegree))
            .copied()
            .unwrap_or(0)
    }

    /// Checks angle range, weight consistency and conjugation pairing,
    /// reporting the first violation in storage order.
    pub fn validate(&self) -> Result<(), EquivariantError> {
        for (weight, angle, (p, q), dim) in self.records() {
            if angle < Angle::zero() || angle >= Angle::from(1) {
                return Err(EquivariantError::AngleOutOfRange { angle });
            }
            if p + q != weight {
                return Err(EquivariantError::WeightMismatch {
                    weight,
                    angle,
                    p,
                    q,
                });
            }
            let partner_angle = conjugate_angle(angle);
            let partner_dim = self.dim(weight, partner_angle, (q, p));
            if dim != partner_dim {
                return Err(EquivariantError::PairingViolation {
                    weight,
                    angle,
                    p,
                    q,
                    dim,
                    partner_angle,
                    partner_dim,
                });
            }
        }
        Ok(())
    }

    /// The equivalent fractional Hodge structure: angle-0 pieces embed as
    /// they are (weight `k`), angle-`a` pieces map `(p, q)` to
    /// `(p+a, q+1-a)` (weight `k+1`). Total dimension is preserved and the
    /// image is symmetric whenever the conjugation pairing holds.
    pub fn to_fractional(&self) -> HodgeStructure {
        HodgeStructure::from_dims_unchecked(self.records().map(|(_, angle, (p, q), dim)| {
            let bidegree = if angle.is_zero() {
                (Exponent::from(p), Exponent::from(q))
            } else {
                (
                    Exponent::from(p) + angle,
                    Exponent::from(q) + (Exponent::from(1) - angle),
                )
            };
            (bidegree, dim)
        }))
    }

    /// The automorphism-equipped structure of a fractional Hodge structure:
    /// a bidegree `(b, w-b)` acts by `exp(2 pi i b)`, giving angle
    /// `a = b - floor(b)` and, when `a > 0`, the weight-(w-1) Hodge bidegree
    /// `(b-a, w-1-(b-a))`. Inverse to [`Self::to_fractional`].
    ///
    /// Panics when some bidegree has a non-integral total weight, which a
    /// validated [`HodgeStructure`] never has.
    pub fn from_fractional(h: &HodgeStructure) -> Self {
        Self::from_records(h.dims().map(|((b1, b2), dim)| {
            let w = b1 + b2;
            assert!(
                w.is_integer(),
                "fractional Hodge structure has non-integral weight {w}"
            );
            let angle = b1 - b1.floor();
            if angle.is_zero() {
                (w.to_integer(), angle, (b1.to_integer(), b2.to_integer()), dim)
            } else {
                let weight = w.to_integer() - 1;
                let p = (b1 - angle).to_integer();
                (weight, angle, (p, weight - p), dim)
            }
        }))
    }

    /// Convolution: the operation corresponding to tensor product of the
    /// fractional images.
    pub fn convolution(&self, other: &Self) -> Self {
        Self::from_fractional(&self.to_fractional().tensor(&other.to_fractional()))
    }

    /// The equivariant Hodge number polynomial, `sum dim u^b1 v^b2` over the
    /// fractional image; transforms convolutions into products.
    pub fn hodge_number_polynomial(&self) -> BidegreePolynomial {
        self.to_fractional().hodge_number_polynomial()
    }
}

/// The equivariant Hodge-Euler polynomial of the vanishing fibre of a join
/// `f(x) + g(y)` from those of `f` and `g`: `-(phi_f * phi_g)`.
pub fn thom_sebastiani(
    phi_f: &BidegreePolynomial,
    phi_g: &BidegreePolynomial,
) -> BidegreePolynomial {
    -(phi_f * phi_g)
}
