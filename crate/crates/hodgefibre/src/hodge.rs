//! Hodge structures (classical and fractional) as finitely supported
//! dimension tables over rational bidegrees, with the multilinear operations
//! direct sum, tensor product, internal Hom and dual.
//!
//! One type covers both flavours: classical structures have integer `(p, q)`,
//! fractional ones rational `(p, q)` with integral sum. Mixed structures are
//! a single table graded by `p + q`; no further filtration data is kept.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{BidegreePolynomial, Exponent};

/// A Hodge bidegree `(p, q)`.
pub type Bidegree = (Exponent, Exponent);

/// Violation found by [`HodgeStructure::validate`]; construction via
/// [`HodgeStructure::new`] reports the first one in ascending bidegree order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("bidegree ({p}, {q}) has non-integral weight {p} + {q}")]
    NonIntegralWeight { p: Exponent, q: Exponent },
    #[error("conjugation symmetry fails at ({p}, {q}): dimension {dim} but {mirror_dim} at ({q}, {p})")]
    Asymmetric {
        p: Exponent,
        q: Exponent,
        dim: u64,
        mirror_dim: u64,
    },
}

/// A finitely supported table `(p, q) -> h^{p,q}` of nonnegative dimensions,
/// symmetric under `(p, q) <-> (q, p)` with `p + q` integral.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HodgeStructure {
    dims: BTreeMap<Bidegree, u64>,
}

impl HodgeStructure {
    /// Builds a validated structure; duplicate bidegrees accumulate, zero
    /// dimensions are dropped before validation.
    pub fn new<I>(dims: I) -> Result<Self, HodgeError>
    where
        I: IntoIterator<Item = (Bidegree, u64)>,
    {
        let out = Self::from_dims_unchecked(dims);
        out.validate()?;
        Ok(out)
    }

    /// Builds without validating the symmetry and integral-weight invariants.
    /// Intended for intermediate tables that are symmetric by construction;
    /// call [`Self::validate`] when in doubt.
    pub fn from_dims_unchecked<I>(dims: I) -> Self
    where
        I: IntoIterator<Item = (Bidegree, u64)>,
    {
        let mut table: BTreeMap<Bidegree, u64> = BTreeMap::new();
        for (bidegree, dim) in dims {
            if dim > 0 {
                *table.entry(bidegree).or_insert(0) += dim;
            }
        }
        Self { dims: table }
    }

    /// The zero structure.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The unit for tensor product: one dimension in bidegree `(0, 0)`.
    pub fn unit() -> Self {
        Self::from_dims_unchecked([((Exponent::zero(), Exponent::zero()), 1)])
    }

    /// Checks the invariants and reports the first violated constraint, in
    /// ascending bidegree order (integral weight before symmetry at equal
    /// bidegrees).
    pub fn validate(&self) -> Result<(), HodgeError> {
        for (&(p, q), &dim) in &self.dims {
            if !(p + q).is_integer() {
                return Err(HodgeError::NonIntegralWeight { p, q });
            }
            let mirror_dim = self.dim(q, p);
            if dim != mirror_dim {
                return Err(HodgeError::Asymmetric {
                    p,
                    q,
                    dim,
                    mirror_dim,
                });
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Supported bidegrees with their dimensions, ascending.
    pub fn dims(&self) -> impl Iterator<Item = (Bidegree, u64)> + '_ {
        self.dims.iter().map(|(&bd, &d)| (bd, d))
    }

    pub fn dim(&self, p: Exponent, q: Exponent) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.values().sum()
    }

    /// The Hodge number polynomial `sum h^{p,q} u^p v^q`.
    pub fn hodge_number_polynomial(&self) -> BidegreePolynomial {
        BidegreePolynomial::from_terms(
            self.dims.iter().map(|(&(p, q), &d)| (p, q, BigInt::from(d))),
        )
    }

    /// Dimensions of the weight-graded pieces, `w -> sum_{p+q=w} h^{p,q}`.
    ///
    /// Errors on a (necessarily unchecked) table with a non-integral weight.
    pub fn weight_dimensions(&self) -> Result<BTreeMap<i64, u64>, HodgeError> {
        let mut out = BTreeMap::new();
        for (&(p, q), &d) in &self.dims {
            let w = p + q;
            if !w.is_integer() {
                return Err(HodgeError::NonIntegralWeight { p, q });
            }
            *out.entry(w.to_integer()).or_insert(0) += d;
        }
        Ok(out)
    }

    /// Direct sum: pointwise addition of dimension tables.
    pub fn sum(&self, other: &Self) -> Self {
        Self::from_dims_unchecked(self.dims().chain(other.dims()))
    }

    /// Tensor product: bidegrees add, dimensions multiply.
    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_dims_unchecked(self.dims().flat_map(|((p1, q1), d1)| {
            other
                .dims()
                .map(move |((p2, q2), d2)| ((p1 + p2, q1 + q2), d1 * d2))
        }))
    }

    /// Internal Hom: bidegrees of `other` minus bidegrees of `self`, with
    /// multiplied dimensions.
    pub fn hom(&self, other: &Self) -> Self {
        Self::from_dims_unchecked(self.dims().flat_map(|((p1, q1), d1)| {
            other
                .dims()
                .map(move |((p2, q2), d2)| ((p2 - p1, q2 - q1), d1 * d2))
        }))
    }

    /// `Hom(self, unit)`: negated bidegrees.
    pub fn dual(&self) -> Self {
        self.hom(&Self::unit())
    }
}

impl fmt::Debug for HodgeStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HodgeStructure{{")?;
        for (i, ((p, q), d)) in self.dims().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({p}, {q}): {d}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{exponent, parse_polynomial};
    use proptest::prelude::*;

    fn hs(dims: &[((i64, i64), u64)]) -> HodgeStructure {
        HodgeStructure::new(dims.iter().map(|&((p, q), d)| {
            ((Exponent::from(p), Exponent::from(q)), d)
        }))
        .unwrap()
    }

    #[test]
    fn hn_poly_examples() {
        let k3_middle = hs(&[((2, 0), 1), ((1, 1), 20), ((0, 2), 1)]);
        assert_eq!(
            k3_middle.hodge_number_polynomial(),
            parse_polynomial("u^2 + 20*u*v + v^2").unwrap()
        );
        assert!(HodgeStructure::empty().hodge_number_polynomial().is_zero());
        for g in [0u64, 1, 3, 7] {
            let curve_h1 = hs(&[((1, 0), g), ((0, 1), g)]);
            let expected = parse_polynomial("u + v").unwrap() * g as i64;
            assert_eq!(curve_h1.hodge_number_polynomial(), expected);
        }
    }

    #[test]
    fn sum_examples() {
        assert_eq!(
            hs(&[((0, 0), 1)]).sum(&hs(&[((1, 1), 1)])),
            hs(&[((0, 0), 1), ((1, 1), 1)])
        );
        let a = hs(&[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(a.sum(&HodgeStructure::empty()), a);
        assert_eq!(
            a.sum(&hs(&[((1, 0), 2), ((0, 1), 2)])),
            hs(&[((1, 0), 3), ((0, 1), 3)])
        );
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            hs(&[((1, 1), 1)]).tensor(&hs(&[((1, 1), 1)])),
            hs(&[((2, 2), 1)])
        );
        let e = hs(&[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(
            e.tensor(&e),
            hs(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)])
        );
        assert_eq!(e.tensor(&HodgeStructure::unit()), e);
    }

    #[test]
    fn hom_examples() {
        let e = hs(&[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(e.dual(), hs(&[((-1, 0), 1), ((0, -1), 1)]));
        assert_eq!(
            hs(&[((1, 1), 1)]).hom(&hs(&[((1, 1), 1)])),
            hs(&[((0, 0), 1)])
        );
        assert_eq!(
            e.hom(&e),
            hs(&[((0, 0), 2), ((1, -1), 1), ((-1, 1), 1)])
        );
    }

    #[test]
    fn validation_reports_first_violation() {
        assert!(hs(&[((1, 0), 1), ((0, 1), 1)]).validate().is_ok());

        let asym = HodgeStructure::from_dims_unchecked([
            ((Exponent::from(1), Exponent::from(0)), 1),
            ((Exponent::from(0), Exponent::from(1)), 0),
        ]);
        assert_eq!(
            asym.validate(),
            Err(HodgeError::Asymmetric {
                p: Exponent::from(1),
                q: Exponent::from(0),
                dim: 1,
                mirror_dim: 0,
            })
        );

        let frac = HodgeStructure::from_dims_unchecked([((exponent(1, 2), exponent(1, 3)), 1)]);
        assert_eq!(
            frac.validate(),
            Err(HodgeError::NonIntegralWeight {
                p: exponent(1, 2),
                q: exponent(1, 3),
            })
        );
    }

    #[test]
    fn fractional_bidegrees_with_integral_weight_are_valid() {
        let cusp = HodgeStructure::new([
            ((exponent(5, 6), exponent(7, 6)), 1),
            ((exponent(7, 6), exponent(5, 6)), 1),
        ])
        .unwrap();
        assert_eq!(cusp.weight_dimensions().unwrap(), BTreeMap::from([(2, 2)]));
        assert_eq!(
            cusp.hodge_number_polynomial(),
            parse_polynomial("u^(5/6)*v^(7/6) + u^(7/6)*v^(5/6)").unwrap()
        );
    }

    #[test]
    fn weight_dimensions_groups_by_total_weight() {
        let mixed = hs(&[((0, 0), 1), ((1, 0), 2), ((0, 1), 2), ((1, 1), 5)]);
        assert_eq!(
            mixed.weight_dimensions().unwrap(),
            BTreeMap::from([(0, 1), (1, 4), (2, 5)])
        );
    }

    prop_compose! {
        /// Valid structures: symmetrized entries with integral total weight
        /// and bidegree denominators up to 3.
        fn arb_hodge()(entries in proptest::collection::vec(
            ((-2i64..=4), (-6i64..=10, 1i64..=3), 1u64..=4),
            0..5,
        )) -> HodgeStructure {
            HodgeStructure::from_dims_unchecked(entries.into_iter().flat_map(|(w, (pn, pd), d)| {
                let p = Exponent::new(pn, pd);
                let q = Exponent::from(w) - p;
                [((p, q), d), ((q, p), d)]
            }))
        }
    }

    proptest! {
        #[test]
        fn generator_yields_valid_structures(a in arb_hodge()) {
            prop_assert_eq!(a.validate(), Ok(()));
        }

        #[test]
        fn hn_poly_is_additive_and_multiplicative(a in arb_hodge(), b in arb_hodge()) {
            prop_assert_eq!(
                a.sum(&b).hodge_number_polynomial(),
                a.hodge_number_polynomial() + b.hodge_number_polynomial()
            );
            prop_assert_eq!(
                a.tensor(&b).hodge_number_polynomial(),
                a.hodge_number_polynomial() * b.hodge_number_polynomial()
            );
        }

        #[test]
        fn hom_matches_inverted_times_direct(a in arb_hodge(), b in arb_hodge()) {
            prop_assert_eq!(
                a.hom(&b).hodge_number_polynomial(),
                a.hodge_number_polynomial().invert_vars() * b.hodge_number_polynomial()
            );
        }

        #[test]
        fn dual_twice_is_identity(a in arb_hodge()) {
            prop_assert_eq!(a.dual().dual(), a);
        }

        #[test]
        fn operations_preserve_validity(a in arb_hodge(), b in arb_hodge()) {
            prop_assert_eq!(a.sum(&b).validate(), Ok(()));
            prop_assert_eq!(a.tensor(&b).validate(), Ok(()));
            prop_assert_eq!(a.hom(&b).validate(), Ok(()));
            prop_assert_eq!(a.dual().validate(), Ok(()));
        }
    }
}
