//! Singularity spectra read off the equivariant Hodge number polynomial of
//! the Milnor fibre, in four equivalent presentations, and Jordan block
//! counts of the monodromy from its weight filtration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ring::{BidegreePolynomial, Exponent, UnivariatePolynomial};

/// Failure of a spectra operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("term u^{alpha}*v^{vexp} has non-integral total weight; spectrum entries need w = alpha + vexp integral")]
    NonIntegralWeight { alpha: Rational64, vexp: Rational64 },
    #[error("negative multiplicity {multiplicity} at (alpha = {alpha}, w = {w})")]
    NegativeMultiplicity {
        alpha: Rational64,
        w: i64,
        multiplicity: BigInt,
    },
    #[error("weight dimensions break the monodromy symmetry around {k}: g({w}) = {dim} but g({partner_w}) = {partner_dim}")]
    SymmetryViolation {
        k: i64,
        w: i64,
        dim: u64,
        partner_w: i64,
        partner_dim: u64,
    },
    #[error("g({w}) = {dim} is smaller than g({next_w}) = {next_dim}; size-{m} blocks would have negative count")]
    NegativeBlockCount {
        m: u64,
        w: i64,
        dim: u64,
        next_w: i64,
        next_dim: u64,
    },
}

/// A multiset of pairs `(alpha, w)` with integer multiplicities, the
/// `m(alpha, w)` data of a spectrum. Multiplicities may be negative so that
/// Euler-level pipelines compose; [`SpectrumTable::check_nonnegative`]
/// enforces genuineness on demand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpectrumTable {
    entries: BTreeMap<(Rational64, i64), BigInt>,
}

impl SpectrumTable {
    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((Rational64, i64), BigInt)>,
    {
        let mut out = SpectrumTable::default();
        for ((alpha, w), m) in entries {
            out.add(alpha, w, m);
        }
        out
    }

    fn add(&mut self, alpha: Rational64, w: i64, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let entry = self.entries.entry((alpha, w)).or_insert_with(BigInt::zero);
        *entry += m;
        if entry.is_zero() {
            self.entries.remove(&(alpha, w));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by `alpha`, then `w`.
    pub fn entries(&self) -> impl Iterator<Item = (Rational64, i64, &BigInt)> + '_ {
        self.entries.iter().map(|(&(a, w), m)| (a, w, m))
    }

    pub fn multiplicity(&self, alpha: Rational64, w: i64) -> BigInt {
        self.entries
            .get(&(alpha, w))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_multiplicity(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// Errors on the first negative multiplicity; genuine isolated
    /// singularities have none (the Milnor fibre is a wedge of spheres).
    pub fn check_nonnegative(&self) -> Result<(), SpectraError> {
        for (alpha, w, m) in self.entries() {
            if m.is_negative() {
                return Err(SpectraError::NegativeMultiplicity {
                    alpha,
                    w,
                    multiplicity: m.clone(),
                });
            }
        }
        Ok(())
    }

    /// The characteristic pairs for ambient dimension `n + 1`:
    /// `(alpha, w) -> (n - alpha, w)`.
    pub fn characteristic_pairs(&self, n: u32) -> SpectrumTable {
        let n = Rational64::from(i64::from(n));
        SpectrumTable::from_entries(
            self.entries()
                .map(|(alpha, w, m)| ((n - alpha, w), m.clone())),
        )
    }

    /// The spectral pairs: entries with integral `alpha` move from `w` to
    /// `w + 1`, the rest stay.
    pub fn spectral_pairs(&self) -> SpectrumTable {
        SpectrumTable::from_entries(self.entries().map(|(alpha, w, m)| {
            let w = if alpha.is_integer() { w + 1 } else { w };
            ((alpha, w), m.clone())
        }))
    }
}

/// Aligned `(alpha, w, m)` table, one entry per line.
impl fmt::Display for SpectrumTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, String, String)> = self
            .entries()
            .map(|(alpha, w, m)| (alpha.to_string(), w.to_string(), m.to_string()))
            .collect();
        let mut widths = ("alpha".len(), "w".len(), "m".len());
        for (a, w, m) in &rows {
            widths = (widths.0.max(a.len()), widths.1.max(w.len()), widths.2.max(m.len()));
        }
        write!(
            f,
            "{:<aw$}  {:>ww$}  {:>mw$}",
            "alpha",
            "w",
            "m",
            aw = widths.0,
            ww = widths.1,
            mw = widths.2
        )?;
        for (a, w, m) in &rows {
            write!(
                f,
                "\n{:<aw$}  {:>ww$}  {:>mw$}",
                a,
                w,
                m,
                aw = widths.0,
                ww = widths.1,
                mw = widths.2
            )?;
        }
        Ok(())
    }
}

/// Reads `m(alpha, w)` off a polynomial: the term `c u^a v^b` contributes
/// multiplicity `c` at `(alpha, w) = (a, a + b)`. Errors when some `a + b`
/// is not an integer, which never happens for equivariant Hodge number
/// polynomials.
pub fn m_invariants(p: &BidegreePolynomial) -> Result<SpectrumTable, SpectraError> {
    let mut out = SpectrumTable::default();
    for (alpha, vexp, m) in p.terms() {
        let w = alpha + vexp;
        if !w.is_integer() {
            return Err(SpectraError::NonIntegralWeight { alpha, vexp });
        }
        out.add(alpha, w.to_integer(), m.clone());
    }
    Ok(out)
}

/// The spectrum in Saito's normalization: the `v = 1` specialization.
pub fn saito_spectrum(p: &BidegreePolynomial) -> UnivariatePolynomial {
    p.specialize_v()
}

/// The spectrum in Varchenko's normalization: `t^(-1)` times Saito's.
pub fn varchenko_spectrum(p: &BidegreePolynomial) -> UnivariatePolynomial {
    saito_spectrum(p).shift_exponents(Exponent::from(-1))
}

/// Dimensions of the weight-graded pieces of the cohomology `H^k` under the
/// monodromy weight filtration, symmetric about `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDims {
    k: i64,
    g: BTreeMap<i64, u64>,
}

impl WeightDims {
    /// Accepts a full grading or any half of it and completes by the forced
    /// symmetry `g(k + j) = g(k - j)`; giving both sides with different
    /// values is an error.
    pub fn new(k: i64, g: BTreeMap<i64, u64>) -> Result<Self, SpectraError> {
        let mut full = BTreeMap::new();
        for (&w, &dim) in &g {
            let partner_w = 2 * k - w;
            if let Some(&partner_dim) = g.get(&partner_w) {
                if partner_dim != dim {
                    return Err(SpectraError::SymmetryViolation {
                        k,
                        w,
                        dim,
                        partner_w,
                        partner_dim,
                    });
                }
            }
            if dim > 0 {
                full.insert(w, dim);
                full.insert(partner_w, dim);
            }
        }
        Ok(WeightDims { k, g: full })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// The completed grading, zero weights omitted.
    pub fn dims(&self) -> &BTreeMap<i64, u64> {
        &self.g
    }

    fn dim(&self, w: i64) -> u64 {
        self.g.get(&w).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.g.values().sum()
    }

    /// Counts of Jordan blocks of the monodromy logarithm by size:
    /// `count(m) = g(k + m - 1) - g(k + m + 1)`, zero counts omitted.
    /// The counts always satisfy `sum of m * count(m) = total dimension`.
    /// Errors when some derived count is negative, i.e. the grading is not a
    /// monodromy weight filtration.
    pub fn jordan_block_counts(&self) -> Result<BTreeMap<u64, u64>, SpectraError> {
        let mut out = BTreeMap::new();
        let max_w = self.g.keys().next_back().copied().unwrap_or(self.k);
        let max_m = (max_w - self.k + 1).max(0) as u64;
        for m in 1..=max_m {
            let w = self.k + m as i64 - 1;
            let (dim, next_dim) = (self.dim(w), self.dim(w + 2));
            if dim < next_dim {
                return Err(SpectraError::NegativeBlockCount {
                    m,
                    w,
                    dim,
                    next_w: w + 2,
                    next_dim,
                });
            }
            if dim > next_dim {
                out.insert(m, dim - next_dim);
            }
        }
        Ok(out)
    }
}
