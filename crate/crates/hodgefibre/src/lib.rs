//! Symbolic calculator for Hodge-theoretic invariants of degenerations.
//!
//! The crate computes, exactly and symbolically:
//!
//! * Hodge number and Hodge-Euler polynomials of (fractional) Hodge
//!   structures ([`hodge`], [`equivariant`]);
//! * classes of familiar varieties in the polynomial realization of the
//!   Grothendieck ring ([`classes`]);
//! * motivic nearby and vanishing fibres of one-parameter degenerations with
//!   normal crossing special fibre, together with the blow-up moves that
//!   leave them invariant ([`degeneration`]);
//! * Jordan block data of the monodromy acting on the cohomology of the
//!   generic fibre ([`spectra`]);
//! * singularity spectra in their Saito and Varchenko normalizations, and
//!   their Thom-Sebastiani products ([`spectra`], [`equivariant`]).
//!
//! Everything is computed over exact integers and rationals; no floating
//! point enters at any stage. Start with [`ring::BidegreePolynomial`], the
//! value type that every other module produces or consumes, and see the
//! `examples/` directory for one runnable walkthrough per capability.

pub mod classes;
pub mod cli;
pub mod degeneration;
pub mod equivariant;
pub mod files;
pub mod hodge;
pub mod ring;
pub mod spectra;
