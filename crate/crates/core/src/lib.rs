//! Finite-truncation models of Cantor dynamical systems and the abelian
//! groups attached to them.
//!
//! The crate has two halves. The exact half ([`zlattice`], [`freeboundary`],
//! [`denjoy`], [`ktheory`]) computes presentations of finitely generated
//! abelian groups arising from truncated crossed-product constructions:
//! everything there is integer arithmetic, no rounding ever. The numerical
//! half ([`symdyn`], [`shiftspec`]) checks identities of weighted shift
//! operators and the combinatorics of Sturmian sequences in floating point,
//! with every tolerance made explicit at the call site.

pub mod denjoy;
pub mod freeboundary;
pub mod ktheory;
pub mod shiftspec;
pub mod symdyn;
pub mod zlattice;
