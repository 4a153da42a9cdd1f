//! Exact arithmetic for q-hook generating functions and their limit laws.
//!
//! The crate is organized around one pipeline:
//!
//! * [`exactpoly`] holds the arithmetic core: quotients of q-integers
//!   ([`exactpoly::Cgf`]), exact polynomial expansion
//!   ([`exactpoly::DensePoly`]), Bernoulli numbers, and exact/standardized
//!   cumulants.
//! * [`tableaux`] builds those quotients for partitions: SYT major index,
//!   SSYT rank (q-Weyl and q-hook-content forms), plane partitions in a box,
//!   brute-force enumerators used as oracles, and the statistics (aft, weft,
//!   distance profiles) that drive the limit-law classification.
//! * [`forests`] does the same for rooted forests: poset hooks, the
//!   Björner-Wachs generating function, linear extensions with inv/maj,
//!   extremal `H_{n,r}` trees, elevation multisets, and the
//!   chain-decomposition cumulant identity.
//! * [`dustpan`] evaluates the continuous limits: generalized uniform sums
//!   `S_t`, their densities/CDFs/characteristic functions, cumulants of
//!   `S_t + N(0, sigma^2)`, and numeric Kolmogorov/Levy distances between a
//!   discrete generating-function distribution and a continuous limit.
//!
//! All combinatorial quantities are exact (`BigUint`/`BigRational`); floats
//! appear only at the final rendering step or inside the purely numeric
//! distribution code.

pub mod dustpan;
pub mod error;
pub mod exactpoly;
pub mod forests;
pub mod par;
pub mod serde_util;
pub mod tableaux;

pub use error::{Error, ErrorKind, Result};
