//! Construction and verification of real quadratic fields whose class number
//! is divisible by `2^l · 3`.
//!
//! * [`arith`]: exact integer primitives (CRT, factorization, Kronecker symbol).
//! * [`cubic`]: depressed cubics, the Kishi–Miyake criterion and its
//!   `T^3 - 3mT - 2n` specialization.
//! * [`family`]: CRT residue systems and enumeration of `m^3 - n^2 = 27 t^2 d`.
//! * [`classgroup`]: class numbers of real quadratic fields from reduced
//!   indefinite forms, fundamental units, genus 2-rank, analytic cross-check.

pub mod arith;
pub mod classgroup;
pub mod cubic;
pub mod error;
pub mod family;

pub use arith::{CrtSolution, Factorization};

pub use classgroup::{ClassData, FundamentalUnit, IndefiniteForm};
pub use cubic::{Cubic, KishiMiyakePair, RadicandPair};
pub use error::ArithError;
pub use family::{BoxParameters, CongruenceSystem, SolutionTriple};
