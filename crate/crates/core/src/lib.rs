//! Closed-form Bergman kernels of bounded two-dimensional monomial polyhedra
//! `{ z ∈ C² : |z1|^b11 |z2|^b21 < 1, |z1|^b12 |z2|^b22 < 1 }`, with numerical
//! oracles to check them.

pub mod cli;
pub mod error;
pub mod intmat;
pub mod kernel;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use intmat::IntMatrix2;
pub use kernel::{general_kernel, hartogs_kernel, HartogsParams, KernelFormula};
pub use poly::BiLaurentPoly;
