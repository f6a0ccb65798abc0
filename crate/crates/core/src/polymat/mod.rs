//! Matrices over `Q[x]`, the modified Smith factorization and the matrix
//! model of a single infinite maximal path.

mod matrix;
mod poly;
mod psi;
mod smith;

pub use matrix::{parse_matrix, PolyMatrix};
pub use poly::{parse_poly, Poly};
pub use psi::{psi_embed, psi_preimage, CycleEmbedding};
pub use smith::{modified_smith, EliminationStep, SmithFactorization};
