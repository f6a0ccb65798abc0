//! Exact computations in string and locally string algebras `kQ/I` over
//! the rationals: presentations and their axioms, path bases, maximal
//! paths and radicals, derivations and automorphisms, the polynomial matrix
//! embedding with its modified Smith form, and the decomposition of
//! automorphisms into exponential, inner and graded factors.

pub mod config;
pub mod decompose;
pub mod error;
pub mod linalg;
pub mod maximal_paths;
pub mod morphisms;
pub mod path;
pub mod polymat;
pub mod path_algebra;
pub mod quiver;

pub use config::Config;
pub use error::{Error, Result};
pub use path::Path;
pub use path_algebra::{Element, Rational};
pub use quiver::{parse_quiver, AlgebraPresentation, ArrowId, Classification, Quiver, VertexId};
