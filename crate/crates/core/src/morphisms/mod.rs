//! Endomorphisms on generators, derivations and their exponentials, units
//! and inner automorphisms.

mod derivation;
mod endomorphism;
mod text;
mod unit;

pub use derivation::{make_derivation, Derivation, DerivationType};
pub use endomorphism::{Endomorphism, Membership};
pub use text::{format_morphism, parse_morphism};
pub(crate) use unit::conjugation;
pub use unit::{inner_automorphism, invert_unit, Unit};
