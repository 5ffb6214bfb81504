pub mod bernstein;
pub mod error;
pub mod example_n2;
pub mod expr;
pub mod format;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod modules;
pub mod pairing;
pub mod parabolic;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use hecke::{Generator, HeckeElt};
pub use kl::{KLLabel, KlElt};
pub use laurent::{LaurentPoly, Rational};
pub use weyl::{AffinePerm, ReducedExpr};
