//! Finitely generated subgroups of free groups and equalisers of free-group
//! homomorphisms.
//!
//! Words are freely reduced on construction ([`Word`]), subgroups are
//! represented by folded core graphs ([`SubgroupGraph`]), and maps by
//! generator-image tables ([`Homomorphism`]). On top of these sit the
//! stable-domain iteration ([`stable_domain`]), the equaliser solvers
//! ([`equaliser`]) and seeded property campaigns ([`harness`]).

pub mod equaliser;
pub mod error;
pub mod harness;
pub mod morphisms;
pub mod stable_domain;
pub mod stallings;
pub mod syntax;
pub mod words;

pub use error::{Error, Result};
pub use morphisms::{Homomorphism, MapSet};
pub use stallings::{Basis, Edge, SubgroupGraph};
pub use syntax::{format_word, parse_word};
pub use words::{Alphabet, Letter, Word};
