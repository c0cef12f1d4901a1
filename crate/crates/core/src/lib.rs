//! Integer sets modelling semi-infinite wedges for affine `sl(n)`: the roof
//! operator, Kashiwara crystal operators, Demazure crystals generated top-down
//! and bottom-up, and exact expansions in the Fock space.

pub mod cli;
pub mod crystal;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod roof;
pub mod sets;
pub mod verify;

pub use error::{Error, Result};
pub use sets::{residue, IntegerSet, Seam, Word};
