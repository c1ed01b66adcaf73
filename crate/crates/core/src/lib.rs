pub mod algebra;
pub mod artin_hasse;
pub mod cli;
pub mod conductor;
pub mod curve;
pub mod error;
pub mod gen;
pub mod localsym;
pub mod modulus;
pub mod structure;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
