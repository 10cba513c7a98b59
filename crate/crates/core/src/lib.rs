pub mod characters;
pub mod cli;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod localcoh;
pub mod multiplicities;
pub mod orbits;
pub mod quiver;
pub mod simples;
pub mod symchar;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
