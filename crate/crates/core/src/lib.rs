//! Exact computer algebra for the formality of Hochschild cochains of
//! polynomial algebras: polyvectors, polydifferential cochains, word
//! coalgebras, and the comparison maps between them.

pub mod cooperadic;
pub mod error;
pub mod exactlin;
pub mod formality;
pub mod hochschild;
pub mod lincomb;
pub mod polyalg;
pub mod verify;

pub use error::{Error, Result};
