//! The formality comparison: `Xi(A)`, the binary values of the embedding
//! into cochains, the obstruction systems, cobar constructions and the maps
//! back to polyvector fields.

pub mod xi;
pub mod cobar;
pub mod gerst;
pub mod sigma;
pub mod obstruction;
pub mod harrison;
