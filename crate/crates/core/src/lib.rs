//! Cayley automatic representations of wreath products: encoders and
//! decoders for `G ≀ Z`, `Z₂ ≀ F₂` and `Z₂ ≀ Z²`, the machines recognizing
//! their multiplication relations, and brute-force verification harnesses.

pub mod automata;
pub mod bounds;
pub mod cli;
pub mod groups;
pub mod par;
pub mod rep_f2;
pub mod rep_grid;
pub mod rep_z;
pub mod verify;
