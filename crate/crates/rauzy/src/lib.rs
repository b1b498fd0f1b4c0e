//! Rauzy classes of permutation pairs.

pub mod catalog;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod pair;
pub mod surgery;
pub mod switches;
pub mod verify;

pub use error::{Error, Result};
pub use moves::{apply_move, apply_path, cycle_distance, cycle_vertices, to_standard, Move, Path, Side};
pub use pair::{pair, Letter, Pair};
