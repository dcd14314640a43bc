//! Indecomposable {4321, 3241}-avoiding permutations, the bijection that sends
//! them to pairs (indecomposable 321-avoider, bounded-growth height sequence),
//! and the lattice-path and power-series machinery that turns the bijection
//! into the generating function `1 / (1 - x C(x C(x)))`.
//!
//! Positions and values are 1-indexed at every public entry point.

pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod paths;
pub mod perm;
pub mod series;
pub mod verify;

pub use bijection::{
    analyze, associated_triple, blue_entries, check_avoider, forward_map, insertion_position, inverse_map,
    is_avoider, order_runs, peak_blue, peak_insertion_list, peak_insertion_set, Analysis, Bound, ListOrder,
    MapImage, RunDecomposition, Triple,
};
pub use enumerate::{count_avoiders, enumerate_avoiders, visit_avoiders};
pub use error::{Error, Result};
pub use paths::{
    ballot, enumerate_height_sequences, heights_to_path, path_to_heights, HeightSequence, LatticePath, Step,
};
pub use perm::{standardize, PatternSet, Permutation};
pub use series::IntSeries;
