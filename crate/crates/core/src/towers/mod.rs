//! Strict towers of complexes and the maps between them.

mod filtered;
mod random;
mod tower;

pub use filtered::{FilteredComplex, FilteredMap, Generator};
pub use random::{
    random_complex, random_filtered, random_split, random_tower, random_tower_map, RandomParams, MAX_RANDOM_GENERATORS,
    MAX_RANDOM_LEVELS,
};
pub use tower::{cofiber_tower, is_retract, make_tower, CompositeOnHomology, DirectSum, Tower, TowerMap};
