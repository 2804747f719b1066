//! Root data, real structures and Weyl groups.

mod datum;
mod system;
pub mod types;
mod vectors;
mod weyl;

pub use datum::{q_value, validate_datum, Involution, RawDatum, RealRootDatum, RootClassification};
pub use system::{PositiveSystem, RootSystem};
pub use vectors::{CoweightVec, WeightVec};
pub use weyl::{WeylElement, WeylGroup, DEFAULT_WEYL_CAP};
