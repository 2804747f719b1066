//! Chambers and facets of hyperplane arrangements.

mod complex;
mod roots;
mod split;

pub use complex::{
    enumerate_chambers, Arrangement, Chamber, ChamberComplex, Facet, HyperplaneRef,
    DEFAULT_HYPERPLANE_CAP,
};
pub use roots::{
    facet_census, wall_subsystem, FacetCensus, RootArrangement, WallCount, WallSystem,
};
pub use split::SplitChambers;
