//! Connected components of cell sets and the decisions built on them.

mod automaton;
mod census;
mod classify;
mod crossing;
mod label;
mod profile;
mod threshold;
mod unionfind;
mod wrap;

pub use automaton::{
    is_connected_exact, neighbor_automaton, piece_graph, piece_intersection, NeighborAutomaton,
};
pub use census::{local_component_census, Census};
pub use classify::{classify, Classification, Verdict};
pub use crossing::{channel_path, crossing_path};
pub use label::{label_components, Adjacency, ComponentLabeling, ComponentStats};
pub use profile::{component_count_profile, direct_profile, skeleton_applies};
pub use threshold::{threshold_value, Sqrt2Multiple};
pub use unionfind::{OffsetUnionFind, UnionFind};
pub use wrap::{complement_analysis, label_torus_offsets, primitive, WrapReport};
