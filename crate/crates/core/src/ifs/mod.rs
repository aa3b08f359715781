//! Contraction systems: cube symmetries, similitudes, grid digit systems and
//! the named constructions.

mod config;
mod grid;
mod map;
mod moran;
mod named;
mod symmetry;
mod system;

pub use config::{load_system, parse_system, system_to_config, SystemConfig};
pub use grid::{Digit, GridIFS};
pub use map::AffineMap;
pub use moran::{moran_dimension, MoranDimension};
pub use named::{
    build_corpus, corpus_info, e1, e2, e4, e4_projection, e_interval, f3, f_interval, g_cube,
    g_parts, g_ratio_cap, carpet, x_strip, CorpusInfo, GParts, NamedSystem, CORPUS,
};
pub use symmetry::Symmetry;
pub use system::{word_name, IFSystem, MAX_REFINED_MAPS};
