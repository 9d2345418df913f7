//! Core library for generalized musical spaces: pitch-class set and
//! rhythmic-sequence theory, exhaustive catalogs, network construction
//! and analysis, network-driven compositional design, and data
//! sonification to MIDI.

pub mod catalog;
pub mod design;
pub mod graph;
pub mod metric;
pub mod network;
pub mod pitch;
pub mod rhythm;
pub mod sonify;

pub use catalog::{Catalog, CatalogError, CatalogKind, OrderMode};
pub use design::{DesignError, DesignRun, DesignSequence, HarmonyGenMode, PostmanRoute};
pub use graph::{Graph, GraphError};
pub use metric::Metric;
pub use network::{ChordSequence, NetworkError, NetworkParams, NetworkStats};
pub use pitch::{OperatorName, PcSet, PitchError, ToneRow};
pub use rhythm::{Duration, RhythmError, RhythmSeq};
pub use sonify::{DataSeries, ScaleMap, ScoreEvents, SonifyError};
