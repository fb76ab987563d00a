//! Space-efficient local computation algorithms: query-local maximal
//! independent set and hypergraph two-coloring, built on k-wise independent
//! bit sources and almost-k-wise-independent random orderings, plus the
//! random query tree / branching process toolkit used to reason about their
//! probe complexity.

pub mod coloring;
pub mod entropy;
pub mod error;
pub mod gf2;
pub mod hypergraph;
pub mod kwise;
pub mod mis;
pub mod ordering;
pub mod query_tree;

pub use coloring::{
    Color, ColorAnswer, ColoringContext, ColoringParams, FailReason, Phase2Outcome, Phase3Outcome,
    VertexStatus, monochromatic_witness, verify_coloring,
};
pub use entropy::{EntropyStream, parse_hex_seed};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use kwise::{SampleSpace, seed_length_bits};
pub use mis::{Graph, MisAnswer, MisContext, MisParams, RoundStatus, mis_witness, verify_mis};
pub use ordering::{RandomOrdering, RankOrder};
pub use query_tree::{
    GwDraw, GwModel, QueryTreeParams, RootRankMode, TreeSample, dominance_check, fit_decay_rate,
    gw_model, sample_query_tree, simulate_gw_total,
};
