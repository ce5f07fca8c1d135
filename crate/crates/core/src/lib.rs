//! Finite alphabet iterative decoders and adaptive decimation for
//! column-weight-three LDPC codes on the binary symmetric channel.

pub mod analysis;
pub mod decimation;
pub mod error;
pub mod faid;
pub mod gf2;
pub mod graph;
pub mod level;
pub mod presets;
pub mod rule;
pub mod sim;

pub use decimation::{
    build_schedule, parse_schedule, residual_graph, Adfaid, AdfaidConfig, AdfaidOutcome,
    DecimationState, RuleSchedule, Triple, TripleSet,
};
pub use error::{Error, Result};
pub use faid::{faid_decode, DecodeOutcome, Faid};
pub use graph::{
    induced_subgraph, is_stopping_set, parse_alist, write_alist, NodeRole, NodeSet, Subgraph,
    TannerGraph,
};
pub use level::{ChannelSign, Level};
pub use rule::{parse_rule_file, validate_rule, LutRule, ThresholdRule, VariableRule};
