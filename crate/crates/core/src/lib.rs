//! Counting and estimating delta-instances of temporal motifs.
//!
//! * [`graph`]: temporal multigraph storage and windowed queries.
//! * [`motif`]: ordered motif patterns, matching orders, wedge plans.
//! * [`backtrack`]: exact per-edge and global counting.
//! * [`oracle`]: brute-force reference counter for tests.
//! * [`sampler`]: edge sampling estimator.
//! * [`wedge`]: edge-wedge sampling for 3-vertex 3-edge motifs.
//! * [`stream`]: one-pass versions of both samplers.
//!
//! Estimator outputs are generic over a [`Scalar`]; the aliases below fix the
//! common choices.

pub mod backtrack;
pub mod coin;
pub mod error;
pub mod graph;
pub mod motif;
pub mod oracle;
mod parallel;
pub mod sampler;
pub mod scalar;
pub mod stream;
pub mod synth;
pub mod wedge;

pub use backtrack::{count_exact, count_exact_with_workers, local_count, LocalCount};
pub use error::{Error, Result};
pub use graph::{Delta, Direction, EdgeKey, GraphStats, TemporalEdge, TemporalGraph, TemporalIndex, Timestamp, VertexId};
pub use motif::{MatchingOrder, Motif, MotifClass, WedgePlan, BUILTIN_MOTIFS};
pub use oracle::brute_force_count;
pub use sampler::{estimate_es, plan_probability, sample_mask, Algorithm, EstimateOf, SamplerConfigOf};
pub use scalar::{Rational, Scalar};
pub use stream::{StreamAlgorithm, StreamState};
pub use wedge::estimate_ews;

pub type Estimate = EstimateOf<f64>;
pub type SamplerConfig = SamplerConfigOf<f64>;
pub type EstimateF32 = EstimateOf<f32>;
pub type SamplerConfigF32 = SamplerConfigOf<f32>;
pub type ExactEstimate = EstimateOf<Rational>;
pub type ExactSamplerConfig = SamplerConfigOf<Rational>;
pub type Stream<'m> = StreamState<'m, f64>;
