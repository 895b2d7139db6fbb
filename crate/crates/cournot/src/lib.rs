//! Approximate preclusion, exact coin statistics and the co-event probability obstruction.

pub mod approx;
pub mod coin;
pub mod error;
pub mod evenodd;
pub mod theorem;

pub use approx::{approx_scheme, approximate_nulls, ApproximateCoEvent};
pub use coin::{
    binomial_measure, cumulative, decimal, h_epsilon, hypothesis_test, max_history_probability,
    strong_cournot_all_histories_ruled_out, uniform_counterexample_support_size, CoinModel, HEpsilon, TestOutcome,
    UniformCounts, Verdict,
};
pub use error::CournotError;
pub use evenodd::{even_odd_witness, single_partition_witness, EvenOddWitness, SinglePartitionWitness};
pub use theorem::{
    check_coevent_probability_constraint, feasible_vertices, multiplicative_weight_support, q_functional, r_functional,
    triple_summary, TripleSummary, WeightSupport,
};
