//! Benchmark drivers: estimator accuracy tables, the walk-sampling lower
//! bound, and thread scaling.

mod lowerbound;
mod parallel;
mod record;
mod run;

pub use lowerbound::{lower_bound_experiment, LowerBoundPoint, LowerBoundReport};
pub use parallel::{parallel_bench, ParallelReport, ThreadTiming};
pub use record::{
    read_records, summarize, validate_summary, write_records, BenchRecord, Reference, SummaryRow,
};
pub use run::{
    default_t_max, run_bench, size_sweep, walk_sweep, BenchConfig, BenchOutput, EXACT_MAX_NODES,
};
