//! Generalized uniform-sum limit distributions and discrete-vs-limit
//! distances.

mod compare;
mod density;
mod params;
mod weights;

pub use compare::{
    discrete_vs_discrete_distance, discrete_vs_limit_distance, discrete_vs_limit_with,
    DistanceReport, LimitCdf, LEVY_TOLERANCE,
};
pub use density::{
    cdf, char_fn, char_fn_complex, density, unit_uniform_sum_density, SUMMAND_GUARD,
};
pub use params::{dustpan_cumulant, DustpanParams};
pub use weights::{
    pointwise_convergence_check, ConvergenceReport, EntryTrajectory, ExactWeights,
    NormTrajectory, WeightMultiset, DISTANCE_MULTISET_GUARD, PADDING_GUARD,
};
