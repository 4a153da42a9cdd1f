//! Partitions, tableau generating functions, enumeration oracles, and
//! shape statistics.

mod enumerate;
mod gf;
mod partition;
mod stats;

pub use enumerate::{
    enumerate_pp, enumerate_ssyt, enumerate_syt, gf_from_stats, PP_ENUM_GUARD, SSYT_ENUM_GUARD,
    SYT_ENUM_GUARD,
};
pub use gf::{pp_size_cgf, ssyt_rank_cgf_hookcontent, ssyt_rank_cgf_weyl, syt_maj_cgf};
pub use partition::{Partition, CELL_GUARD};
pub use stats::{
    classify_ssyt, distance_profile, exp_notation, weft, CriteriaReport, DistanceProfile,
    ExpNotation, RectangleReport, PROFILE_CUMULANT_ORDERS,
};
