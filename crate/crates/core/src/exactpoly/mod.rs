//! Exact arithmetic core: q-integers, cyclotomic generating functions,
//! polynomial expansion, Bernoulli numbers, and cumulants.

mod bernoulli;
mod cgf;
mod checks;
mod cumulants;
mod poly;

pub use bernoulli::bernoulli;
pub use cgf::{Cgf, EXPAND_DEGREE_GUARD};
pub use checks::{check_log_concave, check_symmetry, check_unimodal};
pub use cumulants::{
    cgf_cumulant, cumulants_from_moments, moments_from_cumulants, moments_from_poly,
    rational_to_f64, standardized_cumulants, CumulantReport,
};
pub use poly::DensePoly;
