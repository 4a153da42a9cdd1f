//! Rooted forests: linear extension statistics, hook length products,
//! chain decompositions, and degenerate-limit diagnostics.

mod forest;

pub use forest::{
    forest_cgf, forest_cumulant, forest_rank, h_tree, lp_degree, parse_forest, poset_hooks,
    standardize, RootedForest,
};

mod labeling;

pub use labeling::{
    is_natural, is_regular, linear_extensions, seeded_labelings, verify_bw, word_inv, word_maj,
    BwReport, ExtensionEntry, GeneralBwReport, GeneralPoset, Labeling, LinearExtensionReport,
    EXTENSION_GUARD,
};

mod elevation;

pub use elevation::{
    chain_elevation_data, degenerate_diagnostics, delete_chain, easy_construction, elevations,
    forest_dc_check, generic_bounds_check, maximal_chains, ChainStrategy, DegenerateCumulantRow,
    DegenerateReport, ElevationData, GenericBoundsReport, DIAGNOSTIC_CUMULANT_ORDERS,
};

mod gen;

pub use gen::{all_forests, all_trees};
