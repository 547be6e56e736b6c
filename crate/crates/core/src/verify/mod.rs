//! Verification campaigns: exhaustive and randomized checks of the sumset
//! inequalities, extremizer search, and the reports they produce.

pub mod campaigns;
pub mod report;
pub mod runner;
pub mod sampling;
pub mod search;

pub use campaigns::{
    cube_witness_exact, run_campaign, verify_cube_containing, verify_dilate_bound,
    verify_energy_bounds, verify_klein_sum_with_cube, verify_n_fold_hypercube, verify_three_sets,
    verify_two_sets, CampaignConfig, Mode, Statement,
};
pub use report::{CampaignReport, SideCheck, Tally, Witness, REPORT_VERSION};
pub use search::search_min_ratio;
