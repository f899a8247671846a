//! The septic system at a positive nome and the completion of the value of
//! `φ(e^(-7π√7))`.

mod complete;
mod cubic;
mod septic;

pub use complete::{complete_evaluation, complete_misprinted, run_pipeline, septic_point, Completion, Pipeline};
pub use cubic::{assign_roots, cubic_roots, uvw_candidates, RootAssignment, PERMUTATIONS};
pub use septic::{
    compute_p, compute_uvw, p_residual, ratio4_oracle, solve_ratio4, uvw_sum_residual, verify_quartic_relation, Branch,
    SepticState,
};
