//! Curvature operators on `Λ²ℝⁿ`: spectra and the functionals `Σ(r,R)` and
//! `C_p`, model spaces, the `O(n)`-decomposition, explicit representation
//! matrices and the operator `K(R,π)` with its exact matrix oracles.

mod kop;
mod models;
mod reps;
mod spectrum;
mod tensor;

pub use kop::{
    casimir_check, casimir_values, check_ricci, check_spinor_scal, irreducible_weight, k_operator, verify_labbi,
    verify_lower_bound, verify_weitzenboeck_split, LabbiReport, LowerBoundReport, WeitzenboeckReport, FLOAT_TOL,
};
pub use models::{nested_monotonicity_check, surgery_stable, theorem_a_report, Model, NestedReport, SurgeryReport};
pub use reps::{clifford_generators, rep_matrices, RepMatrices, RepSummary, DEFAULT_BUDGET};
pub use spectrum::{pairs, sigma_f64, sigma_multiset, Spectrum};
pub use tensor::{pair_index, pair_list, scalar_of, CurvOp, CurvatureParts};
