//! Reductions between the problems and games in this crate, with the
//! brute-force oracles that check them.
//!
//! * restricted 3-CNF → EPMX ([`threesat_to_epmx`])
//! * EPMX → sum of superstars ([`epmx_to_superstars`]) → comets
//! * 3-uniform set cover → pure set cover ([`setcover_to_pure`]) → Blackout

mod certificate;
mod cnf;
mod oracles;
mod pipeline;
mod setcover;
mod stars;
mod threesat;

pub use certificate::{certify_pure_to_blackout, certify_setcover_to_pure, certify_threesat, ReductionCertificate};
pub use cnf::{normalize_3sat, CnfInstance, Occurrences};
pub use oracles::{
    oracle_exact_cover_witness, oracle_has_exact_cover, oracle_min_cover, oracle_min_cover_witness, oracle_sat,
    ORACLE_BUDGET,
};
pub use pipeline::{run_reduction, ReductionKind, ReductionOutput};
pub use setcover::{
    exact_cover_from_cover, pure_setcover_to_blackout, setcover_to_pure, SetCoverDocument, SetCoverInstance,
};
pub use stars::{epmx_to_superstars, superstars_to_comets, StarsReduction};
pub use threesat::{
    epmx_solution_from_sat, sat_solution_from_epmx, threesat_to_epmx, GadgetState, ThreeSatReduction, VariableGadget,
};
