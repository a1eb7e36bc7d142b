//! Witness maps recorded alongside a reduction's output.
//!
//! A certificate lists how source witnesses map to target witnesses. When the
//! source instance is small enough for the oracles, it also carries a concrete
//! witness on each side, already checked.

use serde::Serialize;

use super::cnf::CnfInstance;
use super::oracles::{oracle_min_cover_witness, oracle_sat};
use super::setcover::{exact_cover_from_cover, SetCoverInstance};
use super::threesat::{epmx_solution_from_sat, sat_solution_from_epmx, ThreeSatReduction, VariableGadget};
use crate::blackout::{solve, BlackoutMove, BlackoutPosition, BlackoutSolveConfig, Side};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReductionCertificate {
    #[serde(rename_all = "camelCase")]
    ThreesatToEpmx {
        /// The restricted formula actually reduced, when the input was not
        /// already in restricted form (DIMACS).
        #[serde(skip_serializing_if = "Option::is_none")]
        normalized: Option<String>,
        gadgets: Vec<VariableGadget>,
        cx_clause: usize,
        /// Satisfying CNF assignment, if one exists and was found.
        sat_assignment: Option<Vec<bool>>,
        /// Its image: one literal name per EPMX variable.
        epmx_assignment: Option<Vec<String>>,
    },
    #[serde(rename_all = "camelCase")]
    EpmxToStars {
        /// Variable name behind each superstar, in sum order.
        components: Vec<String>,
        /// Nimber identity of each clause, including covering clauses added
        /// for unused states.
        clause_identities: Vec<u64>,
    },
    #[serde(rename_all = "camelCase")]
    StarsToComets {
        up_count: i64,
        star_parity: bool,
        /// True when the decorations cancel and the comet sum is the input sum.
        bare: bool,
    },
    #[serde(rename_all = "camelCase")]
    SetcoverToPure {
        /// Cover of size at most k in the original instance (0-based set indices).
        cover: Option<Vec<usize>>,
        /// Its image: an exact cover in the enriched instance.
        exact_cover: Option<Vec<usize>>,
    },
    #[serde(rename_all = "camelCase")]
    PureToBlackout {
        cover: Option<Vec<usize>>,
        winner: Side,
        /// A game in which the winner follows a solved strategy and the loser
        /// takes its first legal move each turn.
        trace: Vec<BlackoutMove>,
    },
}

fn within_oracle<T>(r: Result<Option<T>>) -> Result<Option<T>> {
    match r {
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        other => other,
    }
}

/// Certificate for a 3-CNF to EPMX reduction. The EPMX witness is checked by
/// mapping it back to a CNF assignment.
pub fn certify_threesat(cnf: &CnfInstance, reduction: &ThreeSatReduction) -> Result<ReductionCertificate> {
    let sat = within_oracle(oracle_sat(cnf))?;
    let epmx = match &sat {
        Some(a) => {
            let image = epmx_solution_from_sat(cnf, a, reduction)?;
            sat_solution_from_epmx(cnf, reduction, &image)?;
            let inst = &reduction.instance;
            Some(
                image
                    .iter()
                    .enumerate()
                    .map(|(var, s)| inst.literal_name(crate::epmx::Literal { var, state: s.expect("total") }))
                    .collect(),
            )
        }
        None => None,
    };
    Ok(ReductionCertificate::ThreesatToEpmx {
        normalized: None,
        gadgets: reduction.gadgets.clone(),
        cx_clause: reduction.cx_clause,
        sat_assignment: sat,
        epmx_assignment: epmx,
    })
}

fn small_cover(sc: &SetCoverInstance) -> Result<Option<Vec<usize>>> {
    Ok(within_oracle(oracle_min_cover_witness(sc))?.filter(|c| c.len() <= sc.k()))
}

pub fn certify_setcover_to_pure(original: &SetCoverInstance, pure: &SetCoverInstance) -> Result<ReductionCertificate> {
    let cover = small_cover(original)?;
    let exact_cover = cover.as_ref().map(|c| exact_cover_from_cover(original, pure, c)).transpose()?;
    Ok(ReductionCertificate::SetcoverToPure { cover, exact_cover })
}

/// Certificate for a pure set cover to Blackout reduction. Fails with a
/// witness error if the solved winner disagrees with the cover oracle.
pub fn certify_pure_to_blackout(sc: &SetCoverInstance, pos: &BlackoutPosition) -> Result<ReductionCertificate> {
    let cover = small_cover(sc)?;
    let config = BlackoutSolveConfig::default();
    let winner = solve(pos, config)?.winner;
    if (winner == Side::AllOff) != cover.is_some() {
        return Err(Error::InvalidWitness(format!("{winner} wins but the cover oracle disagrees")));
    }
    let mut trace = Vec::new();
    let mut at = pos.clone();
    while at.loser_if_stuck().is_none() {
        let mv = if at.to_move() == winner {
            solve(&at, config)?
                .winning_move
                .ok_or_else(|| Error::InvalidWitness("winner lost its winning move".into()))?
        } else {
            at.legal_moves()[0]
        };
        at = at.apply_move(mv)?;
        trace.push(mv);
    }
    if at.loser_if_stuck() == Some(winner) {
        return Err(Error::InvalidWitness("traced game ended with the solved winner stuck".into()));
    }
    Ok(ReductionCertificate::PureToBlackout { cover, winner, trace })
}
