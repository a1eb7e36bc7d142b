//! Text-level entry points for each reduction: parse the source document,
//! reduce, and render the target document.
//!
//! | kind               | input        | output               |
//! |--------------------|--------------|----------------------|
//! | `3sat-to-epmx`     | DIMACS       | EPMX document        |
//! | `epmx-to-stars`    | EPMX document| superstar sum text   |
//! | `stars-to-comets`  | sum text     | comet sum text       |
//! | `setcover-to-pure` | set cover    | set cover            |
//! | `pure-to-blackout` | set cover    | Blackout document    |

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::certificate::{certify_pure_to_blackout, certify_setcover_to_pure, certify_threesat, ReductionCertificate};
use super::cnf::{normalize_3sat, CnfInstance};
use super::setcover::{pure_setcover_to_blackout, setcover_to_pure, SetCoverInstance};
use super::stars::{epmx_to_superstars, superstars_to_comets};
use super::threesat::threesat_to_epmx;
use crate::epmx::{EpmxDocument, Owner};
use crate::error::{Error, Result};
use crate::game::text::parse_star_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    ThreesatToEpmx,
    EpmxToStars,
    StarsToComets,
    SetcoverToPure,
    PureToBlackout,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 5] = [
        ReductionKind::ThreesatToEpmx,
        ReductionKind::EpmxToStars,
        ReductionKind::StarsToComets,
        ReductionKind::SetcoverToPure,
        ReductionKind::PureToBlackout,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::ThreesatToEpmx => "3sat-to-epmx",
            ReductionKind::EpmxToStars => "epmx-to-stars",
            ReductionKind::StarsToComets => "stars-to-comets",
            ReductionKind::SetcoverToPure => "setcover-to-pure",
            ReductionKind::PureToBlackout => "pure-to-blackout",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReductionKind> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown reduction `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    pub output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ReductionCertificate>,
}

/// Runs one reduction on a source document. Formulas outside the restricted
/// form are normalized before the 3-CNF reduction.
pub fn run_reduction(kind: ReductionKind, input: &str, certify: bool) -> Result<ReductionOutput> {
    match kind {
        ReductionKind::ThreesatToEpmx => {
            let cnf = CnfInstance::parse_dimacs(input)?;
            let restricted = normalize_3sat(&cnf);
            let r = threesat_to_epmx(&restricted)?;
            let output = r.instance.to_document(Some(Owner::X)).to_json();
            let certificate = if certify {
                let mut c = certify_threesat(&restricted, &r)?;
                if let ReductionCertificate::ThreesatToEpmx { normalized, .. } = &mut c {
                    *normalized = (restricted != cnf).then(|| restricted.to_dimacs());
                }
                Some(c)
            } else {
                None
            };
            Ok(ReductionOutput { output, certificate })
        }
        ReductionKind::EpmxToStars => {
            let instance = EpmxDocument::from_json(input)?.instance()?;
            let r = epmx_to_superstars(&instance)?;
            let certificate = certify.then(|| {
                let names =
                    |o: Owner| instance.owned_by(o).map(|v| instance.variables()[v].name.clone()).collect::<Vec<_>>();
                let mut components = names(Owner::X);
                components.extend(names(Owner::Y));
                let m = instance.complete_missing_states().clauses().len();
                ReductionCertificate::EpmxToStars { components, clause_identities: (0..m).map(|t| 1u64 << t).collect() }
            });
            Ok(ReductionOutput { output: r.to_string(), certificate })
        }
        ReductionKind::StarsToComets => {
            let c = superstars_to_comets(&parse_star_sum(input)?)?;
            let certificate = certify.then(|| ReductionCertificate::StarsToComets {
                up_count: c.up_count,
                star_parity: c.star_parity,
                bare: c.is_bare(),
            });
            Ok(ReductionOutput { output: c.to_string(), certificate })
        }
        ReductionKind::SetcoverToPure => {
            let sc = SetCoverInstance::from_json(input)?;
            let pure = setcover_to_pure(&sc)?;
            let certificate = if certify { Some(certify_setcover_to_pure(&sc, &pure)?) } else { None };
            Ok(ReductionOutput { output: pure.to_json(), certificate })
        }
        ReductionKind::PureToBlackout => {
            let sc = SetCoverInstance::from_json(input)?;
            let pos = pure_setcover_to_blackout(&sc)?;
            let certificate = if certify { Some(certify_pure_to_blackout(&sc, &pos)?) } else { None };
            Ok(ReductionOutput { output: pos.to_json(), certificate })
        }
    }
}
