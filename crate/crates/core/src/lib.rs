//! Superstar game values and the games built from them.
//!
//! * [`game`]: normal-play partizan games, disjunctive sums and a memoized solver.
//! * [`superstar`]: superstars, their classes, simplification, strategy and comets.
//! * [`paintcan`]: the Paint Can brick-stack game.
//! * [`epmx`]: multistate XOR formula games.
//! * [`blackout`]: the Blackout lights game and GF(2) solving.
//! * [`reductions`]: CNF, set cover and the maps between the games above.

pub mod blackout;
pub mod epmx;
pub mod error;
pub mod exec;
pub mod families;
pub mod game;
pub mod nimber;
pub mod paintcan;
pub mod reductions;
pub mod superstar;

pub use error::{Error, ErrorKind, Result};
pub use exec::Exec;
pub use game::{Game, OutcomeClass, Player, Solver, SolverConfig, SumPosition};
pub use nimber::Nimber;
pub use superstar::{StarValue, Superstar, SuperstarClass};
