//! Winning move for a sum of superstars and nimbers in which the mover owns
//! more 0-class components than the opponent.

use serde::{Deserialize, Serialize};

use super::{StarValue, SuperstarClass};
use crate::error::{Error, Result};
use crate::game::Player;
use crate::nimber::Nimber;

/// Move component `component` to the nimber `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarMove {
    pub component: usize,
    pub to: Nimber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    /// A nimber (literal or a superstar shaped like one) of this value.
    Nim(u64),
    /// 0 is available to the mover only.
    Own0,
    /// 0 is available to the opponent only.
    Their0,
    No0,
}

fn role(v: &StarValue, mover: Player) -> Result<Role> {
    if let Some(n) = v.as_nimber() {
        return Ok(Role::Nim(n.0));
    }
    let class = v.classify();
    Ok(match (class, mover) {
        (SuperstarClass::Left0, Player::Left) | (SuperstarClass::Right0, Player::Right) => Role::Own0,
        (SuperstarClass::Left0, Player::Right) | (SuperstarClass::Right0, Player::Left) => Role::Their0,
        (SuperstarClass::No0, _) => Role::No0,
        (other, _) => {
            return Err(Error::precondition(format!(
                "component {v} has class {other:?}; only nimbers, No0, Left0 and Right0 are allowed"
            )))
        }
    })
}

/// A winning move for `mover` in `sum`.
///
/// Requires every component to be a nimber, No0, Left0 or Right0, and the
/// mover to own strictly more 0-class components than the opponent. The
/// all-nimber-and-No0 endgame with a non-zero nim-sum is also accepted, since
/// play from a valid start reaches it.
///
/// Phases:
/// 1. while the opponent owns a 0-class component, move it to the mover's
///    smallest option;
/// 2. with exactly one own 0-class left, take it to 0 when the nimbers already
///    cancel, otherwise fix the nim-sum;
/// 3. with several, leave them alone: fix the nim-sum if possible, else make
///    the smallest other move, and only touch them once nothing else remains.
pub fn zero_game_win_move(sum: &[StarValue], mover: Player) -> Result<StarMove> {
    let roles = sum.iter().map(|v| role(v, mover)).collect::<Result<Vec<_>>>()?;
    let own = roles.iter().filter(|r| **r == Role::Own0).count();
    let theirs = roles.iter().filter(|r| **r == Role::Their0).count();
    let nim_sum = roles.iter().fold(0, |acc, r| match r {
        Role::Nim(n) => acc ^ n,
        _ => acc,
    });

    let start_ok = own > theirs;
    let endgame_ok = own == 0 && theirs == 0 && nim_sum != 0;
    if !start_ok && !endgame_ok {
        return Err(Error::precondition(format!(
            "mover owns {own} zero-class components against {theirs} (nim-sum {nim_sum})"
        )));
    }

    if let Some(i) = roles.iter().position(|r| *r == Role::Their0) {
        let to = sum[i].side(mover).into_iter().min().expect("0-class superstars are two-sided");
        return Ok(StarMove { component: i, to: Nimber(to) });
    }

    let fix_nim_sum = || {
        (nim_sum != 0)
            .then(|| {
                roles.iter().enumerate().find_map(|(i, r)| match r {
                    Role::Nim(n) if n ^ nim_sum < *n => Some(StarMove { component: i, to: Nimber(n ^ nim_sum) }),
                    _ => None,
                })
            })
            .flatten()
    };
    let first_own = || roles.iter().position(|r| *r == Role::Own0);

    if own <= 1 {
        if let Some(mv) = fix_nim_sum() {
            return Ok(mv);
        }
        let i = first_own().expect("endgame with a non-zero nim-sum always has a fixing move");
        return Ok(StarMove { component: i, to: Nimber(0) });
    }

    if let Some(mv) = fix_nim_sum() {
        return Ok(mv);
    }
    let smallest = roles
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, Role::Nim(_) | Role::No0))
        .filter_map(|(i, _)| sum[i].side(mover).into_iter().min().map(|to| (to, i)))
        .min();
    Ok(match smallest {
        Some((to, i)) => StarMove { component: i, to: Nimber(to) },
        None => StarMove { component: first_own().expect("own > 1"), to: Nimber(0) },
    })
}
