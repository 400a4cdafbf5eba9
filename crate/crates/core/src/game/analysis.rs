use std::cmp::Ordering;

use super::{Game, PureProfile};
use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::perturbation::Agent;
use crate::scalar::Scalar;

/// Indices of `player`'s actions that maximise its payoff against the
/// opponent's action `opponent`. Ties return every maximiser.
pub fn best_responses(game: &Game, player: Agent, opponent: usize) -> Result<Vec<usize>> {
    let other = player.other();
    if opponent >= game.action_count(other) {
        return Err(Error::UnknownAction(format!("{other} action #{opponent}")));
    }
    let at = |own: usize| {
        let p = PureProfile::new(0, 0).with_action(other, opponent).with_action(player, own);
        game.payoff(player, p)
    };
    let n = game.action_count(player);
    let best = (0..n).map(at).fold(at(0), |m, x| if x.compare(m) == Ordering::Greater { x } else { m });
    Ok((0..n).filter(|&i| at(i).compare(best) == Ordering::Equal).collect())
}

fn is_best(game: &Game, player: Agent, p: PureProfile) -> bool {
    let own = game.payoff(player, p);
    (0..game.action_count(player)).all(|alt| {
        game.payoff(player, p.with_action(player, alt)).compare(own) != Ordering::Greater
    })
}

/// Every cell where both actions are mutual best responses, row-major.
pub fn pure_nash(game: &Game) -> Vec<PureProfile> {
    game.profiles()
        .filter(|&p| is_best(game, Agent::Angel, p) && is_best(game, Agent::Daemon, p))
        .collect()
}

/// Cells whose actions are best responses to every opponent action.
pub fn dominant_equilibria(game: &Game) -> Vec<PureProfile> {
    let dominant = |player: Agent| -> Vec<usize> {
        let other = player.other();
        (0..game.action_count(player))
            .filter(|&own| {
                (0..game.action_count(other)).all(|opp| {
                    let p = PureProfile::new(0, 0).with_action(other, opp).with_action(player, own);
                    is_best(game, player, p)
                })
            })
            .collect()
    };
    let rows = dominant(Agent::Angel);
    let cols = dominant(Agent::Daemon);
    rows.iter()
        .flat_map(|&r| cols.iter().map(move |&c| PureProfile::new(r, c)))
        .collect()
}

/// One step of iterated strict dominance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub player: Agent,
    pub removed: ComponentSet,
    pub dominated_by: ComponentSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Elimination {
    pub game: Game,
    /// Surviving angel actions as indices into the original game.
    pub rows: Vec<usize>,
    /// Surviving daemon actions as indices into the original game.
    pub cols: Vec<usize>,
    pub trace: Vec<Removal>,
}

/// Removes strictly dominated pure actions until none remain, angel first
/// in each pass and one action at a time.
pub fn eliminate_strictly_dominated(game: &Game) -> Elimination {
    let mut alive = [
        (0..game.rows()).collect::<Vec<_>>(),
        (0..game.cols()).collect::<Vec<_>>(),
    ];
    let mut trace = Vec::new();
    'outer: loop {
        for (slot, player) in [(0, Agent::Angel), (1, Agent::Daemon)] {
            let others = &alive[1 - slot];
            let own = &alive[slot];
            let value = |mine: usize, theirs: usize| {
                game.payoff(player, PureProfile::new(0, 0).with_action(player, mine).with_action(player.other(), theirs))
            };
            let found = own.iter().enumerate().find_map(|(pos, &victim)| {
                own.iter()
                    .find(|&&dom| {
                        dom != victim
                            && others
                                .iter()
                                .all(|&t| value(dom, t).compare(value(victim, t)) == Ordering::Greater)
                    })
                    .map(|&dom| (pos, victim, dom))
            });
            if let Some((pos, victim, dom)) = found {
                trace.push(Removal {
                    player,
                    removed: game.actions(player)[victim].clone(),
                    dominated_by: game.actions(player)[dom].clone(),
                });
                alive[slot].remove(pos);
                continue 'outer;
            }
        }
        break;
    }
    let [rows, cols] = alive;
    Elimination {
        game: game.restrict(&rows, &cols),
        rows,
        cols,
        trace,
    }
}

/// A probability distribution over one player's action list.
#[derive(Clone, PartialEq, Debug)]
pub struct MixedStrategy(Vec<Scalar>);

impl MixedStrategy {
    /// Entries must lie in `[0,1]` and sum to one (exactly, for exact entries).
    pub fn new(probs: Vec<Scalar>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("no actions".into()));
        }
        if let Some(p) = probs.iter().find(|p| p.signum() < 0 || p.compare(&Scalar::one()) == Ordering::Greater) {
            return Err(Error::InvalidStrategy(format!("probability {p} outside [0,1]")));
        }
        let total: Scalar = probs.iter().cloned().sum();
        if total.compare(&Scalar::one()) != Ordering::Equal {
            return Err(Error::InvalidStrategy(format!("probabilities sum to {total}")));
        }
        Ok(MixedStrategy(probs))
    }

    pub fn pure(len: usize, index: usize) -> Self {
        MixedStrategy(
            (0..len)
                .map(|i| if i == index { Scalar::one() } else { Scalar::zero() })
                .collect(),
        )
    }

    pub fn probabilities(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices with positive probability.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].signum() > 0).collect()
    }

    /// The action index when the strategy is a point mass.
    pub fn as_pure(&self) -> Option<usize> {
        match self.support().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

/// Expected payoff `sum_{a,d} alpha(a) beta(d) u_player(a,d)`.
pub fn mixed_utility(game: &Game, alpha: &MixedStrategy, beta: &MixedStrategy, player: Agent) -> Result<Scalar> {
    check_dims(game, alpha, beta)?;
    Ok(game
        .profiles()
        .map(|p| &(&alpha.0[p.row] * &beta.0[p.col]) * game.payoff(player, p))
        .sum())
}

fn check_dims(game: &Game, alpha: &MixedStrategy, beta: &MixedStrategy) -> Result<()> {
    for (len, expected) in [(alpha.len(), game.rows()), (beta.len(), game.cols())] {
        if len != expected {
            return Err(Error::DimensionMismatch { expected, found: len });
        }
    }
    Ok(())
}

/// Checks the equilibrium conditions: every action in a player's support
/// earns the mixed payoff and no action earns more.
pub fn is_mixed_nash(game: &Game, alpha: &MixedStrategy, beta: &MixedStrategy) -> Result<bool> {
    check_dims(game, alpha, beta)?;
    for (player, own, opp) in [(Agent::Angel, alpha, beta), (Agent::Daemon, beta, alpha)] {
        let value = |action: usize| -> Scalar {
            (0..opp.len())
                .map(|o| {
                    let p = PureProfile::new(0, 0).with_action(player, action).with_action(player.other(), o);
                    &opp.0[o] * game.payoff(player, p)
                })
                .sum()
        };
        let total: Scalar = (0..own.len()).map(|i| &own.0[i] * &value(i)).sum();
        for i in 0..own.len() {
            let ord = value(i).compare(&total);
            let in_support = own.0[i].signum() > 0;
            if ord == Ordering::Greater || (in_support && ord != Ordering::Equal) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
