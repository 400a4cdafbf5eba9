//! Alternating best-response dynamics.

use std::collections::HashMap;
use std::fmt;

use crate::game::{best_responses, Game, PureProfile};
use crate::perturbation::Agent;

/// The mover's new profile, or `None` when its action is already a best
/// response. Ties go to the lowest-indexed best response.
pub fn best_response_step(game: &Game, profile: PureProfile, mover: Agent) -> Option<PureProfile> {
    let opponent = profile.action(mover.other());
    let best = best_responses(game, mover, opponent).expect("profile inside the game");
    if best.contains(&profile.action(mover)) {
        None
    } else {
        Some(profile.with_action(mover, best[0]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub mover: Agent,
    pub profile: PureProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Both players passed in a row at this profile.
    Converged(PureProfile),
    /// The state after `start` applied steps recurs every `period` steps.
    Cycle { start: usize, period: usize },
    /// `max_steps` steps were applied without settling.
    Truncated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub start: PureProfile,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

/// Alternates movers from `first_mover`; a player with no improving move
/// passes. Stops on two consecutive passes, on a repeated
/// `(profile, next mover)` state, or after `max_steps` moves.
pub fn run_dynamics(game: &Game, start: PureProfile, first_mover: Agent, max_steps: usize) -> DynamicsTrace {
    let mut seen: HashMap<(PureProfile, Agent), usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut profile = start;
    let mut mover = first_mover;
    let mut passes = 0;
    let outcome = loop {
        if let Some(&at) = seen.get(&(profile, mover)) {
            if at < steps.len() {
                break Outcome::Cycle {
                    start: at,
                    period: steps.len() - at,
                };
            }
        }
        seen.entry((profile, mover)).or_insert(steps.len());
        match best_response_step(game, profile, mover) {
            None => {
                passes += 1;
                if passes == 2 {
                    break Outcome::Converged(profile);
                }
            }
            Some(_) if steps.len() == max_steps => break Outcome::Truncated(max_steps),
            Some(next) => {
                passes = 0;
                profile = next;
                steps.push(Step { mover, profile });
            }
        }
        mover = mover.other();
    };
    DynamicsTrace { start, steps, outcome }
}

impl DynamicsTrace {
    /// Arrow notation, e.g. `({b},{G,P}) --D--> ({b},{P,T}) --A--> ...`.
    pub fn render(&self, game: &Game) -> String {
        let mut out = game.label(self.start);
        for s in &self.steps {
            out.push_str(&format!(" --{}--> {}", s.mover.symbol(), game.label(s.profile)));
        }
        out
    }

    pub fn outcome_text(&self, game: &Game) -> String {
        match self.outcome {
            Outcome::Converged(p) => format!("converged at {} after {} step(s)", game.label(p), self.steps.len()),
            Outcome::Cycle { start, period } => format!("cycle of period {period} entered after {start} step(s)"),
            Outcome::Truncated(n) => format!("truncated after {n} step(s)"),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Converged(p) => write!(f, "converged at cell ({}, {})", p.row, p.col),
            Outcome::Cycle { start, period } => write!(f, "cycle from step {start} with period {period}"),
            Outcome::Truncated(n) => write!(f, "truncated after {n} steps"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::pure_nash;

    fn pennies() -> Game {
        Game::from_integers(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn single_cell_converges_immediately() {
        let g = Game::from_integers(&[&[5]], &[&[2]]).unwrap();
        let t = run_dynamics(&g, PureProfile::new(0, 0), Agent::Angel, 10);
        assert_eq!(t.outcome, Outcome::Converged(PureProfile::new(0, 0)));
        assert!(t.steps.is_empty());
    }

    #[test]
    fn matching_pennies_cycles_with_period_four() {
        let g = pennies();
        for p in g.profiles() {
            for first in [Agent::Angel, Agent::Daemon] {
                let t = run_dynamics(&g, p, first, 100);
                assert!(matches!(t.outcome, Outcome::Cycle { period: 4, .. }), "{t:?}");
            }
        }
    }

    #[test]
    fn truncation() {
        let t = run_dynamics(&pennies(), PureProfile::new(0, 0), Agent::Daemon, 2);
        assert_eq!(t.outcome, Outcome::Truncated(2));
        assert_eq!(t.steps.len(), 2);
    }

    #[test]
    fn converged_profiles_are_equilibria() {
        let g = Game::from_integers(&[&[3, 0], &[5, 1]], &[&[3, 5], &[0, 1]]).unwrap();
        let t = run_dynamics(&g, PureProfile::new(0, 0), Agent::Angel, 10);
        let Outcome::Converged(p) = t.outcome else { panic!("{t:?}") };
        assert!(pure_nash(&g).contains(&p));
        assert_eq!(t.render(&g), "({a1},{d1}) --A--> ({a2},{d1}) --D--> ({a2},{d2})");
    }

    #[test]
    fn equilibrium_is_a_fixpoint() {
        let g = pennies();
        let nash = Game::from_integers(&[&[1]], &[&[1]]).unwrap();
        assert_eq!(best_response_step(&nash, PureProfile::new(0, 0), Agent::Daemon), None);
        assert_eq!(
            best_response_step(&g, PureProfile::new(0, 0), Agent::Daemon),
            Some(PureProfile::new(0, 1))
        );
    }
}
