//! Two-player angel-daemon games in bimatrix form and their analysis.

mod analysis;
mod fiscal;
mod linalg;
mod mixed;
mod profile;

pub use analysis::{
    best_responses, dominant_equilibria, eliminate_strictly_dominated, is_mixed_nash,
    mixed_utility, pure_nash, Elimination, MixedStrategy, Removal,
};
pub use fiscal::{classify_fiscal, FiscalClassification};
pub use linalg::solve_linear;
pub use mixed::{
    analyze, analyze_profile, mixed_nash, mixed_nash_report, zero_sum_value, EquilibriumReport,
    MixedEquilibrium, MixedNash,
};
pub use profile::{
    build_game, build_game_strict, enumerate_actions, make_zero_sum_profile, UncertaintyProfile,
    UtilityExpr, Utilities,
};

use std::fmt;

use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::perturbation::{Agent, JointAction};
use crate::scalar::{ExactScalar, Scalar};

/// A cell of the bimatrix, addressed by angel row and daemon column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    pub row: usize,
    pub col: usize,
}

impl PureProfile {
    pub fn new(row: usize, col: usize) -> Self {
        PureProfile { row, col }
    }

    pub fn action(self, player: Agent) -> usize {
        match player {
            Agent::Angel => self.row,
            Agent::Daemon => self.col,
        }
    }

    pub fn with_action(self, player: Agent, action: usize) -> Self {
        match player {
            Agent::Angel => PureProfile { row: action, ..self },
            Agent::Daemon => PureProfile { col: action, ..self },
        }
    }
}

/// A finite two-player game: rows belong to the angel, columns to the daemon.
#[derive(Clone, PartialEq, Debug)]
pub struct Game {
    actions_a: Vec<ComponentSet>,
    actions_d: Vec<ComponentSet>,
    payoff_a: Vec<Scalar>,
    payoff_d: Vec<Scalar>,
    zero_sum: bool,
}

impl Game {
    /// `payoffs[row][col] = (u_A, u_D)`.
    pub fn new(
        actions_a: Vec<ComponentSet>,
        actions_d: Vec<ComponentSet>,
        payoffs: Vec<Vec<(Scalar, Scalar)>>,
    ) -> Result<Self> {
        if actions_a.is_empty() || actions_d.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if payoffs.len() != actions_a.len() {
            return Err(Error::DimensionMismatch {
                expected: actions_a.len(),
                found: payoffs.len(),
            });
        }
        let mut payoff_a = Vec::with_capacity(actions_a.len() * actions_d.len());
        let mut payoff_d = Vec::with_capacity(payoff_a.capacity());
        for row in payoffs {
            if row.len() != actions_d.len() {
                return Err(Error::DimensionMismatch {
                    expected: actions_d.len(),
                    found: row.len(),
                });
            }
            for (ua, ud) in row {
                payoff_a.push(ua);
                payoff_d.push(ud);
            }
        }
        let zero_sum = payoff_a
            .iter()
            .zip(&payoff_d)
            .all(|(a, d)| (a + d).is_zero());
        Ok(Game {
            actions_a,
            actions_d,
            payoff_a,
            payoff_d,
            zero_sum,
        })
    }

    /// A game with actions labelled `a1.., d1..` from two payoff matrices.
    pub fn from_matrices(ua: Vec<Vec<Scalar>>, ud: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = ua.len();
        let n = ua.first().map_or(0, Vec::len);
        let labels = |prefix: char, k: usize| {
            (1..=k)
                .map(|i| ComponentSet::labels([format!("{prefix}{i}")]))
                .collect::<Vec<_>>()
        };
        if ud.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: ud.len(),
            });
        }
        let payoffs = ua
            .into_iter()
            .zip(ud)
            .map(|(ra, rd)| {
                if ra.len() != rd.len() {
                    return Err(Error::DimensionMismatch {
                        expected: ra.len(),
                        found: rd.len(),
                    });
                }
                Ok(ra.into_iter().zip(rd).collect())
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        Game::new(labels('a', m), labels('d', n), payoffs)
    }

    /// A zero-sum game from the angel's payoff matrix.
    pub fn zero_sum_from(u: Vec<Vec<Scalar>>) -> Result<Self> {
        let neg = u
            .iter()
            .map(|row| row.iter().map(|x| -x.clone()).collect())
            .collect();
        Game::from_matrices(u, neg)
    }

    /// Integer payoffs, convenient for small hand-built games.
    pub fn from_integers(ua: &[&[i64]], ud: &[&[i64]]) -> Result<Self> {
        let conv = |m: &[&[i64]]| {
            m.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect())
                .collect()
        };
        Game::from_matrices(conv(ua), conv(ud))
    }

    pub fn rows(&self) -> usize {
        self.actions_a.len()
    }

    pub fn cols(&self) -> usize {
        self.actions_d.len()
    }

    pub fn action_count(&self, player: Agent) -> usize {
        match player {
            Agent::Angel => self.rows(),
            Agent::Daemon => self.cols(),
        }
    }

    pub fn actions(&self, player: Agent) -> &[ComponentSet] {
        match player {
            Agent::Angel => &self.actions_a,
            Agent::Daemon => &self.actions_d,
        }
    }

    pub fn is_zero_sum(&self) -> bool {
        self.zero_sum
    }

    /// True when every payoff is an exact rational.
    pub fn is_exact(&self) -> bool {
        self.payoff_a.iter().chain(&self.payoff_d).all(Scalar::is_exact)
    }

    pub fn payoff(&self, player: Agent, p: PureProfile) -> &Scalar {
        let idx = p.row * self.cols() + p.col;
        match player {
            Agent::Angel => &self.payoff_a[idx],
            Agent::Daemon => &self.payoff_d[idx],
        }
    }

    pub fn cell(&self, p: PureProfile) -> (&Scalar, &Scalar) {
        (self.payoff(Agent::Angel, p), self.payoff(Agent::Daemon, p))
    }

    pub fn profiles(&self) -> impl Iterator<Item = PureProfile> + '_ {
        let cols = self.cols();
        (0..self.rows()).flat_map(move |r| (0..cols).map(move |c| PureProfile::new(r, c)))
    }

    pub fn action_index(&self, player: Agent, action: &ComponentSet) -> Result<usize> {
        self.actions(player)
            .iter()
            .position(|a| a == action)
            .ok_or_else(|| Error::UnknownAction(action.to_string()))
    }

    /// Looks up the cell for a joint action.
    pub fn profile_of(&self, j: &JointAction) -> Result<PureProfile> {
        Ok(PureProfile::new(
            self.action_index(Agent::Angel, &j.a)?,
            self.action_index(Agent::Daemon, &j.d)?,
        ))
    }

    pub fn joint_action(&self, p: PureProfile) -> JointAction {
        JointAction::new(self.actions_a[p.row].clone(), self.actions_d[p.col].clone())
    }

    /// `({b},{G,P})`.
    pub fn label(&self, p: PureProfile) -> String {
        self.joint_action(p).to_string()
    }

    /// Parses `({b},{P,G})` or `{b},{P,G}` against this game's action labels.
    pub fn parse_profile(&self, text: &str) -> Result<PureProfile> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let split = t
            .find('}')
            .ok_or_else(|| Error::UnknownAction(text.to_string()))?;
        let (left, right) = t.split_at(split + 1);
        let right = right.trim_start().strip_prefix(',').unwrap_or(right);
        let find = |player: Agent, s: &str| -> Result<usize> {
            let wanted = parse_label_set(s).ok_or_else(|| Error::UnknownAction(s.trim().to_string()))?;
            self.action_index(player, &wanted)
        };
        Ok(PureProfile::new(find(Agent::Angel, left)?, find(Agent::Daemon, right)?))
    }

    /// The same game with rows and columns restricted to the given indices.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Game {
        let payoffs = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        let (a, d) = self.cell(PureProfile::new(r, c));
                        (a.clone(), d.clone())
                    })
                    .collect()
            })
            .collect();
        Game::new(
            rows.iter().map(|&r| self.actions_a[r].clone()).collect(),
            cols.iter().map(|&c| self.actions_d[c].clone()).collect(),
            payoffs,
        )
        .expect("restriction of a well-formed game")
    }

    /// Applies `u -> c*u + k` to one player's payoffs.
    pub fn affine(&self, player: Agent, c: &ExactScalar, k: &ExactScalar) -> Game {
        let (c, k) = (Scalar::from(c.clone()), Scalar::from(k.clone()));
        let map = |v: &Vec<Scalar>| v.iter().map(|x| &(&c * x) + &k).collect::<Vec<_>>();
        let mut out = self.clone();
        match player {
            Agent::Angel => out.payoff_a = map(&self.payoff_a),
            Agent::Daemon => out.payoff_d = map(&self.payoff_d),
        }
        out.zero_sum = out.payoff_a.iter().zip(&out.payoff_d).all(|(a, d)| (a + d).is_zero());
        out
    }
}

fn parse_label_set(s: &str) -> Option<ComponentSet> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    Some(ComponentSet::labels(
        inner.split(',').map(str::trim).filter(|x| !x.is_empty()),
    ))
}

impl fmt::Display for Game {
    /// Rows are angel actions and columns daemon actions; each cell reads
    /// `u_A ; u_D` with exact values followed by a decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = std::iter::once("A \\ D".to_string())
            .chain(self.actions_d.iter().map(ToString::to_string))
            .collect();
        let mut table = vec![head];
        for (r, action) in self.actions_a.iter().enumerate() {
            let mut line = vec![action.to_string()];
            for c in 0..self.cols() {
                let (a, d) = self.cell(PureProfile::new(r, c));
                line.push(format!("{} ; {}", render_value(a), render_value(d)));
            }
            table.push(line);
        }
        let widths: Vec<usize> = (0..table[0].len())
            .map(|i| table.iter().map(|l| l[i].chars().count()).max().unwrap_or(0))
            .collect();
        for line in &table {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            writeln!(f, "{}", cells.join(" | ").trim_end())?;
        }
        Ok(())
    }
}

/// `28700/27 (≈ 1062.96)` for exact values, `≈ 1.89899` for doubles, and
/// plain `6` for integers.
pub fn render_value(x: &Scalar) -> String {
    match x {
        Scalar::Exact(q) if q.denom() == &1.into() => q.to_string(),
        Scalar::Exact(q) => format!("{q} (≈ {})", x.to_decimal()),
        Scalar::Approx(_) => format!("≈ {}", x.to_decimal()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sum_flag() {
        let g = Game::from_integers(&[&[1, -2]], &[&[-1, 2]]).unwrap();
        assert!(g.is_zero_sum());
        let g = Game::from_integers(&[&[1, -2]], &[&[-1, 3]]).unwrap();
        assert!(!g.is_zero_sum());
    }

    #[test]
    fn shape_is_checked() {
        assert!(Game::from_integers(&[&[1, 2], &[3]], &[&[1, 2], &[3]]).is_err());
        assert!(Game::from_integers(&[&[1]], &[&[1], &[2]]).is_err());
    }

    #[test]
    fn matrix_labels_keep_numeric_order() {
        let rows: Vec<Vec<Scalar>> = (0..11).map(|i| vec![Scalar::from_integer(i)]).collect();
        let g = Game::from_matrices(rows.clone(), rows).unwrap();
        assert_eq!(g.actions(Agent::Angel)[1].to_string(), "{a2}");
        assert_eq!(g.payoff(Agent::Angel, PureProfile::new(10, 0)), &Scalar::from_integer(10));
    }

    #[test]
    fn profile_labels_round_trip() {
        let g = Game::from_integers(&[&[1, 2], &[3, 4]], &[&[0, 0], &[0, 0]]).unwrap();
        for p in g.profiles() {
            assert_eq!(g.parse_profile(&g.label(p)).unwrap(), p);
        }
        assert_eq!(g.parse_profile("{a2},{d1}").unwrap(), PureProfile::new(1, 0));
        assert!(g.parse_profile("({a3},{d1})").is_err());
    }

    #[test]
    fn rendering_shows_exact_and_decimal() {
        let x = Scalar::Exact("28700/27".parse().unwrap());
        assert_eq!(render_value(&x), "28700/27 (≈ 1062.96)");
        assert_eq!(render_value(&Scalar::from_integer(6)), "6");
        assert_eq!(render_value(&Scalar::approx(1.8989853).unwrap()), "≈ 1.89899");
    }
}
