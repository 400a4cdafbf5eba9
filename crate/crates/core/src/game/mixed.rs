use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::analysis::{dominant_equilibria, mixed_utility, pure_nash, MixedStrategy};
use super::fiscal::{classify_fiscal, FiscalClassification};
use super::linalg::solve_linear;
use super::profile::{build_game, UncertaintyProfile, Utilities};
use super::{Game, PureProfile};
use crate::error::{Error, Result};
use crate::perturbation::Agent;
use crate::scalar::Scalar;

/// Payoff gaps below this in a floating-point game trigger a warning.
pub const NEAR_TIE: f64 = 1e-6;

#[derive(Clone, PartialEq, Debug)]
pub struct MixedEquilibrium {
    pub alpha: MixedStrategy,
    pub beta: MixedStrategy,
    pub u_a: Scalar,
    pub u_d: Scalar,
}

#[derive(Clone, PartialEq, Debug)]
pub struct MixedNash {
    pub equilibria: Vec<MixedEquilibrium>,
    /// Some best-response vertex has more tight constraints than its
    /// dimension; equilibria may then form continua and only their
    /// extreme points are listed.
    pub degenerate: bool,
}

/// A vertex of a best-response polytope, with the indices of its tight
/// constraints. Labels `0..m` are angel actions, `m..m+n` daemon actions.
struct Vertex {
    probs: Vec<Scalar>,
    labels: BTreeSet<usize>,
}

/// Enumerates the vertices of `{ (x, v) : x >= 0, sum x = 1, x^T M <= v }`
/// where `own` indexes x and `opp` indexes the columns of M.
/// `payoff(own, opp)` is the opponent's payoff; label offsets place own
/// actions at `own_offset..` and opponent actions at `opp_offset..`.
fn vertices(
    own: usize,
    opp: usize,
    payoff: &dyn Fn(usize, usize) -> Scalar,
    own_offset: usize,
    opp_offset: usize,
) -> (Vec<Vertex>, bool) {
    let mut found: Vec<Vertex> = Vec::new();
    let mut degenerate = false;
    // each choice of `own` tight constraints among own+opp gives one system
    for tight in combinations(own + opp, own) {
        let mut rows = Vec::with_capacity(own + 1);
        let mut rhs = Vec::with_capacity(own + 1);
        for &t in &tight {
            let mut row = vec![Scalar::zero(); own + 1];
            if t < own {
                row[t] = Scalar::one();
            } else {
                for (i, cell) in row.iter_mut().enumerate().take(own) {
                    *cell = payoff(i, t - own);
                }
                row[own] = -Scalar::one();
            }
            rows.push(row);
            rhs.push(Scalar::zero());
        }
        let mut norm = vec![Scalar::one(); own + 1];
        norm[own] = Scalar::zero();
        rows.push(norm);
        rhs.push(Scalar::one());
        let Some(sol) = solve_linear(rows, rhs) else {
            continue;
        };
        let (x, v) = sol.split_at(own);
        if x.iter().any(|p| p.signum() < 0) {
            continue;
        }
        let mut labels = BTreeSet::new();
        for (i, p) in x.iter().enumerate() {
            if p.is_zero() {
                labels.insert(own_offset + i);
            }
        }
        let mut feasible = true;
        for j in 0..opp {
            let earned: Scalar = x.iter().enumerate().map(|(i, p)| p * &payoff(i, j)).sum();
            match earned.compare(&v[0]) {
                Ordering::Greater => feasible = false,
                Ordering::Equal => {
                    labels.insert(opp_offset + j);
                }
                Ordering::Less => {}
            }
        }
        if !feasible {
            continue;
        }
        // clamp tiny negative noise in floating-point solutions
        let probs: Vec<Scalar> = x
            .iter()
            .map(|p| if p.is_zero() { Scalar::zero() } else { p.clone() })
            .collect();
        if found.iter().any(|f| same(&f.probs, &probs)) {
            continue;
        }
        degenerate |= labels.len() > own;
        found.push(Vertex { probs, labels });
    }
    (found, degenerate)
}

fn same(a: &[Scalar], b: &[Scalar]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.compare(y) == Ordering::Equal)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Mixed equilibria by support enumeration.
///
/// Each candidate pairs a support with the set of actions the opponent
/// must be indifferent over; the resulting exact linear systems are the
/// vertices of the two best-response polytopes, and an equilibrium is a
/// pair of vertices whose tight constraints cover every action. This finds
/// every equilibrium of a nondegenerate game and every extreme equilibrium
/// of a degenerate one. Pure equilibria appear as point masses.
pub fn mixed_nash_report(game: &Game) -> MixedNash {
    let (m, n) = (game.rows(), game.cols());
    let ua = |i: usize, j: usize| game.payoff(Agent::Angel, PureProfile::new(i, j)).clone();
    let ud = |i: usize, j: usize| game.payoff(Agent::Daemon, PureProfile::new(i, j)).clone();
    let ua_t = |j: usize, i: usize| ua(i, j);
    let (xs, deg_x) = vertices(m, n, &ud, 0, m);
    let (ys, deg_y) = vertices(n, m, &ua_t, m, 0);
    let mut equilibria = Vec::new();
    for x in &xs {
        for y in &ys {
            if x.labels.union(&y.labels).count() != m + n {
                continue;
            }
            let alpha = MixedStrategy::new(x.probs.clone()).expect("vertex is a distribution");
            let beta = MixedStrategy::new(y.probs.clone()).expect("vertex is a distribution");
            let u_a = mixed_utility(game, &alpha, &beta, Agent::Angel).expect("dimensions match");
            let u_d = mixed_utility(game, &alpha, &beta, Agent::Daemon).expect("dimensions match");
            equilibria.push(MixedEquilibrium { alpha, beta, u_a, u_d });
        }
    }
    equilibria.sort_by(|p, q| {
        let key = |e: &MixedEquilibrium| {
            let (sa, sb) = (e.alpha.support(), e.beta.support());
            (sa.len() + sb.len(), sa, sb)
        };
        key(p).cmp(&key(q)).then_with(|| {
            p.alpha
                .probabilities()
                .iter()
                .chain(p.beta.probabilities())
                .zip(q.alpha.probabilities().iter().chain(q.beta.probabilities()))
                .map(|(a, b)| b.compare(a))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });
    MixedNash {
        equilibria,
        degenerate: deg_x || deg_y,
    }
}

pub fn mixed_nash(game: &Game) -> Vec<MixedEquilibrium> {
    mixed_nash_report(game).equilibria
}

/// The common angel payoff of every equilibrium of a zero-sum game.
pub fn zero_sum_value(game: &Game) -> Result<Scalar> {
    if !game.is_zero_sum() {
        return Err(Error::NotZeroSum);
    }
    common_value(&mixed_nash(game))
}

fn common_value(eqs: &[MixedEquilibrium]) -> Result<Scalar> {
    let first = eqs.first().ok_or(Error::InconsistentValue)?;
    if eqs.iter().any(|e| e.u_a.compare(&first.u_a) != Ordering::Equal) {
        return Err(Error::InconsistentValue);
    }
    Ok(first.u_a.clone())
}

#[derive(Clone, PartialEq, Debug)]
pub struct EquilibriumReport {
    pub pne: Vec<PureProfile>,
    pub dse: Vec<PureProfile>,
    pub mixed: Vec<MixedEquilibrium>,
    pub degenerate: bool,
    /// Present for zero-sum games.
    pub value: Option<Scalar>,
    pub fiscal: Option<FiscalClassification>,
    pub warnings: Vec<String>,
}

/// Pure, dominant and mixed equilibria of a game, plus its value if zero-sum.
pub fn analyze(game: &Game) -> Result<EquilibriumReport> {
    let mixed = mixed_nash_report(game);
    let value = if game.is_zero_sum() {
        Some(common_value(&mixed.equilibria)?)
    } else {
        None
    };
    let mut warnings = Vec::new();
    if !game.is_exact() {
        for player in [Agent::Angel, Agent::Daemon] {
            if let Some(gap) = smallest_gap(game, player) {
                if gap < NEAR_TIE {
                    warnings.push(format!(
                        "{player} payoffs differ by only {gap:.3e}; floating-point ties may be unreliable"
                    ));
                }
            }
        }
    }
    if mixed.degenerate {
        warnings.push("degenerate game: only extreme mixed equilibria are listed".into());
    }
    Ok(EquilibriumReport {
        pne: pure_nash(game),
        dse: dominant_equilibria(game),
        mixed: mixed.equilibria,
        degenerate: mixed.degenerate,
        value,
        fiscal: None,
        warnings,
    })
}

fn smallest_gap(game: &Game, player: Agent) -> Option<f64> {
    let values: Vec<f64> = game.profiles().map(|p| game.payoff(player, p).to_f64()).collect();
    let mut best: Option<f64> = None;
    for (i, x) in values.iter().enumerate() {
        for y in &values[i + 1..] {
            if x.to_bits() != y.to_bits() {
                let gap = (x - y).abs();
                best = Some(best.map_or(gap, |b: f64| b.min(gap)));
            }
        }
    }
    best
}

/// Compiles the profile and analyses it; fiscal profiles also carry their
/// classification.
pub fn analyze_profile(profile: &UncertaintyProfile) -> Result<(Game, EquilibriumReport)> {
    let game = build_game(profile)?;
    let mut report = analyze(&game)?;
    let fiscal_shape = profile.b_a == 1
        && profile.b_d == 1
        && matches!(&profile.utilities, Utilities::Pair { angel, daemon }
            if angel.is_variable("Y") && daemon.is_variable("r"));
    if fiscal_shape {
        match classify_fiscal(&profile.strength, &profile.valuation) {
            Ok(c) => report.fiscal = Some(c),
            Err(Error::NotFiscalStrength(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((game, report))
}
