//! Random instances and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use admac_core::game::Game;
use admac_core::model::{ModelId, Valuation};
use admac_core::perturbation::{Agent, JointAction, PerturbationStrengthModel};
use admac_core::{ComponentSet, ExactScalar, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(s: &str) -> ExactScalar {
    s.parse().unwrap()
}

pub fn qs(s: &str) -> Scalar {
    Scalar::Exact(q(s))
}

/// A rational `p/den` in `[lo, hi]` with `den` drawn from `1..=max_den`.
pub fn rational(rng: &mut StdRng, lo: i64, hi: i64, max_den: i64) -> ExactScalar {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(lo * den..=hi * den);
    ExactScalar::new(num, den).unwrap()
}

/// A rational in `(0, hi]`.
pub fn positive(rng: &mut StdRng, hi: i64) -> ExactScalar {
    let den = rng.random_range(1..=12);
    let num = rng.random_range(1..=hi * den);
    ExactScalar::new(num, den).unwrap()
}

/// A rational strictly between 0 and 1.
pub fn unit_open(rng: &mut StdRng) -> ExactScalar {
    let den = rng.random_range(2..=20);
    let num = rng.random_range(1..den);
    ExactScalar::new(num, den).unwrap()
}

pub fn islm_valuation(rng: &mut StdRng) -> Valuation {
    let b = unit_open(rng);
    let mut entries = vec![("b", b)];
    for (name, hi) in [
        ("a", 500),
        ("c", 500),
        ("d", 50),
        ("e", 5),
        ("f", 200),
        ("T", 300),
        ("G", 300),
        ("M", 3000),
        ("P", 10),
    ] {
        entries.push((name, positive(rng, hi)));
    }
    Valuation::new(ModelId::IsLm, entries).unwrap()
}

pub fn ismp_valuation(rng: &mut StdRng) -> Valuation {
    let mut entries = Vec::new();
    for name in ["alpha", "rho", "phi", "theta_pi", "theta_Y"] {
        entries.push((name, positive(rng, 3)));
    }
    entries.push(("pi_star", rational(rng, -5, 10, 8)));
    entries.push(("Ybar", rational(rng, 0, 500, 4)));
    entries.push(("eps", rational(rng, -10, 10, 8)));
    entries.push(("v", rational(rng, -10, 10, 8)));
    Valuation::new(ModelId::IsMp, entries).unwrap()
}

/// Strength with random deltas on `names` (each side zero with probability 1/4).
pub fn strength_on(rng: &mut StdRng, model: ModelId, names: &[&str], bound: i64) -> PerturbationStrengthModel {
    let mut s = PerturbationStrengthModel::zero(model);
    for name in names {
        for agent in [Agent::Angel, Agent::Daemon] {
            if rng.random_range(0..4) != 0 {
                s.set(agent, name, rational(rng, -bound, bound, 6)).unwrap();
            }
        }
    }
    s
}

/// A random joint action over the whole schema.
pub fn joint_action(rng: &mut StdRng, model: ModelId) -> JointAction {
    let schema = model.schema();
    let mut pick = || {
        let names: Vec<&str> = schema
            .components
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        ComponentSet::new(schema, names).unwrap()
    };
    let a = pick();
    let d = pick();
    JointAction::new(a, d)
}

/// Four-case change of one component, written out independently of the library.
pub fn delta_oracle(s: &PerturbationStrengthModel, name: &str, j: &JointAction) -> ExactScalar {
    let da = s.get(Agent::Angel, name).unwrap().clone();
    let dd = s.get(Agent::Daemon, name).unwrap().clone();
    let in_a = j.a.iter().any(|n| n == name);
    let in_d = j.d.iter().any(|n| n == name);
    match (in_a, in_d) {
        (false, false) => ExactScalar::zero(),
        (true, false) => da,
        (false, true) => dd,
        (true, true) => da + dd,
    }
}

pub fn small_int(rng: &mut StdRng, bound: i64) -> Scalar {
    Scalar::from_integer(rng.random_range(-bound..=bound))
}

/// A random game with integer payoffs in `[-bound, bound]`.
pub fn random_game(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> Game {
    let mut m = || -> Vec<Vec<Scalar>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| small_int(rng, bound)).collect())
            .collect()
    };
    let ua = m();
    let ud = m();
    Game::from_matrices(ua, ud).unwrap()
}

/// A random zero-sum game with small rational payoffs.
pub fn random_zero_sum(rng: &mut StdRng, rows: usize, cols: usize) -> Game {
    let u = (0..rows)
        .map(|_| (0..cols).map(|_| Scalar::Exact(rational(rng, -6, 6, 3))).collect())
        .collect();
    Game::zero_sum_from(u).unwrap()
}

/// Expected payoff of `player` for pure action `own` against a mixed opponent.
pub fn against(game: &Game, player: Agent, own: usize, opp: &[Scalar]) -> Scalar {
    use admac_core::PureProfile;
    (0..opp.len())
        .map(|o| {
            let p = match player {
                Agent::Angel => PureProfile::new(own, o),
                Agent::Daemon => PureProfile::new(o, own),
            };
            &opp[o] * game.payoff(player, p)
        })
        .sum()
}

/// Equilibrium check written from the definition: no pure deviation pays,
/// and every action played with positive probability earns the maximum.
pub fn nash_oracle(game: &Game, alpha: &[Scalar], beta: &[Scalar]) -> bool {
    for (player, own, opp) in [(Agent::Angel, alpha, beta), (Agent::Daemon, beta, alpha)] {
        let values: Vec<Scalar> = (0..own.len()).map(|i| against(game, player, i, opp)).collect();
        let best = values
            .iter()
            .cloned()
            .reduce(|a, b| if b > a { b } else { a })
            .unwrap();
        for (p, v) in own.iter().zip(&values) {
            if p.signum() > 0 && *v != best {
                return false;
            }
        }
    }
    true
}
