//! The IS-LM game fed in from its rounded two-decimal table, where one cell
//! carries the value 1233.33 instead of the one the model produces. These
//! checks pin down how the mixed equilibrium and the best-response cycle
//! behave on that table.

mod common;

use admac_core::dynamics::{run_dynamics, Outcome};
use admac_core::game::{mixed_nash, mixed_utility, pure_nash, MixedStrategy};
use admac_core::model::ModelId;
use admac_core::{Agent, ComponentSet, Game, Scalar};
use common::qs;

/// Rows `{b}, {G}`; columns `{G,P}, {G,T}, {P,T}`; daemon payoff `sign * r`.
fn table(sign: &str) -> Game {
    let schema = ModelId::IsLm.schema();
    let set = |names: &[&str]| ComponentSet::new(schema, names).unwrap();
    let r = |x: &str| qs(sign) * qs(x);
    let rows = vec![
        vec![
            (qs("1062.96"), r("7.29")),
            (qs("1233.33"), r("22/3")),
            (qs("1029.62"), r("6.962")),
        ],
        vec![
            (qs("1066.66"), r("22/3")),
            (qs("1075"), r("5.75")),
            (qs("1041.66"), r("7.08")),
        ],
    ];
    Game::new(
        vec![set(&["b"]), set(&["G"])],
        vec![set(&["G", "P"]), set(&["G", "T"]), set(&["P", "T"])],
        rows,
    )
    .unwrap()
}

fn close(s: &MixedStrategy, want: &[f64], tol: f64) -> bool {
    s.probabilities()
        .iter()
        .zip(want)
        .all(|(p, w)| (p.to_f64() - w).abs() <= tol)
}

#[test]
fn tabulated_u2_has_no_pure_equilibrium() {
    assert!(pure_nash(&table("-1")).is_empty());
}

#[test]
fn tabulated_u2_mixed_equilibrium() {
    let game = table("-1");
    let eqs = mixed_nash(&game);
    assert_eq!(eqs.len(), 1, "{eqs:?}");
    let e = &eqs[0];
    assert!(close(&e.alpha, &[0.78174, 0.21826], 1e-4), "{:?}", e.alpha);
    assert!(close(&e.beta, &[0.0, 0.07066972, 0.9293303], 1e-4), "{:?}", e.beta);
    assert!((e.u_a.to_f64() - 1044.016).abs() < 0.01, "{}", e.u_a);
    assert!((e.u_d.to_f64() + 6.98775).abs() < 0.01, "{}", e.u_d);
}

#[test]
fn tabulated_u1_mixed_utility() {
    let game = table("1");
    let alpha = MixedStrategy::new(vec![qs("1/3"), qs("2/3")]).unwrap();
    let beta = MixedStrategy::new(vec![qs("1/4"), qs("1/4"), qs("1/2")]).unwrap();
    let ua = mixed_utility(&game, &alpha, &beta, Agent::Angel).unwrap();
    let ud = mixed_utility(&game, &alpha, &beta, Agent::Daemon).unwrap();
    assert!((ua.to_f64() - 1067.124).abs() < 1e-3, "{ua}");
    assert!((ud.to_f64() - 6.9195).abs() < 1e-3, "{ud}");
}

#[test]
fn tabulated_u1_pure_equilibria() {
    let game = table("1");
    let mut got: Vec<String> = pure_nash(&game).into_iter().map(|p| game.label(p)).collect();
    got.sort();
    assert_eq!(got, ["({G},{G,P})", "({b},{G,T})"]);
}

#[test]
fn tabulated_u2_dynamics_cycle_with_period_four() {
    let game = table("-1");
    for start in game.profiles() {
        for first in [Agent::Angel, Agent::Daemon] {
            let t = run_dynamics(&game, start, first, 100);
            assert!(
                matches!(t.outcome, Outcome::Cycle { period: 4, .. }),
                "{}: {}",
                game.label(start),
                t.outcome_text(&game)
            );
        }
    }
    let start = game.parse_profile("({b},{P,G})").unwrap();
    let t = run_dynamics(&game, start, Agent::Daemon, 100);
    assert!(t
        .render(&game)
        .starts_with("({b},{G,P}) --D--> ({b},{P,T}) --A--> ({G},{P,T}) --D--> ({G},{G,T}) --A--> ({b},{G,T})"));
}

#[test]
fn tabulated_cells_are_exact_decimals() {
    let game = table("1");
    let p = game.parse_profile("({b},{T,G})").unwrap();
    assert_eq!(*game.payoff(Agent::Angel, p), Scalar::Exact("123333/100".parse().unwrap()));
}
