use std::hint::black_box;

use admac_core::game::{build_game, mixed_nash, pure_nash};
use admac_core::model::solve_islm;
use admac_core::{parse_scenario, run_dynamics, Agent, Game, PureProfile};
use criterion::{criterion_group, criterion_main, Criterion};

const ISLM_U1: &str = include_str!("../../../scenarios/islm_u1.toml");
const ISLM_CYCLE: &str = include_str!("../../../scenarios/islm_cycle.toml");

fn solve(c: &mut Criterion) {
    let profile = parse_scenario(ISLM_U1).unwrap();
    c.bench_function("solve_islm", |b| b.iter(|| solve_islm(black_box(&profile.valuation)).unwrap()));
}

fn compile(c: &mut Criterion) {
    let profile = parse_scenario(ISLM_U1).unwrap();
    c.bench_function("build_game_islm_u1", |b| b.iter(|| build_game(black_box(&profile)).unwrap()));
}

fn equilibria(c: &mut Criterion) {
    let u1 = build_game(&parse_scenario(ISLM_U1).unwrap()).unwrap();
    c.bench_function("pure_nash_islm_u1", |b| b.iter(|| pure_nash(black_box(&u1))));
    c.bench_function("mixed_nash_islm_u1", |b| b.iter(|| mixed_nash(black_box(&u1))));

    let ua: &[&[i64]] = &[&[3, 0, 2, 1], &[1, 4, 0, 2], &[2, 1, 3, 0], &[0, 2, 1, 4]];
    let ud: &[&[i64]] = &[&[0, 3, 1, 2], &[2, 0, 3, 1], &[1, 2, 0, 3], &[3, 1, 2, 0]];
    let square = Game::from_integers(ua, ud).unwrap();
    c.bench_function("mixed_nash_4x4", |b| b.iter(|| mixed_nash(black_box(&square))));
}

fn dynamics(c: &mut Criterion) {
    let game = build_game(&parse_scenario(ISLM_CYCLE).unwrap()).unwrap();
    c.bench_function("dynamics_cycle", |b| {
        b.iter(|| run_dynamics(black_box(&game), PureProfile::new(0, 0), Agent::Angel, 100))
    });
}

criterion_group!(benches, solve, compile, equilibria, dynamics);
criterion_main!(benches);
