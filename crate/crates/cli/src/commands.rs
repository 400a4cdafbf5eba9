use std::io::Read;

use admac_core::dynamics::{run_dynamics, Outcome};
use admac_core::game::{analyze, classify_fiscal, pure_nash, render_value, EquilibriumReport, MixedStrategy};
use admac_core::model;
use admac_core::perturbation::{perturbed_equilibrium, perturbed_equilibrium_strict, stress};
use admac_core::{Agent, ComponentSet, Error, Game, JointAction, PureProfile, Scalar};
use serde_json::{json, Value};

use crate::report::{exact, game_json, num, profile_json, value_text, Report};
use crate::{compile, load, Cli, CliError, Command, Mover};

pub(crate) fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, CliError> {
    match &cli.command {
        Command::Solve(s) => solve(&s.scenario, stdin),
        Command::Stress { input, angel, daemon } => stress_cmd(cli, &input.scenario, angel, daemon, stdin),
        Command::Game(s) => game_cmd(cli, &s.scenario, stdin),
        Command::Pne(s) => analysis(cli, "pne", &s.scenario, stdin),
        Command::Dse(s) => analysis(cli, "dse", &s.scenario, stdin),
        Command::Mixed(s) => analysis(cli, "mixed", &s.scenario, stdin),
        Command::Value(s) => analysis(cli, "value", &s.scenario, stdin),
        Command::Dynamics {
            input,
            start,
            first_mover,
            max_steps,
        } => dynamics(cli, &input.scenario, start.as_deref(), *first_mover, *max_steps, stdin),
        Command::ClassifyFiscal(s) => fiscal(&s.scenario, stdin),
    }
}

fn solve(path: &str, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let profile = load(path, stdin)?;
    let point = model::solve(&profile.valuation)?;
    let mut r = Report::new("solve");
    r.line(format!("model: {}", profile.model()));
    let mut eq = serde_json::Map::new();
    for (name, v) in point.iter() {
        r.line(assign(name, v));
        eq.insert(name.into(), num(v));
    }
    r.set("model", json!(profile.model().as_str()));
    r.set("equilibrium", Value::Object(eq));
    Ok(r)
}

fn table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|i| rows.iter().map(|l| l[i].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in rows {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn stress_cmd(cli: &Cli, path: &str, angel: &str, daemon: &str, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let profile = load(path, stdin)?;
    let schema = profile.valuation.schema();
    let j = JointAction::new(ComponentSet::parse(schema, angel)?, ComponentSet::parse(schema, daemon)?);
    let stressed = stress(&profile.valuation, &profile.strength, &j)?;
    let base = model::solve(&profile.valuation)?;
    let point = if cli.strict {
        perturbed_equilibrium_strict(&profile.valuation, &profile.strength, &j)?
    } else {
        perturbed_equilibrium(&profile.valuation, &profile.strength, &j)?
    };

    let mut r = Report::new("stress");
    r.line(format!("joint action: {j}"));
    r.line("");
    let mut rows = vec![vec!["component".to_string(), "base".into(), "stressed".into(), String::new()]];
    let mut valuation = serde_json::Map::new();
    for ((name, before), (_, after)) in profile.valuation.iter().zip(stressed.iter()) {
        let mark = if before == after { "" } else { "*" };
        rows.push(vec![name.to_string(), before.to_string(), after.to_string(), mark.into()]);
        valuation.insert(name.into(), exact(after));
    }
    r.text.push_str(&table(&rows));
    r.line("");
    let mut rows = vec![vec!["variable".to_string(), "base".into(), "stressed".into()]];
    let mut eq = serde_json::Map::new();
    for ((name, before), (_, after)) in base.iter().zip(point.iter()) {
        rows.push(vec![name.to_string(), render_value(before), render_value(after)]);
        eq.insert(name.into(), num(after));
    }
    r.text.push_str(&table(&rows));
    r.set("joint_action", json!({"angel": j.a.to_string(), "daemon": j.d.to_string()}));
    r.set("valuation", Value::Object(valuation));
    r.set("equilibrium", Value::Object(eq));
    Ok(r)
}

fn load_game(cli: &Cli, path: &str, stdin: &mut dyn Read) -> Result<Game, CliError> {
    let profile = load(path, stdin)?;
    compile(cli, &profile)
}

fn header(game: &Game) -> String {
    format!(
        "{} x {} game, angel rows and daemon columns{}",
        game.rows(),
        game.cols(),
        if game.is_zero_sum() { ", zero-sum" } else { "" }
    )
}

fn game_cmd(cli: &Cli, path: &str, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let game = load_game(cli, path, stdin)?;
    let mut r = Report::new("game");
    r.line(header(&game));
    r.text.push_str(&game.to_string());
    r.set("game", game_json(&game));
    r.pne_empty = Some(pure_nash(&game).is_empty());
    Ok(r)
}

/// `name = 28700/27 (≈ 1062.96)`, or `name ≈ 1.89899` for a double.
fn assign(name: &str, v: &Scalar) -> String {
    if v.is_exact() {
        format!("{name} = {}", render_value(v))
    } else {
        format!("{name} {}", render_value(v))
    }
}

fn profile_line(game: &Game, p: PureProfile) -> String {
    let (ua, ud) = game.cell(p);
    format!("{}  {}  {}", game.label(p), assign("u_A", ua), assign("u_D", ud))
}

fn strategy_text(game: &Game, agent: Agent, s: &MixedStrategy) -> String {
    let parts: Vec<String> = game
        .actions(agent)
        .iter()
        .zip(s.probabilities())
        .map(|(a, p)| format!("{a} = {}", render_value(p)))
        .collect();
    parts.join(", ")
}

fn strategy_json(game: &Game, agent: Agent, s: &MixedStrategy) -> Value {
    let items: Vec<Value> = game
        .actions(agent)
        .iter()
        .zip(s.probabilities())
        .map(|(a, p)| json!({"action": a.to_string(), "probability": num(p)}))
        .collect();
    Value::Array(items)
}

fn analysis(cli: &Cli, command: &str, path: &str, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let game = load_game(cli, path, stdin)?;
    let report: EquilibriumReport = analyze(&game)?;
    let mut r = Report::new(command);
    r.pne_empty = Some(report.pne.is_empty());
    match command {
        "pne" | "dse" => {
            let (list, what) = if command == "pne" {
                (&report.pne, "pure Nash equilibria")
            } else {
                (&report.dse, "dominant strategy equilibria")
            };
            if list.is_empty() {
                r.line(format!("no {what}"));
            } else {
                r.line(format!("{what}: {}", list.len()));
                for p in list {
                    r.line(profile_line(&game, *p));
                }
            }
            let items: Vec<Value> = list.iter().map(|p| profile_json(&game, *p)).collect();
            r.set(if command == "pne" { "pne" } else { "dse" }, Value::Array(items));
        }
        "mixed" => {
            r.line(format!("mixed Nash equilibria: {}", report.mixed.len()));
            let mut items = Vec::new();
            for (i, e) in report.mixed.iter().enumerate() {
                r.line(format!("equilibrium {}:", i + 1));
                r.line(format!("  alpha: {}", strategy_text(&game, Agent::Angel, &e.alpha)));
                r.line(format!("  beta: {}", strategy_text(&game, Agent::Daemon, &e.beta)));
                r.line(format!("  {}  {}", assign("u_A", &e.u_a), assign("u_D", &e.u_d)));
                items.push(json!({
                    "alpha": strategy_json(&game, Agent::Angel, &e.alpha),
                    "beta": strategy_json(&game, Agent::Daemon, &e.beta),
                    "u_A": num(&e.u_a),
                    "u_D": num(&e.u_d),
                }));
            }
            r.set("mixed", Value::Array(items));
            r.set("degenerate", json!(report.degenerate));
        }
        _ => {
            let value = report.value.clone().ok_or(Error::NotZeroSum)?;
            r.line(value_text(&value));
            r.set("value", num(&value));
        }
    }
    for w in &report.warnings {
        r.line(format!("warning: {w}"));
    }
    r.set("warnings", json!(report.warnings));
    Ok(r)
}

fn dynamics(
    cli: &Cli,
    path: &str,
    start: Option<&str>,
    first: Mover,
    max_steps: usize,
    stdin: &mut dyn Read,
) -> Result<Report, CliError> {
    let game = load_game(cli, path, stdin)?;
    let start = match start {
        Some(text) => game.parse_profile(text)?,
        None => PureProfile::new(0, 0),
    };
    let first = match first {
        Mover::Angel => Agent::Angel,
        Mover::Daemon => Agent::Daemon,
    };
    let trace = run_dynamics(&game, start, first, max_steps);
    let mut r = Report::new("dynamics");
    r.pne_empty = Some(pure_nash(&game).is_empty());
    r.line(trace.render(&game));
    r.line(trace.outcome_text(&game));
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| json!({"mover": s.mover.as_str(), "profile": game.label(s.profile)}))
        .collect();
    let outcome = match trace.outcome {
        Outcome::Converged(p) => json!({"kind": "converged", "profile": game.label(p)}),
        Outcome::Cycle { start, period } => json!({"kind": "cycle", "start": start, "period": period}),
        Outcome::Truncated(n) => json!({"kind": "truncated", "max_steps": n}),
    };
    r.set("start", json!(game.label(start)));
    r.set("first_mover", json!(first.as_str()));
    r.set("steps", Value::Array(steps));
    r.set("outcome", outcome);
    Ok(r)
}

fn sign_word(s: i8) -> &'static str {
    match s {
        1 => "> 0",
        0 => "= 0",
        _ => "< 0",
    }
}

fn fiscal(path: &str, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let profile = load(path, stdin)?;
    let c = classify_fiscal(&profile.strength, &profile.valuation)?;
    let (sa, sd) = c.signs();
    let mut r = Report::new("classify-fiscal");
    r.pne_empty = Some(false);
    r.line(format!("mu_A = b*dA(T) + dA(G) = {}  ({})", render_value(&c.mu_a.clone().into()), sign_word(sa)));
    r.line(format!("mu_D = b*dD(T) + dD(G) = {}  ({})", render_value(&c.mu_d.clone().into()), sign_word(sd)));
    r.line("");
    r.line("predicted pure Nash equilibria (angel, daemon); [*] marks this strength:");
    let choices = |s: i8| -> &'static [&'static str] {
        match s {
            1 => &["G"],
            0 => &["G", "T"],
            _ => &["T"],
        }
    };
    let mut rows = vec![vec![String::new(), "mu_A > 0".into(), "mu_A = 0".into(), "mu_A < 0".into()]];
    for d in [1i8, 0, -1] {
        let mut line = vec![format!("mu_D {}", sign_word(d))];
        for a in [1i8, 0, -1] {
            let mut cells = Vec::new();
            for x in choices(a) {
                for y in choices(d) {
                    cells.push(format!("({{{x}}},{{{y}}})"));
                }
            }
            let mark = if (a, d) == (sa, sd) { " [*]" } else { "" };
            line.push(format!("{}{mark}", cells.join(" ")));
        }
        rows.push(line);
    }
    r.text.push_str(&table(&rows));
    r.line("");
    let predicted: Vec<String> = c.predicted_pne.iter().map(ToString::to_string).collect();
    r.line(format!("pure Nash equilibria: {}", predicted.join(" ")));
    r.line(format!("dominant strategy equilibrium: {}", c.dse_witness));
    r.line("");
    r.line(header(&c.game));
    r.text.push_str(&c.game.to_string());
    r.set("mu_A", exact(&c.mu_a));
    r.set("mu_D", exact(&c.mu_d));
    r.set("pne", json!(predicted));
    r.set("dse_witness", json!(c.dse_witness.to_string()));
    r.set("game", game_json(&c.game));
    Ok(r)
}
