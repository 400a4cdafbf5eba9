use admac_core::{ExactScalar, Game, PureProfile, Scalar};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON with every number given as an exact fraction and a decimal.
    Structured,
}

/// The outcome of one command in both renderings.
pub(crate) struct Report {
    pub text: String,
    pub data: Map<String, Value>,
    /// Whether the analysed game had no pure equilibrium; `None` when no
    /// game was compiled.
    pub pne_empty: Option<bool>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut data = Map::new();
        data.insert("spec_version".into(), json!(1));
        data.insert("command".into(), json!(command));
        Report {
            text: String::new(),
            data,
            pne_empty: None,
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.data.insert(key.into(), value);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.data).expect("json values serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// `{"exact": "p/q", "decimal": "..."}`; doubles carry their exact binary value.
pub(crate) fn num(x: &Scalar) -> Value {
    json!({
        "exact": x.to_exact().to_string(),
        "decimal": x.to_decimal(),
        "approximate": !x.is_exact(),
    })
}

pub(crate) fn exact(x: &ExactScalar) -> Value {
    num(&Scalar::Exact(x.clone()))
}

pub(crate) fn profile_json(game: &Game, p: PureProfile) -> Value {
    let (ua, ud) = game.cell(p);
    json!({
        "profile": game.label(p),
        "angel": game.actions(admac_core::Agent::Angel)[p.row].to_string(),
        "daemon": game.actions(admac_core::Agent::Daemon)[p.col].to_string(),
        "u_A": num(ua),
        "u_D": num(ud),
    })
}

pub(crate) fn game_json(game: &Game) -> Value {
    use admac_core::Agent;
    let rows: Vec<Value> = (0..game.rows())
        .map(|r| {
            Value::Array(
                (0..game.cols())
                    .map(|c| {
                        let (ua, ud) = game.cell(PureProfile::new(r, c));
                        json!([num(ua), num(ud)])
                    })
                    .collect(),
            )
        })
        .collect();
    let labels = |agent| -> Vec<String> { game.actions(agent).iter().map(ToString::to_string).collect() };
    json!({
        "angel_actions": labels(Agent::Angel),
        "daemon_actions": labels(Agent::Daemon),
        "zero_sum": game.is_zero_sum(),
        "payoffs": rows,
    })
}

/// Fixed six-decimal rendering used for game values, `-22250/81 (≈ -274.691358)`.
pub(crate) fn value_text(x: &Scalar) -> String {
    match x {
        Scalar::Exact(q) if q.denom() == &1.into() => q.to_string(),
        Scalar::Exact(q) => format!("{q} (≈ {})", q.to_fixed(6)),
        Scalar::Approx(_) => format!("≈ {}", x.to_fixed(6)),
    }
}
