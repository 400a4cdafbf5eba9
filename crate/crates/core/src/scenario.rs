//! Scenario files: a TOML encoding of an uncertainty profile.
//!
//! ```toml
//! model = "ISLM"
//!
//! [valuation]
//! a = 200
//! b = "3/4"
//! # ...
//!
//! [strength.angel]
//! b = "1/20"
//!
//! [strength.daemon]
//! P = 1
//!
//! [profile]
//! A = ["b", "G"]
//! D = ["P", "G", "T"]
//! b_A = 1
//! b_D = 2
//!
//! [utilities]
//! angel = "Y"
//! daemon = "r"
//! ```
//!
//! `[utilities]` may instead hold `zero_sum = "Y - 550/3*r"`, or `angel`,
//! `daemon` and `zero_sum_normalized = true`. Binomial-call scenarios
//! default to `zero_sum = "f"`. Strength entries default to zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::game::{UncertaintyProfile, UtilityExpr, Utilities};
use crate::model::{ModelId, Valuation};
use crate::perturbation::{Agent, PerturbationStrengthModel};
use crate::scalar::ExactScalar;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    model: Spanned<String>,
    valuation: BTreeMap<Spanned<String>, Spanned<RawNumber>>,
    #[serde(default)]
    strength: RawStrength,
    profile: Option<Spanned<RawProfile>>,
    utilities: Option<Spanned<RawUtilities>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawStrength {
    #[serde(default)]
    angel: BTreeMap<Spanned<String>, Spanned<RawNumber>>,
    #[serde(default)]
    daemon: BTreeMap<Spanned<String>, Spanned<RawNumber>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    #[serde(rename = "A")]
    a_set: Vec<Spanned<String>>,
    #[serde(rename = "D")]
    d_set: Vec<Spanned<String>>,
    #[serde(rename = "b_A")]
    b_a: usize,
    #[serde(rename = "b_D")]
    b_d: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUtilities {
    angel: Option<Spanned<String>>,
    daemon: Option<Spanned<String>>,
    zero_sum: Option<Spanned<String>>,
    zero_sum_normalized: Option<bool>,
}

/// 1-based line and column (in characters) of a byte offset.
fn location(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn parse_error(&self, span: Range<usize>, message: impl Into<String>) -> Error {
        let (line, column) = location(self.text, span.start);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn unknown(&self, name: &str, span: Range<usize>) -> Error {
        let (line, column) = location(self.text, span.start);
        Error::UnknownName {
            name: name.to_string(),
            line,
            column,
        }
    }

    fn number(&self, raw: &Spanned<RawNumber>) -> Result<ExactScalar> {
        let text = match raw.get_ref() {
            RawNumber::Int(i) => return Ok(ExactScalar::from_integer(*i)),
            // Display gives the shortest literal that reads back as the same
            // double, which is what the author typed.
            RawNumber::Float(f) => format!("{f}"),
            RawNumber::Text(s) => s.clone(),
        };
        text.parse()
            .map_err(|_| self.parse_error(raw.span(), format!("invalid number {text:?}")))
    }

    fn component(&self, model: ModelId, name: &Spanned<String>) -> Result<&'static str> {
        model
            .schema()
            .component(name.get_ref())
            .map_err(|_| self.unknown(name.get_ref(), name.span()))
    }

    /// Parses a utility string, shifting error positions into the file.
    fn utility(&self, model: ModelId, raw: &Spanned<String>) -> Result<UtilityExpr> {
        UtilityExpr::parse(model, raw.get_ref()).map_err(|e| {
            // the span starts at the opening quote
            let (line, col) = location(self.text, raw.span().start + 1);
            match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    line,
                    column: col + column - 1,
                    message,
                },
                Error::UnknownName { name, column, .. } => Error::UnknownName {
                    name,
                    line,
                    column: col + column - 1,
                },
                Error::EmptyUtility => {
                    self.parse_error(raw.span(), "utility has no nonzero coefficient")
                }
                other => other,
            }
        })
    }
}

/// Parses scenario text into a profile. The base valuation must satisfy
/// the model's bounds.
pub fn parse_scenario(text: &str) -> Result<UncertaintyProfile> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| location(text, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    let cx = Ctx { text };
    let model: ModelId = raw
        .model
        .get_ref()
        .parse()
        .map_err(|m: String| cx.parse_error(raw.model.span(), m))?;

    let entries = raw
        .valuation
        .iter()
        .map(|(k, v)| Ok((cx.component(model, k)?, cx.number(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let valuation = Valuation::new(model, entries)?;
    crate::model::validate(&valuation)?;

    let mut strength = PerturbationStrengthModel::zero(model);
    for (agent, table) in [(Agent::Angel, &raw.strength.angel), (Agent::Daemon, &raw.strength.daemon)] {
        for (k, v) in table {
            strength.set(agent, cx.component(model, k)?, cx.number(v)?)?;
        }
    }

    let profile = raw
        .profile
        .as_ref()
        .ok_or_else(|| cx.parse_error(text.len()..text.len(), "missing [profile] table"))?;
    let set = |names: &[Spanned<String>]| -> Result<ComponentSet> {
        let resolved = names
            .iter()
            .map(|n| cx.component(model, n))
            .collect::<Result<Vec<_>>>()?;
        ComponentSet::new(model.schema(), resolved)
    };
    let p = profile.get_ref();
    let (a_set, d_set) = (set(&p.a_set)?, set(&p.d_set)?);

    let utilities = match &raw.utilities {
        None if model == ModelId::BinomialCall => Utilities::ZeroSum(UtilityExpr::variable(model, "f")?),
        None => return Err(cx.parse_error(text.len()..text.len(), "missing [utilities] table")),
        Some(u) => utilities(&cx, model, u)?,
    };

    UncertaintyProfile::new(valuation, strength, a_set, d_set, p.b_a, p.b_d, utilities).map_err(|e| match e {
        Error::SpreadTooLarge { spread, size } => cx.parse_error(
            profile.span(),
            format!("spread {spread} exceeds the {size} permissible components"),
        ),
        other => other,
    })
}

fn utilities(cx: &Ctx<'_>, model: ModelId, raw: &Spanned<RawUtilities>) -> Result<Utilities> {
    let u = raw.get_ref();
    let normalized = u.zero_sum_normalized.unwrap_or(false);
    match (&u.angel, &u.daemon, &u.zero_sum) {
        (None, None, Some(z)) if !normalized => Ok(Utilities::ZeroSum(cx.utility(model, z)?)),
        (Some(a), Some(d), None) => {
            let (angel, daemon) = (cx.utility(model, a)?, cx.utility(model, d)?);
            Ok(if normalized {
                Utilities::ZeroSumNormalized { angel, daemon }
            } else {
                Utilities::Pair { angel, daemon }
            })
        }
        _ => Err(cx.parse_error(
            raw.span(),
            "[utilities] needs angel and daemon, or zero_sum alone",
        )),
    }
}

/// Renders a profile as scenario text that parses back to the same profile.
pub fn render_scenario(profile: &UncertaintyProfile) -> String {
    let mut out = String::new();
    let quote = |s: &str| format!("\"{s}\"");
    let _ = writeln!(out, "model = {}\n\n[valuation]", quote(profile.model().as_str()));
    for (name, value) in profile.valuation.iter() {
        let _ = writeln!(out, "{name} = {}", quote(&value.to_string()));
    }
    for agent in [Agent::Angel, Agent::Daemon] {
        let _ = writeln!(out, "\n[strength.{agent}]");
        for (name, a, d) in profile.strength.iter() {
            let value = if agent == Agent::Angel { a } else { d };
            if !value.is_zero() {
                let _ = writeln!(out, "{name} = {}", quote(&value.to_string()));
            }
        }
    }
    let list = |s: &ComponentSet| s.iter().map(quote).collect::<Vec<_>>().join(", ");
    let _ = writeln!(
        out,
        "\n[profile]\nA = [{}]\nD = [{}]\nb_A = {}\nb_D = {}",
        list(&profile.a_set),
        list(&profile.d_set),
        profile.b_a,
        profile.b_d
    );
    let _ = writeln!(out, "\n[utilities]");
    match &profile.utilities {
        Utilities::Pair { angel, daemon } => {
            let _ = writeln!(out, "angel = {}\ndaemon = {}", quote(&angel.to_string()), quote(&daemon.to_string()));
        }
        Utilities::ZeroSum(u) => {
            let _ = writeln!(out, "zero_sum = {}", quote(&u.to_string()));
        }
        Utilities::ZeroSumNormalized { angel, daemon } => {
            let _ = writeln!(
                out,
                "angel = {}\ndaemon = {}\nzero_sum_normalized = true",
                quote(&angel.to_string()),
                quote(&daemon.to_string())
            );
        }
    }
    out
}
