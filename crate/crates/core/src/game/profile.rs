use std::fmt;

use super::Game;
use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::model::{self, EquilibriumPoint, ModelId, Valuation};
use crate::perturbation::{self, JointAction, PerturbationStrengthModel};
use crate::scalar::{ExactScalar, Scalar};

/// A linear form `c_0 + sum c_i * x_i` over a model's endogenous variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UtilityExpr {
    model: ModelId,
    coeffs: Vec<ExactScalar>,
    constant: ExactScalar,
}

impl UtilityExpr {
    pub fn zero(model: ModelId) -> Self {
        UtilityExpr {
            model,
            coeffs: vec![ExactScalar::zero(); model.schema().endogenous.len()],
            constant: ExactScalar::zero(),
        }
    }

    /// The utility equal to one endogenous variable.
    pub fn variable(model: ModelId, name: &str) -> Result<Self> {
        let mut out = Self::zero(model);
        let idx = endogenous_index(model, name, 0)?;
        out.coeffs[idx] = ExactScalar::one();
        Ok(out)
    }

    /// Parses `term (('+'|'-') term)*` where a term is `[coeff '*'] var`
    /// or a bare coefficient, e.g. `Y - 550/3*r`. A leading sign is allowed.
    /// Error columns are 1-based within `text`.
    pub fn parse(model: ModelId, text: &str) -> Result<Self> {
        let out = Parser::new(model, text).expr()?;
        if out.is_zero() {
            return Err(Error::EmptyUtility);
        }
        Ok(out)
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn coefficient(&self, name: &str) -> Option<&ExactScalar> {
        self.model.schema().endogenous_index(name).map(|i| &self.coeffs[i])
    }

    pub fn constant(&self) -> &ExactScalar {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(ExactScalar::is_zero)
    }

    /// True when the expression is exactly the named variable.
    pub fn is_variable(&self, name: &str) -> bool {
        Self::variable(self.model, name).is_ok_and(|v| &v == self)
    }

    pub fn evaluate(&self, point: &EquilibriumPoint) -> Result<Scalar> {
        if point.model() != self.model {
            return Err(Error::SchemaMismatch {
                expected: self.model.to_string(),
                found: point.model().to_string(),
            });
        }
        let mut acc = Scalar::from(self.constant.clone());
        for (c, x) in self.coeffs.iter().zip(point.values()) {
            if !c.is_zero() {
                acc = &acc + &(&Scalar::from(c.clone()) * x);
            }
        }
        Ok(acc)
    }

    /// `self - k * other`.
    pub fn minus_scaled(&self, k: &ExactScalar, other: &UtilityExpr) -> Result<Self> {
        if other.model != self.model {
            return Err(Error::SchemaMismatch {
                expected: self.model.to_string(),
                found: other.model.to_string(),
            });
        }
        Ok(UtilityExpr {
            model: self.model,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - &(k * b))
                .collect(),
            constant: &self.constant - &(k * &other.constant),
        })
    }

    pub fn negated(&self) -> Self {
        UtilityExpr {
            model: self.model,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }
}

impl fmt::Display for UtilityExpr {
    /// Canonical form: variables in schema order, then the constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.model.schema().endogenous;
        let terms = self
            .coeffs
            .iter()
            .zip(names)
            .map(|(c, n)| (c, Some(*n)))
            .chain(std::iter::once((&self.constant, None)))
            .filter(|(c, _)| !c.is_zero());
        let mut first = true;
        for (c, name) in terms {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match name {
                Some(n) if magnitude == ExactScalar::one() => f.write_str(n)?,
                Some(n) => write!(f, "{magnitude}*{n}")?,
                None => write!(f, "{magnitude}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn endogenous_index(model: ModelId, name: &str, column: usize) -> Result<usize> {
    model
        .schema()
        .endogenous_index(name)
        .ok_or_else(|| Error::UnknownName {
            name: name.to_string(),
            line: if column == 0 { 0 } else { 1 },
            column,
        })
}

struct Parser<'a> {
    model: ModelId,
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(model: ModelId, text: &'a str) -> Self {
        Parser { model, text, pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.text[..at].chars().count() + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
        &self.text[start..self.pos]
    }

    fn expr(mut self) -> Result<UtilityExpr> {
        let mut out = UtilityExpr::zero(self.model);
        self.skip_ws();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            self.skip_ws();
            self.term(sign, &mut out)?;
            self.skip_ws();
            sign = match self.peek() {
                None => return Ok(out),
                Some('+') => 1,
                Some('-') => -1,
                Some(c) => return Err(self.error(self.pos, format!("expected '+' or '-', found {c:?}"))),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self, sign: i64, out: &mut UtilityExpr) -> Result<()> {
        let start = self.pos;
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let lit = self.take_while(|c| c.is_ascii_digit() || c == '.' || c == '/');
                let value: ExactScalar = lit
                    .parse()
                    .map_err(|_| self.error(start, format!("invalid coefficient {lit:?}")))?;
                self.skip_ws();
                if self.peek() != Some('*') {
                    out.constant = &out.constant + &(&ExactScalar::from_integer(sign) * &value);
                    return Ok(());
                }
                self.pos += 1;
                self.skip_ws();
                Some(value)
            }
            _ => None,
        };
        let var_start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if name.is_empty() {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("{c:?}"));
            return Err(self.error(var_start, format!("expected a variable or coefficient, found {found}")));
        }
        let column = self.text[..var_start].chars().count() + 1;
        let idx = endogenous_index(self.model, name, column)?;
        let c = coeff.unwrap_or_else(ExactScalar::one);
        out.coeffs[idx] = &out.coeffs[idx] + &(&ExactScalar::from_integer(sign) * &c);
        Ok(())
    }
}

/// How the two players' payoffs are derived from the model outputs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Utilities {
    /// Independent utilities for angel and daemon.
    Pair { angel: UtilityExpr, daemon: UtilityExpr },
    /// The angel receives `u`, the daemon `-u`.
    ZeroSum(UtilityExpr),
    /// `u = u_A - (u_A(base) / u_D(base)) u_D`, evaluated at the unperturbed
    /// valuation; the angel receives `u`, the daemon `-u`.
    ZeroSumNormalized { angel: UtilityExpr, daemon: UtilityExpr },
}

/// A valuation, strength model, permissible components, spreads and utilities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UncertaintyProfile {
    pub valuation: Valuation,
    pub strength: PerturbationStrengthModel,
    pub a_set: ComponentSet,
    pub d_set: ComponentSet,
    pub b_a: usize,
    pub b_d: usize,
    pub utilities: Utilities,
}

impl UncertaintyProfile {
    pub fn new(
        valuation: Valuation,
        strength: PerturbationStrengthModel,
        a_set: ComponentSet,
        d_set: ComponentSet,
        b_a: usize,
        b_d: usize,
        utilities: Utilities,
    ) -> Result<Self> {
        let model = valuation.model();
        if strength.model() != model {
            return Err(Error::SchemaMismatch {
                expected: model.to_string(),
                found: strength.model().to_string(),
            });
        }
        let schema = model.schema();
        for name in a_set.iter().chain(d_set.iter()) {
            schema.component_index(name)?;
        }
        let exprs: Vec<&UtilityExpr> = match &utilities {
            Utilities::Pair { angel, daemon } | Utilities::ZeroSumNormalized { angel, daemon } => {
                vec![angel, daemon]
            }
            Utilities::ZeroSum(u) => vec![u],
        };
        if let Some(bad) = exprs.iter().find(|u| u.model() != model) {
            return Err(Error::SchemaMismatch {
                expected: model.to_string(),
                found: bad.model().to_string(),
            });
        }
        for (b, set) in [(b_a, &a_set), (b_d, &d_set)] {
            if b > set.len() {
                return Err(Error::SpreadTooLarge {
                    spread: b,
                    size: set.len(),
                });
            }
        }
        Ok(UncertaintyProfile {
            valuation,
            strength,
            a_set,
            d_set,
            b_a,
            b_d,
            utilities,
        })
    }

    /// A profile on `model` with utilities given as strings; for tests and examples.
    #[allow(clippy::too_many_arguments)]
    pub fn with_strings(
        valuation: Valuation,
        strength: PerturbationStrengthModel,
        a_set: &[&str],
        d_set: &[&str],
        b_a: usize,
        b_d: usize,
        angel: &str,
        daemon: &str,
    ) -> Result<Self> {
        let model = valuation.model();
        let schema = model.schema();
        UncertaintyProfile::new(
            valuation,
            strength,
            ComponentSet::new(schema, a_set)?,
            ComponentSet::new(schema, d_set)?,
            b_a,
            b_d,
            Utilities::Pair {
                angel: UtilityExpr::parse(model, angel)?,
                daemon: UtilityExpr::parse(model, daemon)?,
            },
        )
    }

    pub fn model(&self) -> ModelId {
        self.valuation.model()
    }
}

/// All `k`-subsets of `set`, lexicographically ordered.
pub fn enumerate_actions(set: &ComponentSet, k: usize) -> Result<Vec<ComponentSet>> {
    set.subsets(k)
}

/// Compiles a profile into its bimatrix game. Stressed valuations may
/// leave the base bounds.
pub fn build_game(profile: &UncertaintyProfile) -> Result<Game> {
    compile(profile, false)
}

/// As [`build_game`], but every stressed valuation must satisfy the base bounds.
pub fn build_game_strict(profile: &UncertaintyProfile) -> Result<Game> {
    compile(profile, true)
}

fn compile(profile: &UncertaintyProfile, strict: bool) -> Result<Game> {
    let normalized;
    let profile = match profile.utilities {
        Utilities::ZeroSumNormalized { .. } => {
            normalized = make_zero_sum_profile(profile)?;
            &normalized
        }
        _ => profile,
    };
    let rows = enumerate_actions(&profile.a_set, profile.b_a)?;
    let cols = enumerate_actions(&profile.d_set, profile.b_d)?;
    model::validate(&profile.valuation)?;
    let mut payoffs = Vec::with_capacity(rows.len());
    for a in &rows {
        let mut line = Vec::with_capacity(cols.len());
        for d in &cols {
            let j = JointAction::new(a.clone(), d.clone());
            let point = if strict {
                perturbation::perturbed_equilibrium_strict(&profile.valuation, &profile.strength, &j)?
            } else {
                perturbation::perturbed_equilibrium(&profile.valuation, &profile.strength, &j)?
            };
            line.push(match &profile.utilities {
                Utilities::Pair { angel, daemon } => (angel.evaluate(&point)?, daemon.evaluate(&point)?),
                Utilities::ZeroSum(u) => {
                    let v = u.evaluate(&point)?;
                    let neg = -v.clone();
                    (v, neg)
                }
                Utilities::ZeroSumNormalized { .. } => unreachable!("normalized above"),
            });
        }
        payoffs.push(line);
    }
    Game::new(rows, cols, payoffs)
}

/// Replaces the utilities by the single zero-sum utility
/// `u = u_A - (u_A(base)/u_D(base)) u_D`, with the ratio taken at the
/// unperturbed valuation whatever the spreads.
pub fn make_zero_sum_profile(profile: &UncertaintyProfile) -> Result<UncertaintyProfile> {
    let (angel, daemon) = match &profile.utilities {
        Utilities::ZeroSum(_) => return Ok(profile.clone()),
        Utilities::Pair { angel, daemon } | Utilities::ZeroSumNormalized { angel, daemon } => (angel, daemon),
    };
    let base = model::solve(&profile.valuation)?;
    let ua = angel.evaluate(&base)?;
    let ud = daemon.evaluate(&base)?;
    if ud.is_zero() {
        return Err(Error::ZeroBaseline);
    }
    let ratio = ua.checked_div(&ud)?.to_exact();
    let mut out = profile.clone();
    out.utilities = Utilities::ZeroSum(angel.minus_scaled(&ratio, daemon)?);
    Ok(out)
}
