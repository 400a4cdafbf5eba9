//! Model schemas, valuations, and the closed-form equilibrium solvers.
//!
//! Three models are supported: the linear IS-LM model (`Y`, `r`), the
//! linear IS-MP model without lagged inflation (`Y`, `pi`), and a one-step
//! binomial call (`Delta`, `f`). Schemas are disjoint namespaces, so the
//! option uses `Tm` for expiry and IS-MP uses `eps` for the demand shock.

use std::fmt;
use std::str::FromStr;

use crate::error::{BoundViolation, Error, Result};
use crate::scalar::{ExactScalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    IsLm,
    IsMp,
    BinomialCall,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::IsLm, ModelId::IsMp, ModelId::BinomialCall];

    pub fn schema(self) -> &'static ModelSchema {
        match self {
            ModelId::IsLm => &ISLM,
            ModelId::IsMp => &ISMP,
            ModelId::BinomialCall => &BINOMIAL_CALL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::IsLm => "ISLM",
            ModelId::IsMp => "ISMP",
            ModelId::BinomialCall => "BINOMIAL_CALL",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "ISLM" | "IS_LM" => Ok(ModelId::IsLm),
            "ISMP" | "IS_MP" => Ok(ModelId::IsMp),
            "BINOMIAL_CALL" => Ok(ModelId::BinomialCall),
            other => Err(format!("unknown model {other:?}")),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ModelSchema {
    pub model: ModelId,
    pub components: &'static [&'static str],
    pub endogenous: &'static [&'static str],
}

static ISLM: ModelSchema = ModelSchema {
    model: ModelId::IsLm,
    components: &["a", "b", "c", "d", "e", "f", "T", "G", "M", "P"],
    endogenous: &["Y", "r"],
};

static ISMP: ModelSchema = ModelSchema {
    model: ModelId::IsMp,
    components: &[
        "alpha", "rho", "phi", "theta_pi", "theta_Y", "pi_star", "Ybar", "eps", "v",
    ],
    endogenous: &["Y", "pi"],
};

static BINOMIAL_CALL: ModelSchema = ModelSchema {
    model: ModelId::BinomialCall,
    components: &["S", "X", "Tm", "r", "u", "d"],
    endogenous: &["Delta", "f"],
};

impl ModelSchema {
    pub fn component_index(&self, name: &str) -> Result<usize> {
        self.components
            .iter()
            .position(|c| *c == name)
            .ok_or_else(|| Error::UnknownComponent {
                name: name.to_string(),
                model: self.model.to_string(),
            })
    }

    /// The schema's own `'static` spelling of a component name.
    pub fn component(&self, name: &str) -> Result<&'static str> {
        self.component_index(name).map(|i| self.components[i])
    }

    pub fn endogenous_index(&self, name: &str) -> Option<usize> {
        self.endogenous.iter().position(|c| *c == name)
    }
}

/// Exact values for every exogenous component of a model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Valuation {
    model: ModelId,
    values: Vec<ExactScalar>,
}

impl Valuation {
    /// Builds a valuation; every schema component must be given exactly once.
    pub fn new<'a, I>(model: ModelId, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, ExactScalar)>,
    {
        let schema = model.schema();
        let mut slots: Vec<Option<ExactScalar>> = vec![None; schema.components.len()];
        for (name, value) in entries {
            let idx = schema.component_index(name)?;
            slots[idx] = Some(value);
        }
        let values = slots
            .into_iter()
            .zip(schema.components)
            .map(|(v, name)| v.ok_or_else(|| Error::MissingComponent(name.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Valuation { model, values })
    }

    /// Convenience constructor from string literals, mainly for tests.
    pub fn parse(model: ModelId, entries: &[(&str, &str)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|(k, v)| v.parse::<ExactScalar>().map(|x| (*k, x)))
            .collect::<Result<Vec<_>>>()?;
        Valuation::new(model, parsed)
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn schema(&self) -> &'static ModelSchema {
        self.model.schema()
    }

    pub fn get(&self, name: &str) -> Result<&ExactScalar> {
        self.schema().component_index(name).map(|i| &self.values[i])
    }

    pub fn value(&self, index: usize) -> &ExactScalar {
        &self.values[index]
    }

    pub fn with(&self, name: &str, value: ExactScalar) -> Result<Self> {
        let idx = self.schema().component_index(name)?;
        let mut out = self.clone();
        out.values[idx] = value;
        Ok(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &ExactScalar)> + '_ {
        self.schema().components.iter().copied().zip(&self.values)
    }

    pub(crate) fn values_mut(&mut self) -> &mut [ExactScalar] {
        &mut self.values
    }

    fn v(&self, name: &str) -> &ExactScalar {
        // Only called with names from the matching schema.
        &self.values[self.schema().component_index(name).expect("schema name")]
    }
}

/// Solved endogenous values, keyed by the schema's endogenous names.
#[derive(Clone, PartialEq, Debug)]
pub struct EquilibriumPoint {
    model: ModelId,
    values: Vec<Scalar>,
}

impl EquilibriumPoint {
    pub fn new(model: ModelId, values: Vec<Scalar>) -> Result<Self> {
        let expected = model.schema().endogenous.len();
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(EquilibriumPoint { model, values })
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.model
            .schema()
            .endogenous_index(name)
            .map(|i| &self.values[i])
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Scalar)> + '_ {
        self.model.schema().endogenous.iter().copied().zip(&self.values)
    }
}

impl fmt::Display for EquilibriumPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(name, v)| {
                if v.is_exact() {
                    format!("{name} = {v} (≈ {})", v.to_decimal())
                } else {
                    format!("{name} ≈ {}", v.to_decimal())
                }
            })
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Checks the base bounds of a valuation and reports every violation.
pub fn validate(valuation: &Valuation) -> Result<()> {
    let mut violations = Vec::new();
    let mut positive = |name: &str| {
        if !valuation.v(name).is_positive() {
            violations.push(BoundViolation {
                component: name.to_string(),
                bound: format!("0<{name}"),
            });
        }
    };
    match valuation.model() {
        ModelId::IsLm => {
            for name in ["a", "c", "d", "e", "f", "T", "G", "M", "P"] {
                positive(name);
            }
            let b = valuation.v("b");
            if !b.is_positive() || *b >= ExactScalar::one() {
                violations.push(BoundViolation {
                    component: "b".into(),
                    bound: "0<b<1".into(),
                });
            }
            // keep schema order in the report
            violations.sort_by_key(|v| ISLM.component_index(&v.component).unwrap_or(0));
        }
        ModelId::IsMp => {
            for name in ["alpha", "rho", "phi", "theta_pi", "theta_Y"] {
                positive(name);
            }
        }
        ModelId::BinomialCall => {
            for name in ["S", "X", "Tm", "d"] {
                positive(name);
            }
            if valuation.v("u") <= valuation.v("d") {
                violations.push(BoundViolation {
                    component: "u".into(),
                    bound: "d<u".into(),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::BoundViolation(violations))
    }
}

/// `g = (1-b)f + de`, the IS-LM determinant scale.
pub fn islm_g(valuation: &Valuation) -> ExactScalar {
    let (b, d, e, f) = (valuation.v("b"), valuation.v("d"), valuation.v("e"), valuation.v("f"));
    &(&(&ExactScalar::one() - b) * f) + &(d * e)
}

/// Validates and solves the linear IS-LM system for `(Y, r)`.
pub fn solve_islm(valuation: &Valuation) -> Result<EquilibriumPoint> {
    expect_model(valuation, ModelId::IsLm)?;
    validate(valuation)?;
    islm_point(valuation)
}

pub(crate) fn islm_point(valuation: &Valuation) -> Result<EquilibriumPoint> {
    let v = |n: &str| valuation.v(n);
    let one = ExactScalar::one();
    let g = islm_g(valuation);
    let demand = &(&(v("a") + v("c")) + v("G")) - &(v("b") * v("T"));
    let real_money = v("M").checked_div(v("P"))?;
    let y = &(&v("f").checked_div(&g)? * &demand) + &(&v("d").checked_div(&g)? * &real_money);
    let r = &(&v("e").checked_div(&g)? * &demand) - &(&(&one - v("b")).checked_div(&g)? * &real_money);
    EquilibriumPoint::new(ModelId::IsLm, vec![y.into(), r.into()])
}

/// Reduced-form IS-MP coefficients: the equilibrium is
/// `Y = Ybar + gamma*eps - delta*v`, `pi = pi_star + rho*eps + mu*v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsmpCoefficients {
    pub gamma: ExactScalar,
    pub delta: ExactScalar,
    pub rho: ExactScalar,
    pub mu: ExactScalar,
}

pub fn ismp_coefficients(valuation: &Valuation) -> Result<IsmpCoefficients> {
    let v = |n: &str| valuation.v(n);
    let one = ExactScalar::one();
    let alpha = v("alpha");
    let inner = v("theta_Y") + &(v("phi") * v("theta_pi"));
    let gamma = (&one + &(alpha * &inner)).recip()?;
    Ok(IsmpCoefficients {
        delta: &(alpha * v("theta_pi")) * &gamma,
        rho: v("phi") * &gamma,
        mu: &(&one + &(alpha * v("theta_Y"))) * &gamma,
        gamma,
    })
}

/// Validates and solves the IS-MP system for `(Y, pi)`.
pub fn solve_ismp(valuation: &Valuation) -> Result<EquilibriumPoint> {
    expect_model(valuation, ModelId::IsMp)?;
    validate(valuation)?;
    ismp_point(valuation)
}

pub(crate) fn ismp_point(valuation: &Valuation) -> Result<EquilibriumPoint> {
    let v = |n: &str| valuation.v(n);
    let k = ismp_coefficients(valuation)?;
    let y = &(v("Ybar") + &(&k.gamma * v("eps"))) - &(&k.delta * v("v"));
    let pi = &(v("pi_star") + &(&k.rho * v("eps"))) + &(&k.mu * v("v"));
    EquilibriumPoint::new(ModelId::IsMp, vec![y.into(), pi.into()])
}

/// Validates and prices a one-step binomial call, returning `(Delta, f)`.
///
/// `Delta` is exact; `f` needs `exp(-r*Tm)` and is a double.
pub fn price_call_binomial(valuation: &Valuation) -> Result<EquilibriumPoint> {
    expect_model(valuation, ModelId::BinomialCall)?;
    if valuation.v("u") == valuation.v("d") {
        return Err(Error::DegenerateTree);
    }
    validate(valuation)?;
    binomial_point(valuation)
}

/// Option payoffs at the two leaves, `(f_u, f_d)`.
pub fn binomial_payoffs(valuation: &Valuation) -> (ExactScalar, ExactScalar) {
    let v = |n: &str| valuation.v(n);
    let zero = ExactScalar::zero();
    let payoff = |leaf: &str| {
        let intrinsic = &(v("S") * v(leaf)) - v("X");
        if intrinsic > zero {
            intrinsic
        } else {
            zero.clone()
        }
    };
    (payoff("u"), payoff("d"))
}

pub(crate) fn binomial_point(valuation: &Valuation) -> Result<EquilibriumPoint> {
    let v = |n: &str| valuation.v(n);
    let (f_u, f_d) = binomial_payoffs(valuation);
    let spread = &(v("S") * v("u")) - &(v("S") * v("d"));
    if spread.is_zero() {
        return Err(Error::DegenerateTree);
    }
    let delta = (&f_u - &f_d).checked_div(&spread)?;
    // Hedged portfolio: long Delta shares, short one call. Its value at the
    // down leaf is riskless and is discounted back one period.
    let discount = (-(v("r").to_f64() * v("Tm").to_f64())).exp();
    let leaf_value = (&(&(v("S") * v("d")) * &delta) - &f_d).to_f64();
    let price = (v("S") * &delta).to_f64() - leaf_value * discount;
    EquilibriumPoint::new(
        ModelId::BinomialCall,
        vec![delta.into(), Scalar::approx(price)?],
    )
}

/// Validates and solves whichever model the valuation belongs to.
pub fn solve(valuation: &Valuation) -> Result<EquilibriumPoint> {
    match valuation.model() {
        ModelId::IsLm => solve_islm(valuation),
        ModelId::IsMp => solve_ismp(valuation),
        ModelId::BinomialCall => price_call_binomial(valuation),
    }
}

/// Solves without checking base bounds; used for perturbed valuations.
pub fn solve_unchecked(valuation: &Valuation) -> Result<EquilibriumPoint> {
    match valuation.model() {
        ModelId::IsLm => islm_point(valuation),
        ModelId::IsMp => ismp_point(valuation),
        ModelId::BinomialCall => binomial_point(valuation),
    }
}

fn expect_model(valuation: &Valuation, model: ModelId) -> Result<()> {
    if valuation.model() == model {
        Ok(())
    } else {
        Err(Error::SchemaMismatch {
            expected: model.to_string(),
            found: valuation.model().to_string(),
        })
    }
}

/// The valuations used throughout the documentation and tests.
pub mod examples {
    use super::*;

    /// IS-LM valuation with equilibrium `(1100, 6)`.
    pub fn islm() -> Valuation {
        Valuation::parse(
            ModelId::IsLm,
            &[
                ("a", "200"),
                ("b", "3/4"),
                ("c", "200"),
                ("d", "25"),
                ("e", "1"),
                ("f", "100"),
                ("T", "100"),
                ("G", "100"),
                ("M", "1000"),
                ("P", "2"),
            ],
        )
        .expect("static valuation")
    }

    /// IS-MP valuation with equilibrium `(1306/13, 34/13)`.
    pub fn ismp() -> Valuation {
        Valuation::parse(
            ModelId::IsMp,
            &[
                ("alpha", "1"),
                ("rho", "2"),
                ("phi", "1/4"),
                ("theta_pi", "1/2"),
                ("theta_Y", "1/2"),
                ("pi_star", "2"),
                ("Ybar", "100"),
                ("eps", "1"),
                ("v", "1/2"),
            ],
        )
        .expect("static valuation")
    }

    /// Three-month call with `Delta = 1/10`.
    pub fn binomial_call() -> Valuation {
        Valuation::parse(
            ModelId::BinomialCall,
            &[
                ("S", "20"),
                ("X", "21"),
                ("Tm", "0.25"),
                ("r", "0.12"),
                ("u", "1.1"),
                ("d", "0.6"),
            ],
        )
        .expect("static valuation")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn q(s: &str) -> Scalar {
        Scalar::Exact(s.parse().unwrap())
    }

    fn violations(err: Error) -> Vec<(String, String)> {
        match err {
            Error::BoundViolation(v) => v.into_iter().map(|b| (b.component, b.bound)).collect(),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn example_valuations_are_valid() {
        for v in [islm(), ismp(), binomial_call()] {
            validate(&v).unwrap();
        }
    }

    #[test]
    fn propensity_at_one_is_rejected() {
        let v = islm().with("b", ExactScalar::one()).unwrap();
        assert_eq!(
            violations(validate(&v).unwrap_err()),
            vec![("b".to_string(), "0<b<1".to_string())]
        );
    }

    #[test]
    fn zero_price_level_is_rejected() {
        let v = islm().with("P", ExactScalar::zero()).unwrap();
        assert_eq!(
            violations(validate(&v).unwrap_err()),
            vec![("P".to_string(), "0<P".to_string())]
        );
    }

    #[test]
    fn every_violation_is_reported() {
        let v = islm()
            .with("a", ExactScalar::from_integer(-1))
            .unwrap()
            .with("M", ExactScalar::zero())
            .unwrap();
        let names: Vec<_> = violations(validate(&v).unwrap_err())
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        assert_eq!(names, vec!["a", "M"]);
    }

    #[test]
    fn missing_and_unknown_components() {
        assert_eq!(
            Valuation::parse(ModelId::IsLm, &[("a", "1")]).unwrap_err(),
            Error::MissingComponent("b".into())
        );
        assert!(matches!(
            Valuation::parse(ModelId::IsMp, &[("Q", "1")]),
            Err(Error::UnknownComponent { .. })
        ));
    }

    #[test]
    fn islm_base_equilibrium() {
        let p = solve_islm(&islm()).unwrap();
        assert_eq!(p.get("Y"), Some(&q("1100")));
        assert_eq!(p.get("r"), Some(&q("6")));
    }

    #[test]
    fn islm_changed_propensity_price_and_spending() {
        let v = islm()
            .with("G", ExactScalar::from_integer(75))
            .unwrap()
            .with("P", ExactScalar::from_integer(3))
            .unwrap()
            .with("b", "4/5".parse().unwrap())
            .unwrap();
        let p = solve_islm(&v).unwrap();
        assert_eq!(p.get("Y"), Some(&q("28700/27")));
        assert_eq!(p.get("r"), Some(&q("197/27")));
        assert_eq!(p.get("Y").unwrap().to_fixed(2), "1062.96");
        assert_eq!(p.get("r").unwrap().to_fixed(2), "7.30");
    }

    #[test]
    fn ismp_base_equilibrium() {
        let p = solve_ismp(&ismp()).unwrap();
        assert_eq!(p.get("Y"), Some(&q("1306/13")));
        assert_eq!(p.get("pi"), Some(&q("34/13")));
    }

    #[test]
    fn ismp_without_shocks_sits_at_targets() {
        let v = ismp()
            .with("eps", ExactScalar::zero())
            .unwrap()
            .with("v", ExactScalar::zero())
            .unwrap();
        let p = solve_ismp(&v).unwrap();
        assert_eq!(p.get("Y"), Some(&q("100")));
        assert_eq!(p.get("pi"), Some(&q("2")));
    }

    #[test]
    fn solvers_reject_the_wrong_schema() {
        assert!(matches!(solve_islm(&ismp()), Err(Error::SchemaMismatch { .. })));
        assert!(matches!(
            price_call_binomial(&islm()),
            Err(Error::SchemaMismatch { .. })
        ));
    }

    #[test]
    fn call_price_matches_hedge_construction() {
        let p = price_call_binomial(&binomial_call()).unwrap();
        assert_eq!(p.get("Delta"), Some(&q("1/10")));
        assert!((p.get("f").unwrap().to_f64() - 0.835465).abs() < 1e-6);
    }

    #[test]
    fn call_price_after_moving_both_jumps() {
        let v = binomial_call()
            .with("u", "1.5".parse().unwrap())
            .unwrap()
            .with("d", "0.9".parse().unwrap())
            .unwrap();
        let p = price_call_binomial(&v).unwrap();
        assert_eq!(p.get("Delta"), Some(&q("3/4")));
        assert!((p.get("f").unwrap().to_f64() - 1.898985).abs() < 1e-6);
    }

    #[test]
    fn out_of_the_money_call_is_worthless() {
        let v = binomial_call().with("X", ExactScalar::from_integer(22)).unwrap();
        let p = price_call_binomial(&v).unwrap();
        assert_eq!(p.get("Delta"), Some(&q("0")));
        assert!(p.get("f").unwrap().to_f64().abs() < 1e-12);
    }

    #[test]
    fn equal_jumps_are_degenerate() {
        let v = binomial_call().with("d", "1.1".parse().unwrap()).unwrap();
        assert_eq!(price_call_binomial(&v).unwrap_err(), Error::DegenerateTree);
    }

    #[test]
    fn deep_in_the_money_call_prices_as_forward() {
        // both leaves in the money: f = S - X*exp(-r*Tm)
        let v = binomial_call().with("X", ExactScalar::from_integer(5)).unwrap();
        let p = price_call_binomial(&v).unwrap();
        assert_eq!(p.get("Delta"), Some(&q("1")));
        let expected = 20.0 - 5.0 * (-0.12f64 * 0.25).exp();
        assert!((p.get("f").unwrap().to_f64() - expected).abs() < 1e-12);
    }

    #[test]
    fn model_ids_round_trip() {
        for m in ModelId::ALL {
            assert_eq!(m.as_str().parse::<ModelId>().unwrap(), m);
        }
        assert_eq!("IS-LM".parse::<ModelId>().unwrap(), ModelId::IsLm);
    }
}
