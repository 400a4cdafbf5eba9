//! Perturbation strength models and the stress operator.

use std::fmt;

use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::model::{self, EquilibriumPoint, ModelId, Valuation};
use crate::scalar::{ExactScalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Agent {
    Angel,
    Daemon,
}

impl Agent {
    pub fn as_str(self) -> &'static str {
        match self {
            Agent::Angel => "angel",
            Agent::Daemon => "daemon",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Agent::Angel => 'A',
            Agent::Daemon => 'D',
        }
    }

    pub fn other(self) -> Agent {
        match self {
            Agent::Angel => Agent::Daemon,
            Agent::Daemon => Agent::Angel,
        }
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Additive deltas `(delta_angel, delta_daemon)` for every component of a model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PerturbationStrengthModel {
    model: ModelId,
    deltas: Vec<(ExactScalar, ExactScalar)>,
}

impl PerturbationStrengthModel {
    /// All entries start at `(0, 0)`.
    pub fn zero(model: ModelId) -> Self {
        let n = model.schema().components.len();
        PerturbationStrengthModel {
            model,
            deltas: vec![(ExactScalar::zero(), ExactScalar::zero()); n],
        }
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn set(&mut self, agent: Agent, component: &str, value: ExactScalar) -> Result<()> {
        let idx = self.model.schema().component_index(component)?;
        let slot = &mut self.deltas[idx];
        match agent {
            Agent::Angel => slot.0 = value,
            Agent::Daemon => slot.1 = value,
        }
        Ok(())
    }

    /// Builder form of [`set`](Self::set).
    pub fn with(mut self, agent: Agent, component: &str, value: ExactScalar) -> Result<Self> {
        self.set(agent, component, value)?;
        Ok(self)
    }

    pub fn get(&self, agent: Agent, component: &str) -> Result<&ExactScalar> {
        let idx = self.model.schema().component_index(component)?;
        Ok(self.at(agent, idx))
    }

    fn at(&self, agent: Agent, idx: usize) -> &ExactScalar {
        match agent {
            Agent::Angel => &self.deltas[idx].0,
            Agent::Daemon => &self.deltas[idx].1,
        }
    }

    /// Components where either agent has a nonzero delta, in schema order.
    pub fn perturbable(&self) -> Vec<&'static str> {
        self.iter()
            .filter(|(_, a, d)| !a.is_zero() || !d.is_zero())
            .map(|(name, _, _)| name)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &ExactScalar, &ExactScalar)> + '_ {
        self.model
            .schema()
            .components
            .iter()
            .zip(&self.deltas)
            .map(|(name, (a, d))| (*name, a, d))
    }
}

/// The components chosen by the angel (`a`) and by the daemon (`d`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct JointAction {
    pub a: ComponentSet,
    pub d: ComponentSet,
}

impl JointAction {
    pub fn new(a: ComponentSet, d: ComponentSet) -> Self {
        JointAction { a, d }
    }

    pub fn none() -> Self {
        JointAction::default()
    }

    pub fn get(&self, agent: Agent) -> &ComponentSet {
        match agent {
            Agent::Angel => &self.a,
            Agent::Daemon => &self.d,
        }
    }
}

impl fmt::Display for JointAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.d)
    }
}

/// The change applied to `component` under joint action `j`.
pub fn delta(s: &PerturbationStrengthModel, component: &str, j: &JointAction) -> Result<ExactScalar> {
    let idx = s.model.schema().component_index(component)?;
    Ok(delta_at(s, idx, component, j))
}

fn delta_at(s: &PerturbationStrengthModel, idx: usize, name: &str, j: &JointAction) -> ExactScalar {
    match (j.a.contains(name), j.d.contains(name)) {
        (false, false) => ExactScalar::zero(),
        (true, false) => s.at(Agent::Angel, idx).clone(),
        (false, true) => s.at(Agent::Daemon, idx).clone(),
        (true, true) => s.at(Agent::Angel, idx) + s.at(Agent::Daemon, idx),
    }
}

/// The valuation after applying `j` under strengths `s`. Bounds are not re-checked.
pub fn stress(valuation: &Valuation, s: &PerturbationStrengthModel, j: &JointAction) -> Result<Valuation> {
    if valuation.model() != s.model {
        return Err(Error::SchemaMismatch {
            expected: valuation.model().to_string(),
            found: s.model.to_string(),
        });
    }
    let schema = valuation.schema();
    for name in j.a.iter().chain(j.d.iter()) {
        schema.component_index(name)?;
    }
    let mut out = valuation.clone();
    for (idx, (name, value)) in schema.components.iter().zip(out.values_mut()).enumerate() {
        let change = delta_at(s, idx, name, j);
        if !change.is_zero() {
            *value = &*value + &change;
        }
    }
    Ok(out)
}

/// Solves the model at the stressed valuation. The base valuation is
/// validated; the stressed one is not.
pub fn perturbed_equilibrium(
    valuation: &Valuation,
    s: &PerturbationStrengthModel,
    j: &JointAction,
) -> Result<EquilibriumPoint> {
    model::validate(valuation)?;
    model::solve_unchecked(&stress(valuation, s, j)?)
}

/// Like [`perturbed_equilibrium`] but the stressed valuation must also be valid.
pub fn perturbed_equilibrium_strict(
    valuation: &Valuation,
    s: &PerturbationStrengthModel,
    j: &JointAction,
) -> Result<EquilibriumPoint> {
    model::validate(valuation)?;
    model::solve(&stress(valuation, s, j)?)
}

/// Closed-form first-order response of the linear models, available when
/// the strengths leave the coefficient matrix untouched.
///
/// IS-LM: requires zero deltas on `b, d, e, f, P`; the shift is
/// `(1/g) [[f, d/P], [e, -(1-b)/P]] (da + dc + dG - b dT, dM)`.
/// IS-MP: requires zero deltas on `alpha, rho, phi, theta_pi, theta_Y`; the
/// shift is `gamma [[1, -alpha theta_pi], [phi, 1 + alpha theta_Y]] (deps, dv) + (dYbar, dpi_star)`.
/// Returns `None` when the precondition fails or for the option model.
pub fn linear_response(
    valuation: &Valuation,
    s: &PerturbationStrengthModel,
    j: &JointAction,
) -> Result<Option<EquilibriumPoint>> {
    let frozen: &[&str] = match valuation.model() {
        ModelId::IsLm => &["b", "d", "e", "f", "P"],
        ModelId::IsMp => &["alpha", "rho", "phi", "theta_pi", "theta_Y"],
        ModelId::BinomialCall => return Ok(None),
    };
    for name in frozen {
        if !s.get(Agent::Angel, name)?.is_zero() || !s.get(Agent::Daemon, name)?.is_zero() {
            return Ok(None);
        }
    }
    let base = model::solve(valuation)?;
    let v = |n: &str| valuation.get(n).expect("schema name").clone();
    let dl = |n: &str| delta(s, n, j).expect("schema name");
    let (dy, dz) = match valuation.model() {
        ModelId::IsLm => {
            let g = model::islm_g(valuation);
            let one = ExactScalar::one();
            let demand = &(&(&dl("a") + &dl("c")) + &dl("G")) - &(&v("b") * &dl("T"));
            let money = dl("M").checked_div(&v("P"))?;
            let dy = (&(&v("f") * &demand) + &(&v("d") * &money)).checked_div(&g)?;
            let dr = (&(&v("e") * &demand) - &(&(&one - &v("b")) * &money)).checked_div(&g)?;
            (dy, dr)
        }
        _ => {
            let k = model::ismp_coefficients(valuation)?;
            let (eps, shock) = (dl("eps"), dl("v"));
            let dy = &(&(&k.gamma * &eps) - &(&k.delta * &shock)) + &dl("Ybar");
            let dpi = &(&(&k.rho * &eps) + &(&k.mu * &shock)) + &dl("pi_star");
            (dy, dpi)
        }
    };
    let shifted = vec![
        &base.values()[0] + &Scalar::from(dy),
        &base.values()[1] + &Scalar::from(dz),
    ];
    EquilibriumPoint::new(valuation.model(), shifted).map(Some)
}

/// Strength models used in the documentation and tests.
pub mod examples {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().expect("static literal")
    }

    /// IS-LM: angel may raise `b` by 1/20 or `G` by 50; daemon may raise
    /// `P` by 1, raise `T` by 50 or cut `G` by 25.
    pub fn islm() -> PerturbationStrengthModel {
        build(
            ModelId::IsLm,
            &[("b", "1/20"), ("G", "50")],
            &[("P", "1"), ("T", "50"), ("G", "-25")],
        )
    }

    /// IS-MP: angel may raise `Ybar` by 25 or `eps` by 2; daemon may raise
    /// `pi_star` by 3 or `v` by 2.
    pub fn ismp() -> PerturbationStrengthModel {
        build(
            ModelId::IsMp,
            &[("Ybar", "25"), ("eps", "2")],
            &[("pi_star", "3"), ("v", "2")],
        )
    }

    /// Call option: angel may cut `r` by 0.05 or raise `u` by 0.4; daemon
    /// may raise `r` by 0.10 or `d` by 0.3.
    pub fn binomial_call() -> PerturbationStrengthModel {
        build(
            ModelId::BinomialCall,
            &[("r", "-0.05"), ("u", "0.4")],
            &[("r", "0.10"), ("d", "0.3")],
        )
    }

    fn build(model: ModelId, angel: &[(&str, &str)], daemon: &[(&str, &str)]) -> PerturbationStrengthModel {
        let mut s = PerturbationStrengthModel::zero(model);
        for (agent, rows) in [(Agent::Angel, angel), (Agent::Daemon, daemon)] {
            for (name, value) in rows {
                s.set(agent, name, q(value)).expect("static component");
            }
        }
        s
    }
}
