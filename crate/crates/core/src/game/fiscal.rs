use std::cmp::Ordering;

use super::analysis::{dominant_equilibria, pure_nash};
use super::profile::{build_game, UncertaintyProfile, Utilities, UtilityExpr};
use super::{Game, PureProfile};
use crate::components::ComponentSet;
use crate::error::{Error, Result};
use crate::model::{ModelId, Valuation};
use crate::perturbation::{Agent, JointAction, PerturbationStrengthModel};
use crate::scalar::ExactScalar;

/// Sign analysis of the fiscal game `<E, S, {G,T}, {G,T}, 1, 1, Y, r>`.
///
/// Moving an agent's single perturbation from `T` to `G` changes both `Y`
/// and `r` by a positive multiple of `mu = b*delta(T) + delta(G)`, so each
/// agent plays `G` when its `mu` is positive, `T` when negative, and is
/// indifferent at zero.
#[derive(Clone, PartialEq, Debug)]
pub struct FiscalClassification {
    pub mu_a: ExactScalar,
    pub mu_d: ExactScalar,
    /// Pure equilibria predicted from the two signs.
    pub predicted_pne: Vec<JointAction>,
    /// A dominant strategy equilibrium of the compiled game.
    pub dse_witness: JointAction,
    pub game: Game,
}

impl FiscalClassification {
    pub fn signs(&self) -> (i8, i8) {
        (self.mu_a.signum(), self.mu_d.signum())
    }
}

/// Classifies a strength model that perturbs only `T` and `G`, and checks
/// the prediction against the compiled game.
pub fn classify_fiscal(strength: &PerturbationStrengthModel, valuation: &Valuation) -> Result<FiscalClassification> {
    if valuation.model() != ModelId::IsLm || strength.model() != ModelId::IsLm {
        return Err(Error::NotFiscalStrength("fiscal games need the ISLM model".into()));
    }
    let stray: Vec<&str> = strength
        .perturbable()
        .into_iter()
        .filter(|n| *n != "T" && *n != "G")
        .collect();
    if !stray.is_empty() {
        return Err(Error::NotFiscalStrength(format!(
            "nonzero deltas outside {{G,T}}: {}",
            stray.join(", ")
        )));
    }
    let b = valuation.get("b")?;
    let mu = |agent: Agent| -> Result<ExactScalar> {
        Ok(&(b * strength.get(agent, "T")?) + strength.get(agent, "G")?)
    };
    let (mu_a, mu_d) = (mu(Agent::Angel)?, mu(Agent::Daemon)?);

    let schema = ModelId::IsLm.schema();
    let fiscal = ComponentSet::new(schema, ["G", "T"])?;
    let profile = UncertaintyProfile::new(
        valuation.clone(),
        strength.clone(),
        fiscal.clone(),
        fiscal,
        1,
        1,
        Utilities::Pair {
            angel: UtilityExpr::variable(ModelId::IsLm, "Y")?,
            daemon: UtilityExpr::variable(ModelId::IsLm, "r")?,
        },
    )?;
    let game = build_game(&profile)?;

    let choices = |m: &ExactScalar| -> Result<Vec<ComponentSet>> {
        let names: &[&str] = match m.signum().cmp(&0) {
            Ordering::Greater => &["G"],
            Ordering::Less => &["T"],
            Ordering::Equal => &["G", "T"],
        };
        names.iter().map(|n| ComponentSet::new(schema, [n])).collect()
    };
    let mut predicted_pne = Vec::new();
    for a in choices(&mu_a)? {
        for d in choices(&mu_d)? {
            predicted_pne.push(JointAction::new(a.clone(), d));
        }
    }
    predicted_pne.sort();

    let mut actual: Vec<JointAction> = pure_nash(&game).into_iter().map(|p| game.joint_action(p)).collect();
    actual.sort();
    if actual != predicted_pne {
        return Err(Error::ClassificationMismatch(format!(
            "predicted {} but the game has {}",
            render(&predicted_pne),
            render(&actual)
        )));
    }
    let dse: Vec<PureProfile> = dominant_equilibria(&game);
    let witness = predicted_pne
        .iter()
        .find(|j| game.profile_of(j).is_ok_and(|p| dse.contains(&p)))
        .cloned()
        .ok_or_else(|| Error::ClassificationMismatch("no dominant strategy equilibrium".into()))?;
    Ok(FiscalClassification {
        mu_a,
        mu_d,
        predicted_pne,
        dse_witness: witness,
        game,
    })
}

fn render(js: &[JointAction]) -> String {
    let parts: Vec<String> = js.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::examples as vals;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    fn strength(a_t: &str, a_g: &str, d_t: &str, d_g: &str) -> PerturbationStrengthModel {
        PerturbationStrengthModel::zero(ModelId::IsLm)
            .with(Agent::Angel, "T", q(a_t))
            .unwrap()
            .with(Agent::Angel, "G", q(a_g))
            .unwrap()
            .with(Agent::Daemon, "T", q(d_t))
            .unwrap()
            .with(Agent::Daemon, "G", q(d_g))
            .unwrap()
    }

    fn labels(c: &FiscalClassification) -> Vec<String> {
        c.predicted_pne.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn all_positive_deltas_favour_spending() {
        let c = classify_fiscal(&strength("1", "1", "1", "1"), &vals::islm()).unwrap();
        assert_eq!(c.signs(), (1, 1));
        assert_eq!(labels(&c), ["({G},{G})"]);
        assert_eq!(c.dse_witness.to_string(), "({G},{G})");
    }

    #[test]
    fn tax_cut_outweighs_spending_for_the_angel() {
        // b = 3/4: angel mu = -3/4*40 + 20 < 0, daemon mu = 3/4*40 - 20 > 0
        let c = classify_fiscal(&strength("-40", "20", "40", "-20"), &vals::islm()).unwrap();
        assert_eq!(c.signs(), (-1, 1));
        assert_eq!(labels(&c), ["({T},{G})"]);
    }

    #[test]
    fn zero_mu_makes_every_profile_an_equilibrium() {
        let c = classify_fiscal(&strength("4", "-3", "-4", "3"), &vals::islm()).unwrap();
        assert_eq!(c.signs(), (0, 0));
        assert_eq!(labels(&c).len(), 4);
    }

    #[test]
    fn other_components_are_rejected() {
        let s = strength("1", "1", "1", "1").with(Agent::Daemon, "P", q("1")).unwrap();
        assert!(matches!(classify_fiscal(&s, &vals::islm()), Err(Error::NotFiscalStrength(_))));
        let s = PerturbationStrengthModel::zero(ModelId::IsMp);
        assert!(matches!(classify_fiscal(&s, &vals::ismp()), Err(Error::NotFiscalStrength(_))));
    }
}
