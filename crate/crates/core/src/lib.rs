//! Exact analysis of uncertainty in linear macroeconomic models through
//! angel-daemon games.

pub mod components;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod model;
pub mod perturbation;
pub mod scalar;
pub mod scenario;

pub use components::ComponentSet;
pub use error::{BoundViolation, Error, Result};
pub use model::{EquilibriumPoint, ModelId, ModelSchema, Valuation};
pub use perturbation::{Agent, JointAction, PerturbationStrengthModel};
pub use scalar::{ApproxScalar, ExactScalar, Scalar};
pub use game::{Game, PureProfile};
pub use scenario::{parse_scenario, render_scenario};
pub use dynamics::{run_dynamics, DynamicsTrace, Outcome};
