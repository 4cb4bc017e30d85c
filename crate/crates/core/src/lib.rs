//! Exact Bayesian inference and seeded Monte Carlo for the two-child problem
//! and its variants.
//!
//! The engine enumerates finite sample spaces with exact rational weights:
//! a family model assigns sexes and names, an observation protocol extends
//! the space with its auxiliary randomness, and posteriors fall out of plain
//! conditioning. A catalog of named scenarios wires these together and
//! carries the published closed forms for cross-checking; a deterministic,
//! worker-count-invariant simulator verifies every answer statistically.
//!
//! ```
//! use twochild::{run, ScenarioId, ScenarioParams, Rational};
//!
//! let report = run(ScenarioId::TwoChild, &ScenarioParams::default()).unwrap();
//! assert_eq!(report.exact, Rational::new(1, 3).unwrap());
//! ```

pub mod error;
pub mod family;
pub mod mc;
pub mod prob;
pub mod protocol;
pub mod rational;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
pub use family::{
    at_least_one_boy, family_dist, firstborn_boy_named, has_named_boy, rename_duplicates,
    two_boys, Child, Family, NameAlphabet, NameId, NamingModel, Sex,
};
pub use mc::{bernoulli_draw, simulate, McConfig, McEstimate, TrialSampler, CHUNK_TRIALS};
pub use prob::{EventPredicate, FiniteDist, PartitionReport};
pub use protocol::{episode_dist, observed, posterior_two_boys, ChildIndex, Episode, Protocol};
pub use rational::Rational;
pub use scenario::{
    closed_form, darts_board, darts_demo, darts_event, darts_parts, run, wiring, DartCell,
    DartsVariant, Report, ScenarioId, ScenarioParams, Wiring, ALL_SCENARIOS,
};
