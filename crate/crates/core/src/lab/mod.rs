//! Curvature derivations, the identity registry and the sampling runner.

pub mod balance;
pub mod context;
pub mod derivation;
pub mod experiments;
pub mod registry;
pub mod runner;

pub use balance::Balance;
pub use context::{Args, BPresets, Ctx, PointData};
pub use derivation::{curvature_endo, derive_tensor, derive_with, literal_second_derivative_xi, phi2_apply};
pub use experiments::{find_experiment, run_experiment, run_experiments, Experiment, ExperimentResult, Relation, EXPERIMENTS};
pub use registry::{find, registry, BackendReq, Expectation, IdentityCheck, OUT_OF_SCOPE};
pub use runner::{evaluate_identity, run_checks, CheckResult, Model, Settings, Verdict};
