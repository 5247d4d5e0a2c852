pub mod chart;
pub mod curvature;
pub mod derived;
pub mod error;
pub mod jet;
pub mod lab;
pub mod manifolds;
pub mod report;
pub mod tensor;

pub use chart::{Chart, FlatChart, MetricJet};
pub use curvature::{ChartCurvature, Depth};
pub use error::{Error, Result};
pub use jet::{Jet, JetSpace, JetTensor};
pub use tensor::{Permutation, Tensor, Vector};
pub use lab::{CheckResult, ExperimentResult, IdentityCheck, Model, Settings, Verdict};
pub use report::{Format, Manifold, Report, RunConfig};
