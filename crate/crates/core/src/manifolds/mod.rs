//! Built-in Sasakian models and the pointwise geometry they produce.

pub mod darboux;
pub mod frame;
pub mod geometry;
pub mod sampling;
pub mod space_form;

pub use darboux::DarbouxChart;
pub use frame::{adapted_frame, express_in_frame};
pub use geometry::{
    chart_geometry, ricci_from, structure_h, Backend, ExteriorConvention, GeometryAtPoint, GeometryOptions,
};
pub use sampling::{horizontal_project, sample_point, sample_vectors, InputClass};
pub use space_form::SpaceForm;

use crate::error::Result;

/// Full chart-backend geometry of the Darboux model, including `∇²R`.
pub fn darboux_geometry(m: usize, point: &[f64]) -> Result<GeometryAtPoint> {
    chart_geometry(&DarbouxChart::new(m)?, point, GeometryOptions::default())
}

pub fn space_form_geometry(m: usize, c: f64) -> Result<GeometryAtPoint> {
    SpaceForm::new(m, c)?.geometry()
}
