//! Reproducible sampling of chart points and tangent vectors.
//!
//! Every sample index owns its own ChaCha stream, so results do not depend on
//! the order in which samples are evaluated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::manifolds::geometry::GeometryAtPoint;
use crate::tensor::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InputClass {
    #[serde(rename = "horizontal")]
    Horizontal,
    #[serde(rename = "arbitrary")]
    Arbitrary,
    /// Horizontal vectors with one of them replaced by `ξ`.
    #[serde(rename = "mixed-with-xi")]
    MixedWithXi,
}

impl InputClass {
    pub fn label(self) -> &'static str {
        match self {
            InputClass::Horizontal => "horizontal",
            InputClass::Arbitrary => "arbitrary",
            InputClass::MixedWithXi => "mixed-with-xi",
        }
    }
}

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// FNV-1a, used to give every check its own vector seed.
pub fn hash_id(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Point `index` of a run, uniform in `[-1,1]^n`.
pub fn sample_point(seed: u64, index: u64, n: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, index);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// `v - η(v)ξ`, re-projected once if rounding leaves an η-component.
pub fn horizontal_project(geom: &GeometryAtPoint, v: &Vector) -> Vector {
    let mut h = geom.horizontal_project(v);
    if geom.eta_of(&h).abs() > 1e-14 * (1.0 + h.amax()) {
        h = geom.horizontal_project(&h);
    }
    h
}

pub fn sample_vectors<R: Rng>(geom: &GeometryAtPoint, class: InputClass, count: usize, rng: &mut R) -> Vec<Vector> {
    let n = geom.n;
    let mut out: Vec<Vector> = (0..count)
        .map(|_| {
            let v = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0));
            match class {
                InputClass::Arbitrary => v,
                InputClass::Horizontal | InputClass::MixedWithXi => horizontal_project(geom, &v),
            }
        })
        .collect();
    if class == InputClass::MixedWithXi && count > 0 {
        let slot = rng.gen_range(0..count);
        out[slot] = geom.xi_vec();
    }
    out
}
