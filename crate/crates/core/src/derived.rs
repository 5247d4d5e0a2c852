//! Curvature tensors built algebraically from `R`, `S`, `Q`, `r` and `g`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifolds::GeometryAtPoint;
use crate::tensor::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BKind {
    Concircular,
    Conformal,
    Conharmonic,
    QuasiConformal,
    Custom,
}

impl BKind {
    pub fn label(self) -> &'static str {
        match self {
            BKind::Concircular => "concircular",
            BKind::Conformal => "conformal",
            BKind::Conharmonic => "conharmonic",
            BKind::QuasiConformal => "quasi",
            BKind::Custom => "custom",
        }
    }
}

/// `B = b0 R + b1 {S(Y,Z)X - S(X,Z)Y + g(Y,Z)QX - g(X,Z)QY} + b2 r {g(Y,Z)X - g(X,Z)Y}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub kind: BKind,
}

fn dims(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::arg("B-tensor presets need n >= 3"));
    }
    Ok(n as f64)
}

impl BCoefficients {
    pub fn concircular(n: usize) -> Result<Self> {
        let n = dims(n)?;
        Ok(BCoefficients { b0: 1.0, b1: 0.0, b2: -1.0 / (n * (n - 1.0)), kind: BKind::Concircular })
    }

    pub fn conformal(n: usize) -> Result<Self> {
        let n = dims(n)?;
        Ok(BCoefficients { b0: 1.0, b1: -1.0 / (n - 2.0), b2: 1.0 / ((n - 1.0) * (n - 2.0)), kind: BKind::Conformal })
    }

    pub fn conharmonic(n: usize) -> Result<Self> {
        let n = dims(n)?;
        Ok(BCoefficients { b0: 1.0, b1: -1.0 / (n - 2.0), b2: 0.0, kind: BKind::Conharmonic })
    }

    /// `b2 = -(1/n)(b0/(n-1) + 2 b1)`.
    pub fn quasi_conformal(n: usize, b0: f64, b1: f64) -> Result<Self> {
        let nf = dims(n)?;
        Ok(BCoefficients { b0, b1, b2: -(b0 / (nf - 1.0) + 2.0 * b1) / nf, kind: BKind::QuasiConformal })
    }

    pub fn custom(b0: f64, b1: f64, b2: f64) -> Self {
        BCoefficients { b0, b1, b2, kind: BKind::Custom }
    }

    /// `b0 + (n-2) b1`.
    pub fn discriminant(&self, n: usize) -> f64 {
        self.b0 + (n as f64 - 2.0) * self.b1
    }

    /// `b0 + (n-2) b1 = 0`, up to rounding in the coefficients.
    pub fn degenerate(&self, n: usize) -> bool {
        let scale = self.b0.abs() + (n as f64 - 2.0) * self.b1.abs();
        self.discriminant(n).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
    }
}

impl fmt::Display for BCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(b0={}, b1={}, b2={})", self.kind.label(), self.b0, self.b1, self.b2)
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `A(Y,Z)X - A(X,Z)Y` for a (0,2) tensor `A`.
fn wedge_id(a: &Tensor) -> Tensor {
    Tensor::from_fn(a.dim(), 1, 3, |i| a.get(&[i[2], i[3]]) * delta(i[0], i[1]) - a.get(&[i[1], i[3]]) * delta(i[0], i[2]))
}

/// `g(Y,Z)LX - g(X,Z)LY` for a (1,1) tensor `L`.
fn wedge_op(g: &Tensor, l: &Tensor) -> Tensor {
    Tensor::from_fn(g.dim(), 1, 3, |i| g.get(&[i[2], i[3]]) * l.get(&[i[0], i[1]]) - g.get(&[i[1], i[3]]) * l.get(&[i[0], i[2]]))
}

/// `(S, Q, r)`.
pub fn ricci_data(geom: &GeometryAtPoint) -> (Tensor, Tensor, f64) {
    (geom.ricci.clone(), geom.ricci_op.clone(), geom.scalar)
}

/// `P(X,Y)Z = R(X,Y)Z - 1/(n-1) [S(Y,Z)X - S(X,Z)Y]`.
pub fn projective(geom: &GeometryAtPoint) -> Tensor {
    let n = geom.n as f64;
    &geom.riemann - &(&wedge_id(&geom.ricci) * (1.0 / (n - 1.0)))
}

/// The Weyl conformal tensor; not applicable for `n <= 3`.
pub fn conformal(geom: &GeometryAtPoint) -> Result<Tensor> {
    if geom.n <= 3 {
        return Err(Error::NotApplicable(format!("conformal tensor needs n > 3, got n = {}", geom.n)));
    }
    let n = geom.n as f64;
    let ricci_part = &wedge_id(&geom.ricci) + &wedge_op(&geom.g, &geom.ricci_op);
    let scalar_part = wedge_id(&geom.g);
    Ok(&(&geom.riemann - &(&ricci_part * (1.0 / (n - 2.0)))) + &(&scalar_part * (geom.scalar / ((n - 1.0) * (n - 2.0)))))
}

pub fn b_tensor(geom: &GeometryAtPoint, b: &BCoefficients) -> Tensor {
    let ricci_part = &wedge_id(&geom.ricci) + &wedge_op(&geom.g, &geom.ricci_op);
    let scalar_part = wedge_id(&geom.g);
    &(&(&geom.riemann * b.b0) + &(&ricci_part * b.b1)) + &(&scalar_part * (b.b2 * geom.scalar))
}

/// `𝓗(X,Y)Z = R(X,Y)Z - g(Y,Z)X + g(X,Z)Y` and `H(X,Y,Z,U) = g(𝓗(X,Y)Z, U)`.
pub fn h_tensor(geom: &GeometryAtPoint) -> Result<(Tensor, Tensor)> {
    let h = &geom.riemann - &wedge_id(&geom.g);
    let flat = h.lower_index(0, &geom.g)?;
    Ok((h, flat))
}

/// `E(X,Y) = S(X,Y) - (n-1) g(X,Y)` and the operator `𝓔` with `g(𝓔X,Y) = E(X,Y)`.
pub fn e_tensor(geom: &GeometryAtPoint) -> Result<(Tensor, Tensor)> {
    let e = &geom.ricci - &(&geom.g * (geom.n as f64 - 1.0));
    let op = e.raise_index(0, &geom.g_inv)?;
    Ok((e, op))
}
