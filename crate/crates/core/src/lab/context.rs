//! Per-point data shared by all checks, and the vector helpers evaluators use.

use crate::derived::{b_tensor, conformal, e_tensor, h_tensor, projective, BCoefficients, BKind};
use crate::error::{Error, Result};
use crate::lab::derivation::{curvature_endo, derive_with};
use crate::manifolds::GeometryAtPoint;
use crate::tensor::{Tensor, Vector};

/// The B-tensor coefficient sets exercised by a run.
#[derive(Clone, Debug, PartialEq)]
pub struct BPresets {
    pub sets: Vec<BCoefficients>,
}

impl BPresets {
    /// The four named presets plus the quasi-conformal and custom choices.
    pub fn new(n: usize, quasi: (f64, f64), custom: (f64, f64, f64)) -> Result<Self> {
        Ok(BPresets {
            sets: vec![
                BCoefficients::concircular(n)?,
                BCoefficients::conformal(n)?,
                BCoefficients::conharmonic(n)?,
                BCoefficients::quasi_conformal(n, quasi.0, quasi.1)?,
                BCoefficients::custom(custom.0, custom.1, custom.2),
            ],
        })
    }

    /// Quasi-conformal default `(1, -1/(n-2))`, custom default `(1, 1, 1)`.
    pub fn defaults(n: usize) -> Result<Self> {
        Self::new(n, (1.0, -1.0 / (n as f64 - 2.0)), (1.0, 1.0, 1.0))
    }

    pub fn get(&self, kind: BKind) -> Option<&BCoefficients> {
        self.sets.iter().find(|b| b.kind == kind)
    }
}

/// Geometry plus every derived tensor at one sample point.
#[derive(Clone, Debug)]
pub struct PointData {
    pub geom: GeometryAtPoint,
    pub projective: Tensor,
    pub conformal: Option<Tensor>,
    pub h: Tensor,
    pub h_flat: Tensor,
    pub e: Tensor,
    pub e_op: Tensor,
    pub b: Vec<(BCoefficients, Tensor)>,
}

impl PointData {
    pub fn new(geom: GeometryAtPoint, presets: &BPresets) -> Result<Self> {
        let (h, h_flat) = h_tensor(&geom)?;
        let (e, e_op) = e_tensor(&geom)?;
        let conformal = match conformal(&geom) {
            Ok(c) => Some(c),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        let b = presets.sets.iter().map(|c| (*c, b_tensor(&geom, c))).collect();
        Ok(PointData { projective: projective(&geom), conformal, h, h_flat, e, e_op, b, geom })
    }
}

/// The six sampled vectors, named after the letters of the identities.
pub struct Args {
    pub u: Vector,
    pub v: Vector,
    pub x: Vector,
    pub y: Vector,
    pub z: Vector,
    pub w: Vector,
}

impl Args {
    pub fn from_vec(mut vs: Vec<Vector>) -> Self {
        assert_eq!(vs.len(), 6);
        let w = vs.pop().unwrap();
        let z = vs.pop().unwrap();
        let y = vs.pop().unwrap();
        let x = vs.pop().unwrap();
        let v = vs.pop().unwrap();
        let u = vs.pop().unwrap();
        Args { u, v, x, y, z, w }
    }
}

pub struct Ctx<'a> {
    pub pd: &'a PointData,
    pub b: Option<&'a (BCoefficients, Tensor)>,
}

impl<'a> Ctx<'a> {
    pub fn geom(&self) -> &'a GeometryAtPoint {
        &self.pd.geom
    }

    pub fn n(&self) -> f64 {
        self.pd.geom.n as f64
    }

    pub fn coeffs(&self) -> Result<&'a (BCoefficients, Tensor)> {
        self.b.ok_or_else(|| Error::arg("check needs a B-tensor coefficient set"))
    }

    pub fn conformal(&self) -> Result<&'a Tensor> {
        self.pd
            .conformal
            .as_ref()
            .ok_or_else(|| Error::NotApplicable(format!("conformal tensor needs n > 3, got n = {}", self.pd.geom.n)))
    }

    pub fn require_dim(&self, min: usize) -> Result<()> {
        if self.pd.geom.n < min {
            return Err(Error::NotApplicable(format!("needs n >= {min}")));
        }
        Ok(())
    }

    pub fn g(&self, a: &Vector, b: &Vector) -> f64 {
        self.pd.geom.gp(a, b)
    }

    pub fn eta(&self, a: &Vector) -> f64 {
        self.pd.geom.eta_of(a)
    }

    pub fn phi(&self, a: &Vector) -> Vector {
        self.pd.geom.phi_of(a)
    }

    pub fn phi2(&self, a: &Vector) -> Vector {
        self.phi(&self.phi(a))
    }

    pub fn xi(&self) -> Vector {
        self.pd.geom.xi_vec()
    }

    pub fn r(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.pd.geom.r(x, y, z)
    }

    pub fn rf(&self, x: &Vector, y: &Vector, z: &Vector, w: &Vector) -> f64 {
        self.pd.geom.r_flat(x, y, z, w)
    }

    /// `(∇_W R)(X,Y)Z`.
    pub fn nr(&self, w: &Vector, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        self.pd.geom.nabla_r(w, x, y, z)
    }

    /// `(∇_W R)(X,Y,Z,T)`.
    pub fn nrf(&self, w: &Vector, x: &Vector, y: &Vector, z: &Vector, t: &Vector) -> Result<f64> {
        self.pd.geom.nabla_r_flat(w, x, y, z, t)
    }

    /// `(∇_U R)(X,Y,Z,φV) - (∇_V R)(X,Y,Z,φU)`.
    pub fn nabla_pair(&self, a: &Args) -> Result<(f64, f64)> {
        Ok((
            self.nrf(&a.u, &a.x, &a.y, &a.z, &self.phi(&a.v))?,
            self.nrf(&a.v, &a.x, &a.y, &a.z, &self.phi(&a.u))?,
        ))
    }

    /// `(R(U,V)·T)` evaluated on `args`, for a tensor with one contravariant slot.
    pub fn derive_eval(&self, u: &Vector, v: &Vector, t: &Tensor, args: &[&Vector]) -> Result<Vector> {
        let l = curvature_endo(&self.pd.geom, u, v);
        Ok(derive_with(&l, t)?.eval_vector(args))
    }

    /// `(R(U,V)·R)(X,Y)Z` through the generic derivation, with the size of the
    /// largest Leibniz term as a scale hint.
    pub fn rr(&self, u: &Vector, v: &Vector, x: &Vector, y: &Vector, z: &Vector) -> Result<(Vector, f64)> {
        let val = self.derive_eval(u, v, &self.pd.geom.riemann, &[x, y, z])?;
        let (_, hint) = self.rr_explicit(u, v, x, y, z);
        Ok((val, hint))
    }

    /// `R(U,V)R(X,Y)Z - R(R(U,V)X,Y)Z - R(X,R(U,V)Y)Z - R(X,Y)R(U,V)Z`.
    pub fn rr_explicit(&self, u: &Vector, v: &Vector, x: &Vector, y: &Vector, z: &Vector) -> (Vector, f64) {
        let terms = [
            self.r(u, v, &self.r(x, y, z)),
            self.r(&self.r(u, v, x), y, z),
            self.r(x, &self.r(u, v, y), z),
            self.r(x, y, &self.r(u, v, z)),
        ];
        let hint = terms.iter().fold(0.0f64, |m, t| m.max(t.amax()));
        (&terms[0] - &terms[1] - &terms[2] - &terms[3], hint)
    }

    /// `(R(U,V)·S)(Y,Z)`.
    pub fn rs(&self, u: &Vector, v: &Vector, y: &Vector, z: &Vector) -> Result<f64> {
        let l = curvature_endo(&self.pd.geom, u, v);
        Ok(derive_with(&l, &self.pd.geom.ricci)?.eval_scalar(&[y, z]))
    }

    /// `(R(U,V)·Q)(X)`.
    pub fn rq(&self, u: &Vector, v: &Vector, x: &Vector) -> Result<Vector> {
        self.derive_eval(u, v, &self.pd.geom.ricci_op, &[x])
    }

    /// `(R(U,V)·S)(Y,Z)X - (R(U,V)·S)(X,Z)Y`.
    pub fn s_bracket(&self, a: &Args) -> Result<Vector> {
        Ok(&a.x * self.rs(&a.u, &a.v, &a.y, &a.z)? - &a.y * self.rs(&a.u, &a.v, &a.x, &a.z)?)
    }

    /// `g(Y,Z)(R(U,V)·Q)(X) - g(X,Z)(R(U,V)·Q)(Y)`.
    pub fn q_bracket(&self, a: &Args) -> Result<Vector> {
        Ok(self.rq(&a.u, &a.v, &a.x)? * self.g(&a.y, &a.z) - self.rq(&a.u, &a.v, &a.y)? * self.g(&a.x, &a.z))
    }

    /// `H(X,Y,Z,U) = g(𝓗(X,Y)Z, U)`.
    pub fn hf(&self, x: &Vector, y: &Vector, z: &Vector, u: &Vector) -> f64 {
        self.pd.h_flat.eval_scalar(&[x, y, z, u])
    }

    /// `𝓗(X,Y)Z`.
    pub fn hop(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.pd.h.eval_vector(&[x, y, z])
    }

    pub fn e(&self, x: &Vector, y: &Vector) -> f64 {
        self.pd.e.eval_scalar(&[x, y])
    }

    pub fn eop(&self, x: &Vector) -> Vector {
        self.pd.e_op.eval_vector(&[x])
    }
}
