//! Sasakian space forms `M(c)` in an adapted orthonormal frame.

use crate::error::{Error, Result};
use crate::manifolds::geometry::{Backend, GeometryAtPoint};
use crate::tensor::{Tensor, Vector};

/// Frame `f_0 = ξ`, `φf_i = f_(m+i)`, `φf_(m+i) = -f_i`, `g = I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceForm {
    pub m: usize,
    pub c: f64,
}

impl SpaceForm {
    pub fn new(m: usize, c: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::arg("space form needs m >= 1"));
        }
        if !c.is_finite() {
            return Err(Error::arg("φ-sectional curvature must be finite"));
        }
        Ok(SpaceForm { m, c })
    }

    pub fn dim(&self) -> usize {
        2 * self.m + 1
    }

    /// The frame matrix of `φ`.
    pub fn phi(&self) -> Tensor {
        let m = self.m;
        Tensor::from_fn(self.dim(), 1, 1, |i| {
            let (row, col) = (i[0], i[1]);
            if (1..=m).contains(&col) && row == col + m {
                1.0
            } else if col > m && row + m == col {
                -1.0
            } else {
                0.0
            }
        })
    }

    /// The closed-form curvature `R(X,Y)Z`.
    pub fn curvature(&self, phi: &Tensor, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let g = |a: &Vector, b: &Vector| a.dot(b);
        let eta = |a: &Vector| a[0];
        let mut xi = Vector::zeros(self.dim());
        xi[0] = 1.0;
        let ph = |a: &Vector| phi.eval_vector(&[a]);
        let (px, py, pz) = (ph(x), ph(y), ph(z));
        let a = (self.c + 3.0) / 4.0;
        let b = (self.c - 1.0) / 4.0;
        let constant = y * (-g(x, z)) + x * g(y, z);
        let rest = y * (eta(x) * eta(z)) - x * (eta(y) * eta(z)) + &xi * (g(x, z) * eta(y) - g(y, z) * eta(x))
            + &px * g(&py, z)
            - &py * g(&px, z)
            - &pz * (2.0 * g(&px, y));
        constant * a + rest * b
    }

    pub fn geometry(&self) -> Result<GeometryAtPoint> {
        let n = self.dim();
        let phi = self.phi();
        let basis: Vec<Vector> = (0..n)
            .map(|i| {
                let mut v = Vector::zeros(n);
                v[i] = 1.0;
                v
            })
            .collect();
        let mut riemann = Tensor::zeros(n, 1, 3);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let v = self.curvature(&phi, &basis[x], &basis[y], &basis[z]);
                    for a in 0..n {
                        riemann.set(&[a, x, y, z], v[a]);
                    }
                }
            }
        }
        let mut e0 = vec![0.0; n];
        e0[0] = 1.0;
        // Fundamental 2-form Φ(X,Y) = g(X,φY) stands in for dη.
        let d_eta = Tensor::from_fn(n, 0, 2, |i| phi.get(&[i[0], i[1]]));
        GeometryAtPoint::assemble(
            Backend::Algebraic,
            None,
            unit_metric(n, 0, 2),
            unit_metric(n, 2, 0),
            phi,
            Tensor::vector(&e0),
            Tensor::covector(&e0),
            d_eta,
            riemann,
        )
    }
}

fn unit_metric(n: usize, contra: usize, co: usize) -> Tensor {
    Tensor::from_fn(n, contra, co, |i| if i[0] == i[1] { 1.0 } else { 0.0 })
}
