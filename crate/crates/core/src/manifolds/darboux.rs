//! The standard contact structure on R^(2m+1) in Darboux coordinates
//! `(x^1..x^m, y^1..y^m, z)`.

use crate::chart::{check_order, coordinate_jets, Chart, MetricJet};
use crate::error::{Error, Result};
use crate::jet::{Jet, JetSpace, JetTensor};

/// `η = ½(dz - Σ y^i dx^i)`, `ξ = 2∂_z`, `g = η⊗η + ¼Σ((dx^i)² + (dy^i)²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DarbouxChart {
    m: usize,
}

impl DarbouxChart {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::arg("Darboux model needs m >= 1"));
        }
        Ok(DarbouxChart { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn eta_jets(&self, point: &[f64], order: usize) -> Result<Vec<Jet>> {
        let n = self.dim();
        if point.len() != n {
            return Err(Error::arg(format!("Darboux point needs {n} coordinates")));
        }
        let space = JetSpace::get(n);
        let x = coordinate_jets(&space, point, order);
        let mut eta = vec![Jet::constant(&space, order, 0.0); n];
        for i in 0..self.m {
            eta[i] = x[self.m + i].scale(-0.5);
        }
        eta[n - 1] = Jet::constant(&space, order, 0.5);
        Ok(eta)
    }
}

impl Chart for DarbouxChart {
    fn dim(&self) -> usize {
        2 * self.m + 1
    }

    fn name(&self) -> String {
        format!("darboux(m={})", self.m)
    }

    fn metric_jet(&self, point: &[f64], order: usize) -> Result<MetricJet> {
        check_order(order)?;
        let n = self.dim();
        let space = JetSpace::get(n);
        let eta = self.eta_jets(point, order)?;
        let mut g = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut c = &eta[a] * &eta[b];
                if a == b && a < 2 * self.m {
                    c = &c + &Jet::constant(&space, order, 0.25);
                }
                g.push(c);
            }
        }
        MetricJet::new(point.to_vec(), JetTensor::from_jets(&space, 0, 2, &g)?)
    }

    fn contact_jets(&self, point: &[f64], order: usize) -> Option<(JetTensor, JetTensor)> {
        let n = self.dim();
        let space = JetSpace::get(n);
        let eta = self.eta_jets(point, order).ok()?;
        let xi: Vec<Jet> =
            (0..n).map(|a| Jet::constant(&space, order, if a == n - 1 { 2.0 } else { 0.0 })).collect();
        Some((JetTensor::from_jets(&space, 0, 1, &eta).ok()?, JetTensor::from_jets(&space, 1, 0, &xi).ok()?))
    }
}
