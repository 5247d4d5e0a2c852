//! Coordinate charts and the metric jets they produce.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet, JetSpace, JetTensor, MAX_ORDER};
use crate::tensor::check_metric;

/// A metric `g_ij` given as jets about a chart point.
#[derive(Clone, Debug)]
pub struct MetricJet {
    point: Vec<f64>,
    g: JetTensor,
}

impl MetricJet {
    /// Validates symmetry of every coefficient and positive-definiteness of
    /// the value part.
    pub fn new(point: Vec<f64>, g: JetTensor) -> Result<Self> {
        let n = g.dim();
        if g.valence() != (0, 2) {
            return Err(Error::arg("metric jet must have valence (0,2)"));
        }
        if point.len() != n {
            return Err(Error::arg(format!("point has {} coordinates, metric has dimension {n}", point.len())));
        }
        if point.iter().any(|x| !x.is_finite()) {
            return Err(Error::arg("point has non-finite coordinates"));
        }
        let scale = 1.0 + g.max_norm();
        for i in 0..n {
            for j in i + 1..n {
                let a = g.comp(i * n + j);
                let b = g.comp(j * n + i);
                if a.iter().zip(b).any(|(x, y)| (x - y).abs() > 1e-14 * scale) {
                    return Err(Error::Numeric(format!("metric jet not symmetric in ({i},{j})")));
                }
            }
        }
        check_metric(&g.value(), 0, 2, "metric")?;
        Ok(MetricJet { point, g })
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn components(&self) -> &JetTensor {
        &self.g
    }
}

/// A coordinate patch carrying a Riemannian metric, optionally with a
/// contact structure.
pub trait Chart: Sync {
    fn dim(&self) -> usize;

    fn name(&self) -> String;

    /// Metric jets of the requested order (at most 4) at `point`.
    fn metric_jet(&self, point: &[f64], order: usize) -> Result<MetricJet>;

    /// Jets of the contact form `η` (0,1) and characteristic field `ξ` (1,0),
    /// or `None` for charts without a contact structure.
    fn contact_jets(&self, _point: &[f64], _order: usize) -> Option<(JetTensor, JetTensor)> {
        None
    }
}

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::arg(format!("jet order {order} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

/// Jets of the coordinate functions at `point`.
pub fn coordinate_jets(space: &Arc<JetSpace>, point: &[f64], order: usize) -> Vec<Jet> {
    point.iter().enumerate().map(|(i, &x)| Jet::variable(space, order, i, x)).collect()
}

/// Euclidean space in Cartesian coordinates.
#[derive(Clone, Copy, Debug)]
pub struct FlatChart {
    pub dim: usize,
}

impl Chart for FlatChart {
    fn dim(&self) -> usize {
        self.dim
    }

    fn name(&self) -> String {
        format!("flat(n={})", self.dim)
    }

    fn metric_jet(&self, point: &[f64], order: usize) -> Result<MetricJet> {
        check_order(order)?;
        let space = JetSpace::get(self.dim);
        let n = self.dim;
        let jets: Vec<Jet> =
            (0..n * n).map(|c| Jet::constant(&space, order, if c / n == c % n { 1.0 } else { 0.0 })).collect();
        MetricJet::new(point.to_vec(), JetTensor::from_jets(&space, 0, 2, &jets)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Skewed;

    impl Chart for Skewed {
        fn dim(&self) -> usize {
            2
        }
        fn name(&self) -> String {
            "skewed".into()
        }
        fn metric_jet(&self, point: &[f64], order: usize) -> Result<MetricJet> {
            let s = JetSpace::get(2);
            let x = coordinate_jets(&s, point, order);
            let one = Jet::constant(&s, order, 1.0);
            let jets = vec![one.clone(), x[0].clone(), Jet::constant(&s, order, 0.0), one];
            MetricJet::new(point.to_vec(), JetTensor::from_jets(&s, 0, 2, &jets)?)
        }
    }

    #[test]
    fn flat_chart_is_identity() {
        let mj = FlatChart { dim: 3 }.metric_jet(&[0.1, 0.2, 0.3], 4).unwrap();
        assert_eq!(mj.order(), 4);
        assert_eq!(mj.components().value().get(&[1, 1]), 1.0);
        assert_eq!(mj.components().value().get(&[0, 1]), 0.0);
    }

    #[test]
    fn asymmetric_metric_rejected() {
        assert!(matches!(Skewed.metric_jet(&[0.5, 0.0], 2), Err(Error::Numeric(_))));
    }

    #[test]
    fn order_above_four_rejected() {
        assert!(FlatChart { dim: 2 }.metric_jet(&[0.0, 0.0], 5).is_err());
    }
}
