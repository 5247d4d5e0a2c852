//! Levi-Civita connection, Riemann tensor and covariant derivatives from
//! metric jets.
//!
//! Index layout: `Γ[k][i][j] = Γ^k_ij`, `R[a][x][y][z] = (R(e_x,e_y)e_z)^a`
//! with `R(X,Y) = [∇_X, ∇_Y] - ∇_[X,Y]`. A covariant derivative inserts the
//! derivative slot first among the covariant slots, so `∇R[a][w][x][y][z] =
//! ((∇_w R)(e_x,e_y)e_z)^a`.

use nalgebra::DMatrix;

use crate::chart::{Chart, MetricJet};
use crate::error::{Error, Result};
use crate::jet::JetTensor;
use crate::tensor::{decode, encode, Permutation, Tensor};

/// Christoffel symbols together with the inverse metric they were built from.
#[derive(Clone, Debug)]
pub struct Connection {
    /// `Γ^k_ij` as jets of order `metric order - 1`.
    pub gamma: JetTensor,
    /// `g^ij` as jets of order `metric order - 1`.
    pub metric_inv: JetTensor,
}

/// Inverse-metric jets by truncated Neumann series around the value inverse.
pub fn inverse_metric(mj: &MetricJet, order: usize) -> Result<JetTensor> {
    let g = mj.components();
    let space = g.space().clone();
    let n = g.dim();
    let order = order.min(g.order());
    let len = space.len(order);
    let g0 = g.value().to_matrix()?;
    let g0_inv = g0
        .clone()
        .cholesky()
        .map(|c| c.inverse())
        .ok_or_else(|| Error::Numeric("metric value is not positive-definite".into()))?;

    // A = G0^-1 (G - G0): jets without constant part.
    let mut a = JetTensor::zeros(&space, 1, 1, order);
    for i in 0..n {
        for j in 0..n {
            let dst = a.comp_mut(i * n + j);
            for k in 0..n {
                let s = g0_inv[(i, k)];
                if s == 0.0 {
                    continue;
                }
                let src = g.comp(k * n + j);
                for (d, v) in dst.iter_mut().zip(&src[..len]).skip(1) {
                    *d += s * v;
                }
            }
        }
    }

    // G^-1 = G0^-1 - A G^-1, iterated `order` times from G0^-1.
    let constant = |m: &DMatrix<f64>| {
        let mut t = JetTensor::zeros(&space, 2, 0, order);
        for i in 0..n {
            for j in 0..n {
                t.comp_mut(i * n + j)[0] = m[(i, j)];
            }
        }
        t
    };
    let mut inv = constant(&g0_inv);
    for _ in 0..order {
        let mut next = constant(&g0_inv);
        for i in 0..n {
            for j in 0..n {
                let mut acc = next.comp(i * n + j).to_vec();
                for k in 0..n {
                    space.mul_acc(a.comp(i * n + k), inv.comp(k * n + j), &mut acc, order, -1.0);
                }
                next.comp_mut(i * n + j).copy_from_slice(&acc);
            }
        }
        inv = next;
    }
    Ok(inv)
}

/// `Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il - ∂_l g_ij)`.
pub fn christoffel(mj: &MetricJet) -> Result<Connection> {
    let g = mj.components();
    if g.order() == 0 {
        return Err(Error::arg("christoffel symbols need metric jets of order >= 1"));
    }
    let space = g.space().clone();
    let n = g.dim();
    let order = g.order() - 1;
    let metric_inv = inverse_metric(mj, order)?;

    let mut lowered = JetTensor::zeros(&space, 0, 3, order);
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = vec![0.0; space.len(order)];
                space.deriv_acc(i, g.comp(j * n + l), &mut acc, order, 0.5);
                space.deriv_acc(j, g.comp(i * n + l), &mut acc, order, 0.5);
                space.deriv_acc(l, g.comp(i * n + j), &mut acc, order, -0.5);
                lowered.comp_mut((l * n + i) * n + j).copy_from_slice(&acc);
                lowered.comp_mut((l * n + j) * n + i).copy_from_slice(&acc);
            }
        }
    }

    let mut gamma = JetTensor::zeros(&space, 1, 2, order);
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = vec![0.0; space.len(order)];
                for l in 0..n {
                    space.mul_acc(metric_inv.comp(k * n + l), lowered.comp((l * n + i) * n + j), &mut acc, order, 1.0);
                }
                gamma.comp_mut((k * n + i) * n + j).copy_from_slice(&acc);
                gamma.comp_mut((k * n + j) * n + i).copy_from_slice(&acc);
            }
        }
    }
    Ok(Connection { gamma, metric_inv })
}

/// `R^a_xyz = ∂_x Γ^a_yz - ∂_y Γ^a_xz + Γ^a_xe Γ^e_yz - Γ^a_ye Γ^e_xz`.
pub fn riemann(gamma: &JetTensor) -> Result<JetTensor> {
    if gamma.valence() != (1, 2) || gamma.order() == 0 {
        return Err(Error::arg("riemann needs Christoffel jets of valence (1,2) and order >= 1"));
    }
    let space = gamma.space().clone();
    let n = gamma.dim();
    let order = gamma.order() - 1;
    let gi = |k: usize, i: usize, j: usize| (k * n + i) * n + j;
    let mut r = JetTensor::zeros(&space, 1, 3, order);
    let mut acc = vec![0.0; space.len(order)];
    for a in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                for z in 0..n {
                    acc.iter_mut().for_each(|v| *v = 0.0);
                    space.deriv_acc(x, gamma.comp(gi(a, y, z)), &mut acc, order, 1.0);
                    space.deriv_acc(y, gamma.comp(gi(a, x, z)), &mut acc, order, -1.0);
                    for e in 0..n {
                        space.mul_acc(gamma.comp(gi(a, x, e)), gamma.comp(gi(e, y, z)), &mut acc, order, 1.0);
                        space.mul_acc(gamma.comp(gi(a, y, e)), gamma.comp(gi(e, x, z)), &mut acc, order, -1.0);
                    }
                    let xy = ((a * n + x) * n + y) * n + z;
                    let yx = ((a * n + y) * n + x) * n + z;
                    r.comp_mut(xy).copy_from_slice(&acc);
                    for (d, s) in r.comp_mut(yx).iter_mut().zip(&acc) {
                        *d = -s;
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Covariant derivative of a (p,q) jet tensor: a (p,q+1) jet tensor one order
/// lower, with the derivative slot placed first among the covariant slots.
pub fn covariant_derivative(t: &JetTensor, gamma: &JetTensor) -> Result<JetTensor> {
    if t.order() == 0 {
        return Err(Error::arg("covariant derivative needs jets of order >= 1"));
    }
    if gamma.valence() != (1, 2) || gamma.order() + 1 < t.order() || gamma.dim() != t.dim() {
        return Err(Error::arg("Christoffel jets have the wrong shape or too low an order"));
    }
    let space = t.space().clone();
    let n = t.dim();
    let (p, q) = t.valence();
    let rank = p + q;
    let order = t.order() - 1;
    let strides: Vec<usize> = (0..rank).map(|s| n.pow((rank - 1 - s) as u32)).collect();

    let mut out = JetTensor::zeros(&space, p, q + 1, order);
    let mut oidx = vec![0; rank + 1];
    let mut tidx = vec![0; rank];
    let mut acc = vec![0.0; space.len(order)];
    for c in 0..out.ncomp() {
        decode(c, n, &mut oidx);
        let w = oidx[p];
        tidx[..p].copy_from_slice(&oidx[..p]);
        tidx[p..].copy_from_slice(&oidx[p + 1..]);
        let flat = encode(&tidx, n);
        acc.iter_mut().for_each(|v| *v = 0.0);
        space.deriv_acc(w, t.comp(flat), &mut acc, order, 1.0);
        for s in 0..rank {
            let cur = tidx[s];
            let base = flat - cur * strides[s];
            for e in 0..n {
                let other = t.comp(base + e * strides[s]);
                if s < p {
                    space.mul_acc(gamma.comp((cur * n + w) * n + e), other, &mut acc, order, 1.0);
                } else {
                    space.mul_acc(gamma.comp((e * n + w) * n + cur), other, &mut acc, order, -1.0);
                }
            }
        }
        out.comp_mut(c).copy_from_slice(&acc);
    }
    Ok(out)
}

/// `∇²_{u,v}R - ∇²_{v,u}R` from the (1,5) second derivative `[a][u][v][x][y][z]`.
pub fn second_commutator(nabla2_r: &Tensor) -> Result<Tensor> {
    if nabla2_r.valence() != (1, 5) {
        return Err(Error::arg("second commutator needs a (1,5) tensor"));
    }
    let swapped = nabla2_r.permute(&Permutation::transposition(6, 1, 2)?)?;
    Ok(nabla2_r - &swapped)
}

/// How many covariant derivatives of `R` to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Depth {
    Riemann,
    First,
    Second,
}

impl Depth {
    pub fn metric_order(self) -> usize {
        match self {
            Depth::Riemann => 2,
            Depth::First => 3,
            Depth::Second => 4,
        }
    }
}

/// Curvature data at a single chart point.
#[derive(Clone, Debug)]
pub struct ChartCurvature {
    pub point: Vec<f64>,
    pub metric: Tensor,
    pub metric_inv: Tensor,
    pub christoffel: Tensor,
    pub riemann: Tensor,
    pub nabla_metric: Tensor,
    pub nabla_riemann: Option<Tensor>,
    pub nabla2_riemann: Option<Tensor>,
    pub commutator: Option<Tensor>,
    pub(crate) connection: Connection,
}

pub fn chart_curvature(chart: &dyn Chart, point: &[f64], depth: Depth) -> Result<ChartCurvature> {
    let mj = chart.metric_jet(point, depth.metric_order())?;
    let connection = christoffel(&mj)?;
    let r = riemann(&connection.gamma)?;
    let nabla_metric = covariant_derivative(&mj.components().truncate(1), &connection.gamma)?.value();
    let nabla_r = if depth >= Depth::First { Some(covariant_derivative(&r, &connection.gamma)?) } else { None };
    let nabla2_r = match (&nabla_r, depth) {
        (Some(nr), Depth::Second) => Some(covariant_derivative(nr, &connection.gamma)?.value()),
        _ => None,
    };
    let commutator = nabla2_r.as_ref().map(second_commutator).transpose()?;
    Ok(ChartCurvature {
        point: point.to_vec(),
        metric: mj.components().value(),
        metric_inv: connection.metric_inv.value(),
        christoffel: connection.gamma.value(),
        riemann: r.value(),
        nabla_metric,
        nabla_riemann: nabla_r.map(|t| t.value()),
        nabla2_riemann: nabla2_r,
        commutator,
        connection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{coordinate_jets, FlatChart};
    use crate::jet::{Jet, JetSpace};

    /// Round 2-sphere in stereographic coordinates: `g = 4/(1+|x|²)² δ`.
    struct Sphere2;

    impl Chart for Sphere2 {
        fn dim(&self) -> usize {
            2
        }
        fn name(&self) -> String {
            "sphere".into()
        }
        fn metric_jet(&self, point: &[f64], order: usize) -> Result<MetricJet> {
            let s = JetSpace::get(2);
            let x = coordinate_jets(&s, point, order);
            let one = Jet::constant(&s, order, 1.0);
            let q = &(&one + &(&x[0] * &x[0])) + &(&x[1] * &x[1]);
            let f = (&q * &q).recip()?.scale(4.0);
            let zero = Jet::constant(&s, order, 0.0);
            MetricJet::new(point.to_vec(), JetTensor::from_jets(&s, 0, 2, &[f.clone(), zero.clone(), zero, f])?)
        }
    }

    #[test]
    fn flat_has_no_curvature() {
        let c = chart_curvature(&FlatChart { dim: 3 }, &[0.3, -0.2, 0.9], Depth::Second).unwrap();
        assert_eq!(c.christoffel.max_norm(), 0.0);
        assert_eq!(c.riemann.max_norm(), 0.0);
        assert_eq!(c.nabla_riemann.unwrap().max_norm(), 0.0);
        assert_eq!(c.commutator.unwrap().max_norm(), 0.0);
    }

    #[test]
    fn unit_sphere_curvature_sign() {
        // Constant curvature 1: R(X,Y)Z = g(Y,Z)X - g(X,Z)Y.
        let p = [0.4, -0.7];
        let c = chart_curvature(&Sphere2, &p, Depth::Second).unwrap();
        let g = &c.metric;
        let expect = Tensor::from_fn(2, 1, 3, |i| {
            let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
            g.get(&[i[2], i[3]]) * d(i[0], i[1]) - g.get(&[i[1], i[3]]) * d(i[0], i[2])
        });
        assert!(c.riemann.max_diff(&expect).unwrap() < 1e-12);
        assert!(c.nabla_riemann.unwrap().max_norm() < 1e-11);
        assert!(c.nabla_metric.max_norm() < 1e-12);
    }

    #[test]
    fn inverse_metric_jets_invert() {
        let mj = Sphere2.metric_jet(&[0.2, 0.5], 4).unwrap();
        let inv = inverse_metric(&mj, 4).unwrap();
        let s = mj.components().space().clone();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = vec![0.0; s.len(4)];
                for k in 0..2 {
                    s.mul_acc(mj.components().comp(i * 2 + k), inv.comp(k * 2 + j), &mut acc, 4, 1.0);
                }
                let id = if i == j { 1.0 } else { 0.0 };
                assert!((acc[0] - id).abs() < 1e-13);
                assert!(acc[1..].iter().all(|v| v.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn riemann_needs_first_order() {
        let mj = FlatChart { dim: 2 }.metric_jet(&[0.0, 0.0], 1).unwrap();
        let conn = christoffel(&mj).unwrap();
        assert!(riemann(&conn.gamma).is_err());
    }
}
