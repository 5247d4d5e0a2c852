use serde::{Deserialize, Serialize};

use crate::chart::Chart;
use crate::curvature::{chart_curvature, covariant_derivative, ChartCurvature, Depth};
use crate::error::{Error, Result};
use crate::jet::JetTensor;
use crate::tensor::{Tensor, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Computed from metric jets in a coordinate chart.
    Chart,
    /// Closed-form curvature in an orthonormal frame; no derivatives of `R`.
    Algebraic,
}

/// Convention for the exterior derivative of a 1-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExteriorConvention {
    /// `dα(X,Y) = ½{Xα(Y) - Yα(X) - α([X,Y])}`
    #[default]
    Half,
    /// `dα(X,Y) = Xα(Y) - Yα(X) - α([X,Y])`
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometryOptions {
    pub depth: Depth,
    pub convention: ExteriorConvention,
}

impl Default for GeometryOptions {
    fn default() -> Self {
        GeometryOptions { depth: Depth::Second, convention: ExteriorConvention::Half }
    }
}

/// Everything the identity checks need at one point.
///
/// `phi` is stored as `[c][b] = (φe_b)^c`, `nabla_phi` as `[c][w][b] =
/// ((∇_w φ)e_b)^c`, `nabla_xi` as `[a][w] = (∇_w ξ)^a`, `nabla_eta` as `[w][b]`.
#[derive(Clone, Debug)]
pub struct GeometryAtPoint {
    pub backend: Backend,
    pub n: usize,
    pub point: Option<Vec<f64>>,
    pub g: Tensor,
    pub g_inv: Tensor,
    pub phi: Tensor,
    pub xi: Tensor,
    pub eta: Tensor,
    pub d_eta: Tensor,
    pub christoffel: Option<Tensor>,
    pub riemann: Tensor,
    pub riemann_flat: Tensor,
    pub ricci: Tensor,
    pub ricci_op: Tensor,
    pub scalar: f64,
    pub nabla_riemann: Option<Tensor>,
    pub nabla2_riemann: Option<Tensor>,
    pub commutator: Option<Tensor>,
    pub nabla_metric: Option<Tensor>,
    pub nabla_phi: Option<Tensor>,
    pub nabla_xi: Option<Tensor>,
    pub nabla_eta: Option<Tensor>,
    pub h: Option<Tensor>,
}

/// `(S, Q, r)` by contraction of `R`.
pub fn ricci_from(riemann: &Tensor, g_inv: &Tensor) -> Result<(Tensor, Tensor, f64)> {
    let s = riemann.contract(0, 0)?;
    let q = s.raise_index(0, g_inv)?;
    let r = q.contract(0, 0)?.data()[0];
    Ok((s, q, r))
}

impl GeometryAtPoint {
    /// Assembles the pointwise state and fills in the Ricci data.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        backend: Backend,
        point: Option<Vec<f64>>,
        g: Tensor,
        g_inv: Tensor,
        phi: Tensor,
        xi: Tensor,
        eta: Tensor,
        d_eta: Tensor,
        riemann: Tensor,
    ) -> Result<Self> {
        let riemann_flat = riemann.lower_index(0, &g)?;
        let (ricci, ricci_op, scalar) = ricci_from(&riemann, &g_inv)?;
        Ok(GeometryAtPoint {
            backend,
            n: g.dim(),
            point,
            g,
            g_inv,
            phi,
            xi,
            eta,
            d_eta,
            christoffel: None,
            riemann,
            riemann_flat,
            ricci,
            ricci_op,
            scalar,
            nabla_riemann: None,
            nabla2_riemann: None,
            commutator: None,
            nabla_metric: None,
            nabla_phi: None,
            nabla_xi: None,
            nabla_eta: None,
            h: None,
        })
    }

    pub fn is_chart(&self) -> bool {
        self.backend == Backend::Chart
    }

    fn chart_only<'a>(&self, t: &'a Option<Tensor>, what: &str) -> Result<&'a Tensor> {
        t.as_ref().ok_or_else(|| Error::NotApplicable(format!("{what} is not available on the {:?} backend", self.backend)))
    }

    pub fn nabla_riemann(&self) -> Result<&Tensor> {
        self.chart_only(&self.nabla_riemann, "∇R")
    }

    pub fn nabla2_riemann(&self) -> Result<&Tensor> {
        self.chart_only(&self.nabla2_riemann, "∇²R")
    }

    pub fn commutator(&self) -> Result<&Tensor> {
        self.chart_only(&self.commutator, "second commutator of R")
    }

    pub fn nabla_phi(&self) -> Result<&Tensor> {
        self.chart_only(&self.nabla_phi, "∇φ")
    }

    pub fn xi_vec(&self) -> Vector {
        self.xi.as_vector()
    }

    pub fn gp(&self, u: &Vector, v: &Vector) -> f64 {
        self.g.eval_scalar(&[u, v])
    }

    pub fn eta_of(&self, v: &Vector) -> f64 {
        self.eta.eval_scalar(&[v])
    }

    pub fn phi_of(&self, v: &Vector) -> Vector {
        self.phi.eval_vector(&[v])
    }

    /// `R(X,Y)Z`.
    pub fn r(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        self.riemann.eval_vector(&[x, y, z])
    }

    /// `R(X,Y,Z,W) = g(R(X,Y)Z, W)`.
    pub fn r_flat(&self, x: &Vector, y: &Vector, z: &Vector, w: &Vector) -> f64 {
        self.riemann_flat.eval_scalar(&[x, y, z, w])
    }

    pub fn s(&self, x: &Vector, y: &Vector) -> f64 {
        self.ricci.eval_scalar(&[x, y])
    }

    pub fn q(&self, x: &Vector) -> Vector {
        self.ricci_op.eval_vector(&[x])
    }

    /// `(∇_W R)(X,Y)Z`.
    pub fn nabla_r(&self, w: &Vector, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        Ok(self.nabla_riemann()?.eval_vector(&[w, x, y, z]))
    }

    /// `(∇_W R)(X,Y,Z,T) = g((∇_W R)(X,Y)Z, T)`.
    pub fn nabla_r_flat(&self, w: &Vector, x: &Vector, y: &Vector, z: &Vector, t: &Vector) -> Result<f64> {
        Ok(self.gp(&self.nabla_r(w, x, y, z)?, t))
    }

    /// `(∇²_{U,V} R)(X,Y)Z`.
    pub fn nabla2_r(&self, u: &Vector, v: &Vector, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        Ok(self.nabla2_riemann()?.eval_vector(&[u, v, x, y, z]))
    }

    /// `v - η(v)ξ`.
    pub fn horizontal_project(&self, v: &Vector) -> Vector {
        v - self.xi_vec() * self.eta_of(v)
    }
}

/// `dα_ab` as jets one order lower than `alpha`.
fn exterior_derivative(alpha: &JetTensor, convention: ExteriorConvention) -> Result<JetTensor> {
    if alpha.order() == 0 {
        return Err(Error::arg("exterior derivative needs jets of order >= 1"));
    }
    let space = alpha.space().clone();
    let n = alpha.dim();
    let order = alpha.order() - 1;
    let f = match convention {
        ExteriorConvention::Half => 0.5,
        ExteriorConvention::Unit => 1.0,
    };
    let mut d = JetTensor::zeros(&space, 0, 2, order);
    for a in 0..n {
        for b in 0..n {
            let mut acc = vec![0.0; space.len(order)];
            space.deriv_acc(a, alpha.comp(b), &mut acc, order, f);
            space.deriv_acc(b, alpha.comp(a), &mut acc, order, -f);
            d.comp_mut(a * n + b).copy_from_slice(&acc);
        }
    }
    Ok(d)
}

/// `φ^c_b = g^ca dη_ab`, as jets of the lower of the two orders.
fn phi_jets(g_inv: &JetTensor, d_eta: &JetTensor) -> JetTensor {
    let space = g_inv.space().clone();
    let n = g_inv.dim();
    let order = g_inv.order().min(d_eta.order());
    let mut phi = JetTensor::zeros(&space, 1, 1, order);
    for c in 0..n {
        for b in 0..n {
            let mut acc = vec![0.0; space.len(order)];
            for a in 0..n {
                space.mul_acc(g_inv.comp(c * n + a), d_eta.comp(a * n + b), &mut acc, order, 1.0);
            }
            phi.comp_mut(c * n + b).copy_from_slice(&acc);
        }
    }
    phi
}

/// `h = ½ £_ξ φ` from first coordinate derivatives of `φ` and `ξ`:
/// `(£_ξ φ)^a_b = ξ^c ∂_c φ^a_b - φ^c_b ∂_c ξ^a + φ^a_c ∂_b ξ^c`.
fn lie_h(phi: &JetTensor, xi: &JetTensor) -> Tensor {
    let n = phi.dim();
    let d = |t: &JetTensor, comp: usize, var: usize| t.comp(comp)[1 + var];
    let v = |t: &JetTensor, comp: usize| t.comp(comp)[0];
    Tensor::from_fn(n, 1, 1, |i| {
        let (a, b) = (i[0], i[1]);
        let mut s = 0.0;
        for c in 0..n {
            s += v(xi, c) * d(phi, a * n + b, c);
            s -= v(phi, c * n + b) * d(xi, a, c);
            s += v(phi, a * n + c) * d(xi, c, b);
        }
        0.5 * s
    })
}

struct ContactJets {
    eta: JetTensor,
    xi: JetTensor,
    d_eta: JetTensor,
    phi: JetTensor,
}

fn contact_jets(chart: &dyn Chart, point: &[f64], curv: &ChartCurvature, conv: ExteriorConvention) -> Result<ContactJets> {
    let (eta, xi) = chart
        .contact_jets(point, 2)
        .ok_or_else(|| Error::NotApplicable(format!("{} carries no contact structure", chart.name())))?;
    if eta.order() < 2 || xi.order() < 1 {
        return Err(Error::arg("contact jets of insufficient order"));
    }
    let d_eta = exterior_derivative(&eta, conv)?;
    let phi = phi_jets(&curv.connection.metric_inv, &d_eta);
    Ok(ContactJets { eta, xi, d_eta, phi })
}

/// `h = ½ £_ξ φ` at a chart point; `NotApplicable` for charts without a
/// contact structure.
pub fn structure_h(chart: &dyn Chart, point: &[f64]) -> Result<Tensor> {
    let curv = chart_curvature(chart, point, Depth::Riemann)?;
    let cj = contact_jets(chart, point, &curv, ExteriorConvention::default())?;
    Ok(lie_h(&cj.phi, &cj.xi))
}

/// Chart-backend geometry for any chart with a contact structure.
pub fn chart_geometry(chart: &dyn Chart, point: &[f64], opts: GeometryOptions) -> Result<GeometryAtPoint> {
    let curv = chart_curvature(chart, point, opts.depth)?;
    let cj = contact_jets(chart, point, &curv, opts.convention)?;
    let gamma = &curv.connection.gamma;
    let nabla_phi = covariant_derivative(&cj.phi, gamma)?.value();
    let nabla_xi = covariant_derivative(&cj.xi.truncate(1), gamma)?.value();
    let nabla_eta = covariant_derivative(&cj.eta.truncate(1), gamma)?.value();
    let h = lie_h(&cj.phi, &cj.xi);

    let mut geom = GeometryAtPoint::assemble(
        Backend::Chart,
        Some(point.to_vec()),
        curv.metric.clone(),
        curv.metric_inv.clone(),
        cj.phi.value(),
        cj.xi.value(),
        cj.eta.value(),
        cj.d_eta.value(),
        curv.riemann.clone(),
    )?;
    geom.christoffel = Some(curv.christoffel);
    geom.nabla_riemann = curv.nabla_riemann;
    geom.nabla2_riemann = curv.nabla2_riemann;
    geom.commutator = curv.commutator;
    geom.nabla_metric = Some(curv.nabla_metric);
    geom.nabla_phi = Some(nabla_phi);
    geom.nabla_xi = Some(nabla_xi);
    geom.nabla_eta = Some(nabla_eta);
    geom.h = Some(h);
    Ok(geom)
}
