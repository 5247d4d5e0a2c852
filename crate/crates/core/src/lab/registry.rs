//! Every identity the engine checks, written as `Σ terms = 0`.
//!
//! Letters follow the identities: `U,V` feed the curvature operator, `X,Y,Z`
//! are the arguments of the differentiated tensor and `W` is a spare.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::curvature::Depth;
use crate::derived::BKind;
use crate::error::{Error, Result};
use crate::lab::balance::Balance;
use crate::lab::context::{Args, Ctx};
use crate::lab::derivation::{curvature_endo, derive_with, literal_second_derivative_xi};
use crate::manifolds::InputClass;
use crate::tensor::{Tensor, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// Follows from the structure equations or is engine plumbing; gates the run.
    MustHold,
    /// A stated result whose verdict is the product.
    Claim,
    /// Reported without any expectation.
    Diagnostic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendReq {
    Any,
    ChartOnly,
}

pub type Evaluator = fn(&Ctx, &Args) -> Result<Balance>;

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub eq: &'static str,
    pub formula: &'static str,
    pub class: InputClass,
    pub backend: BackendReq,
    pub expectation: Expectation,
    pub depth: Depth,
    /// Lower bound on the tolerance used for this check.
    pub tol_floor: f64,
    pub preset: Option<BKind>,
    pub eval: Evaluator,
}

impl IdentityCheck {
    fn new(
        id: &str,
        eq: &'static str,
        formula: &'static str,
        class: InputClass,
        backend: BackendReq,
        expectation: Expectation,
        eval: Evaluator,
    ) -> Self {
        let depth = match backend {
            BackendReq::Any => Depth::Riemann,
            BackendReq::ChartOnly => Depth::First,
        };
        IdentityCheck { id: id.to_string(), eq, formula, class, backend, expectation, depth, tol_floor: 0.0, preset: None, eval }
    }

    fn second(mut self, floor: f64) -> Self {
        self.depth = Depth::Second;
        self.tol_floor = floor;
        self
    }

    fn with_preset(mut self, kind: BKind) -> Self {
        self.id = format!("{}/{}", self.id, kind.label());
        self.preset = Some(kind);
        self
    }

    pub fn tolerance(&self, base: f64) -> f64 {
        base.max(self.tol_floor)
    }
}

use BackendReq::{Any, ChartOnly};
use Expectation::{Claim, Diagnostic, MustHold};
use InputClass::{Arbitrary, Horizontal};

fn scaled(v: &Vector, s: f64) -> Vector {
    v * s
}

// Structure equations.

fn ax_2_1a(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus(&c.phi2(&a.x)).plus(&a.x).minus(&scaled(&c.xi(), c.eta(&a.x))))
}

fn ax_2_1b(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus_s(c.eta(&a.x)).minus_s(c.g(&a.x, &c.xi())))
}

fn ax_2_1c(c: &Ctx, a: &Args) -> Result<Balance> {
    let d = c.geom().d_eta.eval_scalar(&[&a.x, &a.y]);
    Ok(Balance::new().plus_s(d).minus_s(c.g(&a.x, &c.phi(&a.y))))
}

fn ax_2_2(c: &Ctx, a: &Args) -> Result<Balance> {
    let phi_xi = Balance::new().plus(&c.phi(&c.xi()));
    let eta_phi = Balance::new().plus_s(c.eta(&c.phi(&a.x)));
    let skew = Balance::new().plus_s(c.g(&c.phi(&a.x), &a.y)).plus_s(c.g(&a.x, &c.phi(&a.y)));
    Ok(phi_xi.join(eta_phi).join(skew))
}

fn ax_2_3(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new()
        .plus_s(c.g(&c.phi(&a.x), &c.phi(&a.y)))
        .minus_s(c.g(&a.x, &a.y))
        .plus_s(c.eta(&a.x) * c.eta(&a.y)))
}

fn sas_2_4(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new()
        .plus(&c.r(&a.x, &a.y, &c.xi()))
        .minus(&scaled(&a.x, c.eta(&a.y)))
        .plus(&scaled(&a.y, c.eta(&a.x))))
}

fn sas_2_5a(c: &Ctx, a: &Args) -> Result<Balance> {
    let xi = c.xi();
    let r_xi_x = c.r(&xi, &a.x, &a.y);
    let value = Balance::new()
        .plus(&r_xi_x)
        .minus(&scaled(&xi, c.g(&a.x, &a.y)))
        .plus(&scaled(&a.x, c.eta(&a.y)));
    let skew = Balance::new().plus(&r_xi_x).plus(&c.r(&a.x, &xi, &a.y));
    Ok(value.join(skew))
}

fn sas_2_5b(c: &Ctx, a: &Args) -> Result<Balance> {
    let nphi = c.geom().nabla_phi()?.eval_vector(&[&a.x, &a.y]);
    Ok(Balance::new().plus(&nphi).minus(&scaled(&c.xi(), c.g(&a.x, &a.y))).plus(&scaled(&a.x, c.eta(&a.y))))
}

fn sas_2_6(c: &Ctx, a: &Args) -> Result<Balance> {
    let g = c.geom();
    let nxi = g.nabla_xi.as_ref().ok_or_else(|| Error::NotApplicable("∇ξ needs a chart".into()))?;
    let neta = g.nabla_eta.as_ref().ok_or_else(|| Error::NotApplicable("∇η needs a chart".into()))?;
    let xi_part = Balance::new().plus(&nxi.eval_vector(&[&a.x])).plus(&c.phi(&a.x));
    let eta_part = Balance::new().plus_s(neta.eval_scalar(&[&a.x, &a.y])).minus_s(c.g(&a.x, &c.phi(&a.y)));
    Ok(xi_part.join(eta_part))
}

fn sas_2_7(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new()
        .plus_s(c.eta(&c.r(&a.x, &a.y, &a.z)))
        .minus_s(c.g(&a.y, &a.z) * c.eta(&a.x))
        .plus_s(c.g(&a.x, &a.z) * c.eta(&a.y)))
}

fn sas_2_8(c: &Ctx, a: &Args) -> Result<Balance> {
    let (w, x, y) = (&a.w, &a.x, &a.y);
    Ok(Balance::new()
        .plus(&c.nr(w, x, y, &c.xi())?)
        .minus(&scaled(x, c.g(w, &c.phi(y))))
        .plus(&scaled(y, c.g(w, &c.phi(x))))
        .minus(&c.r(x, y, &c.phi(w))))
}

fn sas_2_9(c: &Ctx, a: &Args) -> Result<Balance> {
    let (w, x, z) = (&a.w, &a.x, &a.z);
    let pw = c.phi(w);
    Ok(Balance::new()
        .plus(&c.nr(w, x, &c.xi(), z)?)
        .minus(&scaled(&pw, c.g(x, z)))
        .plus(&scaled(x, c.g(z, &pw)))
        .minus(&c.r(x, &pw, z)))
}

fn sas_2_10(c: &Ctx, a: &Args) -> Result<Balance> {
    let xi = c.xi();
    let n1 = c.n() - 1.0;
    let mixed = Balance::new().plus_s(c.geom().s(&a.x, &xi)).minus_s(n1 * c.eta(&a.x));
    let vertical = Balance::new().plus_s(c.geom().s(&xi, &xi)).minus_s(n1);
    Ok(mixed.join(vertical))
}

fn sas_2_11(c: &Ctx, a: &Args) -> Result<Balance> {
    let (w, x, y) = (&a.w, &a.x, &a.y);
    let (px, py) = (c.phi(x), c.phi(y));
    Ok(Balance::new()
        .plus(&c.r(x, y, &c.phi(w)))
        .minus(&scaled(y, c.g(w, &px)))
        .plus(&scaled(&px, c.g(w, y)))
        .plus(&scaled(x, c.g(w, &py)))
        .minus(&scaled(&py, c.g(w, x)))
        .minus(&c.phi(&c.r(x, y, w))))
}

fn sas_2_12(c: &Ctx, a: &Args) -> Result<Balance> {
    let (w, x, y) = (&a.w, &a.x, &a.y);
    Ok(Balance::new()
        .plus(&c.nr(w, x, y, &c.xi())?)
        .minus(&scaled(&c.phi(y), c.g(w, x)))
        .plus(&scaled(&c.phi(x), c.g(w, y)))
        .minus(&c.phi(&c.r(x, y, w))))
}

// Local φ-semisymmetry and the horizontal proof chain.

fn def_3_5(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    Ok(Balance::new().plus(&c.phi2(&rr)).hint(hint))
}

fn prf_3_6(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &c.xi())?;
    Ok(Balance::new().plus(&c.phi2(&rr)).hint(hint))
}

fn prf_3_6_eta(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &c.xi())?;
    Ok(Balance::new().plus_s(c.eta(&rr)).hint(hint))
}

/// `(∇²_{U,V} R)(X,Y)ξ` and the uncorrected differentiation of the same identity.
fn second_derivative_pair(c: &Ctx, u: &Vector, v: &Vector, x: &Vector, y: &Vector) -> Result<(Vector, Vector)> {
    let tensorial = c.geom().nabla2_r(u, v, x, y, &c.xi())?;
    let literal = literal_second_derivative_xi(c.geom(), u, v, x, y)?;
    Ok((tensorial, literal))
}

fn prf_3_7(c: &Ctx, a: &Args) -> Result<Balance> {
    let (t, l) = second_derivative_pair(c, &a.u, &a.v, &a.x, &a.y)?;
    Ok(Balance::new().plus(&t).minus(&l))
}

fn prf_3_7_term(c: &Ctx, a: &Args) -> Result<Balance> {
    let (t, l) = second_derivative_pair(c, &a.u, &a.v, &a.x, &a.y)?;
    let term = c.nr(&a.v, &a.x, &a.y, &c.phi(&a.u))?;
    Ok(Balance::new().plus(&t).minus(&l).minus(&term))
}

fn prf_3_8(c: &Ctx, a: &Args) -> Result<Balance> {
    let (t, l) = second_derivative_pair(c, &a.v, &a.u, &a.x, &a.y)?;
    Ok(Balance::new().plus(&t).minus(&l))
}

/// `{g(Y,U)g(X,V) - g(X,U)g(Y,V) - R(X,Y,U,V)}`.
fn unit_defect(c: &Ctx, a: &Args) -> f64 {
    c.g(&a.y, &a.u) * c.g(&a.x, &a.v) - c.g(&a.x, &a.u) * c.g(&a.y, &a.v) - c.rf(&a.x, &a.y, &a.u, &a.v)
}

/// `2{…}ξ + φ{(∇_U R)(X,Y)V - (∇_V R)(X,Y)U}` as separate summands.
fn rhs_3_9(c: &Ctx, a: &Args, b: Balance, sign: f64) -> Result<Balance> {
    let first = scaled(&c.xi(), 2.0 * unit_defect(c, a));
    let p = c.phi(&c.nr(&a.u, &a.x, &a.y, &a.v)?);
    let q = c.phi(&c.nr(&a.v, &a.x, &a.y, &a.u)?);
    Ok(b.plus(&scaled(&first, sign)).plus(&scaled(&p, sign)).minus(&scaled(&q, sign)))
}

fn prf_3_9(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &c.xi())?;
    rhs_3_9(c, a, Balance::new().plus(&rr).hint(hint), -1.0)
}

fn prf_3_10(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &c.xi())?;
    Ok(Balance::new().plus(&rr).hint(hint))
}

fn prf_3_11(c: &Ctx, a: &Args) -> Result<Balance> {
    rhs_3_9(c, a, Balance::new(), 1.0)
}

fn prf_3_12(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus(&c.nr(&a.u, &a.x, &a.y, &a.v)?).minus(&c.nr(&a.v, &a.x, &a.y, &a.u)?))
}

fn chl_3_13(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new()
        .plus_s(c.rf(&a.x, &a.y, &a.u, &a.v))
        .minus_s(c.g(&a.y, &a.u) * c.g(&a.x, &a.v))
        .plus_s(c.g(&a.x, &a.u) * c.g(&a.y, &a.v)))
}

fn prf_3_14(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let (rr_xi, hint_xi) = c.rr(&a.u, &a.v, &a.x, &a.y, &c.xi())?;
    Ok(Balance::new().plus(&rr).plus(&scaled(&c.xi(), c.g(&rr_xi, &a.z))).hint(hint.max(hint_xi)))
}

fn prf_3_15(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let pz = c.phi(&a.z);
    let p = c.nrf(&a.u, &a.x, &a.y, &a.v, &pz)?;
    let q = c.nrf(&a.v, &a.x, &a.y, &a.u, &pz)?;
    let xi = c.xi();
    Ok(Balance::new().plus(&rr).minus(&scaled(&xi, p)).plus(&scaled(&xi, q)).hint(hint))
}

fn prf_3_16(c: &Ctx, a: &Args, sign: f64) -> Result<Balance> {
    let (v, x, y, z) = (&a.v, &a.x, &a.y, &a.z);
    let xi = c.xi();
    Ok(Balance::new()
        .plus(&c.nr(v, x, y, &c.phi(z))?)
        .minus(&scaled(&xi, c.rf(x, y, z, v)))
        .plus(&scaled(&xi, c.g(y, z) * c.g(x, v)))
        .plus(&scaled(&xi, sign * c.g(x, z) * c.g(y, v)))
        .minus(&c.phi(&c.nr(v, x, y, z)?)))
}

fn prf_3_16a(c: &Ctx, a: &Args) -> Result<Balance> {
    prf_3_16(c, a, 1.0)
}

fn prf_3_16b(c: &Ctx, a: &Args) -> Result<Balance> {
    prf_3_16(c, a, -1.0)
}

fn prf_3_17(c: &Ctx, a: &Args) -> Result<Balance> {
    let (v, x, y, z, u) = (&a.v, &a.x, &a.y, &a.z, &a.u);
    Ok(Balance::new()
        .plus_s(c.g(&c.nr(v, x, y, &c.phi(z))?, u))
        .plus_s(c.g(&c.nr(v, x, y, z)?, &c.phi(u))))
}

/// `[(∇_U R)(X,Y,Z,φV) - (∇_V R)(X,Y,Z,φU)]ξ`, added with `sign`.
fn nabla_xi_terms(c: &Ctx, a: &Args, b: Balance, sign: f64) -> Result<Balance> {
    let (p, q) = c.nabla_pair(a)?;
    let xi = c.xi();
    Ok(b.plus(&scaled(&xi, sign * p)).minus(&scaled(&xi, sign * q)))
}

fn chr_3_18(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    nabla_xi_terms(c, a, Balance::new().plus(&rr).hint(hint), -1.0)
}

// Arbitrary arguments.

fn l_4_1(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus(&c.phi2(&c.nr(&c.xi(), &a.x, &a.y, &a.z)?)))
}

fn l_4_2(c: &Ctx, a: &Args) -> Result<Balance> {
    let (v, x, y, z) = (&a.v, &a.x, &a.y, &a.z);
    let pv = c.phi(v);
    let lhs = c.nr(&c.phi2(v), &c.phi2(x), &c.phi2(y), &c.phi2(z))?;
    let ex = &(&scaled(&pv, c.g(y, z)) - &scaled(y, c.g(&pv, z))) + &c.r(y, &pv, z);
    let ey = &(&scaled(&pv, c.g(x, z)) - &scaled(x, c.g(&pv, z))) + &c.r(x, &pv, z);
    let ez = &(&scaled(&c.phi(y), c.g(x, v)) - &scaled(&c.phi(x), c.g(y, v))) + &c.phi(&c.r(x, y, v));
    Ok(Balance::new()
        .plus(&lhs)
        .minus(&c.nr(v, x, y, z)?)
        .minus(&scaled(&ex, c.eta(x)))
        .plus(&scaled(&ey, c.eta(y)))
        .plus(&scaled(&ez, c.eta(z)))
        .hint(ex.amax().max(ey.amax()).max(ez.amax())))
}

/// `(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z`.
fn rr_phi2(c: &Ctx, a: &Args) -> Result<(Vector, f64)> {
    c.rr(&c.phi2(&a.u), &c.phi2(&a.v), &c.phi2(&a.x), &c.phi2(&a.y), &c.phi2(&a.z))
}

fn chr_4_3(c: &Ctx, a: &Args) -> Result<Balance> {
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let (lhs, hint) = rr_phi2(c, a)?;
    let (pu, pv) = (c.phi(u), c.phi(v));
    let (p, q) = c.nabla_pair(a)?;
    let ex = c.g(y, &pv) * c.g(&pu, z) - c.g(y, &pu) * c.g(&pv, z) - c.rf(y, z, &pu, &pv);
    let ey = c.g(x, &pv) * c.g(&pu, z) - c.g(x, &pu) * c.g(&pv, z) - c.rf(x, z, &pu, &pv);
    let ez = c.g(x, v) * c.g(u, y) - c.g(x, u) * c.g(v, y) - c.rf(x, y, u, v);
    let xi = c.xi();
    Ok(Balance::new()
        .plus(&lhs)
        .minus(&scaled(&xi, q))
        .plus(&scaled(&xi, p))
        .minus(&scaled(&xi, c.eta(x) * ex))
        .plus(&scaled(&xi, c.eta(y) * ey))
        .plus(&scaled(&xi, 2.0 * c.eta(z) * ez))
        .hint(hint))
}

fn chr_4_4(c: &Ctx, a: &Args) -> Result<Balance> {
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let (lhs, hint) = rr_phi2(c, a)?;
    let (p, q) = c.nabla_pair(a)?;
    let xi = c.xi();
    Ok(Balance::new()
        .plus(&lhs)
        .minus(&scaled(&xi, q))
        .plus(&scaled(&xi, p))
        .plus(&scaled(&xi, c.eta(x) * c.hf(y, z, u, v)))
        .minus(&scaled(&xi, c.eta(y) * c.hf(x, z, u, v)))
        .minus(&scaled(&xi, 2.0 * c.eta(z) * c.hf(x, y, u, v)))
        .hint(hint))
}

fn h_4_5(c: &Ctx, a: &Args) -> Result<Balance> {
    let r = c.r(&a.x, &a.y, &a.z);
    Ok(Balance::new().plus(&c.hop(&a.x, &a.y, &a.z)).hint(r.amax()))
}

fn alg_4_6(c: &Ctx, a: &Args) -> Result<Balance> {
    let (generic, _) = rr_phi2(c, a)?;
    let (explicit, hint) = c.rr_explicit(&c.phi2(&a.u), &c.phi2(&a.v), &c.phi2(&a.x), &c.phi2(&a.y), &c.phi2(&a.z));
    Ok(Balance::new().plus(&generic).minus(&explicit).hint(hint))
}

/// The `η(U)[…] - η(V)[…]` terms shared by (4.7), (4.8) and (5.18), added with `sign`.
fn h_tail(c: &Ctx, a: &Args, b: Balance, sign: f64, with_xi: bool) -> Balance {
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let xi = c.xi();
    let part = |p: &Vector| {
        let mut t = &(&scaled(&c.hop(p, y, z), c.eta(x)) + &scaled(&c.hop(x, p, z), c.eta(y)))
            + &scaled(&c.hop(x, y, p), c.eta(z));
        if with_xi {
            t += scaled(&xi, c.hf(x, y, z, p));
        }
        t
    };
    b.plus(&scaled(&part(v), sign * c.eta(u))).minus(&scaled(&part(u), sign * c.eta(v)))
}

fn alg_4_7(c: &Ctx, a: &Args) -> Result<Balance> {
    let (lhs, h1) = rr_phi2(c, a)?;
    let (rr, h2) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let b = Balance::new().plus(&lhs).plus(&rr).hint(h1.max(h2));
    Ok(h_tail(c, a, b, -1.0, true))
}

/// Right-hand side of (4.8) subtracted from `b`.
fn minus_rhs_4_8(c: &Ctx, a: &Args, b: Balance) -> Result<Balance> {
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let xi = c.xi();
    let b = nabla_xi_terms(c, a, b, -1.0)?
        .minus(&scaled(&xi, c.eta(x) * c.hf(y, z, u, v)))
        .plus(&scaled(&xi, c.eta(y) * c.hf(x, z, u, v)))
        .plus(&scaled(&xi, 2.0 * c.eta(z) * c.hf(x, y, u, v)))
        .minus(&scaled(&xi, c.eta(u) * c.hf(x, y, z, v)))
        .plus(&scaled(&xi, c.eta(v) * c.hf(x, y, z, u)));
    Ok(h_tail(c, a, b, -1.0, false))
}

fn chr_4_8(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    minus_rhs_4_8(c, a, Balance::new().plus(&rr).hint(hint))
}

fn cor_semi(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    Ok(Balance::new().plus(&rr).hint(hint))
}

// Ricci φ-semisymmetry.

fn ric_5_1(c: &Ctx, a: &Args) -> Result<Balance> {
    let rq = c.rq(&a.u, &a.v, &a.x)?;
    Ok(Balance::new().plus(&c.phi2(&rq)).hint(c.geom().q(&a.x).amax()))
}

fn ric_5_1q(c: &Ctx, a: &Args) -> Result<Balance> {
    let rq = c.rq(&a.u, &a.v, &a.x)?;
    Ok(Balance::new().plus(&rq).hint(c.geom().q(&a.x).amax()))
}

fn ric_5_2(c: &Ctx, a: &Args) -> Result<Balance> {
    let g = c.geom();
    let (u, v, x) = (&a.u, &a.v, &a.x);
    Ok(Balance::new().plus(&c.rq(u, v, x)?).minus(&g.r(u, v, &g.q(x))).plus(&g.q(&g.r(u, v, x))))
}

fn ric_5_3(c: &Ctx, a: &Args) -> Result<Balance> {
    let rq = c.rq(&a.u, &a.v, &a.x)?;
    Ok(Balance::new().plus(&c.phi2(&rq)).plus(&rq))
}

/// `{E(X,V)η(U) - E(X,U)η(V)}ξ - η(X){η(V)𝓔U - η(U)𝓔V}`, subtracted from `b`.
fn minus_e_terms(c: &Ctx, a: &Args, b: Balance) -> Balance {
    let (u, v, x) = (&a.u, &a.v, &a.x);
    let xi = c.xi();
    b.minus(&scaled(&xi, c.e(x, v) * c.eta(u)))
        .plus(&scaled(&xi, c.e(x, u) * c.eta(v)))
        .plus(&scaled(&c.eop(u), c.eta(x) * c.eta(v)))
        .minus(&scaled(&c.eop(v), c.eta(x) * c.eta(u)))
}

fn alg_5_4(c: &Ctx, a: &Args) -> Result<Balance> {
    let lhs = c.rq(&c.phi2(&a.u), &c.phi2(&a.v), &c.phi2(&a.x))?;
    let rq = c.rq(&a.u, &a.v, &a.x)?;
    Ok(minus_e_terms(c, a, Balance::new().plus(&lhs).plus(&rq)))
}

fn e_5_5(c: &Ctx, a: &Args) -> Result<Balance> {
    let (x, y) = (&a.x, &a.y);
    let xi = c.xi();
    let def = Balance::new().plus_s(c.e(x, y)).minus_s(c.geom().s(x, y)).plus_s((c.n() - 1.0) * c.g(x, y));
    let op = Balance::new().plus_s(c.g(&c.eop(x), y)).minus_s(c.e(x, y));
    let vertical = Balance::new().plus_s(c.e(&xi, &xi)).hint(c.geom().s(&xi, &xi));
    Ok(def.join(op).join(vertical))
}

fn chr_5_6(c: &Ctx, a: &Args) -> Result<Balance> {
    let rq = c.rq(&a.u, &a.v, &a.x)?;
    Ok(minus_e_terms(c, a, Balance::new().plus(&rq).hint(c.geom().q(&a.x).amax())))
}

// Projective and conformal φ-semisymmetry.

fn derive_r_hint(c: &Ctx, a: &Args) -> f64 {
    c.rr_explicit(&a.u, &a.v, &a.x, &a.y, &a.z).1
}

fn def_5_7p(c: &Ctx, a: &Args) -> Result<Balance> {
    let rp = c.derive_eval(&a.u, &a.v, &c.pd.projective, &[&a.x, &a.y, &a.z])?;
    Ok(Balance::new().plus(&c.phi2(&rp)).hint(derive_r_hint(c, a)))
}

fn def_5_7c(c: &Ctx, a: &Args) -> Result<Balance> {
    let rc = c.derive_eval(&a.u, &a.v, c.conformal()?, &[&a.x, &a.y, &a.z])?;
    Ok(Balance::new().plus(&c.phi2(&rc)).hint(derive_r_hint(c, a)))
}

fn p_5_8(c: &Ctx, a: &Args) -> Result<Balance> {
    let p = &c.pd.projective;
    let trace = p.contract(0, 0)?.eval_scalar(&[&a.y, &a.z]);
    let direct = &c.r(&a.x, &a.y, &a.z)
        - &scaled(&(&scaled(&a.x, c.geom().s(&a.y, &a.z)) - &scaled(&a.y, c.geom().s(&a.x, &a.z))), 1.0 / (c.n() - 1.0));
    let formula = Balance::new().plus(&p.eval_vector(&[&a.x, &a.y, &a.z])).minus(&direct);
    Ok(Balance::new().plus_s(trace).hint(c.geom().s(&a.y, &a.z)).join(formula))
}

fn cnf_5_9(c: &Ctx, a: &Args) -> Result<Balance> {
    let cw = c.conformal()?;
    let mut b = Balance::new();
    for slot in 0..3 {
        b = b.join(Balance::new().plus_s(cw.contract(0, slot)?.eval_scalar(&[&a.y, &a.z])));
    }
    Ok(b.hint(c.geom().s(&a.y, &a.z)))
}

fn der_5_10(c: &Ctx, a: &Args) -> Result<Balance> {
    let rp = c.derive_eval(&a.u, &a.v, &c.pd.projective, &[&a.x, &a.y, &a.z])?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let sb = c.s_bracket(a)?;
    Ok(Balance::new().plus(&rp).minus(&rr).plus(&scaled(&sb, 1.0 / (c.n() - 1.0))).hint(hint))
}

fn der_5_11(c: &Ctx, a: &Args) -> Result<Balance> {
    let rp = c.derive_eval(&a.u, &a.v, &c.pd.projective, &[&a.x, &a.y, &a.z])?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let sb = c.s_bracket(a)?;
    let b = Balance::new().plus(&c.phi2(&rp)).plus(&rr).minus(&scaled(&sb, 1.0 / (c.n() - 1.0))).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

fn chr_5_12(c: &Ctx, a: &Args) -> Result<Balance> {
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let sb = c.s_bracket(a)?;
    let b = Balance::new().plus(&rr).minus(&scaled(&sb, 1.0 / (c.n() - 1.0))).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

fn chr_5_13(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus_s(c.rs(&a.u, &a.v, &a.y, &a.w)?).hint(c.geom().s(&a.y, &a.w)))
}

/// `[S-bracket + Q-bracket]` of (5.14)–(5.16).
fn sq_bracket(c: &Ctx, a: &Args) -> Result<Vector> {
    Ok(c.s_bracket(a)? + c.q_bracket(a)?)
}

fn cnf_5_14(c: &Ctx, a: &Args) -> Result<Balance> {
    let rc = c.derive_eval(&a.u, &a.v, c.conformal()?, &[&a.x, &a.y, &a.z])?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    Ok(Balance::new().plus(&rc).minus(&rr).plus(&scaled(&br, 1.0 / (c.n() - 2.0))).hint(hint))
}

fn cnf_5_15(c: &Ctx, a: &Args) -> Result<Balance> {
    let rc = c.derive_eval(&a.u, &a.v, c.conformal()?, &[&a.x, &a.y, &a.z])?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&c.phi2(&rc)).plus(&rr).minus(&scaled(&br, 1.0 / (c.n() - 2.0))).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

fn chr_5_16(c: &Ctx, a: &Args) -> Result<Balance> {
    c.conformal()?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&rr).minus(&scaled(&br, 1.0 / (c.n() - 2.0))).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

/// The two `1/(n-2)[…]` brackets of (5.17)/(5.18), summed.
fn ricci_tail(c: &Ctx, a: &Args) -> Result<Vector> {
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let xi = c.xi();
    let (ex, ey, ez, eu, ev) = (c.eta(x), c.eta(y), c.eta(z), c.eta(u), c.eta(v));
    let rs_yz = c.rs(u, v, y, z)?;
    let rs_xz = c.rs(u, v, x, z)?;
    let rq_x = c.rq(u, v, x)?;
    let rq_y = c.rq(u, v, y)?;
    let eta_wedge = &scaled(x, ey) - &scaled(y, ex);

    let s_part = &(&(&(&scaled(x, rs_yz) - &scaled(y, rs_xz)) - &scaled(&xi, rs_yz * ex - rs_xz * ey))
        - &scaled(&eta_wedge, c.e(v, z) * eu - c.e(u, z) * ev))
        + &(&scaled(&(&scaled(x, c.e(y, u)) - &scaled(y, c.e(x, u))), ez * ev)
            - &scaled(&(&scaled(x, c.e(y, v)) - &scaled(y, c.e(x, v))), ez * eu));

    let eop = &scaled(&c.eop(u), ev) - &scaled(&c.eop(v), eu);
    let q_part = &(&(&(&scaled(&rq_x, c.g(y, z)) - &scaled(&rq_y, c.g(x, z)))
        - &scaled(&(&scaled(&rq_x, ey) - &scaled(&rq_y, ex)), ez))
        + &scaled(&eop, c.g(y, z) * ex - c.g(x, z) * ey))
        + &(&scaled(&xi, -(c.e(x, v) * eu - c.e(x, u) * ev) * c.g(y, z))
            + &scaled(&xi, (c.e(y, v) * eu - c.e(y, u) * ev) * c.g(x, z)));
    Ok(s_part + q_part)
}

fn chr_5_17(c: &Ctx, a: &Args) -> Result<Balance> {
    c.conformal()?;
    let (u, v, x, y, z) = (&a.u, &a.v, &a.x, &a.y, &a.z);
    let (lhs, hint) = rr_phi2(c, a)?;
    let (p, q) = c.nabla_pair(a)?;
    let xi = c.xi();
    let tail = ricci_tail(c, a)?;
    Ok(Balance::new()
        .plus(&lhs)
        .minus(&scaled(&xi, q))
        .plus(&scaled(&xi, p))
        .plus(&scaled(&xi, c.eta(x) * c.hf(y, z, u, v)))
        .minus(&scaled(&xi, c.eta(y) * c.hf(x, z, u, v)))
        .minus(&scaled(&xi, 2.0 * c.eta(z) * c.hf(x, y, u, v)))
        .plus(&scaled(&tail, 1.0 / (c.n() - 2.0)))
        .hint(hint))
}

fn chr_5_18(c: &Ctx, a: &Args) -> Result<Balance> {
    c.conformal()?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let tail = ricci_tail(c, a)?;
    let b = minus_rhs_4_8(c, a, Balance::new().plus(&rr).hint(hint))?;
    Ok(b.minus(&scaled(&tail, 1.0 / (c.n() - 2.0))))
}

// B-tensor family.

fn b_5_19(c: &Ctx, a: &Args) -> Result<Balance> {
    let (x, y, z) = (&a.x, &a.y, &a.z);
    let n = c.n();
    let find = |kind: BKind| {
        c.pd.b.iter().find(|(k, _)| k.kind == kind).map(|(_, t)| t.eval_vector(&[x, y, z]))
            .ok_or_else(|| Error::arg("missing B preset"))
    };
    let gg = &scaled(x, c.g(y, z)) - &scaled(y, c.g(x, z));
    let concircular =
        Balance::new().plus(&find(BKind::Concircular)?).minus(&c.r(x, y, z)).plus(&scaled(&gg, c.geom().scalar / (n * (n - 1.0))));
    let mut b = concircular;
    if let Some(cw) = &c.pd.conformal {
        let cv = cw.eval_vector(&[x, y, z]);
        b = b.join(Balance::new().plus(&find(BKind::Conformal)?).minus(&cv));
        let quasi = crate::derived::BCoefficients::quasi_conformal(c.geom().n, 1.0, -1.0 / (n - 2.0))?;
        let qv = crate::derived::b_tensor(c.geom(), &quasi).eval_vector(&[x, y, z]);
        b = b.join(Balance::new().plus(&qv).minus(&cv));
    }
    Ok(b)
}

fn preset<'a>(c: &Ctx<'a>) -> Result<(&'a crate::derived::BCoefficients, &'a Tensor)> {
    let (k, t) = c.coeffs()?;
    Ok((k, t))
}

fn derive_b(c: &Ctx, a: &Args) -> Result<Vector> {
    let (_, t) = preset(c)?;
    let l = curvature_endo(c.geom(), &a.u, &a.v);
    Ok(derive_with(&l, t)?.eval_vector(&[&a.x, &a.y, &a.z]))
}

fn def_5_20(c: &Ctx, a: &Args) -> Result<Balance> {
    let rb = derive_b(c, a)?;
    Ok(Balance::new().plus(&c.phi2(&rb)).hint(derive_r_hint(c, a)))
}

fn b_5_21(c: &Ctx, a: &Args) -> Result<Balance> {
    let (k, _) = preset(c)?;
    let rb = derive_b(c, a)?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    Ok(Balance::new().plus(&rb).minus(&scaled(&rr, k.b0)).minus(&scaled(&br, k.b1)).hint(hint))
}

fn b_5_22(c: &Ctx, a: &Args) -> Result<Balance> {
    let (k, _) = preset(c)?;
    let rb = derive_b(c, a)?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&c.phi2(&rb)).plus(&scaled(&rr, k.b0)).plus(&scaled(&br, k.b1)).hint(hint);
    let (p, q) = c.nabla_pair(a)?;
    let xi = c.xi();
    Ok(b.minus(&scaled(&xi, k.b0 * p)).plus(&scaled(&xi, k.b0 * q)))
}

fn chr_5_23(c: &Ctx, a: &Args) -> Result<Balance> {
    let (k, _) = preset(c)?;
    if k.b0 == 0.0 {
        return Err(Error::NotApplicable("needs b0 != 0".into()));
    }
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&rr).plus(&scaled(&br, k.b1 / k.b0)).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

fn cond_5_24(c: &Ctx, a: &Args) -> Result<Balance> {
    let (k, _) = preset(c)?;
    let rs = c.rs(&a.u, &a.v, &a.y, &a.z)?;
    Ok(Balance::new().plus_s(k.discriminant(c.geom().n) * rs).hint(c.geom().s(&a.y, &a.z)))
}

fn cond_5_25(c: &Ctx, a: &Args) -> Result<Balance> {
    let (k, _) = preset(c)?;
    if k.degenerate(c.geom().n) {
        return Err(Error::NotApplicable("needs b0 + (n-2)b1 != 0".into()));
    }
    Ok(Balance::new().plus_s(c.rs(&a.u, &a.v, &a.y, &a.z)?).hint(c.geom().s(&a.y, &a.z)))
}

fn require_degenerate<'a>(c: &Ctx<'a>) -> Result<&'a crate::derived::BCoefficients> {
    let (k, _) = preset(c)?;
    if !k.degenerate(c.geom().n) {
        return Err(Error::NotApplicable("needs b0 + (n-2)b1 = 0".into()));
    }
    Ok(k)
}

fn chr_5_26(c: &Ctx, a: &Args) -> Result<Balance> {
    let k = require_degenerate(c)?;
    let rb = derive_b(c, a)?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&c.phi2(&rb)).plus(&scaled(&rr, k.b0)).minus(&scaled(&br, k.b0 / (c.n() - 2.0))).hint(hint);
    let (p, q) = c.nabla_pair(a)?;
    let xi = c.xi();
    Ok(b.minus(&scaled(&xi, k.b0 * p)).plus(&scaled(&xi, k.b0 * q)))
}

fn chr_5_27(c: &Ctx, a: &Args) -> Result<Balance> {
    require_degenerate(c)?;
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    let br = sq_bracket(c, a)?;
    let b = Balance::new().plus(&rr).minus(&scaled(&br, 1.0 / (c.n() - 2.0))).hint(hint);
    nabla_xi_terms(c, a, b, -1.0)
}

// Engine self-checks.

fn eng_metric(c: &Ctx, _: &Args) -> Result<Balance> {
    let nm = c.geom().nabla_metric.as_ref().ok_or_else(|| Error::NotApplicable("∇g needs a chart".into()))?;
    Ok(Balance::new().plus_t(nm).hint(c.geom().g.max_norm()))
}

fn eng_torsion(c: &Ctx, _: &Args) -> Result<Balance> {
    let gamma = c.geom().christoffel.as_ref().ok_or_else(|| Error::NotApplicable("Γ needs a chart".into()))?;
    let swapped = gamma.permute(&crate::tensor::Permutation::new(vec![0, 2, 1])?)?;
    Ok(Balance::new().plus_t(gamma).minus_t(&swapped))
}

fn eng_bianchi1(c: &Ctx, a: &Args) -> Result<Balance> {
    let (x, y, z) = (&a.x, &a.y, &a.z);
    Ok(Balance::new().plus(&c.r(x, y, z)).plus(&c.r(y, z, x)).plus(&c.r(z, x, y)))
}

fn eng_bianchi2(c: &Ctx, a: &Args) -> Result<Balance> {
    let (w, x, y, z) = (&a.w, &a.x, &a.y, &a.z);
    Ok(Balance::new().plus(&c.nr(w, x, y, z)?).plus(&c.nr(x, y, w, z)?).plus(&c.nr(y, w, x, z)?))
}

fn eng_rsym(c: &Ctx, a: &Args) -> Result<Balance> {
    let (x, y, z, w) = (&a.x, &a.y, &a.z, &a.w);
    let first = Balance::new().plus(&c.r(x, y, z)).plus(&c.r(y, x, z));
    let last = Balance::new().plus_s(c.rf(x, y, z, w)).plus_s(c.rf(x, y, w, z));
    let pair = Balance::new().plus_s(c.rf(x, y, z, w)).minus_s(c.rf(z, w, x, y));
    Ok(first.join(last).join(pair))
}

fn eng_ricci_identity(c: &Ctx, a: &Args) -> Result<Balance> {
    let comm = c.geom().commutator()?.eval_vector(&[&a.u, &a.v, &a.x, &a.y, &a.z]);
    let (rr, hint) = c.rr(&a.u, &a.v, &a.x, &a.y, &a.z)?;
    Ok(Balance::new().plus(&comm).minus(&rr).hint(hint))
}

fn eng_skew(c: &Ctx, a: &Args) -> Result<Balance> {
    let (u, v, z, w) = (&a.u, &a.v, &a.z, &a.w);
    Ok(Balance::new().plus_s(c.g(&c.r(u, v, z), w)).plus_s(c.g(z, &c.r(u, v, w))))
}

fn eng_deriv_g(c: &Ctx, a: &Args) -> Result<Balance> {
    let l = curvature_endo(c.geom(), &a.u, &a.v);
    Ok(Balance::new().plus_t(&derive_with(&l, &c.geom().g)?).hint(l.max_norm() * c.geom().g.max_norm()))
}

fn eng_deriv_contract(c: &Ctx, a: &Args) -> Result<Balance> {
    let g = c.geom();
    let l = curvature_endo(g, &a.u, &a.v);
    let hint = l.max_norm() * g.riemann.max_norm();
    // R: trace of the derivative against the derivative of the Ricci tensor.
    let r_case = Balance::new().plus_t(&derive_with(&l, &g.riemann)?.contract(0, 0)?).minus_t(&derive_with(&l, &g.ricci)?);
    // R♭: metric trace over the first and last slots.
    let flat_d = derive_with(&l, &g.riemann_flat)?.raise_index(3, &g.g_inv)?.contract(0, 0)?;
    let flat_case = Balance::new().plus_t(&flat_d).minus_t(&derive_with(&l, &g.riemann_flat.raise_index(3, &g.g_inv)?.contract(0, 0)?)?);
    // S: the scalar curvature is annihilated.
    let s_case = Balance::new().plus_t(&derive_with(&l, &g.ricci_op)?.contract(0, 0)?);
    Ok(r_case.join(flat_case).join(s_case).hint(hint))
}

fn eng_killing(c: &Ctx, _: &Args) -> Result<Balance> {
    let g = c.geom();
    let h = g.h.as_ref().ok_or_else(|| Error::NotApplicable("h needs a chart".into()))?;
    let gh = h.lower_index(0, &g.g)?;
    let swapped = gh.permute(&crate::tensor::Permutation::transposition(2, 0, 1)?)?;
    let sym = Balance::new().plus_t(&gh).minus_t(&swapped);
    Ok(sym.join(Balance::new().plus_t(h)).hint(g.phi.max_norm()))
}

fn eng_sym_s(c: &Ctx, a: &Args) -> Result<Balance> {
    Ok(Balance::new().plus_s(c.geom().s(&a.x, &a.y)).minus_s(c.geom().s(&a.y, &a.x)))
}

const PRESETS: [BKind; 5] = [BKind::Concircular, BKind::Conformal, BKind::Conharmonic, BKind::QuasiConformal, BKind::Custom];

fn build() -> Vec<IdentityCheck> {
    type C = IdentityCheck;
    let mut r = vec![
        C::new("AX-2.1a", "(2.1)", "φ²X = -X + η(X)ξ", Arbitrary, Any, MustHold, ax_2_1a),
        C::new("AX-2.1b", "(2.1)", "η(X) = g(X,ξ)", Arbitrary, Any, MustHold, ax_2_1b),
        C::new("AX-2.1c", "(2.1)", "dη(X,Y) = g(X,φY)", Arbitrary, Any, MustHold, ax_2_1c),
        C::new("AX-2.2", "(2.2)", "φξ = 0, η∘φ = 0, g(φX,Y) = -g(X,φY)", Arbitrary, Any, MustHold, ax_2_2),
        C::new("AX-2.3", "(2.3)", "g(φX,φY) = g(X,Y) - η(X)η(Y)", Arbitrary, Any, MustHold, ax_2_3),
        C::new("SAS-2.4", "(2.4)", "R(X,Y)ξ = η(Y)X - η(X)Y", Arbitrary, Any, MustHold, sas_2_4),
        C::new("SAS-2.5a", "(2.5)", "R(ξ,X)Y = g(X,Y)ξ - η(Y)X = -R(X,ξ)Y", Arbitrary, Any, MustHold, sas_2_5a),
        C::new("SAS-2.5b", "(2.5)", "(∇_X φ)Y = g(X,Y)ξ - η(Y)X", Arbitrary, ChartOnly, MustHold, sas_2_5b),
        C::new("SAS-2.6", "(2.6)", "∇_X ξ = -φX, (∇_X η)Y = g(X,φY)", Arbitrary, ChartOnly, MustHold, sas_2_6),
        C::new("SAS-2.7", "(2.7)", "η(R(X,Y)Z) = g(Y,Z)η(X) - g(X,Z)η(Y)", Arbitrary, Any, MustHold, sas_2_7),
        C::new("SAS-2.8", "(2.8)", "(∇_W R)(X,Y)ξ = g(W,φY)X - g(W,φX)Y + R(X,Y)φW", Arbitrary, ChartOnly, MustHold, sas_2_8),
        C::new("SAS-2.9", "(2.9)", "(∇_W R)(X,ξ)Z = g(X,Z)φW - g(Z,φW)X + R(X,φW)Z", Arbitrary, ChartOnly, MustHold, sas_2_9),
        C::new("SAS-2.10", "(2.10)", "S(X,ξ) = (n-1)η(X), S(ξ,ξ) = n-1", Arbitrary, Any, MustHold, sas_2_10),
        C::new("SAS-2.11", "(2.11)", "R(X,Y)φW = g(W,φX)Y - g(W,Y)φX - g(W,φY)X + g(W,X)φY + φR(X,Y)W", Arbitrary, Any, MustHold, sas_2_11),
        C::new("SAS-2.12", "(2.12)", "(∇_W R)(X,Y)ξ = g(W,X)φY - g(W,Y)φX + φR(X,Y)W", Arbitrary, ChartOnly, MustHold, sas_2_12),
        C::new("DEF-3.5", "(3.5)", "φ²[(R(U,V)·R)(X,Y)Z] = 0", Horizontal, Any, Claim, def_3_5),
        C::new("PRF-3.6", "(3.6)", "φ²[(R(U,V)·R)(X,Y)ξ] = 0", Horizontal, Any, Diagnostic, prf_3_6),
        C::new("PRF-3.6-3.10", "(3.6)", "η((R(U,V)·R)(X,Y)ξ) = 0", Horizontal, Any, Diagnostic, prf_3_6_eta),
        C::new("PRF-3.7", "(3.7)", "(∇²_{U,V} R)(X,Y)ξ = {g(Y,U)g(X,V) - g(X,U)g(Y,V) - R(X,Y,U,V)}ξ + φ((∇_U R)(X,Y)V)", Horizontal, ChartOnly, Diagnostic, prf_3_7).second(1e-7),
        C::new("PRF-3.7-TERM", "(3.7)", "(∇²_{U,V} R)(X,Y)ξ - [uncorrected right-hand side] = (∇_V R)(X,Y)φU", Horizontal, ChartOnly, MustHold, prf_3_7_term).second(1e-8),
        C::new("PRF-3.8", "(3.8)", "(∇²_{V,U} R)(X,Y)ξ = {g(Y,V)g(X,U) - g(X,V)g(Y,U) - R(X,Y,V,U)}ξ + φ((∇_V R)(X,Y)U)", Horizontal, ChartOnly, Diagnostic, prf_3_8).second(1e-7),
        C::new("PRF-3.9", "(3.9)", "(R(U,V)·R)(X,Y)ξ = 2{g(Y,U)g(X,V) - g(X,U)g(Y,V) - R(X,Y,U,V)}ξ + φ{(∇_U R)(X,Y)V - (∇_V R)(X,Y)U}", Horizontal, ChartOnly, Diagnostic, prf_3_9),
        C::new("PRF-3.10", "(3.10)", "(R(U,V)·R)(X,Y)ξ = 0", Horizontal, Any, Diagnostic, prf_3_10),
        C::new("PRF-3.11", "(3.11)", "2{g(Y,U)g(X,V) - g(X,U)g(Y,V) - R(X,Y,U,V)}ξ + φ{(∇_U R)(X,Y)V - (∇_V R)(X,Y)U} = 0", Horizontal, ChartOnly, Diagnostic, prf_3_11),
        C::new("PRF-3.12", "(3.12)", "(∇_U R)(X,Y)V - (∇_V R)(X,Y)U = 0", Horizontal, ChartOnly, Diagnostic, prf_3_12),
        C::new("CHL-3.13", "(3.13)", "R(X,Y,U,V) = g(Y,U)g(X,V) - g(X,U)g(Y,V)", Horizontal, Any, Diagnostic, chl_3_13),
        C::new("PRF-3.14", "(3.14)", "(R(U,V)·R)(X,Y)Z = -g((R(U,V)·R)(X,Y)ξ, Z)ξ", Horizontal, Any, Diagnostic, prf_3_14),
        C::new("PRF-3.15", "(3.15)", "(R(U,V)·R)(X,Y)Z = [(∇_U R)(X,Y,V,φZ) - (∇_V R)(X,Y,U,φZ)]ξ", Horizontal, ChartOnly, Diagnostic, prf_3_15),
        C::new("PRF-3.16a", "(3.16)", "(∇_V R)(X,Y)φZ = [R(X,Y,Z,V) - g(Y,Z)g(X,V) - g(X,Z)g(Y,V)]ξ + φ((∇_V R)(X,Y)Z)", Horizontal, ChartOnly, Claim, prf_3_16a),
        C::new("PRF-3.16b", "(3.16)", "(∇_V R)(X,Y)φZ = [R(X,Y,Z,V) - g(Y,Z)g(X,V) + g(X,Z)g(Y,V)]ξ + φ((∇_V R)(X,Y)Z)", Horizontal, ChartOnly, Claim, prf_3_16b),
        C::new("PRF-3.17", "(3.17)", "g((∇_V R)(X,Y)φZ, U) = -g((∇_V R)(X,Y)Z, φU)", Horizontal, ChartOnly, Claim, prf_3_17),
        C::new("CHR-3.18", "(3.18)", "(R(U,V)·R)(X,Y)Z = [(∇_U R)(X,Y,Z,φV) - (∇_V R)(X,Y,Z,φU)]ξ", Horizontal, ChartOnly, Claim, chr_3_18),
        C::new("L-4.1", "(4.1)", "φ²((∇_ξ R)(X,Y)Z) = 0", Horizontal, ChartOnly, MustHold, l_4_1),
        C::new("L-4.2", "(4.2)", "(∇_{φ²V} R)(φ²X,φ²Y)φ²Z = (∇_V R)(X,Y)Z + η-corrections", Arbitrary, ChartOnly, MustHold, l_4_2),
        C::new("CHR-4.3", "(4.3)", "(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z = [∇R terms + η(X){…} - η(Y){…} - 2η(Z){…}]ξ", Arbitrary, ChartOnly, Claim, chr_4_3),
        C::new("CHR-4.4", "(4.4)", "(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z = [∇R terms - η(X)H(Y,Z,U,V) + η(Y)H(X,Z,U,V) + 2η(Z)H(X,Y,U,V)]ξ", Arbitrary, ChartOnly, Claim, chr_4_4),
        C::new("H-4.5", "(4.5)", "𝓗(X,Y)Z = R(X,Y)Z - g(Y,Z)X + g(X,Z)Y vanishes", Arbitrary, Any, Diagnostic, h_4_5),
        C::new("ALG-4.6", "(4.6)", "(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z as a four-term Leibniz expansion", Arbitrary, Any, MustHold, alg_4_6),
        C::new("ALG-4.7", "(4.7)", "(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z = -(R(U,V)·R)(X,Y)Z + η(U)[…] - η(V)[…]", Arbitrary, Any, MustHold, alg_4_7),
        C::new("CHR-4.8", "(4.8)", "(R(U,V)·R)(X,Y)Z characterized for arbitrary arguments", Arbitrary, ChartOnly, Claim, chr_4_8),
        C::new("COR-SEMI", "(4.8)", "(R(U,V)·R)(X,Y)Z = 0", Arbitrary, Any, Diagnostic, cor_semi),
        C::new("RIC-5.1", "(5.1)", "φ²[(R(U,V)·Q)(X)] = 0", Horizontal, Any, Claim, ric_5_1),
        C::new("RIC-5.1Q", "(5.1)", "(R(U,V)·Q)(X) = 0", Horizontal, Any, Claim, ric_5_1q),
        C::new("RIC-5.2", "(5.2)", "(R(U,V)·Q)(X) = R(U,V)QX - QR(U,V)X", Arbitrary, Any, MustHold, ric_5_2),
        C::new("RIC-5.3", "(5.3)", "φ²[(R(U,V)·Q)(X)] = -(R(U,V)·Q)(X)", Horizontal, Any, MustHold, ric_5_3),
        C::new("ALG-5.4", "(5.4)", "(R(φ²U,φ²V)·Q)(φ²X) = -(R(U,V)·Q)(X) + {E(X,V)η(U) - E(X,U)η(V)}ξ - η(X){η(V)𝓔U - η(U)𝓔V}", Arbitrary, Any, MustHold, alg_5_4),
        C::new("E-5.5", "(5.5)", "E(X,Y) = S(X,Y) - (n-1)g(X,Y), g(𝓔X,Y) = E(X,Y), E(ξ,ξ) = 0", Arbitrary, Any, MustHold, e_5_5),
        C::new("CHR-5.6", "(5.6)", "(R(U,V)·Q)(X) = {E(X,V)η(U) - E(X,U)η(V)}ξ - η(X){η(V)𝓔U - η(U)𝓔V}", Arbitrary, Any, Claim, chr_5_6),
        C::new("DEF-5.7P", "(5.7)", "φ²[(R(U,V)·P)(X,Y)Z] = 0", Horizontal, Any, Claim, def_5_7p),
        C::new("DEF-5.7C", "(5.7)", "φ²[(R(U,V)·C)(X,Y)Z] = 0", Horizontal, Any, Claim, def_5_7c),
        C::new("P-5.8", "(5.8)", "P(X,Y)Z = R(X,Y)Z - [S(Y,Z)X - S(X,Z)Y]/(n-1), trace-free", Arbitrary, Any, MustHold, p_5_8),
        C::new("CNF-5.9", "(5.9)", "C is totally trace-free (n > 3)", Arbitrary, Any, MustHold, cnf_5_9),
        C::new("DER-5.10", "(5.10)", "(R(U,V)·P) = (R(U,V)·R) - [(R(U,V)·S)(Y,Z)X - (R(U,V)·S)(X,Z)Y]/(n-1)", Horizontal, Any, Claim, der_5_10),
        C::new("DER-5.11", "(5.11)", "φ²[(R(U,V)·P)(X,Y)Z] = -(R(U,V)·R)(X,Y)Z + [∇R terms]ξ + [S-bracket]/(n-1)", Horizontal, ChartOnly, Claim, der_5_11),
        C::new("CHR-5.12", "(5.12)", "(R(U,V)·R)(X,Y)Z = [∇R terms]ξ + [S-bracket]/(n-1)", Horizontal, ChartOnly, Claim, chr_5_12),
        C::new("CHR-5.13", "(5.13)", "(R(U,V)·S)(Y,W) = 0", Horizontal, Any, Claim, chr_5_13),
        C::new("CNF-5.14", "(5.14)", "(R(U,V)·C) = (R(U,V)·R) - [S-bracket + Q-bracket]/(n-2)", Horizontal, Any, Claim, cnf_5_14),
        C::new("CNF-5.15", "(5.15)", "φ²[(R(U,V)·C)(X,Y)Z] = -(R(U,V)·R)(X,Y)Z + [∇R terms]ξ + [S-bracket + Q-bracket]/(n-2)", Horizontal, ChartOnly, Claim, cnf_5_15),
        C::new("CHR-5.16", "(5.16)", "(R(U,V)·R)(X,Y)Z = [∇R terms]ξ + [S-bracket + Q-bracket]/(n-2)", Horizontal, ChartOnly, Claim, chr_5_16),
        C::new("CHR-5.17", "(5.17)", "(R(φ²U,φ²V)·R)(φ²X,φ²Y)φ²Z expanded with E, H and the Ricci derivations", Arbitrary, ChartOnly, Claim, chr_5_17),
        C::new("CHR-5.18", "(5.18)", "(R(U,V)·R)(X,Y)Z characterized for arbitrary arguments, conformal case", Arbitrary, ChartOnly, Claim, chr_5_18),
        C::new("B-5.19", "(5.19)", "B presets reproduce the concircular, conformal and quasi-conformal tensors", Arbitrary, Any, MustHold, b_5_19),
    ];
    for kind in PRESETS {
        r.push(C::new("DEF-5.20", "(5.20)", "φ²[(R(U,V)·B)(X,Y)Z] = 0", Horizontal, Any, Claim, def_5_20).with_preset(kind));
        r.push(C::new("B-5.21", "(5.21)", "(R(U,V)·B) = b0(R(U,V)·R) + b1[S-bracket + Q-bracket]", Horizontal, Any, Claim, b_5_21).with_preset(kind));
        r.push(C::new("B-5.22", "(5.22)", "φ²[(R(U,V)·B)(X,Y)Z] = -b0[(R(U,V)·R)(X,Y)Z - ∇R terms ξ] - b1[S-bracket + Q-bracket]", Horizontal, ChartOnly, Claim, b_5_22).with_preset(kind));
        r.push(C::new("CHR-5.23", "(5.23)", "(R(U,V)·R)(X,Y)Z = [∇R terms]ξ - (b1/b0)[S-bracket + Q-bracket]", Horizontal, ChartOnly, Claim, chr_5_23).with_preset(kind));
        r.push(C::new("COND-5.24", "(5.24)", "{b0 + (n-2)b1}(R(U,V)·S)(Y,Z) = 0", Horizontal, Any, Claim, cond_5_24).with_preset(kind));
        r.push(C::new("COND-5.25", "(5.25)", "(R(U,V)·S)(Y,Z) = 0 when b0 + (n-2)b1 != 0", Horizontal, Any, Claim, cond_5_25).with_preset(kind));
        r.push(C::new("CHR-5.26", "(5.26)", "φ²[(R(U,V)·B)(X,Y)Z] = -b0[(R(U,V)·R)(X,Y)Z - ∇R terms ξ] + b0/(n-2)[S-bracket + Q-bracket]", Horizontal, ChartOnly, Claim, chr_5_26).with_preset(kind));
        r.push(C::new("CHR-5.27", "(5.27)", "(R(U,V)·R)(X,Y)Z = [∇R terms]ξ + [S-bracket + Q-bracket]/(n-2) when b0 + (n-2)b1 = 0", Horizontal, ChartOnly, Claim, chr_5_27).with_preset(kind));
    }
    r.extend([
        C::new("ENG-METRIC", "-", "∇g = 0", Arbitrary, ChartOnly, MustHold, eng_metric),
        C::new("ENG-TORSION", "-", "Γ^k_ij = Γ^k_ji", Arbitrary, ChartOnly, MustHold, eng_torsion),
        C::new("ENG-BIANCHI1", "-", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", Arbitrary, Any, MustHold, eng_bianchi1),
        C::new("ENG-BIANCHI2", "-", "(∇_W R)(X,Y) + (∇_X R)(Y,W) + (∇_Y R)(W,X) = 0", Arbitrary, ChartOnly, MustHold, eng_bianchi2),
        C::new("ENG-RSYM", "-", "R(X,Y) = -R(Y,X), R(X,Y,Z,W) = -R(X,Y,W,Z) = R(Z,W,X,Y)", Arbitrary, Any, MustHold, eng_rsym),
        C::new("ENG-RICCI-ID", "-", "∇²_{U,V}R - ∇²_{V,U}R = R(U,V)·R", Arbitrary, ChartOnly, MustHold, eng_ricci_identity).second(1e-7),
        C::new("ENG-SKEW", "-", "g(R(U,V)Z,W) = -g(Z,R(U,V)W)", Arbitrary, Any, MustHold, eng_skew),
        C::new("ENG-DERIV-G", "-", "R(U,V)·g = 0", Arbitrary, Any, MustHold, eng_deriv_g),
        C::new("ENG-DERIV-CONTRACT", "-", "R(U,V)· commutes with contraction (R, R♭, S)", Arbitrary, Any, MustHold, eng_deriv_contract),
        C::new("ENG-KILLING", "-", "h = ½£_ξφ is symmetric and vanishes", Arbitrary, ChartOnly, MustHold, eng_killing),
        C::new("ENG-SYM-S", "-", "S(X,Y) = S(Y,X)", Arbitrary, Any, MustHold, eng_sym_s),
    ]);
    r
}

/// All registered checks, in report order.
pub fn registry() -> &'static [IdentityCheck] {
    static REGISTRY: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static IdentityCheck> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Numbered equations with no check, and why.
pub const OUT_OF_SCOPE: [(&str, &str); 4] = [
    ("(3.1)", "out-of-scope: fibration"),
    ("(3.2)", "out-of-scope: fibration"),
    ("(3.3)", "out-of-scope: fibration"),
    ("(3.4)", "out-of-scope: fibration"),
];
