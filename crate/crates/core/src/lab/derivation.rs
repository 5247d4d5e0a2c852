//! The curvature operator `R(U,V)` acting as a derivation of the tensor algebra.

use crate::error::{Error, Result};
use crate::manifolds::GeometryAtPoint;
use crate::tensor::{Tensor, Vector};

/// The endomorphism `Z ↦ R(U,V)Z` as a (1,1) tensor `[a][z]`.
pub fn curvature_endo(geom: &GeometryAtPoint, u: &Vector, v: &Vector) -> Tensor {
    geom.riemann
        .contract_vector(0, u.as_slice())
        .and_then(|t| t.contract_vector(0, v.as_slice()))
        .expect("riemann tensor has valence (1,3)")
}

/// Leibniz action of a (1,1) endomorphism `l`: `+l` on every contravariant
/// slot, `-lᵀ` on every covariant slot.
pub fn derive_with(l: &Tensor, t: &Tensor) -> Result<Tensor> {
    if l.valence() != (1, 1) || l.dim() != t.dim() {
        return Err(Error::arg("derivation needs a (1,1) endomorphism of matching dimension"));
    }
    let m = l.to_matrix()?;
    let mt = m.transpose();
    let (p, q) = t.valence();
    let mut out = Tensor::zeros(t.dim(), p, q);
    for slot in 0..p + q {
        if slot < p {
            out += &t.transform_slot(slot, &m)?;
        } else {
            out += &(-&t.transform_slot(slot, &mt)?);
        }
    }
    Ok(out)
}

/// `R(U,V)·T`.
pub fn derive_tensor(geom: &GeometryAtPoint, u: &Vector, v: &Vector, t: &Tensor) -> Result<Tensor> {
    derive_with(&curvature_endo(geom, u, v), t)
}

/// Applies `φ²` to the first contravariant slot.
pub fn phi2_apply(geom: &GeometryAtPoint, t: &Tensor) -> Result<Tensor> {
    if t.valence().0 == 0 {
        return Err(Error::arg("φ² needs a contravariant slot to act on"));
    }
    let phi = geom.phi.to_matrix()?;
    t.transform_slot(0, &(&phi * &phi))
}

fn require_horizontal(geom: &GeometryAtPoint, vs: &[&Vector]) -> Result<()> {
    for v in vs {
        if geom.eta_of(v).abs() > 1e-10 * (1.0 + v.amax()) {
            return Err(Error::arg("argument is not horizontal"));
        }
    }
    Ok(())
}

/// The right-hand side obtained by differentiating the `(∇_V R)(X,Y)ξ`
/// identity along `U` without correcting for `∇_U ξ`:
/// `{g(Y,U)g(X,V) - g(X,U)g(Y,V) - R(X,Y,U,V)}ξ + φ((∇_U R)(X,Y)V)`.
pub fn literal_second_derivative_xi(
    geom: &GeometryAtPoint,
    u: &Vector,
    v: &Vector,
    x: &Vector,
    y: &Vector,
) -> Result<Vector> {
    require_horizontal(geom, &[u, v, x, y])?;
    let nr = geom.nabla_r(u, x, y, v)?;
    let c = geom.gp(y, u) * geom.gp(x, v) - geom.gp(x, u) * geom.gp(y, v) - geom.r_flat(x, y, u, v);
    Ok(geom.xi_vec() * c + geom.phi_of(&nr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::sampling::stream_rng;
    use crate::manifolds::{darboux_geometry, sample_vectors, space_form_geometry, InputClass};

    #[test]
    fn endo_of_equal_arguments_vanishes() {
        let geom = darboux_geometry(2, &[0.1, 0.4, -0.3, 0.8, 0.2]).unwrap();
        let mut rng = stream_rng(9, 0);
        let v = sample_vectors(&geom, InputClass::Arbitrary, 1, &mut rng);
        assert!(curvature_endo(&geom, &v[0], &v[0]).max_norm() < 1e-14);
    }

    #[test]
    fn metric_is_annihilated() {
        let geom = darboux_geometry(2, &[0.1, 0.4, -0.3, 0.8, 0.2]).unwrap();
        let mut rng = stream_rng(9, 1);
        let v = sample_vectors(&geom, InputClass::Arbitrary, 2, &mut rng);
        let d = derive_tensor(&geom, &v[0], &v[1], &geom.g).unwrap();
        assert!(d.max_norm() < 1e-12);
    }

    #[test]
    fn unit_space_form_is_semisymmetric() {
        let geom = space_form_geometry(2, 1.0).unwrap();
        let mut rng = stream_rng(9, 2);
        let v = sample_vectors(&geom, InputClass::Arbitrary, 2, &mut rng);
        let d = derive_tensor(&geom, &v[0], &v[1], &geom.riemann).unwrap();
        assert!(d.max_norm() < 1e-14);
        assert!(phi2_apply(&geom, &d).unwrap().max_norm() < 1e-14);
    }

    #[test]
    fn phi2_on_xi_and_idempotence() {
        let geom = darboux_geometry(1, &[0.3, -0.6, 0.5]).unwrap();
        assert!(phi2_apply(&geom, &geom.xi).unwrap().max_norm() < 1e-14);
        assert!(phi2_apply(&geom, &geom.eta).is_err());
        let mut rng = stream_rng(9, 3);
        let h = sample_vectors(&geom, InputClass::Horizontal, 1, &mut rng);
        let t = Tensor::vector(h[0].as_slice());
        let once = phi2_apply(&geom, &t).unwrap();
        let twice = phi2_apply(&geom, &once).unwrap();
        assert!((&twice + &once).max_norm() < 1e-12);
    }

    #[test]
    fn literal_second_derivative_rejects_vertical_input() {
        let geom = darboux_geometry(1, &[0.3, -0.6, 0.5]).unwrap();
        let xi = geom.xi_vec();
        let err = literal_second_derivative_xi(&geom, &xi, &xi, &xi, &xi).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }
}
