//! Orthonormal φ-frames `(ξ, f_1..f_m, φf_1..φf_m)` at chart points.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::manifolds::geometry::GeometryAtPoint;
use crate::tensor::{Tensor, Vector};

/// Columns are the frame vectors in coordinates. Candidates are the
/// coordinate vectors in order; each is g-orthogonalized against the frame so
/// far, normalized, and paired with its image under φ.
pub fn adapted_frame(geom: &GeometryAtPoint) -> Result<DMatrix<f64>> {
    let n = geom.n;
    if n.is_multiple_of(2) {
        return Err(Error::arg("adapted frame needs odd dimension"));
    }
    let m = (n - 1) / 2;
    let xi = geom.xi_vec();
    let mut frame = vec![Vector::zeros(n); n];
    frame[0] = &xi / geom.gp(&xi, &xi).sqrt();
    let mut done = vec![frame[0].clone()];
    let mut i = 1;
    for k in 0..n {
        if i > m {
            break;
        }
        let mut v = Vector::zeros(n);
        v[k] = 1.0;
        for f in &done {
            v -= f * geom.gp(&v, f);
        }
        let norm = geom.gp(&v, &v).sqrt();
        if norm < 1e-6 {
            continue;
        }
        v /= norm;
        let pv = geom.phi_of(&v);
        frame[i] = v.clone();
        frame[m + i] = pv.clone();
        done.push(v);
        done.push(pv);
        i += 1;
    }
    if i <= m {
        return Err(Error::Numeric("could not complete an adapted frame".into()));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| frame[c][r]))
}

/// Components of `t` with respect to the frame whose columns are `f`.
pub fn express_in_frame(t: &Tensor, f: &DMatrix<f64>) -> Result<Tensor> {
    let coframe = f
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numeric("frame matrix is singular".into()))?;
    let (p, q) = t.valence();
    let ft = f.transpose();
    let mut out = t.clone();
    for slot in 0..p + q {
        out = out.transform_slot(slot, if slot < p { &coframe } else { &ft })?;
    }
    Ok(out)
}
