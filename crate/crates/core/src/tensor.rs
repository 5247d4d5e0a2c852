//! Dense multi-index tensors.
//!
//! A [`Tensor`] of valence `(p, q)` over dimension `n` stores `n^(p+q)` reals in
//! row-major order. Contravariant slots always precede covariant slots, so a
//! `(1, 3)` curvature tensor is laid out as `[a][x][y][z]`.
//!
//! Slot arguments to [`Tensor::contract`], [`Tensor::raise_index`] and
//! [`Tensor::lower_index`] are relative: `up_slot` counts contravariant slots,
//! `down_slot` counts covariant slots.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    dim: usize,
    contra: usize,
    co: usize,
    data: Vec<f64>,
}

/// Slot permutation: output slot `k` is input slot `perm[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::arg(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Permutation(perm))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn transposition(len: usize, a: usize, b: usize) -> Result<Self> {
        if a >= len || b >= len {
            return Err(Error::arg(format!("transposition ({a} {b}) out of range for {len} slots")));
        }
        let mut p: Vec<usize> = (0..len).collect();
        p.swap(a, b);
        Ok(Permutation(p))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &p) in self.0.iter().enumerate() {
            inv[p] = k;
        }
        Permutation(inv)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn pow(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

/// Row-major multi-index decoding into `out`.
pub(crate) fn decode(mut flat: usize, dim: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

pub(crate) fn encode(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

pub(crate) fn check_metric(m: &Tensor, contra: usize, co: usize, what: &str) -> Result<()> {
    if m.valence() != (contra, co) {
        return Err(Error::arg(format!("{what} must have valence ({contra},{co})")));
    }
    let mat = m.to_matrix()?;
    let scale = 1.0 + m.max_norm();
    if (&mat - mat.transpose()).amax() > 1e-12 * scale {
        return Err(Error::Numeric(format!("{what} is not symmetric")));
    }
    if mat.clone().cholesky().is_none() {
        let eig = mat.symmetric_eigen();
        let max = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let min = eig.eigenvalues.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
        return Err(Error::Numeric(format!(
            "{what} is not positive-definite (condition number {:.3e})",
            if min > 0.0 { max / min } else { f64::INFINITY }
        )));
    }
    Ok(())
}

impl Tensor {
    pub fn zeros(dim: usize, contra: usize, co: usize) -> Self {
        assert!(dim > 0, "tensor dimension must be positive");
        Tensor { dim, contra, co, data: vec![0.0; pow(dim, contra + co)] }
    }

    pub fn from_vec(dim: usize, contra: usize, co: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::arg("tensor dimension must be positive"));
        }
        let expected = pow(dim, contra + co);
        if data.len() != expected {
            return Err(Error::arg(format!(
                "({contra},{co}) tensor over dim {dim} needs {expected} entries, got {}",
                data.len()
            )));
        }
        Ok(Tensor { dim, contra, co, data })
    }

    pub fn from_fn(dim: usize, contra: usize, co: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Tensor::zeros(dim, contra, co);
        let mut idx = vec![0; contra + co];
        for (flat, v) in t.data.iter_mut().enumerate() {
            decode(flat, dim, &mut idx);
            *v = f(&idx);
        }
        t
    }

    pub fn scalar(dim: usize, value: f64) -> Self {
        Tensor { dim, contra: 0, co: 0, data: vec![value] }
    }

    pub fn vector(v: &[f64]) -> Self {
        Tensor { dim: v.len(), contra: 1, co: 0, data: v.to_vec() }
    }

    pub fn covector(v: &[f64]) -> Self {
        Tensor { dim: v.len(), contra: 0, co: 1, data: v.to_vec() }
    }

    /// The `(1,1)` identity endomorphism.
    pub fn identity(dim: usize) -> Self {
        Tensor::from_fn(dim, 1, 1, |i| if i[0] == i[1] { 1.0 } else { 0.0 })
    }

    /// Rank-2 tensor from a square matrix, first slot indexing rows.
    pub fn from_matrix(m: &DMatrix<f64>, contra: usize, co: usize) -> Result<Self> {
        if m.nrows() != m.ncols() || contra + co != 2 {
            return Err(Error::arg("from_matrix needs a square matrix and a rank-2 valence"));
        }
        Ok(Tensor::from_fn(m.nrows(), contra, co, |i| m[(i[0], i[1])]))
    }

    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        if self.rank() != 2 {
            return Err(Error::arg(format!("rank {} tensor is not a matrix", self.rank())));
        }
        Ok(DMatrix::from_row_slice(self.dim, self.dim, &self.data))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.contra, self.co)
    }

    pub fn rank(&self) -> usize {
        self.contra + self.co
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank());
        self.data[encode(idx, self.dim)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        debug_assert_eq!(idx.len(), self.rank());
        let k = encode(idx, self.dim);
        self.data[k] = value;
    }

    /// Maximum absolute entry; the residual metric used by every check.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim || self.valence() != other.valence() {
            return Err(Error::arg(format!(
                "shape mismatch: ({},{}) dim {} vs ({},{}) dim {}",
                self.contra, self.co, self.dim, other.contra, other.co, other.dim
            )));
        }
        Ok(())
    }

    pub fn max_diff(&self, other: &Tensor) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Trace over one contravariant and one covariant slot.
    pub fn contract(&self, up_slot: usize, down_slot: usize) -> Result<Tensor> {
        if up_slot >= self.contra {
            return Err(Error::arg(format!(
                "contract: up slot {up_slot} not among {} contravariant slots",
                self.contra
            )));
        }
        if down_slot >= self.co {
            return Err(Error::arg(format!(
                "contract: down slot {down_slot} not among {} covariant slots",
                self.co
            )));
        }
        let n = self.dim;
        let up_abs = up_slot;
        let down_abs = self.contra + down_slot;
        let mut out = Tensor::zeros(n, self.contra - 1, self.co - 1);
        let mut oidx = vec![0; out.rank()];
        let mut iidx = vec![0; self.rank()];
        for flat in 0..out.data.len() {
            decode(flat, n, &mut oidx);
            let mut src = oidx.iter();
            for (abs, slot) in iidx.iter_mut().enumerate() {
                if abs != up_abs && abs != down_abs {
                    *slot = *src.next().unwrap();
                }
            }
            let mut s = 0.0;
            for k in 0..n {
                iidx[up_abs] = k;
                iidx[down_abs] = k;
                s += self.data[encode(&iidx, n)];
            }
            out.data[flat] = s;
        }
        Ok(out)
    }

    /// Outer product. Contravariant slots of `self` then `other`, followed by
    /// covariant slots of `self` then `other`.
    pub fn tensor_product(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim {
            return Err(Error::arg(format!("tensor_product: dim {} vs {}", self.dim, other.dim)));
        }
        let n = self.dim;
        let (p1, q1) = self.valence();
        let (p2, q2) = other.valence();
        let mut ia = vec![0; p1 + q1];
        let mut ib = vec![0; p2 + q2];
        Ok(Tensor::from_fn(n, p1 + p2, q1 + q2, |i| {
            ia[..p1].copy_from_slice(&i[..p1]);
            ib[..p2].copy_from_slice(&i[p1..p1 + p2]);
            ia[p1..].copy_from_slice(&i[p1 + p2..p1 + p2 + q1]);
            ib[p2..].copy_from_slice(&i[p1 + p2 + q1..]);
            self.data[encode(&ia, n)] * other.data[encode(&ib, n)]
        }))
    }

    /// Raises covariant slot `slot` with the inverse metric. The new
    /// contravariant slot is appended after the existing contravariant slots.
    pub fn raise_index(&self, slot: usize, g_inv: &Tensor) -> Result<Tensor> {
        if slot >= self.co {
            return Err(Error::arg(format!("raise_index: slot {slot} not among {} covariant slots", self.co)));
        }
        if g_inv.dim != self.dim {
            return Err(Error::arg("raise_index: metric dimension mismatch"));
        }
        check_metric(g_inv, 2, 0, "inverse metric")?;
        let n = self.dim;
        let (p, q) = self.valence();
        let src_abs = p + slot;
        let mut iidx = vec![0; p + q];
        Ok(Tensor::from_fn(n, p + 1, q - 1, |o| {
            // o = [a_1..a_p, new][b without slot]
            iidx[..p].copy_from_slice(&o[..p]);
            let mut rest = o[p + 1..].iter();
            for (k, v) in iidx[p..].iter_mut().enumerate() {
                if k != slot {
                    *v = *rest.next().unwrap();
                }
            }
            let new = o[p];
            (0..n)
                .map(|k| {
                    iidx[src_abs] = k;
                    g_inv.data[new * n + k] * self.data[encode(&iidx, n)]
                })
                .sum()
        }))
    }

    /// Lowers contravariant slot `slot` with the metric. The new covariant slot
    /// is appended after the existing covariant slots, so lowering the output
    /// slot of `R(X,Y)Z` gives `R(X,Y,Z,W) = g(R(X,Y)Z, W)`.
    pub fn lower_index(&self, slot: usize, g: &Tensor) -> Result<Tensor> {
        if slot >= self.contra {
            return Err(Error::arg(format!(
                "lower_index: slot {slot} not among {} contravariant slots",
                self.contra
            )));
        }
        if g.dim != self.dim {
            return Err(Error::arg("lower_index: metric dimension mismatch"));
        }
        check_metric(g, 0, 2, "metric")?;
        let n = self.dim;
        let (p, q) = self.valence();
        let mut iidx = vec![0; p + q];
        Ok(Tensor::from_fn(n, p - 1, q + 1, |o| {
            // o = [a without slot][b_1..b_q, new]
            let mut ups = o[..p - 1].iter();
            for (k, v) in iidx[..p].iter_mut().enumerate() {
                if k != slot {
                    *v = *ups.next().unwrap();
                }
            }
            iidx[p..].copy_from_slice(&o[p - 1..p - 1 + q]);
            let new = o[p - 1 + q];
            (0..n)
                .map(|k| {
                    iidx[slot] = k;
                    g.data[new * n + k] * self.data[encode(&iidx, n)]
                })
                .sum()
        }))
    }

    /// Reorders slots. Contravariant slots may only move among themselves, and
    /// likewise for covariant slots.
    pub fn permute(&self, perm: &Permutation) -> Result<Tensor> {
        if perm.len() != self.rank() {
            return Err(Error::arg(format!(
                "permutation of length {} applied to rank {} tensor",
                perm.len(),
                self.rank()
            )));
        }
        let p = self.contra;
        for (k, &src) in perm.as_slice().iter().enumerate() {
            if (k < p) != (src < p) {
                return Err(Error::arg(format!(
                    "permutation moves slot {src} across the contravariant/covariant boundary"
                )));
            }
        }
        let n = self.dim;
        let mut iidx = vec![0; self.rank()];
        Ok(Tensor::from_fn(n, self.contra, self.co, |o| {
            for (k, &src) in perm.as_slice().iter().enumerate() {
                iidx[src] = o[k];
            }
            self.data[encode(&iidx, n)]
        }))
    }

    /// Applies `m` to absolute slot `slot`: `new[..i..] = sum_j m[(i,j)] old[..j..]`.
    /// Change of basis uses the coframe on contravariant slots and the
    /// transposed frame on covariant ones.
    pub fn transform_slot(&self, slot: usize, m: &DMatrix<f64>) -> Result<Tensor> {
        if slot >= self.rank() || m.nrows() != self.dim || m.ncols() != self.dim {
            return Err(Error::arg("transform_slot: slot or matrix shape out of range"));
        }
        let n = self.dim;
        let mut iidx = vec![0; self.rank()];
        Ok(Tensor::from_fn(n, self.contra, self.co, |o| {
            iidx.copy_from_slice(o);
            (0..n)
                .map(|j| {
                    iidx[slot] = j;
                    m[(o[slot], j)] * self.data[encode(&iidx, n)]
                })
                .sum()
        }))
    }

    /// Contracts covariant slot `slot` with a vector, removing that slot.
    pub fn contract_vector(&self, slot: usize, v: &[f64]) -> Result<Tensor> {
        if slot >= self.co || v.len() != self.dim {
            return Err(Error::arg("contract_vector: slot out of range or dimension mismatch"));
        }
        let n = self.dim;
        let abs = self.contra + slot;
        let inner = pow(n, self.rank() - abs - 1);
        let outer = pow(n, abs);
        let mut out = Tensor::zeros(n, self.contra, self.co - 1);
        for o in 0..outer {
            for k in 0..n {
                let vk = v[k];
                if vk == 0.0 {
                    continue;
                }
                let src = &self.data[(o * n + k) * inner..(o * n + k + 1) * inner];
                let dst = &mut out.data[o * inner..(o + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += vk * s;
                }
            }
        }
        Ok(out)
    }

    /// Feeds vectors into every covariant slot, leaving the contravariant part.
    pub fn eval(&self, args: &[&[f64]]) -> Result<Tensor> {
        if args.len() != self.co {
            return Err(Error::arg(format!("eval: {} arguments for {} covariant slots", args.len(), self.co)));
        }
        let n = self.dim;
        let mut cur = self.data.clone();
        for v in args.iter().rev() {
            if v.len() != n {
                return Err(Error::arg("eval: argument dimension mismatch"));
            }
            cur = cur.chunks_exact(n).map(|c| c.iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect();
        }
        Tensor::from_vec(n, self.contra, 0, cur)
    }

    /// [`Tensor::eval`] for tensors with one contravariant slot.
    pub fn eval_vector(&self, args: &[&Vector]) -> Vector {
        assert_eq!(self.contra, 1, "eval_vector needs exactly one contravariant slot");
        let a: Vec<&[f64]> = args.iter().map(|v| v.as_slice()).collect();
        Vector::from_vec(self.eval(&a).expect("eval_vector").into_data())
    }

    /// [`Tensor::eval`] for tensors with no contravariant slot.
    pub fn eval_scalar(&self, args: &[&Vector]) -> f64 {
        assert_eq!(self.contra, 0, "eval_scalar needs a covariant tensor");
        let a: Vec<&[f64]> = args.iter().map(|v| v.as_slice()).collect();
        self.eval(&a).expect("eval_scalar").data[0]
    }

    pub fn as_vector(&self) -> Vector {
        Vector::from_column_slice(&self.data)
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor { data: self.data.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(f64, f64) -> f64) -> Tensor {
        self.check_same_shape(other).expect("tensor arithmetic");
        Tensor {
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
            ..self.clone()
        }
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: f64) -> Tensor {
        self.scale(rhs)
    }
}

impl AddAssign<&Tensor> for Tensor {
    fn add_assign(&mut self, rhs: &Tensor) {
        self.check_same_shape(rhs).expect("tensor arithmetic");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metric3() -> Tensor {
        let m = DMatrix::from_row_slice(3, 3, &[2.0, 0.3, 0.1, 0.3, 1.5, -0.2, 0.1, -0.2, 1.0]);
        Tensor::from_matrix(&m, 0, 2).unwrap()
    }

    fn inverse(g: &Tensor) -> Tensor {
        Tensor::from_matrix(&g.to_matrix().unwrap().try_inverse().unwrap(), 2, 0).unwrap()
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let t = Tensor::identity(5).contract(0, 0).unwrap();
        assert_eq!(t.valence(), (0, 0));
        assert_eq!(t.data()[0], 5.0);
    }

    #[test]
    fn pairing_by_contraction() {
        let u = Tensor::vector(&[1.0, 2.0, -1.0]);
        let a = Tensor::covector(&[0.5, -1.0, 3.0]);
        let s = u.tensor_product(&a).unwrap().contract(0, 0).unwrap();
        assert!((s.data()[0] - (0.5 - 2.0 - 3.0)).abs() < 1e-15);
    }

    #[test]
    fn product_valence_adds() {
        let g = metric3();
        assert_eq!(g.tensor_product(&g).unwrap().valence(), (0, 4));
    }

    #[test]
    fn eta_xi_pairing() {
        let eta = Tensor::covector(&[0.0, 0.0, 1.0]);
        let xi = Tensor::vector(&[0.0, 0.0, 1.0]);
        // (eta (x) xi) is the (1,1) tensor xi eta(.); evaluated on xi gives xi, and eta(xi) = 1.
        let exi = eta.tensor_product(&xi).unwrap();
        assert_eq!(exi.valence(), (1, 1));
        let v = exi.eval(&[xi.data()]).unwrap();
        assert_eq!(eta.eval(&[v.data()]).unwrap().data()[0], 1.0);
    }

    #[test]
    fn contraction_errors() {
        let t = Tensor::identity(3);
        assert!(matches!(t.contract(1, 0), Err(Error::Argument(_))));
        assert!(matches!(t.contract(0, 1), Err(Error::Argument(_))));
        assert!(Tensor::covector(&[1.0, 2.0]).tensor_product(&Tensor::vector(&[1.0])).is_err());
    }

    #[test]
    fn lowering_identity_gives_metric() {
        let g = metric3();
        let l = Tensor::identity(3).lower_index(0, &g).unwrap();
        assert_eq!(l.valence(), (0, 2));
        assert!(l.max_diff(&g).unwrap() < 1e-15);
    }

    #[test]
    fn lower_raise_round_trip() {
        let g = metric3();
        let gi = inverse(&g);
        let t = Tensor::from_fn(3, 1, 2, |i| (i[0] as f64 + 1.0) * 0.7 - i[1] as f64 + 0.3 * i[2] as f64);
        let back = t.lower_index(0, &g).unwrap().raise_index(2, &gi).unwrap();
        assert!(back.max_diff(&t).unwrap() < 1e-12);
    }

    #[test]
    fn singular_metric_is_numeric_error() {
        let g = Tensor::from_matrix(&DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]), 0, 2).unwrap();
        let err = Tensor::vector(&[1.0, 0.0]).lower_index(0, &g).unwrap_err();
        match err {
            Error::Numeric(msg) => assert!(msg.contains("condition")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn permutation_round_trip_and_symmetry() {
        let g = metric3();
        assert_eq!(g.permute(&Permutation::identity(2)).unwrap(), g);
        let swapped = g.permute(&Permutation::transposition(2, 0, 1).unwrap()).unwrap();
        let anti = (&g - &swapped).scale(0.5);
        assert_eq!(anti.max_norm(), 0.0);
        assert_eq!(Tensor::zeros(4, 1, 2).max_norm(), 0.0);
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        let t = Tensor::identity(3);
        let p = Permutation::transposition(2, 0, 1).unwrap();
        assert!(matches!(t.permute(&p), Err(Error::Argument(_))));
        assert!(t.permute(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn eval_matches_contract_vector() {
        let t = Tensor::from_fn(3, 1, 3, |i| (i[0] * 7 + i[1] * 3 + i[2] * 2 + i[3]) as f64 * 0.1 - 1.0);
        let x = [0.2, -0.5, 1.0];
        let y = [1.0, 0.3, -0.7];
        let z = [-0.4, 0.9, 0.1];
        let e = t.eval(&[&x, &y, &z]).unwrap();
        let c = t
            .contract_vector(0, &x)
            .unwrap()
            .contract_vector(0, &y)
            .unwrap()
            .contract_vector(0, &z)
            .unwrap();
        assert!(e.max_diff(&c).unwrap() < 1e-14);
    }
}
