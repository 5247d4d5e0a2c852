//! Truncated multivariate Taylor arithmetic.
//!
//! A [`Jet`] holds the Taylor coefficients `f^(α)(p) / α!` of a function of `n`
//! variables for every multi-index `|α| ≤ order`, with `order ≤ 4`. Products,
//! reciprocals and partial derivatives are exact in truncated-Taylor
//! semantics, so jets of polynomial metrics carry no truncation error at all.
//!
//! Coefficients are stored in graded order (all degree-0 terms, then degree 1,
//! ...), which makes a jet of order `k` a prefix of the same function's jet of
//! order `k + 1`. The index tables live in a shared [`JetSpace`] per dimension.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::tensor::Tensor;

pub const MAX_ORDER: usize = 4;

#[derive(Debug)]
pub struct JetSpace {
    n: usize,
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    len_by_order: [usize; MAX_ORDER + 1],
    /// (a, b, out) with mono[a] + mono[b] = mono[out], sorted by degree of `out`.
    mul: Vec<(u32, u32, u32)>,
    mul_end: [usize; MAX_ORDER + 1],
    /// Per variable: (src, dst, factor) for d/dx_l, sorted by degree of `dst`.
    deriv: Vec<Vec<(u32, u32, f64)>>,
    deriv_end: Vec<[usize; MAX_ORDER + 1]>,
}

fn monomials_of_degree(n: usize, d: usize) -> Vec<Vec<u8>> {
    // Graded lexicographic: first variable's exponent descending.
    fn rec(n: usize, var: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if var == n - 1 {
            cur[var] = left as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e as u8;
            rec(n, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

fn degree(m: &[u8]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl JetSpace {
    fn build(n: usize) -> Self {
        assert!(n > 0);
        let mut monomials = Vec::new();
        let mut len_by_order = [0; MAX_ORDER + 1];
        for d in 0..=MAX_ORDER {
            monomials.extend(monomials_of_degree(n, d));
            len_by_order[d] = monomials.len();
        }
        let index: HashMap<Vec<u8>, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        let mut mul = Vec::new();
        for (a, ma) in monomials.iter().enumerate() {
            for (b, mb) in monomials.iter().enumerate() {
                if degree(ma) + degree(mb) > MAX_ORDER {
                    continue;
                }
                let sum: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                mul.push((a as u32, b as u32, index[&sum] as u32));
            }
        }
        mul.sort_by_key(|&(_, _, k)| (degree(&monomials[k as usize]), k));
        let mut mul_end = [0; MAX_ORDER + 1];
        for (o, end) in mul_end.iter_mut().enumerate() {
            *end = mul.iter().take_while(|&&(_, _, k)| degree(&monomials[k as usize]) <= o).count();
        }

        let mut deriv = Vec::with_capacity(n);
        let mut deriv_end = Vec::with_capacity(n);
        for l in 0..n {
            let mut table = Vec::new();
            for (dst, m) in monomials.iter().enumerate() {
                if degree(m) >= MAX_ORDER {
                    continue;
                }
                let mut up = m.clone();
                up[l] += 1;
                table.push((index[&up] as u32, dst as u32, up[l] as f64));
            }
            let mut end = [0; MAX_ORDER + 1];
            for (o, e) in end.iter_mut().enumerate() {
                *e = table.iter().take_while(|&&(_, dst, _)| degree(&monomials[dst as usize]) <= o).count();
            }
            deriv.push(table);
            deriv_end.push(end);
        }

        JetSpace { n, monomials, index, len_by_order, mul, mul_end, deriv, deriv_end }
    }

    /// Shared tables for `n` variables.
    pub fn get(n: usize) -> Arc<JetSpace> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JetSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("jet space cache poisoned");
        guard.entry(n).or_insert_with(|| Arc::new(JetSpace::build(n))).clone()
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    /// Number of coefficients of a jet of the given order.
    pub fn len(&self, order: usize) -> usize {
        self.len_by_order[order]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn monomial(&self, i: usize) -> &[u8] {
        &self.monomials[i]
    }

    pub fn index_of(&self, multi: &[u8]) -> Option<usize> {
        self.index.get(multi).copied()
    }

    /// `out += alpha * a * b`, truncated at `order`.
    #[inline]
    pub(crate) fn mul_acc(&self, a: &[f64], b: &[f64], out: &mut [f64], order: usize, alpha: f64) {
        if order == 0 {
            out[0] += alpha * a[0] * b[0];
            return;
        }
        for &(i, j, k) in &self.mul[..self.mul_end[order]] {
            out[k as usize] += alpha * a[i as usize] * b[j as usize];
        }
    }

    /// `out += alpha * d/dx_var a`, producing coefficients up to `order`.
    #[inline]
    pub(crate) fn deriv_acc(&self, var: usize, a: &[f64], out: &mut [f64], order: usize, alpha: f64) {
        for &(src, dst, f) in &self.deriv[var][..self.deriv_end[var][order]] {
            out[dst as usize] += alpha * f * a[src as usize];
        }
    }
}

/// A truncated Taylor expansion about a fixed point.
#[derive(Clone, Debug)]
pub struct Jet {
    space: Arc<JetSpace>,
    order: usize,
    coeffs: Vec<f64>,
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.space.n == other.space.n && self.order == other.order && self.coeffs == other.coeffs
    }
}

impl Jet {
    pub fn constant(space: &Arc<JetSpace>, order: usize, value: f64) -> Self {
        assert!(order <= MAX_ORDER);
        let mut coeffs = vec![0.0; space.len(order)];
        coeffs[0] = value;
        Jet { space: space.clone(), order, coeffs }
    }

    /// The coordinate function `x_var`, expanded about a point where it equals `at`.
    pub fn variable(space: &Arc<JetSpace>, order: usize, var: usize, at: f64) -> Self {
        assert!(var < space.n);
        let mut j = Jet::constant(space, order, at);
        if order >= 1 {
            j.coeffs[1 + var] = 1.0;
        }
        j
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, order: usize, coeffs: Vec<f64>) -> Result<Self> {
        if order > MAX_ORDER || coeffs.len() != space.len(order) {
            return Err(Error::arg("jet coefficient count does not match order"));
        }
        Ok(Jet { space: space.clone(), order, coeffs })
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor coefficient for a multi-index; zero beyond the jet's order.
    pub fn coeff(&self, multi: &[u8]) -> f64 {
        if degree(multi) > self.order {
            return 0.0;
        }
        self.space.index_of(multi).map_or(0.0, |i| self.coeffs[i])
    }

    /// The partial derivative `∂^α f` at the expansion point.
    pub fn partial(&self, multi: &[u8]) -> f64 {
        let fact: f64 = multi.iter().map(|&e| (1..=e as u64).product::<u64>() as f64).product();
        self.coeff(multi) * fact
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        Jet { space: self.space.clone(), order, coeffs: self.coeffs[..self.space.len(order)].to_vec() }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| c * s).collect(), ..self.clone() }
    }

    pub fn derivative(&self, var: usize) -> Result<Jet> {
        if self.order == 0 {
            return Err(Error::arg("cannot differentiate an order-0 jet"));
        }
        if var >= self.space.n {
            return Err(Error::arg(format!("variable {var} out of range")));
        }
        let order = self.order - 1;
        let mut coeffs = vec![0.0; self.space.len(order)];
        self.space.deriv_acc(var, &self.coeffs, &mut coeffs, order, 1.0);
        Ok(Jet { space: self.space.clone(), order, coeffs })
    }

    /// `1/f` via the geometric series in the non-constant part.
    pub fn recip(&self) -> Result<Jet> {
        let a0 = self.value();
        if a0 == 0.0 || !a0.is_finite() {
            return Err(Error::Numeric(format!("reciprocal of a jet with value {a0}")));
        }
        // 1/(a0 + d) = (1/a0) * sum_k (-d/a0)^k
        let mut t = self.scale(-1.0 / a0);
        t.coeffs[0] = 0.0;
        let mut acc = Jet::constant(&self.space, self.order, 1.0);
        for _ in 0..self.order {
            acc = &(&acc * &t) + &Jet::constant(&self.space, self.order, 1.0);
        }
        Ok(acc.scale(1.0 / a0))
    }

    fn check(&self, other: &Jet) {
        assert_eq!(self.space.n, other.space.n, "jets over different variable counts");
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.check(rhs);
        let order = self.order.min(rhs.order);
        let len = self.space.len(order);
        let coeffs = self.coeffs[..len].iter().zip(&rhs.coeffs[..len]).map(|(a, b)| a + b).collect();
        Jet { space: self.space.clone(), order, coeffs }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self + &(-rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.check(rhs);
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![0.0; self.space.len(order)];
        self.space.mul_acc(&self.coeffs, &rhs.coeffs, &mut coeffs, order, 1.0);
        Jet { space: self.space.clone(), order, coeffs }
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

/// A tensor whose components are jets of a common order, stored contiguously:
/// component `c` occupies `data[c * stride .. (c + 1) * stride]`.
#[derive(Clone, Debug)]
pub struct JetTensor {
    space: Arc<JetSpace>,
    contra: usize,
    co: usize,
    order: usize,
    stride: usize,
    data: Vec<f64>,
}

impl JetTensor {
    pub fn zeros(space: &Arc<JetSpace>, contra: usize, co: usize, order: usize) -> Self {
        let ncomp = space.n.pow((contra + co) as u32);
        let stride = space.len(order);
        JetTensor { space: space.clone(), contra, co, order, stride, data: vec![0.0; ncomp * stride] }
    }

    pub fn from_jets(space: &Arc<JetSpace>, contra: usize, co: usize, jets: &[Jet]) -> Result<Self> {
        let ncomp = space.n.pow((contra + co) as u32);
        if jets.len() != ncomp {
            return Err(Error::arg(format!("expected {ncomp} jet components, got {}", jets.len())));
        }
        let order = jets.iter().map(Jet::order).min().unwrap_or(MAX_ORDER);
        let mut t = JetTensor::zeros(space, contra, co, order);
        let len = t.stride;
        for (c, j) in jets.iter().enumerate() {
            t.comp_mut(c).copy_from_slice(&j.coeffs[..len]);
        }
        Ok(t)
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.n
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.contra, self.co)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ncomp(&self) -> usize {
        self.data.len() / self.stride
    }

    #[inline]
    pub(crate) fn comp(&self, c: usize) -> &[f64] {
        &self.data[c * self.stride..(c + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn comp_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.data[c * self.stride..(c + 1) * self.stride]
    }

    pub fn jet(&self, idx: &[usize]) -> Jet {
        let c = crate::tensor::encode(idx, self.dim());
        Jet { space: self.space.clone(), order: self.order, coeffs: self.comp(c).to_vec() }
    }

    /// Zeroth-order part as a plain tensor.
    pub fn value(&self) -> Tensor {
        let vals = (0..self.ncomp()).map(|c| self.data[c * self.stride]).collect();
        Tensor::from_vec(self.dim(), self.contra, self.co, vals).expect("jet tensor shape")
    }

    pub fn truncate(&self, order: usize) -> JetTensor {
        let order = order.min(self.order);
        let mut t = JetTensor::zeros(&self.space, self.contra, self.co, order);
        for c in 0..self.ncomp() {
            let len = t.stride;
            t.comp_mut(c).copy_from_slice(&self.comp(c)[..len]);
        }
        t
    }

    /// Largest absolute coefficient over all components and orders.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
