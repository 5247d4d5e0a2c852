use crate::tensor::{Tensor, Vector};

/// Accumulates the summands of an identity written as `Σ terms = 0`.
///
/// The absolute residual is the largest entry of the sum; the scale is one
/// plus the largest entry of any summand, so `abs / scale` is comparable
/// across identities whose terms differ in size.
#[derive(Clone, Debug, Default)]
pub struct Balance {
    sum: Vec<f64>,
    largest: f64,
}

fn max_abs(data: &[f64]) -> f64 {
    data.iter().fold(0.0, |m: f64, v| if v.is_nan() { f64::INFINITY } else { m.max(v.abs()) })
}

impl Balance {
    pub fn new() -> Self {
        Self::default()
    }

    fn acc(mut self, data: &[f64], sign: f64) -> Self {
        if self.sum.is_empty() {
            self.sum = vec![0.0; data.len()];
        }
        assert_eq!(self.sum.len(), data.len(), "summands of different shapes");
        for (s, d) in self.sum.iter_mut().zip(data) {
            *s += sign * d;
        }
        self.largest = self.largest.max(max_abs(data));
        self
    }

    pub fn plus(self, v: &Vector) -> Self {
        self.acc(v.as_slice(), 1.0)
    }

    pub fn minus(self, v: &Vector) -> Self {
        self.acc(v.as_slice(), -1.0)
    }

    pub fn plus_s(self, s: f64) -> Self {
        self.acc(&[s], 1.0)
    }

    pub fn minus_s(self, s: f64) -> Self {
        self.acc(&[s], -1.0)
    }

    pub fn plus_t(self, t: &Tensor) -> Self {
        self.acc(t.data(), 1.0)
    }

    pub fn minus_t(self, t: &Tensor) -> Self {
        self.acc(t.data(), -1.0)
    }

    /// Widens the scale by the size of an intermediate quantity that cancels
    /// before it shows up as a summand.
    pub fn hint(mut self, size: f64) -> Self {
        self.largest = self.largest.max(if size.is_nan() { f64::INFINITY } else { size.abs() });
        self
    }

    /// Treats two independent identities as one check.
    pub fn join(mut self, other: Balance) -> Self {
        self.sum.extend(other.sum);
        self.largest = self.largest.max(other.largest);
        self
    }

    pub fn abs(&self) -> f64 {
        max_abs(&self.sum)
    }

    pub fn scale(&self) -> f64 {
        1.0 + self.largest
    }

    pub fn rel(&self) -> f64 {
        self.abs() / self.scale()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let a = Vector::from_vec(vec![1.0, 2.0]);
        let b = Balance::new().plus(&a).minus(&a);
        assert_eq!(b.abs(), 0.0);
        assert_eq!(b.scale(), 3.0);
    }

    #[test]
    fn nan_is_never_small() {
        let b = Balance::new().plus_s(f64::NAN);
        assert_eq!(b.abs(), f64::INFINITY);
    }

    #[test]
    fn join_keeps_worst() {
        let b = Balance::new().plus_s(1e-3).join(Balance::new().plus_s(2.0).minus_s(2.0));
        assert_eq!(b.abs(), 1e-3);
        assert_eq!(b.scale(), 3.0);
    }
}
