//! Truncated Taylor series ("jets") for exact derivative propagation through
//! normalization, products, and the arc-length chain rule.
//!
//! Coefficient `k` of a jet at `t0` holds `f^(k)(t0) / k!`. Every operation
//! truncates to the shorter operand, so a jet never claims more derivative
//! orders than its inputs support.

use std::ops::{Add, Mul, Neg, Sub};

use crate::vec3::Vec3;

pub const JET_CAPACITY: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; JET_CAPACITY],
    len: usize,
}

impl Jet {
    /// Builds from Taylor coefficients.
    pub fn from_coeffs(coeffs: &[f64]) -> Jet {
        assert!(!coeffs.is_empty() && coeffs.len() <= JET_CAPACITY);
        let mut c = [0.0; JET_CAPACITY];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Jet { c, len: coeffs.len() }
    }

    /// Builds from derivative values `f, f', f'', ...`.
    pub fn from_derivatives(derivs: &[f64]) -> Jet {
        let mut coeffs = [0.0; JET_CAPACITY];
        let mut fact = 1.0;
        for (k, d) in derivs.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            coeffs[k] = d / fact;
        }
        Jet::from_coeffs(&coeffs[..derivs.len()])
    }

    pub fn constant(value: f64, len: usize) -> Jet {
        let mut c = [0.0; JET_CAPACITY];
        c[0] = value;
        Jet { c, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        assert!(k < self.len, "jet order {k} not available (len {})", self.len);
        self.c[k]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative_value(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    /// Jet of the derivative; one order shorter.
    pub fn derivative(&self) -> Jet {
        assert!(self.len >= 2, "cannot differentiate a jet of length {}", self.len);
        let mut c = [0.0; JET_CAPACITY];
        for (k, ck) in c.iter_mut().enumerate().take(self.len - 1) {
            *ck = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c, len: self.len - 1 }
    }

    pub fn scale(&self, k: f64) -> Jet {
        let mut out = *self;
        for v in &mut out.c[..self.len] {
            *v *= k;
        }
        out
    }

    pub fn div(&self, g: &Jet) -> Jet {
        let len = self.len.min(g.len);
        let mut h = [0.0; JET_CAPACITY];
        for k in 0..len {
            let mut acc = self.c[k];
            for i in 1..=k {
                acc -= g.c[i] * h[k - i];
            }
            h[k] = acc / g.c[0];
        }
        Jet { c: h, len }
    }

    pub fn sqrt(&self) -> Jet {
        let mut h = [0.0; JET_CAPACITY];
        h[0] = self.c[0].sqrt();
        for k in 1..self.len {
            let mut acc = self.c[k];
            for i in 1..k {
                acc -= h[i] * h[k - i];
            }
            h[k] = acc / (2.0 * h[0]);
        }
        Jet { c: h, len: self.len }
    }

    pub fn truncate(&self, len: usize) -> Jet {
        let mut out = *self;
        out.len = self.len.min(len);
        for v in &mut out.c[out.len..] {
            *v = 0.0;
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_CAPACITY];
        for (k, ck) in c.iter_mut().enumerate().take(len) {
            *ck = self.c[k] + o.c[k];
        }
        Jet { c, len }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let len = self.len.min(o.len);
        let mut c = [0.0; JET_CAPACITY];
        for (k, ck) in c.iter_mut().enumerate().take(len) {
            *ck = (0..=k).map(|i| self.c[i] * o.c[k - i]).sum();
        }
        Jet { c, len }
    }
}

/// Vector-valued jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub x: Jet,
    pub y: Jet,
    pub z: Jet,
}

impl Jet3 {
    pub fn new(x: Jet, y: Jet, z: Jet) -> Jet3 {
        Jet3 { x, y, z }
    }

    pub fn len(&self) -> usize {
        self.x.len.min(self.y.len).min(self.z.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self) -> Vec3 {
        Vec3::new(self.x.value(), self.y.value(), self.z.value())
    }

    pub fn derivative(&self) -> Jet3 {
        Jet3::new(self.x.derivative(), self.y.derivative(), self.z.derivative())
    }

    pub fn dot(&self, o: &Jet3) -> Jet {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Jet3) -> Jet3 {
        Jet3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> Jet {
        self.dot(self).sqrt()
    }

    pub fn mul_scalar(&self, k: &Jet) -> Jet3 {
        Jet3::new(self.x * *k, self.y * *k, self.z * *k)
    }

    pub fn div_scalar(&self, k: &Jet) -> Jet3 {
        Jet3::new(self.x.div(k), self.y.div(k), self.z.div(k))
    }

    pub fn scale(&self, k: f64) -> Jet3 {
        Jet3::new(self.x.scale(k), self.y.scale(k), self.z.scale(k))
    }

    pub fn normalized(&self) -> Jet3 {
        self.div_scalar(&self.norm())
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn product_rule_through_series() {
        // f = sin t, g = exp t at t0 = 0.4
        let t0: f64 = 0.4;
        let f = Jet::from_derivatives(&[t0.sin(), t0.cos(), -t0.sin(), -t0.cos()]);
        let g = Jet::from_derivatives(&[t0.exp(); 4]);
        let h = f * g;
        // (sin e^t)''' = e^t (sin + 3cos - 3sin - cos) = e^t (2cos - 2sin)
        close(
            h.derivative_value(3),
            t0.exp() * (2.0 * t0.cos() - 2.0 * t0.sin()),
            1e-13,
        );
    }

    #[test]
    fn quotient_and_sqrt() {
        // f = 1 + t^2 at t0 = 0.5: derivatives 1.25, 1, 2, 0
        let f = Jet::from_derivatives(&[1.25, 1.0, 2.0, 0.0]);
        let r = f.sqrt();
        // d/dt sqrt(1+t^2) = t/sqrt(1+t^2)
        close(r.derivative_value(1), 0.5 / 1.25f64.sqrt(), 1e-15);
        // second derivative = (1+t^2)^(-3/2)
        close(r.derivative_value(2), 1.25f64.powf(-1.5), 1e-14);
        let q = Jet::constant(1.0, 4).div(&f);
        // (1/(1+t^2))'' = (6t^2 - 2)/(1+t^2)^3
        close(q.derivative_value(2), (6.0 * 0.25 - 2.0) / 1.25f64.powi(3), 1e-14);
    }

    #[test]
    fn derivative_shortens() {
        let f = Jet::from_coeffs(&[1.0, 2.0, 3.0]);
        let d = f.derivative();
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(0), 2.0);
        assert_eq!(d.coeff(1), 6.0);
    }

    #[test]
    fn truncation_to_shorter_operand() {
        let a = Jet::from_coeffs(&[1.0, 1.0, 1.0, 1.0]);
        let b = Jet::from_coeffs(&[1.0, 1.0]);
        assert_eq!((a * b).len(), 2);
        assert_eq!((a + b).len(), 2);
    }
}
