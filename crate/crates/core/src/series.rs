//! Truncated power series with exact rational coefficients.
//!
//! Just enough series arithmetic for the hypergeometric mirror oracle:
//! ring operations, reciprocal, exp, the Euler operator, composition and
//! reversion. Every series carries `order + 1` coefficients; all operations
//! preserve exactness up to that order. Truncation never silently loses
//! needed orders: mixing different lengths is a bug and panics.

use crate::rational::Rat;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// The zero series with coefficients up to and including `z^order`.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, v: Rat) {
        self.coeffs[k] = v;
    }

    fn check(&self, other: &Series) {
        assert_eq!(
            self.order(),
            other.order(),
            "series order mismatch: {} vs {}",
            self.order(),
            other.order()
        );
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Series {
        assert!(!self.coeffs[0].is_zero(), "reciprocal needs nonzero constant term");
        let m = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out = Series::zero(m);
        out.coeffs[0] = inv0.clone();
        for n in 1..=m {
            let mut acc = Rat::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out.coeffs[n - k];
            }
            out.coeffs[n] = -(acc) * inv0.clone();
        }
        out
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Series {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let m = self.order();
        let mut out = Series::zero(m);
        out.coeffs[0] = Rat::one();
        for n in 1..=m {
            // n*E_n = sum_{k=1..n} k*S_k*E_{n-k}
            let mut acc = Rat::zero();
            for k in 1..=n {
                acc += Rat::from(k as i64) * &self.coeffs[k] * &out.coeffs[n - k];
            }
            out.coeffs[n] = acc / Rat::from(n as i64);
        }
        out
    }

    /// Euler operator `z d/dz`.
    pub fn theta(&self) -> Series {
        let mut out = self.clone();
        for (n, c) in out.coeffs.iter_mut().enumerate() {
            *c = Rat::from(n as i64) * c.clone();
        }
        out
    }

    /// `self(inner)`; the inner series must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Series {
        self.check(inner);
        assert!(inner.coeffs[0].is_zero(), "composition needs inner(0) = 0");
        let m = self.order();
        let mut out = Series::constant(self.coeffs[m].clone(), m);
        for k in (0..m).rev() {
            out = &out * inner;
            let c = out.coeffs[0].clone() + self.coeffs[k].clone();
            out.coeffs[0] = c;
        }
        out
    }

    /// Compositional inverse of a series `g = z + ...` (zero constant term,
    /// unit linear term): returns `h` with `g(h(q)) = q`.
    pub fn reversion(&self) -> Series {
        assert!(self.coeffs[0].is_zero(), "reversion needs g(0) = 0");
        assert!(self.coeffs[1].is_one(), "reversion needs g'(0) = 1");
        let m = self.order();
        let mut h = Series::z(m);
        for k in 2..=m {
            // With h correct to order k-1, g(h) = q + delta*q^k + O(q^{k+1});
            // the linear term of g turns a correction -delta*q^k into the
            // exact cancellation at order k.
            let composed = self.compose(&h);
            let delta = composed.coeffs[k].clone();
            h.coeffs[k] = h.coeffs[k].clone() - delta;
        }
        debug_assert_eq!(self.compose(&h), Series::z(m));
        h
    }

    pub fn scale(&self, c: &Rat) -> Series {
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x *= c;
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.check(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Series { coeffs }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.check(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Series { coeffs }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.check(rhs);
        let m = self.order();
        let mut out = Series::zero(m);
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                let add = &self.coeffs[i] * &rhs.coeffs[j];
                out.coeffs[i + j] += add;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_z_has_factorial_coefficients() {
        let e = Series::z(6).exp();
        let mut fact = 1i64;
        for n in 1..=6usize {
            fact *= n as i64;
            assert_eq!(*e.coeff(n), Rat::new(1, fact));
        }
    }

    #[test]
    fn recip_inverts() {
        // 1/(1-z) = 1 + z + z^2 + ...
        let mut one_minus_z = Series::constant(Rat::one(), 5);
        one_minus_z.set_coeff(1, Rat::from(-1i64));
        let r = one_minus_z.recip();
        for n in 0..=5 {
            assert_eq!(*r.coeff(n), Rat::one());
        }
        assert_eq!(&r * &one_minus_z, Series::constant(Rat::one(), 5));
    }

    #[test]
    fn reversion_of_geometric() {
        // g = z/(1-z) = z + z^2 + ...; inverse is q/(1+q).
        let mut g = Series::zero(6);
        for n in 1..=6 {
            g.set_coeff(n, Rat::one());
        }
        let h = g.reversion();
        for n in 1..=6usize {
            let sign = if n % 2 == 1 { 1i64 } else { -1 };
            assert_eq!(*h.coeff(n), Rat::from(sign));
        }
    }

    #[test]
    fn theta_scales_by_exponent() {
        let mut s = Series::zero(3);
        s.set_coeff(1, Rat::from(4i64));
        s.set_coeff(3, Rat::from(2i64));
        let t = s.theta();
        assert_eq!(*t.coeff(1), Rat::from(4i64));
        assert_eq!(*t.coeff(3), Rat::from(6i64));
    }
}
