//! Trigonometric polynomials on the flat torus Tⁿ = (ℝ/2πℤ)ⁿ.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Frequency vector. Only the first `n` entries are meaningful; the rest stay 0.
pub type Mode = [i64; 3];

pub const ZERO_MODE: Mode = [0, 0, 0];

/// Finitely supported map `k ↦ c_k` representing `Σ c_k e^{ik·x}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigPoly {
    n: usize,
    coeffs: BTreeMap<Mode, ExactScalar>,
}

impl TrigPoly {
    pub fn zero(n: usize) -> Self {
        TrigPoly { n, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: ExactScalar) -> Self {
        TrigPoly::mode(n, ZERO_MODE, c)
    }

    pub fn one(n: usize) -> Self {
        TrigPoly::constant(n, ExactScalar::one())
    }

    /// `c · e^{ik·x}`.
    pub fn mode(n: usize, k: Mode, c: ExactScalar) -> Self {
        debug_assert!(k[n..].iter().all(|&v| v == 0));
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        TrigPoly { n, coeffs }
    }

    pub fn from_modes(n: usize, modes: impl IntoIterator<Item = (Mode, ExactScalar)>) -> Self {
        let mut p = TrigPoly::zero(n);
        for (k, c) in modes {
            p.add_mode(k, &c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Mode, ExactScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, k: &Mode) -> ExactScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when only the zero mode is present (constant in x).
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|k| *k == ZERO_MODE)
    }

    pub fn max_frequency(&self) -> i64 {
        self.coeffs.keys().flat_map(|k| k.iter().map(|v| v.abs())).max().unwrap_or(0)
    }

    pub fn add_mode(&mut self, k: Mode, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_assign_ref(&mut self, o: &TrigPoly) {
        for (k, c) in &o.coeffs {
            self.add_mode(*k, c);
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> TrigPoly {
        if c.is_zero() {
            return TrigPoly::zero(self.n);
        }
        TrigPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    fn check_dim(&self, o: &TrigPoly) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        Ok(())
    }

    /// Convolution product.
    pub fn try_mul(&self, o: &TrigPoly) -> Result<TrigPoly> {
        self.check_dim(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zero(self.n);
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &o.coeffs {
                let k = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]];
                out.add_mode(k, &(c1 * c2));
            }
        }
        out
    }

    pub fn try_add(&self, o: &TrigPoly) -> Result<TrigPoly> {
        self.check_dim(o)?;
        let mut out = self.clone();
        out.add_assign_ref(o);
        Ok(out)
    }

    /// `∂_{x_j}`, with `j` zero-based.
    pub fn x_derivative(&self, j: usize) -> TrigPoly {
        assert!(j < self.n, "axis {j} out of range for n = {}", self.n);
        let i = ExactScalar::i();
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| k[j] != 0)
            .map(|(k, c)| (*k, c * &i * ExactScalar::from_int(k[j])))
            .collect();
        TrigPoly { n: self.n, coeffs }
    }

    /// `∂_x^α` for a multi-index `α`.
    pub fn x_derivative_multi(&self, alpha: &[u32; 3]) -> TrigPoly {
        let total: u32 = alpha.iter().sum();
        if total == 0 {
            return self.clone();
        }
        let factor = ExactScalar::i_pow(total as i64);
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(k, c)| {
                let mut m: i64 = 1;
                for j in 0..3 {
                    if alpha[j] > 0 {
                        m = m.checked_mul(k[j].checked_pow(alpha[j])?)?;
                    }
                }
                if m == 0 {
                    None
                } else {
                    Some((*k, c * &factor * ExactScalar::from_int(m)))
                }
            })
            .collect();
        TrigPoly { n: self.n, coeffs }
    }

    /// `∫_{Tⁿ} p dx = (2π)ⁿ c₀`.
    pub fn torus_integral(&self) -> ExactScalar {
        let c0 = self.coeff(&ZERO_MODE);
        let two_pow = ExactScalar::from_int(1i64 << self.n);
        c0 * two_pow.shift_pi(self.n as i32)
    }

    /// Zero-frequency coefficient, i.e. the normalized torus mean.
    pub fn mean(&self) -> ExactScalar {
        self.coeff(&ZERO_MODE)
    }

    /// Inverse of a monomial `c e^{ik·x}`.
    pub fn invert_unit(&self) -> Result<TrigPoly> {
        let mut it = self.coeffs.iter();
        match (it.next(), it.next()) {
            (Some((k, c)), None) => {
                let inv = c.inv()?;
                Ok(TrigPoly::mode(self.n, [-k[0], -k[1], -k[2]], inv))
            }
            (None, _) => Err(Error::UnsupportedInverse("zero trigonometric polynomial".into())),
            _ => Err(Error::UnsupportedInverse(format!(
                "trigonometric polynomial with {} modes is not a unit",
                self.coeffs.len()
            ))),
        }
    }

    pub fn eval(&self, x: &[f64], digits: u32) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            let phase: f64 = (0..self.n).map(|j| k[j] as f64 * x[j]).sum();
            acc += c.eval(digits) * Complex64::from_polar(1.0, phase);
        }
        acc
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, o: &TrigPoly) -> TrigPoly {
        self.try_add(o).expect("dimension mismatch in TrigPoly addition")
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, o: &TrigPoly) -> TrigPoly {
        self + &(-o)
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, o: &TrigPoly) -> TrigPoly {
        self.try_mul(o).expect("dimension mismatch in TrigPoly product")
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly { n: self.n, coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: Mode) -> TrigPoly {
        TrigPoly::mode(n, k, ExactScalar::one())
    }

    #[test]
    fn square_of_cosine_pair() {
        let p = &e(1, [1, 0, 0]) + &e(1, [-1, 0, 0]);
        let expect = TrigPoly::from_modes(
            1,
            [([2, 0, 0], ExactScalar::one()), (ZERO_MODE, ExactScalar::from_int(2)), ([-2, 0, 0], ExactScalar::one())],
        );
        assert_eq!(&p * &p, expect);
        assert_eq!(&TrigPoly::one(1) * &p, p);
        assert_eq!(&e(3, [1, 0, 0]) * &e(3, [-1, 0, 0]), TrigPoly::one(3));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(TrigPoly::one(1).try_mul(&TrigPoly::one(3)), Err(Error::DimensionMismatch(1, 3))));
    }

    #[test]
    fn derivatives() {
        let d = e(1, [4, 0, 0]).x_derivative(0);
        assert_eq!(d, TrigPoly::mode(1, [4, 0, 0], ExactScalar::i() * ExactScalar::from_int(4)));
        assert!(e(3, [1, 0, 0]).x_derivative(1).is_zero());
        assert!(TrigPoly::constant(1, ExactScalar::from_int(2)).x_derivative(0).is_zero());
        let p = TrigPoly::mode(3, [2, -1, 0], ExactScalar::from_int(3));
        assert_eq!(p.x_derivative_multi(&[1, 1, 0]), p.x_derivative(0).x_derivative(1));
        assert!(p.x_derivative_multi(&[0, 0, 1]).is_zero());
    }

    #[test]
    fn integrals() {
        let p = &TrigPoly::constant(3, ExactScalar::from_int(2)) + &e(3, [1, 0, 0]);
        assert_eq!(p.torus_integral(), "16*pi^3".parse().unwrap());
        assert!(e(1, [1, 0, 0]).torus_integral().is_zero());
        assert_eq!(TrigPoly::one(1).torus_integral(), "2*pi".parse().unwrap());
    }

    #[test]
    fn unit_inverse() {
        let p = TrigPoly::mode(3, [1, 0, 0], ExactScalar::from_int(3));
        let q = p.invert_unit().unwrap();
        assert_eq!(q, TrigPoly::mode(3, [-1, 0, 0], ExactScalar::from_ratio(1, 3)));
        assert_eq!(&p * &q, TrigPoly::one(3));
        assert_eq!(
            TrigPoly::constant(1, ExactScalar::from_int(2)).invert_unit().unwrap(),
            TrigPoly::constant(1, ExactScalar::from_ratio(1, 2))
        );
        let two = &TrigPoly::one(1) + &e(1, [1, 0, 0]);
        assert!(matches!(two.invert_unit(), Err(Error::UnsupportedInverse(_))));
    }
}
