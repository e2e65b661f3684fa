//! Exact scalars in the ring of Gaussian-rational Laurent polynomials in π.
//!
//! Every constant produced by sphere and torus integration here is a
//! Gaussian-rational multiple of an integer power of π, so arithmetic stays
//! exact. Floating point only appears in [`ExactScalar::eval`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian { re: BigRational::from_integer(re.into()), im: BigRational::from_integer(im.into()) }
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Gaussian { re: &self.re / &d, im: -(&self.im / &d) })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Gaussian { re: &self.re * r, im: &self.im * r }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian { re: -&self.re, im: -&self.im }
    }
}

/// Element of ℚ(i)[π, π⁻¹].
///
/// Terms are kept sorted by π-exponent with no zero coefficients, so the
/// derived equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    terms: Vec<(i32, Gaussian)>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar::from_gaussian(Gaussian::from_ints(v, 0))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        ExactScalar::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::from_gaussian(Gaussian::real(r))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        ExactScalar::monomial(g, 0)
    }

    /// `g · π^s`.
    pub fn monomial(g: Gaussian, s: i32) -> Self {
        if g.is_zero() {
            ExactScalar::zero()
        } else {
            ExactScalar { terms: vec![(s, g)] }
        }
    }

    /// `π^s`.
    pub fn pi_pow(s: i32) -> Self {
        ExactScalar::monomial(Gaussian::from_ints(1, 0), s)
    }

    pub fn i() -> Self {
        ExactScalar::from_gaussian(Gaussian::i())
    }

    /// `iᵏ` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => ExactScalar::from_int(1),
            1 => ExactScalar::i(),
            2 => ExactScalar::from_int(-1),
            _ => -ExactScalar::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == Gaussian::from_ints(1, 0)
    }

    pub fn terms(&self) -> &[(i32, Gaussian)] {
        &self.terms
    }

    /// Coefficient of `π^s`.
    pub fn coeff(&self, s: i32) -> Option<&Gaussian> {
        self.terms.binary_search_by_key(&s, |t| t.0).ok().map(|i| &self.terms[i].1)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(s, g)| (*s, g.scale(r))).collect() }
    }

    /// Multiply by `π^s`.
    pub fn shift_pi(&self, s: i32) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(e, g)| (e + s, g.clone())).collect() }
    }

    pub fn conj(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(s, g)| (*s, g.conj())).collect() }
    }

    /// Inverse of a single-term scalar.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [(s, g)] => Ok(ExactScalar::monomial(g.inv().expect("stored terms are nonzero"), -s)),
            [] => Err(Error::UnsupportedInverse("zero scalar".into())),
            _ => Err(Error::UnsupportedInverse(format!("multi-term scalar {self}"))),
        }
    }

    fn merge(a: &[(i32, Gaussian)], b: &[(i32, Gaussian)], negate_b: bool) -> Vec<(i32, Gaussian)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let g = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, g));
                j += 1;
            } else {
                let g = if negate_b { &a[i].1 + &(-&b[j].1) } else { &a[i].1 + &b[j].1 };
                if !g.is_zero() {
                    out.push((a[i].0, g));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Numeric value with a π approximation good to well beyond `digits`
    /// significant digits.
    pub fn eval(&self, digits: u32) -> Complex64 {
        let (re, im) = self.eval_rational(digits);
        Complex64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }

    /// Rational approximations of the real and imaginary parts.
    pub fn eval_rational(&self, digits: u32) -> (BigRational, BigRational) {
        if self.terms.is_empty() {
            return (BigRational::zero(), BigRational::zero());
        }
        let max_pow = self.terms.iter().map(|t| t.0.unsigned_abs()).max().unwrap_or(0);
        let pi = pi_rational(digits.max(1) + 12 + 2 * max_pow);
        let inv_pi = pi.recip();
        let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
        for (s, g) in &self.terms {
            let base = if *s >= 0 { &pi } else { &inv_pi };
            let p = num_traits::pow(base.clone(), s.unsigned_abs() as usize);
            re += &g.re * &p;
            im += &g.im * &p;
        }
        (re, im)
    }

    /// Decimal text of the numeric value, `digits` significant digits per part.
    pub fn eval_string(&self, digits: u32) -> String {
        let (re, im) = self.eval_rational(digits);
        if im.is_zero() {
            decimal(&re, digits)
        } else if re.is_zero() {
            format!("{}*i", decimal(&im, digits))
        } else {
            format!("{} + {}*i", decimal(&re, digits), decimal(&im, digits))
        }
    }
}

/// π as a rational, accurate to `digits` decimal places (Machin's formula).
pub fn pi_rational(digits: u32) -> BigRational {
    let scale = num_traits::pow(BigInt::from(10), digits as usize + 5);
    let atan_inv = |x: i64| -> BigInt {
        let x2 = BigInt::from(x * x);
        let mut term = &scale / BigInt::from(x);
        let mut sum = term.clone();
        let mut k: i64 = 1;
        while !term.is_zero() {
            term /= &x2;
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    let pi = BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239);
    BigRational::new(pi, scale)
}

fn decimal(r: &BigRational, digits: u32) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let f = r.to_f64().unwrap_or(f64::NAN);
    let mag = if f.is_finite() && f != 0.0 { f.abs().log10().floor() as i64 } else { 0 };
    let decimals = (digits as i64 - 1 - mag).max(0) as usize;
    let scale = num_traits::pow(BigInt::from(10), decimals);
    let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let (int, frac) = scaled.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if decimals > 0 {
        let frac = format!("{:0>width$}", frac.to_string(), width = decimals);
        s.push('.');
        s.push_str(&frac);
    }
    s
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { terms: ExactScalar::merge(&self.terms, &o.terms, false) }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { terms: ExactScalar::merge(&self.terms, &o.terms, true) }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() || o.is_zero() {
            return ExactScalar::zero();
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let g = &self.terms[0].1 * &o.terms[0].1;
            return ExactScalar::monomial(g, self.terms[0].0 + o.terms[0].0);
        }
        let mut acc = ExactScalar::zero();
        for (s, g) in &self.terms {
            for (t, h) in &o.terms {
                acc += &ExactScalar::monomial(g * h, s + t);
            }
        }
        acc
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(s, g)| (*s, -g)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        self.terms = ExactScalar::merge(&self.terms, &o.terms, false);
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        self.terms = ExactScalar::merge(&self.terms, &o.terms, true);
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        let mut acc = ExactScalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: terms sorted by (π-exponent, real before imaginary),
/// e.g. `1/2 - 3*i*pi^-1 + 32*pi^4`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, g) in &self.terms {
            for (part, imag) in [(&g.re, false), (&g.im, true)] {
                if part.is_zero() {
                    continue;
                }
                let mut body = rational_text(&part.abs());
                if imag {
                    body.push_str("*i");
                }
                match *s {
                    0 => {}
                    1 => body.push_str("*pi"),
                    s => body.push_str(&format!("*pi^{s}")),
                }
                match (first, part.is_negative()) {
                    (true, false) => write!(f, "{body}")?,
                    (true, true) => write!(f, "-{body}")?,
                    (false, false) => write!(f, " + {body}")?,
                    (false, true) => write!(f, " - {body}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse(format!("empty scalar text {text:?}")));
        }
        // Split into signed terms; a sign directly after '^' or '/' belongs to a number.
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for c in compact.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() && !matches!(prev, Some('^') | Some('/') | Some('*')) {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(c);
            prev = Some(c);
        }
        pieces.push(cur);

        let mut acc = ExactScalar::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            let mut coeff = BigRational::one();
            let mut imag = false;
            let mut pi_exp: i32 = 0;
            for factor in body.split('*') {
                if factor == "i" {
                    if imag {
                        return Err(Error::Parse(format!("repeated i in {text:?}")));
                    }
                    imag = true;
                } else if factor == "pi" {
                    pi_exp += 1;
                } else if let Some(e) = factor.strip_prefix("pi^") {
                    pi_exp += e.parse::<i32>().map_err(|_| Error::Parse(format!("bad pi exponent {factor:?}")))?;
                } else {
                    coeff *= parse_rational(factor)
                        .ok_or_else(|| Error::Parse(format!("bad factor {factor:?} in {text:?}")))?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            let g = if imag { Gaussian::new(BigRational::zero(), coeff) } else { Gaussian::real(coeff) };
            acc += &ExactScalar::monomial(g, pi_exp);
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> ExactScalar {
        t.parse().unwrap()
    }

    #[test]
    fn exponent_addition() {
        assert_eq!(s("1/2*pi") * s("3*pi^-1"), s("3/2"));
    }

    #[test]
    fn single_term_inverse() {
        assert_eq!(s("2*pi").inv().unwrap(), s("1/2*pi^-1"));
        let a = s("3/7 - 2*i");
        assert_eq!(a.inv().unwrap() * &a, ExactScalar::one());
    }

    #[test]
    fn inverse_errors() {
        assert!(matches!(ExactScalar::zero().inv(), Err(Error::UnsupportedInverse(_))));
        assert!(matches!(s("1 + pi").inv(), Err(Error::UnsupportedInverse(_))));
    }

    #[test]
    fn gaussian_product() {
        assert_eq!(s("1 + i") * s("1 - i"), s("2"));
    }

    #[test]
    fn evaluation() {
        let v = s("1/4*pi^2").eval(10);
        assert!((v.re - 2.4674011003).abs() < 1e-10);
        assert_eq!(ExactScalar::zero().eval(10), Complex64::new(0.0, 0.0));
        assert!((s("4*pi").eval(12).re - 12.5663706144).abs() < 1e-10);
        assert_eq!(s("32*pi^4").eval_string(8), "3117.0909");
    }

    #[test]
    fn canonical_text() {
        let a = s("32*pi^4 + 1/2 - 3*i*pi^-1 + i");
        assert_eq!(a.to_string(), "-3*i*pi^-1 + 1/2 + 1*i + 32*pi^4");
        assert_eq!(s(&a.to_string()), a);
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(s("-1/3*i*pi^-2").to_string(), "-1/3*i*pi^-2");
        assert_eq!(s("4*pi^1").to_string(), "4*pi");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<ExactScalar>().is_err());
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
        assert!("2*pi^q".parse::<ExactScalar>().is_err());
    }
}
