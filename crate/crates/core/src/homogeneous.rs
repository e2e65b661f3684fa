//! Positively homogeneous functions of ξ in canonical harmonic form.
//!
//! A component of degree `d` is stored as `Σ_l H_l(x, ξ) |ξ|^{d-l}` where each
//! `H_l` is a harmonic polynomial in ξ of exact degree `l` with
//! trigonometric-polynomial coefficients. Restrictions of harmonics of
//! different degrees to the unit sphere are linearly independent, so this
//! form is unique and the sphere integral is read off layer 0.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::coefficients::{ExactScalar, Mode, TrigPoly, ZERO_MODE};
use crate::error::{Error, Result};

/// Exponent multi-index of a ξ-monomial.
pub type Beta = [u32; 3];

pub fn beta_degree(b: &Beta) -> u32 {
    b[0] + b[1] + b[2]
}

fn unit_beta(i: usize) -> Beta {
    let mut b = [0; 3];
    b[i] = 1;
    b
}

fn rat(p: i64, q: i64) -> ExactScalar {
    ExactScalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Polynomial in ξ with trigonometric coefficients. Internal workhorse.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly {
    n: usize,
    terms: BTreeMap<Beta, TrigPoly>,
}

impl Poly {
    fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, b: Beta, c: &TrigPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    fn add_scaled(&mut self, o: &Poly, s: &ExactScalar) {
        if s.is_zero() {
            return;
        }
        for (b, c) in &o.terms {
            self.add_term(*b, &c.scale(s));
        }
    }

    fn scale(&self, s: &ExactScalar) -> Poly {
        let mut out = Poly::zero(self.n);
        out.add_scaled(self, s);
        out
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &o.terms {
                let b = [b1[0] + b2[0], b1[1] + b2[1], b1[2] + b2[2]];
                out.add_term(b, &(c1 * c2));
            }
        }
        out
    }

    fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (b, c) in &self.terms {
            if b[i] == 0 {
                continue;
            }
            let mut nb = *b;
            nb[i] -= 1;
            out.add_term(nb, &c.scale(&ExactScalar::from_int(b[i] as i64)));
        }
        out
    }

    /// Euclidean Laplacian `Σ_i ∂²_{ξ_i}` (positive-sum convention).
    fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (b, c) in &self.terms {
            for i in 0..self.n {
                if b[i] >= 2 {
                    let mut nb = *b;
                    nb[i] -= 2;
                    out.add_term(nb, &c.scale(&ExactScalar::from_int((b[i] * (b[i] - 1)) as i64)));
                }
            }
        }
        out
    }

    /// Multiply by `|ξ|²`.
    fn mul_r2(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (b, c) in &self.terms {
            for i in 0..self.n {
                let mut nb = *b;
                nb[i] += 2;
                out.add_term(nb, c);
            }
        }
        out
    }

    fn mul_xi(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (b, c) in &self.terms {
            let mut nb = *b;
            nb[i] += 1;
            out.add_term(nb, c);
        }
        out
    }

    /// Unique decomposition of a homogeneous polynomial of degree `p` into
    /// `Σ_j |ξ|^{2j} H_{p-2j}` with harmonic `H`. Returns `(degree, H)` pairs.
    fn harmonic_decomposition(&self, p: u32) -> Vec<(u32, Poly)> {
        let n = self.n as i64;
        let mut out = Vec::new();
        let mut cur = self.clone();
        let mut deg = p as i64;
        while !cur.is_zero() && deg >= 0 {
            // H = Σ_j c_j |ξ|^{2j} Δ^j P, c_j = (-1)^j / (2^j j! Π_{i=1..j} (2p+n-2-2i))
            let mut lap_pows = vec![cur.clone()];
            while lap_pows.len() as i64 <= deg / 2 {
                let next = lap_pows.last().unwrap().laplacian();
                if next.is_zero() {
                    break;
                }
                lap_pows.push(next);
            }
            let mut coeffs = vec![ExactScalar::one()];
            let mut denom = BigInt::one();
            for j in 1..lap_pows.len() as i64 {
                denom *= BigInt::from(2 * j * (2 * deg + n - 2 - 2 * j));
                let sign = if j % 2 == 0 { 1 } else { -1 };
                coeffs.push(ExactScalar::from_rational(BigRational::new(BigInt::from(sign), denom.clone())));
            }
            // Q = (P - H)/|ξ|² = -Σ_{j≥1} c_j |ξ|^{2(j-1)} Δ^j P, evaluated Horner-style.
            let mut q = Poly::zero(self.n);
            for j in (1..lap_pows.len()).rev() {
                q = q.mul_r2();
                q.add_scaled(&lap_pows[j], &(-&coeffs[j]));
            }
            let mut h = cur.clone();
            h.add_scaled(&q.mul_r2(), &ExactScalar::from_int(-1));
            if !h.is_zero() {
                out.push((deg as u32, h));
            }
            cur = q;
            deg -= 2;
        }
        out
    }
}

/// A harmonic ξ-polynomial of a fixed degree with TrigPoly coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicPoly {
    n: usize,
    degree: u32,
    monomials: BTreeMap<Beta, TrigPoly>,
}

impl HarmonicPoly {
    /// Validating constructor: all monomials must have degree `degree` and
    /// the ξ-Laplacian must vanish identically.
    pub fn new(n: usize, degree: u32, monomials: BTreeMap<Beta, TrigPoly>) -> Result<Self> {
        for (b, c) in &monomials {
            if beta_degree(b) != degree {
                return Err(Error::InvalidParameter(format!("monomial {b:?} is not of degree {degree}")));
            }
            if b[n..].iter().any(|&v| v != 0) {
                return Err(Error::InvalidParameter(format!("monomial {b:?} uses axes beyond n = {n}")));
            }
            if c.dim() != n {
                return Err(Error::DimensionMismatch(n, c.dim()));
            }
        }
        let p = Poly { n, terms: monomials.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        if !p.laplacian().is_zero() {
            return Err(Error::InvalidParameter("polynomial is not harmonic".into()));
        }
        Ok(HarmonicPoly { n, degree, monomials: p.terms })
    }

    fn from_poly(degree: u32, p: Poly) -> Self {
        debug_assert!(p.laplacian().is_zero());
        HarmonicPoly { n: p.n, degree, monomials: p.terms }
    }

    fn poly(&self) -> Poly {
        Poly { n: self.n, terms: self.monomials.clone() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &BTreeMap<Beta, TrigPoly> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn eval(&self, x: &[f64], xi: &[f64], digits: u32) -> Complex64 {
        self.monomials
            .iter()
            .map(|(b, c)| {
                let m: f64 = (0..self.n).map(|i| xi[i].powi(b[i] as i32)).product();
                c.eval(x, digits) * m
            })
            .sum()
    }
}

/// Degree-`d` positively homogeneous function of ξ, `Σ_l H_l |ξ|^{d-l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousComponent {
    n: usize,
    degree: i32,
    layers: BTreeMap<u32, HarmonicPoly>,
}

/// A raw term `c(x) ξ^β |ξ|^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub beta: Beta,
    pub radial: i32,
    pub coeff: TrigPoly,
}

impl HomogeneousComponent {
    pub fn zero(n: usize, degree: i32) -> Self {
        HomogeneousComponent { n, degree, layers: BTreeMap::new() }
    }

    /// `c(x) |ξ|^d`.
    pub fn radial(degree: i32, c: TrigPoly) -> Self {
        let n = c.dim();
        let mut out = HomogeneousComponent::zero(n, degree);
        if !c.is_zero() {
            let mut m = BTreeMap::new();
            m.insert([0, 0, 0], c);
            out.layers.insert(0, HarmonicPoly { n, degree: 0, monomials: m });
        }
        out
    }

    /// Scalar multiple of `|ξ|^d`.
    pub fn radial_scalar(n: usize, degree: i32, c: ExactScalar) -> Self {
        HomogeneousComponent::radial(degree, TrigPoly::constant(n, c))
    }

    /// `c(x) ξ_i |ξ|^{d-1}`, with `i` zero-based.
    pub fn linear(degree: i32, i: usize, c: TrigPoly) -> Self {
        let n = c.dim();
        let mut out = HomogeneousComponent::zero(n, degree);
        if !c.is_zero() {
            let mut m = BTreeMap::new();
            m.insert(unit_beta(i), c);
            out.layers.insert(1, HarmonicPoly { n, degree: 1, monomials: m });
        }
        out
    }

    /// Build from layers, validating harmonicity and dimensions.
    pub fn from_layers(n: usize, degree: i32, layers: impl IntoIterator<Item = HarmonicPoly>) -> Result<Self> {
        let mut out = HomogeneousComponent::zero(n, degree);
        for h in layers {
            if h.n != n {
                return Err(Error::DimensionMismatch(n, h.n));
            }
            let l = h.degree;
            let mut p = out.layers.remove(&l).map(|e| e.poly()).unwrap_or_else(|| Poly::zero(n));
            p.add_scaled(&h.poly(), &ExactScalar::one());
            if !p.is_zero() {
                out.layers.insert(l, HarmonicPoly::from_poly(l, p));
            }
        }
        Ok(out)
    }

    /// Canonical harmonic form of `Σ c(x) ξ^β |ξ|^m`, all with `|β| + m = degree`.
    pub fn canonicalize(n: usize, degree: i32, terms: &[RawTerm]) -> Result<Self> {
        let mut by_poly_degree: BTreeMap<u32, Poly> = BTreeMap::new();
        for t in terms {
            let d = beta_degree(&t.beta) as i32 + t.radial;
            if d != degree {
                return Err(Error::MixedDegrees(degree, d));
            }
            if t.coeff.dim() != n {
                return Err(Error::DimensionMismatch(n, t.coeff.dim()));
            }
            if t.beta[n..].iter().any(|&v| v != 0) {
                return Err(Error::InvalidParameter(format!("monomial {:?} uses axes beyond n = {n}", t.beta)));
            }
            by_poly_degree.entry(beta_degree(&t.beta)).or_insert_with(|| Poly::zero(n)).add_term(t.beta, &t.coeff);
        }
        let mut out = HomogeneousComponent::zero(n, degree);
        for (p, poly) in by_poly_degree {
            out.absorb_poly(p, &poly);
        }
        Ok(out)
    }

    /// Add `P(ξ) |ξ|^{degree - p}` for a homogeneous polynomial of degree `p`.
    fn absorb_poly(&mut self, p: u32, poly: &Poly) {
        if poly.is_zero() {
            return;
        }
        for (l, h) in poly.harmonic_decomposition(p) {
            self.add_harmonic(l, &h, &ExactScalar::one());
        }
    }

    fn add_harmonic(&mut self, l: u32, h: &Poly, s: &ExactScalar) {
        if h.is_zero() || s.is_zero() {
            return;
        }
        let mut p = self.layers.remove(&l).map(|e| e.poly()).unwrap_or_else(|| Poly::zero(self.n));
        p.add_scaled(h, s);
        if !p.is_zero() {
            self.layers.insert(l, HarmonicPoly { n: self.n, degree: l, monomials: p.terms });
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn layers(&self) -> &BTreeMap<u32, HarmonicPoly> {
        &self.layers
    }

    pub fn layer(&self, l: u32) -> Option<&HarmonicPoly> {
        self.layers.get(&l)
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    /// Coefficient of `e^{ik·x} ξ^β |ξ|^{d-l}` in layer `l`.
    pub fn coefficient(&self, l: u32, beta: &Beta, k: &Mode) -> ExactScalar {
        self.layers.get(&l).and_then(|h| h.monomials.get(beta)).map(|c| c.coeff(k)).unwrap_or_default()
    }

    pub fn with_degree(&self, degree: i32) -> Self {
        HomogeneousComponent { n: self.n, degree, layers: self.layers.clone() }
    }

    /// Multiply by `|ξ|^t`.
    pub fn mul_radial(&self, t: i32) -> Self {
        self.with_degree(self.degree + t)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, self.degree);
        for (l, h) in &self.layers {
            out.add_harmonic(*l, &h.poly(), s);
        }
        out
    }

    pub fn scale_trig(&self, c: &TrigPoly) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, self.degree);
        for (l, h) in &self.layers {
            let mut p = Poly::zero(self.n);
            for (b, v) in &h.monomials {
                p.add_term(*b, &(v * c));
            }
            out.add_harmonic(*l, &p, &ExactScalar::one());
        }
        out
    }

    /// `self + s·o`. Degrees must agree.
    pub fn add_scaled(&self, o: &HomogeneousComponent, s: &ExactScalar) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        if self.degree != o.degree {
            return Err(Error::MixedDegrees(self.degree, o.degree));
        }
        let mut out = self.clone();
        for (l, h) in &o.layers {
            out.add_harmonic(*l, &h.poly(), s);
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &HomogeneousComponent) -> Result<Self> {
        self.add_scaled(o, &ExactScalar::one())
    }

    /// Pointwise product; degree `d1 + d2`.
    pub fn comp_mul(&self, o: &HomogeneousComponent) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        let mut out = HomogeneousComponent::zero(self.n, self.degree + o.degree);
        let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
        for (l1, h1) in &self.layers {
            for (l2, h2) in &o.layers {
                let prod = h1.poly().mul(&h2.poly());
                if *l1 == 0 || *l2 == 0 {
                    out.add_harmonic(l1 + l2, &prod, &ExactScalar::one());
                } else {
                    by_degree
                        .entry(l1 + l2)
                        .or_insert_with(|| Poly::zero(self.n))
                        .add_scaled(&prod, &ExactScalar::one());
                }
            }
        }
        for (p, poly) in by_degree {
            out.absorb_poly(p, &poly);
        }
        Ok(out)
    }

    /// `ξ_i · H_l = (ξ_i H_l - |ξ|² G) + |ξ|² G` with `G = ∂_i H_l / (n + 2l - 2)`.
    /// Returns `(harmonic part of degree l+1, G of degree l-1)`.
    fn split_xi_times(&self, l: u32, h: &HarmonicPoly, i: usize) -> (Poly, Poly) {
        let hp = h.poly();
        let raised = hp.mul_xi(i);
        let dh = hp.partial(i);
        if dh.is_zero() {
            return (raised, dh);
        }
        let g = dh.scale(&rat(1, self.n as i64 + 2 * l as i64 - 2));
        let mut top = raised;
        top.add_scaled(&g.mul_r2(), &ExactScalar::from_int(-1));
        (top, g)
    }

    /// Multiply by `ξ_i`; degree `d + 1`.
    pub fn mul_xi(&self, i: usize) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, self.degree + 1);
        for (l, h) in &self.layers {
            let (top, g) = self.split_xi_times(*l, h, i);
            out.add_harmonic(l + 1, &top, &ExactScalar::one());
            if *l > 0 {
                out.add_harmonic(l - 1, &g, &ExactScalar::one());
            }
        }
        out
    }

    /// `∂_{ξ_i}`; degree `d - 1`. Uses `∂_i(H|ξ|^s) = (∂_i H)|ξ|^s + s ξ_i H |ξ|^{s-2}`.
    pub fn xi_derivative(&self, i: usize) -> Self {
        assert!(i < self.n, "axis {i} out of range for n = {}", self.n);
        let mut out = HomogeneousComponent::zero(self.n, self.degree - 1);
        for (l, h) in &self.layers {
            let s = ExactScalar::from_int(self.degree as i64 - *l as i64);
            let dh = h.poly().partial(i);
            if *l > 0 {
                out.add_harmonic(l - 1, &dh, &ExactScalar::one());
            }
            if !s.is_zero() {
                let (top, g) = self.split_xi_times(*l, h, i);
                out.add_harmonic(l + 1, &top, &s);
                if *l > 0 {
                    out.add_harmonic(l - 1, &g, &s);
                }
            }
        }
        out
    }

    /// `∂_ξ^α`.
    pub fn xi_derivative_multi(&self, alpha: &[u32; 3]) -> Self {
        let mut out = self.clone();
        for (i, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                if out.is_zero() {
                    return HomogeneousComponent::zero(self.n, self.degree - beta_degree(alpha) as i32);
                }
                out = out.xi_derivative(i);
            }
        }
        out
    }

    pub fn x_derivative_multi(&self, alpha: &[u32; 3]) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, self.degree);
        for (l, h) in &self.layers {
            let mut p = Poly::zero(self.n);
            for (b, c) in &h.monomials {
                p.add_term(*b, &c.x_derivative_multi(alpha));
            }
            out.add_harmonic(*l, &p, &ExactScalar::one());
        }
        out
    }

    /// Odd-class parity: every layer `l ≡ d (mod 2)`.
    pub fn parity_ok(&self) -> bool {
        self.layers.keys().all(|l| (*l as i64 - self.degree as i64).rem_euclid(2) == 0)
    }

    /// True when the component is a polynomial in ξ.
    pub fn is_polynomial(&self) -> bool {
        self.layers.keys().all(|l| {
            let s = self.degree as i64 - *l as i64;
            s >= 0 && s % 2 == 0
        })
    }

    pub fn is_x_independent(&self) -> bool {
        self.layers.values().all(|h| h.monomials.values().all(|c| c.is_constant()))
    }

    pub fn max_frequency(&self) -> i64 {
        self.layers.values().flat_map(|h| h.monomials.values().map(|c| c.max_frequency())).max().unwrap_or(0)
    }

    /// `∮_{S^{n-1}} c(x, ω) dω` as a function of x: `|S^{n-1}|` times layer 0.
    pub fn sphere_integral(&self) -> TrigPoly {
        match self.layers.get(&0) {
            Some(h) => h
                .monomials
                .get(&[0, 0, 0])
                .cloned()
                .unwrap_or_else(|| TrigPoly::zero(self.n))
                .scale(&sphere_area(self.n)),
            None => TrigPoly::zero(self.n),
        }
    }

    /// Inverse of the sphere Laplacian on mean-zero data: layer `l` divided by
    /// `l(l + n - 2)`. The degree is kept; callers attach the radial weight.
    pub fn sphere_laplacian_inverse(&self) -> Result<Self> {
        if self.n < 3 {
            return Err(Error::UnsupportedDimension(self.n, "sphere Laplacian is not invertible on S^0"));
        }
        if self.layers.contains_key(&0) {
            return Err(Error::NonzeroMean);
        }
        let mut out = HomogeneousComponent::zero(self.n, self.degree);
        for (l, h) in &self.layers {
            let l = *l as i64;
            out.add_harmonic(l as u32, &h.poly(), &rat(1, l * (l + self.n as i64 - 2)));
        }
        Ok(out)
    }

    /// Numeric value at `(x, ξ)`, `ξ ≠ 0`.
    pub fn eval(&self, x: &[f64], xi: &[f64], digits: u32) -> Complex64 {
        let r = xi[..self.n].iter().map(|v| v * v).sum::<f64>().sqrt();
        self.layers.iter().map(|(l, h)| h.eval(x, xi, digits) * r.powi(self.degree - *l as i32)).sum()
    }

    /// All `(layer, β, mode, coefficient)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &Beta, &Mode, &ExactScalar)> {
        self.layers.iter().flat_map(|(l, h)| {
            h.monomials.iter().flat_map(move |(b, c)| c.coeffs().iter().map(move |(k, v)| (*l, b, k, v)))
        })
    }

    /// The component with only its zero-frequency coefficients.
    pub fn mean_component(&self) -> Self {
        let mut out = HomogeneousComponent::zero(self.n, self.degree);
        for (l, h) in &self.layers {
            let mut p = Poly::zero(self.n);
            for (b, c) in &h.monomials {
                p.add_term(*b, &TrigPoly::constant(self.n, c.coeff(&ZERO_MODE)));
            }
            out.add_harmonic(*l, &p, &ExactScalar::one());
        }
        out
    }
}

/// `|S^{n-1}|` for n ∈ {1, 3}.
pub fn sphere_area(n: usize) -> ExactScalar {
    match n {
        1 => ExactScalar::from_int(2),
        3 => ExactScalar::from_int(4).shift_pi(1),
        _ => panic!("unsupported dimension {n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(n: usize) -> TrigPoly {
        TrigPoly::one(n)
    }

    fn term(beta: Beta, radial: i32, c: TrigPoly) -> RawTerm {
        RawTerm { beta, radial, coeff: c }
    }

    fn mono(n: usize, entries: &[(Beta, i64, i64)]) -> Poly {
        let mut p = Poly::zero(n);
        for (b, num, den) in entries {
            p.add_term(*b, &TrigPoly::constant(n, rat(*num, *den)));
        }
        p
    }

    #[test]
    fn xi1_squared_over_r2() {
        let c = HomogeneousComponent::canonicalize(3, 0, &[term([2, 0, 0], -2, one(3))]).unwrap();
        assert_eq!(c.layers.len(), 2);
        assert_eq!(c.layer(0).unwrap().poly(), mono(3, &[([0, 0, 0], 1, 3)]));
        assert_eq!(c.layer(2).unwrap().poly(), mono(3, &[([2, 0, 0], 2, 3), ([0, 2, 0], -1, 3), ([0, 0, 2], -1, 3)]));
    }

    #[test]
    fn already_harmonic_and_constant() {
        let c = HomogeneousComponent::canonicalize(3, 2, &[term([1, 1, 0], 0, one(3))]).unwrap();
        assert_eq!(c.layers.keys().copied().collect::<Vec<_>>(), vec![2]);
        let k = HomogeneousComponent::canonicalize(3, 0, &[term([0, 0, 0], 0, one(3))]).unwrap();
        assert_eq!(k, HomogeneousComponent::radial(0, one(3)));
    }

    #[test]
    fn mixed_degrees_rejected() {
        let r = HomogeneousComponent::canonicalize(3, 0, &[term([1, 0, 0], -1, one(3)), term([0, 0, 0], 1, one(3))]);
        assert!(matches!(r, Err(Error::MixedDegrees(0, 1))));
    }

    #[test]
    fn legendre_four() {
        let p = mono(3, &[([4, 0, 0], 1, 1)]);
        let dec = p.harmonic_decomposition(4);
        assert_eq!(dec[0].0, 4);
        let h4 = &dec[0].1;
        assert!(h4.laplacian().is_zero());
        assert_eq!(h4.terms.get(&[4, 0, 0]).unwrap().mean(), rat(8, 35));
        // reconstruct P = Σ |ξ|^{2j} H
        let mut back = Poly::zero(3);
        for (deg, h) in &dec {
            let mut t = h.clone();
            for _ in 0..(4 - deg) / 2 {
                t = t.mul_r2();
            }
            back.add_scaled(&t, &ExactScalar::one());
        }
        assert_eq!(back, p);
    }

    #[test]
    fn one_dimensional_layers() {
        // ξ³ = |ξ|² ξ in one dimension.
        let c = HomogeneousComponent::canonicalize(1, 3, &[term([3, 0, 0], 0, one(1))]).unwrap();
        assert_eq!(c, HomogeneousComponent::linear(3, 0, one(1)));
    }

    #[test]
    fn products() {
        let a = HomogeneousComponent::radial(1, one(3));
        let b = HomogeneousComponent::radial(-3, one(3));
        assert_eq!(a.comp_mul(&b).unwrap(), HomogeneousComponent::radial(-2, one(3)));
        let w = HomogeneousComponent::linear(0, 0, one(3));
        let sq = HomogeneousComponent::canonicalize(3, 0, &[term([2, 0, 0], -2, one(3))]).unwrap();
        assert_eq!(w.comp_mul(&w).unwrap(), sq);
        let c = HomogeneousComponent::radial(0, one(3));
        assert_eq!(sq.comp_mul(&c).unwrap(), sq);
        assert!(matches!(c.comp_mul(&HomogeneousComponent::radial(0, one(1))), Err(Error::DimensionMismatch(3, 1))));
    }

    #[test]
    fn derivative_examples() {
        let r4 = HomogeneousComponent::radial(-4, one(3));
        let expect = HomogeneousComponent::linear(-5, 0, TrigPoly::constant(3, ExactScalar::from_int(-4)));
        assert_eq!(r4.xi_derivative(0), expect);

        let c = HomogeneousComponent::linear(-1, 0, one(3));
        let expect = HomogeneousComponent::canonicalize(
            3,
            -2,
            &[term([0, 0, 0], -2, one(3)), term([2, 0, 0], -4, TrigPoly::constant(3, ExactScalar::from_int(-2)))],
        )
        .unwrap();
        assert_eq!(c.xi_derivative(0), expect);

        let k = HomogeneousComponent::radial(0, TrigPoly::constant(3, ExactScalar::from_int(7)));
        assert!(k.xi_derivative(1).is_zero());
    }

    #[test]
    fn parity() {
        assert!(HomogeneousComponent::linear(-3, 0, one(3)).parity_ok());
        assert!(!HomogeneousComponent::radial(-3, one(3)).parity_ok());
        assert!(HomogeneousComponent::radial(2, one(3)).parity_ok());
    }

    #[test]
    fn sphere_integrals() {
        let four_pi: ExactScalar = "4*pi".parse().unwrap();
        assert_eq!(HomogeneousComponent::radial(0, one(3)).sphere_integral(), TrigPoly::constant(3, four_pi.clone()));
        let w2 = HomogeneousComponent::canonicalize(3, 0, &[term([2, 0, 0], -2, one(3))]).unwrap();
        assert_eq!(w2.sphere_integral(), TrigPoly::constant(3, "4/3*pi".parse().unwrap()));
        let w4 = HomogeneousComponent::canonicalize(3, 0, &[term([4, 0, 0], -4, one(3))]).unwrap();
        assert_eq!(w4.sphere_integral(), TrigPoly::constant(3, "4/5*pi".parse().unwrap()));
        assert!(HomogeneousComponent::linear(0, 2, one(3)).sphere_integral().is_zero());
        assert_eq!(
            HomogeneousComponent::radial(-1, one(1)).sphere_integral(),
            TrigPoly::constant(1, ExactScalar::from_int(2))
        );
    }

    #[test]
    fn laplacian_inverse() {
        let w1 = HomogeneousComponent::linear(0, 0, one(3));
        assert_eq!(w1.sphere_laplacian_inverse().unwrap(), w1.scale(&rat(1, 2)));
        let w12 = HomogeneousComponent::canonicalize(3, 0, &[term([1, 1, 0], -2, one(3))]).unwrap();
        assert_eq!(w12.sphere_laplacian_inverse().unwrap(), w12.scale(&rat(1, 6)));
        assert!(matches!(HomogeneousComponent::radial(0, one(3)).sphere_laplacian_inverse(), Err(Error::NonzeroMean)));
        assert!(matches!(
            HomogeneousComponent::linear(0, 0, one(1)).sphere_laplacian_inverse(),
            Err(Error::UnsupportedDimension(1, _))
        ));
    }

    #[test]
    fn harmonic_constructor_validates() {
        let mut m = BTreeMap::new();
        m.insert([2, 0, 0], one(3));
        assert!(HarmonicPoly::new(3, 2, m.clone()).is_err());
        m.insert([0, 2, 0], -&one(3));
        assert!(HarmonicPoly::new(3, 2, m).is_ok());
    }
}
