//! Floating-point cross-checks: quadrature, radial finite-part fits and
//! Fourier-mode matrices on T¹. Nothing here feeds back into the exact core.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::coefficients::{ExactScalar, Mode};
use crate::error::{Error, Result};
use crate::group::{determinant, exp_symbol, TraceFunctional};
use crate::homogeneous::{Beta, HomogeneousComponent};
use crate::symbol::FormalSymbol;

/// Default working precision for floating coefficients.
pub const FLOAT_DIGITS: u32 = 20;

/// Nodes and weights for the unit sphere, the torus and radial integrals.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    pub n: usize,
    pub sphere: Vec<([f64; 3], f64)>,
    pub torus_size: usize,
    pub line: Vec<(f64, f64)>,
}

fn legendre(order: usize) -> Vec<(f64, f64)> {
    GaussLegendre::new(NonZeroUsize::new(order).expect("positive order")).as_node_weight_pairs().to_vec()
}

impl QuadratureGrid {
    /// `sphere_order` Gauss–Legendre nodes in `cos θ` times `2·sphere_order`
    /// uniform azimuths (exact for polynomials of degree `< 2·sphere_order`).
    pub fn new(n: usize, sphere_order: usize, torus_size: usize, line_order: usize) -> Result<Self> {
        let sphere = match n {
            1 => vec![([1.0, 0.0, 0.0], 1.0), ([-1.0, 0.0, 0.0], 1.0)],
            3 => {
                let m = 2 * sphere_order;
                let dphi = 2.0 * PI / m as f64;
                let mut nodes = Vec::with_capacity(sphere_order * m);
                for (t, w) in legendre(sphere_order) {
                    let s = (1.0 - t * t).sqrt();
                    for j in 0..m {
                        let phi = j as f64 * dphi;
                        nodes.push(([s * phi.cos(), s * phi.sin(), t], w * dphi));
                    }
                }
                nodes
            }
            _ => return Err(Error::UnsupportedDimension(n, "quadrature is provided for n = 1 and n = 3")),
        };
        Ok(QuadratureGrid { n, sphere, torus_size, line: legendre(line_order) })
    }

    pub fn standard(n: usize) -> Result<Self> {
        QuadratureGrid::new(n, 12, 16, 40)
    }

    pub fn sphere_integral(&self, mut f: impl FnMut(&[f64; 3]) -> Complex64) -> Complex64 {
        self.sphere.iter().map(|(w, wt)| f(w) * *wt).sum()
    }

    /// Trapezoid rule on `[0, 2π)^n`.
    pub fn torus_integral(&self, mut f: impl FnMut(&[f64]) -> Complex64) -> Complex64 {
        let m = self.torus_size;
        let h = 2.0 * PI / m as f64;
        let total = m.pow(self.n as u32);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut x = vec![0.0; self.n];
        for idx in 0..total {
            let mut r = idx;
            for xj in x.iter_mut() {
                *xj = (r % m) as f64 * h;
                r /= m;
            }
            acc += f(&x);
        }
        acc * h.powi(self.n as i32)
    }

    /// Gauss–Legendre on `[a, b]`.
    pub fn line_integral(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.line.iter().map(|(t, w)| f(mid + half * t) * (w * half)).sum()
    }
}

#[derive(Clone, Debug)]
struct FloatTerm {
    degree: i32,
    layer: i32,
    beta: Beta,
    modes: Vec<(Mode, Complex64)>,
}

/// A symbol with coefficients rounded to `f64`, for fast pointwise evaluation.
#[derive(Clone, Debug)]
pub struct FloatSymbol {
    n: usize,
    terms: Vec<FloatTerm>,
}

impl FloatSymbol {
    pub fn new(sigma: &FormalSymbol, digits: u32) -> Self {
        let mut terms = Vec::new();
        for c in sigma.components().values() {
            push_terms(&mut terms, c, digits);
        }
        FloatSymbol { n: sigma.dim(), terms }
    }

    pub fn from_component(c: &HomogeneousComponent, digits: u32) -> Self {
        let mut terms = Vec::new();
        push_terms(&mut terms, c, digits);
        FloatSymbol { n: c.dim(), terms }
    }

    /// Value at `(x, ξ)`, `ξ ≠ 0`, ignoring the cutoff.
    pub fn eval(&self, x: &[f64], xi: &[f64]) -> Complex64 {
        let r = xi[..self.n].iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut mono = r.powi(t.degree - t.layer);
            for (v, b) in xi[..self.n].iter().zip(&t.beta) {
                mono *= v.powi(*b as i32);
            }
            let mut c = Complex64::new(0.0, 0.0);
            for (k, v) in &t.modes {
                let phase: f64 = (0..self.n).map(|j| k[j] as f64 * x[j]).sum();
                c += v * Complex64::from_polar(1.0, phase);
            }
            acc += c * mono;
        }
        acc
    }
}

fn push_terms(out: &mut Vec<FloatTerm>, c: &HomogeneousComponent, digits: u32) {
    for (l, h) in c.layers() {
        for (beta, coeff) in h.monomials() {
            let modes = coeff.coeffs().iter().map(|(k, v)| (*k, v.eval(digits))).collect();
            out.push(FloatTerm { degree: c.degree(), layer: *l as i32, beta: *beta, modes });
        }
    }
}

/// `σ(x, ξ)` under the sharp convention; defined only for `|ξ| >= 1`.
pub fn eval_symbol(sigma: &FormalSymbol, x: &[f64], xi: &[f64], digits: u32) -> Result<Complex64> {
    let n = sigma.dim();
    if x.len() < n || xi.len() < n {
        return Err(Error::DimensionMismatch(n, x.len().min(xi.len())));
    }
    let r2: f64 = xi[..n].iter().map(|v| v * v).sum();
    if r2 < 1.0 {
        return Err(Error::OutOfRegion);
    }
    Ok(FloatSymbol::new(sigma, digits).eval(x, xi))
}

/// `∫_{1≤|ξ|≤R} σ(x, ξ) dξ`, Gauss–Legendre in `log |ξ|`.
pub fn annulus_integral(fs: &FloatSymbol, grid: &QuadratureGrid, x: &[f64], radius: f64) -> Complex64 {
    let n = grid.n as i32;
    grid.line_integral(0.0, radius.ln(), |u| {
        let r = u.exp();
        let shell = grid.sphere_integral(|w| {
            let xi = [r * w[0], r * w[1], r * w[2]];
            fs.eval(x, &xi)
        });
        shell * r.powi(n)
    })
}

/// `∫_{|ξ|≥1} σ(x, ξ) dξ` through `|ξ| = 1/s`; requires order `< -n`.
pub fn convergent_integral(fs: &FloatSymbol, grid: &QuadratureGrid, x: &[f64]) -> Complex64 {
    let n = grid.n as i32;
    grid.line_integral(0.0, 1.0, |s| {
        let r = 1.0 / s;
        let shell = grid.sphere_integral(|w| {
            let xi = [r * w[0], r * w[1], r * w[2]];
            fs.eval(x, &xi)
        });
        shell * s.powi(-n - 1)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialFit {
    /// `(d + n, coefficient of R^{d+n})`.
    pub powers: Vec<(i32, Complex64)>,
    pub log_coeff: Complex64,
    pub finite_part: Complex64,
    pub condition: f64,
}

/// Largest acceptable condition number of the scaled fit matrix.
pub const MAX_CONDITION: f64 = 1e12;

/// Geometric radii in `[lo, hi]`.
pub fn geometric_radii(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|j| (a + (b - a) * j as f64 / (count - 1) as f64).exp()).collect()
}

/// Least-squares fit of annulus integrals against `{R^{d+n}}, log R, 1`.
pub fn radial_fp(sigma: &FormalSymbol, x: &[f64], radii: &[f64], grid: &QuadratureGrid) -> Result<RadialFit> {
    if !sigma.is_exact() {
        return Err(Error::InvalidParameter("radial fit needs an exact symbol".into()));
    }
    let n = sigma.dim() as i32;
    let exponents: Vec<i32> = sigma.components().keys().map(|d| d + n).filter(|e| *e != 0).collect();
    let unknowns = exponents.len() + 2;
    if radii.len() < unknowns + 2 {
        return Err(Error::InvalidParameter(format!("{} radii for {unknowns} unknowns", radii.len())));
    }
    if radii[0] <= 1.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radii must be > 1 and strictly increasing".into()));
    }
    let fs = FloatSymbol::new(sigma, FLOAT_DIGITS);
    let values: Vec<Complex64> = radii.iter().map(|r| annulus_integral(&fs, grid, x, *r)).collect();

    let m = radii.len();
    let mut a = DMatrix::<f64>::zeros(m, unknowns);
    for (i, r) in radii.iter().enumerate() {
        for (j, e) in exponents.iter().enumerate() {
            a[(i, j)] = r.powi(*e);
        }
        a[(i, unknowns - 2)] = r.ln();
        a[(i, unknowns - 1)] = 1.0;
    }
    let scales: Vec<f64> = (0..unknowns).map(|j| a.column(j).norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned(condition));
    }
    let solve = |b: DVector<f64>| -> DVector<f64> { svd.solve(&b, 0.0).expect("svd computed with u and v") };
    let re = solve(DVector::from_iterator(m, values.iter().map(|v| v.re)));
    let im = solve(DVector::from_iterator(m, values.iter().map(|v| v.im)));
    let coeff = |j: usize| Complex64::new(re[j], im[j]) / scales[j];
    Ok(RadialFit {
        powers: exponents.iter().enumerate().map(|(j, e)| (*e, coeff(j))).collect(),
        log_coeff: coeff(unknowns - 2),
        finite_part: coeff(unknowns - 1),
        condition,
    })
}

/// Dense model of `Op(σ)` on `span{e^{ikx} : |k| <= cutoff + halo}` (n = 1).
#[derive(Clone, Debug)]
pub struct ModeMatrix {
    pub cutoff: usize,
    pub halo: usize,
    pub matrix: DMatrix<Complex64>,
}

impl ModeMatrix {
    pub fn radius(&self) -> i64 {
        (self.cutoff + self.halo) as i64
    }

    fn index(&self, k: i64) -> usize {
        (k + self.radius()) as usize
    }

    /// Entry `(row mode, column mode)`; zero outside the stored range.
    pub fn entry(&self, row: i64, col: i64) -> Complex64 {
        let m = self.radius();
        if row.abs() > m || col.abs() > m {
            return Complex64::new(0.0, 0.0);
        }
        self.matrix[(self.index(row), self.index(col))]
    }
}

/// Entry `(k + κ, k)` is the `κ`-th Fourier coefficient of `σ(·, k)`, with
/// `σ(·, 0) = 0`. A halo of width `max frequency` is stored so that the rows
/// `|k| <= cutoff` of products are complete.
pub fn mode_matrix(sigma: &FormalSymbol, cutoff: usize) -> Result<ModeMatrix> {
    if sigma.dim() != 1 {
        return Err(Error::UnsupportedDimension(sigma.dim(), "mode matrices are built on T^1 only"));
    }
    let halo = sigma.max_frequency() as usize;
    if cutoff < halo + 1 {
        return Err(Error::InvalidParameter(format!("cutoff {cutoff} below max frequency {halo} + 1")));
    }
    let fs = FloatSymbol::new(sigma, FLOAT_DIGITS);
    let m = (cutoff + halo) as i64;
    let size = (2 * m + 1) as usize;
    let mut matrix = DMatrix::<Complex64>::zeros(size, size);
    for k in -m..=m {
        if k == 0 {
            continue;
        }
        let kf = k as f64;
        for t in &fs.terms {
            let mono = kf.powi(t.beta[0] as i32) * kf.abs().powi(t.degree - t.layer);
            for (kappa, c) in &t.modes {
                let row = k + kappa[0];
                if row.abs() <= m {
                    matrix[((row + m) as usize, (k + m) as usize)] += c * mono;
                }
            }
        }
    }
    Ok(ModeMatrix { cutoff, halo, matrix })
}

/// `Σ_{|k|<=K} ((AB)_{kk} - (BA)_{kk})` with complete inner sums.
pub fn numeric_commutator_trace(a: &ModeMatrix, b: &ModeMatrix) -> Result<Complex64> {
    if a.cutoff != b.cutoff {
        return Err(Error::InvalidParameter(format!("cutoffs {} and {} differ", a.cutoff, b.cutoff)));
    }
    let k = a.cutoff as i64;
    let inner = k + a.halo.min(b.halo) as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in -k..=k {
        for j in -inner..=inner {
            acc += a.entry(i, j) * b.entry(j, i) - b.entry(i, j) * a.entry(j, i);
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FdCheck {
    /// `(d/dt log|Det|, d/dt arg Det)` at `t = 0`, as real and imaginary parts.
    pub numeric: Complex64,
    pub exact: Complex64,
}

/// Central difference of `log Det(Exp(t u))` at `t = 0` against `λ(u)`.
pub fn fd_derivative_check(u: &FormalSymbol, lambda: &TraceFunctional, h: f64, digits: u32) -> Result<FdCheck> {
    if u.order() > -1 {
        return Err(Error::UnsupportedOrder(u.order()));
    }
    let step = BigRational::from_float(h).ok_or_else(|| Error::InvalidParameter(format!("step {h}")))?;
    let det_at = |s: ExactScalar| -> Result<Complex64> {
        let g = exp_symbol(&u.scale(&s))?;
        Ok(determinant(&g, lambda, digits)?.value)
    };
    let plus = det_at(ExactScalar::from_rational(step.clone()))?;
    let minus = det_at(ExactScalar::from_rational(-step))?;
    let numeric = Complex64::new((plus.norm().ln() - minus.norm().ln()) / (2.0 * h), (plus / minus).arg() / (2.0 * h));
    let exact = lambda.apply(u)?.value.eval(digits);
    Ok(FdCheck { numeric, exact })
}
