//! Exp/Log on `I + Cl^{a}` (`a <= -1`), the determinant family and path
//! determinants.

use num_complex::Complex64;

use crate::coefficients::ExactScalar;
use crate::error::{Error, Result};
use crate::functionals::{canonical_trace, leading_trace, FunctionalValue, RhoSpec};
use crate::symbol::{FormalSymbol, GroupElement};

/// `λ = c1·ρ∘π_a + c2·TR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFunctional {
    pub c1: ExactScalar,
    pub c2: ExactScalar,
    pub rho: RhoSpec,
}

impl TraceFunctional {
    pub fn new(c1: ExactScalar, c2: ExactScalar, rho: RhoSpec) -> Self {
        TraceFunctional { c1, c2, rho }
    }

    /// `ρ∘π_a` with the default ρ of order `a`.
    pub fn leading(order: i32) -> Self {
        TraceFunctional::new(ExactScalar::one(), ExactScalar::zero(), RhoSpec::default_mean(order))
    }

    /// The canonical trace; `order` only fixes the unused ρ window.
    pub fn canonical(order: i32) -> Self {
        TraceFunctional::new(ExactScalar::zero(), ExactScalar::one(), RhoSpec::default_mean(order))
    }

    /// `λ(σ)`. The exactness flag ignores terms with zero weight.
    pub fn apply(&self, sigma: &FormalSymbol) -> Result<FunctionalValue> {
        let mut value = ExactScalar::zero();
        let mut exact = true;
        if !self.c1.is_zero() {
            let lt = leading_trace(sigma, &self.rho)?;
            value += &(&self.c1 * &lt.value);
            exact &= lt.exact;
        }
        if !self.c2.is_zero() {
            let tr = canonical_trace(sigma);
            value += &(&self.c2 * &tr.value);
            exact &= tr.exact;
        }
        Ok(FunctionalValue { value, floor_used: sigma.floor(), exact })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantResult {
    pub exponent: FunctionalValue,
    pub value: Complex64,
}

impl DeterminantResult {
    fn from_exponent(exponent: FunctionalValue, digits: u32) -> Self {
        let value = exponent.value.eval(digits).exp();
        DeterminantResult { exponent, value }
    }
}

fn check_group_order(a: &FormalSymbol) -> Result<()> {
    if a.order() > -1 {
        return Err(Error::UnsupportedOrder(a.order()));
    }
    Ok(())
}

/// Number of star powers `A^k` with `k·a >= floor`.
fn power_count(a: &FormalSymbol) -> i32 {
    if a.is_zero() {
        0
    } else {
        a.floor() / a.order()
    }
}

/// `Σ_{k>=1} w_k A^k` truncated at the floor of `A`.
fn power_series(a: &FormalSymbol, weight: impl Fn(i32) -> ExactScalar) -> Result<FormalSymbol> {
    let f = a.floor();
    let mut sum = FormalSymbol::zero(a.dim(), a.order(), f, a.is_zero() && a.is_exact());
    let mut power = a.clone();
    let kmax = power_count(a);
    for k in 1..=kmax {
        sum = sum.add_weighted(&ExactScalar::one(), &power, &weight(k))?;
        if k < kmax {
            power = power.star_truncated(a, f)?;
        }
    }
    Ok(sum.truncate(f).with_order(a.order()))
}

/// `Exp(A) = Σ A^k / k!`, returned as the group element `I + (Exp(A) - I)`.
pub fn exp_symbol(a: &FormalSymbol) -> Result<GroupElement> {
    check_group_order(a)?;
    let mut fact = num_bigint::BigInt::from(1);
    let mut weights = vec![ExactScalar::zero()];
    for k in 1..=power_count(a) {
        fact *= k;
        weights.push(ExactScalar::from_rational(num_rational::BigRational::new(1.into(), fact.clone())));
    }
    GroupElement::new(power_series(a, |k| weights[k as usize].clone())?)
}

/// `Log(I + A) = Σ (-1)^{k+1} A^k / k`.
pub fn log_symbol(g: &GroupElement) -> Result<FormalSymbol> {
    let a = g.base();
    check_group_order(a)?;
    power_series(a, |k| ExactScalar::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64))
}

/// `Det_{c1,c2}(g) = exp(c1 ρ(π_a Log g) + c2 TR(Log g))`.
pub fn determinant(g: &GroupElement, lambda: &TraceFunctional, digits: u32) -> Result<DeterminantResult> {
    if lambda.rho.order() != g.base().order() {
        return Err(Error::OrderMismatch { functional: lambda.rho.order(), symbol: g.base().order() });
    }
    let log = log_symbol(g)?;
    Ok(DeterminantResult::from_exponent(lambda.apply(&log)?, digits))
}

/// `γ(t) = I + Σ_j t^j A_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialPath {
    coefficients: Vec<FormalSymbol>,
}

impl PolynomialPath {
    pub fn new(coefficients: Vec<FormalSymbol>) -> Result<Self> {
        let first = coefficients.first().ok_or_else(|| Error::InvalidParameter("path has no coefficients".into()))?;
        let n = first.dim();
        for a in &coefficients {
            if a.dim() != n {
                return Err(Error::DimensionMismatch(n, a.dim()));
            }
            check_group_order(a)?;
        }
        Ok(PolynomialPath { coefficients })
    }

    /// `I + tA`.
    pub fn straight(a: &FormalSymbol) -> Result<Self> {
        let zero = FormalSymbol::zero(a.dim(), a.order(), a.floor(), true);
        PolynomialPath::new(vec![zero, a.clone()])
    }

    pub fn coefficients(&self) -> &[FormalSymbol] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients[0].dim()
    }

    pub fn order(&self) -> i32 {
        self.coefficients.iter().map(|a| a.order()).max().unwrap_or(-1)
    }

    /// Highest floor among the coefficients; the working floor of the path.
    pub fn floor(&self) -> i32 {
        self.coefficients.iter().map(|a| a.floor()).max().unwrap_or(-1)
    }

    /// `γ(1) - I`.
    pub fn endpoint(&self) -> Result<GroupElement> {
        let mut acc = FormalSymbol::zero(self.dim(), self.order(), self.floor(), true);
        for a in &self.coefficients {
            acc = acc.try_add(a)?;
        }
        GroupElement::new(acc.truncate(self.floor()).with_order(self.order()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathDeterminant {
    pub result: DeterminantResult,
    /// Coefficients of `E(t) = ∫_0^t λ(γ^{-1}γ̇)`, index = power of t.
    pub exponent_poly: Vec<ExactScalar>,
}

type TPoly = Vec<FormalSymbol>;

fn tpoly_mul(p: &TPoly, q: &TPoly, floor: i32, zero: &FormalSymbol) -> Result<TPoly> {
    if p.is_empty() || q.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![zero.clone(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].try_add(&a.star_truncated(b, floor)?)?.truncate(floor);
        }
    }
    Ok(out)
}

/// `exp(∫_0^1 λ(γ(t)^{-1} γ̇(t)) dt)` with exact t-integration.
pub fn path_determinant(path: &PolynomialPath, lambda: &TraceFunctional, digits: u32) -> Result<PathDeterminant> {
    let coeffs = path.coefficients();
    if !coeffs[0].is_zero() {
        return Err(Error::PathStart);
    }
    let n = path.dim();
    let a = path.order();
    let f = path.floor();
    let zero = FormalSymbol::zero(n, 0, f, false);

    // γ^{-1} = Σ_m (-B)^m with B = Σ_{j>=1} t^j A_j; terms with m·a < f vanish.
    let neg_b: TPoly = coeffs.iter().map(|c| c.scale(&ExactScalar::from_int(-1)).truncate(f)).collect();
    let identity = FormalSymbol::identity(n).with_floor(f);
    let mut inverse: TPoly = vec![zero.try_add(&identity)?];
    let mut power: TPoly = vec![identity];
    let mmax = if coeffs.iter().all(|c| c.is_zero()) { 0 } else { f / a };
    for _ in 0..mmax {
        power = tpoly_mul(&power, &neg_b, f, &zero)?;
        if inverse.len() < power.len() {
            inverse.resize(power.len(), zero.clone());
        }
        for (i, s) in power.iter().enumerate() {
            inverse[i] = inverse[i].try_add(s)?;
        }
    }
    let velocity: TPoly =
        coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale(&ExactScalar::from_int(j as i64))).collect();
    let integrand = tpoly_mul(&inverse, &velocity, f, &zero)?;

    let mut exponent_poly = vec![ExactScalar::zero()];
    let mut total = ExactScalar::zero();
    let mut exact = true;
    for (p, s) in integrand.iter().enumerate() {
        let v = lambda.apply(&s.truncate(f).with_order(a.max(s.leading_degree().unwrap_or(a))))?;
        exact &= v.exact;
        let c = v.value.scale_rational(&num_rational::BigRational::new(1.into(), (p as i64 + 1).into()));
        total += &c;
        exponent_poly.push(c);
    }
    while exponent_poly.len() > 1 && exponent_poly.last().is_some_and(|c| c.is_zero()) {
        exponent_poly.pop();
    }
    let exponent = FunctionalValue { value: total, floor_used: f, exact };
    Ok(PathDeterminant { result: DeterminantResult::from_exponent(exponent, digits), exponent_poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::TrigPoly;
    use crate::homogeneous::HomogeneousComponent;

    fn r(d: i32, c: ExactScalar) -> HomogeneousComponent {
        HomogeneousComponent::radial_scalar(3, d, c)
    }

    fn q(p: i64, d: i64) -> ExactScalar {
        ExactScalar::from_ratio(p, d)
    }

    #[test]
    fn exp_commuting_series() {
        let alpha = q(3, 2);
        let a = FormalSymbol::radial_power(3, -2, alpha.clone()).with_floor(-6);
        let g = exp_symbol(&a).unwrap();
        let comps: Vec<_> = g.base().components().values().cloned().collect();
        let a2 = &alpha * &alpha;
        let a3 = &a2 * &alpha;
        assert_eq!(
            comps,
            vec![
                r(-6, a3.scale_rational(&num_rational::BigRational::new(1.into(), 6.into()))),
                r(-4, a2 * q(1, 2)),
                r(-2, alpha)
            ]
        );
        assert!(exp_symbol(&FormalSymbol::zero(3, -1, -5, true)).unwrap().base().is_zero());
        assert!(matches!(exp_symbol(&FormalSymbol::radial_power(3, 0, q(1, 1))), Err(Error::UnsupportedOrder(0))));
    }

    #[test]
    fn log_series() {
        let alpha = q(2, 3);
        let g = GroupElement::new(FormalSymbol::radial_power(3, -4, alpha.clone())).unwrap();
        let l = log_symbol(&g).unwrap();
        assert_eq!(l.components().values().cloned().collect::<Vec<_>>(), vec![r(-4, alpha.clone())]);
        let g = GroupElement::new(FormalSymbol::radial_power(3, -4, alpha.clone()).with_floor(-8)).unwrap();
        let l = log_symbol(&g).unwrap();
        let half_sq = (&alpha * &alpha) * q(-1, 2);
        assert_eq!(l.components().values().cloned().collect::<Vec<_>>(), vec![r(-8, half_sq), r(-4, alpha)]);
    }

    #[test]
    fn exp_log_round_trip_x_dependent() {
        let c = TrigPoly::mode(3, [1, 0, 0], q(1, 1));
        let a = FormalSymbol::zero(3, -1, -4, false)
            .with_component(HomogeneousComponent::linear(-1, 1, c.clone()))
            .with_component(HomogeneousComponent::radial(-2, c));
        let g = exp_symbol(&a).unwrap();
        let back = log_symbol(&g).unwrap();
        assert_eq!(back.components(), a.components());
        assert_eq!(back.floor(), -4);
    }

    #[test]
    fn determinant_examples() {
        let alpha = q(1, 3);
        let g = GroupElement::new(FormalSymbol::radial_power(3, -4, alpha.clone())).unwrap();
        let det = determinant(&g, &TraceFunctional::canonical(-4), 16).unwrap();
        assert_eq!(det.exponent.value, alpha.shift_pi(1) * ExactScalar::from_int(4));
        let expect = (4.0 * std::f64::consts::PI / 3.0).exp();
        assert!((det.value.re - expect).abs() < 1e-12 * expect);

        let id = GroupElement::identity(3, -2, -6);
        let lam = TraceFunctional::new(q(2, 1), q(5, 1), RhoSpec::default_mean(-2));
        let det = determinant(&id, &lam, 16).unwrap();
        assert!(det.exponent.value.is_zero());
        assert_eq!(det.value, Complex64::new(1.0, 0.0));

        assert!(matches!(determinant(&g, &TraceFunctional::leading(-2), 16), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn path_examples() {
        let alpha = q(1, 5);
        let a = FormalSymbol::radial_power(3, -4, alpha.clone());
        let path = PolynomialPath::straight(&a).unwrap();
        let pd = path_determinant(&path, &TraceFunctional::canonical(-4), 16).unwrap();
        assert_eq!(pd.result.exponent.value, alpha.shift_pi(1) * ExactScalar::from_int(4));

        let constant = PolynomialPath::new(vec![FormalSymbol::zero(3, -2, -6, true)]).unwrap();
        let pd = path_determinant(&constant, &TraceFunctional::leading(-2), 16).unwrap();
        assert!(pd.result.exponent.value.is_zero());

        let bad = PolynomialPath::new(vec![a.clone(), a]).unwrap();
        assert!(matches!(path_determinant(&bad, &TraceFunctional::canonical(-4), 16), Err(Error::PathStart)));
    }

    #[test]
    fn straight_path_matches_log() {
        let c = TrigPoly::mode(3, [0, 1, 0], q(1, 1));
        let a = FormalSymbol::zero(3, -1, -4, false)
            .with_component(HomogeneousComponent::linear(-1, 0, c.clone()))
            .with_component(HomogeneousComponent::radial(-2, &c + &TrigPoly::one(3)));
        let lam = TraceFunctional::leading(-1);
        let pd = path_determinant(&PolynomialPath::straight(&a).unwrap(), &lam, 16).unwrap();
        let g = GroupElement::new(a.clone()).unwrap();
        let det = determinant(&g, &lam, 16).unwrap();
        assert_eq!(pd.result.exponent.value, det.exponent.value);
        assert_eq!(pd.exponent_poly[1], lam.apply(&a).unwrap().value);
    }
}
