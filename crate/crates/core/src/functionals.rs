//! Linear functionals on formal symbols: residue, cut-off integral, canonical
//! trace, leading-symbol traces and the boundary (Stokes) functional.
//!
//! `exact` on a result means the returned value is the exact value of the
//! functional on the symbol class, i.e. no unknown component could change it.

use std::collections::BTreeMap;

use crate::coefficients::{ExactScalar, Mode, TrigPoly, ZERO_MODE};
use crate::error::{Error, Result};
use crate::homogeneous::{beta_degree, Beta};
use crate::symbol::FormalSymbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalValue {
    pub value: ExactScalar,
    pub floor_used: i32,
    pub exact: bool,
}

/// A function of x produced by a fibrewise functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub density: TrigPoly,
    pub floor_used: i32,
    pub exact: bool,
}

/// One addressed coefficient: mode `freq` of the monomial `beta` in layer `layer`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub freq: Mode,
    pub layer: u32,
    pub beta: Beta,
    pub weight: ExactScalar,
}

/// Continuous linear functional on the degrees `[2a, a]` of order-`a` symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoSpec {
    order: i32,
    pairings: BTreeMap<i32, Vec<Pairing>>,
}

impl RhoSpec {
    pub fn new(order: i32, pairings: BTreeMap<i32, Vec<Pairing>>) -> Result<Self> {
        if order > 0 {
            return Err(Error::InvalidParameter(format!("rho order {order} must be <= 0")));
        }
        for (d, ps) in &pairings {
            if *d < 2 * order || *d > order {
                return Err(Error::InvalidParameter(format!("rho degree {d} outside [{}, {order}]", 2 * order)));
            }
            for p in ps {
                if beta_degree(&p.beta) != p.layer {
                    return Err(Error::InvalidParameter(format!("monomial {:?} is not in layer {}", p.beta, p.layer)));
                }
            }
        }
        Ok(RhoSpec { order, pairings })
    }

    /// Normalized double mean `(2π)^{-n}|S^{n-1}|^{-1}∫∮` on every degree of the window.
    pub fn default_mean(order: i32) -> Self {
        RhoSpec::mean_on(order, 2 * order..=order)
    }

    /// Normalized double mean on the leading degree only.
    pub fn leading_mean(order: i32) -> Self {
        RhoSpec::mean_on(order, order..=order)
    }

    fn mean_on(order: i32, degrees: std::ops::RangeInclusive<i32>) -> Self {
        let pairings = degrees
            .map(|d| (d, vec![Pairing { freq: ZERO_MODE, layer: 0, beta: [0, 0, 0], weight: ExactScalar::one() }]))
            .collect();
        RhoSpec::new(order, pairings).expect("valid window")
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn pairings(&self) -> &BTreeMap<i32, Vec<Pairing>> {
        &self.pairings
    }

    /// Lowest degree the functional reads.
    pub fn lowest_degree(&self) -> Option<i32> {
        self.pairings.iter().find(|(_, ps)| !ps.is_empty()).map(|(d, _)| *d)
    }
}

/// Noncommutative residue `∫_T ∮_S σ_{-n}`.
pub fn residue(sigma: &FormalSymbol) -> Result<FunctionalValue> {
    let density = residue_density(sigma)?;
    Ok(FunctionalValue { value: density.torus_integral(), floor_used: sigma.floor(), exact: true })
}

/// Residue density `∮_S σ_{-n}(x, ω) dω` as a function of x.
pub fn residue_density(sigma: &FormalSymbol) -> Result<TrigPoly> {
    let n = sigma.dim() as i32;
    if sigma.floor() > -n && !sigma.is_exact() {
        return Err(Error::InsufficientDepth { needed: -n, floor: sigma.floor() });
    }
    Ok(sigma.component(-n).map(|c| c.sphere_integral()).unwrap_or_else(|| TrigPoly::zero(sigma.dim())))
}

/// Finite part of `∫_{1≤|ξ|≤R} σ(x, ξ) dξ` as `R → ∞`.
pub fn cutoff_integral(sigma: &FormalSymbol) -> Density {
    let n = sigma.dim() as i32;
    let mut density = TrigPoly::zero(sigma.dim());
    for (d, c) in sigma.components() {
        if *d == -n {
            continue;
        }
        let w = ExactScalar::from_ratio(-1, (*d + n) as i64);
        density.add_assign_ref(&c.sphere_integral().scale(&w));
    }
    Density { density, floor_used: sigma.floor(), exact: sigma.is_exact() }
}

/// `TR(σ) = (2π)^{-n} ∫_T ⨍ σ dξ dx`.
pub fn canonical_trace(sigma: &FormalSymbol) -> FunctionalValue {
    let d = cutoff_integral(sigma);
    FunctionalValue { value: d.density.mean(), floor_used: d.floor_used, exact: d.exact }
}

/// Finite part of `∫ ∂_{ξ_i}(τ·1_{|ξ|≥1}) dξ`, i.e. `∮ τ_{1-n} ω_i`.
pub fn stokes_boundary(tau: &FormalSymbol, axis: usize) -> Result<Density> {
    let n = tau.dim() as i32;
    if axis >= tau.dim() {
        return Err(Error::InvalidParameter(format!("axis {axis} out of range for n = {n}")));
    }
    if tau.floor() > 1 - n && !tau.is_exact() {
        return Err(Error::InsufficientDepth { needed: 1 - n, floor: tau.floor() });
    }
    let density =
        tau.component(1 - n).map(|c| c.mul_xi(axis).sphere_integral()).unwrap_or_else(|| TrigPoly::zero(tau.dim()));
    Ok(Density { density, floor_used: tau.floor(), exact: true })
}

/// `ρ(π_a σ)`: weighted sum of addressed coefficients on degrees `[2a, a]`.
pub fn leading_trace(sigma: &FormalSymbol, rho: &RhoSpec) -> Result<FunctionalValue> {
    if sigma.normalized().order() > rho.order() {
        return Err(Error::OrderMismatch { functional: rho.order(), symbol: sigma.order() });
    }
    let mut value = ExactScalar::zero();
    for (d, ps) in rho.pairings() {
        if let Some(c) = sigma.component(*d) {
            for p in ps {
                value += &(&p.weight * &c.coefficient(p.layer, &p.beta, &p.freq));
            }
        }
    }
    let exact = sigma.is_exact() || rho.lowest_degree().is_none_or(|d| d >= sigma.floor());
    Ok(FunctionalValue { value, floor_used: sigma.floor(), exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::HomogeneousComponent;

    fn radial(n: usize, d: i32) -> HomogeneousComponent {
        HomogeneousComponent::radial(d, TrigPoly::one(n))
    }

    fn e(n: usize, k: Mode) -> TrigPoly {
        TrigPoly::mode(n, k, ExactScalar::one())
    }

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn residue_examples() {
        let r = residue(&FormalSymbol::homogeneous(radial(3, -3))).unwrap();
        assert_eq!(r.value, s("32*pi^4"));
        assert!(r.exact);
        let r = residue(&FormalSymbol::homogeneous(HomogeneousComponent::radial(-1, e(1, [1, 0, 0])))).unwrap();
        assert!(r.value.is_zero());
        let odd = FormalSymbol::homogeneous(HomogeneousComponent::linear(-3, 0, e(3, [0, 1, 0])))
            .with_component(radial(3, -2));
        assert!(residue(&odd).unwrap().value.is_zero());
        let shallow = FormalSymbol::zero(3, 0, -2, false).with_component(radial(3, 0));
        assert_eq!(residue(&shallow), Err(Error::InsufficientDepth { needed: -3, floor: -2 }));
    }

    #[test]
    fn cutoff_examples() {
        assert_eq!(
            cutoff_integral(&FormalSymbol::homogeneous(radial(3, -4))).density,
            TrigPoly::constant(3, s("4*pi"))
        );
        assert_eq!(
            cutoff_integral(&FormalSymbol::homogeneous(radial(3, 1))).density,
            TrigPoly::constant(3, s("-1*pi"))
        );
        assert!(cutoff_integral(&FormalSymbol::homogeneous(radial(3, -3))).density.is_zero());
        let inexact = FormalSymbol::zero(3, -4, -5, false).with_component(radial(3, -4));
        let d = cutoff_integral(&inexact);
        assert!(!d.exact);
        assert_eq!(d.floor_used, -5);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(canonical_trace(&FormalSymbol::homogeneous(radial(3, -4))).value, s("4*pi"));
        let osc = FormalSymbol::homogeneous(HomogeneousComponent::radial(-4, e(3, [1, 0, 0])));
        assert!(canonical_trace(&osc).value.is_zero());
    }

    #[test]
    fn stokes_examples() {
        let t = FormalSymbol::homogeneous(HomogeneousComponent::linear(-3, 0, TrigPoly::one(3)));
        assert!(stokes_boundary(&t, 0).unwrap().density.is_zero());
        let t = FormalSymbol::homogeneous(HomogeneousComponent::linear(-2, 0, TrigPoly::one(3)));
        assert_eq!(stokes_boundary(&t, 0).unwrap().density, TrigPoly::constant(3, s("4/3*pi")));
        assert!(stokes_boundary(&t, 1).unwrap().density.is_zero());
        let shallow = FormalSymbol::zero(3, 0, -1, false);
        assert!(matches!(stokes_boundary(&shallow, 0), Err(Error::InsufficientDepth { .. })));
    }

    #[test]
    fn leading_trace_examples() {
        let two_plus = &TrigPoly::constant(3, ExactScalar::from_int(2)) + &e(3, [1, 0, 0]);
        let sigma = FormalSymbol::homogeneous(HomogeneousComponent::radial(0, two_plus));
        let v = leading_trace(&sigma, &RhoSpec::default_mean(0)).unwrap();
        assert_eq!(v.value, ExactScalar::from_int(2));

        let low = FormalSymbol::zero(3, 0, -3, true).with_component(radial(3, -3));
        assert!(leading_trace(&low, &RhoSpec::default_mean(0)).unwrap().value.is_zero());

        let mut pairings = BTreeMap::new();
        pairings.insert(-1, vec![Pairing { freq: ZERO_MODE, layer: 1, beta: [1, 0, 0], weight: ExactScalar::one() }]);
        let rho = RhoSpec::new(-1, pairings).unwrap();
        let sigma = FormalSymbol::homogeneous(HomogeneousComponent::linear(
            -1,
            0,
            TrigPoly::constant(3, ExactScalar::from_int(5)),
        ));
        assert_eq!(leading_trace(&sigma, &rho).unwrap().value, ExactScalar::from_int(5));

        let high = FormalSymbol::homogeneous(radial(3, 0));
        assert!(matches!(leading_trace(&high, &rho), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn rho_validation() {
        let mut pairings = BTreeMap::new();
        pairings.insert(-5, vec![]);
        assert!(RhoSpec::new(-2, pairings).is_err());
        let mut pairings = BTreeMap::new();
        pairings.insert(-2, vec![Pairing { freq: ZERO_MODE, layer: 2, beta: [1, 0, 0], weight: ExactScalar::one() }]);
        assert!(RhoSpec::new(-2, pairings).is_err());
    }
}
