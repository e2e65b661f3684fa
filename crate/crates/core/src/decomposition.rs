//! Writing an odd-class symbol as a sum of ξ-derivatives `σ = Σ_i ∂_{ξ_i} τ_i`.

use crate::coefficients::{ExactScalar, TrigPoly};
use crate::error::{Error, Result};
use crate::symbol::FormalSymbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeDecomposition {
    pub tau: Vec<FormalSymbol>,
    pub residual_floor: i32,
}

impl DerivativeDecomposition {
    /// `Σ_i ∂_{ξ_i} τ_i`.
    pub fn reconstruct(&self) -> Result<FormalSymbol> {
        let mut iter = self.tau.iter().enumerate();
        let (_, first) = iter.next().ok_or_else(|| Error::InvalidParameter("empty decomposition".into()))?;
        let mut acc = first.xi_derivative(0);
        for (i, t) in iter {
            acc = acc.try_add(&t.xi_derivative(i))?;
        }
        Ok(acc)
    }

    /// Finite part rebuilt from boundary fluxes: `-Σ_i Σ_{e≠1-n} ∮ τ_{i,e} ω_i`.
    pub fn flux_cutoff(&self) -> TrigPoly {
        let n = self.tau.len();
        let mut density = TrigPoly::zero(n);
        for (i, t) in self.tau.iter().enumerate() {
            for (e, c) in t.components() {
                if *e == 1 - n as i32 {
                    continue;
                }
                density.add_assign_ref(&c.mul_xi(i).sphere_integral().scale(&ExactScalar::from_int(-1)));
            }
        }
        density
    }
}

/// Decompose an odd-class symbol. Homogeneous degrees `d ≠ -n` use the Euler
/// identity; degree `-n` goes through the inverse sphere Laplacian.
pub fn decompose(sigma: &FormalSymbol) -> Result<DerivativeDecomposition> {
    let n = sigma.dim();
    if n < 3 {
        return Err(Error::UnsupportedDimension(n, "the degree -n component has no derivative preimage on S^0"));
    }
    if let Some(d) = sigma.parity_violation() {
        return Err(Error::NotOddClass(d));
    }
    let ni = n as i32;
    let mut tau: Vec<FormalSymbol> =
        (0..n).map(|_| FormalSymbol::zero(n, sigma.order() + 1, sigma.floor() + 1, sigma.is_exact())).collect();
    for (d, c) in sigma.components() {
        if *d == -ni {
            let b = c.sphere_laplacian_inverse()?.with_degree(2 - ni);
            for (i, t) in tau.iter_mut().enumerate() {
                let part = FormalSymbol::homogeneous(b.xi_derivative(i).scale(&ExactScalar::from_int(-1)));
                *t = t.try_add(&part)?;
            }
        } else {
            let w = ExactScalar::from_ratio(1, (*d + ni) as i64);
            for (i, t) in tau.iter_mut().enumerate() {
                let part = FormalSymbol::homogeneous(c.mul_xi(i).scale(&w));
                *t = t.try_add(&part)?;
            }
        }
    }
    Ok(DerivativeDecomposition { tau, residual_floor: sigma.floor() })
}

/// Decomposition of `σ - σ_L` where `σ_L` is the leading component.
pub fn decompose_below_leading(sigma: &FormalSymbol) -> Result<DerivativeDecomposition> {
    let lead = FormalSymbol::homogeneous(sigma.leading_symbol());
    let rest = sigma.try_sub(&lead)?;
    let mut rest = rest.with_order(sigma.order());
    if !sigma.is_exact() {
        rest = rest.truncate(sigma.floor());
    }
    decompose(&rest)
}
