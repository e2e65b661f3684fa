//! Truncated classical symbols `σ ∼ Σ_d σ_d` and their star-product algebra.
//!
//! A [`FormalSymbol`] stores the homogeneous components on the degree window
//! `[floor, order]`. When `exact` is set the symbol is literally the finite sum
//! `Σ σ_d(x, ξ)·1_{|ξ|≥1}`; otherwise everything below `floor` is unknown and
//! every operation propagates that uncertainty like big-O terms of a series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coefficients::{ExactScalar, TrigPoly};
use crate::error::{Error, Result};
use crate::homogeneous::{HomogeneousComponent, RawTerm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSymbol {
    n: usize,
    order: i32,
    floor: i32,
    exact: bool,
    components: BTreeMap<i32, HomogeneousComponent>,
}

fn check_dim(n: usize) -> Result<()> {
    match n {
        1 | 3 => Ok(()),
        _ => Err(Error::UnsupportedDimension(n, "only n = 1 and n = 3 are supported")),
    }
}

impl FormalSymbol {
    /// The zero symbol with the given order window.
    pub fn zero(n: usize, order: i32, floor: i32, exact: bool) -> Self {
        assert!(floor <= order, "floor {floor} above order {order}");
        FormalSymbol { n, order, floor, exact, components: BTreeMap::new() }
    }

    /// The identity symbol `1`, exact.
    pub fn identity(n: usize) -> Self {
        FormalSymbol::zero(n, 0, 0, true).with_component(HomogeneousComponent::radial(0, TrigPoly::one(n)))
    }

    /// Exact single-component symbol.
    pub fn homogeneous(c: HomogeneousComponent) -> Self {
        let d = c.degree();
        FormalSymbol::zero(c.dim(), d, d, true).with_component(c)
    }

    /// Exact `c·|ξ|^a`, x-independent.
    pub fn radial_power(n: usize, a: i32, c: ExactScalar) -> Self {
        FormalSymbol::homogeneous(HomogeneousComponent::radial_scalar(n, a, c))
    }

    pub fn from_components(
        n: usize,
        order: i32,
        floor: i32,
        exact: bool,
        components: impl IntoIterator<Item = HomogeneousComponent>,
    ) -> Result<Self> {
        check_dim(n)?;
        if floor > order {
            return Err(Error::InvalidParameter(format!("floor {floor} above order {order}")));
        }
        let mut s = FormalSymbol::zero(n, order, floor, exact);
        for c in components {
            if c.dim() != n {
                return Err(Error::DimensionMismatch(n, c.dim()));
            }
            if c.degree() < floor || c.degree() > order {
                return Err(Error::InvalidParameter(format!(
                    "component degree {} outside [{floor}, {order}]",
                    c.degree()
                )));
            }
            s.add_component(&c, &ExactScalar::one());
        }
        Ok(s)
    }

    /// Builder: add a component, widening the window if needed.
    pub fn with_component(mut self, c: HomogeneousComponent) -> Self {
        assert_eq!(c.dim(), self.n);
        self.order = self.order.max(c.degree());
        self.floor = self.floor.min(c.degree());
        self.add_component(&c, &ExactScalar::one());
        self
    }

    /// Builder: set the floor. Exact symbols may deepen freely; raising the
    /// floor drops components (and exactness, if anything nonzero is dropped).
    pub fn with_floor(&self, floor: i32) -> Self {
        self.truncate(floor)
    }

    fn add_component(&mut self, c: &HomogeneousComponent, w: &ExactScalar) {
        if c.is_zero() || w.is_zero() {
            return;
        }
        let d = c.degree();
        let updated = match self.components.get(&d) {
            Some(e) => e.add_scaled(c, w).expect("degree and dimension checked"),
            None => c.scale(w),
        };
        if updated.is_zero() {
            self.components.remove(&d);
        } else {
            self.components.insert(d, updated);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn components(&self) -> &BTreeMap<i32, HomogeneousComponent> {
        &self.components
    }

    pub fn component(&self, d: i32) -> Option<&HomogeneousComponent> {
        self.components.get(&d)
    }

    /// Component at degree `d`, zero if absent.
    pub fn component_or_zero(&self, d: i32) -> HomogeneousComponent {
        self.components.get(&d).cloned().unwrap_or_else(|| HomogeneousComponent::zero(self.n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Highest degree with a nonzero component.
    pub fn leading_degree(&self) -> Option<i32> {
        self.components.keys().next_back().copied()
    }

    pub fn is_xi_polynomial(&self) -> bool {
        self.components.values().all(|c| c.is_polynomial())
    }

    pub fn is_x_independent(&self) -> bool {
        self.components.values().all(|c| c.is_x_independent())
    }

    pub fn max_frequency(&self) -> i64 {
        self.components.values().map(|c| c.max_frequency()).max().unwrap_or(0)
    }

    /// Drop trailing zero leading components: order becomes the leading degree
    /// (the floor, for the zero symbol).
    pub fn normalized(&self) -> Self {
        let mut s = self.clone();
        s.order = self.leading_degree().unwrap_or(self.floor);
        s
    }

    /// Raise the order bound (zero leading components).
    pub fn with_order(&self, order: i32) -> Self {
        assert!(order >= self.leading_degree().unwrap_or(i32::MIN) && order >= self.floor);
        let mut s = self.clone();
        s.order = order;
        s
    }

    /// Move the floor to `floor`. See [`FormalSymbol::with_floor`].
    pub fn truncate(&self, floor: i32) -> Self {
        let mut s = self.clone();
        if floor <= self.floor {
            if self.exact {
                s.floor = floor;
            }
            return s;
        }
        let floor = floor.min(self.order);
        let dropped = s.components.keys().any(|d| *d < floor);
        s.components.retain(|d, _| *d >= floor);
        s.floor = floor;
        s.exact = self.exact && !dropped;
        s
    }

    /// `w1·σ1 + w2·σ2`. The floor is the highest floor among inexact operands,
    /// or the lowest one when both are exact.
    pub fn add_weighted(&self, w1: &ExactScalar, o: &FormalSymbol, w2: &ExactScalar) -> Result<FormalSymbol> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        let order = self.order.max(o.order);
        let exact = self.exact && o.exact;
        let floor = match (self.exact, o.exact) {
            (true, true) => self.floor.min(o.floor),
            (false, true) => self.floor,
            (true, false) => o.floor,
            (false, false) => self.floor.max(o.floor),
        };
        let mut s = FormalSymbol::zero(self.n, order, floor, exact);
        for (d, c) in &self.components {
            if *d >= floor {
                s.add_component(c, w1);
            }
        }
        for (d, c) in &o.components {
            if *d >= floor {
                s.add_component(c, w2);
            }
        }
        Ok(s)
    }

    pub fn try_add(&self, o: &FormalSymbol) -> Result<FormalSymbol> {
        self.add_weighted(&ExactScalar::one(), o, &ExactScalar::one())
    }

    pub fn try_sub(&self, o: &FormalSymbol) -> Result<FormalSymbol> {
        self.add_weighted(&ExactScalar::one(), o, &ExactScalar::from_int(-1))
    }

    pub fn scale(&self, w: &ExactScalar) -> FormalSymbol {
        let mut s = FormalSymbol::zero(self.n, self.order, self.floor, self.exact);
        for c in self.components.values() {
            s.add_component(c, w);
        }
        s
    }

    /// Multiply every coefficient by a trigonometric polynomial (left
    /// multiplication by a function of x).
    pub fn scale_trig(&self, p: &TrigPoly) -> FormalSymbol {
        let mut s = FormalSymbol::zero(self.n, self.order, self.floor, self.exact);
        for c in self.components.values() {
            s.add_component(&c.scale_trig(p), &ExactScalar::one());
        }
        s
    }

    /// Star product `σ1 ⋆ σ2 ∼ Σ_α (-i)^{|α|}/α! ∂_ξ^α σ1 ∂_x^α σ2`.
    ///
    /// The result is exact iff both factors are exact and the α-sum
    /// terminates: `σ1` polynomial in ξ or `σ2` independent of x.
    pub fn star(&self, o: &FormalSymbol) -> Result<FormalSymbol> {
        self.star_with_floor(o, None)
    }

    /// Star product computed only on degrees `>= floor` (and the natural floor).
    pub fn star_truncated(&self, o: &FormalSymbol, floor: i32) -> Result<FormalSymbol> {
        self.star_with_floor(o, Some(floor))
    }

    fn star_with_floor(&self, o: &FormalSymbol, target: Option<i32>) -> Result<FormalSymbol> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(self.n, o.n));
        }
        let order = self.order + o.order;
        let terminates = self.is_xi_polynomial() || o.is_x_independent();
        let natural_exact = self.exact && o.exact && terminates;
        let natural_floor = if natural_exact {
            if o.is_x_independent() {
                self.floor + o.floor
            } else {
                o.floor
            }
        } else {
            match (self.exact, o.exact) {
                (false, false) | (true, true) => (self.floor + o.order).max(self.order + o.floor),
                (true, false) => self.order + o.floor,
                (false, true) => self.floor + o.order,
            }
        };
        let floor = natural_floor.max(target.unwrap_or(i32::MIN)).min(order);
        let exact = natural_exact && floor <= natural_floor;
        let mut s = FormalSymbol::zero(self.n, order, floor, exact);
        for c in star_window(self, o, floor, order) {
            s.add_component(&c, &ExactScalar::one());
        }
        Ok(s)
    }

    /// `σ1 ⋆ σ2 - σ2 ⋆ σ1`.
    pub fn commutator(&self, o: &FormalSymbol) -> Result<FormalSymbol> {
        self.star(o)?.try_sub(&o.star(self)?)
    }

    pub fn is_odd_class(&self) -> bool {
        self.components.values().all(|c| c.parity_ok())
    }

    /// First component violating odd-class parity.
    pub fn parity_violation(&self) -> Option<i32> {
        self.components.values().find(|c| !c.parity_ok()).map(|c| c.degree())
    }

    pub fn leading_symbol(&self) -> HomogeneousComponent {
        match self.components.iter().next_back() {
            Some((_, c)) => c.clone(),
            None => HomogeneousComponent::zero(self.n, self.order),
        }
    }

    /// Right star-inverse `b` with `σ ⋆ b = 1` on every degree the product
    /// retains. `floor` is the floor of the returned parametrix (raised when
    /// the input's own floor does not determine that many terms).
    ///
    /// The leading component must be `u(x)|ξ|^a` with `u` a single mode.
    pub fn parametrix(&self, floor: i32) -> Result<FormalSymbol> {
        let lead = self.leading_symbol();
        let a = lead.degree();
        let unit = match (lead.layers().len(), lead.layer(0)) {
            (1, Some(h)) => h.monomials().get(&[0, 0, 0]).cloned(),
            _ => None,
        };
        let unit =
            unit.ok_or_else(|| Error::UnsupportedLeading(format!("degree {a} component is not u(x)|xi|^{a}")))?;
        let inv = unit.invert_unit().map_err(|e| Error::UnsupportedLeading(e.to_string()))?;
        let b0 = HomogeneousComponent::radial(-a, inv);

        let mut floor = floor.min(-a);
        if !self.exact {
            floor = floor.max(self.floor - 2 * a);
        }
        let sigma = self.normalized();
        let exact = self.exact && self.components.len() == 1 && self.is_x_independent();
        let mut b = FormalSymbol::zero(self.n, -a, floor, exact);
        b.add_component(&b0, &ExactScalar::one());
        for k in 1..=(-a - floor) {
            let residual = star_window(&sigma, &b, -k, -k);
            if let Some(r) = residual.into_iter().next() {
                let next = b0.comp_mul(&r)?.scale(&ExactScalar::from_int(-1));
                b.add_component(&next, &ExactScalar::one());
            }
        }
        Ok(b)
    }

    /// Symbol of `[x_i, Op(σ)]`: `i·∂_{ξ_i}σ`, with `axis` zero-based.
    pub fn coordinate_bracket(&self, axis: usize) -> FormalSymbol {
        self.xi_derivative(axis).scale(&ExactScalar::i())
    }

    /// Componentwise `∂_{ξ_i}`; order and floor drop by one.
    pub fn xi_derivative(&self, axis: usize) -> FormalSymbol {
        let mut s = FormalSymbol::zero(self.n, self.order - 1, self.floor - 1, self.exact);
        for c in self.components.values() {
            s.add_component(&c.xi_derivative(axis), &ExactScalar::one());
        }
        s
    }

    /// Symbol with the components outside `[lo, hi]` removed (both exact
    /// bookkeeping and floor are left to the caller).
    pub fn restrict(&self, lo: i32, hi: i32) -> FormalSymbol {
        let mut s = self.clone();
        s.components.retain(|d, _| *d >= lo && *d <= hi);
        s
    }

    /// Build from raw `(degree, terms)` data, canonicalizing each component.
    pub fn from_raw(
        n: usize,
        order: i32,
        floor: i32,
        exact: bool,
        raw: &[(i32, Vec<RawTerm>)],
    ) -> Result<FormalSymbol> {
        let comps = raw
            .iter()
            .map(|(d, terms)| HomogeneousComponent::canonicalize(n, *d, terms))
            .collect::<Result<Vec<_>>>()?;
        FormalSymbol::from_components(n, order, floor, exact, comps)
    }
}

/// `1/α!` times `(-i)^{|α|}`.
fn star_coefficient(alpha: &[u32; 3]) -> ExactScalar {
    let mut fact = BigInt::one();
    for &a in alpha {
        for m in 2..=a {
            fact *= BigInt::from(m);
        }
    }
    let total: u32 = alpha.iter().sum();
    ExactScalar::i_pow(-(total as i64)).scale_rational(&BigRational::new(BigInt::one(), fact))
}

/// Components of `σ1 ⋆ σ2` on degrees `[lo, hi]`, ignoring floors and
/// exactness bookkeeping.
pub(crate) fn star_window(s1: &FormalSymbol, s2: &FormalSymbol, lo: i32, hi: i32) -> Vec<HomogeneousComponent> {
    let n = s1.n;
    let mut acc: BTreeMap<i32, HomogeneousComponent> = BTreeMap::new();
    for (d1, c1) in &s1.components {
        for (d2, c2) in &s2.components {
            let top = d1 + d2;
            if top < lo {
                continue;
            }
            let max_alpha = (top - lo) as u32;
            let min_alpha = (top - hi).max(0) as u32;
            let mut emit = |alpha: &[u32; 3], dxi: &HomogeneousComponent, dx: &HomogeneousComponent| {
                let total: u32 = alpha.iter().sum();
                if total < min_alpha {
                    return;
                }
                let term = dxi.comp_mul(dx).expect("same dimension").scale(&star_coefficient(alpha));
                if term.is_zero() {
                    return;
                }
                let d = term.degree();
                let e = acc.entry(d).or_insert_with(|| HomogeneousComponent::zero(n, d));
                *e = e.try_add(&term).expect("same degree");
            };
            walk_alpha(0, n, max_alpha, [0; 3], c1.clone(), c2.clone(), &mut emit);
        }
    }
    acc.into_values().filter(|c| !c.is_zero()).collect()
}

/// Enumerate multi-indices `α` with `|α| <= budget`, carrying `∂_ξ^α c1` and
/// `∂_x^α c2` and pruning as soon as either vanishes.
fn walk_alpha(
    axis: usize,
    n: usize,
    budget: u32,
    mut alpha: [u32; 3],
    dxi: HomogeneousComponent,
    dx: HomogeneousComponent,
    emit: &mut impl FnMut(&[u32; 3], &HomogeneousComponent, &HomogeneousComponent),
) {
    if axis == n {
        emit(&alpha, &dxi, &dx);
        return;
    }
    let mut unit = [0u32; 3];
    unit[axis] = 1;
    let (mut dxi, mut dx) = (dxi, dx);
    for m in 0..=budget {
        if m > 0 {
            dx = dx.x_derivative_multi(&unit);
            if dx.is_zero() {
                break;
            }
            dxi = dxi.xi_derivative(axis);
            if dxi.is_zero() {
                break;
            }
            alpha[axis] = m;
        }
        walk_alpha(axis + 1, n, budget - m, alpha, dxi.clone(), dx.clone(), emit);
    }
}

/// An element `I + A` of the group of invertible symbols with `ord A <= -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    base: FormalSymbol,
}

impl GroupElement {
    pub fn new(base: FormalSymbol) -> Result<Self> {
        if base.order() > -1 {
            return Err(Error::UnsupportedOrder(base.order()));
        }
        Ok(GroupElement { base })
    }

    /// The identity, represented with the given base order and floor.
    pub fn identity(n: usize, order: i32, floor: i32) -> Self {
        GroupElement { base: FormalSymbol::zero(n, order.min(-1), floor.min(order.min(-1)), true) }
    }

    pub fn base(&self) -> &FormalSymbol {
        &self.base
    }

    pub fn into_base(self) -> FormalSymbol {
        self.base
    }

    /// `(I + A)(I + B) = I + (A + B + A⋆B)`.
    pub fn mul(&self, o: &GroupElement) -> Result<GroupElement> {
        let floor = self.base.floor().max(o.base.floor());
        let ab = self.base.star_truncated(&o.base, floor)?;
        let sum = self.base.try_add(&o.base)?.try_add(&ab)?;
        let order = self.base.order().max(o.base.order());
        let mut s = sum.truncate(floor);
        s.order = order;
        GroupElement::new(s)
    }

    /// Full symbol `1 + A`.
    pub fn full_symbol(&self) -> Result<FormalSymbol> {
        FormalSymbol::identity(self.base.dim()).try_add(&self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Mode;

    fn c(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    fn e(n: usize, k: Mode) -> TrigPoly {
        TrigPoly::mode(n, k, ExactScalar::one())
    }

    fn radial(n: usize, d: i32) -> HomogeneousComponent {
        HomogeneousComponent::radial(d, TrigPoly::one(n))
    }

    #[test]
    fn add_rules() {
        let s = FormalSymbol::homogeneous(radial(3, 2)).with_component(radial(3, -4));
        let zero = FormalSymbol::zero(3, 0, -6, true);
        assert_eq!(s.try_add(&zero).unwrap().components(), s.components());
        assert!(s.try_sub(&s).unwrap().is_zero());

        let a = FormalSymbol::zero(3, 0, -5, false).with_component(radial(3, -5));
        let b = FormalSymbol::zero(3, -1, -3, false).with_component(radial(3, -2));
        let sum = a.try_add(&b).unwrap();
        assert_eq!(sum.floor(), -3);
        assert!(!sum.is_exact());
        assert!(sum.component(-5).is_none());
    }

    #[test]
    fn star_x_independent_pair() {
        let a = FormalSymbol::homogeneous(radial(3, 2));
        let b = FormalSymbol::homogeneous(radial(3, -2));
        let p = a.star(&b).unwrap();
        assert_eq!(p.components(), FormalSymbol::identity(3).components());
        assert!(p.is_exact());
    }

    #[test]
    fn star_and_commutator_in_one_dimension() {
        let ex = FormalSymbol::homogeneous(HomogeneousComponent::radial(0, e(1, [1, 0, 0])));
        let xi = FormalSymbol::homogeneous(HomogeneousComponent::linear(1, 0, TrigPoly::one(1)));
        let comm = ex.star(&xi).unwrap().try_sub(&xi.star(&ex).unwrap()).unwrap();
        let expect = HomogeneousComponent::radial(0, e(1, [1, 0, 0])).scale(&c(-1));
        assert_eq!(comm.components().values().cloned().collect::<Vec<_>>(), vec![expect.clone()]);
        assert!(comm.is_exact());
        assert_eq!(ex.commutator(&xi).unwrap().components().values().cloned().collect::<Vec<_>>(), vec![expect]);
        assert!(xi.commutator(&xi).unwrap().is_zero());
    }

    #[test]
    fn star_floor_rule() {
        let a = FormalSymbol::zero(3, 0, -2, false).with_component(HomogeneousComponent::radial(0, e(3, [1, 0, 0])));
        let b =
            FormalSymbol::zero(3, -1, -3, false).with_component(HomogeneousComponent::linear(-1, 0, e(3, [0, 1, 0])));
        let p = a.star(&b).unwrap();
        assert_eq!((p.order(), p.floor(), p.is_exact()), (-1, -3, false));
    }

    #[test]
    fn x_independent_commutator_vanishes() {
        let a = FormalSymbol::homogeneous(HomogeneousComponent::linear(-1, 0, TrigPoly::one(3)))
            .with_component(radial(3, -2));
        let b = FormalSymbol::homogeneous(radial(3, 1)).with_component(HomogeneousComponent::linear(
            -3,
            2,
            TrigPoly::one(3),
        ));
        let comm = a.commutator(&b).unwrap();
        assert!(comm.is_zero());
        assert!(comm.is_exact());
    }

    #[test]
    fn odd_class_checks() {
        let s = FormalSymbol::homogeneous(radial(3, 2)).with_component(radial(3, 0));
        assert!(s.is_odd_class());
        assert!(!FormalSymbol::homogeneous(radial(3, -3)).is_odd_class());
        assert!(FormalSymbol::homogeneous(HomogeneousComponent::linear(-3, 0, TrigPoly::one(3))).is_odd_class());
    }

    #[test]
    fn parametrix_of_laplacian() {
        let s = FormalSymbol::homogeneous(radial(3, 2));
        let b = s.parametrix(-10).unwrap();
        assert_eq!(b.components().values().cloned().collect::<Vec<_>>(), vec![radial(3, -2)]);
        assert!(b.is_exact());
    }

    #[test]
    fn parametrix_geometric_series() {
        let s = FormalSymbol::homogeneous(radial(3, 2)).with_component(radial(3, 0));
        let b = s.parametrix(-6).unwrap();
        let expect = FormalSymbol::zero(3, -2, -6, false)
            .with_component(radial(3, -2))
            .with_component(radial(3, -4).scale(&c(-1)))
            .with_component(radial(3, -6));
        assert_eq!(b.components(), expect.components());
        let check = s.star(&b).unwrap();
        assert_eq!(check.floor(), -4);
        assert_eq!(check.components(), FormalSymbol::identity(3).components());
    }

    #[test]
    fn parametrix_with_modulated_leading_term() {
        let s = FormalSymbol::homogeneous(HomogeneousComponent::radial(2, e(3, [1, 0, 0])))
            .with_component(HomogeneousComponent::linear(1, 1, e(3, [0, 0, 1])));
        let b = s.parametrix(-6).unwrap();
        assert_eq!(b.component(-2).unwrap(), &HomogeneousComponent::radial(-2, e(3, [-1, 0, 0])));
        let check = s.star(&b).unwrap();
        assert_eq!(check.floor(), -4);
        assert_eq!(check.components(), FormalSymbol::identity(3).components());
    }

    #[test]
    fn parametrix_requires_unit_leading() {
        let two = &e(3, [1, 0, 0]) + &TrigPoly::one(3);
        let s = FormalSymbol::homogeneous(HomogeneousComponent::radial(2, two));
        assert!(matches!(s.parametrix(-4), Err(Error::UnsupportedLeading(_))));
        let s = FormalSymbol::homogeneous(HomogeneousComponent::linear(1, 0, TrigPoly::one(3)));
        assert!(matches!(s.parametrix(-4), Err(Error::UnsupportedLeading(_))));
    }

    #[test]
    fn coordinate_brackets() {
        let xi = FormalSymbol::homogeneous(HomogeneousComponent::linear(1, 0, TrigPoly::one(1)));
        let got = xi.coordinate_bracket(0);
        assert_eq!(
            got.components().values().cloned().collect::<Vec<_>>(),
            vec![HomogeneousComponent::radial_scalar(1, 0, ExactScalar::i())]
        );

        let r = FormalSymbol::homogeneous(radial(3, -2));
        let got = r.coordinate_bracket(0);
        let expect = HomogeneousComponent::linear(-3, 0, TrigPoly::constant(3, ExactScalar::i() * c(-2)));
        assert_eq!(got.components().values().cloned().collect::<Vec<_>>(), vec![expect]);

        let k = FormalSymbol::homogeneous(HomogeneousComponent::radial(0, e(3, [1, 1, 0])));
        assert!(k.coordinate_bracket(2).is_zero());
    }

    #[test]
    fn leading_symbols() {
        let s = FormalSymbol::homogeneous(radial(3, 2)).with_component(radial(3, 0));
        assert_eq!(s.leading_symbol(), radial(3, 2));
        assert!(FormalSymbol::zero(3, 0, -3, true).leading_symbol().is_zero());
        let w = HomogeneousComponent::linear(-3, 0, TrigPoly::one(3));
        let s = FormalSymbol::homogeneous(w.clone()).with_component(radial(3, -6));
        assert_eq!(s.leading_symbol(), w);
    }

    #[test]
    fn group_product() {
        let a = GroupElement::new(FormalSymbol::radial_power(3, -2, c(1)).with_floor(-6)).unwrap();
        let b = GroupElement::new(FormalSymbol::radial_power(3, -2, c(2)).with_floor(-6)).unwrap();
        let p = a.mul(&b).unwrap();
        let comps: Vec<_> = p.base().components().values().cloned().collect();
        assert_eq!(comps, vec![radial(3, -4).scale(&c(2)), radial(3, -2).scale(&c(3))]);
        assert!(GroupElement::new(FormalSymbol::radial_power(3, 0, c(1))).is_err());
    }
}
