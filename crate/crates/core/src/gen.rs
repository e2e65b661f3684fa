//! Seeded random symbols for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{ExactScalar, Gaussian, Mode, TrigPoly};
use crate::error::{Error, Result};
use crate::homogeneous::{HomogeneousComponent, RawTerm};
use crate::symbol::FormalSymbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub order: i32,
    pub floor: i32,
    pub max_freq: i64,
    pub max_layer: u32,
    pub odd_class: bool,
    pub exact: bool,
    /// Cap on the number of nonzero components (the leading one always present).
    pub max_components: usize,
}

impl GenParams {
    pub fn new(n: usize, order: i32, floor: i32) -> Self {
        GenParams {
            n,
            order,
            floor,
            max_freq: 2,
            max_layer: 2,
            odd_class: true,
            exact: true,
            max_components: usize::MAX,
        }
    }

    pub fn odd(mut self, odd_class: bool) -> Self {
        self.odd_class = odd_class;
        self
    }

    pub fn exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn max_freq(mut self, k: i64) -> Self {
        self.max_freq = k;
        self
    }

    pub fn max_layer(mut self, l: u32) -> Self {
        self.max_layer = l;
        self
    }

    pub fn max_components(mut self, m: usize) -> Self {
        self.max_components = m;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n != 1 && self.n != 3 {
            return Err(Error::UnsupportedDimension(self.n, "generator supports n = 1 and n = 3"));
        }
        if self.floor > self.order {
            return Err(Error::InvalidParameter(format!("floor {} above order {}", self.floor, self.order)));
        }
        if self.max_freq < 0 || self.max_components == 0 {
            return Err(Error::InvalidParameter("max_freq must be >= 0 and max_components >= 1".into()));
        }
        Ok(())
    }
}

/// Deterministic RNG for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational, occasionally with a power of π.
pub fn random_scalar(rng: &mut impl Rng) -> ExactScalar {
    let num = loop {
        let v = rng.gen_range(-3i64..=3);
        if v != 0 {
            break v;
        }
    };
    let den = rng.gen_range(1i64..=3);
    let g = if rng.gen_bool(0.25) {
        Gaussian::from_ints(0, 1).scale(&num_rational::BigRational::new(num.into(), den.into()))
    } else {
        Gaussian::real(num_rational::BigRational::new(num.into(), den.into()))
    };
    let s = if rng.gen_bool(0.1) { rng.gen_range(-1i32..=1) } else { 0 };
    ExactScalar::monomial(g, s)
}

/// One or two modes, mostly along a single axis.
pub fn random_trig(rng: &mut impl Rng, n: usize, max_freq: i64) -> TrigPoly {
    let terms = rng.gen_range(1..=2);
    let axis = rng.gen_range(0..n);
    let mut p = TrigPoly::zero(n);
    for _ in 0..terms {
        let mut k: Mode = [0; 3];
        if max_freq > 0 && rng.gen_bool(0.7) {
            k[axis] = rng.gen_range(-max_freq..=max_freq);
            if n > 1 && rng.gen_bool(0.15) {
                let other = (axis + 1) % n;
                k[other] = rng.gen_range(-1..=1);
            }
        }
        p.add_mode(k, &random_scalar(rng));
    }
    p
}

fn random_beta(rng: &mut impl Rng, n: usize, l: u32) -> [u32; 3] {
    let mut beta = [0u32; 3];
    for _ in 0..l {
        beta[rng.gen_range(0..n)] += 1;
    }
    beta
}

/// A nonzero homogeneous component of degree `d`.
pub fn random_component(rng: &mut impl Rng, p: &GenParams, d: i32) -> HomogeneousComponent {
    loop {
        let layers: Vec<u32> =
            (0..=p.max_layer).filter(|l| !p.odd_class || (*l as i64 - d as i64).rem_euclid(2) == 0).collect();
        let count = rng.gen_range(1..=2);
        let mut terms = Vec::new();
        for _ in 0..count {
            let l = *layers.choose(rng).expect("at least one admissible layer");
            let beta = random_beta(rng, p.n, l);
            terms.push(RawTerm { beta, radial: d - l as i32, coeff: random_trig(rng, p.n, p.max_freq) });
        }
        let c = HomogeneousComponent::canonicalize(p.n, d, &terms).expect("consistent degrees");
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random symbol on `[floor, order]` with a nonzero leading component.
pub fn gen_random_symbol_with(rng: &mut impl Rng, p: &GenParams) -> Result<FormalSymbol> {
    p.validate()?;
    let mut degrees: Vec<i32> = (p.floor..p.order).filter(|_| rng.gen_bool(0.6)).collect();
    degrees.shuffle(rng);
    degrees.truncate(p.max_components - 1);
    degrees.push(p.order);
    let comps: Vec<_> = degrees.into_iter().map(|d| random_component(rng, p, d)).collect();
    FormalSymbol::from_components(p.n, p.order, p.floor, p.exact, comps)
}

pub fn gen_random_symbol(seed: u64, p: &GenParams) -> Result<FormalSymbol> {
    gen_random_symbol_with(&mut rng(seed), p)
}
