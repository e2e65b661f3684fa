//! Seeded property suites. Each case draws its inputs from an independent
//! ChaCha stream, so reports are reproducible case by case.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coefficients::{ExactScalar, Mode, TrigPoly};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::functionals::{cutoff_integral, residue, residue_density, stokes_boundary, Pairing, RhoSpec};
use crate::gen::{gen_random_symbol_with, random_scalar, GenParams};
use crate::group::{determinant, exp_symbol, log_symbol, path_determinant, PolynomialPath, TraceFunctional};
use crate::homogeneous::{HomogeneousComponent, RawTerm};
use crate::io::{rho_to_line, symbol_to_json};
use crate::oracle::{
    convergent_integral, fd_derivative_check, geometric_radii, mode_matrix, numeric_commutator_trace, radial_fp,
    FloatSymbol, QuadratureGrid, FLOAT_DIGITS,
};
use crate::symbol::{FormalSymbol, GroupElement};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub message: String,
    pub counterexample: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Random words consumed per case.
    pub draws: Vec<u64>,
    pub wall_time_s: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Everything except timing, for determinism comparisons.
    pub fn fingerprint(&self) -> String {
        serde_json::to_string(&(&self.suite, self.seed, self.cases, &self.failures, &self.draws)).expect("serializable")
    }
}

/// Suite names with their default case counts.
pub const SUITES: &[(&str, usize)] = &[
    ("residue-vanishing", 500),
    ("residue-tracial", 100),
    ("stokes", 200),
    ("decomposition", 200),
    ("odd-closure", 200),
    ("cutoff-convergent", 50),
    ("radial-fit", 50),
    ("four-bracket", 100),
    ("exp-log-det", 100),
    ("path-det", 100),
    ("mode-commutator", 20),
];

pub fn default_cases(name: &str) -> Option<usize> {
    SUITES.iter().find(|(s, _)| *s == name).map(|(_, c)| *c)
}

struct CaseFailure {
    message: String,
    data: Value,
}

impl From<Error> for CaseFailure {
    fn from(e: Error) -> Self {
        CaseFailure { message: format!("unexpected error: {e}"), data: Value::Null }
    }
}

type CaseResult = std::result::Result<(), CaseFailure>;

fn fail(message: String, data: Value) -> CaseFailure {
    CaseFailure { message, data }
}

macro_rules! ensure {
    ($cond:expr, $msg:expr $(, $name:ident)* $(,)?) => {
        let holds: bool = $cond;
        if !holds {
            let mut data = serde_json::Map::new();
            $( data.insert(stringify!($name).to_string(), $crate::suites::to_json(&$name)); )*
            return Err(fail($msg.to_string(), Value::Object(data)));
        }
    };
}

pub(crate) trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for FormalSymbol {
    fn to_json(&self) -> Value {
        symbol_to_json(self)
    }
}

impl ToJson for ExactScalar {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl ToJson for RhoSpec {
    fn to_json(&self) -> Value {
        serde_json::from_str(&rho_to_line(3, self)).unwrap_or(Value::Null)
    }
}

impl ToJson for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
}

impl ToJson for Vec<f64> {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl ToJson for i32 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl ToJson for usize {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

pub(crate) fn to_json<T: ToJson>(v: &T) -> Value {
    v.to_json()
}

trait SymbolRng {
    fn symbol(&mut self, p: impl FnOnce(&mut Self) -> GenParams) -> Result<FormalSymbol>;
}

impl SymbolRng for ChaCha8Rng {
    fn symbol(&mut self, p: impl FnOnce(&mut Self) -> GenParams) -> Result<FormalSymbol> {
        let p = p(self);
        gen_random_symbol_with(self, &p)
    }
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case as u64 + 1);
    r
}

fn run_cases(
    name: &str,
    seed: u64,
    cases: usize,
    mut f: impl FnMut(&mut ChaCha8Rng, usize) -> CaseResult,
) -> SuiteReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut draws = Vec::with_capacity(cases);
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        if let Err(e) = f(&mut rng, case) {
            failures.push(Failure { case, message: e.message, counterexample: e.data });
        }
        draws.push(rng.get_word_pos() as u64);
    }
    SuiteReport { suite: name.to_string(), seed, cases, failures, draws, wall_time_s: start.elapsed().as_secs_f64() }
}

pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let report = match name {
        "residue-vanishing" => run_cases(name, seed, cases, residue_vanishing),
        "residue-tracial" => run_cases(name, seed, cases, residue_tracial),
        "stokes" => run_cases(name, seed, cases, stokes),
        "decomposition" => run_cases(name, seed, cases, decomposition),
        "odd-closure" => run_cases(name, seed, cases, odd_closure),
        "cutoff-convergent" => {
            let grid = QuadratureGrid::standard(3)?;
            run_cases(name, seed, cases, |r, c| cutoff_convergent(r, c, &grid))
        }
        "radial-fit" => {
            let grid = QuadratureGrid::standard(3)?;
            run_cases(name, seed, cases, |r, c| radial_fit(r, c, &grid))
        }
        "four-bracket" => run_cases(name, seed, cases, four_bracket),
        "exp-log-det" => run_cases(name, seed, cases, exp_log_det),
        "path-det" => run_cases(name, seed, cases, path_det),
        "mode-commutator" => run_cases(name, seed, cases, mode_commutator),
        _ => return Err(Error::InvalidParameter(format!("unknown suite {name:?}"))),
    };
    Ok(report)
}

fn dim_for(case: usize) -> usize {
    if case.is_multiple_of(2) {
        3
    } else {
        1
    }
}

fn mixed_close(got: Complex64, want: Complex64, tol: f64) -> bool {
    (got - want).norm() <= tol * want.norm().max(1.0)
}

fn random_x(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect()
}

/// Components on degrees `>= floor`.
fn retained(s: &FormalSymbol, floor: i32) -> BTreeMap<i32, HomogeneousComponent> {
    s.components().iter().filter(|(d, _)| **d >= floor).map(|(d, c)| (*d, c.clone())).collect()
}

fn residue_vanishing(rng: &mut ChaCha8Rng, _case: usize) -> CaseResult {
    for n in [3usize, 1] {
        let order = rng.gen_range(-5..=3);
        let floor = order.min(-(n as i32)) - rng.gen_range(0..=3);
        let sigma = rng.symbol(|rng| GenParams::new(n, order, floor).exact(rng.gen_bool(0.5)))?;
        ensure!(sigma.is_odd_class(), "generator produced a non-odd-class symbol", sigma);
        let r = residue(&sigma)?;
        ensure!(r.value.is_zero(), format!("residue {} of odd-class symbol", r.value), sigma);
    }
    Ok(())
}

fn residue_tracial(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    let n = dim_for(case);
    let ni = n as i32;
    let (a1, a2) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    let f1 = a1.min(-ni - a2) - rng.gen_range(0..=1);
    let f2 = a2.min(-ni - a1) - rng.gen_range(0..=1);
    let s1 = rng.symbol(|_| GenParams::new(n, a1, f1).odd(false).exact(false))?;
    let s2 = rng.symbol(|_| GenParams::new(n, a2, f2).odd(false).exact(false))?;
    let comm = s1.commutator(&s2)?;
    ensure!(comm.floor() <= -ni, "commutator floor does not reach -n", s1, s2);
    let r = residue(&comm)?;
    ensure!(r.value.is_zero(), format!("residue of commutator is {}", r.value), s1, s2);
    Ok(())
}

fn stokes(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    if case == 0 {
        let w = FormalSymbol::homogeneous(HomogeneousComponent::linear(-2, 0, TrigPoly::one(3)));
        let d = stokes_boundary(&w, 0)?.density;
        let want = TrigPoly::constant(3, "4/3*pi".parse()?);
        ensure!(d == want, "witness xi_1|xi|^-3 does not give 4*pi/3", w);
    }
    let order = rng.gen_range(-4..=3);
    let floor = order.min(-2) - rng.gen_range(0..=3);
    let tau = rng.symbol(|rng| GenParams::new(3, order, floor).exact(rng.gen_bool(0.5)))?;
    for axis in 0..3 {
        let d = stokes_boundary(&tau, axis)?;
        ensure!(d.density.is_zero(), format!("boundary term on axis {axis} is nonzero"), tau);
    }
    Ok(())
}

fn worked_decomposition() -> CaseResult {
    let n = 3;
    let scalar = |v: ExactScalar| TrigPoly::constant(n, v);
    let sigma = FormalSymbol::homogeneous(HomogeneousComponent::linear(-3, 0, TrigPoly::one(n)));
    let dec = decompose(&sigma)?;
    let t = |terms: &[([u32; 3], i32, ExactScalar)]| {
        let raw: Vec<_> =
            terms.iter().map(|(b, r, c)| RawTerm { beta: *b, radial: *r, coeff: scalar(c.clone()) }).collect();
        FormalSymbol::homogeneous(HomogeneousComponent::canonicalize(n, -2, &raw).expect("degree -2"))
    };
    let expect = [
        t(&[([0, 0, 0], -2, ExactScalar::from_ratio(-1, 2)), ([2, 0, 0], -4, ExactScalar::one())]),
        t(&[([1, 1, 0], -4, ExactScalar::one())]),
        t(&[([1, 0, 1], -4, ExactScalar::one())]),
    ];
    for (i, (got, want)) in dec.tau.iter().zip(&expect).enumerate() {
        let (got, want) = (got.clone(), want.clone());
        ensure!(got.components() == want.components(), format!("worked example tau_{}", i + 1), got, want);
    }
    let back = dec.reconstruct()?;
    ensure!(back.components() == sigma.components(), "worked example round trip", back);
    Ok(())
}

fn decomposition(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    if case == 0 {
        worked_decomposition()?;
    }
    let order = rng.gen_range(-4..=3);
    let floor = rng.gen_range(-9..=order);
    let sigma = rng.symbol(|rng| GenParams::new(3, order, floor).exact(rng.gen_bool(0.5)))?;
    let dec = decompose(&sigma)?;
    for (i, t) in dec.tau.iter().enumerate() {
        ensure!(t.is_odd_class(), format!("tau_{} not odd-class", i + 1), sigma);
        ensure!(t.order() == order + 1 && t.floor() == floor + 1, format!("tau_{} window", i + 1), sigma);
    }
    let back = dec.reconstruct()?;
    ensure!(back.components() == sigma.components(), "round trip differs", sigma, back);
    ensure!(dec.flux_cutoff() == cutoff_integral(&sigma).density, "flux identity differs", sigma);
    Ok(())
}

fn unit_trig(rng: &mut impl Rng, n: usize) -> TrigPoly {
    let mut k: Mode = [0; 3];
    k[rng.gen_range(0..n)] = rng.gen_range(-2..=2);
    TrigPoly::mode(n, k, random_scalar(rng))
}

fn odd_closure(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    let n = dim_for(case);
    let (a1, a2) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    let s1 = rng.symbol(|rng| GenParams::new(n, a1, a1 - rng.gen_range(0..=3)).exact(rng.gen_bool(0.5)))?;
    let s2 = rng.symbol(|rng| GenParams::new(n, a2, a2 - rng.gen_range(0..=3)).exact(rng.gen_bool(0.5)))?;
    let p = s1.star(&s2)?;
    ensure!(p.is_odd_class(), "product of odd-class symbols is not odd-class", s1, s2);

    if case.is_multiple_of(4) {
        let a = 2 * rng.gen_range(-1..=1);
        let lead = HomogeneousComponent::radial(a, unit_trig(rng, n));
        let rest_floor = a - 1 - rng.gen_range(0..=3);
        let rest = rng.symbol(|rng| GenParams::new(n, a - 1, rest_floor).exact(rng.gen_bool(0.5)))?;
        let sigma = rest.with_order(a).try_add(&FormalSymbol::homogeneous(lead))?;
        let target = -a - rng.gen_range(1..=4);
        let b = sigma.parametrix(target)?;
        ensure!(b.is_odd_class(), "parametrix is not odd-class", sigma, b);
        let check = sigma.star(&b)?;
        let one = retained(&FormalSymbol::identity(n), check.floor());
        ensure!(retained(&check, check.floor()) == one, "sigma * parametrix != 1 on retained degrees", sigma, b);
    }
    Ok(())
}

fn cutoff_convergent(rng: &mut ChaCha8Rng, _case: usize, grid: &QuadratureGrid) -> CaseResult {
    let order = rng.gen_range(-8..=-4);
    let floor = order - rng.gen_range(0..=2);
    let sigma = rng.symbol(|rng| GenParams::new(3, order, floor).odd(rng.gen_bool(0.5)).max_layer(3))?;
    let fs = FloatSymbol::new(&sigma, FLOAT_DIGITS);
    let density = cutoff_integral(&sigma).density;
    for _ in 0..2 {
        let x = random_x(rng, 3);
        let numeric = convergent_integral(&fs, grid, &x);
        let exact = density.eval(&x, FLOAT_DIGITS);
        ensure!(
            mixed_close(numeric, exact, 1e-8),
            "cut-off integral differs from convergent integral",
            sigma,
            x,
            numeric,
            exact
        );
    }
    Ok(())
}

fn radial_fit(rng: &mut ChaCha8Rng, _case: usize, grid: &QuadratureGrid) -> CaseResult {
    let order = rng.gen_range(-6..=2);
    let floor = (order - rng.gen_range(0..=4)).max(-6);
    let p = GenParams::new(3, order, floor).odd(rng.gen_bool(0.5)).max_components(3);
    let sigma = gen_random_symbol_with(rng, &p)?;
    let x = random_x(rng, 3);
    let unknowns = sigma.components().len() + 2;
    let fit = radial_fp(&sigma, &x, &geometric_radii(1.5, 8.0, unknowns + 10), grid)?;
    let fp = cutoff_integral(&sigma).density.eval(&x, FLOAT_DIGITS);
    let res = residue_density(&sigma)?.eval(&x, FLOAT_DIGITS);
    let (got_fp, got_log) = (fit.finite_part, fit.log_coeff);
    ensure!(mixed_close(got_fp, fp, 1e-6), "fitted finite part differs", sigma, x, got_fp, fp);
    ensure!(mixed_close(got_log, res, 1e-6), "fitted log coefficient differs", sigma, x, got_log, res);
    Ok(())
}

fn four_bracket(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    let n = dim_for(case);
    let odd = rng.gen_bool(0.5);
    let (oa, ob) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    let a_sym = rng.symbol(|rng| GenParams::new(n, oa, oa - rng.gen_range(0..=2)).odd(odd).exact(rng.gen_bool(0.5)))?;
    let b_sym = rng.symbol(|rng| GenParams::new(n, ob, ob - rng.gen_range(0..=2)).odd(odd).exact(rng.gen_bool(0.5)))?;
    let power = rng.gen_range(1..=2);
    let up = FormalSymbol::radial_power(n, power, ExactScalar::one());
    let down = FormalSymbol::radial_power(n, -power, ExactScalar::one());
    let (a, b) = (&a_sym, &b_sym);
    let t1 = a.star(&up)?.commutator(&down.star(b)?)?;
    let t2 = up.star(a)?.commutator(&b.star(&down)?)?;
    let t3 = a.star(b)?.star(&down)?.commutator(&up)?;
    let t4 = down.star(b)?.star(a)?.commutator(&up)?;
    let lhs = t1.try_add(&t2)?.try_add(&t3)?.try_add(&t4)?;
    let rhs = a.commutator(b)?.scale(&ExactScalar::from_int(2));
    let floor = lhs.floor().max(rhs.floor());
    ensure!(
        retained(&lhs, floor) == retained(&rhs, floor),
        "four-bracket sum differs from 2[A,B]",
        a_sym,
        b_sym,
        power
    );
    Ok(())
}

fn random_rho(rng: &mut impl Rng, n: usize, order: i32) -> RhoSpec {
    if rng.gen_bool(0.5) {
        return RhoSpec::default_mean(order);
    }
    let mut map: BTreeMap<i32, Vec<Pairing>> = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(2 * order..=order);
        let layer = if n == 1 { rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
        let mut beta = [0u32; 3];
        for _ in 0..layer {
            beta[rng.gen_range(0..n)] += 1;
        }
        let mut freq: Mode = [0; 3];
        freq[rng.gen_range(0..n)] = rng.gen_range(-1..=1);
        map.entry(d).or_default().push(Pairing { freq, layer, beta, weight: random_scalar(rng) });
    }
    RhoSpec::new(order, map).expect("valid random rho")
}

fn exp_log_det(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    let n = dim_for(case);
    let digits = FLOAT_DIGITS;

    // Exp/Log round trip.
    let order = rng.gen_range(-3..=-1);
    let floor = order - rng.gen_range(0..=4);
    let a = rng.symbol(|rng| GenParams::new(n, order, floor).odd(rng.gen_bool(0.5)).exact(rng.gen_bool(0.5)))?;
    let back = log_symbol(&exp_symbol(&a)?)?;
    ensure!(back.floor() == a.floor() && retained(&back, floor) == retained(&a, floor), "Log(Exp(A)) != A", a, back);

    // Leading-trace determinant is multiplicative.
    let order = rng.gen_range(-2..=-1);
    let floor = 2 * order - rng.gen_range(0..=1);
    let p = GenParams::new(n, order, floor).odd(rng.gen_bool(0.5)).exact(false);
    let (ga, gb) = (gen_random_symbol_with(rng, &p)?, gen_random_symbol_with(rng, &p)?);
    let rho = random_rho(rng, n, order);
    let lam = TraceFunctional::new(ExactScalar::one(), ExactScalar::zero(), rho.clone());
    let (g, h) = (GroupElement::new(ga.clone())?, GroupElement::new(gb.clone())?);
    let lhs = determinant(&g.mul(&h)?, &lam, digits)?.exponent.value;
    let rhs = &determinant(&g, &lam, digits)?.exponent.value + &determinant(&h, &lam, digits)?.exponent.value;
    ensure!(lhs == rhs, "Det_{1,0} not multiplicative", ga, gb, rho, lhs, rhs);

    // Canonical-trace determinant on commuting x-independent pairs.
    let order = rng.gen_range(-3..=-1);
    let floor = order - rng.gen_range(0..=4);
    let p = GenParams::new(n, order, floor).max_freq(0).odd(rng.gen_bool(0.5)).exact(rng.gen_bool(0.5));
    let (ca, cb) = (gen_random_symbol_with(rng, &p)?, gen_random_symbol_with(rng, &p)?);
    let lam = TraceFunctional::canonical(order);
    let (g, h) = (GroupElement::new(ca.clone())?, GroupElement::new(cb.clone())?);
    let lhs = determinant(&g.mul(&h)?, &lam, digits)?.exponent.value;
    let rhs = &determinant(&g, &lam, digits)?.exponent.value + &determinant(&h, &lam, digits)?.exponent.value;
    ensure!(lhs == rhs, "Det_{0,1} not multiplicative on commuting pair", ca, cb, lhs, rhs);

    if case < 10 {
        let alpha = ExactScalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        let g = GroupElement::new(FormalSymbol::radial_power(3, -4, alpha.clone()))?;
        let det = determinant(&g, &TraceFunctional::canonical(-4), digits)?;
        let want = &alpha * &"4*pi".parse::<ExactScalar>()?;
        let got = det.exponent.value.clone();
        ensure!(got == want, "Det_{0,1}(I + a|xi|^-4) exponent", alpha, got, want);
        let value = det.value;
        let fv = want.eval(digits).exp();
        ensure!(mixed_close(value, fv, 1e-12), "Det_{0,1}(I + a|xi|^-4) value", alpha, value, fv);
    }
    Ok(())
}

fn path_det(rng: &mut ChaCha8Rng, case: usize) -> CaseResult {
    let n = dim_for(case);
    let digits = FLOAT_DIGITS;
    let order = rng.gen_range(-2..=-1);
    let floor = 2 * order - rng.gen_range(0..=2);
    let odd = rng.gen_bool(0.5);
    let p = GenParams::new(n, order, floor).odd(odd).exact(false);
    let rho = random_rho(rng, n, order);
    let lam = TraceFunctional::new(ExactScalar::one(), ExactScalar::zero(), rho.clone());

    let a = gen_random_symbol_with(rng, &p)?;
    let pd = path_determinant(&PolynomialPath::straight(&a)?, &lam, digits)?;
    let det = determinant(&GroupElement::new(a.clone())?, &lam, digits)?;
    let (got, want) = (pd.result.exponent.value.clone(), det.exponent.value);
    ensure!(got == want, "straight path exponent != lambda(Log(endpoint))", a, rho, got, want);
    let slope = pd.exponent_poly.get(1).cloned().unwrap_or_default();
    let lam_a = lam.apply(&a)?.value;
    ensure!(slope == lam_a, "linear coefficient of E(t) != lambda(u)", a, rho, slope, lam_a);

    if case.is_multiple_of(2) {
        let c = gen_random_symbol_with(rng, &p)?;
        let d = gen_random_symbol_with(rng, &p)?;
        let zero = FormalSymbol::zero(n, order, floor, true);
        let gamma1 = PolynomialPath::new(vec![zero.clone(), c.clone()])?;
        let gamma2 = PolynomialPath::new(vec![zero, c.try_sub(&d)?, d.clone()])?;
        let e1 = path_determinant(&gamma1, &lam, digits)?.result.exponent.value;
        let e2 = path_determinant(&gamma2, &lam, digits)?.result.exponent.value;
        ensure!(e1 == e2, "path exponents differ for homotopic paths", c, d, rho, e1, e2);
    }

    if case < 20 {
        let order = rng.gen_range(-3..=-1);
        let u = rng.symbol(|rng| GenParams::new(n, order, order - rng.gen_range(0..=3)).exact(rng.gen_bool(0.5)))?;
        let lam = TraceFunctional::new(random_scalar(rng), random_scalar(rng), RhoSpec::default_mean(order));
        let chk = fd_derivative_check(&u, &lam, 1e-4, digits)?;
        let (numeric, exact) = (chk.numeric, chk.exact);
        ensure!(
            mixed_close(numeric, exact, 1e-6),
            "finite-difference derivative differs from lambda(u)",
            u,
            numeric,
            exact
        );
    }
    Ok(())
}

/// Divide by an integer bounding the largest mode-matrix entry.
fn unit_scaled(s: &FormalSymbol) -> Result<FormalSymbol> {
    let m = mode_matrix(s, 8)?.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(s.scale(&ExactScalar::from_ratio(1, m.ceil().max(1.0) as i64)))
}

fn mode_commutator(rng: &mut ChaCha8Rng, _case: usize) -> CaseResult {
    let a_ord = rng.gen_range(-1..=0);
    let b_ord = -2 - a_ord - rng.gen_range(0..=1);
    let a =
        unit_scaled(&rng.symbol(|rng| GenParams::new(1, a_ord, a_ord - rng.gen_range(0..=2)).odd(rng.gen_bool(0.5)))?)?;
    let b =
        unit_scaled(&rng.symbol(|rng| GenParams::new(1, b_ord, b_ord - rng.gen_range(0..=2)).odd(rng.gen_bool(0.5)))?)?;
    let mut traces = Vec::new();
    for k in [32usize, 64, 128] {
        traces.push(numeric_commutator_trace(&mode_matrix(&a, k)?, &mode_matrix(&b, k)?)?.norm());
    }
    ensure!(traces.windows(2).all(|w| w[1] <= w[0] + 1e-15), "commutator trace not decreasing in K", a, b, traces);
    ensure!(traces[2] < 1e-3, "commutator trace at K = 128 too large", a, b, traces);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_runs() {
        for (name, _) in SUITES {
            let r = run_suite(name, 11, 2).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
        }
        assert!(run_suite("nope", 0, 1).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("odd-closure", 5, 4).unwrap();
        let b = run_suite("odd-closure", 5, 4).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}
