//! Line-oriented JSON formats for symbols, ρ-specs, paths and results.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficients::{ExactScalar, Mode, TrigPoly};
use crate::error::{Error, Result};
use crate::functionals::{FunctionalValue, Pairing, RhoSpec};
use crate::homogeneous::{Beta, RawTerm};
use crate::symbol::FormalSymbol;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub freq: Vec<i64>,
    pub scalar: String,
}

/// `c(x) ξ^β |ξ|^{degree - |β|}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub beta: Vec<u32>,
    pub coeff: Vec<ModeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub degree: i32,
    pub layers: Vec<MonomialRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolFile {
    pub n: usize,
    pub order: i32,
    pub floor: i32,
    pub exact: bool,
    pub odd_class_declared: bool,
    pub components: Vec<ComponentRecord>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn fixed<const N: usize, T: Copy + Default>(v: &[T], n: usize, what: &str) -> Result<[T; N]> {
    if v.len() != n {
        return Err(Error::Parse(format!("{what} has {} entries, expected {n}", v.len())));
    }
    let mut out = [T::default(); N];
    out[..n].copy_from_slice(v);
    Ok(out)
}

impl SymbolFile {
    pub fn from_symbol(s: &FormalSymbol) -> Self {
        let n = s.dim();
        let components = s
            .components()
            .values()
            .map(|c| ComponentRecord {
                degree: c.degree(),
                layers: c
                    .layers()
                    .values()
                    .flat_map(|h| {
                        h.monomials().iter().map(|(beta, coeff)| MonomialRecord {
                            beta: beta[..n].to_vec(),
                            coeff: coeff
                                .coeffs()
                                .iter()
                                .map(|(k, v)| ModeRecord { freq: k[..n].to_vec(), scalar: v.to_string() })
                                .collect(),
                        })
                    })
                    .collect(),
            })
            .collect();
        SymbolFile {
            n,
            order: s.order(),
            floor: s.floor(),
            exact: s.is_exact(),
            odd_class_declared: s.is_odd_class(),
            components,
        }
    }

    /// Canonicalize and validate, including the declared odd-class flag.
    pub fn to_symbol(&self) -> Result<FormalSymbol> {
        let n = self.n;
        if n != 1 && n != 3 {
            return Err(Error::Parse(format!("unsupported dimension {n}")));
        }
        let mut raw = Vec::new();
        for c in &self.components {
            let mut terms = Vec::new();
            for m in &c.layers {
                let beta: Beta = fixed(&m.beta, n, "beta")?;
                let mut coeff = TrigPoly::zero(n);
                for r in &m.coeff {
                    let k: Mode = fixed(&r.freq, n, "freq")?;
                    let v: ExactScalar = r.scalar.parse()?;
                    coeff.add_mode(k, &v);
                }
                let radial = c.degree - beta.iter().sum::<u32>() as i32;
                terms.push(RawTerm { beta, radial, coeff });
            }
            raw.push((c.degree, terms));
        }
        let s = FormalSymbol::from_raw(n, self.order, self.floor, self.exact, &raw).map_err(parse_err)?;
        match (self.odd_class_declared, s.parity_violation()) {
            (true, Some(d)) => Err(Error::NotOddClass(d)),
            (false, None) if !s.is_zero() => {
                Err(Error::Parse("odd_class_declared is false but the symbol is odd-class".into()))
            }
            _ => Ok(s),
        }
    }
}

pub fn symbol_to_line(s: &FormalSymbol) -> String {
    serde_json::to_string(&SymbolFile::from_symbol(s)).expect("serializable")
}

pub fn symbol_to_json(s: &FormalSymbol) -> serde_json::Value {
    serde_json::to_value(SymbolFile::from_symbol(s)).expect("serializable")
}

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}

/// One symbol per non-empty line.
pub fn parse_symbols(text: &str) -> Result<Vec<FormalSymbol>> {
    lines(text).map(|l| serde_json::from_str::<SymbolFile>(l).map_err(parse_err)?.to_symbol()).collect()
}

pub fn parse_symbol(text: &str) -> Result<FormalSymbol> {
    let mut all = parse_symbols(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        k => Err(Error::Parse(format!("expected one symbol, found {k}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingRecord {
    pub degree: i32,
    pub freq: Vec<i64>,
    pub layer: u32,
    pub beta: Vec<u32>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoFile {
    pub n: usize,
    pub order: i32,
    pub pairings: Vec<PairingRecord>,
}

impl RhoFile {
    pub fn from_rho(n: usize, rho: &RhoSpec) -> Self {
        let pairings = rho
            .pairings()
            .iter()
            .flat_map(|(d, ps)| {
                ps.iter().map(move |p| PairingRecord {
                    degree: *d,
                    freq: p.freq[..n].to_vec(),
                    layer: p.layer,
                    beta: p.beta[..n].to_vec(),
                    weight: p.weight.to_string(),
                })
            })
            .collect();
        RhoFile { n, order: rho.order(), pairings }
    }

    pub fn to_rho(&self) -> Result<RhoSpec> {
        let mut map: BTreeMap<i32, Vec<Pairing>> = BTreeMap::new();
        for p in &self.pairings {
            map.entry(p.degree).or_default().push(Pairing {
                freq: fixed(&p.freq, self.n, "freq")?,
                layer: p.layer,
                beta: fixed(&p.beta, self.n, "beta")?,
                weight: p.weight.parse()?,
            });
        }
        RhoSpec::new(self.order, map).map_err(parse_err)
    }
}

pub fn parse_rho(text: &str) -> Result<RhoSpec> {
    let mut it = lines(text);
    let line = it.next().ok_or_else(|| Error::Parse("empty rho file".into()))?;
    serde_json::from_str::<RhoFile>(line).map_err(parse_err)?.to_rho()
}

pub fn rho_to_line(n: usize, rho: &RhoSpec) -> String {
    serde_json::to_string(&RhoFile::from_rho(n, rho)).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub value: String,
    pub float: [f64; 2],
    pub floor_used: i32,
    pub exact: bool,
}

impl ValueRecord {
    pub fn new(v: &FunctionalValue, digits: u32) -> Self {
        let z = v.value.eval(digits);
        ValueRecord { value: v.value.to_string(), float: [z.re, z.im], floor_used: v.floor_used, exact: v.exact }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneous::HomogeneousComponent;

    #[test]
    fn round_trip() {
        let c = TrigPoly::from_modes(
            3,
            [([1, 0, 0], ExactScalar::from_ratio(1, 2)), ([0, 0, 0], "2*i*pi^-1".parse().unwrap())],
        );
        let odd =
            HomogeneousComponent::canonicalize(3, -3, &[RawTerm { beta: [2, 1, 0], radial: -6, coeff: c.clone() }])
                .unwrap();
        let s =
            FormalSymbol::zero(3, 0, -4, false).with_component(HomogeneousComponent::radial(0, c)).with_component(odd);
        let line = symbol_to_line(&s);
        assert_eq!(parse_symbol(&line).unwrap(), s);
    }

    #[test]
    fn canonicalizes_raw_input() {
        let text = r#"{"n":3,"order":2,"floor":2,"exact":true,"odd_class_declared":true,
            "components":[{"degree":2,"layers":[{"beta":[2,0,0],"coeff":[{"freq":[0,0,0],"scalar":"1"}]},
            {"beta":[0,2,0],"coeff":[{"freq":[0,0,0],"scalar":"1"}]},{"beta":[0,0,2],"coeff":[{"freq":[0,0,0],"scalar":"1"}]}]}]}"#;
        let s = parse_symbol(&text.replace('\n', "")).unwrap();
        assert_eq!(s, FormalSymbol::radial_power(3, 2, ExactScalar::one()));
    }

    #[test]
    fn rejects_bad_input() {
        let s = FormalSymbol::radial_power(3, -3, ExactScalar::one());
        let mut file = SymbolFile::from_symbol(&s);
        file.odd_class_declared = true;
        assert_eq!(file.to_symbol(), Err(Error::NotOddClass(-3)));
        assert!(matches!(parse_symbols("{not json"), Err(Error::Parse(_))));
        let mut file = SymbolFile::from_symbol(&s);
        file.components[0].layers[0].coeff[0].scalar = "2**".into();
        assert!(matches!(file.to_symbol(), Err(Error::Parse(_))));
        let mut file = SymbolFile::from_symbol(&s);
        file.floor = -2;
        assert!(matches!(file.to_symbol(), Err(Error::Parse(_))));
    }

    #[test]
    fn rho_round_trip() {
        let rho = RhoSpec::default_mean(-2);
        assert_eq!(parse_rho(&rho_to_line(3, &rho)).unwrap(), rho);
    }
}
