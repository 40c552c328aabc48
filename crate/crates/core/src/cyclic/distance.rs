//! Minimum distance: exhaustive enumeration for small q^k, otherwise a
//! weight-by-weight syndrome meet-in-the-middle seeded by the BCH bound,
//! with random information-set searches supplying upper bounds.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::enumerate::exhaustive_minimum;
use super::isd::Isd;
use super::mitm::Mitm;
use super::symbols::SymbolCodec;
use super::{search_lower_bound, CodeError, CyclicCode};
use crate::galois::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceConfig {
    /// Largest q^k enumerated codeword by codeword.
    pub full_enum_limit: u64,
    /// Largest weight the syndrome search will try.
    pub w_max: u32,
    pub workers: usize,
    /// Work cap (table entries plus lookups) for one syndrome search.
    pub mitm_budget: u64,
    /// Table entries held at once; larger tables run in passes.
    pub table_limit: usize,
    /// Iterations of the long information-set search.
    pub isd_iterations: u32,
    pub seed: u64,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        Self {
            full_enum_limit: 1 << 22,
            w_max: 13,
            workers: 1,
            mitm_budget: 400_000_000,
            table_limit: 1 << 24,
            isd_iterations: 3000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Exhaustive,
    Mitm,
    /// A codeword whose weight meets the BCH-type lower bound.
    Witness,
    BchOnly,
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DistanceMethod::Exhaustive => "exhaustive",
            DistanceMethod::Mitm => "mitm",
            DistanceMethod::Witness => "witness",
            DistanceMethod::BchOnly => "bch-only",
        };
        f.write_str(s)
    }
}

/// A codeword given by its support and the symbols there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub support: Vec<usize>,
    pub coeffs: Vec<Elem>,
}

impl Witness {
    pub fn weight(&self) -> u32 {
        self.support.len() as u32
    }

    pub fn to_word(&self, n: usize) -> Vec<Elem> {
        let mut w = vec![Elem::ZERO; n];
        for (&i, &c) in self.support.iter().zip(&self.coeffs) {
            w[i] = c;
        }
        w
    }

    /// `1 + a^4 x^13` style rendering.
    pub fn to_text(&self, f: &Field) -> String {
        self.support
            .iter()
            .zip(&self.coeffs)
            .map(|(&i, &c)| {
                let coef = f.fmt_elem(c);
                match (i, coef.as_str()) {
                    (0, _) => coef,
                    (_, "1") => format!("x^{i}"),
                    _ => format!("{coef} x^{i}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub lower: u32,
    /// Weight of the lightest codeword found, if any.
    pub upper: Option<u32>,
    pub method: DistanceMethod,
    pub witness: Option<Witness>,
}

impl DistanceResult {
    pub fn exact(&self) -> Option<u32> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }

    pub fn json_value(&self) -> serde_json::Value {
        match self.exact() {
            Some(d) => d.into(),
            None => self.to_string().into(),
        }
    }
}

impl fmt::Display for DistanceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact(), self.upper) {
            (Some(d), _) => write!(f, "{d}"),
            (None, Some(u)) => write!(f, "{}..{}", self.lower, u),
            (None, None) => write!(f, ">={}", self.lower),
        }
    }
}

/// Ordering key of a codeword normalized to c_0 = 1.
pub(crate) type CanonKey = (Vec<usize>, Vec<u8>);

/// Smallest (support, symbols) over all rotations and scalings of `word`
/// that put a 1 at position 0.
pub(crate) fn canonical_form(codec: &SymbolCodec, word: &[u8]) -> CanonKey {
    let n = word.len();
    let support: Vec<usize> = (0..n).filter(|&i| word[i] != 0).collect();
    let mut best: Option<CanonKey> = None;
    for &s in &support {
        let scale = codec.inv(word[s]);
        let mut entries: Vec<(usize, u8)> = support
            .iter()
            .map(|&i| ((i + n - s) % n, codec.mul(word[i], scale)))
            .collect();
        entries.sort_unstable();
        let key: CanonKey = entries.into_iter().unzip();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("nonzero word")
}

pub(crate) fn key_to_witness(codec: &SymbolCodec, key: &CanonKey) -> Witness {
    Witness {
        support: key.0.clone(),
        coeffs: key.1.iter().map(|&c| codec.elem(c)).collect(),
    }
}

/// Exact minimum distance where the configured work allows, otherwise
/// the tightest bracket found.
pub fn minimum_distance(
    f: &Field,
    code: &CyclicCode,
    cfg: &DistanceConfig,
) -> Result<DistanceResult, CodeError> {
    let k = code.k();
    if k == 0 {
        return Err(CodeError::ZeroDimension);
    }
    let codec = SymbolCodec::new(f);
    let lb = search_lower_bound(f, code);
    let size = (f.q() as u64).checked_pow(k as u32);
    if size.is_some_and(|s| s <= cfg.full_enum_limit) {
        let (d, key) = exhaustive_minimum(f, &codec, code);
        assert!(d >= lb, "exhaustive d={d} below BCH bound {lb}");
        return Ok(DistanceResult {
            lower: d,
            upper: Some(d),
            method: DistanceMethod::Exhaustive,
            witness: Some(key_to_witness(&codec, &key)),
        });
    }

    let step = if f.q() == 2 && code.is_even_like(f) { 2 } else { 1 };
    let mitm = Mitm::new(f, &codec, code).ok();
    let mut isd = Isd::new(f, &codec, code, cfg.seed);
    let mut best = isd.search(lb, cfg.isd_iterations.min(64));
    let mut lower = lb;
    let mut used_mitm = false;
    let mut canonical = false;

    loop {
        if best.as_ref().is_some_and(|b| (b.0.len() as u32) <= lower) {
            break;
        }
        if lower > cfg.w_max {
            break;
        }
        match &mitm {
            Some(mm) if mm.cost(lower, cfg) <= cfg.mitm_budget => {
                used_mitm = true;
                match mm.search(lower, cfg) {
                    Some(key) => {
                        best = Some(key);
                        canonical = true;
                        break;
                    }
                    None => lower += step,
                }
            }
            _ => {
                let found = isd.search(lower, cfg.isd_iterations);
                if let Some(w) = found {
                    if best.as_ref().is_none_or(|b| w.0.len() < b.0.len()) {
                        best = Some(w);
                    }
                }
                break;
            }
        }
    }

    let upper = best.as_ref().map(|b| b.0.len() as u32);
    if let Some(u) = upper {
        assert!(u >= lower, "found weight {u} below proven bound {lower}");
    }
    let exact = upper == Some(lower);
    if exact && !canonical {
        if let Some(mm) = &mitm {
            if mm.cost(lower, cfg) <= cfg.mitm_budget {
                best = mm.search(lower, cfg);
                assert!(best.is_some(), "rescan lost a weight-{lower} codeword");
            }
        }
    }
    let method = match (exact, used_mitm) {
        (true, true) => DistanceMethod::Mitm,
        (true, false) => DistanceMethod::Witness,
        (false, _) => DistanceMethod::BchOnly,
    };
    Ok(DistanceResult {
        lower,
        upper,
        method,
        witness: best.map(|key| key_to_witness(&codec, &key)),
    })
}
