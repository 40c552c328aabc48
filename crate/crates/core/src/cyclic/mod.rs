//! Cyclic codes over GF(q): construction, BCH bounds and distance search.

mod distance;
mod enumerate;
mod isd;
pub mod matrix;
mod mitm;
mod symbols;

pub use distance::{minimum_distance, DistanceConfig, DistanceMethod, DistanceResult, Witness};
pub use enumerate::weight_distribution;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::galois::{gcd, Elem, Field};
use crate::lfsr::{minimal_poly_gcd, PeriodicSequence};
use crate::polyring::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("length {n} does not divide r - 1 = {r1}")]
    BadLength { n: usize, r1: u32 },
    #[error("generator must be monic with coefficients in GF(q)")]
    BadGenerator,
    #[error("generator {0} does not divide x^n - 1")]
    NotDivisor(String),
    #[error("the zero code has no minimum distance")]
    ZeroDimension,
    #[error("q^k = {q}^{k} exceeds the enumeration limit {limit}")]
    TooLarge { q: u32, k: usize, limit: u64 },
    #[error("syndrome does not fit the packed representation ({0} digits)")]
    SyndromeTooWide(usize),
}

/// A cyclic code of length n | q^m − 1 over the GF(q) subfield of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    q: u32,
    g: Poly,
    h: Poly,
}

impl CyclicCode {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn k(&self) -> usize {
        self.n - self.g.degree().unwrap()
    }
    pub fn generator(&self) -> &Poly {
        &self.g
    }
    pub fn parity_check(&self) -> &Poly {
        &self.h
    }

    /// True iff (x − 1) | g, i.e. every codeword has coordinate sum 0.
    pub fn is_even_like(&self, f: &Field) -> bool {
        self.g.eval(Elem::ONE, f).is_zero()
    }

    /// m(x)·g(x) as a length-n word.
    pub fn encode(&self, f: &Field, message: &[Elem]) -> Vec<Elem> {
        assert!(message.len() <= self.k());
        let c = Poly::from_coeffs(message.to_vec()).mul(&self.g, f);
        let mut w = vec![Elem::ZERO; self.n];
        for (i, &v) in c.coeffs().iter().enumerate() {
            w[i] = v;
        }
        w
    }

    pub fn contains(&self, f: &Field, word: &[Elem]) -> bool {
        word.len() == self.n
            && word.iter().all(|&c| f.in_subfield(c))
            && Poly::from_coeffs(word.to_vec())
                .rem(&self.g, f)
                .unwrap()
                .is_zero()
    }

    /// Exponents i with g(β^i) = 0, β = α^{(r−1)/n}.
    pub fn root_exponents(&self, f: &Field) -> Vec<u32> {
        let step = (f.n() as usize / self.n) as i64;
        (0..self.n as i64)
            .filter(|&i| self.g.eval(f.alpha_pow(step * i), f).is_zero())
            .map(|i| i as u32)
            .collect()
    }

    /// The code generated by the reciprocal of g.
    pub fn reciprocal(&self, f: &Field) -> CyclicCode {
        let g = self.g.reciprocal(f).expect("g(0) != 0 for divisors of x^n - 1");
        code_from_generator(f, self.n, g).expect("reciprocal divides x^n - 1")
    }
}

fn check_length(f: &Field, n: usize) -> Result<(), CodeError> {
    if n == 0 || !(f.n() as usize).is_multiple_of(n) {
        return Err(CodeError::BadLength { n, r1: f.n() });
    }
    Ok(())
}

pub fn code_from_generator(f: &Field, n: usize, g: Poly) -> Result<CyclicCode, CodeError> {
    check_length(f, n)?;
    if !g.is_monic() || !g.over_subfield(f) {
        return Err(CodeError::BadGenerator);
    }
    let xn1 = Poly::xn_minus_1(f, n);
    let h = xn1
        .div_exact(&g, f)
        .ok_or_else(|| CodeError::NotDivisor(g.to_text(f)))?;
    Ok(CyclicCode { n, q: f.q(), g, h })
}

/// Generator (x^n − 1)/gcd(S(x), x^n − 1) made monic.
pub fn code_from_sequence(f: &Field, s: &PeriodicSequence) -> CyclicCode {
    let n = s.len();
    let xn1 = Poly::xn_minus_1(f, n);
    let d = s.polynomial().gcd(&xn1, f);
    let g = xn1.div_exact(&d, f).expect("gcd divides").monic(f);
    assert_eq!(g, minimal_poly_gcd(f, s).poly, "generator differs from M_s");
    code_from_generator(f, n, g).expect("quotient divides x^n - 1")
}

/// Adds the factor x − 1 unless it already divides g.
pub fn even_like_subcode(f: &Field, c: &CyclicCode) -> CyclicCode {
    if c.is_even_like(f) {
        return c.clone();
    }
    let g = c.g.mul(&Poly::linear(f, Elem::ONE), f);
    code_from_generator(f, c.n, g).expect("(x - 1) g divides x^n - 1")
}

/// Longest cyclic run {e, e + step, …} inside `roots` (as a mask over Z_n).
fn longest_run(mask: &[bool], step: usize) -> usize {
    let n = mask.len();
    if mask.iter().all(|&b| b) {
        return n;
    }
    // start right after a non-root so every run is seen whole
    let start = (0..n).find(|&i| !mask[i]).unwrap();
    let (mut best, mut cur) = (0, 0);
    let mut pos = start;
    for _ in 0..n {
        pos = (pos + step) % n;
        if mask[pos] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

fn root_mask(f: &Field, c: &CyclicCode) -> Vec<bool> {
    let mut mask = vec![false; c.n];
    for i in c.root_exponents(f) {
        mask[i as usize] = true;
    }
    mask
}

/// δ where δ − 1 is the longest run of consecutive root exponents.
pub fn bch_lower_bound(f: &Field, c: &CyclicCode) -> u32 {
    let mask = root_mask(f, c);
    let run = longest_run(&mask, 1);
    let neg: Vec<bool> = (0..c.n).map(|i| mask[(c.n - i) % c.n]).collect();
    assert_eq!(run, longest_run(&neg, 1), "run length must be orientation free");
    run as u32 + 1
}

/// The BCH bound maximized over all strides coprime to n.
pub fn bch_strided_bound(f: &Field, c: &CyclicCode) -> u32 {
    let mask = root_mask(f, c);
    let n = c.n;
    (1..n.max(2))
        .filter(|&s| gcd(s as u32, n as u32) == 1)
        .map(|s| longest_run(&mask, s % n.max(1)))
        .max()
        .unwrap_or(0) as u32
        + 1
}

/// Lower bound used to seed the distance search: strided BCH, raised to
/// even for binary codes whose words all have even weight.
pub fn search_lower_bound(f: &Field, c: &CyclicCode) -> u32 {
    let mut lb = bch_strided_bound(f, c).max(bch_lower_bound(f, c));
    if f.q() == 2 && c.is_even_like(f) && lb % 2 == 1 {
        lb += 1;
    }
    lb
}

/// JSON report for one code.
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub m: u32,
    pub a: String,
    pub generator: String,
    pub bch_bound: u32,
    pub d: serde_json::Value,
    pub d_method: Option<DistanceMethod>,
    pub witness: Option<String>,
    pub runtime_ms: u64,
}

impl CodeReport {
    pub fn new(
        f: &Field,
        c: &CyclicCode,
        a: &str,
        dist: Option<&DistanceResult>,
        runtime_ms: u64,
    ) -> Self {
        Self {
            n: c.n,
            k: c.k(),
            q: c.q,
            m: f.m(),
            a: a.to_string(),
            generator: c.g.to_text(f),
            bch_bound: bch_lower_bound(f, c),
            d: dist.map_or(serde_json::Value::Null, |d| d.json_value()),
            d_method: dist.map(|d| d.method),
            witness: dist.and_then(|d| d.witness.as_ref()).map(|w| w.to_text(f)),
            runtime_ms,
        }
    }
}

/// Weight histogram helper shared with tests.
pub fn histogram_to_string(h: &BTreeMap<usize, u64>) -> String {
    h.iter()
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}
