//! Walks every codeword once using a p-ary Gray code over the GF(p)-basis
//! {γ^j x^i g(x)}: each step adds a single basis row.

use std::collections::BTreeMap;

use super::distance::{canonical_form, CanonKey, DistanceConfig};
use super::symbols::SymbolCodec;
use super::{CodeError, CyclicCode};
use crate::galois::Field;

struct Walker {
    rows: Vec<Vec<(usize, u8)>>,
    p: u64,
    total: u64,
}

impl Walker {
    fn new(f: &Field, codec: &SymbolCodec, code: &CyclicCode) -> Self {
        let g: Vec<u8> = code.generator().coeffs().iter().map(|&c| codec.index(c)).collect();
        let mut rows = Vec::new();
        for i in 0..code.k() {
            for j in 0..codec.t {
                let gj = codec.gamma_pow(f, j);
                rows.push(
                    g.iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(l, &c)| (i + l, codec.mul(gj, c)))
                        .collect(),
                );
            }
        }
        let total = (codec.p as u64).pow(rows.len() as u32);
        Self {
            rows,
            p: codec.p as u64,
            total,
        }
    }

    /// Calls `visit(word, weight)` for every nonzero codeword.
    fn walk(&self, n: usize, codec: &SymbolCodec, mut visit: impl FnMut(&[u8], usize)) {
        let mut word = vec![0u8; n];
        let mut weight = 0usize;
        for s in 1..self.total {
            let digit = if self.p == 2 {
                s.trailing_zeros() as usize
            } else {
                let (mut x, mut d) = (s, 0);
                while x % self.p == 0 {
                    x /= self.p;
                    d += 1;
                }
                d
            };
            for &(pos, sym) in &self.rows[digit] {
                let old = word[pos];
                let new = codec.add(old, sym);
                word[pos] = new;
                weight = weight + usize::from(new != 0) - usize::from(old != 0);
            }
            visit(&word, weight);
        }
    }
}

/// Minimum weight and the canonical lightest codeword.
pub(crate) fn exhaustive_minimum(
    f: &Field,
    codec: &SymbolCodec,
    code: &CyclicCode,
) -> (u32, CanonKey) {
    let walker = Walker::new(f, codec, code);
    let mut best_w = usize::MAX;
    let mut best_key: Option<CanonKey> = None;
    walker.walk(code.n(), codec, |word, w| {
        if w > best_w || w == 0 {
            return;
        }
        let key = canonical_form(codec, word);
        if w < best_w || best_key.as_ref().is_some_and(|b| key < *b) {
            best_w = w;
            best_key = Some(key);
        }
    });
    (best_w as u32, best_key.expect("k >= 1"))
}

/// Number of codewords of each weight, zero word included.
pub fn weight_distribution(
    f: &Field,
    code: &CyclicCode,
    cfg: &DistanceConfig,
) -> Result<BTreeMap<usize, u64>, CodeError> {
    let q = f.q() as u64;
    let k = code.k();
    if q.checked_pow(k as u32).is_none_or(|s| s > cfg.full_enum_limit) {
        return Err(CodeError::TooLarge {
            q: f.q(),
            k,
            limit: cfg.full_enum_limit,
        });
    }
    let codec = SymbolCodec::new(f);
    let walker = Walker::new(f, &codec, code);
    let mut hist = vec![0u64; code.n() + 1];
    hist[0] = 1;
    walker.walk(code.n(), &codec, |_, w| hist[w] += 1);
    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .collect())
}
