//! Lee–Brickell information-set search for light codewords. It only ever
//! produces upper bounds; exclusion is left to the syndrome search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::distance::{canonical_form, CanonKey};
use super::symbols::SymbolCodec;
use super::CyclicCode;
use crate::galois::{Elem, Field};

pub(crate) struct Isd<'a> {
    f: &'a Field,
    codec: &'a SymbolCodec,
    code: &'a CyclicCode,
    rows: Vec<Vec<u8>>,
    rng: ChaCha8Rng,
}

impl<'a> Isd<'a> {
    pub fn new(f: &'a Field, codec: &'a SymbolCodec, code: &'a CyclicCode, seed: u64) -> Self {
        let n = code.n();
        let g: Vec<u8> = code.generator().coeffs().iter().map(|&c| codec.index(c)).collect();
        let rows = (0..code.k())
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i..i + g.len()].copy_from_slice(&g);
                r
            })
            .collect();
        Self {
            f,
            codec,
            code,
            rows,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn verified(&self, word: &[u8]) -> CanonKey {
        let elems: Vec<Elem> = word.iter().map(|&s| self.codec.elem(s)).collect();
        assert!(self.code.contains(self.f, &elems), "search produced a non-codeword");
        canonical_form(self.codec, word)
    }

    /// Lightest codeword seen in up to `iterations` rounds, stopping early
    /// once its weight is at most `target`.
    pub fn search(&mut self, target: u32, iterations: u32) -> Option<CanonKey> {
        let n = self.code.n();
        let k = self.rows.len();
        let c = self.codec;
        let mut best: Option<Vec<u8>> = Some(self.rows[0].clone());
        let mut best_w = weight(&self.rows[0]);
        let mut perm: Vec<usize> = (0..n).collect();
        for _ in 0..iterations {
            if best_w <= target as usize {
                break;
            }
            perm.shuffle(&mut self.rng);
            let mut m = self.rows.clone();
            let mut pivots = Vec::with_capacity(k);
            for &col in &perm {
                let r = pivots.len();
                if r == k {
                    break;
                }
                let Some(pr) = (r..k).find(|&i| m[i][col] != 0) else {
                    continue;
                };
                m.swap(r, pr);
                let inv = c.inv(m[r][col]);
                for x in m[r].iter_mut() {
                    *x = c.mul(*x, inv);
                }
                let pivot_row = m[r].clone();
                for (i, row) in m.iter_mut().enumerate() {
                    let factor = row[col];
                    if i == r || factor == 0 {
                        continue;
                    }
                    let nf = c.neg(factor);
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        if y != 0 {
                            *x = c.add(*x, c.mul(nf, y));
                        }
                    }
                }
                pivots.push(col);
            }
            // single rows
            for row in &m {
                let w = weight(row);
                if w < best_w {
                    best_w = w;
                    best = Some(row.clone());
                }
            }
            if best_w <= target as usize {
                break;
            }
            // pairs r_i + s·r_j, weight 2 + weight off the information set
            let mut is_pivot = vec![false; n];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            let free: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
            let red: Vec<Vec<u8>> = m.iter().map(|r| free.iter().map(|&i| r[i]).collect()).collect();
            'pairs: for i in 0..red.len() {
                for j in i + 1..red.len() {
                    for s in 1..c.q as u8 {
                        let mut w = 2;
                        for (&x, &y) in red[i].iter().zip(&red[j]) {
                            if c.add(x, c.mul(s, y)) != 0 {
                                w += 1;
                                if w >= best_w {
                                    break;
                                }
                            }
                        }
                        if w < best_w {
                            best_w = w;
                            best = Some(
                                m[i].iter()
                                    .zip(&m[j])
                                    .map(|(&x, &y)| c.add(x, c.mul(s, y)))
                                    .collect(),
                            );
                            if best_w <= target as usize {
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        best.map(|w| self.verified(&w))
    }
}

fn weight(w: &[u8]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}
