//! Syndrome meet-in-the-middle for codewords of one exact weight w.
//!
//! Up to rotation and scaling every weight-w codeword has c_0 = 1, so the
//! search looks for 0 < p_1 < … < p_{w−1} and nonzero symbols with
//! syn(e_0) + Σ_left c_i syn(e_{p_i}) = Σ_right c'_j syn(e_{p_j}),
//! where the left half holds the first ⌈(w−1)/2⌉ positions. The right
//! sums live in a sorted fingerprint table tagged with their first
//! position; every hit is confirmed by an exact rescan.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::distance::{CanonKey, DistanceConfig};
use super::matrix::parity_check_from_h;
use super::symbols::SymbolCodec;
use super::{CodeError, CyclicCode};
use crate::galois::{Elem, Field};

type Syn = [u64; 4];
/// `leaf(sum, first, positions, symbols)` callback of the half-word walk.
type Leaf<'a> = dyn FnMut(&Syn, usize, &[usize], &[u8]) + 'a;
const ZERO: Syn = [0; 4];
const NO_POS: u64 = 255;

trait Lanes: Copy + Send + Sync {
    fn add(self, a: &Syn, b: &Syn) -> Syn;
}

#[derive(Clone, Copy)]
struct Xor;

impl Lanes for Xor {
    #[inline(always)]
    fn add(self, a: &Syn, b: &Syn) -> Syn {
        [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
    }
}

/// Eight byte lanes per word, each holding a digit mod p.
#[derive(Clone, Copy)]
struct ModP {
    p: u64,
    bias: u64,
}

const HIGH: u64 = 0x8080_8080_8080_8080;
const ONES: u64 = 0x0101_0101_0101_0101;

impl ModP {
    fn new(p: u32) -> Self {
        Self {
            p: p as u64,
            bias: ONES * (0x80 - p as u64),
        }
    }
}

impl Lanes for ModP {
    #[inline(always)]
    fn add(self, a: &Syn, b: &Syn) -> Syn {
        let mut out = [0u64; 4];
        for i in 0..4 {
            let x = a[i] + b[i];
            let ge = (x + self.bias) & HIGH;
            out[i] = x - (ge >> 7) * self.p;
        }
        out
    }
}

#[inline]
fn mix(s: &Syn) -> u64 {
    let mut h = 0x9E37_79B9_7F4A_7C15u64;
    for &w in s {
        h = (h ^ w).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h ^= h >> 29;
    }
    h = h.wrapping_mul(0x94D0_49BB_1331_11EB);
    h ^ (h >> 32)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub(crate) struct Mitm<'a> {
    f: &'a Field,
    codec: &'a SymbolCodec,
    code: &'a CyclicCode,
    n: usize,
    qm1: usize,
    /// cols[i * qm1 + (c − 1)] = syndrome of symbol c at position i
    cols: Vec<Syn>,
}

struct Table {
    entries: Vec<u64>,
    /// offsets by top 16 bits
    index: Vec<u32>,
}

impl Table {
    fn new(mut entries: Vec<u64>) -> Self {
        entries.sort_unstable();
        let mut index = vec![0u32; (1 << 16) + 1];
        for &e in &entries {
            index[(e >> 48) as usize + 1] += 1;
        }
        for i in 0..1 << 16 {
            index[i + 1] += index[i];
        }
        Self { entries, index }
    }

    /// Entries whose fingerprint part equals that of `key`.
    fn matches(&self, key: u64) -> &[u64] {
        let top = (key >> 48) as usize;
        let slice = &self.entries[self.index[top] as usize..self.index[top + 1] as usize];
        let lo = slice.partition_point(|&e| e < key);
        let hi = slice.partition_point(|&e| e <= key | 0xff);
        &slice[lo..hi]
    }
}

impl<'a> Mitm<'a> {
    pub fn new(
        f: &'a Field,
        codec: &'a SymbolCodec,
        code: &'a CyclicCode,
    ) -> Result<Self, CodeError> {
        let n = code.n();
        assert!(n <= 255, "positions must fit a byte");
        let h = parity_check_from_h(n, code.parity_check());
        let t = codec.t as usize;
        let digits = h.rows * t;
        let binary = codec.p == 2;
        if (binary && digits > 256) || (!binary && digits > 32) {
            return Err(CodeError::SyndromeTooWide(digits));
        }
        let qm1 = codec.q - 1;
        let mut cols = vec![ZERO; n * qm1];
        for i in 0..n {
            for c in 1..codec.q {
                let mut s = ZERO;
                for r in 0..h.rows {
                    let sym = codec.mul(codec.index(h.get(r, i)), c as u8);
                    for j in 0..t {
                        let d = codec.digit(sym, j as u32) as u64;
                        let lane = r * t + j;
                        if binary {
                            s[lane / 64] |= d << (lane % 64);
                        } else {
                            s[lane / 8] |= d << (8 * (lane % 8));
                        }
                    }
                }
                cols[i * qm1 + c - 1] = s;
            }
        }
        Ok(Self {
            f,
            codec,
            code,
            n,
            qm1,
            cols,
        })
    }

    fn split(w: u32) -> (usize, usize) {
        let rest = w as usize - 1;
        (rest.div_ceil(2), rest / 2)
    }

    fn side_count(&self, size: usize) -> u64 {
        binomial(self.n as u64 - 1, size as u64).saturating_mul((self.qm1 as u64).saturating_pow(size as u32))
    }

    fn passes(&self, w: u32, cfg: &DistanceConfig) -> u64 {
        let (_, b) = Self::split(w);
        self.side_count(b).div_ceil(cfg.table_limit.max(1) as u64).max(1)
    }

    /// Table entries plus lookups for a weight-w search.
    pub fn cost(&self, w: u32, cfg: &DistanceConfig) -> u64 {
        if w <= 1 {
            return 1;
        }
        let (a, b) = Self::split(w);
        let passes = self.passes(w, cfg);
        self.side_count(b)
            .saturating_add(passes.saturating_mul(self.side_count(a)))
    }

    #[inline]
    fn col(&self, pos: usize, c: usize) -> &Syn {
        &self.cols[pos * self.qm1 + c - 1]
    }

    /// The canonical weight-w codeword, or `None` if there is none.
    pub fn search(&self, w: u32, cfg: &DistanceConfig) -> Option<CanonKey> {
        assert!(w >= 1);
        if w == 1 {
            return (*self.col(0, 1) == ZERO).then(|| (vec![0], vec![1]));
        }
        if self.codec.p == 2 {
            self.run(Xor, w, cfg)
        } else {
            self.run(ModP::new(self.codec.p), w, cfg)
        }
    }

    fn run<L: Lanes>(&self, lanes: L, w: u32, cfg: &DistanceConfig) -> Option<CanonKey> {
        let (a, b) = Self::split(w);
        let passes = self.passes(w, cfg);
        let best_chunk = AtomicUsize::new(usize::MAX);
        let found: Mutex<BTreeMap<usize, CanonKey>> = Mutex::new(BTreeMap::new());
        for pass in 0..passes {
            let table = self.build_table(lanes, b, pass, passes);
            let next = AtomicUsize::new(1);
            std::thread::scope(|scope| {
                for _ in 0..cfg.workers.max(1) {
                    scope.spawn(|| loop {
                        let chunk = next.fetch_add(1, Ordering::Relaxed);
                        if chunk + b >= self.n || chunk > best_chunk.load(Ordering::Relaxed) {
                            break;
                        }
                        let hit = self.scan_chunk(lanes, &table, chunk, a, b, w, pass, passes);
                        if let Some(key) = hit {
                            best_chunk.fetch_min(chunk, Ordering::Relaxed);
                            let mut map = found.lock().unwrap();
                            let slot = map.entry(chunk).or_insert_with(|| key.clone());
                            if key < *slot {
                                *slot = key;
                            }
                        }
                    });
                }
            });
        }
        let map = found.into_inner().unwrap();
        map.into_iter().next().map(|(_, k)| k)
    }

    fn build_table<L: Lanes>(&self, lanes: L, b: usize, pass: u64, passes: u64) -> Table {
        let mut entries = Vec::new();
        let mut push = |s: &Syn, first: u64| {
            let h = mix(s);
            if h % passes == pass {
                entries.push((h >> 8) << 8 | first);
            }
        };
        if b == 0 {
            push(&ZERO, NO_POS);
        } else {
            self.walk(lanes, 1, b, ZERO, &mut |s, first, _, _| push(s, first as u64));
        }
        Table::new(entries)
    }

    /// Depth-first over `depth` increasing positions from `start`, calling
    /// `leaf(sum, first, positions, symbols)`.
    fn walk<L: Lanes>(
        &self,
        lanes: L,
        start: usize,
        depth: usize,
        acc: Syn,
        leaf: &mut Leaf,
    ) {
        let mut pos = Vec::with_capacity(depth);
        let mut sym = Vec::with_capacity(depth);
        self.walk_rec(lanes, start, depth, acc, &mut pos, &mut sym, leaf);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_rec<L: Lanes>(
        &self,
        lanes: L,
        start: usize,
        depth: usize,
        acc: Syn,
        pos: &mut Vec<usize>,
        sym: &mut Vec<u8>,
        leaf: &mut Leaf,
    ) {
        if depth == 0 {
            leaf(&acc, pos.first().copied().unwrap_or(NO_POS as usize), pos, sym);
            return;
        }
        for p in start..=self.n - depth {
            for c in 1..=self.qm1 {
                let next = lanes.add(&acc, self.col(p, c));
                pos.push(p);
                sym.push(c as u8);
                self.walk_rec(lanes, p + 1, depth - 1, next, pos, sym, leaf);
                pos.pop();
                sym.pop();
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn scan_chunk<L: Lanes>(
        &self,
        lanes: L,
        table: &Table,
        chunk: usize,
        a: usize,
        b: usize,
        w: u32,
        pass: u64,
        passes: u64,
    ) -> Option<CanonKey> {
        let mut best: Option<CanonKey> = None;
        let base = *self.col(0, 1);
        for c1 in 1..=self.qm1 {
            let acc = lanes.add(&base, self.col(chunk, c1));
            let mut leaf = |s: &Syn, _first: usize, rest_pos: &[usize], rest_sym: &[u8]| {
                let h = mix(s);
                if h % passes != pass {
                    return;
                }
                let last = rest_pos.last().copied().unwrap_or(chunk);
                for &e in table.matches((h >> 8) << 8) {
                    let rp = (e & 0xff) as usize;
                    if rp != NO_POS as usize && rp <= last {
                        continue;
                    }
                    let mut left_pos = vec![0, chunk];
                    left_pos.extend_from_slice(rest_pos);
                    let mut left_sym = vec![1u8, c1 as u8];
                    left_sym.extend_from_slice(rest_sym);
                    for key in self.confirm(lanes, s, rp, b, &left_pos, &left_sym, w) {
                        if best.as_ref().is_none_or(|bk| key < *bk) {
                            best = Some(key);
                        }
                    }
                }
            };
            if a == 1 {
                leaf(&acc, chunk, &[], &[]);
            } else {
                self.walk(lanes, chunk + 1, a - 1, acc, &mut leaf);
            }
        }
        best
    }

    /// Exact right halves starting at `first` that sum to `target`,
    /// each turned into a verified codeword key.
    #[allow(clippy::too_many_arguments)]
    fn confirm<L: Lanes>(
        &self,
        lanes: L,
        target: &Syn,
        first: usize,
        b: usize,
        left_pos: &[usize],
        left_sym: &[u8],
        w: u32,
    ) -> Vec<CanonKey> {
        let mut out = Vec::new();
        let mut emit = |rpos: &[usize], rsym: &[u8]| {
            let mut support = left_pos.to_vec();
            support.extend_from_slice(rpos);
            let mut syms = left_sym.to_vec();
            syms.extend(rsym.iter().map(|&c| self.codec.neg(c)));
            let mut word = vec![Elem::ZERO; self.n];
            for (&p, &c) in support.iter().zip(&syms) {
                assert!(word[p].is_zero(), "overlapping halves");
                word[p] = self.codec.elem(c);
            }
            assert_eq!(support.len(), w as usize);
            assert!(self.code.contains(self.f, &word), "syndrome match is not a codeword");
            out.push((support, syms));
        };
        if b == 0 {
            if *target == ZERO {
                emit(&[], &[]);
            }
            return out;
        }
        for c in 1..=self.qm1 {
            let acc = *self.col(first, c);
            let mut leaf = |s: &Syn, _: usize, pos: &[usize], sym: &[u8]| {
                if s == target {
                    let mut rp = vec![first];
                    rp.extend_from_slice(pos);
                    let mut rs = vec![c as u8];
                    rs.extend_from_slice(sym);
                    emit(&rp, &rs);
                }
            };
            if b == 1 {
                leaf(&acc, first, &[], &[]);
            } else if first + b <= self.n {
                self.walk(lanes, first + 1, b - 1, acc, &mut leaf);
            }
        }
        out
    }
}
