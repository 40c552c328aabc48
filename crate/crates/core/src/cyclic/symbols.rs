//! Compact GF(q) symbols for the enumeration kernels.
//!
//! Index i encodes Σ d_j γ^j with digits d_j = i's base-p digits, where
//! γ generates GF(q)^*. Index 0 is zero and index 1 is one.

use crate::galois::{Elem, Field};

#[derive(Debug, Clone)]
pub(crate) struct SymbolCodec {
    pub q: usize,
    pub p: u32,
    pub t: u32,
    elems: Vec<Elem>,
    /// by log + 1, `u8::MAX` outside GF(q)
    index_by_log: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SymbolCodec {
    pub fn new(f: &Field) -> Self {
        let (p, t, q) = (f.p(), f.t(), f.q() as usize);
        let gamma = f.subfield_generator();
        let elems: Vec<Elem> = (0..q)
            .map(|i| {
                let mut rest = i as u32;
                let mut acc = Elem::ZERO;
                for j in 0..t {
                    let d = rest % p;
                    rest /= p;
                    let term = f.mul(f.from_int(d as i64), f.powu(gamma, j as u64));
                    acc = f.add(acc, term);
                }
                acc
            })
            .collect();
        let mut index_by_log = vec![u8::MAX; f.n() as usize + 1];
        for (i, e) in elems.iter().enumerate() {
            let slot = e.log().map_or(0, |l| l as usize + 1);
            assert_eq!(index_by_log[slot], u8::MAX, "subfield basis is not independent");
            index_by_log[slot] = i as u8;
        }
        let mut codec = Self {
            q,
            p,
            t,
            elems,
            index_by_log,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
        };
        for a in 0..q {
            for b in 0..q {
                let (ea, eb) = (codec.elems[a], codec.elems[b]);
                codec.add[a * q + b] = codec.index(f.add(ea, eb));
                codec.mul[a * q + b] = codec.index(f.mul(ea, eb));
            }
            codec.neg[a] = codec.index(f.neg(codec.elems[a]));
            codec.inv[a] = f.inv(codec.elems[a]).map_or(0, |e| codec.index(e));
        }
        assert_eq!(codec.elems[1], Elem::ONE);
        codec
    }

    #[inline]
    pub fn index(&self, e: Elem) -> u8 {
        let slot = e.log().map_or(0, |l| l as usize + 1);
        let i = self.index_by_log[slot];
        assert!(i != u8::MAX, "symbol outside GF(q)");
        i
    }

    #[inline]
    pub fn elem(&self, i: u8) -> Elem {
        self.elems[i as usize]
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Base-p digit j of symbol i.
    #[inline]
    pub fn digit(&self, i: u8, j: u32) -> u32 {
        (i as u32 / self.p.pow(j)) % self.p
    }

    /// Symbol of γ^j.
    pub fn gamma_pow(&self, f: &Field, j: u32) -> u8 {
        self.index(f.powu(f.subfield_generator(), j as u64))
    }
}
