//! Finite fields GF(p^(t·m)) with a designated subfield GF(p^t).
//!
//! Elements are stored as discrete logarithms with respect to the generator
//! α (the residue class of `x` modulo the defining primitive polynomial).
//! Multiplication is log addition, addition goes through a Zech table.
//! Every field in scope has at most 2^16 elements, so all tables are tiny.

mod expr;
mod registry;

pub use expr::{parse_element, ExprError};
pub use registry::{Registry, RegistryEntry, RegistryError};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order accepted at construction.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("polynomial {poly} over GF({p}) is reducible (divisible by {factor})")]
    Reducible { poly: String, p: u32, factor: String },
    #[error("polynomial {poly} over GF({p}) is irreducible but not primitive (x has order {order})")]
    NotPrimitive { poly: String, p: u32, order: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element with log {0} does not belong to this field")]
    ForeignElement(u32),
}

/// Description of GF(p^(t·m)) together with its defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub t: u32,
    pub m: u32,
    /// Coefficients over GF(p), constant term first, monic of degree t·m.
    pub prim_poly: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, t: u32, m: u32, prim_poly: Vec<u32>) -> Self {
        Self { p, t, m, prim_poly }
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.t)
    }

    pub fn degree(&self) -> u32 {
        self.t * self.m
    }

    /// The deterministic default for (q, m) pairs without a registry record:
    /// prime fields use the smallest primitive root, extensions the
    /// lexicographically smallest primitive polynomial (highest coefficient
    /// compared first).
    pub fn smallest_primitive(p: u32, t: u32, m: u32) -> Result<Self, GaloisError> {
        check_shape(p, t, m)?;
        let degree = t * m;
        if degree == 1 {
            let g = smallest_primitive_root(p);
            return Ok(Self::new(p, t, m, vec![(p - g) % p, 1]));
        }
        let count = p.pow(degree);
        for v in 1..count {
            let mut coeffs = digits(v, p, degree as usize);
            if coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            if order_of_x(&coeffs, p) == Some(count - 1) {
                return Ok(Self::new(p, t, m, coeffs));
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) over GF({}), {}",
            self.q(),
            self.m,
            self.q(),
            prime_poly_string(&self.prim_poly)
        )
    }
}

/// A field element: zero, or α^log with log in [0, r−2].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(u16::MAX);
    pub const ONE: Elem = Elem(0);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == u16::MAX
    }

    /// Discrete log with respect to α, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0 as u32)
        }
    }

    /// Raw constructor. The caller guarantees `log < r − 1`.
    #[inline]
    pub fn from_log(log: u32) -> Elem {
        debug_assert!(log < u16::MAX as u32);
        Elem(log as u16)
    }
}

/// GF(r), r = q^m, q = p^t, built from a primitive polynomial over GF(p).
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    r: u32,
    n: u32,
    /// exp[i] = base-p integer encoding of α^i.
    exp: Vec<u32>,
    /// log[v] for encoding v (entry 0 unused).
    log: Vec<u16>,
    /// zech[i] = 1 + α^i.
    zech: Vec<Elem>,
    /// Trace to GF(q), indexed by base-p encoding.
    trace: Vec<Elem>,
    /// log(−1): 0 in characteristic 2, n/2 otherwise.
    neg_one: u32,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self, GaloisError> {
        let FieldSpec { p, t, m, .. } = spec;
        check_shape(p, t, m)?;
        let degree = (t * m) as usize;
        let poly = &spec.prim_poly;
        if poly.len() != degree + 1 {
            return Err(GaloisError::InvalidSpec(format!(
                "polynomial {} has degree {}, expected t·m = {}",
                prime_poly_string(poly),
                poly.len().saturating_sub(1),
                degree
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(GaloisError::InvalidSpec(format!(
                "coefficients of {} must be digits below {p}",
                prime_poly_string(poly)
            )));
        }
        if poly[degree] != 1 {
            return Err(GaloisError::InvalidSpec(format!(
                "polynomial {} is not monic",
                prime_poly_string(poly)
            )));
        }
        if let Some(factor) = find_factor(poly, p) {
            return Err(GaloisError::Reducible {
                poly: prime_poly_string(poly),
                p,
                factor: prime_poly_string(&factor),
            });
        }
        let r = p.pow(t * m);
        let n = r - 1;
        match order_of_x(poly, p) {
            Some(order) if order == n => {}
            Some(order) => {
                return Err(GaloisError::NotPrimitive {
                    poly: prime_poly_string(poly),
                    p,
                    order,
                })
            }
            None => unreachable!("irreducible polynomials have x invertible"),
        }

        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![u16::MAX; r as usize];
        let mut state = vec![0u32; degree];
        state[0] = 1;
        for i in 0..n {
            let v = encode(&state, p);
            exp.push(v);
            log[v as usize] = i as u16;
            mul_by_x(&mut state, poly, p);
        }

        let one = exp[0];
        let zech = (0..n)
            .map(|i| {
                let v = add_encoded(one, exp[i as usize], p, degree);
                if v == 0 {
                    Elem::ZERO
                } else {
                    Elem(log[v as usize])
                }
            })
            .collect();

        let q = p.pow(t);
        let neg_one = if p == 2 { 0 } else { n / 2 };
        let mut field = Field {
            spec,
            q,
            r,
            n,
            exp,
            log,
            zech,
            trace: Vec::new(),
            neg_one,
        };
        field.trace = (0..r)
            .map(|v| {
                let x = field.from_encoding(v);
                field.trace_slow(x)
            })
            .collect();
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    pub fn t(&self) -> u32 {
        self.spec.t
    }
    pub fn m(&self) -> u32 {
        self.spec.m
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Field order r = q^m.
    pub fn order(&self) -> u32 {
        self.r
    }
    /// Code length n = r − 1.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> Elem {
        self.alpha_pow(1)
    }

    /// α^k for any integer k.
    pub fn alpha_pow(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.n as i64) as u16)
    }

    /// Membership check for elements of unknown provenance.
    pub fn check(&self, x: Elem) -> Result<Elem, GaloisError> {
        match x.log() {
            Some(l) if l >= self.n => Err(GaloisError::ForeignElement(l)),
            _ => Ok(x),
        }
    }

    /// The image of the integer `k` in the prime subfield.
    pub fn from_int(&self, k: i64) -> Elem {
        let p = self.p() as i64;
        let digit = k.rem_euclid(p) as u32;
        self.from_encoding(digit)
    }

    /// Element with the given base-p encoding (polynomial basis digits).
    pub fn from_encoding(&self, v: u32) -> Elem {
        if v == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[v as usize])
        }
    }

    /// Base-p encoding of `x` in the polynomial basis 1, α, …, α^(tm−1).
    pub fn encoding(&self, x: Elem) -> u32 {
        match x.log() {
            None => 0,
            Some(l) => self.exp[l as usize],
        }
    }

    /// All r elements, zero first, then α^0 … α^(n−1).
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain((0..self.n).map(|i| Elem(i as u16)))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let (lx, ly) = match (x.log(), y.log()) {
            (None, _) => return y,
            (_, None) => return x,
            (Some(a), Some(b)) => (a, b),
        };
        // x + y = x·(1 + y/x)
        let d = (ly + self.n - lx) % self.n;
        match self.zech[d as usize].log() {
            None => Elem::ZERO,
            Some(z) => Elem(((lx + z) % self.n) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match x.log() {
            None => x,
            Some(l) => Elem(((l + self.neg_one) % self.n) as u16),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match (x.log(), y.log()) {
            (Some(a), Some(b)) => Elem(((a + b) % self.n) as u16),
            _ => Elem::ZERO,
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, GaloisError> {
        match x.log() {
            None => Err(GaloisError::ZeroInverse),
            Some(l) => Ok(Elem(((self.n - l) % self.n) as u16)),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem, GaloisError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^e for any integer e; 0^0 = 1 and 0^e = 0 for e > 0.
    /// Negative powers of zero are a domain error.
    pub fn pow(&self, x: Elem, e: i64) -> Result<Elem, GaloisError> {
        match x.log() {
            None if e == 0 => Ok(Elem::ONE),
            None if e > 0 => Ok(Elem::ZERO),
            None => Err(GaloisError::ZeroInverse),
            Some(l) => {
                let n = self.n as i64;
                let k = ((l as i64) * e.rem_euclid(n)).rem_euclid(n);
                Ok(Elem(k as u16))
            }
        }
    }

    /// Power with non-negative exponent; never fails.
    #[inline]
    pub fn powu(&self, x: Elem, e: u64) -> Elem {
        match x.log() {
            None if e == 0 => Elem::ONE,
            None => Elem::ZERO,
            Some(l) => Elem(((l as u64 * (e % self.n as u64)) % self.n as u64) as u16),
        }
    }

    /// Sum of `k` copies of `x`.
    pub fn scale_int(&self, x: Elem, k: i64) -> Elem {
        self.mul(self.from_int(k), x)
    }

    /// Tr(x) = Σ_{i<m} x^(q^i), an element of GF(q).
    #[inline]
    pub fn trace(&self, x: Elem) -> Elem {
        self.trace[self.encoding(x) as usize]
    }

    fn trace_slow(&self, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut e = 1u64;
        for _ in 0..self.m() {
            acc = self.add(acc, self.powu(x, e));
            e = e * self.q as u64 % self.n as u64;
        }
        acc
    }

    /// 0 if Tr(x) = 0, 1 otherwise.
    #[inline]
    pub fn delta(&self, x: Elem) -> u32 {
        u32::from(!self.trace(x).is_zero())
    }

    /// (r − 1)/(q − 1): the logs of nonzero subfield elements are its multiples.
    pub fn subfield_step(&self) -> u32 {
        self.n / (self.q - 1)
    }

    /// Generator of GF(q)^*.
    pub fn subfield_generator(&self) -> Elem {
        Elem(self.subfield_step() as u16)
    }

    #[inline]
    pub fn in_subfield(&self, x: Elem) -> bool {
        match x.log() {
            None => true,
            Some(l) => l % self.subfield_step() == 0,
        }
    }

    /// The q elements of GF(q): zero, then γ^0 … γ^(q−2) with γ = α^((r−1)/(q−1)).
    pub fn subfield_elements(&self) -> Vec<Elem> {
        let step = self.subfield_step();
        std::iter::once(Elem::ZERO)
            .chain((0..self.q - 1).map(|j| Elem((j * step) as u16)))
            .collect()
    }

    /// Frobenius x ↦ x^p.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.powu(x, self.p() as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Option<u32> {
        let l = x.log()?;
        Some(self.n / gcd(l, self.n))
    }

    /// Renders `x` as `0`, `1` or `a^k`.
    pub fn fmt_elem(&self, x: Elem) -> String {
        match x.log() {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(l) => format!("a^{l}"),
        }
    }
}

/// True iff x + x² + x⁴ = 0 has a nonzero root in GF(2^m), by exhaustive
/// evaluation in `field` (which must have characteristic 2).
pub fn artin_cubic_has_nonzero_root_in(field: &Field) -> bool {
    assert_eq!(field.p(), 2, "the cubic x + x^2 + x^4 is taken over GF(2^m)");
    field.elements().skip(1).any(|x| {
        let v = field.add(field.add(x, field.powu(x, 2)), field.powu(x, 4));
        v.is_zero()
    })
}

/// True iff x + x² + x⁴ = 0 has a nonzero root in GF(2^m).
/// The field is built from the smallest primitive polynomial of degree m.
pub fn artin_cubic_has_nonzero_root(m: u32) -> bool {
    let spec = FieldSpec::smallest_primitive(2, 1, m).expect("GF(2^m) is constructible");
    let field = Field::new(spec).expect("smallest primitive polynomial is primitive");
    artin_cubic_has_nonzero_root_in(&field)
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits q = p^t, returning `None` if q is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut t = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        t += 1;
    }
    (rest == 1).then_some((p, t))
}

fn check_shape(p: u32, t: u32, m: u32) -> Result<(), GaloisError> {
    if !is_prime(p) {
        return Err(GaloisError::InvalidSpec(format!("{p} is not prime")));
    }
    if t == 0 || m == 0 {
        return Err(GaloisError::InvalidSpec("t and m must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(t * m);
    if order.is_none_or(|o| o > MAX_FIELD_ORDER as u64) {
        return Err(GaloisError::InvalidSpec(format!(
            "GF({p}^{}) exceeds 2^16 elements",
            t * m
        )));
    }
    Ok(())
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = p - 1;
    let factors: Vec<u32> = (2..=n).filter(|&d| n.is_multiple_of(d) && is_prime(d)).collect();
    (2..p)
        .find(|&g| factors.iter().all(|&f| mod_pow(g, n / f, p) != 1))
        .expect("prime fields have primitive roots")
}

fn mod_pow(b: u32, mut e: u32, m: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = (b % m) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u64;
        }
        base = base * base % m as u64;
        e >>= 1;
    }
    acc as u32
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(state: &[u32], p: u32) -> u32 {
    state.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn add_encoded(a: u32, b: u32, p: u32, len: usize) -> u32 {
    let (da, db) = (digits(a, p, len), digits(b, p, len));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    encode(&sum, p)
}

/// state ← state·x mod poly (poly monic).
fn mul_by_x(state: &mut [u32], poly: &[u32], p: u32) {
    let d = state.len();
    let carry = state[d - 1];
    for i in (1..d).rev() {
        state[i] = state[i - 1];
    }
    state[0] = 0;
    if carry != 0 {
        for i in 0..d {
            state[i] = (state[i] + p - carry * poly[i] % p) % p;
        }
    }
}

/// Multiplicative order of x modulo `poly`, or `None` if x is not a unit.
fn order_of_x(poly: &[u32], p: u32) -> Option<u32> {
    let d = poly.len() - 1;
    if poly[0] == 0 {
        return None;
    }
    let limit = p.pow(d as u32);
    let mut state = vec![0u32; d];
    state[0] = 1;
    for i in 1..limit {
        mul_by_x(&mut state, poly, p);
        if state[0] == 1 && state[1..].iter().all(|&c| c == 0) {
            return Some(i);
        }
    }
    None
}

/// Some monic factor of degree in [1, deg/2], if one exists.
fn find_factor(poly: &[u32], p: u32) -> Option<Vec<u32>> {
    let d = poly.len() - 1;
    for deg in 1..=d / 2 {
        for v in 0..p.pow(deg as u32) {
            let mut cand = digits(v, p, deg);
            cand.push(1);
            if prime_rem(poly, &cand, p).iter().all(|&c| c == 0) {
                return Some(cand);
            }
        }
    }
    None
}

/// Remainder of a modulo monic b over GF(p).
fn prime_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Human-readable polynomial over GF(p), highest degree first.
pub fn prime_poly_string(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
