//! Dense polynomials over a [`Field`], cyclotomic cosets and the
//! factorization of x^n − 1 into minimal polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{gcd, parse_element, Elem, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("reciprocal undefined: constant term is zero")]
    ZeroConstantTerm,
    #[error("gcd(n={n}, q={q}) != 1")]
    NotCoprime { n: u32, q: u32 },
    #[error("coset index {j} out of range for n={n}")]
    IndexOutOfRange { n: u32, j: u32 },
    #[error("malformed polynomial text: {0}")]
    Parse(String),
}

/// Coefficients lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn x() -> Self {
        Self::monomial(Elem::ONE, 1)
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// x^n − 1.
    pub fn xn_minus_1(f: &Field, n: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = f.neg(Elem::ONE);
        coeffs[n] = Elem::ONE;
        Self::from_coeffs(coeffs)
    }

    /// x − c.
    pub fn linear(f: &Field, c: Elem) -> Self {
        Self::from_coeffs(vec![f.neg(c), Elem::ONE])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32, f: &Field) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    pub fn divmod(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly), PolyError> {
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let inv_lead = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - db];
        for shift in (0..quot.len()).rev() {
            let c = f.mul(rem[shift + db], inv_lead);
            quot[shift] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Result<Poly, PolyError> {
        Ok(self.divmod(divisor, f)?.1)
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly, f: &Field) -> Option<Poly> {
        match self.divmod(divisor, f) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly, f: &Field) -> bool {
        other.div_exact(self, f).is_some()
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()).expect("nonzero lead"), f)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Monic associate of x^deg · g(1/x).
    pub fn reciprocal(&self, f: &Field) -> Result<Poly, PolyError> {
        if self.coeff(0).is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Poly::from_coeffs(rev).monic(f))
    }

    /// True iff every coefficient lies in the GF(q) subfield.
    pub fn over_subfield(&self, f: &Field) -> bool {
        self.coeffs.iter().all(|&c| f.in_subfield(c))
    }

    /// Text format: space-separated coefficients, constant term first.
    pub fn to_text(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|&c| f.fmt_elem(c))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_text(text: &str, f: &Field) -> Result<Poly, PolyError> {
        let coeffs = text
            .split_whitespace()
            .map(|tok| parse_element(f, tok).map_err(|e| PolyError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(PolyError::Parse("empty".into()));
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    /// p(x)^q mod modulus, for p already reduced.
    fn frob_mod(p: &Poly, q: u32, modulus: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::one();
        let mut base = p.clone();
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f).unwrap();
            }
            base = base.mul(&base, f).rem(modulus, f).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over the GF(q) subfield. Degree ≤ 4 uses trial division
    /// by all monic GF(q) polynomials of degree ≤ 2, larger degrees Rabin's test.
    pub fn is_irreducible_over_subfield(&self, f: &Field) -> bool {
        let Some(d) = self.degree() else { return false };
        assert!(self.over_subfield(f), "polynomial must lie over GF(q)");
        if d == 0 {
            return false;
        }
        if d <= 4 {
            self.irreducible_by_trial(f)
        } else {
            self.irreducible_by_rabin(f)
        }
    }

    pub fn irreducible_by_trial(&self, f: &Field) -> bool {
        let d = self.degree().unwrap_or(0);
        if d == 0 {
            return false;
        }
        let sub = f.subfield_elements();
        let q = sub.len();
        for deg in 1..=d / 2 {
            for v in 0..q.pow(deg as u32) {
                let mut coeffs = Vec::with_capacity(deg + 1);
                let mut rest = v;
                for _ in 0..deg {
                    coeffs.push(sub[rest % q]);
                    rest /= q;
                }
                coeffs.push(Elem::ONE);
                if Poly::from_coeffs(coeffs).divides(self, f) {
                    return false;
                }
            }
        }
        true
    }

    pub fn irreducible_by_rabin(&self, f: &Field) -> bool {
        let d = self.degree().unwrap_or(0);
        if d == 0 {
            return false;
        }
        let g = self.monic(f);
        let q = f.q();
        let x = Poly::x().rem(&g, f).unwrap();
        // x^(q^k) mod g for k = 0..=d
        let mut powers = vec![x.clone()];
        for k in 1..=d {
            let next = Poly::frob_mod(&powers[k - 1], q, &g, f);
            powers.push(next);
        }
        if powers[d] != x {
            return false;
        }
        let primes = (2..=d).filter(|&r| d.is_multiple_of(r) && (2..r).all(|s| r % s != 0));
        for r in primes {
            let h = powers[d / r].sub(&x, f);
            if g.gcd(&h, f).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

/// Orbit of j under multiplication by q modulo n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicCoset {
    pub leader: u32,
    /// j, qj, q²j, … in iteration order.
    pub members: Vec<u32>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn contains(&self, j: u32) -> bool {
        self.members.contains(&j)
    }
}

impl fmt::Display for CyclotomicCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members.iter().map(|x| x.to_string()).collect();
        write!(f, "C_{} = {{{}}}", self.leader, m.join(","))
    }
}

pub fn cyclotomic_coset(n: u32, q: u32, j: u32) -> Result<CyclotomicCoset, PolyError> {
    if gcd(n, q) != 1 {
        return Err(PolyError::NotCoprime { n, q });
    }
    if j >= n {
        return Err(PolyError::IndexOutOfRange { n, j });
    }
    let mut members = vec![j];
    let mut x = (j as u64 * q as u64 % n as u64) as u32;
    while x != j {
        members.push(x);
        x = (x as u64 * q as u64 % n as u64) as u32;
    }
    let leader = *members.iter().min().unwrap();
    Ok(CyclotomicCoset { leader, members })
}

/// All cosets, ordered by leader, each starting at its leader.
pub fn cosets(n: u32, q: u32) -> Result<Vec<CyclotomicCoset>, PolyError> {
    if gcd(n, q) != 1 {
        return Err(PolyError::NotCoprime { n, q });
    }
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let c = cyclotomic_coset(n, q, j)?;
        for &x in &c.members {
            seen[x as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

pub fn coset_leaders(n: u32, q: u32) -> Result<Vec<u32>, PolyError> {
    Ok(cosets(n, q)?.into_iter().map(|c| c.leader).collect())
}

/// Minimal polynomial of `a` over GF(q); `x` for a = 0.
pub fn minimal_polynomial(f: &Field, a: Elem) -> Poly {
    match a.log() {
        None => Poly::x(),
        Some(i) => minimal_polynomial_of_exp(f, i as i64),
    }
}

/// m_{α^i}(x) = ∏_{j ∈ C_i} (x − α^j) for any integer i.
pub fn minimal_polynomial_of_exp(f: &Field, i: i64) -> Poly {
    let n = f.n();
    let j = i.rem_euclid(n as i64) as u32;
    let coset = cyclotomic_coset(n, f.q(), j).expect("gcd(q^m - 1, q) = 1");
    coset_polynomial(f, &coset)
}

pub fn coset_polynomial(f: &Field, coset: &CyclotomicCoset) -> Poly {
    let poly = coset.members.iter().fold(Poly::one(), |acc, &j| {
        acc.mul(&Poly::linear(f, f.alpha_pow(j as i64)), f)
    });
    assert!(
        poly.over_subfield(f),
        "minimal polynomial escaped GF(q): {}",
        poly.to_text(f)
    );
    poly
}

/// x^n − 1 = ∏ over cosets of the coset polynomials, n = r − 1.
pub fn factor_xn_minus_1(f: &Field) -> Vec<(CyclotomicCoset, Poly)> {
    cosets(f.n(), f.q())
        .expect("gcd(q^m - 1, q) = 1")
        .into_iter()
        .map(|c| {
            let p = coset_polynomial(f, &c);
            (c, p)
        })
        .collect()
}

/// Exponents i in Z_n with g(α^i) = 0, ascending.
pub fn root_exponents(f: &Field, g: &Poly) -> Vec<u32> {
    (0..f.n())
        .filter(|&i| g.eval(f.alpha_pow(i as i64), f).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{FieldSpec, Registry};

    fn gf8() -> Field {
        Field::new(FieldSpec::new(2, 1, 3, vec![1, 1, 0, 1])).unwrap()
    }

    fn gf9() -> Field {
        Field::new(FieldSpec::new(3, 1, 2, vec![2, 2, 1])).unwrap()
    }

    fn bin(f: &Field, bits: &[u32]) -> Poly {
        Poly::from_coeffs(bits.iter().map(|&b| f.from_int(b as i64)).collect())
    }

    #[test]
    fn gcd_examples() {
        let f = gf8();
        let a = bin(&f, &[1, 0, 1]);
        let b = bin(&f, &[1, 0, 0, 1]);
        assert_eq!(a.gcd(&b, &f), bin(&f, &[1, 1]));
        let x5 = Poly::xn_minus_1(&f, 5);
        assert_eq!(Poly::zero().gcd(&x5, &f), x5);
    }

    #[test]
    fn ternary_product() {
        let f = gf9();
        let lhs = Poly::linear(&f, Elem::ONE).mul(&Poly::linear(&f, f.from_int(-1)), &f);
        assert_eq!(lhs, Poly::xn_minus_1(&f, 2));
    }

    #[test]
    fn divmod_by_zero() {
        let f = gf8();
        assert_eq!(
            Poly::x().divmod(&Poly::zero(), &f),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_coset(7, 2, 1).unwrap().members, vec![1, 2, 4]);
        let c = cyclotomic_coset(15, 2, 5).unwrap();
        assert_eq!((c.members.clone(), c.size()), (vec![5, 10], 2));
        assert_eq!(cyclotomic_coset(7, 2, 0).unwrap().members, vec![0]);
        assert_eq!(coset_leaders(7, 2).unwrap(), vec![0, 1, 3]);
        assert_eq!(coset_leaders(15, 2).unwrap(), vec![0, 1, 3, 5, 7]);
        assert_eq!(coset_leaders(8, 3).unwrap(), vec![0, 1, 2, 4, 5]);
        assert_eq!(
            cyclotomic_coset(6, 2, 1),
            Err(PolyError::NotCoprime { n: 6, q: 2 })
        );
        let c = cyclotomic_coset(7, 2, 6).unwrap();
        assert_eq!((c.leader, c.members), (3, vec![6, 5, 3]));
    }

    #[test]
    fn minimal_polynomials_gf8() {
        let f = gf8();
        assert_eq!(minimal_polynomial(&f, f.alpha()), bin(&f, &[1, 1, 0, 1]));
        assert_eq!(minimal_polynomial_of_exp(&f, -1), bin(&f, &[1, 0, 1, 1]));
        assert_eq!(minimal_polynomial(&f, Elem::ONE), Poly::linear(&f, Elem::ONE));
        assert_eq!(minimal_polynomial(&f, Elem::ZERO), Poly::x());
    }

    #[test]
    fn reciprocal_examples() {
        let f = gf8();
        let g = bin(&f, &[1, 1, 0, 1]);
        let gr = g.reciprocal(&f).unwrap();
        assert_eq!(gr, bin(&f, &[1, 0, 1, 1]));
        assert_eq!(gr.reciprocal(&f).unwrap(), g);
        let xm1 = Poly::linear(&f, Elem::ONE);
        assert_eq!(xm1.reciprocal(&f).unwrap(), xm1);
        assert_eq!(Poly::x().reciprocal(&f), Err(PolyError::ZeroConstantTerm));
    }

    #[test]
    fn factorizations() {
        let f = gf8();
        let fac = factor_xn_minus_1(&f);
        let polys: Vec<Poly> = fac.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(
            polys,
            vec![
                bin(&f, &[1, 1]),
                bin(&f, &[1, 1, 0, 1]),
                bin(&f, &[1, 0, 1, 1])
            ]
        );
        let reg = Registry::builtin();
        let gf16 = reg.field(4, 2).unwrap();
        let fac = factor_xn_minus_1(&gf16);
        assert_eq!(fac.len(), 9);
        let n3 = Poly::xn_minus_1(&gf16, 3);
        // the cube roots of unity lie in GF(4)
        let lin: Vec<Poly> = gf16
            .subfield_elements()
            .into_iter()
            .skip(1)
            .map(|c| Poly::linear(&gf16, c))
            .collect();
        let prod = lin.iter().fold(Poly::one(), |a, b| a.mul(b, &gf16));
        assert_eq!(prod, n3);
        let gf9 = gf9();
        let degs: Vec<usize> = factor_xn_minus_1(&gf9)
            .iter()
            .map(|(_, p)| p.degree().unwrap())
            .collect();
        assert_eq!(degs, vec![1, 2, 2, 1, 2]);
    }

    #[test]
    fn irreducibility_tests_agree() {
        let f = gf8();
        assert!(bin(&f, &[1, 1, 0, 1]).is_irreducible_over_subfield(&f));
        assert!(!bin(&f, &[1, 1, 1, 1]).is_irreducible_over_subfield(&f));
        let gf256 = Registry::builtin().field(2, 8).unwrap();
        for (_, p) in factor_xn_minus_1(&gf256) {
            assert!(p.irreducible_by_rabin(&gf256));
            if p.degree().unwrap() <= 4 {
                assert!(p.irreducible_by_trial(&gf256));
            }
        }
        let sq = bin(&gf256, &[1, 1, 0, 1]).pow(2, &gf256);
        assert!(!sq.irreducible_by_rabin(&gf256));
    }

    #[test]
    fn text_round_trip() {
        let f = gf9();
        let p = Poly::from_coeffs(vec![f.alpha_pow(3), Elem::ZERO, Elem::ONE]);
        assert_eq!(p.to_text(&f), "a^3 0 1");
        assert_eq!(Poly::parse_text("a^3 0 1", &f).unwrap(), p);
        assert_eq!(Poly::zero().to_text(&f), "0");
    }
}
