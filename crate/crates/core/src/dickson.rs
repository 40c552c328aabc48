//! Dickson polynomials D_h(x, a) (first kind) and E_h(x, a) (second kind).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::galois::{Elem, Field};
use crate::polyring::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DicksonKind {
    /// D_h, with D_0 = 2 and D_1 = x.
    First,
    /// E_h, with E_0 = 1 and E_1 = x.
    Second,
}

impl DicksonKind {
    pub fn letter(self) -> char {
        match self {
            DicksonKind::First => 'D',
            DicksonKind::Second => 'E',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DicksonSpec {
    pub kind: DicksonKind,
    pub order: u32,
    pub a: Elem,
    /// Constant added to the polynomial (−1 gives f = D_h − 1).
    pub offset: Elem,
}

impl DicksonSpec {
    pub fn first(order: u32, a: Elem) -> Self {
        Self {
            kind: DicksonKind::First,
            order,
            a,
            offset: Elem::ZERO,
        }
    }

    pub fn second(order: u32, a: Elem) -> Self {
        Self {
            kind: DicksonKind::Second,
            order,
            a,
            offset: Elem::ZERO,
        }
    }

    pub fn with_offset(mut self, offset: Elem) -> Self {
        self.offset = offset;
        self
    }

    /// f(x) = (D_h or E_h)(x, a) + offset.
    pub fn polynomial(&self, f: &Field) -> Poly {
        let base = match self.kind {
            DicksonKind::First => dickson_first(self.order, self.a, f),
            DicksonKind::Second => dickson_second(self.order, self.a, f),
        };
        base.add(&Poly::constant(self.offset), f)
    }

    pub fn describe(&self, f: &Field) -> String {
        let mut s = format!(
            "{}_{}(x, {})",
            self.kind.letter(),
            self.order,
            f.fmt_elem(self.a)
        );
        if !self.offset.is_zero() {
            s.push_str(&format!(" + {}", f.fmt_elem(self.offset)));
        }
        s
    }
}

impl fmt::Display for DicksonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Orders up to this bound use exact integer binomials.
const INTEGER_PATH_MAX: u32 = 60;

fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// C(n, k) mod p by Lucas' theorem.
fn binomial_mod(mut n: u32, mut k: u32, p: u32) -> u32 {
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * (binomial_u128(nd, kd) % p as u128) as u32 % p;
        n /= p;
        k /= p;
    }
    acc
}

/// h/(h−i)·C(h−i, i) reduced mod p, for h ≥ 1 and 0 ≤ i ≤ h/2.
fn first_kind_coeff(h: u32, i: u32, p: u32) -> u32 {
    if h <= INTEGER_PATH_MAX {
        let num = h as u128 * binomial_u128(h - i, i);
        let den = (h - i) as u128;
        assert_eq!(num % den, 0, "h/(h-i)*C(h-i,i) must be an integer");
        return (num / den % p as u128) as u32;
    }
    // h/(h−i)·C(h−i, i) = C(h−i, i) + C(h−i−1, i−1)
    let extra = if i == 0 {
        0
    } else {
        binomial_mod(h - i - 1, i - 1, p)
    };
    (binomial_mod(h - i, i, p) + extra) % p
}

fn second_kind_coeff(h: u32, i: u32, p: u32) -> u32 {
    if h <= INTEGER_PATH_MAX {
        (binomial_u128(h - i, i) % p as u128) as u32
    } else {
        binomial_mod(h - i, i, p)
    }
}

fn closed_form(h: u32, a: Elem, f: &Field, coeff: impl Fn(u32) -> u32) -> Poly {
    let neg_a = f.neg(a);
    let mut coeffs = vec![Elem::ZERO; h as usize + 1];
    for i in 0..=h / 2 {
        let c = f.from_int(coeff(i) as i64);
        coeffs[(h - 2 * i) as usize] = f.mul(c, f.powu(neg_a, i as u64));
    }
    Poly::from_coeffs(coeffs)
}

/// D_h(x, a) = Σ_{i ≤ h/2} h/(h−i)·C(h−i, i)·(−a)^i·x^(h−2i), D_0 = 2.
pub fn dickson_first(h: u32, a: Elem, f: &Field) -> Poly {
    if h == 0 {
        return Poly::constant(f.from_int(2));
    }
    closed_form(h, a, f, |i| first_kind_coeff(h, i, f.p()))
}

/// E_h(x, a) = Σ_{i ≤ h/2} C(h−i, i)·(−a)^i·x^(h−2i).
pub fn dickson_second(h: u32, a: Elem, f: &Field) -> Poly {
    closed_form(h, a, f, |i| second_kind_coeff(h, i, f.p()))
}

fn by_recurrence(h: u32, a: Elem, f: &Field, f0: Poly) -> Poly {
    let mut prev = f0;
    let mut cur = Poly::x();
    if h == 0 {
        return prev;
    }
    for _ in 1..h {
        let next = Poly::x()
            .mul(&cur, f)
            .sub(&prev.scale(a, f), f);
        prev = cur;
        cur = next;
    }
    cur
}

/// D_h via D_{h+2} = x·D_{h+1} − a·D_h.
pub fn dickson_first_recurrence(h: u32, a: Elem, f: &Field) -> Poly {
    by_recurrence(h, a, f, Poly::constant(f.from_int(2)))
}

/// E_h via E_{h+2} = x·E_{h+1} − a·E_h.
pub fn dickson_second_recurrence(h: u32, a: Elem, f: &Field) -> Poly {
    by_recurrence(h, a, f, Poly::one())
}

/// g(x) = f(x + 1).
pub fn shift_by_one(poly: &Poly, f: &Field) -> Poly {
    let x_plus_1 = Poly::from_coeffs(vec![Elem::ONE, Elem::ONE]);
    poly.coeffs().iter().rev().fold(Poly::zero(), |acc, &c| {
        acc.mul(&x_plus_1, f).add(&Poly::constant(c), f)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Registry;

    fn poly(c: &[Elem]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn small_orders() {
        let f = Registry::builtin().field(7, 2).unwrap();
        let a = f.alpha_pow(5);
        let z = Elem::ZERO;
        let int = |k: i64| f.from_int(k);
        assert_eq!(dickson_first(0, a, &f), Poly::constant(int(2)));
        let a2 = f.mul(a, a);
        let a3 = f.mul(a2, a);
        let d4 = poly(&[f.mul(int(2), a2), z, f.mul(int(-4), a), z, Elem::ONE]);
        assert_eq!(dickson_first(4, a, &f), d4);
        let d6 = poly(
            &[
                f.mul(int(-2), a3),
                z,
                f.mul(int(9), a2),
                z,
                f.mul(int(-6), a),
                z,
                Elem::ONE,
            ],
        );
        assert_eq!(dickson_first(6, a, &f), d6);
        assert_eq!(dickson_second(0, a, &f), Poly::one());
        assert_eq!(
            dickson_second(2, a, &f),
            poly(&[f.neg(a), z, Elem::ONE])
        );
        let e5 = poly(&[z, f.mul(int(3), a2), z, f.mul(int(-4), a), z, Elem::ONE]);
        assert_eq!(dickson_second(5, a, &f), e5);
    }

    #[test]
    fn d0_in_char_2_is_zero() {
        let f = Registry::builtin().field(2, 3).unwrap();
        assert!(dickson_first(0, Elem::ONE, &f).is_zero());
    }

    #[test]
    fn known_shifts() {
        let reg = Registry::builtin();
        // D_3(x+1, a) = x³ + 3x² + 3(1−a)x + 1 − 3a in characteristic 5
        let f = reg.field(5, 2).unwrap();
        let a = f.alpha_pow(7);
        let int = |k: i64| f.from_int(k);
        let expect = Poly::from_coeffs(vec![
            f.sub(Elem::ONE, f.mul(int(3), a)),
            f.mul(int(3), f.sub(Elem::ONE, a)),
            int(3),
            Elem::ONE,
        ]);
        assert_eq!(shift_by_one(&dickson_first(3, a, &f), &f), expect);

        // D_5(x+1, a) in characteristic 2
        let f = reg.field(2, 5).unwrap();
        let a = f.alpha_pow(3);
        let c = f.add(f.add(Elem::ONE, a), f.mul(a, a));
        let expect = Poly::from_coeffs(vec![c, c, a, a, Elem::ONE, Elem::ONE]);
        assert_eq!(shift_by_one(&dickson_first(5, a, &f), &f), expect);

        // D_4(x+1, a) = x⁴ + x³ − ax² + (1+a)x + 1 − a − a² in characteristic 3
        let f = reg.field(3, 3).unwrap();
        let a = f.alpha_pow(4);
        let expect = Poly::from_coeffs(vec![
            f.sub(f.sub(Elem::ONE, a), f.mul(a, a)),
            f.add(Elem::ONE, a),
            f.neg(a),
            Elem::ONE,
            Elem::ONE,
        ]);
        assert_eq!(shift_by_one(&dickson_first(4, a, &f), &f), expect);
    }

    #[test]
    fn large_prime_powers_are_monomials() {
        let reg = Registry::builtin();
        for (q, m, h) in [(7, 2, 343), (5, 2, 125), (3, 2, 243), (2, 8, 256)] {
            let f = reg.field(q, m).unwrap();
            let a = f.alpha_pow(3);
            assert_eq!(
                dickson_first(h, a, &f),
                Poly::monomial(Elem::ONE, h as usize),
                "q={q} h={h}"
            );
        }
    }

    #[test]
    fn both_coefficient_paths_agree() {
        for p in [2, 3, 5, 7] {
            for h in 1..=INTEGER_PATH_MAX {
                for i in 0..=h / 2 {
                    let extra = if i == 0 { 0 } else { binomial_mod(h - i - 1, i - 1, p) };
                    let lucas = (binomial_mod(h - i, i, p) + extra) % p;
                    assert_eq!(first_kind_coeff(h, i, p), lucas, "p={p} h={h} i={i}");
                    assert_eq!(second_kind_coeff(h, i, p), binomial_mod(h - i, i, p));
                }
            }
        }
    }

    #[test]
    fn offset_shifts_constant() {
        let f = Registry::builtin().field(3, 2).unwrap();
        let spec = DicksonSpec::first(2, Elem::ONE).with_offset(f.from_int(-1));
        let p = spec.polynomial(&f);
        // x² − 2a − 1 with a = 1 is x² in characteristic 3
        assert_eq!(p, Poly::monomial(Elem::ONE, 2));
        assert_eq!(spec.describe(&f), "D_2(x, 1) + a^4");
    }
}
