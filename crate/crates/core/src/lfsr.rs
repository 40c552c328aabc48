//! Trace-defined periodic sequences s_i = Tr(f(α^i + 1)) and their minimal
//! polynomials, computed by a gcd quotient and by the spectral expansion.

use serde::{Deserialize, Serialize};

use crate::dickson::DicksonSpec;
use crate::galois::{Elem, Field};
use crate::polyring::Poly;

/// One period s_0 … s_{n−1} of a sequence over GF(q), n = q^m − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSequence {
    pub values: Vec<Elem>,
    pub source: Option<DicksonSpec>,
}

impl PeriodicSequence {
    pub fn new(values: Vec<Elem>) -> Self {
        Self {
            values,
            source: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// s_i with the index taken modulo the period.
    pub fn at(&self, i: usize) -> Elem {
        self.values[i % self.values.len()]
    }

    /// S(x) = Σ s_i x^i.
    pub fn polynomial(&self) -> Poly {
        Poly::from_coeffs(self.values.clone())
    }

    /// Symbols rendered as in the polynomial text format.
    pub fn to_text(&self, f: &Field) -> String {
        self.values
            .iter()
            .map(|&v| f.fmt_elem(v))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// s_i = Tr(f(α^i + 1)) for i = 0 … n − 1.
pub fn defining_sequence(f: &Field, spec: &DicksonSpec) -> PeriodicSequence {
    let poly = spec.polynomial(f);
    let values = (0..f.n())
        .map(|i| {
            let x = f.add(f.alpha_pow(i as i64), Elem::ONE);
            f.trace(poly.eval(x, f))
        })
        .collect();
    PeriodicSequence {
        values,
        source: Some(*spec),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalPolyMethod {
    Gcd,
    Dft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPolyResult {
    /// Monic, divides x^n − 1.
    pub poly: Poly,
    /// Linear span, the degree of `poly`.
    pub span: usize,
    pub method: MinimalPolyMethod,
}

/// True iff Σ_j M_j s_{i+L−j} = 0 for every i over a full period.
///
/// The monic M has the roots α^{−i}, so it annihilates the sequence read
/// backwards; the forward recurrence belongs to its reciprocal.
pub fn satisfies_recurrence(f: &Field, m: &Poly, s: &PeriodicSequence) -> bool {
    let l = m.degree().unwrap_or(0);
    (0..s.len()).all(|i| {
        m.coeffs()
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (j, &c)| {
                f.add(acc, f.mul(c, s.at(i + l - j)))
            })
            .is_zero()
    })
}

/// M = monic (x^n − 1)/gcd(x^n − 1, S(x)).
pub fn minimal_poly_gcd(f: &Field, s: &PeriodicSequence) -> MinimalPolyResult {
    let n = s.len();
    let xn1 = Poly::xn_minus_1(f, n);
    let g = s.polynomial().gcd(&xn1, f);
    let m = xn1.div_exact(&g, f).expect("gcd divides x^n - 1").monic(f);
    assert!(
        satisfies_recurrence(f, &m, s),
        "gcd minimal polynomial fails the recurrence"
    );
    MinimalPolyResult {
        span: m.degree().unwrap_or(0),
        poly: m,
        method: MinimalPolyMethod::Gcd,
    }
}

/// Coefficients c_j with s_t = Σ_j c_j α^{jt}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub coeffs: Vec<Elem>,
}

impl Spectrum {
    /// I = {j : c_j ≠ 0}, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j as u32)
            .collect()
    }

    /// Σ_j c_j α^{jt} for t = 0 … n − 1.
    pub fn reconstruct(&self, f: &Field) -> Vec<Elem> {
        let n = self.coeffs.len() as i64;
        (0..n)
            .map(|t| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .fold(Elem::ZERO, |acc, (j, &c)| {
                        f.add(acc, f.mul(c, f.alpha_pow(j as i64 * t)))
                    })
            })
            .collect()
    }
}

/// c_j = −Σ_t s_t α^{−jt}; the sign comes from n ≡ −1 (mod p).
/// The reconstruction identity is checked before returning.
pub fn spectrum(f: &Field, s: &PeriodicSequence) -> Spectrum {
    let n = s.len() as i64;
    assert_eq!(n, f.n() as i64, "sequence period must be r - 1");
    let coeffs = (0..n)
        .map(|j| {
            let sum = s
                .values
                .iter()
                .enumerate()
                .fold(Elem::ZERO, |acc, (t, &v)| {
                    f.add(acc, f.mul(v, f.alpha_pow(-j * t as i64)))
                });
            f.neg(sum)
        })
        .collect();
    let spec = Spectrum { coeffs };
    assert_eq!(
        spec.reconstruct(f),
        s.values,
        "spectrum does not reconstruct the sequence"
    );
    spec
}

/// M = ∏_{i ∈ I} (x − α^{−i}).
pub fn minimal_poly_dft(f: &Field, s: &PeriodicSequence) -> MinimalPolyResult {
    let support = spectrum(f, s).support();
    let m = support.iter().fold(Poly::one(), |acc, &i| {
        acc.mul(&Poly::linear(f, f.alpha_pow(-(i as i64))), f)
    });
    assert!(m.over_subfield(f), "spectral minimal polynomial left GF(q)");
    MinimalPolyResult {
        span: support.len(),
        poly: m,
        method: MinimalPolyMethod::Dft,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Registry;
    use crate::polyring::{minimal_polynomial_of_exp, Poly};

    #[test]
    fn identity_sequence_gf8() {
        let f = Registry::builtin().field(2, 3).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(1, Elem::ONE));
        let bits: Vec<u32> = s.values.iter().map(|&v| u32::from(!v.is_zero())).collect();
        assert_eq!(bits, vec![0, 1, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn zero_sequence() {
        let f = Registry::builtin().field(2, 3).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(0, Elem::ONE));
        assert!(s.is_zero());
        for r in [minimal_poly_gcd(&f, &s), minimal_poly_dft(&f, &s)] {
            assert_eq!((r.poly, r.span), (Poly::one(), 0));
        }
    }

    #[test]
    fn prime_power_order_gives_trace_sequence() {
        let f = Registry::builtin().field(2, 3).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(4, Elem::ONE));
        let expect = Poly::linear(&f, Elem::ONE).mul(&minimal_polynomial_of_exp(&f, -1), &f);
        let r = minimal_poly_gcd(&f, &s);
        assert_eq!((r.poly.clone(), r.span), (expect, 4));
        assert_eq!(minimal_poly_dft(&f, &s).poly, r.poly);
    }

    #[test]
    fn d3_spans() {
        let reg = Registry::builtin();
        let f = reg.field(2, 4).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(3, Elem::ONE));
        assert_eq!(minimal_poly_gcd(&f, &s).span, 8);
        let f = reg.field(2, 5).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(3, Elem::ONE));
        assert_eq!(minimal_poly_gcd(&f, &s).span, 10);
    }

    #[test]
    fn spectrum_of_trace_and_constant() {
        let f = Registry::builtin().field(2, 4).unwrap();
        let s = PeriodicSequence::new((0..15).map(|t| f.trace(f.alpha_pow(t))).collect());
        let sp = spectrum(&f, &s);
        assert_eq!(sp.support(), vec![1, 2, 4, 8]);
        assert!(sp.support().iter().all(|&j| sp.coeffs[j as usize] == Elem::ONE));

        let g = Registry::builtin().field(3, 2).unwrap();
        let c = g.from_int(2);
        let s = PeriodicSequence::new(vec![c; 8]);
        let sp = spectrum(&g, &s);
        assert_eq!(sp.support(), vec![0]);
        assert_eq!(sp.coeffs[0], c);
    }

    #[test]
    fn two_term_trace_sequence() {
        let f = Registry::builtin().field(2, 3).unwrap();
        let s = PeriodicSequence::new(
            (0..7)
                .map(|t| f.trace(f.add(f.alpha_pow(3 * t), f.alpha_pow(t))))
                .collect(),
        );
        let expect = minimal_polynomial_of_exp(&f, -1).mul(&minimal_polynomial_of_exp(&f, -3), &f);
        assert_eq!(minimal_poly_dft(&f, &s).poly, expect);
        assert_eq!(minimal_poly_gcd(&f, &s).poly, expect);
    }

    #[test]
    fn forward_recurrence_needs_reciprocal() {
        let f = Registry::builtin().field(2, 4).unwrap();
        let s = defining_sequence(&f, &DicksonSpec::first(3, f.alpha_pow(3)));
        let m = minimal_poly_gcd(&f, &s).poly;
        let rev = m.reciprocal(&f).unwrap();
        assert!(satisfies_recurrence(&f, &m, &s));
        let forward = |p: &Poly| {
            let l = p.degree().unwrap();
            (0..s.len()).all(|i| {
                (0..=l)
                    .fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(p.coeff(j), s.at(i + j))))
                    .is_zero()
            })
        };
        assert!(forward(&rev));
        assert!(!forward(&m));
    }
}
