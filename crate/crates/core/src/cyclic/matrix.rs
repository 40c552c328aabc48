//! Dense matrices over GF(q) (embedded in the big field) and the two
//! parity-check constructions.

use crate::galois::{Elem, Field};
use crate::polyring::{cosets, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self, f: &Field) -> Matrix {
        let mut m = self.clone();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(piv) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..m.cols {
                m.data.swap(piv * m.cols + c, lead_row * m.cols + c);
            }
            let inv = f.inv(m.get(lead_row, col)).unwrap();
            for c in 0..m.cols {
                let v = f.mul(m.get(lead_row, c), inv);
                m.set(lead_row, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == lead_row || factor.is_zero() {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(lead_row, c)));
                    m.set(r, c, v);
                }
            }
            lead_row += 1;
        }
        m.data.truncate(lead_row * m.cols);
        m.rows = lead_row;
        m
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).rows
    }

    /// H·w, one entry per row.
    pub fn apply(&self, w: &[Elem], f: &Field) -> Vec<Elem> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(w)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }
}

/// (n − k) × n check matrix from h: row l − k holds h_{l−i} at column i,
/// for l = k … n − 1, the coefficients of x^l in c(x)h(x) mod x^n − 1.
pub fn parity_check_from_h(n: usize, h: &Poly) -> Matrix {
    let k = h.degree().expect("h is nonzero");
    let mut m = Matrix::zeros(n - k, n);
    for l in k..n {
        for i in l - k..=l {
            m.set(l - k, i, h.coeff(l - i));
        }
    }
    m
}

/// Check rows Tr(α^l · β^{ij}) over a GF(q)-basis α^0 … α^{m−1} of GF(r),
/// for each coset leader j among the roots of g, with β = α^{(r−1)/n}.
/// Rows may be dependent; the row space is the dual code.
pub fn parity_check_from_roots(f: &Field, n: usize, g: &Poly) -> Matrix {
    let step = (f.n() as usize / n) as i64;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for coset in cosets(n as u32, f.q()).expect("gcd(n, q) = 1") {
        let j = coset.leader as i64;
        let beta_j = f.alpha_pow(step * j);
        if !g.eval(beta_j, f).is_zero() {
            continue;
        }
        for l in 0..f.m() as i64 {
            rows.push(
                (0..n as i64)
                    .map(|i| f.trace(f.alpha_pow(l + step * j * i)))
                    .collect(),
            );
        }
    }
    let mut m = Matrix::zeros(rows.len(), n);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Registry;
    use crate::polyring::minimal_polynomial_of_exp;

    #[test]
    fn both_checks_span_the_same_space() {
        let reg = Registry::builtin();
        for (q, m, exps) in [
            (2u32, 4u32, vec![1i64, 3]),
            (3, 2, vec![0, 1]),
            (4, 2, vec![1, 2, 3]),
            (2, 5, vec![0, -1, -5]),
            (9, 1, vec![1, 2]),
        ] {
            let f = reg.field(q, m).unwrap();
            let n = f.n() as usize;
            let g = exps
                .iter()
                .fold(Poly::one(), |acc, &e| acc.mul(&minimal_polynomial_of_exp(&f, e), &f));
            let h = Poly::xn_minus_1(&f, n).div_exact(&g, &f).unwrap();
            let h1 = parity_check_from_h(n, &h);
            let h2 = parity_check_from_roots(&f, n, &g);
            let rk = n - h.degree().unwrap();
            assert_eq!(h1.rank(&f), rk);
            assert_eq!(h2.rank(&f), rk);
            assert_eq!(h1.stack(&h2).rank(&f), rk);
            assert_eq!(h1.rref(&f), h2.rref(&f));
            // generator rows are annihilated
            let mut gw = vec![Elem::ZERO; n];
            for (i, &c) in g.coeffs().iter().enumerate() {
                gw[i] = c;
            }
            assert!(h1.apply(&gw, &f).iter().all(|e| e.is_zero()));
            assert!(h2.apply(&gw, &f).iter().all(|e| e.is_zero()));
        }
    }
}
