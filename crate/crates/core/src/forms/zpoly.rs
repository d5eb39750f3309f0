//! Multivariate integer polynomials, used to expand the determinant
//! invariants of a quaternary quadratic form once over Z before reducing
//! them modulo 2.

use std::collections::BTreeMap;

use crate::field::{FieldContext, Fq};

/// Number of indeterminates: `Z0..Z3` (diagonal) then `Z01, Z02, Z03, Z12, Z13, Z23`.
pub const NVARS: usize = 10;

pub type Monomial = [u8; NVARS];

/// Index of the indeterminate attached to coefficient `(i, j)` of a quaternary form.
pub fn var_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        return i;
    }
    const OFF: [[usize; 4]; 4] = [[0, 4, 5, 6], [0, 0, 7, 8], [0, 0, 0, 9], [0; 4]];
    OFF[i][j]
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZPoly {
    terms: BTreeMap<Monomial, i64>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut m = [0; NVARS];
        m[v] = 1;
        let mut p = Self::zero();
        p.add_term(m, 1);
        p
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ZPoly {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for (e, b) in m.iter_mut().zip(mb) {
                    *e += b;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<ZPoly> {
        let mut out = ZPoly::zero();
        for (m, c) in &self.terms {
            if c % k != 0 {
                return None;
            }
            out.add_term(*m, c / k);
        }
        Some(out)
    }

    /// Reduction of the coefficients modulo 2.
    pub fn mod2(&self) -> Gf2Poly {
        Gf2Poly::new(self.terms.iter().filter(|(_, c)| c.rem_euclid(2) == 1).map(|(m, _)| *m).collect())
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<ZPoly>]) -> ZPoly {
    let n = m.len();
    match n {
        0 => ZPoly::constant(1),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = ZPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ZPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][col].mul(&determinant(&minor));
                acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// A polynomial over GF(2), stored as its set of monomials, evaluable over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Poly {
    monomials: Vec<Monomial>,
    // (variable, exponent) factors per monomial
    factors: Vec<Vec<(usize, u8)>>,
}

impl Gf2Poly {
    fn new(monomials: Vec<Monomial>) -> Self {
        let factors = monomials
            .iter()
            .map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v, e)).collect())
            .collect();
        Gf2Poly { monomials, factors }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn eval(&self, ctx: &FieldContext, values: &[Fq; NVARS]) -> Fq {
        let mut acc = Fq::ZERO;
        for factors in &self.factors {
            let mut t = Fq::ONE;
            for &(v, e) in factors {
                let x = values[v];
                for _ in 0..e {
                    t = ctx.mul(t, x);
                }
                if t.is_zero() {
                    break;
                }
            }
            acc += t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_diagonal() {
        let m: Vec<Vec<ZPoly>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { ZPoly::var(i) } else { ZPoly::zero() }).collect()).collect();
        let d = determinant(&m);
        let mut mono = [0; NVARS];
        mono[0] = 1;
        mono[1] = 1;
        mono[2] = 1;
        assert_eq!(d.terms().collect::<Vec<_>>(), vec![(&mono, &1)]);
    }

    #[test]
    fn two_by_two_determinant() {
        // [[x, y], [y, z]] -> xz - y^2
        let m = vec![vec![ZPoly::var(0), ZPoly::var(4)], vec![ZPoly::var(4), ZPoly::var(1)]];
        let expected = ZPoly::var(0).mul(&ZPoly::var(1)).sub(&ZPoly::var(4).mul(&ZPoly::var(4)));
        assert_eq!(determinant(&m), expected);
    }

    #[test]
    fn exact_division() {
        let p = ZPoly::var(0).scale(4).add(&ZPoly::constant(8));
        assert_eq!(p.div_exact(4).unwrap(), ZPoly::var(0).add(&ZPoly::constant(2)));
        assert!(p.div_exact(3).is_none());
        assert!(p.div_exact(4).unwrap().mod2().monomials().len() == 1);
    }

    #[test]
    fn var_indices_cover_all_coefficients() {
        let mut seen = [false; NVARS];
        for i in 0..4 {
            for j in i..4 {
                assert_eq!(var_index(i, j), var_index(j, i));
                seen[var_index(i, j)] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
