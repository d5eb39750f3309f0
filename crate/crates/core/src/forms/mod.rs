//! Quadratic forms over GF(q), q even: rank, species and point counts.
//!
//! In characteristic 2 the polar form `B(x, y) = F(x + y) + F(x) + F(y)` is
//! alternating, so its rank is even. On the radical of `B` the form is
//! additive and Frobenius-semilinear, hence a square of a linear functional;
//! the rank of the quadric is `rank B` plus one when `F` does not vanish on
//! the whole radical. Quaternary nondegenerate forms are split into
//! hyperbolic and elliptic by the trace of the invariant
//! `alpha = (det A - det B) / (4 det B)`, expanded generically over Z and
//! then specialised.

pub mod zpoly;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{FieldContext, Fq};
use zpoly::{determinant, var_index, Gf2Poly, ZPoly, NVARS};

/// Most variables a form may have (quadrics of PG(4, q)).
pub const MAX_VARS: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("zero form has no rank")]
    ZeroForm,
    #[error("alpha undefined (degenerate)")]
    AlphaUndefined,
    #[error("expected a form in {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("unsupported number of variables {0}")]
    UnsupportedArity(usize),
    #[error("coefficient list has length {found}, expected {expected}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("{species} of rank {rank} does not live in PG({n}, q)")]
    InconsistentClass { species: Species, rank: usize, n: usize },
}

/// `F = sum c_ii x_i^2 + sum_{i<j} c_ij x_i x_j`, upper-triangular storage.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    n_vars: usize,
    c: [[Fq; MAX_VARS]; MAX_VARS],
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuadraticForm").field("n_vars", &self.n_vars).field("coeffs", &self.to_coeff_list()).finish()
    }
}

impl QuadraticForm {
    pub fn zero(n_vars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&n_vars), "unsupported arity {n_vars}");
        QuadraticForm { n_vars, c: [[Fq::ZERO; MAX_VARS]; MAX_VARS] }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Coefficient of `x_i x_j` (of `x_i^2` when `i == j`).
    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Fq {
        if i <= j {
            self.c[i][j]
        } else {
            self.c[j][i]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.c[i][j] = v;
    }

    pub fn with(mut self, i: usize, j: usize, v: Fq) -> Self {
        self.set(i, j, v);
        self
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n_vars).all(|i| (i..self.n_vars).all(|j| self.c[i][j].is_zero()))
    }

    /// Coefficients in serialization order: diagonal first, then `(i, j)`, `i < j`, lexicographically.
    pub fn to_coeff_list(&self) -> Vec<Fq> {
        let n = self.n_vars;
        let mut out: Vec<Fq> = (0..n).map(|i| self.c[i][i]).collect();
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.c[i][j]);
            }
        }
        out
    }

    pub fn from_coeff_list(n_vars: usize, coeffs: &[Fq]) -> Result<Self, FormError> {
        if !(1..=MAX_VARS).contains(&n_vars) {
            return Err(FormError::UnsupportedArity(n_vars));
        }
        let expected = n_vars * (n_vars + 1) / 2;
        if coeffs.len() != expected {
            return Err(FormError::CoefficientCount { expected, found: coeffs.len() });
        }
        let mut f = QuadraticForm::zero(n_vars);
        let mut it = coeffs.iter().copied();
        for i in 0..n_vars {
            f.c[i][i] = it.next().unwrap();
        }
        for i in 0..n_vars {
            for j in i + 1..n_vars {
                f.c[i][j] = it.next().unwrap();
            }
        }
        Ok(f)
    }

    pub fn eval(&self, ctx: &FieldContext, x: &[Fq]) -> Fq {
        debug_assert_eq!(x.len(), self.n_vars);
        let mut acc = Fq::ZERO;
        for i in 0..self.n_vars {
            if x[i].is_zero() {
                continue;
            }
            // x_i * (c_ii x_i + sum_{j>i} c_ij x_j)
            let mut lin = ctx.mul(self.c[i][i], x[i]);
            for j in i + 1..self.n_vars {
                lin += ctx.mul(self.c[i][j], x[j]);
            }
            acc += ctx.mul(x[i], lin);
        }
        acc
    }

    /// The alternating matrix of the polar form.
    pub fn polar_matrix(&self) -> Vec<Vec<Fq>> {
        let n = self.n_vars;
        (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ZERO } else { self.coeff(i, j) }).collect()).collect()
    }

    /// `G(y) = F(M y)` for a square matrix `M` (rows indexed by the variables of `F`).
    pub fn substitute(&self, ctx: &FieldContext, m: &[Vec<Fq>]) -> QuadraticForm {
        let n = self.n_vars;
        assert_eq!(m.len(), n);
        let mut g = QuadraticForm::zero(n);
        for i in 0..n {
            for j in i..n {
                let cij = self.c[i][j];
                if cij.is_zero() {
                    continue;
                }
                // c_ij * (row_i . y) * (row_j . y)
                for k in 0..n {
                    g.c[k][k] += ctx.mul(cij, ctx.mul(m[i][k], m[j][k]));
                    for l in k + 1..n {
                        let t = ctx.mul(m[i][k], m[j][l]) + ctx.mul(m[i][l], m[j][k]);
                        g.c[k][l] += ctx.mul(cij, t);
                    }
                }
            }
        }
        g
    }

    /// The form in the variables `vars` only, the others set to zero.
    pub fn restrict(&self, vars: &[usize]) -> QuadraticForm {
        let mut g = QuadraticForm::zero(vars.len());
        for (a, &i) in vars.iter().enumerate() {
            for (b, &j) in vars.iter().enumerate().skip(a) {
                g.c[a][b] = self.coeff(i, j);
            }
        }
        g
    }
}

/// Rank and species of a quadric of PG(n, q), q even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Species {
    Hyperbolic,
    Elliptic,
    Parabolic,
    ConeOverHyperbolic,
    ConeOverElliptic,
    /// Rank 3 and degenerate: a cone over a conic.
    ConePointConic,
    /// Rank 2, splitting over GF(q).
    RationalPair,
    /// Rank 2, splitting only over GF(q^2).
    ConjugatePair,
    /// Rank 1: a repeated hyperplane.
    DoubleSubspace,
}

impl Species {
    pub fn name(self) -> &'static str {
        match self {
            Species::Hyperbolic => "hyperbolic",
            Species::Elliptic => "elliptic",
            Species::Parabolic => "parabolic",
            Species::ConeOverHyperbolic => "cone-over-hyperbolic",
            Species::ConeOverElliptic => "cone-over-elliptic",
            Species::ConePointConic => "cone-point-conic",
            Species::RationalPair => "rational-pair",
            Species::ConjugatePair => "conjugate-pair",
            Species::DoubleSubspace => "double-subspace",
        }
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadricClass {
    pub rank: usize,
    pub species: Species,
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.species, self.rank)
    }
}

/// The invariant `alpha` of a quaternary form, with the determinants it is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaInvariant {
    pub det_a: Fq,
    pub det_b: Fq,
    pub value: Fq,
}

/// `det A`, `det B` and `(det A - det B) / 4` expanded over Z and reduced mod 2.
pub struct GenericInvariants {
    pub det_a: ZPoly,
    pub det_b: ZPoly,
    pub numerator: ZPoly,
    det_a2: Gf2Poly,
    det_b2: Gf2Poly,
    numerator2: Gf2Poly,
}

impl GenericInvariants {
    fn build() -> Self {
        let var = |i: usize, j: usize| ZPoly::var(var_index(i, j));
        let a: Vec<Vec<ZPoly>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { var(i, i).scale(2) } else { var(i, j) }).collect()).collect();
        let b: Vec<Vec<ZPoly>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => ZPoly::zero(),
                        std::cmp::Ordering::Less => var(i, j),
                        std::cmp::Ordering::Greater => var(i, j).scale(-1),
                    })
                    .collect()
            })
            .collect();
        let det_a = determinant(&a);
        let det_b = determinant(&b);
        let numerator = det_a.sub(&det_b).div_exact(4).expect("det A - det B is divisible by 4 over Z");
        GenericInvariants {
            det_a2: det_a.mod2(),
            det_b2: det_b.mod2(),
            numerator2: numerator.mod2(),
            det_a,
            det_b,
            numerator,
        }
    }

    pub fn det_a_mod2(&self) -> &Gf2Poly {
        &self.det_a2
    }

    pub fn det_b_mod2(&self) -> &Gf2Poly {
        &self.det_b2
    }

    pub fn numerator_mod2(&self) -> &Gf2Poly {
        &self.numerator2
    }

    fn values(form: &QuadraticForm) -> [Fq; NVARS] {
        let mut v = [Fq::ZERO; NVARS];
        for i in 0..4 {
            for j in i..4 {
                v[var_index(i, j)] = form.coeff(i, j);
            }
        }
        v
    }
}

/// The precomputed generic invariants, built on first use.
pub fn generic_invariants() -> &'static GenericInvariants {
    static CELL: OnceLock<GenericInvariants> = OnceLock::new();
    CELL.get_or_init(GenericInvariants::build)
}

fn check_arity(f: &QuadraticForm, expected: usize) -> Result<(), FormError> {
    if f.n_vars != expected {
        return Err(FormError::Arity { expected, found: f.n_vars });
    }
    Ok(())
}

/// `det A` of a quaternary form under the specialisation rule.
pub fn det_a_pg3(ctx: &FieldContext, f: &QuadraticForm) -> Result<Fq, FormError> {
    check_arity(f, 4)?;
    let g = generic_invariants();
    Ok(g.det_a2.eval(ctx, &GenericInvariants::values(f)))
}

pub fn alpha_pg3(ctx: &FieldContext, f: &QuadraticForm) -> Result<AlphaInvariant, FormError> {
    check_arity(f, 4)?;
    let g = generic_invariants();
    let vals = GenericInvariants::values(f);
    let det_b = g.det_b2.eval(ctx, &vals);
    let inv_b = ctx.inv(det_b).ok_or(FormError::AlphaUndefined)?;
    let det_a = g.det_a2.eval(ctx, &vals);
    let value = ctx.mul(g.numerator2.eval(ctx, &vals), inv_b);
    Ok(AlphaInvariant { det_a, det_b, value })
}

/// Polar rank, pivot columns (a complement of the radical) and whether `F`
/// vanishes on the radical.
struct PolarReduction {
    pivots: [usize; MAX_VARS],
    polar_rank: usize,
    residual: bool,
}

fn reduce(ctx: &FieldContext, f: &QuadraticForm) -> PolarReduction {
    let n = f.n_vars;
    let mut m = [[Fq::ZERO; MAX_VARS]; MAX_VARS];
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = f.c[i][j];
            m[j][i] = f.c[i][j];
        }
    }
    // reduced row echelon form
    let mut pivots = [0usize; MAX_VARS];
    let mut is_pivot = [false; MAX_VARS];
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = ctx.inv(m[row][col]).unwrap();
        for k in col..n {
            m[row][k] = ctx.mul(m[row][k], inv);
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col];
                for k in col..n {
                    let t = ctx.mul(factor, m[row][k]);
                    m[r][k] += t;
                }
            }
        }
        pivots[row] = col;
        is_pivot[col] = true;
        row += 1;
    }
    let polar_rank = row;
    // radical basis: one vector per free column
    let mut residual = false;
    let mut v = [Fq::ZERO; MAX_VARS];
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        v.fill(Fq::ZERO);
        v[free] = Fq::ONE;
        for r in 0..polar_rank {
            v[pivots[r]] = m[r][free];
        }
        if !f.eval(ctx, &v[..n]).is_zero() {
            residual = true;
            break;
        }
    }
    PolarReduction { pivots, polar_rank, residual }
}

/// `aX^2 + bXY + cY^2` with `b != 0` splits over GF(q) iff `Tr(ac/b^2) = 0`.
fn binary_splits(ctx: &FieldContext, a: Fq, b: Fq, c: Fq) -> bool {
    let ib = ctx.inv(b).expect("nondegenerate binary form");
    ctx.absolute_trace(ctx.mul(ctx.mul(a, c), ctx.square(ib))) == 0
}

pub fn quadric_rank(ctx: &FieldContext, f: &QuadraticForm) -> Result<usize, FormError> {
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let r = reduce(ctx, f);
    Ok(r.polar_rank + r.residual as usize)
}

/// Rank and species of the quadric `F = 0` in PG(n_vars - 1, q).
pub fn classify(ctx: &FieldContext, f: &QuadraticForm) -> Result<QuadricClass, FormError> {
    if !(2..=MAX_VARS).contains(&f.n_vars) {
        return Err(FormError::UnsupportedArity(f.n_vars));
    }
    if f.is_zero() {
        return Err(FormError::ZeroForm);
    }
    let red = reduce(ctx, f);
    let rank = red.polar_rank + red.residual as usize;
    let nondegenerate = rank == f.n_vars;
    let species = if red.residual {
        match (rank, nondegenerate) {
            (_, true) => Species::Parabolic,
            (3, false) => Species::ConePointConic,
            (1, false) => Species::DoubleSubspace,
            _ => unreachable!("odd rank at most 5"),
        }
    } else {
        // F vanishes on the radical: classify the nondegenerate form on a complement
        let vars = &red.pivots[..red.polar_rank];
        let split = match red.polar_rank {
            4 => {
                let sub = f.restrict(vars);
                let alpha = alpha_pg3(ctx, &sub)?;
                ctx.absolute_trace(alpha.value) == 0
            }
            2 => {
                let (i, j) = (vars[0], vars[1]);
                binary_splits(ctx, f.coeff(i, i), f.coeff(i, j), f.coeff(j, j))
            }
            _ => unreachable!("polar rank of a nonzero form vanishing on its radical"),
        };
        match (rank, nondegenerate, split) {
            (_, true, true) => Species::Hyperbolic,
            (_, true, false) => Species::Elliptic,
            (4, false, true) => Species::ConeOverHyperbolic,
            (4, false, false) => Species::ConeOverElliptic,
            (2, false, true) => Species::RationalPair,
            (2, false, false) => Species::ConjugatePair,
            _ => unreachable!(),
        }
    };
    Ok(QuadricClass { rank, species })
}

/// Classification of a quadric of PG(3, q).
pub fn classify_pg3(ctx: &FieldContext, f: &QuadraticForm) -> Result<QuadricClass, FormError> {
    check_arity(f, 4)?;
    classify(ctx, f)
}

/// Classification of a quadric of PG(4, q).
pub fn classify_pg4(ctx: &FieldContext, f: &QuadraticForm) -> Result<QuadricClass, FormError> {
    check_arity(f, 5)?;
    classify(ctx, f)
}

fn pg_size(dim: i64, q: u64) -> u64 {
    // number of points of PG(dim, q); PG(-1, q) is empty
    (0..=dim).map(|i| q.pow(i as u32)).sum()
}

/// Number of points of a quadric of class `cls` in PG(n, q).
pub fn point_count(cls: QuadricClass, n: usize, q: u64) -> Result<u64, FormError> {
    let r = cls.rank;
    let inconsistent = || FormError::InconsistentClass { species: cls.species, rank: r, n };
    let nondeg = r == n + 1;
    let ok = match cls.species {
        Species::Hyperbolic | Species::Elliptic => nondeg && r.is_multiple_of(2),
        Species::Parabolic => nondeg && r % 2 == 1,
        Species::ConeOverHyperbolic | Species::ConeOverElliptic => r == 4 && n >= 4,
        Species::ConePointConic => r == 3 && n >= 3,
        Species::RationalPair | Species::ConjugatePair => r == 2 && n >= 2,
        Species::DoubleSubspace => r == 1 && n >= 1,
    };
    if !ok {
        return Err(inconsistent());
    }
    // nondegenerate base of rank r in PG(r - 1, q)
    let base = if r % 2 == 1 {
        pg_size(r as i64 - 2, q)
    } else {
        let m = (r / 2) as u32;
        match cls.species {
            Species::Hyperbolic | Species::ConeOverHyperbolic | Species::RationalPair => {
                (q.pow(m) - 1) * (q.pow(m - 1) + 1) / (q - 1)
            }
            _ => (q.pow(m) + 1) * (q.pow(m - 1) - 1) / (q - 1),
        }
    };
    // cone with vertex PG(n - r, q)
    let vertex_dim = n as i64 - r as i64;
    Ok(q.pow((vertex_dim + 1) as u32) * base + pg_size(vertex_dim, q))
}

/// Visits one normalized representative of every point of PG(n_vars - 1, q).
pub fn for_each_point(ctx: &FieldContext, n_vars: usize, mut visit: impl FnMut(&[Fq])) {
    let q = ctx.q();
    let mut x = vec![Fq::ZERO; n_vars];
    for lead in 0..n_vars {
        let free = n_vars - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            x.fill(Fq::ZERO);
            x[lead] = Fq::ONE;
            let mut rest = idx;
            for k in 0..free {
                x[lead + 1 + k] = ctx.element(rest % q);
                rest /= q;
            }
            visit(&x);
        }
    }
}

/// Counts the projective zeros of `F` by enumeration.
pub fn count_points_bruteforce(ctx: &FieldContext, f: &QuadraticForm) -> u64 {
    let mut count = 0;
    for_each_point(ctx, f.n_vars, |x| {
        if f.eval(ctx, x).is_zero() {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(h: u32) -> FieldContext {
        FieldContext::new(h).unwrap()
    }

    fn form(n: usize, terms: &[(usize, usize, Fq)]) -> QuadraticForm {
        terms.iter().fold(QuadraticForm::zero(n), |f, &(i, j, v)| f.with(i, j, v))
    }

    const ONE: Fq = Fq::ONE;

    #[test]
    fn polar_matrix_examples() {
        let f = form(2, &[(0, 1, ONE)]);
        assert_eq!(f.polar_matrix(), vec![vec![Fq::ZERO, ONE], vec![ONE, Fq::ZERO]]);
        let g = form(2, &[(0, 0, ONE)]);
        assert!(g.polar_matrix().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn rank_examples() {
        let f = ctx(2);
        assert_eq!(quadric_rank(&f, &form(2, &[(0, 0, ONE), (1, 1, ONE)])).unwrap(), 1);
        assert_eq!(quadric_rank(&f, &form(4, &[(0, 1, ONE), (2, 3, ONE)])).unwrap(), 4);
        assert_eq!(quadric_rank(&f, &QuadraticForm::zero(4)), Err(FormError::ZeroForm));
        assert_eq!(classify(&f, &QuadraticForm::zero(5)), Err(FormError::ZeroForm));
    }

    #[test]
    fn pg3_examples() {
        for h in 1..=3 {
            let f = ctx(h);
            let q = f.q() as u64;
            let hyp = form(4, &[(0, 1, ONE), (2, 3, ONE)]);
            let c = classify_pg3(&f, &hyp).unwrap();
            assert_eq!(c.species, Species::Hyperbolic);
            assert_eq!(point_count(c, 3, q).unwrap(), (q + 1) * (q + 1));

            let ell = form(4, &[(0, 1, ONE), (2, 2, ONE), (2, 3, ONE), (3, 3, f.nu())]);
            let c = classify_pg3(&f, &ell).unwrap();
            assert_eq!(c.species, Species::Elliptic);
            assert_eq!(count_points_bruteforce(&f, &ell), q * q + 1);

            // (x0 + x1) x2
            let pair = form(4, &[(0, 2, ONE), (1, 2, ONE)]);
            assert_eq!(classify_pg3(&f, &pair).unwrap(), QuadricClass { rank: 2, species: Species::RationalPair });
        }
    }

    #[test]
    fn pg4_examples() {
        let f = ctx(1);
        let par = form(5, &[(0, 1, ONE), (2, 3, ONE), (4, 4, ONE)]);
        let c = classify_pg4(&f, &par).unwrap();
        assert_eq!(c, QuadricClass { rank: 5, species: Species::Parabolic });
        assert_eq!(count_points_bruteforce(&f, &par), 15);

        let cone = form(5, &[(0, 1, ONE), (2, 3, ONE)]);
        let c = classify_pg4(&f, &cone).unwrap();
        assert_eq!(c.species, Species::ConeOverHyperbolic);
        assert_eq!(point_count(c, 4, 2).unwrap(), 2 * 9 + 1);

        let double = form(5, &[(0, 0, ONE)]);
        assert_eq!(classify_pg4(&f, &double).unwrap().species, Species::DoubleSubspace);
        assert_eq!(classify_pg4(&f, &form(4, &[(0, 0, ONE)])), Err(FormError::Arity { expected: 5, found: 4 }));
    }

    #[test]
    fn point_count_table() {
        for q in [2u64, 4, 8] {
            let pc = |rank, species, n| point_count(QuadricClass { rank, species }, n, q).unwrap();
            assert_eq!(pc(4, Species::Hyperbolic, 3), (q + 1) * (q + 1));
            assert_eq!(pc(4, Species::Elliptic, 3), q * q + 1);
            assert_eq!(pc(3, Species::ConePointConic, 3), q * q + q + 1);
            assert_eq!(pc(2, Species::RationalPair, 3), 2 * q * q + q + 1);
            assert_eq!(pc(2, Species::ConjugatePair, 3), q + 1);
            assert_eq!(pc(1, Species::DoubleSubspace, 3), q * q + q + 1);
            assert_eq!(pc(5, Species::Parabolic, 4), (q + 1) * (q * q + 1));
            assert_eq!(pc(4, Species::ConeOverHyperbolic, 4), q * (q + 1) * (q + 1) + 1);
            assert_eq!(pc(4, Species::ConeOverElliptic, 4), q * (q * q + 1) + 1);
            assert_eq!(pc(3, Species::ConePointConic, 4), q * q * q + q * q + q + 1);
            assert_eq!(pc(2, Species::RationalPair, 4), 2 * q * q * q + q * q + q + 1);
            assert_eq!(pc(2, Species::ConjugatePair, 4), q * q + q + 1);
            assert_eq!(pc(3, Species::Parabolic, 2), q + 1);
        }
        assert_eq!(point_count(QuadricClass { rank: 2, species: Species::RationalPair }, 4, 2).unwrap(), 23);
        assert!(point_count(QuadricClass { rank: 5, species: Species::Parabolic }, 3, 2).is_err());
        assert!(point_count(QuadricClass { rank: 4, species: Species::Hyperbolic }, 4, 2).is_err());
    }

    #[test]
    fn generic_alpha_polynomials() {
        let g = generic_invariants();
        // det B mod 2 is the square of the Pfaffian: three square monomials
        assert_eq!(g.det_b_mod2().monomials().len(), 3);
        assert_eq!(g.det_a_mod2(), g.det_b_mod2());
        // six Z_i Z_j Z_kl^2, four Z_i times a triangle, one surviving four-cycle
        assert_eq!(g.numerator_mod2().monomials().len(), 11);
        assert!(!g.numerator.is_zero());
    }

    #[test]
    fn coefficient_list_roundtrip() {
        let f = ctx(2);
        let coeffs: Vec<Fq> = (0..15).map(|i| f.element(i % 4)).collect();
        let form = QuadraticForm::from_coeff_list(5, &coeffs).unwrap();
        assert_eq!(form.to_coeff_list(), coeffs);
        assert_eq!(form.coeff(0, 1), coeffs[5]);
        assert_eq!(form.coeff(3, 4), coeffs[14]);
        assert!(QuadraticForm::from_coeff_list(5, &coeffs[..14]).is_err());
    }

    #[test]
    fn substitution_by_identity_is_noop() {
        let f = ctx(2);
        let form = form(4, &[(0, 1, ONE), (2, 3, Fq(2)), (1, 1, Fq(3))]);
        let id: Vec<Vec<Fq>> = (0..4).map(|i| (0..4).map(|j| if i == j { ONE } else { Fq::ZERO }).collect()).collect();
        assert_eq!(form.substitute(&f, &id), form);
    }
}
