//! Exact arithmetic in GF(q), q = 2^h, and in its quadratic extension GF(q^2).
//!
//! GF(q) elements are stored in the polynomial basis over GF(2) modulo the
//! least irreducible polynomial of degree `h` (least as an integer bit mask).
//! GF(q^2) is the two-dimensional GF(q)-algebra with basis `{1, e}` where
//! `e^2 = e + nu` and `Tr(nu) = 1`, so `x = x0 + e*x1` splits for free.

use std::fmt;
use std::ops::{Add, AddAssign};

use thiserror::Error;

/// Largest supported extension degree of GF(q) over GF(2).
pub const MAX_DEGREE: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported extension degree {0} (expected 1..={MAX_DEGREE})")]
    UnsupportedDegree(u32),
    #[error("field order {0} is not a power of two in 2..=256")]
    UnsupportedOrder(u64),
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// An element of GF(2^h).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// characteristic 2: addition is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Fq {
    type Output = Fq;
    #[inline]
    fn add(self, rhs: Fq) -> Fq {
        Fq(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Fq {
    #[inline]
    fn add_assign(&mut self, rhs: Fq) {
        self.0 ^= rhs.0;
    }
}

/// An element `x0 + e*x1` of GF(q^2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq2 {
    pub x0: Fq,
    pub x1: Fq,
}

impl Fq2 {
    pub const ZERO: Fq2 = Fq2 { x0: Fq::ZERO, x1: Fq::ZERO };
    pub const ONE: Fq2 = Fq2 { x0: Fq::ONE, x1: Fq::ZERO };
    /// The basis element `e`.
    pub const EPSILON: Fq2 = Fq2 { x0: Fq::ZERO, x1: Fq::ONE };

    #[inline]
    pub fn new(x0: Fq, x1: Fq) -> Self {
        Fq2 { x0, x1 }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.x0.is_zero() && self.x1.is_zero()
    }

    #[inline]
    pub fn in_subfield(self) -> bool {
        self.x1.is_zero()
    }
}

impl From<Fq> for Fq2 {
    fn from(x0: Fq) -> Self {
        Fq2 { x0, x1: Fq::ZERO }
    }
}

impl Add for Fq2 {
    type Output = Fq2;
    #[inline]
    fn add(self, rhs: Fq2) -> Fq2 {
        Fq2 { x0: self.x0 + rhs.x0, x1: self.x1 + rhs.x1 }
    }
}

impl AddAssign for Fq2 {
    #[inline]
    fn add_assign(&mut self, rhs: Fq2) {
        self.x0 += rhs.x0;
        self.x1 += rhs.x1;
    }
}

/// Carry-less product of two GF(2) polynomials.
fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn is_irreducible(p: u32) -> bool {
    let d = degree(p);
    // trial division by every polynomial of degree 1..=d/2
    (2u32..(1 << (d / 2 + 1))).all(|f| poly_rem(p, f) != 0)
}

/// The least irreducible polynomial of degree `h` over GF(2), as a bit mask.
pub fn least_irreducible(h: u32) -> u32 {
    ((1u32 << h)..(1u32 << (h + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// Shared, immutable arithmetic context for GF(q) and GF(q^2).
#[derive(Clone)]
pub struct FieldContext {
    h: u32,
    q: usize,
    modulus: u32,
    nu: Fq,
    mul: Vec<u8>,
    inv: Vec<u8>,
    sqrt: Vec<u8>,
    trace: Vec<u8>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("h", &self.h)
            .field("q", &self.q)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("nu", &self.nu)
            .finish()
    }
}

impl FieldContext {
    /// Builds the tower for `q = 2^h`.
    pub fn new(h: u32) -> Result<Self, FieldError> {
        if h == 0 || h > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(h));
        }
        let q = 1usize << h;
        let modulus = least_irreducible(h);

        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in a..q {
                let p = poly_rem(clmul(a as u32, b as u32), modulus) as u8;
                mul[a * q + b] = p;
                mul[b * q + a] = p;
            }
        }
        let mut inv = vec![0u8; q];
        let mut sqrt = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
            sqrt[mul[a * q + a] as usize] = a as u8;
        }
        // Tr(x) = x + x^2 + ... + x^(2^(h-1))
        let mut trace = vec![0u8; q];
        for (x, t) in trace.iter_mut().enumerate() {
            let mut acc = 0u8;
            let mut power = x as u8;
            for _ in 0..h {
                acc ^= power;
                power = mul[power as usize * q + power as usize];
            }
            debug_assert!(acc <= 1);
            *t = acc;
        }

        // least nu with Tr(nu) = 1, avoiding nu = 1 whenever GF(q) allows it
        let nu = (2..q)
            .find(|&x| trace[x] == 1)
            .or_else(|| (trace[1] == 1).then_some(1))
            .map(|x| Fq(x as u8))
            .expect("some element has trace one");

        Ok(FieldContext { h, q, modulus, nu, mul, inv, sqrt, trace })
    }

    /// Builds the tower for a given even field order `q`.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        if !(2..=256).contains(&q) || !q.is_power_of_two() {
            return Err(FieldError::UnsupportedOrder(q));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// The order of the small field GF(q).
    pub fn q(&self) -> usize {
        self.q
    }

    /// The order of GF(q^2).
    pub fn q2(&self) -> usize {
        self.q * self.q
    }

    /// Defining polynomial of GF(q) over GF(2), bit `i` holding the coefficient of `x^i`.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn nu(&self) -> Fq {
        self.nu
    }

    // ----- GF(q) -----

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.mul[a.0 as usize * self.q + b.0 as usize])
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (!a.is_zero()).then(|| Fq(self.inv[a.0 as usize]))
    }

    /// `a / b`; `None` when `b` is zero.
    #[inline]
    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// The unique square root (squaring is bijective in characteristic 2).
    #[inline]
    pub fn sqrt(&self, a: Fq) -> Fq {
        Fq(self.sqrt[a.0 as usize])
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace GF(q) -> GF(2).
    #[inline]
    pub fn absolute_trace(&self, a: Fq) -> u8 {
        self.trace[a.0 as usize]
    }

    /// All elements of GF(q) in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q).map(|x| Fq(x as u8))
    }

    /// Element with the given bit code.
    pub fn element(&self, code: usize) -> Fq {
        debug_assert!(code < self.q);
        Fq(code as u8)
    }

    // ----- GF(q^2) -----

    #[inline]
    pub fn mul2(&self, a: Fq2, b: Fq2) -> Fq2 {
        // (a0 + e a1)(b0 + e b1) with e^2 = e + nu
        let t = self.mul(a.x1, b.x1);
        Fq2 { x0: self.mul(a.x0, b.x0) + self.mul(self.nu, t), x1: self.mul(a.x0, b.x1) + self.mul(a.x1, b.x0) + t }
    }

    #[inline]
    pub fn square2(&self, a: Fq2) -> Fq2 {
        let t = self.square(a.x1);
        Fq2 { x0: self.square(a.x0) + self.mul(self.nu, t), x1: t }
    }

    /// Scales a GF(q^2) element by a GF(q) scalar.
    #[inline]
    pub fn scale2(&self, s: Fq, a: Fq2) -> Fq2 {
        Fq2 { x0: self.mul(s, a.x0), x1: self.mul(s, a.x1) }
    }

    pub fn pow2(&self, a: Fq2, mut e: u64) -> Fq2 {
        let mut base = a;
        let mut acc = Fq2::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul2(acc, base);
            }
            base = self.square2(base);
            e >>= 1;
        }
        acc
    }

    /// `x^q`. Uses `e^q = e + 1`, so `(x0 + e x1)^q = (x0 + x1) + e x1`.
    #[inline]
    pub fn frobenius(&self, a: Fq2) -> Fq2 {
        Fq2 { x0: a.x0 + a.x1, x1: a.x1 }
    }

    /// `x^(q+1)`, an element of GF(q).
    #[inline]
    pub fn norm(&self, a: Fq2) -> Fq {
        let n = self.mul2(a, self.frobenius(a));
        debug_assert!(n.x1.is_zero());
        n.x0
    }

    /// `x + x^q`, an element of GF(q).
    #[inline]
    pub fn relative_trace_q2(&self, a: Fq2) -> Fq {
        let t = a + self.frobenius(a);
        debug_assert!(t.x1.is_zero());
        t.x0
    }

    /// Absolute trace GF(q^2) -> GF(2).
    #[inline]
    pub fn absolute_trace_q2(&self, a: Fq2) -> u8 {
        self.absolute_trace(self.relative_trace_q2(a))
    }

    pub fn inv2(&self, a: Fq2) -> Option<Fq2> {
        let n = self.inv(self.norm(a))?;
        Some(self.scale2(n, self.frobenius(a)))
    }

    pub fn div2(&self, a: Fq2, b: Fq2) -> Option<Fq2> {
        self.inv2(b).map(|ib| self.mul2(a, ib))
    }

    /// Unique square root in GF(q^2).
    pub fn sqrt2(&self, a: Fq2) -> Fq2 {
        self.pow2(a, (self.q2() / 2) as u64)
    }

    #[inline]
    pub fn split(&self, a: Fq2) -> (Fq, Fq) {
        (a.x0, a.x1)
    }

    #[inline]
    pub fn recombine(&self, x0: Fq, x1: Fq) -> Fq2 {
        Fq2 { x0, x1 }
    }

    /// Dense index of a GF(q^2) element in `0..q^2`.
    #[inline]
    pub fn code2(&self, a: Fq2) -> usize {
        a.x0.0 as usize | (a.x1.0 as usize) << self.h
    }

    #[inline]
    pub fn from_code2(&self, code: usize) -> Fq2 {
        debug_assert!(code < self.q2());
        Fq2 { x0: Fq((code & (self.q - 1)) as u8), x1: Fq((code >> self.h) as u8) }
    }

    /// All elements of GF(q^2) in code order.
    pub fn elements2(&self) -> impl Iterator<Item = Fq2> + Clone + '_ {
        (0..self.q2()).map(move |c| self.from_code2(c))
    }

    /// Nonzero elements of GF(q^2) of norm one.
    pub fn norm_one(&self) -> Vec<Fq2> {
        self.elements2().filter(|&x| self.norm(x) == Fq::ONE).collect()
    }

    // ----- text encoding -----

    /// Little-endian bit string of length `h`.
    pub fn format(&self, a: Fq) -> String {
        (0..self.h).map(|i| if a.0 >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// `x0+e*x1` with little-endian bit strings.
    pub fn format2(&self, a: Fq2) -> String {
        format!("{}+e*{}", self.format(a.x0), self.format(a.x1))
    }

    /// The modulus as a little-endian bit string of length `h + 1`.
    pub fn format_modulus(&self) -> String {
        (0..=self.h).map(|i| if self.modulus >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse(&self, s: &str) -> Result<Fq, FieldError> {
        let s = s.trim();
        if s.len() != self.h as usize || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(FieldError::Parse(s.to_string()));
        }
        let bits = s.chars().enumerate().fold(0u8, |acc, (i, c)| acc | (((c == '1') as u8) << i));
        Ok(Fq(bits))
    }

    /// Parses either `x0+e*x1` (bit strings) or a decimal code `x0 | x1 << h`.
    pub fn parse2(&self, s: &str) -> Result<Fq2, FieldError> {
        let s = s.trim();
        if let Some((lo, hi)) = s.split_once("+e*") {
            return Ok(Fq2 { x0: self.parse(lo)?, x1: self.parse(hi)? });
        }
        match s.parse::<usize>() {
            Ok(code) if code < self.q2() => Ok(self.from_code2(code)),
            _ => Err(FieldError::Parse(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(h: u32) -> FieldContext {
        FieldContext::new(h).unwrap()
    }

    #[test]
    fn moduli_are_least_irreducible() {
        assert_eq!(least_irreducible(1), 0b10);
        assert_eq!(least_irreducible(2), 0b111);
        assert_eq!(least_irreducible(3), 0b1011);
        assert_eq!(least_irreducible(4), 0b10011);
        assert_eq!(least_irreducible(8), 0b1_0001_1011);
    }

    #[test]
    fn trace_small_examples() {
        let f2 = ctx(1);
        assert_eq!(f2.absolute_trace(Fq::ZERO), 0);
        assert_eq!(f2.absolute_trace(Fq::ONE), 1);
        let f4 = ctx(2);
        let omega = Fq(2);
        assert_eq!(f4.mul(omega, omega), omega + Fq::ONE);
        assert_eq!(f4.absolute_trace(omega), 1);
        assert_eq!(f4.absolute_trace(Fq::ONE), 0);
    }

    #[test]
    fn nu_choice() {
        assert_eq!(ctx(1).nu(), Fq::ONE);
        for h in 2..=MAX_DEGREE {
            let f = ctx(h);
            assert_ne!(f.nu(), Fq::ONE);
            assert_eq!(f.absolute_trace(f.nu()), 1);
        }
    }

    #[test]
    fn half_the_elements_have_trace_one() {
        for h in 1..=MAX_DEGREE {
            let f = ctx(h);
            let ones = f.elements().filter(|&x| f.absolute_trace(x) == 1).count();
            assert_eq!(ones, f.q() / 2);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for h in 1..=2 {
            let f = ctx(h);
            let els: Vec<Fq2> = f.elements2().collect();
            for &x in &els {
                assert_eq!(x + x, Fq2::ZERO);
                if !x.is_zero() {
                    assert_eq!(f.mul2(x, f.inv2(x).unwrap()), Fq2::ONE);
                }
                assert_eq!(f.pow2(x, f.q2() as u64), x);
                for &y in &els {
                    assert_eq!(f.mul2(x, y), f.mul2(y, x));
                    for &z in &els {
                        assert_eq!(f.mul2(f.mul2(x, y), z), f.mul2(x, f.mul2(y, z)));
                        assert_eq!(f.mul2(x, y + z), f.mul2(x, y) + f.mul2(x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_identities() {
        for h in 1..=MAX_DEGREE {
            let f = ctx(h);
            let e = Fq2::EPSILON;
            let nu = Fq2::from(f.nu());
            assert_eq!(f.square2(e) + e + nu, Fq2::ZERO);
            assert_eq!(f.pow2(e, f.q() as u64) + e + Fq2::ONE, Fq2::ZERO);
            assert_eq!(f.frobenius(e), e + Fq2::ONE);
            assert_eq!(f.norm(e), f.nu());
            assert_eq!(f.relative_trace_q2(e), Fq::ONE);
        }
    }

    #[test]
    fn frobenius_matches_repeated_squaring() {
        for h in 1..=4 {
            let f = ctx(h);
            for x in f.elements2() {
                let by_pow = f.pow2(x, f.q() as u64);
                assert_eq!(f.frobenius(x), by_pow);
                assert_eq!(f.frobenius(by_pow), x);
                assert_eq!(by_pow == x, x.in_subfield());
                assert_eq!(f.relative_trace_q2(x), x.x1);
                assert_eq!(Fq2::from(f.norm(x)), f.pow2(x, f.q() as u64 + 1));
            }
        }
    }

    #[test]
    fn norm_fibres() {
        for h in 1..=3 {
            let f = ctx(h);
            let mut fibres = vec![0usize; f.q()];
            for x in f.elements2().filter(|x| !x.is_zero()) {
                fibres[f.norm(x).0 as usize] += 1;
            }
            assert_eq!(fibres[0], 0);
            assert!(fibres[1..].iter().all(|&n| n == f.q() + 1));
        }
        assert_eq!(ctx(1).norm_one().len(), 3);
    }

    #[test]
    fn norm_is_multiplicative() {
        let f = ctx(2);
        for x in f.elements2() {
            for y in f.elements2() {
                assert_eq!(f.norm(f.mul2(x, y)), f.mul(f.norm(x), f.norm(y)));
            }
        }
    }

    #[test]
    fn split_is_linear_bijection() {
        let f = ctx(1);
        for x in f.elements2() {
            let (x0, x1) = f.split(x);
            assert_eq!(f.recombine(x0, x1), x);
            for y in f.elements2() {
                let (y0, y1) = f.split(y);
                assert_eq!(f.split(x + y), (x0 + y0, x1 + y1));
            }
        }
        assert_eq!(f.split(Fq2::ZERO), (Fq::ZERO, Fq::ZERO));
        assert_eq!(f.split(Fq2::EPSILON), (Fq::ZERO, Fq::ONE));
    }

    #[test]
    fn trace_is_additive() {
        let f = ctx(3);
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.absolute_trace(x + y), f.absolute_trace(x) ^ f.absolute_trace(y));
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let f = ctx(3);
        for x in f.elements2() {
            assert_eq!(f.square2(f.sqrt2(x)), x);
        }
        for x in f.elements() {
            assert_eq!(f.square(f.sqrt(x)), x);
        }
    }

    #[test]
    fn text_encoding() {
        let f = ctx(2);
        assert_eq!(f.format(Fq(2)), "01");
        assert_eq!(f.format2(Fq2::EPSILON), "00+e*10");
        assert_eq!(f.format_modulus(), "111");
        for x in f.elements2() {
            assert_eq!(f.parse2(&f.format2(x)).unwrap(), x);
            assert_eq!(f.parse2(&f.code2(x).to_string()).unwrap(), x);
        }
        assert!(f.parse2("16").is_err());
        assert!(f.parse2("1+e*011").is_err());
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FieldContext::new(0).unwrap_err(), FieldError::UnsupportedDegree(0));
        assert!(FieldContext::with_order(6).is_err());
        assert!(FieldContext::with_order(512).is_err());
        assert_eq!(FieldContext::with_order(8).unwrap().h(), 3);
    }
}
