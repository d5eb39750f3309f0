//! Intersection of the Hermitian surface with a quadric tangent to it at `P_inf`.
//!
//! The quadric is `z = ax^2 + by^2 + cxy + dx + ey + f`, homogeneously
//! `ZJ = aX^2 + bY^2 + cXY + dXJ + eYJ + fJ^2`. Its affine points on the
//! Hermitian surface correspond to the affine zeros of a quadric `Xi` of
//! PG(4, q) whose section at infinity is `XiInf`; the count follows from the
//! classification of the pair.

mod extremal;
mod family;
mod oracle;

use std::fmt;

use thiserror::Error;

use crate::field::{FieldContext, Fq, Fq2};
use crate::forms::{classify_pg3, classify_pg4, point_count, FormError, QuadraticForm, QuadricClass, Species};
use crate::hermitian::GeometryError;

pub use extremal::{
    check_ovoid, check_permutable, find_extremal, reguli, regulus_secant_distribution, ExtremalTarget, OvoidCheck,
    PermutableCheck, Regulus, SecantDistribution, Witness,
};
pub use family::{family_heads, normalized_family, Family};
pub use oracle::{oracle_c_infinity, oracle_intersection_size, Oracle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error("quadric is reducible (a = b = c = 0)")]
    Reducible,
    #[error("case pair {hat} / {inf} is outside the case table")]
    CaseOutsideTable { hat: QuadricClass, inf: QuadricClass },
    #[error("quadric is {0}, expected hyperbolic")]
    NotHyperbolic(QSpecies),
    #[error("intersection has {found} points, expected {expected}")]
    Precondition { expected: u64, found: u64 },
    #[error("regulus extraction failed: {0}")]
    Regulus(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The quadric `z = ax^2 + by^2 + cxy + dx + ey + f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadricSurfaceQ {
    pub a: Fq2,
    pub b: Fq2,
    pub c: Fq2,
    pub d: Fq2,
    pub e: Fq2,
    pub f: Fq2,
}

impl QuadricSurfaceQ {
    pub fn new(coeffs: [Fq2; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs;
        QuadricSurfaceQ { a, b, c, d, e, f }
    }

    pub fn coeffs(&self) -> [Fq2; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// The tuple with mixed-radix index `idx` (`a` most significant).
    pub fn from_index(ctx: &FieldContext, mut idx: u64) -> Self {
        let q2 = ctx.q2() as u64;
        let mut c = [Fq2::ZERO; 6];
        for slot in c.iter_mut().rev() {
            *slot = ctx.from_code2((idx % q2) as usize);
            idx /= q2;
        }
        QuadricSurfaceQ::new(c)
    }

    pub fn index(&self, ctx: &FieldContext) -> u64 {
        let q2 = ctx.q2() as u64;
        self.coeffs().iter().fold(0, |acc, &x| acc * q2 + ctx.code2(x) as u64)
    }

    /// `z` as a function of the affine coordinates.
    pub fn eval_affine(&self, ctx: &FieldContext, x: Fq2, y: Fq2) -> Fq2 {
        ctx.mul2(self.a, ctx.square2(x))
            + ctx.mul2(self.b, ctx.square2(y))
            + ctx.mul2(self.c, ctx.mul2(x, y))
            + ctx.mul2(self.d, x)
            + ctx.mul2(self.e, y)
            + self.f
    }

    /// `ZJ + aX^2 + bY^2 + cXY + dXJ + eYJ + fJ^2` at `(J, X, Y, Z)`.
    pub fn eval_projective(&self, ctx: &FieldContext, p: &[Fq2; 4]) -> Fq2 {
        let [j, x, y, z] = *p;
        ctx.mul2(z, j)
            + ctx.mul2(self.a, ctx.square2(x))
            + ctx.mul2(self.b, ctx.square2(y))
            + ctx.mul2(self.c, ctx.mul2(x, y))
            + ctx.mul2(self.d, ctx.mul2(x, j))
            + ctx.mul2(self.e, ctx.mul2(y, j))
            + ctx.mul2(self.f, ctx.square2(j))
    }

    /// Comma-separated coefficients in `x0+e*x1` notation.
    pub fn format(&self, ctx: &FieldContext) -> String {
        self.coeffs().iter().map(|&x| ctx.format2(x)).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QSpecies {
    Elliptic,
    Hyperbolic,
    Cone,
    Reducible,
}

impl QSpecies {
    pub fn name(self) -> &'static str {
        match self {
            QSpecies::Elliptic => "elliptic",
            QSpecies::Hyperbolic => "hyperbolic",
            QSpecies::Cone => "cone",
            QSpecies::Reducible => "reducible",
        }
    }
}

impl fmt::Display for QSpecies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_q(ctx: &FieldContext, q: &QuadricSurfaceQ) -> QSpecies {
    classify_head(ctx, q.a, q.b, q.c)
}

fn classify_head(ctx: &FieldContext, a: Fq2, b: Fq2, c: Fq2) -> QSpecies {
    if let Some(ic) = ctx.inv2(c) {
        let t = ctx.mul2(ctx.mul2(a, b), ctx.square2(ic));
        if ctx.absolute_trace_q2(t) == 0 {
            QSpecies::Hyperbolic
        } else {
            QSpecies::Elliptic
        }
    } else if a.is_zero() && b.is_zero() {
        QSpecies::Reducible
    } else {
        QSpecies::Cone
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CInfinityKind {
    Point,
    OneLine,
    TwoLines,
}

impl CInfinityKind {
    pub fn name(self) -> &'static str {
        match self {
            CInfinityKind::Point => "point",
            CInfinityKind::OneLine => "one-line",
            CInfinityKind::TwoLines => "two-lines",
        }
    }
}

impl fmt::Display for CInfinityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The common points of both surfaces in the plane at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CInfinityType {
    pub kind: CInfinityKind,
    pub size: u64,
}

pub fn c_infinity(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Result<CInfinityType, IntersectError> {
    c_infinity_head(ctx, q.a, q.b, q.c)
}

/// Lines through `P_inf` in `J = 0` are `X = lambda Y` and `Y = 0`; count those on both surfaces.
fn c_infinity_head(ctx: &FieldContext, a: Fq2, b: Fq2, c: Fq2) -> Result<CInfinityType, IntersectError> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(IntersectError::Reducible);
    }
    let mut lines = 0u64;
    for lambda in ctx.elements2() {
        let on_q = (ctx.mul2(a, ctx.square2(lambda)) + ctx.mul2(c, lambda) + b).is_zero();
        if on_q && ctx.norm(lambda) == Fq::ONE {
            lines += 1;
        }
    }
    // Y = 0 lies on Q iff a = 0 but never on H
    let kind = match lines {
        0 => CInfinityKind::Point,
        1 => CInfinityKind::OneLine,
        _ => CInfinityKind::TwoLines,
    };
    let q2 = ctx.q2() as u64;
    Ok(CInfinityType { kind, size: 1 + lines * q2 })
}

/// Variable order of `Xi`: `x0, x1, y0, y1, w`.
pub const XI_VARS: [&str; 5] = ["x0", "x1", "y0", "y1", "w"];

/// `XiInf` in `(x0, x1, y0, y1)`.
pub fn build_xi_inf(ctx: &FieldContext, a: Fq2, b: Fq2, c: Fq2) -> QuadraticForm {
    let nu = ctx.nu();
    let one_nu = Fq::ONE + nu;
    let mut f = QuadraticForm::zero(4);
    for (base, coef) in [(0, a), (2, b)] {
        let (k0, k1) = ctx.split(coef);
        f.set(base, base, k1 + Fq::ONE);
        f.set(base, base + 1, Fq::ONE);
        f.set(base + 1, base + 1, k0 + ctx.mul(one_nu, k1) + nu);
    }
    let (c0, c1) = ctx.split(c);
    f.set(0, 2, c1);
    f.set(0, 3, c0 + c1);
    f.set(1, 2, c0 + c1);
    f.set(1, 3, c0 + ctx.mul(one_nu, c1));
    f
}

/// Extends `XiInf` by the homogenizing variable `w`.
fn extend_xi(ctx: &FieldContext, inf: &QuadraticForm, d: Fq2, e: Fq2, f: Fq2) -> QuadraticForm {
    let mut hat = QuadraticForm::zero(5);
    for i in 0..4 {
        for j in i..4 {
            hat.set(i, j, inf.coeff(i, j));
        }
    }
    let (d0, d1) = ctx.split(d);
    let (e0, e1) = ctx.split(e);
    hat.set(0, 4, d1);
    hat.set(1, 4, d0 + d1);
    hat.set(2, 4, e1);
    hat.set(3, 4, e0 + e1);
    hat.set(4, 4, ctx.split(f).1);
    hat
}

/// `(Xi, XiInf)` for the quadric.
pub fn build_xi(ctx: &FieldContext, q: &QuadricSurfaceQ) -> (QuadraticForm, QuadraticForm) {
    let inf = build_xi_inf(ctx, q.a, q.b, q.c);
    (extend_xi(ctx, &inf, q.d, q.e, q.f), inf)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    C1_1,
    C1_2,
    C2,
    C3_1,
    C3_2,
    C4_1,
    C4_2,
    C5_1,
    C5_2,
    C6,
    C7_1,
    C7_2,
    C8_1,
    C8_2,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 14] = [
        CaseLabel::C1_1,
        CaseLabel::C1_2,
        CaseLabel::C2,
        CaseLabel::C3_1,
        CaseLabel::C3_2,
        CaseLabel::C4_1,
        CaseLabel::C4_2,
        CaseLabel::C5_1,
        CaseLabel::C5_2,
        CaseLabel::C6,
        CaseLabel::C7_1,
        CaseLabel::C7_2,
        CaseLabel::C8_1,
        CaseLabel::C8_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::C1_1 => "C1.1",
            CaseLabel::C1_2 => "C1.2",
            CaseLabel::C2 => "C2",
            CaseLabel::C3_1 => "C3.1",
            CaseLabel::C3_2 => "C3.2",
            CaseLabel::C4_1 => "C4.1",
            CaseLabel::C4_2 => "C4.2",
            CaseLabel::C5_1 => "C5.1",
            CaseLabel::C5_2 => "C5.2",
            CaseLabel::C6 => "C6",
            CaseLabel::C7_1 => "C7.1",
            CaseLabel::C7_2 => "C7.2",
            CaseLabel::C8_1 => "C8.1",
            CaseLabel::C8_2 => "C8.2",
        }
    }

    /// Species of `Xi` and of `XiInf` for this case.
    pub fn species_pair(self) -> (Species, Species) {
        use Species::*;
        match self {
            CaseLabel::C1_1 => (Parabolic, Hyperbolic),
            CaseLabel::C1_2 => (Parabolic, Elliptic),
            CaseLabel::C2 => (Parabolic, ConePointConic),
            CaseLabel::C3_1 => (ConeOverHyperbolic, Hyperbolic),
            CaseLabel::C3_2 => (ConeOverElliptic, Elliptic),
            CaseLabel::C4_1 => (ConeOverHyperbolic, ConePointConic),
            CaseLabel::C4_2 => (ConeOverElliptic, ConePointConic),
            CaseLabel::C5_1 => (ConeOverHyperbolic, RationalPair),
            CaseLabel::C5_2 => (ConeOverElliptic, ConjugatePair),
            CaseLabel::C6 => (ConePointConic, ConePointConic),
            CaseLabel::C7_1 => (ConePointConic, RationalPair),
            CaseLabel::C7_2 => (ConePointConic, ConjugatePair),
            CaseLabel::C8_1 => (RationalPair, RationalPair),
            CaseLabel::C8_2 => (ConjugatePair, ConjugatePair),
        }
    }

    pub fn from_classes(hat: QuadricClass, inf: QuadricClass) -> Option<CaseLabel> {
        CaseLabel::ALL.into_iter().find(|l| l.species_pair() == (hat.species, inf.species))
    }

    /// Tabulated number of affine common points.
    pub fn affine_count(self, q: u64) -> u64 {
        let (q2, q3) = (q * q, q * q * q);
        match self {
            CaseLabel::C1_1 => q3 - q,
            CaseLabel::C1_2 => q3 + q,
            CaseLabel::C2 | CaseLabel::C5_1 | CaseLabel::C5_2 | CaseLabel::C6 => q3,
            CaseLabel::C3_1 => q3 + q2 - q,
            CaseLabel::C3_2 => q3 - q2 + q,
            CaseLabel::C4_1 | CaseLabel::C7_2 => q3 + q2,
            CaseLabel::C4_2 | CaseLabel::C7_1 => q3 - q2,
            CaseLabel::C8_1 => 2 * q3 - q2,
            CaseLabel::C8_2 => q2,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything determined by `(a, b, c)` alone, shared by all `(d, e, f)`.
#[derive(Clone, Copy, Debug)]
pub struct AtInfinity {
    pub species: QSpecies,
    pub c_inf: CInfinityType,
    pub xi_inf: QuadraticForm,
    pub xi_inf_class: QuadricClass,
    xi_inf_points: u64,
}

impl AtInfinity {
    pub fn new(ctx: &FieldContext, a: Fq2, b: Fq2, c: Fq2) -> Result<Self, IntersectError> {
        let species = classify_head(ctx, a, b, c);
        if species == QSpecies::Reducible {
            return Err(IntersectError::Reducible);
        }
        let c_inf = c_infinity_head(ctx, a, b, c)?;
        let xi_inf = build_xi_inf(ctx, a, b, c);
        let xi_inf_class = classify_pg3(ctx, &xi_inf)?;
        let xi_inf_points = point_count(xi_inf_class, 3, ctx.q() as u64)?;
        Ok(AtInfinity { species, c_inf, xi_inf, xi_inf_class, xi_inf_points })
    }

    pub fn complete(&self, ctx: &FieldContext, d: Fq2, e: Fq2, f: Fq2) -> Result<FastOutcome, IntersectError> {
        let hat = extend_xi(ctx, &self.xi_inf, d, e, f);
        let xi_class = classify_pg4(ctx, &hat)?;
        let case = CaseLabel::from_classes(xi_class, self.xi_inf_class)
            .ok_or(IntersectError::CaseOutsideTable { hat: xi_class, inf: self.xi_inf_class })?;
        let n_affine = point_count(xi_class, 4, ctx.q() as u64)? - self.xi_inf_points;
        Ok(FastOutcome { xi_class, case, n_affine, size_total: n_affine + self.c_inf.size })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FastOutcome {
    pub xi_class: QuadricClass,
    pub case: CaseLabel,
    pub n_affine: u64,
    pub size_total: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub q: u64,
    pub quadric: QuadricSurfaceQ,
    pub species: QSpecies,
    pub c_inf: CInfinityType,
    pub xi_class: QuadricClass,
    pub xi_inf_class: QuadricClass,
    pub case: CaseLabel,
    pub n_affine: u64,
    pub size_total: u64,
    pub oracle_size: Option<u64>,
    pub ovoid: Option<bool>,
    pub permutable: Option<bool>,
}

pub fn fast_intersection_size(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Result<IntersectionReport, IntersectError> {
    let inf = AtInfinity::new(ctx, q.a, q.b, q.c)?;
    let out = inf.complete(ctx, q.d, q.e, q.f)?;
    Ok(IntersectionReport {
        q: ctx.q() as u64,
        quadric: *q,
        species: inf.species,
        c_inf: inf.c_inf,
        xi_class: out.xi_class,
        xi_inf_class: inf.xi_inf_class,
        case: out.case,
        n_affine: out.n_affine,
        size_total: out.size_total,
        oracle_size: None,
        ovoid: None,
        permutable: None,
    })
}

/// A case-table restriction that an instance broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exclusion {
    /// Cone with degenerate `XiInf`.
    ConeDegenerateInf,
    /// Hyperbolic, `C_inf` one line, `XiInf` elliptic.
    OneLineEllipticInf,
    /// Hyperbolic, `C_inf` one line, `XiInf` of rank 2.
    OneLineRankTwoInf,
    /// `C_inf` two lines, degenerate `XiInf`, `Xi` a cone over a hyperbolic quadric.
    TwoLinesConeOverHyperbolic,
    /// `C_inf` two lines and `XiInf` a conjugate pair.
    TwoLinesConjugatePair,
    /// Hyperbolic, `C_inf` a point and `XiInf` a rational pair.
    PointRationalPair,
    /// Elliptic quadric outside cases C1 to C4 and C6.
    EllipticCase,
    /// Cone with `C_inf` a line outside C1.1 and C3.1.
    ConeLineCase,
}

impl Exclusion {
    pub const ALL: [Exclusion; 8] = [
        Exclusion::ConeDegenerateInf,
        Exclusion::OneLineEllipticInf,
        Exclusion::OneLineRankTwoInf,
        Exclusion::TwoLinesConeOverHyperbolic,
        Exclusion::TwoLinesConjugatePair,
        Exclusion::PointRationalPair,
        Exclusion::EllipticCase,
        Exclusion::ConeLineCase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Exclusion::ConeDegenerateInf => "cone-degenerate-inf",
            Exclusion::OneLineEllipticInf => "one-line-elliptic-inf",
            Exclusion::OneLineRankTwoInf => "one-line-rank-two-inf",
            Exclusion::TwoLinesConeOverHyperbolic => "two-lines-cone-over-hyperbolic",
            Exclusion::TwoLinesConjugatePair => "two-lines-conjugate-pair",
            Exclusion::PointRationalPair => "point-rational-pair",
            Exclusion::EllipticCase => "elliptic-case",
            Exclusion::ConeLineCase => "cone-line-case",
        }
    }

    /// Restrictions violated by an instance with the given data.
    pub fn violated(inf: &AtInfinity, out: &FastOutcome) -> impl Iterator<Item = Exclusion> {
        let (sp, kind) = (inf.species, inf.c_inf.kind);
        let inf_rank = inf.xi_inf_class.rank;
        let inf_species = inf.xi_inf_class.species;
        let hyp = sp == QSpecies::Hyperbolic;
        let checks = [
            sp == QSpecies::Cone && inf_rank < 4,
            hyp && kind == CInfinityKind::OneLine && inf_species == Species::Elliptic,
            hyp && kind == CInfinityKind::OneLine && inf_rank == 2,
            kind == CInfinityKind::TwoLines && inf_rank < 4 && out.xi_class.species == Species::ConeOverHyperbolic,
            kind == CInfinityKind::TwoLines && inf_species == Species::ConjugatePair,
            hyp && kind == CInfinityKind::Point && inf_species == Species::RationalPair,
            sp == QSpecies::Elliptic
                && matches!(
                    out.case,
                    CaseLabel::C5_1
                        | CaseLabel::C5_2
                        | CaseLabel::C7_1
                        | CaseLabel::C7_2
                        | CaseLabel::C8_1
                        | CaseLabel::C8_2
                ),
            sp == QSpecies::Cone
                && kind != CInfinityKind::Point
                && !matches!(out.case, CaseLabel::C1_1 | CaseLabel::C3_1),
        ];
        Exclusion::ALL.into_iter().zip(checks).filter(|(_, hit)| *hit).map(|(e, _)| e)
    }
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Intersection sizes that can occur for each species.
pub fn expected_spectrum(species: QSpecies, q: u64) -> Vec<u64> {
    let (q2, q3) = (q * q, q * q * q);
    let mut v = match species {
        QSpecies::Elliptic => {
            vec![q3 - q2 + 1, q3 - q2 + q + 1, q3 - q + 1, q3 + 1, q3 + q + 1, q3 + q2 - q + 1, q3 + q2 + 1]
        }
        QSpecies::Cone => vec![q3 - q2 + q + 1, q3 - q + 1, q3 + q + 1, q3 + q2 - q + 1, q3 + 2 * q2 - q + 1],
        QSpecies::Hyperbolic => vec![
            q2 + 1,
            q3 - q2 + 1,
            q3 - q2 + q + 1,
            q3 - q + 1,
            q3 + 1,
            q3 + q + 1,
            q3 + q2 - q + 1,
            q3 + q2 + 1,
            q3 + 2 * q2 - q + 1,
            q3 + 2 * q2 + 1,
            q3 + 3 * q2 - q + 1,
            2 * q3 + q2 + 1,
        ],
        QSpecies::Reducible => vec![],
    };
    v.sort_unstable();
    v.dedup();
    v
}
