//! Points, lines and planes of PG(3, q^2) and the Hermitian surface
//! `Z^q J + Z J^q = X^(q+1) + Y^(q+1)` with homogeneous coordinates `(J, X, Y, Z)`.

use std::fmt;

use thiserror::Error;

use crate::field::{FieldContext, Fq, Fq2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("points do not span a line")]
    CoincidentPoints,
    #[error("point {0} is not on the Hermitian surface")]
    NotOnSurface(String),
    #[error("line meets the Hermitian surface in {0} points")]
    UnexpectedLineMeet(usize),
}

fn normalize(ctx: &FieldContext, v: [Fq2; 4]) -> Option<[Fq2; 4]> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = ctx.inv2(*lead).unwrap();
    Some(v.map(|x| ctx.mul2(x, inv)))
}

/// A point of PG(3, q^2), first nonzero coordinate equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: [Fq2; 4],
}

impl ProjectivePoint {
    pub fn new(ctx: &FieldContext, coords: [Fq2; 4]) -> Result<Self, GeometryError> {
        normalize(ctx, coords).map(|coords| ProjectivePoint { coords }).ok_or(GeometryError::ZeroVector)
    }

    /// `(0, 0, 0, 1)`, the point at infinity of the z-axis.
    pub fn p_infinity() -> Self {
        ProjectivePoint { coords: [Fq2::ZERO, Fq2::ZERO, Fq2::ZERO, Fq2::ONE] }
    }

    /// The affine point `(x, y, z)`.
    pub fn affine(x: Fq2, y: Fq2, z: Fq2) -> Self {
        ProjectivePoint { coords: [Fq2::ONE, x, y, z] }
    }

    pub fn coords(&self) -> &[Fq2; 4] {
        &self.coords
    }

    pub fn is_affine(&self) -> bool {
        !self.coords[0].is_zero()
    }

    /// Colon-separated coordinates.
    pub fn format(&self, ctx: &FieldContext) -> String {
        self.coords.iter().map(|&c| ctx.format2(c)).collect::<Vec<_>>().join(":")
    }
}

/// A plane `p0 J + p1 X + p2 Y + p3 Z = 0`, dual coordinates normalized like points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plane {
    coords: [Fq2; 4],
}

impl Plane {
    pub fn new(ctx: &FieldContext, coords: [Fq2; 4]) -> Result<Self, GeometryError> {
        normalize(ctx, coords).map(|coords| Plane { coords }).ok_or(GeometryError::ZeroVector)
    }

    /// The plane `J = 0`.
    pub fn at_infinity() -> Self {
        Plane { coords: [Fq2::ONE, Fq2::ZERO, Fq2::ZERO, Fq2::ZERO] }
    }

    pub fn coords(&self) -> &[Fq2; 4] {
        &self.coords
    }

    pub fn contains(&self, ctx: &FieldContext, p: &ProjectivePoint) -> bool {
        self.coords.iter().zip(p.coords.iter()).fold(Fq2::ZERO, |acc, (&a, &b)| acc + ctx.mul2(a, b)).is_zero()
    }
}

/// A line of PG(3, q^2), stored as the reduced row echelon basis of its 2-dimensional span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectiveLine {
    rows: [[Fq2; 4]; 2],
}

impl ProjectiveLine {
    pub fn through(ctx: &FieldContext, p: &ProjectivePoint, r: &ProjectivePoint) -> Result<Self, GeometryError> {
        let mut m = [p.coords, r.coords];
        let mut row = 0;
        for col in 0..4 {
            if row == 2 {
                break;
            }
            let Some(piv) = (row..2).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, piv);
            let inv = ctx.inv2(m[row][col]).unwrap();
            m[row] = m[row].map(|x| ctx.mul2(x, inv));
            for other in 0..2 {
                if other != row && !m[other][col].is_zero() {
                    let factor = m[other][col];
                    for k in 0..4 {
                        let t = ctx.mul2(factor, m[row][k]);
                        m[other][k] += t;
                    }
                }
            }
            row += 1;
        }
        if row < 2 {
            return Err(GeometryError::CoincidentPoints);
        }
        Ok(ProjectiveLine { rows: m })
    }

    pub fn rows(&self) -> &[[Fq2; 4]; 2] {
        &self.rows
    }

    /// The `q^2 + 1` points of the line.
    pub fn points(&self, ctx: &FieldContext) -> Vec<ProjectivePoint> {
        let [u, v] = self.rows;
        let mut out = Vec::with_capacity(ctx.q2() + 1);
        // u has the earlier pivot, so u and lambda*u + v are already normalized
        out.push(ProjectivePoint { coords: u });
        for lambda in ctx.elements2() {
            let c = [0, 1, 2, 3].map(|k| ctx.mul2(lambda, u[k]) + v[k]);
            out.push(ProjectivePoint::new(ctx, c).expect("independent rows"));
        }
        out
    }

    pub fn contains(&self, ctx: &FieldContext, p: &ProjectivePoint) -> bool {
        ProjectiveLine::through(ctx, &ProjectivePoint { coords: self.rows[0] }, p).map_or(true, |l| l == *self)
    }
}

/// Every point of PG(3, q^2), in coordinate order.
pub fn all_points(ctx: &FieldContext) -> Vec<ProjectivePoint> {
    let q2 = ctx.q2();
    let mut out = Vec::with_capacity(q2 * q2 * q2 + q2 * q2 + q2 + 1);
    for lead in 0..4 {
        let free = 3 - lead;
        for idx in 0..q2.pow(free as u32) {
            let mut c = [Fq2::ZERO; 4];
            c[lead] = Fq2::ONE;
            let mut rest = idx;
            for k in 0..free {
                c[lead + 1 + k] = ctx.from_code2(rest % q2);
                rest /= q2;
            }
            out.push(ProjectivePoint { coords: c });
        }
    }
    out
}

/// Every line of PG(3, q^2), enumerated by echelon shape.
pub fn all_lines(ctx: &FieldContext) -> Vec<ProjectiveLine> {
    let q2 = ctx.q2();
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            // free entries: row 0 at columns > i other than j, row 1 at columns > j
            let free0: Vec<usize> = (i + 1..4).filter(|&k| k != j).collect();
            let free1: Vec<usize> = (j + 1..4).collect();
            let total = q2.pow((free0.len() + free1.len()) as u32);
            for idx in 0..total {
                let mut rows = [[Fq2::ZERO; 4]; 2];
                rows[0][i] = Fq2::ONE;
                rows[1][j] = Fq2::ONE;
                let mut rest = idx;
                for &k in &free0 {
                    rows[0][k] = ctx.from_code2(rest % q2);
                    rest /= q2;
                }
                for &k in &free1 {
                    rows[1][k] = ctx.from_code2(rest % q2);
                    rest /= q2;
                }
                out.push(ProjectiveLine { rows });
            }
        }
    }
    out
}

/// How a line meets the Hermitian surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineMeet {
    /// One common point.
    Tangent,
    /// `q + 1` common points.
    Secant,
    /// Contained in the surface (`q^2 + 1` points).
    Generator,
}

impl fmt::Display for LineMeet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineMeet::Tangent => "tangent",
            LineMeet::Secant => "secant",
            LineMeet::Generator => "generator",
        })
    }
}

/// The Hermitian surface in canonical form.
#[derive(Clone, Copy, Debug)]
pub struct HermitianSurface<'a> {
    ctx: &'a FieldContext,
}

impl<'a> HermitianSurface<'a> {
    pub fn new(ctx: &'a FieldContext) -> Self {
        HermitianSurface { ctx }
    }

    /// `h(u, v) = u_J v_Z^q + u_Z v_J^q + u_X v_X^q + u_Y v_Y^q`.
    pub fn sesquilinear(&self, u: &[Fq2; 4], v: &[Fq2; 4]) -> Fq2 {
        let c = self.ctx;
        c.mul2(u[0], c.frobenius(v[3]))
            + c.mul2(u[3], c.frobenius(v[0]))
            + c.mul2(u[1], c.frobenius(v[1]))
            + c.mul2(u[2], c.frobenius(v[2]))
    }

    /// `Z^q J + Z J^q + X^(q+1) + Y^(q+1)`, always in GF(q).
    pub fn form(&self, p: &ProjectivePoint) -> Fq {
        let v = self.sesquilinear(&p.coords, &p.coords);
        debug_assert!(v.in_subfield());
        v.x0
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.form(p).is_zero()
    }

    /// Polar plane of a point of the surface under the Hermitian polarity.
    pub fn tangent_plane(&self, p: &ProjectivePoint) -> Result<Plane, GeometryError> {
        if !self.contains(p) {
            return Err(GeometryError::NotOnSurface(p.format(self.ctx)));
        }
        let c = self.ctx;
        let [j, x, y, z] = p.coords;
        Plane::new(c, [c.frobenius(z), c.frobenius(x), c.frobenius(y), c.frobenius(j)])
    }

    pub fn meet_count(&self, line: &ProjectiveLine) -> usize {
        line.points(self.ctx).iter().filter(|p| self.contains(p)).count()
    }

    pub fn line_meet_type(&self, line: &ProjectiveLine) -> Result<LineMeet, GeometryError> {
        let q = self.ctx.q();
        match self.meet_count(line) {
            1 => Ok(LineMeet::Tangent),
            n if n == q + 1 => Ok(LineMeet::Secant),
            n if n == q * q + 1 => Ok(LineMeet::Generator),
            n => Err(GeometryError::UnexpectedLineMeet(n)),
        }
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        all_points(self.ctx).into_iter().filter(|p| self.contains(p)).collect()
    }

    /// `(q^2 + 1)(q^3 + 1)`.
    pub fn expected_size(&self) -> u64 {
        let q = self.ctx.q() as u64;
        (q * q + 1) * (q * q * q + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_infinity_and_its_tangent_plane() {
        let ctx = FieldContext::new(2).unwrap();
        let h = HermitianSurface::new(&ctx);
        let p = ProjectivePoint::p_infinity();
        assert!(h.contains(&p));
        assert_eq!(h.tangent_plane(&p).unwrap(), Plane::at_infinity());
    }

    #[test]
    fn affine_points_with_subfield_height() {
        let ctx = FieldContext::new(2).unwrap();
        let h = HermitianSurface::new(&ctx);
        for z in ctx.elements2() {
            let p = ProjectivePoint::affine(Fq2::ZERO, Fq2::ZERO, z);
            assert_eq!(h.contains(&p), z.in_subfield());
        }
        let origin = ProjectivePoint::affine(Fq2::ZERO, Fq2::ZERO, Fq2::ZERO);
        let t = h.tangent_plane(&origin).unwrap();
        assert_eq!(t.coords(), &[Fq2::ZERO, Fq2::ZERO, Fq2::ZERO, Fq2::ONE]);
        assert!(t.contains(&ctx, &origin));
    }

    #[test]
    fn tangent_plane_requires_surface_point() {
        let ctx = FieldContext::new(1).unwrap();
        let h = HermitianSurface::new(&ctx);
        let p = ProjectivePoint::affine(Fq2::ONE, Fq2::ZERO, Fq2::ZERO);
        assert!(matches!(h.tangent_plane(&p), Err(GeometryError::NotOnSurface(_))));
    }

    #[test]
    fn line_j_equals_x_equals_zero_is_tangent() {
        let ctx = FieldContext::new(1).unwrap();
        let h = HermitianSurface::new(&ctx);
        let a = ProjectivePoint::p_infinity();
        let b = ProjectivePoint::new(&ctx, [Fq2::ZERO, Fq2::ZERO, Fq2::ONE, Fq2::ZERO]).unwrap();
        let l = ProjectiveLine::through(&ctx, &a, &b).unwrap();
        assert_eq!(l.points(&ctx).len(), 5);
        // X^(q+1) + Y^(q+1) = 0 with X = 0 forces Y = 0: the line is not a generator
        assert_eq!(h.line_meet_type(&l).unwrap(), LineMeet::Tangent);
    }

    #[test]
    fn line_canonical_form_is_basis_independent() {
        let ctx = FieldContext::new(1).unwrap();
        let pts = all_points(&ctx);
        let l = ProjectiveLine::through(&ctx, &pts[3], &pts[40]).unwrap();
        let on: Vec<_> = l.points(&ctx);
        assert!(on.contains(&pts[3]) && on.contains(&pts[40]));
        for a in &on {
            for b in &on {
                if a != b {
                    assert_eq!(ProjectiveLine::through(&ctx, a, b).unwrap(), l);
                }
            }
            assert!(l.contains(&ctx, a));
        }
        assert_eq!(ProjectiveLine::through(&ctx, &pts[3], &pts[3]), Err(GeometryError::CoincidentPoints));
    }

    #[test]
    fn enumeration_sizes() {
        let ctx = FieldContext::new(1).unwrap();
        assert_eq!(all_points(&ctx).len(), 85);
        assert_eq!(all_lines(&ctx).len(), 17 * 21);
    }
}
