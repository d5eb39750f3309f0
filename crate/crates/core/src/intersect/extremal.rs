//! Reguli of a hyperbolic quadric and the two extremal intersections:
//! `q^2 + 1` points (an ovoid of Q) and `2q^3 + q^2 + 1` points (permutable pair).

use std::collections::BTreeSet;

use crate::field::{FieldContext, Fq2};
use crate::hermitian::{all_points, HermitianSurface, LineMeet, Plane, ProjectiveLine, ProjectivePoint};

use super::{classify_q, family_heads, AtInfinity, Family, IntersectError, Oracle, QSpecies, QuadricSurfaceQ};

/// One ruling of a hyperbolic quadric: `q^2 + 1` pairwise disjoint lines.
pub type Regulus = Vec<ProjectiveLine>;

fn q_points(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Vec<ProjectivePoint> {
    all_points(ctx).into_iter().filter(|p| q.eval_projective(ctx, p.coords()).is_zero()).collect()
}

/// Polar plane of `p` with respect to Q.
fn q_tangent_plane(ctx: &FieldContext, q: &QuadricSurfaceQ, p: &ProjectivePoint) -> Result<Plane, IntersectError> {
    let [j, x, y, z] = *p.coords();
    let m = |a, b| ctx.mul2(a, b);
    let coords = [m(q.d, x) + m(q.e, y) + z, m(q.c, y) + m(q.d, j), m(q.c, x) + m(q.e, j), j];
    Ok(Plane::new(ctx, coords)?)
}

fn disjoint(ctx: &FieldContext, l: &ProjectiveLine, m: &ProjectiveLine) -> bool {
    !l.points(ctx).iter().any(|p| m.contains(ctx, p))
}

/// The two reguli, the one holding the least line first.
pub fn reguli(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Result<[Regulus; 2], IntersectError> {
    let species = classify_q(ctx, q);
    if species != QSpecies::Hyperbolic {
        return Err(IntersectError::NotHyperbolic(species));
    }
    let pts = q_points(ctx, q);
    let on_q: BTreeSet<ProjectivePoint> = pts.iter().copied().collect();
    let mut lines = BTreeSet::new();
    for p in &pts {
        let tangent = q_tangent_plane(ctx, q, p)?;
        let mut through_p: Vec<ProjectiveLine> = Vec::new();
        for r in pts.iter().filter(|r| *r != p && tangent.contains(ctx, r)) {
            if through_p.iter().any(|l| l.contains(ctx, r)) {
                continue;
            }
            let line = ProjectiveLine::through(ctx, p, r)?;
            if line.points(ctx).iter().all(|x| on_q.contains(x)) {
                through_p.push(line);
            }
            if through_p.len() == 2 {
                break;
            }
        }
        if through_p.len() != 2 {
            return Err(IntersectError::Regulus(format!("{} lines through {}", through_p.len(), p.format(ctx))));
        }
        lines.extend(through_p);
    }
    let mut lines = lines.into_iter();
    let seed = lines.next().ok_or_else(|| IntersectError::Regulus("no lines".into()))?;
    let (mut first, second): (Regulus, Regulus) = lines.partition(|l| disjoint(ctx, &seed, l));
    first.insert(0, seed);
    let size = ctx.q2() + 1;
    for reg in [&first, &second] {
        if reg.len() != size {
            return Err(IntersectError::Regulus(format!("regulus of {} lines", reg.len())));
        }
        let covered: BTreeSet<ProjectivePoint> = reg.iter().flat_map(|l| l.points(ctx)).collect();
        if covered.len() != pts.len() {
            return Err(IntersectError::Regulus("lines are not disjoint".into()));
        }
    }
    Ok([first, second])
}

/// Numbers of tangent, secant and generator lines of H in a regulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SecantDistribution {
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
}

pub fn regulus_secant_distribution(
    ctx: &FieldContext,
    regulus: &[ProjectiveLine],
) -> Result<SecantDistribution, IntersectError> {
    let herm = HermitianSurface::new(ctx);
    let mut d = SecantDistribution::default();
    for line in regulus {
        match herm.line_meet_type(line)? {
            LineMeet::Tangent => d.r1 += 1,
            LineMeet::Secant => d.r2 += 1,
            LineMeet::Generator => d.r3 += 1,
        }
    }
    Ok(d)
}

fn common_points(
    ctx: &FieldContext,
    q: &QuadricSurfaceQ,
    expected: u64,
) -> Result<Vec<ProjectivePoint>, IntersectError> {
    let species = classify_q(ctx, q);
    if species != QSpecies::Hyperbolic {
        return Err(IntersectError::NotHyperbolic(species));
    }
    let found = Oracle::new(ctx).intersection_size(q);
    if found != expected {
        return Err(IntersectError::Precondition { expected, found });
    }
    let herm = HermitianSurface::new(ctx);
    Ok(herm.points().into_iter().filter(|p| q.eval_projective(ctx, p.coords()).is_zero()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvoidCheck {
    /// Every line of both reguli meets `H ∩ Q` exactly once.
    pub one_per_line: bool,
    /// At every common point the tangent planes of H and Q coincide.
    pub tangent_planes_agree: bool,
    pub distributions: [SecantDistribution; 2],
}

impl OvoidCheck {
    pub fn holds(&self) -> bool {
        self.one_per_line && self.tangent_planes_agree
    }
}

pub fn check_ovoid(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Result<OvoidCheck, IntersectError> {
    let qq = ctx.q() as u64;
    let omega = common_points(ctx, q, qq * qq + 1)?;
    let regs = reguli(ctx, q)?;
    let one_per_line = regs.iter().flatten().all(|l| omega.iter().filter(|p| l.contains(ctx, p)).count() == 1);
    let herm = HermitianSurface::new(ctx);
    let mut tangent_planes_agree = true;
    for p in &omega {
        tangent_planes_agree &= herm.tangent_plane(p)? == q_tangent_plane(ctx, q, p)?;
    }
    let distributions = [regulus_secant_distribution(ctx, &regs[0])?, regulus_secant_distribution(ctx, &regs[1])?];
    Ok(OvoidCheck { one_per_line, tangent_planes_agree, distributions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutableCheck {
    pub distributions: [SecantDistribution; 2],
}

impl PermutableCheck {
    /// Some regulus has at least three lines on H.
    pub fn holds(&self) -> bool {
        self.distributions.iter().any(|d| d.r3 >= 3)
    }

    pub fn max_r3(&self) -> u64 {
        self.distributions.iter().map(|d| d.r3).max().unwrap_or(0)
    }
}

pub fn check_permutable(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Result<PermutableCheck, IntersectError> {
    let qq = ctx.q() as u64;
    common_points(ctx, q, 2 * qq * qq * qq + qq * qq + 1)?;
    let regs = reguli(ctx, q)?;
    Ok(PermutableCheck {
        distributions: [regulus_secant_distribution(ctx, &regs[0])?, regulus_secant_distribution(ctx, &regs[1])?],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtremalTarget {
    Ovoid,
    Permutable,
}

impl ExtremalTarget {
    pub fn size(self, q: u64) -> u64 {
        match self {
            ExtremalTarget::Ovoid => q * q + 1,
            ExtremalTarget::Permutable => 2 * q * q * q + q * q + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtremalTarget::Ovoid => "ovoid",
            ExtremalTarget::Permutable => "permutable",
        }
    }
}

/// A hyperbolic quadric of extremal size with its verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub quadric: QuadricSurfaceQ,
    pub size: u64,
    pub verified: bool,
    pub distributions: [SecantDistribution; 2],
    pub tangent_planes_agree: Option<bool>,
}

/// Up to `limit` verified witnesses; the normalized hyperbolic families are
/// searched first, then the full coefficient space.
pub fn find_extremal(ctx: &FieldContext, target: ExtremalTarget, limit: usize) -> Result<Vec<Witness>, IntersectError> {
    let size = target.size(ctx.q() as u64);
    let elems: Vec<Fq2> = ctx.elements2().collect();
    let mut heads: Vec<(Fq2, Fq2, Fq2)> = [Family::HypPoint, Family::HypLine, Family::HypTwoLines]
        .into_iter()
        .flat_map(|f| family_heads(ctx, f))
        .collect();
    let seen: BTreeSet<_> = heads.iter().copied().collect();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                if !seen.contains(&(a, b, c)) {
                    heads.push((a, b, c));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (a, b, c) in heads {
        let Ok(inf) = AtInfinity::new(ctx, a, b, c) else { continue };
        if inf.species != QSpecies::Hyperbolic {
            continue;
        }
        for &d in &elems {
            for &e in &elems {
                for &f in &elems {
                    if inf.complete(ctx, d, e, f)?.size_total != size {
                        continue;
                    }
                    let quadric = QuadricSurfaceQ { a, b, c, d, e, f };
                    let w = match target {
                        ExtremalTarget::Ovoid => {
                            let chk = check_ovoid(ctx, &quadric)?;
                            Witness {
                                quadric,
                                size,
                                verified: chk.holds(),
                                distributions: chk.distributions,
                                tangent_planes_agree: Some(chk.tangent_planes_agree),
                            }
                        }
                        ExtremalTarget::Permutable => {
                            let chk = check_permutable(ctx, &quadric)?;
                            Witness {
                                quadric,
                                size,
                                verified: chk.holds(),
                                distributions: chk.distributions,
                                tangent_planes_agree: None,
                            }
                        }
                    };
                    out.push(w);
                    if out.len() >= limit {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}
