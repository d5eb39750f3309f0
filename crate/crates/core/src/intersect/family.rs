//! Normalized quadric families, one per orbit type of `(species, C_inf)`.

use std::fmt;
use std::str::FromStr;

use crate::field::{FieldContext, Fq2};

use super::{classify_head, IntersectError, QSpecies, QuadricSurfaceQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `b = 0`, `N(a) != N(c)`: hyperbolic, `C_inf` a point.
    HypPoint,
    /// `b = 0`, `a = c != 0`: hyperbolic, `C_inf` a line.
    HypLine,
    /// `b = beta a`, `c = (beta + 1) a`, `N(beta) = 1 != beta`: hyperbolic, two lines.
    HypTwoLines,
    /// `b = c = 0`, `a != 0`.
    ConePoint,
    /// `a = b != 0`, `c = 0`.
    ConeLine,
    /// Every elliptic `(a, b, c)`.
    Elliptic,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::HypPoint, Family::HypLine, Family::HypTwoLines, Family::ConePoint, Family::ConeLine, Family::Elliptic];

    pub fn name(self) -> &'static str {
        match self {
            Family::HypPoint => "hyp-point",
            Family::HypLine => "hyp-line",
            Family::HypTwoLines => "hyp-twolines",
            Family::ConePoint => "cone-point",
            Family::ConeLine => "cone-line",
            Family::Elliptic => "elliptic",
        }
    }

    pub fn species(self) -> QSpecies {
        match self {
            Family::HypPoint | Family::HypLine | Family::HypTwoLines => QSpecies::Hyperbolic,
            Family::ConePoint | Family::ConeLine => QSpecies::Cone,
            Family::Elliptic => QSpecies::Elliptic,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = IntersectError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| IntersectError::UnknownFamily(s.to_string()))
    }
}

/// The `(a, b, c)` of a family, in code order.
pub fn family_heads(ctx: &FieldContext, family: Family) -> Vec<(Fq2, Fq2, Fq2)> {
    let elems: Vec<Fq2> = ctx.elements2().collect();
    let nonzero = || elems.iter().copied().filter(|x| !x.is_zero());
    let zero = Fq2::ZERO;
    match family {
        Family::HypPoint => {
            let mut out = Vec::new();
            for &a in &elems {
                for c in nonzero() {
                    if ctx.norm(a) != ctx.norm(c) {
                        out.push((a, zero, c));
                    }
                }
            }
            out
        }
        Family::HypLine => nonzero().map(|a| (a, zero, a)).collect(),
        Family::HypTwoLines => {
            let betas: Vec<Fq2> = ctx.norm_one().into_iter().filter(|&b| b != Fq2::ONE).collect();
            let mut out = Vec::new();
            for a in nonzero() {
                for &beta in &betas {
                    out.push((a, ctx.mul2(beta, a), ctx.mul2(beta + Fq2::ONE, a)));
                }
            }
            out
        }
        Family::ConePoint => nonzero().map(|a| (a, zero, zero)).collect(),
        Family::ConeLine => nonzero().map(|a| (a, a, zero)).collect(),
        Family::Elliptic => {
            let mut out = Vec::new();
            for &a in &elems {
                for &b in &elems {
                    for c in nonzero() {
                        if classify_head(ctx, a, b, c) == QSpecies::Elliptic {
                            out.push((a, b, c));
                        }
                    }
                }
            }
            out
        }
    }
}

/// Every quadric of the family, `d, e, f` ranging over GF(q^2).
pub fn normalized_family(ctx: &FieldContext, family: Family) -> impl Iterator<Item = QuadricSurfaceQ> + '_ {
    let elems: Vec<Fq2> = ctx.elements2().collect();
    family_heads(ctx, family).into_iter().flat_map(move |(a, b, c)| {
        let elems = elems.clone();
        let n = elems.len();
        (0..n * n * n).map(move |i| QuadricSurfaceQ {
            a,
            b,
            c,
            d: elems[i / (n * n)],
            e: elems[i / n % n],
            f: elems[i % n],
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::{c_infinity, classify_q, CInfinityKind};

    #[test]
    fn parse_names() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("hyp-plane".parse::<Family>().is_err());
    }

    #[test]
    fn twolines_betas_at_q2() {
        let k = FieldContext::new(1).unwrap();
        let heads = family_heads(&k, Family::HypTwoLines);
        assert_eq!(heads.len(), 3 * 2);
    }

    #[test]
    fn families_have_their_type() {
        for h in [1, 2] {
            let k = FieldContext::new(h).unwrap();
            for fam in Family::ALL {
                let kind = match fam {
                    Family::HypPoint | Family::ConePoint | Family::Elliptic => CInfinityKind::Point,
                    Family::HypLine | Family::ConeLine => CInfinityKind::OneLine,
                    Family::HypTwoLines => CInfinityKind::TwoLines,
                };
                let heads = family_heads(&k, fam);
                assert!(!heads.is_empty());
                for (a, b, c) in heads {
                    let q = QuadricSurfaceQ { a, b, c, d: Fq2::ZERO, e: Fq2::ZERO, f: Fq2::ZERO };
                    assert_eq!(classify_q(&k, &q), fam.species(), "{fam}");
                    assert_eq!(c_infinity(&k, &q).unwrap().kind, kind, "{fam}");
                }
            }
        }
    }

    #[test]
    fn family_iterator_sweeps_free_coefficients() {
        let k = FieldContext::new(1).unwrap();
        let all: Vec<_> = normalized_family(&k, Family::ConeLine).collect();
        assert_eq!(all.len(), 3 * 64);
        assert!(all.iter().all(|q| q.a == q.b && q.c.is_zero()));
    }
}
