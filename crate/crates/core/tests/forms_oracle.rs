use hql_core::field::{FieldContext, Fq};
use hql_core::forms::{
    alpha_pg3, classify, count_points_bruteforce, point_count, quadric_rank, QuadraticForm, Species,
};
use proptest::prelude::*;

fn arb_form(q: usize, n_vars: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..q as u8, n_vars * (n_vars + 1) / 2)
}

fn to_form(n_vars: usize, raw: &[u8]) -> QuadraticForm {
    let coeffs: Vec<Fq> = raw.iter().map(|&c| Fq(c)).collect();
    QuadraticForm::from_coeff_list(n_vars, &coeffs).unwrap()
}

/// Arf invariant from a symplectic basis, an independent route to the
/// hyperbolic/elliptic split of a nondegenerate quaternary form.
fn arf_trace(ctx: &FieldContext, f: &QuadraticForm) -> u8 {
    let n = f.n_vars();
    let polar = |x: &[Fq], y: &[Fq]| {
        let mut s: Vec<Fq> = x.iter().zip(y).map(|(a, b)| *a + *b).collect();
        let v = f.eval(ctx, &s) + f.eval(ctx, x) + f.eval(ctx, y);
        s.clear();
        v
    };
    let mut basis: Vec<Vec<Fq>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Fq::ONE } else { Fq::ZERO }).collect()).collect();
    let mut arf = Fq::ZERO;
    while !basis.is_empty() {
        let u = basis.remove(0);
        let Some(k) = basis.iter().position(|w| !polar(&u, w).is_zero()) else {
            continue;
        };
        let w = basis.remove(k);
        let inv = ctx.inv(polar(&u, &w)).unwrap();
        let v: Vec<Fq> = w.iter().map(|&x| ctx.mul(x, inv)).collect();
        arf += ctx.mul(f.eval(ctx, &u), f.eval(ctx, &v));
        for b in basis.iter_mut() {
            let bu = polar(b, &u);
            let bv = polar(b, &v);
            for i in 0..n {
                b[i] += ctx.mul(bv, u[i]) + ctx.mul(bu, v[i]);
            }
        }
    }
    ctx.absolute_trace(arf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn pg4_class_counts_match_enumeration(h in 1u32..=2, raw in arb_form(4, 5)) {
        let ctx = FieldContext::new(h).unwrap();
        let raw: Vec<u8> = raw.iter().map(|&c| c % ctx.q() as u8).collect();
        let f = to_form(5, &raw);
        prop_assume!(!f.is_zero());
        let cls = classify(&ctx, &f).unwrap();
        prop_assert_eq!(point_count(cls, 4, ctx.q() as u64).unwrap(), count_points_bruteforce(&ctx, &f));
        prop_assert_eq!(cls.rank, quadric_rank(&ctx, &f).unwrap());
    }

    #[test]
    fn pg3_class_counts_match_enumeration(h in 1u32..=3, raw in arb_form(8, 4)) {
        let ctx = FieldContext::new(h).unwrap();
        let raw: Vec<u8> = raw.iter().map(|&c| c % ctx.q() as u8).collect();
        let f = to_form(4, &raw);
        prop_assume!(!f.is_zero());
        let cls = classify(&ctx, &f).unwrap();
        prop_assert_eq!(point_count(cls, 3, ctx.q() as u64).unwrap(), count_points_bruteforce(&ctx, &f));
    }

    #[test]
    fn alpha_trace_agrees_with_arf(h in 1u32..=3, raw in arb_form(8, 4)) {
        let ctx = FieldContext::new(h).unwrap();
        let raw: Vec<u8> = raw.iter().map(|&c| c % ctx.q() as u8).collect();
        let f = to_form(4, &raw);
        let Ok(alpha) = alpha_pg3(&ctx, &f) else { return Ok(()); };
        prop_assert!(!alpha.det_a.is_zero());
        let hyperbolic = classify(&ctx, &f).unwrap().species == Species::Hyperbolic;
        prop_assert_eq!(ctx.absolute_trace(alpha.value) == 0, hyperbolic);
        prop_assert_eq!(ctx.absolute_trace(alpha.value), arf_trace(&ctx, &f));
    }

    #[test]
    fn conic_counts(h in 1u32..=3, raw in arb_form(8, 3)) {
        let ctx = FieldContext::new(h).unwrap();
        let raw: Vec<u8> = raw.iter().map(|&c| c % ctx.q() as u8).collect();
        let f = to_form(3, &raw);
        prop_assume!(!f.is_zero());
        let cls = classify(&ctx, &f).unwrap();
        prop_assert_eq!(point_count(cls, 2, ctx.q() as u64).unwrap(), count_points_bruteforce(&ctx, &f));
    }
}

#[test]
fn alpha_undefined_for_degenerate_polar_form() {
    let ctx = FieldContext::new(2).unwrap();
    let f = QuadraticForm::zero(4).with(0, 1, Fq::ONE).with(2, 2, Fq::ONE);
    assert!(alpha_pg3(&ctx, &f).is_err());
}
