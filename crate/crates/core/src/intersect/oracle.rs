//! Direct count of `H ∩ Q` by evaluating both equations point by point.
//!
//! Independent of the reduction to PG(4, q): the norm and the relative trace
//! come from plain exponentiation, and the plane at infinity is scanned point
//! by point rather than factored.

use crate::field::{FieldContext, Fq2};

use super::QuadricSurfaceQ;

/// Power tables over GF(q^2), indexed by element code.
pub struct Oracle<'a> {
    ctx: &'a FieldContext,
    elems: Vec<Fq2>,
    square: Vec<Fq2>,
    // x^(q+1)
    norm: Vec<Fq2>,
    // z^q + z
    trace: Vec<Fq2>,
}

impl<'a> Oracle<'a> {
    pub fn new(ctx: &'a FieldContext) -> Self {
        let q = ctx.q() as u64;
        let elems: Vec<Fq2> = ctx.elements2().collect();
        let square = elems.iter().map(|&x| ctx.pow2(x, 2)).collect();
        let norm = elems.iter().map(|&x| ctx.pow2(x, q + 1)).collect();
        let trace = elems.iter().map(|&z| ctx.pow2(z, q) + z).collect();
        Oracle { ctx, elems, square, norm, trace }
    }

    pub fn intersection_size(&self, q: &QuadricSurfaceQ) -> u64 {
        self.affine_count(q) + self.infinity_count(q)
    }

    /// Affine points: `z := Q(x, y)`, test `z^q + z = x^(q+1) + y^(q+1)`.
    pub fn affine_count(&self, q: &QuadricSurfaceQ) -> u64 {
        let ctx = self.ctx;
        let n = self.elems.len();
        // y-only part of Q and of the Hermitian right-hand side
        let col: Vec<Fq2> =
            (0..n).map(|j| ctx.mul2(q.b, self.square[j]) + ctx.mul2(q.e, self.elems[j]) + q.f).collect();
        let mut count = 0;
        for i in 0..n {
            let x = self.elems[i];
            let row = ctx.mul2(q.a, self.square[i]) + ctx.mul2(q.d, x);
            let cx = ctx.mul2(q.c, x);
            for j in 0..n {
                let z = row + col[j] + ctx.mul2(cx, self.elems[j]);
                if self.trace[ctx.code2(z)] == self.norm[i] + self.norm[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Points `(0, X, Y, Z)` on both surfaces.
    pub fn infinity_count(&self, q: &QuadricSurfaceQ) -> u64 {
        let ctx = self.ctx;
        let n = self.elems.len();
        let on_both = |ix: usize, iy: usize| {
            let (x, y) = (self.elems[ix], self.elems[iy]);
            let fq = ctx.mul2(q.a, self.square[ix]) + ctx.mul2(q.b, self.square[iy]) + ctx.mul2(q.c, ctx.mul2(x, y));
            fq.is_zero() && (self.norm[ix] + self.norm[iy]).is_zero()
        };
        let one = ctx.code2(Fq2::ONE);
        let zero = ctx.code2(Fq2::ZERO);
        // neither equation involves Z at J = 0, so each (X, Y) accounts for q^2 points
        let mut count = 0;
        for iy in 0..n {
            count += n as u64 * on_both(one, iy) as u64;
        }
        count += n as u64 * on_both(zero, one) as u64;
        // (0, 0, 0, 1) lies on both
        count + 1
    }
}

pub fn oracle_intersection_size(ctx: &FieldContext, q: &QuadricSurfaceQ) -> u64 {
    Oracle::new(ctx).intersection_size(q)
}

/// Number of common points in the plane at infinity, by scanning it.
pub fn oracle_c_infinity(ctx: &FieldContext, q: &QuadricSurfaceQ) -> u64 {
    Oracle::new(ctx).infinity_count(q)
}
