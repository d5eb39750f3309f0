//! Intersection sizes of the Hermitian surface `z^q + z = x^(q+1) + y^(q+1)`
//! of PG(3, q^2), q even, with the quadrics `z = ax^2 + by^2 + cxy + dx + ey + f`
//! tangent to it at `(0, 0, 0, 1)`.
#![allow(clippy::needless_range_loop)]

pub mod field;
pub mod forms;
pub mod hermitian;
pub mod intersect;
pub mod sweep;
