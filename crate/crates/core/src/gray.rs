//! The Gray isometry from `(R^n, Lee distance)` to `(F_p^{2n}, Hamming
//! distance)`, for the base ring `R = F_p + uF_p`.
//!
//! On one coordinate the map is `phi(a + ub) = (-b, 2a + b)`; since `p` is odd
//! `2` is invertible, so `phi` is a bijection from `R` onto `F_p^2`. On
//! vectors the image uses block order: the first components of every
//! coordinate, then the second components. Weight computations do not depend
//! on the order; it only pins down exported generator matrices.
//!
//! The Lee weight of `x` is the Hamming weight of `phi(x)`, so Lee weight 1 is
//! taken exactly by the scalars `c` and the products `c(1 - 2u)`, `c` in
//! `F_p^*`.

use crate::field::ExtField;
use crate::ring::{self, RingElem};
use crate::Error;

fn require_base(base: &ExtField) -> Result<(), Error> {
    if base.m() != 1 {
        return Err(Error::BaseRingRequired(base.m()));
    }
    Ok(())
}

/// `phi(a + ub) = (-b mod p, 2a + b mod p)`.
pub fn gray_map(base: &ExtField, x: RingElem) -> Result<(u64, u64), Error> {
    require_base(base)?;
    base.check(x.a);
    base.check(x.b);
    let p = base.p();
    let (a, b) = (x.a.index(), x.b.index());
    Ok(((p - b) % p, (2 * a + b) % p))
}

/// Componentwise Gray image in block order; output length is twice the input.
pub fn gray_vec(base: &ExtField, v: &[RingElem]) -> Result<Vec<u64>, Error> {
    require_base(base)?;
    let mut out = Vec::with_capacity(2 * v.len());
    for &x in v {
        out.push(gray_map(base, x)?.0);
    }
    for &x in v {
        out.push(gray_map(base, x)?.1);
    }
    Ok(out)
}

/// Lee weight of one ring element: the Hamming weight of its Gray image.
pub fn lee_weight(base: &ExtField, x: RingElem) -> Result<u64, Error> {
    let (first, second) = gray_map(base, x)?;
    Ok((first != 0) as u64 + (second != 0) as u64)
}

/// Lee weight of a vector over `R`.
pub fn lee_weight_vec(base: &ExtField, v: &[RingElem]) -> Result<u64, Error> {
    v.iter().map(|&x| lee_weight(base, x)).sum()
}

/// `d_L(x, y) = w_L(x - y)`.
pub fn lee_distance(base: &ExtField, x: RingElem, y: RingElem) -> Result<u64, Error> {
    lee_weight(base, ring::sub(base, x, y))
}

/// Lee distance between two vectors over `R`.
pub fn lee_distance_vec(base: &ExtField, x: &[RingElem], y: &[RingElem]) -> Result<u64, Error> {
    assert_eq!(x.len(), y.len(), "vectors must have equal length");
    x.iter()
        .zip(y)
        .map(|(&a, &b)| lee_distance(base, a, b))
        .sum()
}

/// Number of nonzero entries.
pub fn hamming_weight(v: &[u64]) -> u64 {
    v.iter().filter(|&&c| c != 0).count() as u64
}

/// The `2(p-1)` elements of `R` with Lee weight exactly 1, in a fixed order:
/// the scalars `1..p-1`, then `c(1-2u)` for the same scalars.
pub fn lee_weight_one_elements(base: &ExtField) -> Result<Vec<RingElem>, Error> {
    require_base(base)?;
    let p = base.p();
    let mut out = Vec::with_capacity(2 * (p - 1) as usize);
    for c in 1..p {
        out.push(RingElem::new(base, base.scalar(c), base.zero()));
    }
    for c in 1..p {
        out.push(ring::scalar_mul(base, c, ring::one_minus_2u(base)));
    }
    Ok(out)
}
