//! Complex character sums: the canonical additive character, quadratic Gauss
//! sums in closed form, Gaussian periods, and the correlation identities that
//! convert character sums into Hamming weights.
//!
//! With `omega = exp(2*pi*i/p)` the canonical additive character of `F_q` is
//! `psi(x) = omega^tr(x)`. The quadratic Gauss sum `G = sum psi(x) eta(x)`
//! over the units (`eta` the quadratic character) evaluates to
//!
//! * `(-1)^(m-1) sqrt(q)` when `p = 1 (mod 4)`,
//! * `(-1)^(m-1) i^m sqrt(q)` when `p = 3 (mod 4)`,
//!
//! which for singly-even `m` collapses to `epsilon(p) sqrt(q)` with
//! `epsilon(p) = (-1)^((p+1)/2)`. The periods are `Qbar = (G-1)/2` over the
//! squares and `Nbar = (-G-1)/2` over the non-squares, so `Qbar + Nbar = -1`.
//!
//! Comparisons use the absolute tolerance `tau = 1e-6 * max(1, #summands)`;
//! double precision keeps sums of unit-magnitude terms far inside that.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::codes::TraceCode;
use crate::field::{ExtField, FFElem};
use crate::ring::{self, RingElem};
use crate::Error;

/// Absolute comparison tolerance for a sum of `n` unit-magnitude terms.
pub fn tolerance(n: usize) -> f64 {
    1e-6 * (n.max(1) as f64)
}

/// `omega^k` for `k = 0..p`, computed directly from the angle.
pub fn omega_powers(p: u64) -> Vec<Complex64> {
    (0..p)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / p as f64))
        .collect()
}

/// `sum over the subset of psi(x)`, `psi(x) = omega^tr(x)`.
pub fn additive_char_sum(f: &ExtField, subset: &[FFElem]) -> Complex64 {
    let omega = omega_powers(f.p());
    subset.iter().map(|&x| omega[f.trace(x) as usize]).sum()
}

/// `epsilon(p) = (-1)^((p+1)/2)`: `+1` for `p = 3 (mod 4)`, `-1` for
/// `p = 1 (mod 4)`.
pub fn epsilon(p: u64) -> Result<i64, Error> {
    if p % 2 == 0 {
        return Err(Error::NotOddPrime(p));
    }
    Ok(if p % 4 == 3 { 1 } else { -1 })
}

/// The quadratic Gauss sum of `F_{p^m}` in closed form.
pub fn gauss_quadratic_closed(p: u64, m: u32) -> Result<Complex64, Error> {
    if p % 2 == 0 || p < 3 {
        return Err(Error::NotOddPrime(p));
    }
    let q = (p as f64).powi(m as i32);
    let sqrt_q = q.sqrt();
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let g = if p % 4 == 1 {
        Complex64::new(sign * sqrt_q, 0.0)
    } else {
        let i_pow_m = match m % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        i_pow_m * sign * sqrt_q
    };
    Ok(g)
}

/// `sum psi(x) eta(x)` over the units, by direct summation.
pub fn gauss_quadratic_empirical(f: &ExtField) -> Complex64 {
    let omega = omega_powers(f.p());
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, x) in f.units().into_iter().enumerate() {
        let term = omega[f.trace(x) as usize];
        if i % 2 == 0 {
            sum += term; // even power of g: square
        } else {
            sum -= term;
        }
    }
    sum
}

/// Closed-form Gaussian periods `(Qbar, Nbar) = ((G-1)/2, (-G-1)/2)`.
pub fn gaussian_periods_closed(p: u64, m: u32) -> Result<(Complex64, Complex64), Error> {
    let g = gauss_quadratic_closed(p, m)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(((g - one) / 2.0, (-g - one) / 2.0))
}

/// Periods by direct summation over the squares and the non-squares.
pub fn gaussian_periods_empirical(f: &ExtField) -> (Complex64, Complex64) {
    (
        additive_char_sum(f, &f.squares()),
        additive_char_sum(f, &f.non_squares()),
    )
}

/// `Theta(y) = sum omega^(y_j)` over a vector of residues mod `p`.
pub fn theta_vec(y: &[u64], p: u64) -> Complex64 {
    let omega = omega_powers(p);
    y.iter().map(|&c| omega[(c % p) as usize]).sum()
}

/// `theta(a) = Theta(gray(ev(a)))`, computed from the Gray image itself.
pub fn theta_codeword(code: &TraceCode<'_>, a: RingElem) -> Complex64 {
    theta_vec(&code.gray_codeword(a), code.field.p())
}

/// The correlation identity `sum_{s=1}^{p-1} Theta(s y) = (p-1)N - p w_H(y)`.
///
/// Returns `(lhs, rhs)`; the caller compares against [`tolerance`].
pub fn correlation_identity(y: &[u64], p: u64) -> (Complex64, f64) {
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut scaled = vec![0u64; y.len()];
    for s in 1..p {
        for (slot, &c) in scaled.iter_mut().zip(y) {
            *slot = (s * c) % p;
        }
        lhs += theta_vec(&scaled, p);
    }
    let w = crate::gray::hamming_weight(y);
    let rhs = (p - 1) as f64 * y.len() as f64 - p as f64 * w as f64;
    (lhs, rhs)
}

/// The refined identity `sum_{s=1}^{p-1} theta(s a) = (p-1) Re(theta(a))`,
/// valid for codewords when `p = 3 (mod 4)`.
pub fn real_correlation_identity(
    code: &TraceCode<'_>,
    a: RingElem,
) -> Result<(Complex64, f64), Error> {
    let p = code.field.p();
    if p % 4 != 3 {
        return Err(Error::RequiresThreeModFour(p));
    }
    let mut lhs = Complex64::new(0.0, 0.0);
    for s in 1..p {
        lhs += theta_codeword(code, ring::scalar_mul(code.field, s, a));
    }
    let rhs = (p - 1) as f64 * theta_codeword(code, a).re;
    Ok((lhs, rhs))
}
