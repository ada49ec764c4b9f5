//! Arithmetic for the prime field `F_p` and its extension `F_{p^m}`.
//!
//! A field is described by an odd prime `p`, a degree `m >= 1` and a monic
//! irreducible modulus of degree `m`. Elements are dense coefficient vectors
//! in the polynomial basis, packed into a single base-`p` integer in
//! `[0, p^m)`; index 0 is the zero element and index 1 is the one element.
//!
//! Construction is deterministic: when no modulus is given, the
//! lexicographically smallest monic irreducible is chosen (compared on the
//! coefficient word, highest degree first), and the primitive element `g` is
//! the smallest element in the same order that generates the unit group.
//! Discrete-log, exponential and trace tables are precomputed once, so
//! multiplication, inversion, square tests and `tr` are table lookups.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::Error;

/// Largest field order for which lookup tables are built.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(0);

/// An element of `F_{p^m}`: the packed coefficient vector, tagged with the id
/// of the field it belongs to so that cross-field arithmetic is rejected.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    fid: u32,
    ix: u64,
}

impl FFElem {
    /// Packed base-`p` coefficient word in `[0, p^m)`.
    pub fn index(self) -> u64 {
        self.ix
    }

    pub fn is_zero(self) -> bool {
        self.ix == 0
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElem({})", self.ix)
    }
}

/// The extension field `F_{p^m}` with a fixed modulus and primitive element.
///
/// Immutable after construction; all operations take `&self` and are safe to
/// share across threads.
pub struct ExtField {
    id: u32,
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    g_ix: u64,
    /// `exp[i]` = packed index of `g^i`, for `i` in `0..q-1`.
    exp: Vec<u64>,
    /// Discrete log of each nonzero element; `u32::MAX` marks zero.
    log: Vec<u32>,
    /// Absolute trace of each element, a residue in `[0, p)`.
    tr: Vec<u32>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl ExtField {
    /// Build `F_{p^m}`. With `modulus = None` the lexicographically smallest
    /// monic irreducible of degree `m` is selected, so two runs always agree.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Self, Error> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q128 = (p as u128).pow(m);
        if q128 > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge {
                q: q128,
                limit: MAX_FIELD_ORDER,
            });
        }
        let q = q128 as u64;

        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1
                    || coeffs[m as usize] != 1
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(Error::BadModulus { expected: m });
                }
                if !poly_is_irreducible(coeffs, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                coeffs.to_vec()
            }
            None => smallest_irreducible(p, m, q),
        };

        let g_ix = smallest_primitive(p, m, q, &modulus);

        // exp table by repeated slow multiplication; the fast path is then a
        // pair of table lookups.
        let mut exp = vec![0u64; (q - 1) as usize];
        exp[0] = 1;
        for i in 1..(q - 1) as usize {
            exp[i] = mul_slow(p, m, &modulus, exp[i - 1], g_ix);
        }
        debug_assert_eq!(mul_slow(p, m, &modulus, exp[(q - 2) as usize], g_ix), 1);
        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            debug_assert_eq!(log[e as usize], u32::MAX, "exp table has a repeat");
            log[e as usize] = i as u32;
        }

        // tr(x^i) for the polynomial basis, then extend by linearity.
        let mut tr_basis = vec![0u64; m as usize];
        for (i, tb) in tr_basis.iter_mut().enumerate() {
            let z = (p as u128).pow(i as u32) as u64; // packed index of x^i
            let mut acc = z;
            let mut t = z;
            for _ in 1..m {
                t = pow_slow(p, m, &modulus, t, p);
                acc = add_ix(p, m, acc, t);
            }
            debug_assert!(acc < p, "trace of a basis element must lie in F_p");
            *tb = acc;
        }
        let mut tr = vec![0u32; q as usize];
        for (ix, t) in tr.iter_mut().enumerate() {
            let mut v = 0u64;
            let mut rest = ix as u64;
            for tb in &tr_basis {
                v = (v + (rest % p) * tb) % p;
                rest /= p;
            }
            *t = v as u32;
        }

        Ok(ExtField {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            p,
            m,
            q,
            modulus,
            g_ix,
            exp,
            log,
            tr,
        })
    }

    /// The prime field `F_p` built with the same deterministic conventions.
    pub fn prime_subfield(&self) -> Result<ExtField, Error> {
        ExtField::new(self.p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order `q = p^m`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> FFElem {
        self.wrap(self.g_ix)
    }

    pub fn zero(&self) -> FFElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FFElem {
        self.wrap(1)
    }

    /// Constant polynomial `c mod p`.
    pub fn scalar(&self, c: u64) -> FFElem {
        self.wrap(c % self.p)
    }

    pub fn from_index(&self, ix: u64) -> FFElem {
        assert!(
            ix < self.q,
            "index {} out of range for a field of order {}",
            ix,
            self.q
        );
        self.wrap(ix)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FFElem {
        assert!(coeffs.len() <= self.m as usize, "too many coefficients");
        let mut ix = 0u64;
        for &c in coeffs.iter().rev() {
            assert!(c < self.p, "coefficient {} not reduced mod {}", c, self.p);
            ix = ix * self.p + c;
        }
        self.wrap(ix)
    }

    /// Coefficients of `x` in the polynomial basis, constant term first.
    pub fn coeffs(&self, x: FFElem) -> Vec<u64> {
        self.check(x);
        let mut out = Vec::with_capacity(self.m as usize);
        let mut rest = x.ix;
        for _ in 0..self.m {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn add(&self, x: FFElem, y: FFElem) -> FFElem {
        self.check(x);
        self.check(y);
        self.wrap(add_ix(self.p, self.m, x.ix, y.ix))
    }

    pub fn neg(&self, x: FFElem) -> FFElem {
        self.check(x);
        self.wrap(neg_ix(self.p, self.m, x.ix))
    }

    pub fn sub(&self, x: FFElem, y: FFElem) -> FFElem {
        self.check(x);
        self.check(y);
        self.wrap(add_ix(self.p, self.m, x.ix, neg_ix(self.p, self.m, y.ix)))
    }

    pub fn mul(&self, x: FFElem, y: FFElem) -> FFElem {
        self.check(x);
        self.check(y);
        self.wrap(self.mul_ix(x.ix, y.ix))
    }

    pub fn inv(&self, x: FFElem) -> Result<FFElem, Error> {
        self.check(x);
        if x.ix == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[x.ix as usize] as u64;
        let ord = self.q - 1;
        Ok(self.wrap(self.exp[((ord - l) % ord) as usize]))
    }

    /// Exponentiation by square and multiply.
    pub fn pow(&self, x: FFElem, e: u64) -> FFElem {
        self.check(x);
        if x.ix == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut acc = self.one();
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace `tr(z) = z + z^p + ... + z^(p^(m-1))` as a residue mod p.
    pub fn trace(&self, x: FFElem) -> u64 {
        self.check(x);
        self.tr[x.ix as usize] as u64
    }

    /// Discrete log base `g`, `None` for zero.
    pub fn dlog(&self, x: FFElem) -> Option<u64> {
        self.check(x);
        if x.ix == 0 {
            None
        } else {
            Some(self.log[x.ix as usize] as u64)
        }
    }

    /// Euler criterion: `z` is a square iff its discrete log is even.
    pub fn is_square(&self, x: FFElem) -> Result<bool, Error> {
        self.check(x);
        if x.ix == 0 {
            return Err(Error::ZeroSquareClass);
        }
        Ok(self.log[x.ix as usize] % 2 == 0)
    }

    /// All units in primitive-power order `g^0, g^1, ..., g^(q-2)`.
    pub fn units(&self) -> Vec<FFElem> {
        self.exp.iter().map(|&ix| self.wrap(ix)).collect()
    }

    /// The nonzero squares in primitive-power order `g^0, g^2, ...`.
    pub fn squares(&self) -> Vec<FFElem> {
        self.exp
            .iter()
            .step_by(2)
            .map(|&ix| self.wrap(ix))
            .collect()
    }

    /// The non-squares in primitive-power order `g^1, g^3, ...`.
    pub fn non_squares(&self) -> Vec<FFElem> {
        self.exp
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&ix| self.wrap(ix))
            .collect()
    }

    /// Every field element, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.q).map(move |ix| self.wrap(ix))
    }

    pub(crate) fn wrap(&self, ix: u64) -> FFElem {
        FFElem { fid: self.id, ix }
    }

    pub(crate) fn check(&self, x: FFElem) {
        assert_eq!(x.fid, self.id, "element does not belong to this field");
    }

    /// Raw multiply on packed indices; the enumeration hot path.
    #[inline]
    pub(crate) fn mul_ix(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            return 0;
        }
        let l = self.log[x as usize] as u64 + self.log[y as usize] as u64;
        self.exp[(l % (self.q - 1)) as usize]
    }

    /// Raw trace lookup on packed indices.
    #[inline]
    pub(crate) fn tr_ix(&self, x: u64) -> u64 {
        self.tr[x as usize] as u64
    }
}

// ---------------------------------------------------------------------------
// Packed-index digit arithmetic.
// ---------------------------------------------------------------------------

fn add_ix(p: u64, m: u32, x: u64, y: u64) -> u64 {
    let mut out = 0u64;
    let mut scale = 1u64;
    let (mut x, mut y) = (x, y);
    for _ in 0..m {
        out += ((x % p + y % p) % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
    }
    out
}

fn neg_ix(p: u64, m: u32, x: u64) -> u64 {
    let mut out = 0u64;
    let mut scale = 1u64;
    let mut x = x;
    for _ in 0..m {
        out += ((p - x % p) % p) * scale;
        x /= p;
        scale *= p;
    }
    out
}

/// Schoolbook polynomial product reduced by the monic modulus.
fn mul_slow(p: u64, m: u32, modulus: &[u64], x: u64, y: u64) -> u64 {
    let m = m as usize;
    let mut xd = vec![0u64; m];
    let mut yd = vec![0u64; m];
    let (mut xr, mut yr) = (x, y);
    for i in 0..m {
        xd[i] = xr % p;
        yd[i] = yr % p;
        xr /= p;
        yr /= p;
    }
    let mut prod = vec![0u64; 2 * m - 1];
    for i in 0..m {
        if xd[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] = (prod[i + j] + xd[i] * yd[j]) % p;
        }
    }
    // reduce: x^(m+k) = -(modulus without leading term) * x^k
    for d in (m..2 * m - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &mc) in modulus.iter().take(m).enumerate() {
            let t = (c * mc) % p;
            prod[d - m + j] = (prod[d - m + j] + p - t) % p;
        }
    }
    let mut out = 0u64;
    for i in (0..m).rev() {
        out = out * p + prod[i];
    }
    out
}

fn pow_slow(p: u64, m: u32, modulus: &[u64], x: u64, e: u64) -> u64 {
    if x == 0 {
        return if e == 0 { 1 } else { 0 };
    }
    let mut acc = 1u64;
    let mut base = x;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(p, m, modulus, acc, base);
        }
        base = mul_slow(p, m, modulus, base, base);
        e >>= 1;
    }
    acc
}

fn smallest_irreducible(p: u64, m: u32, q: u64) -> Vec<u64> {
    for packed in 0..q {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut rest = packed;
        for _ in 0..m {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("monic irreducibles of every degree exist over F_p")
}

fn smallest_primitive(p: u64, m: u32, q: u64, modulus: &[u64]) -> u64 {
    let ord = q - 1;
    let factors = prime_factors(ord);
    'outer: for cand in 1..q {
        if pow_slow(p, m, modulus, cand, ord) != 1 {
            continue; // not invertible data; cannot happen for a field
        }
        for &r in &factors {
            if pow_slow(p, m, modulus, cand, ord / r) == 1 {
                continue 'outer;
            }
        }
        return cand;
    }
    unreachable!("the unit group of a finite field is cyclic")
}

// ---------------------------------------------------------------------------
// Polynomials over F_p as coefficient vectors, constant term first.
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while r.len() > df {
        let d = r.len() - 1;
        let c = (r[d] * lead_inv) % p;
        for j in 0..=df {
            let t = (c * f[j]) % p;
            r[d - df + j] = (r[d - df + j] + p - t) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_powmod(base: &[u64], e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin irreducibility test for a monic polynomial of degree `m >= 1`:
/// `x^(p^m) = x (mod f)` and, for every prime divisor `r` of `m`,
/// `gcd(x^(p^(m/r)) - x, f) = 1`.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    for r in prime_factors(m as u64) {
        let e = (p as u128).pow(m / r as u32) as u64;
        let xp = poly_powmod(&x, e, f, p);
        let mut h = poly_sub(&xp, &x, p);
        poly_trim(&mut h);
        let g = poly_gcd(&h, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    let e = (p as u128).pow(m) as u64;
    let xq = poly_powmod(&x, e, f, p);
    let mut diff = poly_sub(&xq, &x, p);
    poly_trim(&mut diff);
    diff.is_empty()
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        *o = (av + p - bv) % p;
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference product: schoolbook convolution followed by long division,
    /// written independently of the construction path.
    fn oracle_mul(f: &ExtField, x: FFElem, y: FFElem) -> FFElem {
        let p = f.p();
        let m = f.m() as usize;
        let (xc, yc) = (f.coeffs(x), f.coeffs(y));
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + xc[i] * yc[j]) % p;
            }
        }
        // long division by the modulus
        let md = f.modulus().to_vec();
        for d in (m..2 * m).rev() {
            let c = prod[d];
            prod[d] = 0;
            if c != 0 {
                for j in 0..m {
                    let t = (c * md[j]) % p;
                    prod[d - m + j] = (prod[d - m + j] + p - t) % p;
                }
            }
        }
        f.from_coeffs(&prod[..m])
    }

    #[test]
    fn f9_default_modulus_is_x2_plus_1() {
        let f = ExtField::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn f3_degree_one_modulus_is_x() {
        let f = ExtField::new(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.generator().index(), 2);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(
            ExtField::new(4, 2, None),
            Err(Error::NotOddPrime(4))
        ));
        assert!(matches!(
            ExtField::new(2, 3, None),
            Err(Error::NotOddPrime(2))
        ));
        assert!(matches!(
            ExtField::new(9, 1, None),
            Err(Error::NotOddPrime(9))
        ));
        assert!(matches!(
            ExtField::new(1, 1, None),
            Err(Error::NotOddPrime(1))
        ));
        assert!(matches!(ExtField::new(3, 0, None), Err(Error::ZeroDegree)));
    }

    #[test]
    fn rejects_bad_modulus() {
        // (x+1)^2 = x^2 + 2x + 1 over F_3
        assert!(matches!(
            ExtField::new(3, 2, Some(&[1, 2, 1])),
            Err(Error::ReducibleModulus(3))
        ));
        // wrong degree
        assert!(matches!(
            ExtField::new(3, 2, Some(&[1, 1])),
            Err(Error::BadModulus { .. })
        ));
        // not monic
        assert!(matches!(
            ExtField::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::BadModulus { .. })
        ));
    }

    #[test]
    fn exhaustive_irreducible_scan_agrees_for_f3_quadratics() {
        // Oracle: a monic quadratic over F_3 is irreducible iff it has no root.
        // Scan in packed order (c1 most significant) and compare the first hit.
        let mut best: Option<Vec<u64>> = None;
        let mut count = 0;
        for packed in 0..9u64 {
            let (c0, c1) = (packed % 3, packed / 3);
            let has_root = (0..3u64).any(|z| (z * z + c1 * z + c0) % 3 == 0);
            if !has_root {
                count += 1;
                if best.is_none() {
                    best = Some(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(count, 3); // (9 - 3) / 2 monic irreducible quadratics
        let f = ExtField::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), best.unwrap().as_slice());
    }

    #[test]
    fn f9_mul_examples() {
        let f = ExtField::new(3, 2, None).unwrap();
        let x = f.from_coeffs(&[0, 1]);
        // x * x = -1 = 2 since the modulus is x^2 + 1
        assert_eq!(f.mul(x, x), f.scalar(2));
        // inv(x) = 2x
        assert_eq!(f.inv(x).unwrap(), f.from_coeffs(&[0, 2]));
        // identity law on every element
        for y in f.elements() {
            assert_eq!(f.mul(f.one(), y), y);
        }
    }

    #[test]
    fn table_mul_matches_long_division_oracle() {
        for (p, m) in [(3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = ExtField::new(p, m, None).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), oracle_mul(&f, x, y));
                }
            }
        }
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        let f = ExtField::new(3, 2, None).unwrap();
        for x in f.elements().skip(1) {
            let inv = f.inv(x).unwrap();
            let found: Vec<_> = f.elements().filter(|&y| f.mul(x, y) == f.one()).collect();
            assert_eq!(found, vec![inv]);
        }
        assert!(matches!(f.inv(f.zero()), Err(Error::ZeroInverse)));
    }

    #[test]
    #[should_panic(expected = "does not belong")]
    fn mixed_field_operands_panic() {
        let f = ExtField::new(3, 2, None).unwrap();
        let g = ExtField::new(3, 2, None).unwrap();
        let _ = f.add(f.one(), g.one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = ExtField::new(5, 2, None).unwrap();
        for x in f.elements() {
            let mut acc = f.one();
            for e in 0..12u64 {
                assert_eq!(f.pow(x, e), acc);
                acc = f.mul(acc, x);
            }
        }
        assert_eq!(f.pow(f.zero(), 0), f.one());
        assert_eq!(f.pow(f.zero(), 7), f.zero());
    }

    #[test]
    fn trace_examples_and_direct_power_oracle() {
        let f = ExtField::new(3, 2, None).unwrap();
        assert_eq!(f.trace(f.zero()), 0);
        assert_eq!(f.trace(f.one()), 2); // m mod p = 2
        let x = f.from_coeffs(&[0, 1]);
        assert_eq!(f.trace(x), 0); // x + x^3 = x - x
        for z in f.elements() {
            let direct = f.add(z, f.pow(z, 3));
            assert_eq!(f.scalar(f.trace(z)), direct);
        }
        let f27 = ExtField::new(3, 3, None).unwrap();
        assert_eq!(f27.trace(f27.one()), 0); // 3 mod 3
        for z in f27.elements() {
            let direct = f27.add(f27.add(z, f27.pow(z, 3)), f27.pow(z, 9));
            assert_eq!(f27.scalar(f27.trace(z)), direct);
        }
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        let f = ExtField::new(3, 3, None).unwrap();
        for z in f.elements() {
            for w in f.elements().take(9) {
                let lhs = f.trace(f.add(z, w));
                assert_eq!(lhs, (f.trace(z) + f.trace(w)) % 3);
            }
            for c in 0..3 {
                assert_eq!(f.trace(f.mul(f.scalar(c), z)), c * f.trace(z) % 3);
            }
        }
        let image: std::collections::BTreeSet<u64> = f.elements().map(|z| f.trace(z)).collect();
        assert_eq!(image.len(), 3);
    }

    #[test]
    fn euler_criterion_agrees_with_squaring_oracle() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (7, 1), (5, 2)] {
            let f = ExtField::new(p, m, None).unwrap();
            let squares: std::collections::BTreeSet<FFElem> =
                f.units().into_iter().map(|x| f.mul(x, x)).collect();
            for x in f.units() {
                assert_eq!(f.is_square(x).unwrap(), squares.contains(&x));
            }
        }
    }

    #[test]
    fn generator_has_full_multiplicative_order() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 1), (13, 1)] {
            let f = ExtField::new(p, m, None).unwrap();
            let g = f.generator();
            let ord = f.q() - 1;
            assert_eq!(f.pow(g, ord), f.one());
            for r in prime_factors(ord) {
                assert_ne!(f.pow(g, ord / r), f.one(), "p={p} m={m} r={r}");
            }
        }
    }

    #[test]
    fn euler_criterion_powering_agrees_with_dlog_parity() {
        for (p, m) in [(3, 2), (3, 3), (7, 1), (5, 2)] {
            let f = ExtField::new(p, m, None).unwrap();
            let half = (f.q() - 1) / 2;
            for x in f.units() {
                let by_power = f.pow(x, half) == f.one();
                assert_eq!(f.is_square(x).unwrap(), by_power);
            }
        }
    }

    #[test]
    fn f7_squares_are_1_2_4() {
        let f = ExtField::new(7, 1, None).unwrap();
        let q: Vec<u64> = f
            .units()
            .into_iter()
            .filter(|&x| f.is_square(x).unwrap())
            .map(|x| x.index())
            .collect();
        let mut q = q;
        q.sort();
        assert_eq!(q, vec![1, 2, 4]);
        assert!(!f.is_square(f.scalar(3)).unwrap());
    }

    #[test]
    fn square_test_edge_cases() {
        let f = ExtField::new(3, 2, None).unwrap();
        assert!(f.is_square(f.one()).unwrap());
        assert!(!f.is_square(f.generator()).unwrap());
        assert!(matches!(f.is_square(f.zero()), Err(Error::ZeroSquareClass)));
    }

    #[test]
    fn unit_enumeration_order_and_square_positions() {
        let f3 = ExtField::new(3, 1, None).unwrap();
        let units: Vec<u64> = f3.units().iter().map(|x| x.index()).collect();
        assert_eq!(units, vec![1, 2]);

        let f9 = ExtField::new(3, 2, None).unwrap();
        let units = f9.units();
        assert_eq!(units.len(), 8);
        for (i, &x) in units.iter().enumerate() {
            assert_eq!(f9.is_square(x).unwrap(), i % 2 == 0);
        }
        assert_eq!(f9.squares().len(), 4);
        assert_eq!(f9.non_squares().len(), 4);
    }

    #[test]
    fn square_classes_multiply_as_expected() {
        let f = ExtField::new(3, 3, None).unwrap();
        let q = f.squares();
        let n = f.non_squares();
        assert_eq!(q.len(), n.len());
        for &a in &q {
            for &b in &q {
                assert!(f.is_square(f.mul(a, b)).unwrap());
            }
        }
        for &a in &n {
            for &b in &n {
                assert!(f.is_square(f.mul(a, b)).unwrap());
            }
        }
    }

    #[test]
    fn trace_bilinear_form_is_nondegenerate() {
        // every nonzero z has a partner w with tr(zw) != 0
        for (p, m) in [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (7, 2)] {
            let f = ExtField::new(p, m, None).unwrap();
            for z in f.elements().skip(1) {
                assert!(
                    f.elements().any(|w| f.trace(f.mul(z, w)) != 0),
                    "degenerate at p={p}, m={m}"
                );
            }
        }
    }

    #[test]
    fn field_order_cap_is_enforced() {
        assert!(matches!(
            ExtField::new(3, 13, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }
}
