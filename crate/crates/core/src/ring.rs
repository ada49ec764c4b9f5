//! The extension ring `R_m = F_{p^m} + uF_{p^m}` with `u^2 = u`.
//!
//! Elements are pairs `a + ub`. The idempotents `u` and `1-u` split the ring:
//! evaluating at `u = 0` and `u = 1` gives the Chinese-remainder coordinates
//! `(a, a+b)`, under which addition and multiplication are componentwise. The
//! unit group is exactly the elements with both coordinates nonzero, of order
//! `(q-1)^2`.
//!
//! The base ring `R = F_p + uF_p` is the same type over an `m = 1` field; the
//! trace `Tr = sum of Frobenius iterates` lands there as
//! `Tr(a + ub) = tr(a) + u tr(b)`.

use crate::field::{ExtField, FFElem};
use crate::Error;

/// `a + ub` with both components in the same `F_{p^m}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RingElem {
    pub a: FFElem,
    pub b: FFElem,
}

impl RingElem {
    pub fn new(f: &ExtField, a: FFElem, b: FFElem) -> RingElem {
        f.check(a);
        f.check(b);
        RingElem { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

pub fn zero(f: &ExtField) -> RingElem {
    RingElem {
        a: f.zero(),
        b: f.zero(),
    }
}

pub fn one(f: &ExtField) -> RingElem {
    RingElem {
        a: f.one(),
        b: f.zero(),
    }
}

/// The idempotent `u`.
pub fn u_elem(f: &ExtField) -> RingElem {
    RingElem {
        a: f.zero(),
        b: f.one(),
    }
}

/// The involution unit `1 - 2u`, with CRT coordinates `(1, -1)`.
pub fn one_minus_2u(f: &ExtField) -> RingElem {
    RingElem {
        a: f.one(),
        b: f.neg(f.scalar(2)),
    }
}

pub fn add(f: &ExtField, x: RingElem, y: RingElem) -> RingElem {
    RingElem {
        a: f.add(x.a, y.a),
        b: f.add(x.b, y.b),
    }
}

pub fn sub(f: &ExtField, x: RingElem, y: RingElem) -> RingElem {
    RingElem {
        a: f.sub(x.a, y.a),
        b: f.sub(x.b, y.b),
    }
}

pub fn neg(f: &ExtField, x: RingElem) -> RingElem {
    RingElem {
        a: f.neg(x.a),
        b: f.neg(x.b),
    }
}

/// `(a+ub)(c+ud) = ac + u(ad + bc + bd)`, forced by `u^2 = u`.
pub fn mul(f: &ExtField, x: RingElem, y: RingElem) -> RingElem {
    let a = f.mul(x.a, y.a);
    let cross = f.add(f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)), f.mul(x.b, y.b));
    RingElem { a, b: cross }
}

/// Multiply by a prime-field scalar `c`.
pub fn scalar_mul(f: &ExtField, c: u64, x: RingElem) -> RingElem {
    let s = f.scalar(c);
    RingElem {
        a: f.mul(s, x.a),
        b: f.mul(s, x.b),
    }
}

/// CRT coordinates `(x at u=0, x at u=1) = (a, a+b)`.
pub fn crt_split(f: &ExtField, x: RingElem) -> (FFElem, FFElem) {
    (x.a, f.add(x.a, x.b))
}

/// Inverse of [`crt_split`]: the element with value `s` at `u = 0` and `t` at
/// `u = 1`, namely `s + u(t - s) = ut + (1-u)s`.
pub fn crt_join(f: &ExtField, s: FFElem, t: FFElem) -> RingElem {
    RingElem {
        a: s,
        b: f.sub(t, s),
    }
}

/// Units are exactly the elements with both CRT coordinates nonzero.
pub fn is_unit(f: &ExtField, x: RingElem) -> bool {
    let (c0, c1) = crt_split(f, x);
    !c0.is_zero() && !c1.is_zero()
}

pub fn inv(f: &ExtField, x: RingElem) -> Result<RingElem, Error> {
    let (c0, c1) = crt_split(f, x);
    if c0.is_zero() || c1.is_zero() {
        return Err(Error::NotAUnit);
    }
    Ok(crt_join(f, f.inv(c0)?, f.inv(c1)?))
}

/// The Frobenius operator `a + ub -> a^p + ub^p`.
pub fn frobenius(f: &ExtField, x: RingElem) -> RingElem {
    RingElem {
        a: f.pow(x.a, f.p()),
        b: f.pow(x.b, f.p()),
    }
}

/// Ring trace down to `R = F_p + uF_p`: `Tr(a + ub) = tr(a) + u tr(b)`.
///
/// `base` must be the `m = 1` field over the same prime; the result lives
/// there.
pub fn trace(f: &ExtField, base: &ExtField, x: RingElem) -> RingElem {
    assert_eq!(base.p(), f.p(), "base ring has a different characteristic");
    assert_eq!(base.m(), 1, "trace lands in the base ring");
    RingElem {
        a: base.from_index(f.trace(x.a)),
        b: base.from_index(f.trace(x.b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> ExtField {
        ExtField::new(3, 2, None).unwrap()
    }

    #[test]
    fn u_is_idempotent() {
        let f = f9();
        let u = u_elem(&f);
        assert_eq!(mul(&f, u, u), u);
    }

    #[test]
    fn involution_squares_to_one() {
        let f = f9();
        let j = one_minus_2u(&f);
        assert_eq!(mul(&f, j, j), one(&f));
        assert_eq!(crt_split(&f, j), (f.one(), f.neg(f.one())));
    }

    #[test]
    fn zero_annihilates() {
        let f = f9();
        for a in f.elements().take(5) {
            for b in f.elements().take(5) {
                let x = RingElem::new(&f, a, b);
                assert_eq!(mul(&f, x, zero(&f)), zero(&f));
            }
        }
    }

    #[test]
    fn crt_split_examples() {
        let f = f9();
        assert_eq!(crt_split(&f, u_elem(&f)), (f.zero(), f.one()));
        // joining (t', t) gives ut + (1-u)t'
        let t = f.generator();
        let tp = f.mul(t, t);
        let x = crt_join(&f, tp, t);
        // recompute directly: ut + (1-u)t' = t' + u(t - t')
        assert_eq!(x.a, tp);
        assert_eq!(x.b, f.sub(t, tp));
    }

    #[test]
    fn crt_round_trips_exhaustively() {
        let f = f9();
        for a in f.elements() {
            for b in f.elements() {
                let x = RingElem::new(&f, a, b);
                let (s, t) = crt_split(&f, x);
                assert_eq!(crt_join(&f, s, t), x);
            }
        }
        for s in f.elements() {
            for t in f.elements() {
                let x = crt_join(&f, s, t);
                assert_eq!(crt_split(&f, x), (s, t));
            }
        }
    }

    #[test]
    fn multiplication_is_componentwise_in_crt_coordinates() {
        let f = f9();
        for x_a in f.elements() {
            for x_b in f.elements().step_by(2) {
                let x = RingElem::new(&f, x_a, x_b);
                let y = RingElem::new(&f, f.add(x_b, f.one()), x_a);
                let (x0, x1) = crt_split(&f, x);
                let (y0, y1) = crt_split(&f, y);
                let prod = mul(&f, x, y);
                assert_eq!(crt_split(&f, prod), (f.mul(x0, y0), f.mul(x1, y1)));
                let sum = add(&f, x, y);
                assert_eq!(crt_split(&f, sum), (f.add(x0, y0), f.add(x1, y1)));
            }
        }
    }

    #[test]
    fn unit_detection_and_count() {
        let f3 = ExtField::new(3, 1, None).unwrap();
        assert!(!is_unit(&f3, u_elem(&f3)));
        assert!(is_unit(&f3, one_minus_2u(&f3)));
        let mut count = 0;
        for a in f3.elements() {
            for b in f3.elements() {
                if is_unit(&f3, RingElem::new(&f3, a, b)) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 4); // (3-1)^2
    }

    #[test]
    fn unit_group_order_is_q_minus_1_squared() {
        let f = f9();
        let count = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| is_unit(&f, RingElem::new(&f, a, b)))
            .count() as u64;
        assert_eq!(count, (f.q() - 1) * (f.q() - 1));
    }

    #[test]
    fn inverse_of_units() {
        let f = f9();
        for a in f.elements() {
            for b in f.elements() {
                let x = RingElem::new(&f, a, b);
                match inv(&f, x) {
                    Ok(y) => assert_eq!(mul(&f, x, y), one(&f)),
                    Err(_) => assert!(!is_unit(&f, x)),
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_u_and_respects_products() {
        let f = ExtField::new(3, 3, None).unwrap();
        assert_eq!(frobenius(&f, u_elem(&f)), u_elem(&f));
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let x = RingElem::new(
                &f,
                f.from_index(rng.gen_range(0..f.q())),
                f.from_index(rng.gen_range(0..f.q())),
            );
            let y = RingElem::new(
                &f,
                f.from_index(rng.gen_range(0..f.q())),
                f.from_index(rng.gen_range(0..f.q())),
            );
            // homomorphism
            assert_eq!(
                frobenius(&f, mul(&f, x, y)),
                mul(&f, frobenius(&f, x), frobenius(&f, y))
            );
            // order divides m
            let mut z = x;
            for _ in 0..f.m() {
                z = frobenius(&f, z);
            }
            assert_eq!(z, x);
        }
    }

    #[test]
    fn trace_examples() {
        let f = f9();
        let base = f.prime_subfield().unwrap();
        assert_eq!(trace(&f, &base, zero(&f)), zero(&base));
        // Tr(u) = u * (m mod p)
        let expected = RingElem::new(&base, base.zero(), base.scalar(f.m() as u64));
        assert_eq!(trace(&f, &base, u_elem(&f)), expected);
        // Tr(x + u), modulus x^2 + 1: tr(x) = 0, tr(1) = 2
        let x = f.from_coeffs(&[0, 1]);
        let z = RingElem::new(&f, x, f.one());
        let got = trace(&f, &base, z);
        assert_eq!(got, RingElem::new(&base, base.zero(), base.scalar(2)));
    }

    #[test]
    fn trace_agrees_with_frobenius_iterate_sum() {
        // closed form tr(a) + u tr(b) versus the defining sum of iterates
        for (p, m) in [(3, 1), (3, 2), (3, 4), (5, 2)] {
            let f = ExtField::new(p, m, None).unwrap();
            let base = f.prime_subfield().unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let x = RingElem::new(&f, a, b);
                    let mut acc = x;
                    let mut it = x;
                    for _ in 1..f.m() {
                        it = frobenius(&f, it);
                        acc = add(&f, acc, it);
                    }
                    let closed = trace(&f, &base, x);
                    // acc lies in R: both components are constants
                    assert_eq!(acc.a.index(), closed.a.index());
                    assert_eq!(acc.b.index(), closed.b.index());
                }
            }
        }
    }
}
