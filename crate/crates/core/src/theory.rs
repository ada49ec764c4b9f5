//! Closed-form weight distributions, per-class weights, Griesmer and
//! sphere-packing bounds, the Ashikhmin-Barg minimality condition and
//! secret-sharing structure counts.
//!
//! Three regimes have closed forms. Writing `q = p^m` and `e = epsilon(p)`:
//!
//! * five-weight (`L`, `m = 2 mod 4`): nonzero Lee weights
//!   `(p-1)(p^{m-1} -+ p^{m/2-1})(q-1)` with frequency `(q-1)/2` each,
//!   `(p-1)(p^{2m-1} - 2p^{m-1} -+ p^{m/2-1})` with `(q-1)^2/2` each, and
//!   `(p-1)(p^{2m-1} - p^{m-1})` with `q-1`;
//! * two-weight (`L`, `m` odd, `p = 3 mod 4`): `(p-1)(p^{2m-1} - 2p^{m-1})`
//!   with frequency `(q-1)^2` and `(p-1)(p^{2m-1} - p^{m-1})` with `2(q-1)`;
//! * two-weight (`Lprime`, any odd `p`, any `m`): both weights doubled, same
//!   frequencies.
//!
//! Everything here is exact integer arithmetic (`u128`/`i128` internally);
//! floating point never enters a ceiling or a frequency.

use crate::charsums::epsilon;
use crate::codes::{ClassLabel, Variant, WeightDistribution};
use crate::linalg;
use crate::Error;

/// Parameter regime of a code family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegimeTag {
    FiveWeight,
    TwoWeightL,
    TwoWeightLprime,
    Unsupported,
}

impl std::fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RegimeTag::FiveWeight => "five_weight",
            RegimeTag::TwoWeightL => "two_weight_L",
            RegimeTag::TwoWeightLprime => "two_weight_Lprime",
            RegimeTag::Unsupported => "unsupported",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Regime {
    pub variant: Variant,
    pub p: u64,
    pub m: u32,
    pub tag: RegimeTag,
}

impl Regime {
    /// Classify `(variant, p, m)`. Variant `L` needs either `m = 2 mod 4`
    /// (five weights) or `m` odd with `p = 3 mod 4` (two weights); the other
    /// `L` cases have no closed form. Variant `Lprime` always has one.
    pub fn of(variant: Variant, p: u64, m: u32) -> Regime {
        let tag = match variant {
            Variant::Lprime => RegimeTag::TwoWeightLprime,
            Variant::L => {
                if m % 4 == 2 {
                    RegimeTag::FiveWeight
                } else if m % 2 == 1 && p % 4 == 3 {
                    RegimeTag::TwoWeightL
                } else {
                    RegimeTag::Unsupported
                }
            }
        };
        Regime { variant, p, m, tag }
    }

    pub fn q(&self) -> u128 {
        pw(self.p, self.m)
    }

    /// Gray-image length of the code in this regime.
    pub fn gray_length(&self) -> u128 {
        let n = (self.q() - 1) * (self.q() - 1);
        match self.variant {
            Variant::L => n,
            Variant::Lprime => 2 * n,
        }
    }
}

fn pw(p: u64, e: u32) -> u128 {
    (p as u128).pow(e)
}

fn err_unsupported(r: &Regime) -> Error {
    Error::UnsupportedRegime {
        variant: r.variant,
        p: r.p,
        m: r.m,
    }
}

/// The exact predicted Lee weight distribution, the zero word included.
pub fn predicted_distribution(regime: &Regime) -> Result<WeightDistribution, Error> {
    let p = regime.p as u128;
    let m = regime.m;
    let q = regime.q();
    let ord = q - 1;
    let mut dist = WeightDistribution::new();
    dist.add(0, 1);
    match regime.tag {
        RegimeTag::FiveWeight => {
            let lo = (p - 1) * (pw(regime.p, m - 1) - pw(regime.p, m / 2 - 1)) * ord;
            let hi = (p - 1) * (pw(regime.p, m - 1) + pw(regime.p, m / 2 - 1)) * ord;
            let mid_lo = (p - 1)
                * (pw(regime.p, 2 * m - 1) - 2 * pw(regime.p, m - 1) - pw(regime.p, m / 2 - 1));
            let mid_hi = (p - 1)
                * (pw(regime.p, 2 * m - 1) - 2 * pw(regime.p, m - 1) + pw(regime.p, m / 2 - 1));
            let flat = (p - 1) * (pw(regime.p, 2 * m - 1) - pw(regime.p, m - 1));
            dist.add(down(lo)?, down(ord / 2)?);
            dist.add(down(mid_lo)?, down(ord * ord / 2)?);
            dist.add(down(mid_hi)?, down(ord * ord / 2)?);
            dist.add(down(flat)?, down(ord)?);
            dist.add(down(hi)?, down(ord / 2)?);
        }
        RegimeTag::TwoWeightL | RegimeTag::TwoWeightLprime => {
            let scale: u128 = if regime.tag == RegimeTag::TwoWeightLprime {
                2
            } else {
                1
            };
            let w_unit = scale * (p - 1) * (pw(regime.p, 2 * m - 1) - 2 * pw(regime.p, m - 1));
            let w_rest = scale * (p - 1) * (pw(regime.p, 2 * m - 1) - pw(regime.p, m - 1));
            dist.add(down(w_unit)?, down(ord * ord)?);
            dist.add(down(w_rest)?, down(2 * ord)?);
        }
        RegimeTag::Unsupported => return Err(err_unsupported(regime)),
    }
    debug_assert_eq!(dist.total() as u128, q * q);
    Ok(dist)
}

fn down(v: u128) -> Result<u64, Error> {
    u64::try_from(v).map_err(|_| Error::FieldTooLarge {
        q: v,
        limit: u64::MAX,
    })
}

/// The per-case Lee weight formula for one class in one regime.
pub fn class_weight(label: ClassLabel, regime: &Regime) -> Result<u64, Error> {
    let p = regime.p as i128;
    let m = regime.m;
    let ip = |e: u32| pw(regime.p, e) as i128;
    let mismatch = || Error::LabelRegimeMismatch {
        label,
        regime: regime.tag,
    };
    let value: i128 = match regime.tag {
        RegimeTag::FiveWeight => {
            let e = epsilon(regime.p)? as i128;
            match label {
                ClassLabel::Zero => 0,
                ClassLabel::USquare => {
                    (p - 1)
                        * (ip(2 * m - 1) - ip(m - 1) - e * ip(3 * m / 2 - 1) + e * ip(m / 2 - 1))
                }
                ClassLabel::UNonsquare => {
                    (p - 1)
                        * (ip(2 * m - 1) - ip(m - 1) + e * ip(3 * m / 2 - 1) - e * ip(m / 2 - 1))
                }
                ClassLabel::ComplementIdeal => (p - 1) * (ip(2 * m - 1) - ip(m - 1)),
                ClassLabel::UnitSquare => {
                    (p - 1) * (ip(2 * m - 1) - 2 * ip(m - 1) + e * ip(m / 2 - 1))
                }
                ClassLabel::UnitNonsquare => {
                    (p - 1) * (ip(2 * m - 1) - 2 * ip(m - 1) - e * ip(m / 2 - 1))
                }
                _ => return Err(mismatch()),
            }
        }
        RegimeTag::TwoWeightL | RegimeTag::TwoWeightLprime => {
            let scale: i128 = if regime.tag == RegimeTag::TwoWeightLprime {
                2
            } else {
                1
            };
            match label {
                ClassLabel::Zero => 0,
                ClassLabel::UIdeal | ClassLabel::ComplementIdeal => {
                    scale * (p - 1) * (ip(2 * m - 1) - ip(m - 1))
                }
                ClassLabel::Unit => scale * (p - 1) * (ip(2 * m - 1) - 2 * ip(m - 1)),
                _ => return Err(mismatch()),
            }
        }
        RegimeTag::Unsupported => return Err(err_unsupported(regime)),
    };
    debug_assert!(value >= 0);
    down(value as u128)
}

/// Griesmer bound data for an `[N, K, d]_p` code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    /// `sum_{j<K} ceil(d / p^j)`.
    pub sum_d: u128,
    /// Same sum with `d + 1`.
    pub sum_d_plus_1: u128,
    /// `d` satisfies the bound and `d + 1` would violate it.
    pub optimal: bool,
}

fn griesmer_sum(d: u64, k: u32, p: u64) -> u128 {
    let d = d as u128;
    let mut sum = 0u128;
    let mut denom = 1u128;
    for _ in 0..k {
        sum += d.div_ceil(denom);
        denom *= p as u128;
    }
    sum
}

/// Exact integer Griesmer check.
pub fn griesmer(n: u64, k: u32, d: u64, p: u64) -> BoundReport {
    let sum_d = griesmer_sum(d, k, p);
    let sum_d_plus_1 = griesmer_sum(d + 1, k, p);
    BoundReport {
        n,
        k,
        d,
        sum_d,
        sum_d_plus_1,
        optimal: sum_d <= n as u128 && sum_d_plus_1 > n as u128,
    }
}

/// The closed form of `sum_{j<2m} ceil((d+1)/p^j)` at the regime's minimum
/// distance: `p^{2m} - 2p^m + m` for the first family, and
/// `2p^{2m} - 4p^m + m` (`p = 3`) or `2p^{2m} - 4p^m + m - 1` (`p >= 5`) for
/// the second. No closed form in the five-weight regime.
pub fn griesmer_sum_d_plus_1_closed(regime: &Regime) -> Option<u128> {
    let q = regime.q();
    let m = regime.m as u128;
    match regime.tag {
        RegimeTag::TwoWeightL => Some(q * q - 2 * q + m),
        RegimeTag::TwoWeightLprime => {
            if regime.p == 3 {
                Some(2 * q * q - 4 * q + m)
            } else {
                Some(2 * q * q - 4 * q + m - 1)
            }
        }
        _ => None,
    }
}

/// Whether the optimality verdict is guaranteed in this regime: the first
/// family for odd `m >= 3`, the second for `p = 3, m >= 3` or `p >= 5,
/// m >= 4`.
pub fn optimality_guaranteed(regime: &Regime) -> bool {
    match regime.tag {
        RegimeTag::TwoWeightL => regime.m >= 3,
        RegimeTag::TwoWeightLprime => {
            (regime.p == 3 && regime.m >= 3) || (regime.p >= 5 && regime.m >= 4)
        }
        _ => false,
    }
}

/// Sphere-packing refutation of dual distance 3: a `p`-ary dual of
/// codimension `K` with minimum distance at least 3 would need
/// `p^K >= 1 + N(p-1)`; returns true when that fails, so the dual distance
/// must be below 3.
pub fn sphere_packing_refutes_d3(n: u64, k: u32, p: u64) -> bool {
    pw(p, k) < 1 + (n as u128) * (p as u128 - 1)
}

/// Sufficient condition for every nonzero codeword to be minimal:
/// `w_min / w_max > (p-1)/p`, tested as `p * w_min > (p-1) * w_max` in
/// integers.
pub fn ab_minimality(w0: u64, w_inf: u64, p: u64) -> bool {
    (p as u128) * (w0 as u128) > (p as u128 - 1) * (w_inf as u128)
}

/// Structure counts for the secret sharing scheme dealt from a generator
/// matrix whose code has all nonzero codewords minimal and dual distance 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SssSummary {
    /// `N - 1` share holders.
    pub participants: u64,
    /// `p^{2m-1}` minimal access sets.
    pub minimal_access_sets: u128,
    /// Positions `i >= 1` whose column is a scalar multiple of column 0.
    pub dictatorial_positions: Vec<usize>,
    /// Number of minimal access sets containing each non-dictatorial
    /// participant: `(p-1) p^{2m-2}`.
    pub coverage: u128,
}

/// Count the access structure. Callers must have established the two
/// preconditions (all nonzero codewords minimal, dual distance 2).
pub fn secret_sharing_summary(
    p: u64,
    m: u32,
    matrix: &[Vec<u64>],
    all_minimal: bool,
    dual_distance_two: bool,
) -> Result<SssSummary, Error> {
    if !all_minimal {
        return Err(Error::PreconditionNotEstablished(
            "all nonzero codewords minimal",
        ));
    }
    if !dual_distance_two {
        return Err(Error::PreconditionNotEstablished("dual distance 2"));
    }
    let n = matrix.first().map_or(0, |r| r.len());
    if n == 0 {
        return Err(Error::ZeroColumn(0));
    }
    let col = |j: usize| -> Vec<u64> { matrix.iter().map(|row| row[j]).collect() };
    let g0 = col(0);
    if g0.iter().all(|&c| c == 0) {
        return Err(Error::ZeroColumn(0));
    }
    let mut dictatorial = Vec::new();
    for j in 1..n {
        let gj = col(j);
        let proportional =
            (1..p).any(|lambda| gj.iter().zip(&g0).all(|(&a, &b)| a == lambda * b % p));
        if proportional {
            dictatorial.push(j);
        }
    }
    Ok(SssSummary {
        participants: n as u64 - 1,
        minimal_access_sets: pw(p, 2 * m - 1),
        dictatorial_positions: dictatorial,
        coverage: (p as u128 - 1) * pw(p, 2 * m - 2),
    })
}

/// One dealt secret: `c = uG`, secret `c_0`, shares `c_1..`, and the value
/// recovered from the chosen positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MasseyDeal {
    pub secret: u64,
    pub shares: Vec<u64>,
    pub recovered: u64,
}

/// Deal from `secret_row` and recover the secret from `positions` by solving
/// `g_0 = sum x_j g_{i_j}` over `F_p`.
pub fn massey_demo(
    p: u64,
    matrix: &[Vec<u64>],
    secret_row: &[u64],
    positions: &[usize],
) -> Result<MasseyDeal, Error> {
    let k = matrix.len();
    let n = matrix.first().map_or(0, |r| r.len());
    assert_eq!(
        secret_row.len(),
        k,
        "secret row must have one entry per matrix row"
    );
    for j in 0..n {
        if matrix.iter().all(|row| row[j] == 0) {
            return Err(Error::ZeroColumn(j));
        }
    }
    let mut codeword = vec![0u64; n];
    for (ui, row) in secret_row.iter().zip(matrix) {
        for (slot, &e) in codeword.iter_mut().zip(row) {
            *slot = (*slot + ui * e) % p;
        }
    }
    let secret = codeword[0];
    let cols: Vec<Vec<u64>> = positions
        .iter()
        .map(|&j| {
            assert!(j >= 1 && j < n, "share positions index columns 1..N");
            matrix.iter().map(|row| row[j]).collect()
        })
        .collect();
    let target: Vec<u64> = matrix.iter().map(|row| row[0]).collect();
    let coeffs = linalg::solve_from_columns(&cols, &target, p).ok_or(Error::PositionsDoNotSpan)?;
    let recovered = positions
        .iter()
        .zip(&coeffs)
        .fold(0u64, |acc, (&j, &x)| (acc + x * codeword[j]) % p);
    Ok(MasseyDeal {
        secret,
        shares: codeword[1..].to_vec(),
        recovered,
    })
}
