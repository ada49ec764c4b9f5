//! Defining sets, evaluation codes and empirical weight distributions.
//!
//! A defining set is an ordered list of units of `R_m`:
//!
//! * variant `L`: `{ut + (1-u)t' : t in Q, t' in F*}`, a subgroup of index 2
//!   of the units, of size `(q-1)^2 / 2`;
//! * variant `Lprime`: the full unit group, of size `(q-1)^2`.
//!
//! The canonical order is a double loop, `t` outer over `Q` (or `F*`) in
//! primitive-power order, `t'` inner over `F*` in primitive-power order. The
//! code is `{ev(a) : a in R_m}` with `ev(a) = (Tr(ax))_x`; its Gray image is a
//! `p`-ary linear code of length `N = 2n` and dimension `2m`.
//!
//! Enumeration accumulates Lee weights without materializing codewords, and
//! partitions the `a`-space across workers; partial weight counts merge by
//! exact integer addition, so results do not depend on the worker count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::field::ExtField;
use crate::gray;
use crate::ring::{self, RingElem};
use crate::theory::{Regime, RegimeTag};
use crate::Error;

/// Which defining set the code is evaluated over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    L,
    Lprime,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::L => "L",
            Variant::Lprime => "Lprime",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Variant::L),
            "Lprime" => Ok(Variant::Lprime),
            other => Err(format!("unknown variant '{other}', expected L or Lprime")),
        }
    }
}

/// How a weight distribution is gathered.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Enumerate every `a` in `R_m`.
    Full,
    /// Weigh a few representatives per constant-weight class and scale by the
    /// class sizes; only valid in regimes with a closed-form case analysis.
    ByClass,
}

/// Decomposition of `R_m` by the shape of `a`, mirroring the per-case weight
/// formulas. The square/non-square split of the `u`-coordinate applies only
/// in the five-weight regime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassLabel {
    /// `a = 0`.
    Zero,
    /// `a = ut`, `t` a nonzero square.
    USquare,
    /// `a = ut`, `t` a non-square.
    UNonsquare,
    /// `a = ut`, `t` any unit (regimes without the quadratic split).
    UIdeal,
    /// `a = (1-u)t`, `t` any unit.
    ComplementIdeal,
    /// `a` a unit whose `u`-coordinate is a square.
    UnitSquare,
    /// `a` a unit whose `u`-coordinate is a non-square.
    UnitNonsquare,
    /// `a` any unit (regimes without the quadratic split).
    Unit,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::Zero => "zero",
            ClassLabel::USquare => "u_square",
            ClassLabel::UNonsquare => "u_nonsquare",
            ClassLabel::UIdeal => "u_ideal",
            ClassLabel::ComplementIdeal => "complement_ideal",
            ClassLabel::UnitSquare => "unit_square",
            ClassLabel::UnitNonsquare => "unit_nonsquare",
            ClassLabel::Unit => "unit",
        };
        f.write_str(s)
    }
}

/// Multiset `weight -> frequency`; for a whole code the total is `p^{2m}`,
/// with the zero word contributing frequency 1 at weight 0.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightDistribution {
    pairs: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        *self.pairs.entry(weight).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &WeightDistribution) {
        for (&w, &c) in &other.pairs {
            self.add(w, c);
        }
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.pairs.get(&weight).copied().unwrap_or(0)
    }

    /// Sum of all frequencies, the zero word included.
    pub fn total(&self) -> u64 {
        self.pairs.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.pairs.keys().copied().find(|&w| w != 0)
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.pairs.keys().next_back().copied()
    }

    /// Distinct nonzero weights.
    pub fn nonzero_weight_count(&self) -> usize {
        self.pairs.keys().filter(|&&w| w != 0).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.pairs.iter().map(|(&w, &c)| (w, c))
    }

    pub fn to_pairs(&self) -> Vec<(u64, u64)> {
        self.iter().collect()
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        let mut d = Self::new();
        for &(w, c) in pairs {
            d.add(w, c);
        }
        d
    }
}

/// Ordered defining set with cached CRT coordinates and a position index.
pub struct DefiningSet {
    variant: Variant,
    elements: Vec<RingElem>,
    /// `t` values (CRT coordinate at `u = 1`), outer loop.
    outer: Vec<u64>,
    /// `t'` values (CRT coordinate at `u = 0`), inner loop: all units.
    inner: Vec<u64>,
    /// CRT pair `(at u=0, at u=1)` -> position.
    index_of: HashMap<(u64, u64), u32>,
}

impl DefiningSet {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RingElem] {
        &self.elements
    }

    /// Position of an element, by its CRT coordinates.
    pub fn position_of(&self, f: &ExtField, x: RingElem) -> Option<usize> {
        let (c0, c1) = ring::crt_split(f, x);
        self.index_of
            .get(&(c0.index(), c1.index()))
            .map(|&i| i as usize)
    }
}

/// Enumerate the defining set in canonical order.
pub fn build_defining_set(f: &ExtField, variant: Variant) -> DefiningSet {
    let units: Vec<u64> = f.units().iter().map(|x| x.index()).collect();
    let outer: Vec<u64> = match variant {
        Variant::L => f.squares().iter().map(|x| x.index()).collect(),
        Variant::Lprime => units.clone(),
    };
    let mut elements = Vec::with_capacity(outer.len() * units.len());
    let mut index_of = HashMap::with_capacity(outer.len() * units.len());
    for &t in &outer {
        for &tp in &units {
            let x = ring::crt_join(f, f.from_index(tp), f.from_index(t));
            index_of.insert((tp, t), elements.len() as u32);
            elements.push(x);
        }
    }
    DefiningSet {
        variant,
        elements,
        outer,
        inner: units,
        index_of,
    }
}

/// Options for code enumeration.
#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub workers: usize,
    /// Cap on `p^{2m} * n` coordinate evaluations in full mode.
    pub budget: u64,
    /// Seed for class-representative sampling.
    pub seed: u64,
    /// Representatives weighed per class in by-class mode.
    pub class_reps: usize,
}

pub const DEFAULT_BUDGET: u64 = 5_000_000_000;
pub const DEFAULT_SEED: u64 = 1729;
pub const DEFAULT_CLASS_REPS: usize = 20;

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            class_reps: DEFAULT_CLASS_REPS,
        }
    }
}

/// A trace code over a fixed field and defining set, together with the base
/// ring its coordinates live in.
pub struct TraceCode<'f> {
    pub field: &'f ExtField,
    pub base: ExtField,
    pub set: DefiningSet,
}

impl<'f> TraceCode<'f> {
    pub fn new(field: &'f ExtField, variant: Variant) -> Result<Self, Error> {
        let base = field.prime_subfield()?;
        let set = build_defining_set(field, variant);
        Ok(TraceCode { field, base, set })
    }

    pub fn variant(&self) -> Variant {
        self.set.variant()
    }

    /// Length over `R`.
    pub fn n(&self) -> usize {
        self.set.n()
    }

    /// Gray-image length `N = 2n`.
    pub fn gray_length(&self) -> usize {
        2 * self.set.n()
    }

    /// Dimension of the Gray image over `F_p`.
    pub fn dimension(&self) -> u32 {
        2 * self.field.m()
    }

    /// Number of codewords `p^{2m}`, one per element of `R_m`.
    pub fn codeword_count(&self) -> u128 {
        let q = self.field.q() as u128;
        q * q
    }

    /// The element `a` with CRT coordinates `(c0, c1)`.
    pub fn element_from_crt(&self, c0: u64, c1: u64) -> RingElem {
        ring::crt_join(
            self.field,
            self.field.from_index(c0),
            self.field.from_index(c1),
        )
    }

    /// `ev(a) = (Tr(ax))_x` over the defining set, coordinates in the base
    /// ring.
    pub fn evaluate(&self, a: RingElem) -> Vec<RingElem> {
        let f = self.field;
        f.check(a.a);
        f.check(a.b);
        let p = f.p();
        let (c0, c1) = ring::crt_split(f, a);
        let (b_ix, a_ix) = (c0.index(), c1.index());
        let mut out = Vec::with_capacity(self.set.n());
        for &t in &self.set.outer {
            let s1 = f.tr_ix(f.mul_ix(a_ix, t));
            for &tp in &self.set.inner {
                let s0 = f.tr_ix(f.mul_ix(b_ix, tp));
                // Tr(ax) = s0 + u(s1 - s0)
                out.push(RingElem::new(
                    &self.base,
                    self.base.from_index(s0),
                    self.base.from_index((s1 + p - s0) % p),
                ));
            }
        }
        out
    }

    /// Gray image of `ev(a)`, in block order.
    pub fn gray_codeword(&self, a: RingElem) -> Vec<u64> {
        gray::gray_vec(&self.base, &self.evaluate(a)).expect("coordinates live in the base ring")
    }

    /// Lee weight of `ev(a)`, accumulated coordinate by coordinate without
    /// materializing the vector.
    pub fn lee_weight_of(&self, a: RingElem) -> u64 {
        let f = self.field;
        let (c0, c1) = ring::crt_split(f, a);
        weight_by_crt(f, &self.set, c0.index(), c1.index())
    }

    /// Rows are the Gray images of `ev(u g^i)` for `i = 0..m`, then
    /// `ev((1-u) g^i)`; `g`-power basis, so the row space is the whole Gray
    /// image.
    pub fn gray_generator_matrix(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut rows = Vec::with_capacity(2 * f.m() as usize);
        let mut e = f.one();
        let mut basis = Vec::with_capacity(f.m() as usize);
        for _ in 0..f.m() {
            basis.push(e);
            e = f.mul(e, f.generator());
        }
        for &ei in &basis {
            let a = RingElem::new(f, f.zero(), ei); // u * ei
            rows.push(self.gray_codeword(a));
        }
        for &ei in &basis {
            let a = RingElem::new(f, ei, f.neg(ei)); // (1-u) * ei
            rows.push(self.gray_codeword(a));
        }
        rows
    }

    /// The case label of `a` in the given regime.
    pub fn classify(&self, a: RingElem, regime: &Regime) -> ClassLabel {
        let f = self.field;
        let split = regime.tag == RegimeTag::FiveWeight;
        let (c0, c1) = ring::crt_split(f, a);
        match (c0.is_zero(), c1.is_zero()) {
            (true, true) => ClassLabel::Zero,
            (true, false) => {
                if split {
                    if f.is_square(c1).expect("nonzero") {
                        ClassLabel::USquare
                    } else {
                        ClassLabel::UNonsquare
                    }
                } else {
                    ClassLabel::UIdeal
                }
            }
            (false, true) => ClassLabel::ComplementIdeal,
            (false, false) => {
                if split {
                    if f.is_square(c1).expect("nonzero") {
                        ClassLabel::UnitSquare
                    } else {
                        ClassLabel::UnitNonsquare
                    }
                } else {
                    ClassLabel::Unit
                }
            }
        }
    }

    /// Lee weight distribution of the whole code.
    ///
    /// Full mode enumerates every `a`; by-class mode weighs `class_reps`
    /// representatives per class, insists they agree, and multiplies by the
    /// class size.
    pub fn empirical_weight_distribution(
        &self,
        mode: Mode,
        opts: &EnumOptions,
    ) -> Result<WeightDistribution, Error> {
        match mode {
            Mode::Full => self.full_distribution(opts),
            Mode::ByClass => self.by_class_distribution(opts),
        }
    }

    fn full_distribution(&self, opts: &EnumOptions) -> Result<WeightDistribution, Error> {
        let f = self.field;
        let q = f.q();
        let needed = (q as u128) * (q as u128) * (self.set.n() as u128);
        if needed > opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed,
                budget: opts.budget,
            });
        }
        let workers = opts.workers.max(1).min(q as usize);
        let set = &self.set;
        let mut dist = WeightDistribution::new();
        if workers == 1 {
            dist = enumerate_c0_range(f, set, 0, q);
        } else {
            let chunk = q.div_ceil(workers as u64);
            let partials = std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for w in 0..workers as u64 {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(q);
                    if lo >= hi {
                        continue;
                    }
                    handles.push(scope.spawn(move || enumerate_c0_range(f, set, lo, hi)));
                }
                handles
                    .into_iter()
                    .map(|h| h.join().expect("enumeration worker panicked"))
                    .collect::<Vec<_>>()
            });
            for p in &partials {
                dist.merge(p);
            }
        }
        debug_assert_eq!(dist.total() as u128, self.codeword_count());
        Ok(dist)
    }

    fn by_class_distribution(&self, opts: &EnumOptions) -> Result<WeightDistribution, Error> {
        let regime = Regime::of(self.variant(), self.field.p(), self.field.m());
        if regime.tag == RegimeTag::Unsupported {
            return Err(Error::UnsupportedRegime {
                variant: self.variant(),
                p: self.field.p(),
                m: self.field.m(),
            });
        }
        let mut rng = StdRng::seed_from_u64(opts.seed);
        let k = opts.class_reps.max(1);
        let mut dist = WeightDistribution::new();
        for (label, size) in class_sizes(&regime, self.field.q()) {
            let reps = self.class_representatives(label, k, size, &mut rng);
            let weights: Vec<u64> = reps.iter().map(|&a| self.lee_weight_of(a)).collect();
            let w0 = weights[0];
            if weights.iter().any(|&w| w != w0) {
                return Err(Error::ClassNotConstant { label, weights });
            }
            // cross-check the sampled labels
            debug_assert!(reps.iter().all(|&a| self.classify(a, &regime) == label));
            dist.add(w0, size);
        }
        debug_assert_eq!(dist.total() as u128, self.codeword_count());
        Ok(dist)
    }

    /// `k` members of a class (all of them when the class is small).
    fn class_representatives(
        &self,
        label: ClassLabel,
        k: usize,
        size: u64,
        rng: &mut StdRng,
    ) -> Vec<RingElem> {
        let f = self.field;
        let q = f.q();
        let ord = q - 1;
        let half = ord / 2;
        let unit = |e: u64| f.pow(f.generator(), e);
        let zero = f.zero();
        if size <= k as u64 {
            return self.class_members(label);
        }
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let a = match label {
                ClassLabel::Zero => ring::zero(f),
                ClassLabel::USquare => ring::crt_join(f, zero, unit(2 * rng.gen_range(0..half))),
                ClassLabel::UNonsquare => {
                    ring::crt_join(f, zero, unit(2 * rng.gen_range(0..half) + 1))
                }
                ClassLabel::UIdeal => ring::crt_join(f, zero, unit(rng.gen_range(0..ord))),
                ClassLabel::ComplementIdeal => ring::crt_join(f, unit(rng.gen_range(0..ord)), zero),
                ClassLabel::UnitSquare => ring::crt_join(
                    f,
                    unit(rng.gen_range(0..ord)),
                    unit(2 * rng.gen_range(0..half)),
                ),
                ClassLabel::UnitNonsquare => ring::crt_join(
                    f,
                    unit(rng.gen_range(0..ord)),
                    unit(2 * rng.gen_range(0..half) + 1),
                ),
                ClassLabel::Unit => {
                    ring::crt_join(f, unit(rng.gen_range(0..ord)), unit(rng.gen_range(0..ord)))
                }
            };
            out.push(a);
        }
        out
    }

    /// Every member of a class; used when a class is smaller than the
    /// representative count.
    fn class_members(&self, label: ClassLabel) -> Vec<RingElem> {
        let f = self.field;
        let zero = f.zero();
        let units = f.units();
        let squares = f.squares();
        let non_squares = f.non_squares();
        match label {
            ClassLabel::Zero => vec![ring::zero(f)],
            ClassLabel::USquare => squares
                .iter()
                .map(|&t| ring::crt_join(f, zero, t))
                .collect(),
            ClassLabel::UNonsquare => non_squares
                .iter()
                .map(|&t| ring::crt_join(f, zero, t))
                .collect(),
            ClassLabel::UIdeal => units.iter().map(|&t| ring::crt_join(f, zero, t)).collect(),
            ClassLabel::ComplementIdeal => {
                units.iter().map(|&t| ring::crt_join(f, t, zero)).collect()
            }
            ClassLabel::UnitSquare => squares
                .iter()
                .flat_map(|&t1| units.iter().map(move |&t0| (t0, t1)))
                .map(|(t0, t1)| ring::crt_join(f, t0, t1))
                .collect(),
            ClassLabel::UnitNonsquare => non_squares
                .iter()
                .flat_map(|&t1| units.iter().map(move |&t0| (t0, t1)))
                .map(|(t0, t1)| ring::crt_join(f, t0, t1))
                .collect(),
            ClassLabel::Unit => units
                .iter()
                .flat_map(|&t1| units.iter().map(move |&t0| (t0, t1)))
                .map(|(t0, t1)| ring::crt_join(f, t0, t1))
                .collect(),
        }
    }
}

/// The classes of a regime with their sizes; they partition `R_m`.
pub fn class_sizes(regime: &Regime, q: u64) -> Vec<(ClassLabel, u64)> {
    let ord = q - 1;
    match regime.tag {
        RegimeTag::FiveWeight => vec![
            (ClassLabel::Zero, 1),
            (ClassLabel::USquare, ord / 2),
            (ClassLabel::UNonsquare, ord / 2),
            (ClassLabel::ComplementIdeal, ord),
            (ClassLabel::UnitSquare, ord * ord / 2),
            (ClassLabel::UnitNonsquare, ord * ord / 2),
        ],
        RegimeTag::TwoWeightL | RegimeTag::TwoWeightLprime => vec![
            (ClassLabel::Zero, 1),
            (ClassLabel::UIdeal, ord),
            (ClassLabel::ComplementIdeal, ord),
            (ClassLabel::Unit, ord * ord),
        ],
        RegimeTag::Unsupported => Vec::new(),
    }
}

/// Lee weight of `ev(a)` for `a` given by CRT coordinates: per coordinate
/// `x = ut + (1-u)t'`, the Gray pair of `Tr(ax)` is
/// `(tr(c0 t') - tr(c1 t), tr(c0 t') + tr(c1 t))`.
fn weight_by_crt(f: &ExtField, set: &DefiningSet, c0: u64, c1: u64) -> u64 {
    let p = f.p();
    let tb: Vec<u64> = set
        .inner
        .iter()
        .map(|&tp| f.tr_ix(f.mul_ix(c0, tp)))
        .collect();
    let mut w = 0u64;
    for &t in &set.outer {
        let ta = f.tr_ix(f.mul_ix(c1, t));
        let nta = (p - ta) % p;
        for &b in &tb {
            w += (b != ta) as u64 + (b != nta) as u64;
        }
    }
    w
}

/// Weigh all `a` whose CRT coordinate at `u = 0` lies in `lo..hi`.
fn enumerate_c0_range(f: &ExtField, set: &DefiningSet, lo: u64, hi: u64) -> WeightDistribution {
    let p = f.p();
    let q = f.q();
    let mut dist = WeightDistribution::new();
    let mut tb = vec![0u64; set.inner.len()];
    for c0 in lo..hi {
        for (slot, &tp) in tb.iter_mut().zip(&set.inner) {
            *slot = f.tr_ix(f.mul_ix(c0, tp));
        }
        for c1 in 0..q {
            let mut w = 0u64;
            for &t in &set.outer {
                let ta = f.tr_ix(f.mul_ix(c1, t));
                let nta = (p - ta) % p;
                for &b in &tb {
                    w += (b != ta) as u64 + (b != nta) as u64;
                }
            }
            dist.add(w, 1);
        }
    }
    dist
}
