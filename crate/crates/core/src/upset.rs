//! Ultimately periodic subsets of ℝ.
//!
//! A set is stored as its characteristic function, so the Boolean algebra is
//! pointwise logic on step functions and every component is a half-open
//! interval `[a, b)` (plus possibly a left ray `(-∞, r)` and a right ray).

use std::fmt;

use crate::bits::BinaryVector;
use crate::error::Error;
use crate::rat::{common_denominator, Rat};
use crate::signal::UpSignal;
use crate::step::{Cycle, StepFn};

/// Half-open interval `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, t: Rat) -> bool {
        self.lo <= t && t < self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

/// A point of the extended real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInfinity,
    Finite(Rat),
    PosInfinity,
}

impl Extended {
    pub fn finite(self) -> Option<Rat> {
        match self {
            Extended::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Translation; infinities are fixed points.
    pub fn offset(self, delta: Rat) -> Extended {
        match self {
            Extended::Finite(r) => Extended::Finite(r + delta),
            other => other,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInfinity => f.write_str("-inf"),
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// Least eventual period of a set, or the reason there is none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventualPeriod {
    Period(Rat),
    /// The set contains a ray `[M, ∞)`.
    DegenerateFull,
    /// The set is bounded above.
    DegenerateEmpty,
}

/// The repeating component: `⋃_{k≥0} (pattern + start + k·period)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub start: Rat,
    pub period: Rat,
    pub pattern: Vec<Interval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpSet {
    steps: StepFn<bool>,
}

impl UpSet {
    pub fn empty() -> Self {
        UpSet {
            steps: StepFn::constant(false),
        }
    }

    /// ℝ.
    pub fn full() -> Self {
        UpSet {
            steps: StepFn::constant(true),
        }
    }

    /// `[lo, hi)`; empty when `lo ≥ hi`.
    pub fn interval(lo: Rat, hi: Rat) -> Self {
        if lo >= hi {
            return Self::empty();
        }
        Self::canonical(false, vec![(lo, true), (hi, false)], None)
    }

    /// `(-∞, r)`.
    pub fn ray_below(r: Rat) -> Self {
        Self::canonical(true, vec![(r, false)], None)
    }

    /// `[r, ∞)`.
    pub fn ray_from(r: Rat) -> Self {
        Self::canonical(false, vec![(r, true)], None)
    }

    /// `⋃_{k≥0} (I + start + k·period)` over the given intervals, which must
    /// satisfy `0 ≤ lo < hi ≤ period`. Overlaps are allowed.
    pub fn periodic(start: Rat, period: Rat, intervals: &[Interval]) -> Result<Self, Error> {
        if !period.is_positive() {
            return Err(Error::NonPositivePeriod(period));
        }
        for iv in intervals {
            if iv.lo.is_negative() || iv.lo >= iv.hi || iv.hi > period {
                return Err(Error::BadPattern(format!(
                    "interval {iv} outside [0, {period}] or empty"
                )));
            }
        }
        let mut cuts: Vec<Rat> = vec![Rat::ZERO];
        for iv in intervals {
            cuts.push(iv.lo);
            if iv.hi < period {
                cuts.push(iv.hi);
            }
        }
        cuts.sort();
        cuts.dedup();
        let pattern = cuts
            .into_iter()
            .map(|o| (o, intervals.iter().any(|iv| iv.contains(o))))
            .collect();
        Ok(Self::canonical(
            false,
            vec![],
            Some(Cycle::new(start, period, pattern)),
        ))
    }

    fn canonical(init: bool, transient: Vec<(Rat, bool)>, cycle: Option<Cycle<bool>>) -> Self {
        UpSet {
            steps: StepFn::new(init, transient, cycle).expect("well-formed set description"),
        }
    }

    /// Union of finitely many intervals.
    pub fn from_intervals(intervals: &[Interval]) -> Self {
        intervals.iter().fold(Self::empty(), |acc, iv| {
            acc.union(&Self::interval(iv.lo, iv.hi))
        })
    }

    /// `T_μ^x = {t | x(t) = μ}`.
    pub fn fiber(x: &UpSignal, mu: &BinaryVector) -> Result<Self, Error> {
        if x.width() != mu.width() {
            return Err(Error::WidthMismatch {
                expected: x.width(),
                found: mu.width(),
            });
        }
        Ok(UpSet {
            steps: x.steps().map(|v| v == mu),
        })
    }

    pub fn member(&self, t: Rat) -> bool {
        *self.steps.eval(t)
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_constant() && !*self.steps.init()
    }

    pub fn is_full(&self) -> bool {
        self.steps.is_constant() && *self.steps.init()
    }

    /// `{t + delta | t ∈ S}`.
    pub fn shift(&self, delta: Rat) -> Self {
        UpSet {
            steps: self.steps.shift(delta),
        }
    }

    pub fn complement(&self) -> Self {
        UpSet {
            steps: self.steps.map(|b| !b),
        }
    }

    pub fn intersect(&self, other: &UpSet) -> Self {
        UpSet {
            steps: self.steps.zip_with(&other.steps, |a, b| *a && *b),
        }
    }

    pub fn union(&self, other: &UpSet) -> Self {
        UpSet {
            steps: self.steps.zip_with(&other.steps, |a, b| *a || *b),
        }
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &UpSet) -> Self {
        UpSet {
            steps: self.steps.zip_with(&other.steps, |a, b| *a && !*b),
        }
    }

    pub fn subset(&self, other: &UpSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Set equality. Stored representations of equal sets may differ in
    /// their cycle start or period, so this compares semantically.
    pub fn equals(&self, other: &UpSet) -> bool {
        self.steps
            .zip_with(&other.steps, |a, b| a != b)
            .is_constant_value(false)
    }

    /// `S ∩ [c, ∞)`.
    pub fn clip_geq(&self, c: Rat) -> Self {
        self.intersect(&UpSet::ray_from(c))
    }

    /// Supremum of the set. Intervals are half-open, so a finite supremum
    /// is never attained.
    pub fn sup_bound(&self) -> Extended {
        if self.is_empty() {
            Extended::NegInfinity
        } else if self.steps.cycle().is_some() || *self.steps.transient_end_value() {
            Extended::PosInfinity
        } else {
            let (t, _) = self
                .steps
                .transient()
                .last()
                .expect("non-empty bounded set");
            Extended::Finite(*t)
        }
    }

    /// Least `p > 0` such that `S ∩ [M, ∞)` is `p`-periodic for some `M`.
    ///
    /// One tail period is laid out on the integer grid of the common
    /// denominator as a cyclic binary word; its least rotation period gives
    /// the answer.
    pub fn minimal_eventual_period(&self) -> EventualPeriod {
        let Some(c) = self.steps.cycle() else {
            return if *self.steps.transient_end_value() {
                EventualPeriod::DegenerateFull
            } else {
                EventualPeriod::DegenerateEmpty
            };
        };
        let word = tail_word(c);
        let d = grid_denominator(c);
        EventualPeriod::Period(Rat::new(cyclic_word_period(&word) as i128, d))
    }

    /// Start of the repeating part, if any.
    pub fn tail_start(&self) -> Option<Rat> {
        self.steps.cycle().map(|c| c.start)
    }

    /// Least switch time of the characteristic function.
    pub fn first_boundary(&self) -> Option<Rat> {
        self.steps.first_switch()
    }

    /// Least boundary point strictly after `t`.
    pub fn next_boundary(&self, t: Rat) -> Option<Rat> {
        self.steps.next_switch(t)
    }

    /// `Some(r)` when the set begins with the ray `(-∞, r)`.
    pub fn initial_ray(&self) -> Option<Rat> {
        if *self.steps.init() {
            self.steps.first_switch()
        } else {
            None
        }
    }

    /// Bounded components before the repeating or final part.
    pub fn transient_intervals(&self) -> Vec<Interval> {
        let tr = self.steps.transient();
        let end = self.steps.cycle().map(|c| c.start);
        let mut out = Vec::new();
        for (i, (t, v)) in tr.iter().enumerate() {
            if !*v {
                continue;
            }
            if let Some(hi) = tr.get(i + 1).map(|(s, _)| *s).or(end) {
                out.push(Interval::new(*t, hi))
            }
        }
        out
    }

    /// The repeating component. A final ray `[r, ∞)` is reported as a tail of
    /// period 1 covering its whole period.
    pub fn tail(&self) -> Option<Tail> {
        if let Some(c) = self.steps.cycle() {
            let mut pattern = Vec::new();
            for (i, (o, v)) in c.pattern.iter().enumerate() {
                if *v {
                    let hi = c.pattern.get(i + 1).map_or(c.period, |(n, _)| *n);
                    pattern.push(Interval::new(*o, hi));
                }
            }
            return Some(Tail {
                start: c.start,
                period: c.period,
                pattern,
            });
        }
        match self.steps.transient().last() {
            Some((t, true)) => Some(Tail {
                start: *t,
                period: Rat::ONE,
                pattern: vec![Interval::new(Rat::ZERO, Rat::ONE)],
            }),
            _ => None,
        }
    }
}

impl StepFn<bool> {
    fn is_constant_value(&self, v: bool) -> bool {
        self.is_constant() && *self.init() == v
    }
}

fn grid_denominator(c: &Cycle<bool>) -> i128 {
    common_denominator(
        c.pattern
            .iter()
            .map(|(o, _)| o)
            .chain(std::iter::once(&c.period)),
    )
}

/// One period of the tail sampled on the grid `1/d`.
fn tail_word(c: &Cycle<bool>) -> Vec<bool> {
    let d = grid_denominator(c);
    let len = (c.period * Rat::int(d)).numer() as usize;
    let mut word = vec![false; len];
    for (i, (o, v)) in c.pattern.iter().enumerate() {
        let lo = (*o * Rat::int(d)).numer() as usize;
        let hi = c
            .pattern
            .get(i + 1)
            .map_or(len, |(n, _)| (*n * Rat::int(d)).numer() as usize);
        word[lo..hi].fill(*v);
    }
    word
}

/// Least `q` such that rotating `word` by `q` gives `word` back, computed
/// from the border (prefix) function in linear time.
pub fn cyclic_word_period<T: Eq>(word: &[T]) -> usize {
    let n = word.len();
    assert!(n > 0, "empty word");
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut k = border[i - 1];
        while k > 0 && word[i] != word[k] {
            k = border[k - 1];
        }
        if word[i] == word[k] {
            k += 1;
        }
        border[i] = k;
    }
    let p = n - border[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.is_full() {
            return f.write_str("ℝ");
        }
        let mut parts = Vec::new();
        if let Some(r) = self.initial_ray() {
            parts.push(format!("(-inf,{r})"));
        }
        parts.extend(self.transient_intervals().iter().map(|iv| iv.to_string()));
        match (self.steps.cycle(), self.tail()) {
            (None, Some(t)) => parts.push(format!("[{},+inf)", t.start)),
            (Some(_), Some(t)) => {
                let pat: Vec<String> = t.pattern.iter().map(|iv| iv.to_string()).collect();
                parts.push(format!(
                    "tail{{start={}, period={}, pattern {}}}",
                    t.start,
                    t.period,
                    pat.join(" ∪ ")
                ));
            }
            _ => {}
        }
        f.write_str(&parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::signal::fixtures::{b, xstar};

    fn iv(lo: Rat, hi: Rat) -> Interval {
        Interval::new(lo, hi)
    }

    fn xstar_fiber() -> UpSet {
        UpSet::fiber(&xstar(), &b("1")).unwrap()
    }

    #[test]
    fn fiber_of_xstar() {
        let f = xstar_fiber();
        assert_eq!(f.initial_ray(), Some(rat!(0)));
        assert_eq!(f.transient_intervals(), vec![iv(rat!(1), rat!(2))]);
        assert_eq!(
            f.tail(),
            Some(Tail {
                start: rat!(3),
                period: rat!(5),
                pattern: vec![iv(rat!(0), rat!(2)), iv(rat!(3), rat!(4))],
            })
        );
        assert_eq!(
            f.to_string(),
            "(-inf,0) ∪ [1,2) ∪ tail{start=3, period=5, pattern [0,2) ∪ [3,4)}"
        );
        let g = UpSet::fiber(&xstar(), &b("0")).unwrap();
        assert!(g.equals(&f.complement()));
        assert!(UpSet::fiber(&UpSignal::constant(b("1")), &b("1"))
            .unwrap()
            .is_full());
        assert!(UpSet::fiber(&xstar(), &b("10")).is_err());
    }

    #[test]
    fn membership() {
        let f = xstar_fiber();
        assert!(f.member(rat!(6)));
        assert!(!f.member(rat!(12)));
        assert!(!UpSet::empty().member(rat!(-3)));
        assert!(UpSet::full().member(rat!(99)));
    }

    #[test]
    fn shifts() {
        let s = UpSet::interval(rat!(1), rat!(2)).shift(rat!(5));
        assert!(s.equals(&UpSet::interval(rat!(6), rat!(7))));
        assert!(UpSet::full().shift(rat!(3, 7)).is_full());
        let f = xstar_fiber();
        assert!(f.shift(rat!(5)).clip_geq(rat!(3)).subset(&f));
    }

    #[test]
    fn clipping() {
        let f = xstar_fiber().clip_geq(rat!(-1));
        assert_eq!(f.initial_ray(), None);
        assert_eq!(
            f.transient_intervals(),
            vec![iv(rat!(-1), rat!(0)), iv(rat!(1), rat!(2))]
        );
        assert_eq!(f.tail().unwrap().start, rat!(3));
    }

    #[test]
    fn set_algebra_basics() {
        let f = xstar_fiber();
        assert!(f.intersect(&f.complement()).is_empty());
        assert!(f.union(&f.complement()).is_full());
        let canon = UpSet::ray_below(rat!(0))
            .union(&UpSet::periodic(rat!(3), rat!(5), &[iv(rat!(0), rat!(2))]).unwrap());
        assert!(canon.subset(&f));
        assert!(!f.subset(&canon));
    }

    #[test]
    fn sup_bounds() {
        assert_eq!(UpSet::empty().sup_bound(), Extended::NegInfinity);
        let s = UpSet::from_intervals(&[iv(rat!(1), rat!(2)), iv(rat!(4), rat!(9, 2))]);
        assert_eq!(s.sup_bound(), Extended::Finite(rat!(9, 2)));
        assert_eq!(xstar_fiber().sup_bound(), Extended::PosInfinity);
        assert_eq!(UpSet::ray_from(rat!(2)).sup_bound(), Extended::PosInfinity);
    }

    #[test]
    fn eventual_periods() {
        assert_eq!(
            xstar_fiber().minimal_eventual_period(),
            EventualPeriod::Period(rat!(5))
        );
        assert_eq!(
            UpSet::full().minimal_eventual_period(),
            EventualPeriod::DegenerateFull
        );
        assert_eq!(
            UpSet::empty().minimal_eventual_period(),
            EventualPeriod::DegenerateEmpty
        );
        let s = UpSet::periodic(rat!(0), rat!(2), &[iv(rat!(0), rat!(1))]).unwrap();
        assert_eq!(s.minimal_eventual_period(), EventualPeriod::Period(rat!(2)));
        // period 6 stored, true period 2
        let s = UpSet::periodic(
            rat!(0),
            rat!(6),
            &[
                iv(rat!(0), rat!(1)),
                iv(rat!(2), rat!(3)),
                iv(rat!(4), rat!(5)),
            ],
        )
        .unwrap();
        assert_eq!(s.minimal_eventual_period(), EventualPeriod::Period(rat!(2)));
        let s = UpSet::periodic(rat!(0), rat!(1), &[iv(rat!(0), rat!(1, 3))]).unwrap();
        assert_eq!(s.minimal_eventual_period(), EventualPeriod::Period(rat!(1)));
    }

    #[test]
    fn word_periods() {
        assert_eq!(cyclic_word_period(&[1, 1, 0, 1, 0]), 5);
        assert_eq!(cyclic_word_period(&[1, 1, 1, 1]), 1);
        assert_eq!(cyclic_word_period(&[1, 0, 1, 0]), 2);
        assert_eq!(cyclic_word_period(&[1, 0, 1]), 3);
        assert_eq!(cyclic_word_period(&[0, 0, 1, 0, 0, 1]), 3);
    }

    #[test]
    fn periodic_builder_validation() {
        assert!(UpSet::periodic(rat!(0), rat!(0), &[]).is_err());
        assert!(UpSet::periodic(rat!(0), rat!(2), &[iv(rat!(1), rat!(3))]).is_err());
        assert!(UpSet::periodic(rat!(0), rat!(2), &[]).unwrap().is_empty());
        let s = UpSet::periodic(rat!(0), rat!(2), &[iv(rat!(0), rat!(2))]).unwrap();
        assert!(s.equals(&UpSet::ray_from(rat!(0))));
    }
}
