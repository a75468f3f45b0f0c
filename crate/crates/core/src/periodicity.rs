//! Periodic points of a signal and their prime period.
//!
//! `μ ∈ Or(x)` is periodic with period `T > 0` when some `t′` satisfies
//!
//! 1. the initial-ray condition `(-∞, t′] ⊆ T^x_{x(-∞+0)}`, and
//! 2. the shift condition: for every `t ∈ T^x_μ ∩ [t′, ∞)` and every `z ∈ ℤ`
//!    with `t + zT ≥ t′`, `t + zT ∈ T^x_μ`.
//!
//! The prime period is the least such `T`.
//!
//! The quantifier over `z` is decided with two subset tests on the fiber
//! `F = T^x_μ`:
//!
//! ```text
//! (F ∩ [t′, ∞)) + T ⊆ F        and        (F ∩ [t′+T, ∞)) − T ⊆ F
//! ```
//!
//! Given both, any chain `t, t ± T, t ± 2T, …` that stays above `t′` stays in
//! `F` by induction, because every intermediate point is itself `≥ t′`.

use crate::bits::BinaryVector;
use crate::error::Error;
use crate::rat::Rat;
use crate::signal::UpSignal;
use crate::upset::{EventualPeriod, Extended, Interval, UpSet};

/// The set of admissible `t′` for a fixed `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TPrimeRange {
    /// Every `t′ ∈ ℝ` (constant signals).
    Everywhere,
    /// `t′ ∈ [lo, hi)`.
    Window(Interval),
}

impl TPrimeRange {
    pub fn contains(&self, t: Rat) -> bool {
        match self {
            TPrimeRange::Everywhere => true,
            TPrimeRange::Window(iv) => iv.contains(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicityVerdict {
    NotInOrbit,
    NotPeriodic,
    /// Every `T > 0` is a period, so no least one exists.
    NoPrime,
    Prime {
        period: Rat,
        admissible_tprime: Interval,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Theorem76Report {
    pub t0: Rat,
    pub t1: Rat,
    /// `t1 − T ≤ t′ < t0 < t1`.
    pub bound_ok: bool,
    /// `(-∞,t0) ∪ [t1,t0+T) ∪ [t1+T,t0+2T) ∪ … ⊆ T^x_{x(-∞+0)}`.
    pub inclusion_ok: bool,
}

fn orbit_fiber(x: &UpSignal, mu: &BinaryVector) -> Result<UpSet, Error> {
    let fiber = UpSet::fiber(x, mu)?;
    if fiber.is_empty() {
        return Err(Error::NotInOrbit);
    }
    Ok(fiber)
}

fn positive(period: Rat) -> Result<(), Error> {
    if period.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositivePeriod(period))
    }
}

fn initial_ray_holds(x: &UpSignal, tprime: Rat) -> bool {
    // (-∞, t′] lies in the initial value's fiber exactly when t′ precedes
    // the first switch.
    x.first_switch().is_none_or(|t0| tprime < t0)
}

/// Decides whether `(T, t′)` witnesses that `μ` is a periodic point of `x`.
pub fn check_periodic_point(
    x: &UpSignal,
    mu: &BinaryVector,
    period: Rat,
    tprime: Rat,
) -> Result<bool, Error> {
    positive(period)?;
    let fiber = orbit_fiber(x, mu)?;
    if !initial_ray_holds(x, tprime) {
        return Ok(false);
    }
    let forward = fiber.clip_geq(tprime).shift(period).subset(&fiber);
    let backward = fiber
        .clip_geq(tprime + period)
        .shift(-period)
        .subset(&fiber);
    Ok(forward && backward)
}

/// The exact set of `t′` accepted by [`check_periodic_point`] for this `T`,
/// or `None` when there is none.
///
/// The upper end is the first switch of `x`. Let `F` be the fiber,
/// `W_A = F ∖ (F − T)` the points whose `+T` image leaves `F` and
/// `W_B = F ∖ (F + T)` the points whose `−T` preimage is missing. Forward
/// closure holds iff `t′ ≥ sup W_A`, backward closure iff `t′ + T ≥ sup W_B`.
pub fn valid_tprime_interval(
    x: &UpSignal,
    mu: &BinaryVector,
    period: Rat,
) -> Result<Option<TPrimeRange>, Error> {
    positive(period)?;
    let fiber = orbit_fiber(x, mu)?;
    let Some(hi) = x.first_switch() else {
        return Ok(Some(TPrimeRange::Everywhere));
    };
    let escapes_forward = fiber.difference(&fiber.shift(-period));
    let escapes_backward = fiber.difference(&fiber.shift(period));
    let lo = escapes_forward
        .sup_bound()
        .max(escapes_backward.sup_bound().offset(-period));
    Ok(match lo {
        Extended::PosInfinity => None,
        Extended::Finite(lo) if lo < hi => Some(TPrimeRange::Window(Interval::new(lo, hi))),
        Extended::Finite(_) => None,
        // Both escape sets empty would make F invariant under ±T on all of
        // ℝ, which for a non-constant signal contradicts the first switch.
        Extended::NegInfinity => unreachable!("non-constant signal with T-invariant fiber"),
    })
}

/// Largest `k` tried by [`prime_period`]: past it, `k·p` carries the whole
/// transient and the head `[t′, t0)` beyond the tail start, after which
/// acceptance no longer depends on `k`.
pub fn candidate_multiples(first_switch: Rat, tail_start: Rat, p: Rat) -> i128 {
    let span = (tail_start - first_switch).max(Rat::ZERO);
    (span / p).ceil() + 2
}

/// Prime period of `μ`, together with its window of admissible `t′`.
pub fn prime_period(x: &UpSignal, mu: &BinaryVector) -> PeriodicityVerdict {
    if !x.in_orbit(mu) {
        return PeriodicityVerdict::NotInOrbit;
    }
    let fiber = UpSet::fiber(x, mu).expect("width checked by in_orbit");
    if fiber.is_full() {
        return PeriodicityVerdict::NoPrime;
    }
    let p = match fiber.minimal_eventual_period() {
        EventualPeriod::Period(p) => p,
        // A period T forces F ∩ [t′,∞) to be T-invariant. A bounded fiber
        // then has nothing above t′, and a fiber containing a ray then
        // contains [t′,∞) ∋ t0; both contradict t′ < t0 for non-constant x.
        EventualPeriod::DegenerateEmpty | EventualPeriod::DegenerateFull => {
            return PeriodicityVerdict::NotPeriodic
        }
    };
    let t0 = x.first_switch().expect("non-constant signal");
    let tail_start = fiber.tail_start().expect("fiber with a cycle");
    for k in 1..=candidate_multiples(t0, tail_start, p) {
        let period = p * Rat::int(k);
        if let Some(TPrimeRange::Window(window)) =
            valid_tprime_interval(x, mu, period).expect("valid inputs")
        {
            return PeriodicityVerdict::Prime {
                period,
                admissible_tprime: window,
            };
        }
    }
    PeriodicityVerdict::NotPeriodic
}

/// `(-∞, t0) ∪ [t1, t0+T) ∪ [t1+T, t0+2T) ∪ …`
pub fn canonical_union(t0: Rat, t1: Rat, period: Rat) -> Result<UpSet, Error> {
    positive(period)?;
    let head = UpSet::ray_below(t0);
    let len = t0 + period - t1;
    if len <= Rat::ZERO {
        return Ok(head);
    }
    let tail = UpSet::periodic(t1, period, &[Interval::new(Rat::ZERO, len.min(period))])?;
    Ok(head.union(&tail))
}

/// Recognizes fibers of the exact form `(-∞,t0) ∪ [t1,t0+T) ∪ [t1+T,t0+2T) ∪ …`
/// with `t0 < t1 < t0 + T`. For such a fiber `T` is the prime period and
/// the admissible `t′` are exactly `[t1 − T, t0)`.
pub fn detect_canonical_fiber(x: &UpSignal, mu: &BinaryVector) -> Option<(Rat, Rat, Rat)> {
    let fiber = UpSet::fiber(x, mu).ok()?;
    let t0 = fiber.initial_ray()?;
    let t1 = fiber.next_boundary(t0)?;
    let end = fiber.next_boundary(t1)?;
    let period = end - t0;
    let candidate = canonical_union(t0, t1, period).ok()?;
    (t0 < t1 && t1 < t0 + period && fiber.equals(&candidate)).then_some((t0, t1, period))
}

/// `t0` is the first switch of `x`; `t1` starts the constant run that ends
/// at `t0 + T`, i.e. the last switch before `t0 + T`.
pub fn derive_t0_t1(x: &UpSignal, period: Rat) -> Result<(Rat, Rat), Error> {
    positive(period)?;
    let t0 = x.first_switch().ok_or(Error::ConstantSignal)?;
    let t1 = x
        .last_switch_before(t0 + period)
        .expect("t0 is a switch before t0 + T");
    Ok((t0, t1))
}

pub fn check_theorem76(x: &UpSignal, period: Rat, tprime: Rat) -> Result<Theorem76Report, Error> {
    let (t0, t1) = derive_t0_t1(x, period)?;
    let bound_ok = t1 - period <= tprime && tprime < t0 && t0 < t1;
    let fiber = UpSet::fiber(x, x.initial_value())?;
    let inclusion_ok = canonical_union(t0, t1, period)?.subset(&fiber);
    Ok(Theorem76Report {
        t0,
        t1,
        bound_ok,
        inclusion_ok,
    })
}

/// Checks that `[a + kT, b + kT) ⊆ T^x_μ` for every `k ≥ 1`, given that
/// `(T, t′)` is accepted and `[a, b) ⊆ T^x_μ ∩ [t′, ∞)`. Under those
/// preconditions the answer is always `true`.
pub fn lemma8_closure(
    x: &UpSignal,
    mu: &BinaryVector,
    period: Rat,
    tprime: Rat,
    a: Rat,
    b: Rat,
) -> Result<bool, Error> {
    if a >= b {
        return Err(Error::PreconditionViolated(format!(
            "empty interval [{a},{b})"
        )));
    }
    if !check_periodic_point(x, mu, period, tprime)? {
        return Err(Error::PreconditionViolated(format!(
            "(T={period}, t'={tprime}) is not accepted"
        )));
    }
    let fiber = UpSet::fiber(x, mu)?;
    if !UpSet::interval(a, b).subset(&fiber.clip_geq(tprime)) {
        return Err(Error::PreconditionViolated(format!(
            "[{a},{b}) is not inside the fiber above t'={tprime}"
        )));
    }
    // ⋃_{k≥1} [a+kT, b+kT) as one periodic set.
    let images = UpSet::periodic(
        a + period,
        period,
        &[Interval::new(Rat::ZERO, (b - a).min(period))],
    )?;
    Ok(images.subset(&fiber))
}
