//! Continuous-time binary signals `x: ℝ → B^n`.
//!
//! A signal holds its initial value `x(-∞+0)` on a left ray, then switches at
//! finitely many transient times, then optionally repeats a cycle forever.
//! Every segment is half-open `[t_k, t_{k+1})`, so signals are
//! right-continuous and have a left limit everywhere.

use std::collections::BTreeSet;

use crate::bits::BinaryVector;
use crate::error::Error;
use crate::rat::Rat;
use crate::step::{Cycle, StepFn};

/// An ultimately periodic binary signal in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpSignal {
    width: usize,
    steps: StepFn<BinaryVector>,
}

impl UpSignal {
    /// Builds and canonicalizes a signal. Adjacent equal values are merged,
    /// redundant switches dropped and a constant tail folded into the
    /// transient part.
    pub fn new(
        init: BinaryVector,
        transient: Vec<(Rat, BinaryVector)>,
        cycle: Option<Cycle<BinaryVector>>,
    ) -> Result<Self, Error> {
        let width = init.width();
        let check = |v: &BinaryVector| {
            if v.width() == width {
                Ok(())
            } else {
                Err(Error::WidthMismatch {
                    expected: width,
                    found: v.width(),
                })
            }
        };
        transient.iter().try_for_each(|(_, v)| check(v))?;
        if let Some(c) = &cycle {
            c.pattern.iter().try_for_each(|(_, v)| check(v))?;
        }
        Ok(UpSignal {
            width,
            steps: StepFn::new(init, transient, cycle)?,
        })
    }

    pub fn constant(value: BinaryVector) -> Self {
        UpSignal {
            width: value.width(),
            steps: StepFn::constant(value),
        }
    }

    pub(crate) fn steps(&self) -> &StepFn<BinaryVector> {
        &self.steps
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `x(-∞+0)`.
    pub fn initial_value(&self) -> &BinaryVector {
        self.steps.init()
    }

    pub fn transient(&self) -> &[(Rat, BinaryVector)] {
        self.steps.transient()
    }

    pub fn cycle(&self) -> Option<&Cycle<BinaryVector>> {
        self.steps.cycle()
    }

    pub fn eval(&self, t: Rat) -> &BinaryVector {
        self.steps.eval(t)
    }

    /// `x(t-0)`.
    pub fn left_limit(&self, t: Rat) -> &BinaryVector {
        self.steps.left_limit(t)
    }

    /// `{x(t) | t ∈ ℝ}`.
    pub fn orbit(&self) -> BTreeSet<BinaryVector> {
        self.steps.values().cloned().collect()
    }

    pub fn in_orbit(&self, mu: &BinaryVector) -> bool {
        mu.width() == self.width && self.steps.values().any(|v| v == mu)
    }

    pub fn is_constant(&self) -> bool {
        self.steps.is_constant()
    }

    /// The least `t` with `x(t) ≠ x(-∞+0)`.
    pub fn first_switch(&self) -> Option<Rat> {
        self.steps.first_switch()
    }

    /// Least switch time strictly after `t`.
    pub fn next_switch(&self, t: Rat) -> Option<Rat> {
        self.steps.next_switch(t)
    }

    /// Greatest switch time strictly before `t`.
    pub fn last_switch_before(&self, t: Rat) -> Option<Rat> {
        self.steps.last_switch_before(t)
    }

    /// Switch times in `[lo, hi)`.
    pub fn switches_in(&self, lo: Rat, hi: Rat) -> Vec<Rat> {
        self.steps.switches_in(lo, hi)
    }

    /// Time from which the signal is periodic (or constant): the cycle start,
    /// else the last switch, else 0 for constant signals.
    pub fn tail_start(&self) -> Rat {
        match self.cycle() {
            Some(c) => c.start,
            None => self.transient().last().map_or(Rat::ZERO, |(t, _)| *t),
        }
    }

    /// Common denominator of all stored times.
    pub fn time_denominator(&self) -> i128 {
        self.steps.time_denominator()
    }

    /// Pointwise `x ⊕ y`.
    pub fn xor(&self, other: &UpSignal) -> Result<UpSignal, Error> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(UpSignal {
            width: self.width,
            steps: self.steps.zip_with(&other.steps, |a, b| a ^ b),
        })
    }

    /// Whether both signals are the same function, regardless of how their
    /// cycles are laid out.
    pub fn equivalent(&self, other: &UpSignal) -> bool {
        self.xor(other)
            .is_ok_and(|d| d.is_constant() && !d.initial_value().bits().contains(&true))
    }

    /// The signal translated right by `delta`.
    pub fn shift(&self, delta: Rat) -> UpSignal {
        UpSignal {
            width: self.width,
            steps: self.steps.shift(delta),
        }
    }
}

/// `init, transient, cycle` in one call; see [`UpSignal::new`].
pub fn make_signal(
    init: BinaryVector,
    transient: Vec<(Rat, BinaryVector)>,
    cycle: Option<Cycle<BinaryVector>>,
) -> Result<UpSignal, Error> {
    UpSignal::new(init, transient, cycle)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::rat;

    #[test]
    fn xstar_is_already_canonical() {
        let x = xstar();
        assert_eq!(x.transient().len(), 3);
        let c = x.cycle().unwrap();
        assert_eq!((c.start, c.period, c.pattern.len()), (rat!(3), rat!(5), 4));
    }

    #[test]
    fn eval_examples() {
        let x = xstar();
        assert_eq!(x.eval(rat!(4)), &b("1"));
        assert_eq!(x.eval(rat!(5, 2)), &b("0"));
        assert_eq!(x.eval(rat!(13)), &b("1"));
        assert_eq!(x.eval(rat!(-100)), &b("1"));
        let c = UpSignal::constant(b("01"));
        assert_eq!(c.eval(rat!(7, 3)), &b("01"));
    }

    #[test]
    fn left_limit_examples() {
        let x = xstar();
        assert_eq!(x.left_limit(rat!(3)), &b("0"));
        assert_eq!(x.eval(rat!(3)), &b("1"));
        assert_eq!(x.left_limit(rat!(4)), &b("1"));
        assert_eq!(x.left_limit(rat!(8)), &b("0"));
        assert_eq!(x.left_limit(rat!(0)), &b("1"));
    }

    #[test]
    fn redundant_switch_dropped() {
        let x = UpSignal::new(b("1"), vec![(rat!(0), b("1")), (rat!(2), b("0"))], None).unwrap();
        assert_eq!(x.transient(), &[(rat!(2), b("0"))]);
        assert!(x.cycle().is_none());
    }

    #[test]
    fn width_checks() {
        let e = UpSignal::new(b("1"), vec![(rat!(0), b("10"))], None);
        assert!(matches!(
            e,
            Err(Error::WidthMismatch {
                expected: 1,
                found: 2
            })
        ));
        let y = UpSignal::constant(b("00"));
        assert!(xstar().xor(&y).is_err());
    }

    #[test]
    fn orbit_and_initial_value() {
        let x = xstar();
        assert_eq!(
            x.orbit().into_iter().collect::<Vec<_>>(),
            vec![b("0"), b("1")]
        );
        assert_eq!(x.initial_value(), &b("1"));
        let z = UpSignal::new(
            b("00"),
            vec![(rat!(1), b("01")), (rat!(2), b("11")), (rat!(3), b("00"))],
            None,
        )
        .unwrap();
        assert_eq!(z.orbit().len(), 3);
        assert_eq!(UpSignal::constant(b("0")).orbit().len(), 1);
    }

    #[test]
    fn xor_identities() {
        let x = xstar();
        let zero = x.xor(&x).unwrap();
        assert!(zero.is_constant());
        assert_eq!(zero.initial_value(), &b("0"));
        assert_eq!(x.xor(&UpSignal::constant(b("0"))).unwrap(), x);
        let comp = x.xor(&UpSignal::constant(b("1"))).unwrap();
        for j in -10..80 {
            let t = rat!(j, 4);
            assert_eq!(comp.eval(t), &x.eval(t).not());
        }
    }

    #[test]
    fn first_switch_examples() {
        assert_eq!(xstar().first_switch(), Some(rat!(0)));
        assert_eq!(UpSignal::constant(b("1")).first_switch(), None);
        let x = UpSignal::new(b("0"), vec![(rat!(7, 2), b("1"))], None).unwrap();
        assert_eq!(x.first_switch(), Some(rat!(7, 2)));
        assert!(!xstar().is_constant());
        assert!(UpSignal::constant(b("1")).is_constant());
    }
}
