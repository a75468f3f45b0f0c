//! Ultimately periodic, right-continuous step functions `ℝ → V`.
//!
//! This is the common engine behind [`UpSignal`](crate::UpSignal) (values in
//! `B^n`) and [`UpSet`](crate::UpSet) (values in `bool`, i.e. characteristic
//! functions). A step function is an initial value held on a left ray, a
//! finite list of switches, and an optional cycle repeated forever from its
//! start time.
//!
//! Canonical form, maintained by every constructor:
//! - consecutive stored values differ, including the last transient value
//!   versus the first pattern value, and the last pattern value versus the
//!   first one (the wrap);
//! - a cycle has at least two pattern entries; a constant tail is folded into
//!   the transient and the cycle dropped.
//!
//! With these rules every stored time is a genuine switch, i.e. a point where
//! the value differs from the left limit.

use crate::error::Error;
use crate::rat::{common_denominator, Rat};

/// The repeating part of a step function: `pattern` is applied to
/// `[start + k·period, start + (k+1)·period)` for every `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle<V> {
    pub start: Rat,
    pub period: Rat,
    /// `(offset, value)` with offsets strictly increasing in `[0, period)`,
    /// the first one being 0.
    pub pattern: Vec<(Rat, V)>,
}

impl<V> Cycle<V> {
    pub fn new(start: Rat, period: Rat, pattern: Vec<(Rat, V)>) -> Self {
        Cycle {
            start,
            period,
            pattern,
        }
    }

    fn last_offset(&self) -> Rat {
        self.pattern.last().expect("non-empty pattern").0
    }

    fn map<W>(&self, mut f: impl FnMut(&V) -> W) -> Cycle<W> {
        Cycle {
            start: self.start,
            period: self.period,
            pattern: self.pattern.iter().map(|(o, v)| (*o, f(v))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct StepFn<V> {
    init: V,
    transient: Vec<(Rat, V)>,
    cycle: Option<Cycle<V>>,
}

impl<V: Clone + Eq> StepFn<V> {
    pub fn constant(v: V) -> Self {
        StepFn {
            init: v,
            transient: Vec::new(),
            cycle: None,
        }
    }

    /// Validates the raw description and returns its canonical form.
    pub fn new(init: V, transient: Vec<(Rat, V)>, cycle: Option<Cycle<V>>) -> Result<Self, Error> {
        for w in transient.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::NonIncreasingTimes {
                    previous: w[0].0,
                    next: w[1].0,
                });
            }
        }
        if let Some(c) = &cycle {
            if !c.period.is_positive() {
                return Err(Error::NonPositivePeriod(c.period));
            }
            match c.pattern.first() {
                None => return Err(Error::BadPattern("empty pattern".into())),
                Some((o, _)) if !o.is_zero() => {
                    return Err(Error::BadPattern(format!(
                        "first offset is {o}, expected 0"
                    )))
                }
                _ => {}
            }
            for w in c.pattern.windows(2) {
                if w[0].0 >= w[1].0 {
                    return Err(Error::BadPattern(format!(
                        "offsets not strictly increasing ({} then {})",
                        w[0].0, w[1].0
                    )));
                }
            }
            if c.last_offset() >= c.period {
                return Err(Error::BadPattern(format!(
                    "offset {} outside [0, {})",
                    c.last_offset(),
                    c.period
                )));
            }
            if let Some((t, _)) = transient.last() {
                if *t >= c.start {
                    return Err(Error::NonIncreasingTimes {
                        previous: *t,
                        next: c.start,
                    });
                }
            }
        }
        Ok(Self::canonical(init, transient, cycle))
    }

    /// Canonicalizes an already validated description.
    fn canonical(init: V, transient: Vec<(Rat, V)>, cycle: Option<Cycle<V>>) -> Self {
        let mut out: Vec<(Rat, V)> = Vec::with_capacity(transient.len());
        let mut current = init.clone();
        for (t, v) in transient {
            if v != current {
                current = v.clone();
                out.push((t, v));
            }
        }
        let cycle = cycle.and_then(|c| {
            let mut pattern: Vec<(Rat, V)> = Vec::with_capacity(c.pattern.len());
            for (o, v) in c.pattern {
                if pattern.last().is_none_or(|(_, last)| *last != v) {
                    pattern.push((o, v));
                }
            }
            let mut start = c.start;
            if pattern.len() == 1 {
                let v = pattern.pop().unwrap().1;
                if v != current {
                    out.push((start, v));
                }
                return None;
            }
            if pattern.last().unwrap().1 == pattern[0].1 {
                // The first run continues the last one; only the genuine
                // switch inside the pattern may start the cycle.
                let v = pattern[0].1.clone();
                if v != current {
                    out.push((start, v.clone()));
                    current = v;
                }
                rotate_once(&mut start, c.period, &mut pattern);
            }
            if current == pattern[0].1 {
                rotate_once(&mut start, c.period, &mut pattern);
            }
            let period = reduce_period(c.period, &mut pattern);
            Some(Cycle {
                start,
                period,
                pattern,
            })
        });
        StepFn {
            init,
            transient: out,
            cycle,
        }
    }

    pub fn init(&self) -> &V {
        &self.init
    }

    pub fn transient(&self) -> &[(Rat, V)] {
        &self.transient
    }

    pub fn cycle(&self) -> Option<&Cycle<V>> {
        self.cycle.as_ref()
    }

    pub fn is_constant(&self) -> bool {
        self.transient.is_empty() && self.cycle.is_none()
    }

    /// The value held after the last transient switch (the final value when
    /// there is no cycle).
    pub fn transient_end_value(&self) -> &V {
        self.transient.last().map_or(&self.init, |(_, v)| v)
    }

    pub fn eval(&self, t: Rat) -> &V {
        if let Some(c) = &self.cycle {
            if t >= c.start {
                let phase = (t - c.start).rem_euclid(c.period);
                let i = c.pattern.partition_point(|(o, _)| *o <= phase);
                return &c.pattern[i - 1].1;
            }
        }
        let i = self.transient.partition_point(|(s, _)| *s <= t);
        if i == 0 {
            &self.init
        } else {
            &self.transient[i - 1].1
        }
    }

    /// The value held on some interval `(t - ε, t)`.
    pub fn left_limit(&self, t: Rat) -> &V {
        if let Some(c) = &self.cycle {
            if t > c.start {
                let phase = (t - c.start).rem_euclid(c.period);
                if phase.is_zero() {
                    return &c.pattern.last().unwrap().1;
                }
                let i = c.pattern.partition_point(|(o, _)| *o < phase);
                return &c.pattern[i - 1].1;
            }
        }
        let i = self.transient.partition_point(|(s, _)| *s < t);
        if i == 0 {
            &self.init
        } else {
            &self.transient[i - 1].1
        }
    }

    pub fn first_switch(&self) -> Option<Rat> {
        self.transient
            .first()
            .map(|(t, _)| *t)
            .or_else(|| self.cycle.as_ref().map(|c| c.start))
    }

    /// Least switch time strictly greater than `t`.
    pub fn next_switch(&self, t: Rat) -> Option<Rat> {
        let i = self.transient.partition_point(|(s, _)| *s <= t);
        if let Some((s, _)) = self.transient.get(i) {
            return Some(*s);
        }
        let c = self.cycle.as_ref()?;
        if t < c.start {
            return Some(c.start);
        }
        let k = ((t - c.start) / c.period).floor();
        let base = c.start + c.period * Rat::int(k);
        let phase = t - base;
        let j = c.pattern.partition_point(|(o, _)| *o <= phase);
        Some(match c.pattern.get(j) {
            Some((o, _)) => base + *o,
            None => base + c.period,
        })
    }

    /// Greatest switch time strictly less than `t`.
    pub fn last_switch_before(&self, t: Rat) -> Option<Rat> {
        if let Some(c) = &self.cycle {
            if t > c.start {
                let k = ((t - c.start) / c.period).floor();
                let base = c.start + c.period * Rat::int(k);
                let phase = t - base;
                if phase.is_zero() {
                    return Some(base - c.period + c.last_offset());
                }
                let i = c.pattern.partition_point(|(o, _)| *o < phase);
                return Some(base + c.pattern[i - 1].0);
            }
        }
        let i = self.transient.partition_point(|(s, _)| *s < t);
        (i > 0).then(|| self.transient[i - 1].0)
    }

    /// All switch times in `[lo, hi)`, ascending.
    pub fn switches_in(&self, lo: Rat, hi: Rat) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .transient
            .iter()
            .map(|(t, _)| *t)
            .filter(|t| *t >= lo && *t < hi)
            .collect();
        if let Some(c) = &self.cycle {
            let mut k = if lo > c.start {
                ((lo - c.start) / c.period).floor()
            } else {
                0
            };
            loop {
                let base = c.start + c.period * Rat::int(k);
                if base >= hi {
                    break;
                }
                out.extend(
                    c.pattern
                        .iter()
                        .map(|(o, _)| base + *o)
                        .filter(|t| *t >= lo && *t < hi),
                );
                k += 1;
            }
        }
        out
    }

    /// All switch times strictly below `hi`.
    pub fn switches_below(&self, hi: Rat) -> Vec<Rat> {
        match self.first_switch() {
            Some(first) => self.switches_in(first, hi),
            None => Vec::new(),
        }
    }

    /// Every stored value (initial, transient and pattern).
    pub fn values(&self) -> impl Iterator<Item = &V> {
        std::iter::once(&self.init)
            .chain(self.transient.iter().map(|(_, v)| v))
            .chain(
                self.cycle
                    .iter()
                    .flat_map(|c| c.pattern.iter().map(|(_, v)| v)),
            )
    }

    /// Common denominator of every stored time, offset and period.
    pub fn time_denominator(&self) -> i128 {
        let mut times: Vec<Rat> = self.transient.iter().map(|(t, _)| *t).collect();
        if let Some(c) = &self.cycle {
            times.push(c.start);
            times.push(c.period);
            times.extend(c.pattern.iter().map(|(o, _)| *o));
        }
        common_denominator(&times)
    }

    pub fn map<W: Clone + Eq>(&self, mut f: impl FnMut(&V) -> W) -> StepFn<W> {
        StepFn::canonical(
            f(&self.init),
            self.transient.iter().map(|(t, v)| (*t, f(v))).collect(),
            self.cycle.as_ref().map(|c| c.map(&mut f)),
        )
    }

    /// Pointwise combination. Tails are aligned on the later of the two
    /// starts and the least common multiple of the periods.
    pub fn zip_with<W, U>(&self, other: &StepFn<W>, mut f: impl FnMut(&V, &W) -> U) -> StepFn<U>
    where
        W: Clone + Eq,
        U: Clone + Eq,
    {
        let last_self = self.transient.last().map(|(t, _)| *t);
        let last_other = other.transient.last().map(|(t, _)| *t);
        let tail = match (&self.cycle, &other.cycle) {
            (Some(a), Some(b)) => Some((a.start.max(b.start), a.period.lcm(b.period))),
            (Some(a), None) => Some((last_other.map_or(a.start, |t| a.start.max(t)), a.period)),
            (None, Some(b)) => Some((last_self.map_or(b.start, |t| b.start.max(t)), b.period)),
            (None, None) => None,
        };
        let init = f(&self.init, &other.init);
        match tail {
            None => {
                let mut times: Vec<Rat> = self
                    .transient
                    .iter()
                    .map(|(t, _)| *t)
                    .chain(other.transient.iter().map(|(t, _)| *t))
                    .collect();
                times.sort();
                times.dedup();
                let transient = times
                    .into_iter()
                    .map(|t| (t, f(self.eval(t), other.eval(t))))
                    .collect();
                StepFn::canonical(init, transient, None)
            }
            Some((start, period)) => {
                let end = start + period;
                let mut times = self.switches_below(end);
                times.extend(other.switches_below(end));
                times.push(start);
                times.sort();
                times.dedup();
                let mut transient = Vec::new();
                let mut pattern = Vec::new();
                for t in times {
                    let v = f(self.eval(t), other.eval(t));
                    if t < start {
                        transient.push((t, v));
                    } else {
                        pattern.push((t - start, v));
                    }
                }
                StepFn::canonical(init, transient, Some(Cycle::new(start, period, pattern)))
            }
        }
    }

    pub fn shift(&self, delta: Rat) -> Self {
        StepFn {
            init: self.init.clone(),
            transient: self
                .transient
                .iter()
                .map(|(t, v)| (*t + delta, v.clone()))
                .collect(),
            cycle: self.cycle.as_ref().map(|c| Cycle {
                start: c.start + delta,
                period: c.period,
                pattern: c.pattern.clone(),
            }),
        }
    }
}

/// Moves the cycle start forward to the second pattern entry.
/// Shortens a run-maximal pattern to its least period.
fn reduce_period<V: Clone + Eq>(period: Rat, pattern: &mut Vec<(Rat, V)>) -> Rat {
    let runs: Vec<(Rat, V)> = pattern
        .iter()
        .enumerate()
        .map(|(i, (o, v))| {
            let end = pattern.get(i + 1).map_or(period, |(next, _)| *next);
            (end - *o, v.clone())
        })
        .collect();
    let r = crate::upset::cyclic_word_period(&runs);
    pattern.truncate(r);
    runs[..r].iter().fold(Rat::ZERO, |acc, (len, _)| acc + *len)
}

fn rotate_once<V: Clone + Eq>(start: &mut Rat, period: Rat, pattern: &mut Vec<(Rat, V)>) {
    let u = pattern[1].0;
    let head = pattern[0].1.clone();
    let mut rotated: Vec<(Rat, V)> = pattern[1..]
        .iter()
        .map(|(o, v)| (*o - u, v.clone()))
        .collect();
    if rotated.last().unwrap().1 != head {
        rotated.push((period - u, head));
    }
    *start += u;
    *pattern = rotated;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn raw(
        init: u8,
        transient: &[(i128, u8)],
        cycle: Option<(i128, i128, &[(i128, u8)])>,
    ) -> StepFn<u8> {
        StepFn::new(
            init,
            transient.iter().map(|&(t, v)| (rat!(t), v)).collect(),
            cycle.map(|(s, p, pat)| {
                Cycle::new(
                    rat!(s),
                    rat!(p),
                    pat.iter().map(|&(o, v)| (rat!(o), v)).collect(),
                )
            }),
        )
        .unwrap()
    }

    fn samples(f: &StepFn<u8>, g: &StepFn<u8>) {
        for j in -40..120 {
            let t = Rat::new(j, 2);
            assert_eq!(f.eval(t), g.eval(t), "eval at {t}");
            assert_eq!(f.left_limit(t), g.left_limit(t), "left limit at {t}");
        }
    }

    #[test]
    fn wrap_merge_moves_cycle_start() {
        // pattern 1,0,1 with the last run continuing the first
        let f = raw(0, &[], Some((0, 6, &[(0, 1), (2, 0), (4, 1)])));
        let c = f.cycle().unwrap();
        assert_eq!(c.start, rat!(2));
        assert_eq!(c.pattern, vec![(rat!(0), 0), (rat!(2), 1)]);
        assert_eq!(f.transient(), &[(rat!(0), 1)]);
    }

    #[test]
    fn equal_boundary_value_rotates() {
        let f = raw(1, &[], Some((0, 4, &[(0, 1), (1, 0)])));
        let c = f.cycle().unwrap();
        assert_eq!(c.start, rat!(1));
        assert_eq!(c.pattern, vec![(rat!(0), 0), (rat!(3), 1)]);
        assert!(f.transient().is_empty());
    }

    #[test]
    fn constant_tail_folds() {
        let f = raw(0, &[(1, 1)], Some((3, 2, &[(0, 2), (1, 2)])));
        assert!(f.cycle().is_none());
        assert_eq!(f.transient(), &[(rat!(1), 1), (rat!(3), 2)]);
    }

    #[test]
    fn repeated_pattern_shrinks() {
        let f = raw(
            0,
            &[],
            Some((0, 6, &[(0, 1), (1, 0), (2, 1), (3, 0), (4, 1), (5, 0)])),
        );
        let c = f.cycle().unwrap();
        assert_eq!(c.period, rat!(2));
        assert_eq!(c.pattern, vec![(rat!(0), 1), (rat!(1), 0)]);
        let g = raw(0, &[], Some((0, 6, &[(0, 1), (1, 0), (2, 1), (4, 0)])));
        assert_eq!(g.cycle().unwrap().period, rat!(6));
    }

    #[test]
    fn canonicalization_preserves_values() {
        let cases: Vec<(u8, Vec<(i128, u8)>, Option<(i128, i128, Vec<(i128, u8)>)>)> = vec![
            (
                0,
                vec![(0, 0), (1, 1), (2, 1)],
                Some((4, 5, vec![(0, 1), (1, 1), (3, 0), (4, 1)])),
            ),
            (
                1,
                vec![(-3, 0), (-1, 1)],
                Some((0, 3, vec![(0, 1), (1, 0), (2, 1)])),
            ),
            (2, vec![], Some((0, 2, vec![(0, 2), (1, 2)]))),
        ];
        for (init, tr, cy) in cases {
            let transient: Vec<(Rat, u8)> = tr.iter().map(|&(t, v)| (rat!(t), v)).collect();
            let cycle = cy.map(|(s, p, pat)| {
                Cycle::new(
                    rat!(s),
                    rat!(p),
                    pat.iter().map(|&(o, v)| (rat!(o), v)).collect(),
                )
            });
            let naive = StepFn {
                init,
                transient: transient.clone(),
                cycle: cycle.clone(),
            };
            let canon = StepFn::new(init, transient, cycle).unwrap();
            samples(&naive, &canon);
            let again = StepFn::new(
                *canon.init(),
                canon.transient().to_vec(),
                canon.cycle().cloned(),
            )
            .unwrap();
            assert_eq!(again, canon);
        }
    }

    #[test]
    fn switch_navigation() {
        let f = raw(
            1,
            &[(0, 0), (1, 1), (2, 0)],
            Some((3, 5, &[(0, 1), (2, 0), (3, 1), (4, 0)])),
        );
        assert_eq!(f.next_switch(rat!(2)), Some(rat!(3)));
        assert_eq!(f.next_switch(rat!(7)), Some(rat!(8)));
        assert_eq!(f.next_switch(rat!(-5)), Some(rat!(0)));
        assert_eq!(f.last_switch_before(rat!(5)), Some(rat!(3)));
        assert_eq!(f.last_switch_before(rat!(8)), Some(rat!(7)));
        assert_eq!(f.last_switch_before(rat!(0)), None);
        assert_eq!(
            f.switches_in(rat!(1), rat!(9)),
            vec![
                rat!(1),
                rat!(2),
                rat!(3),
                rat!(5),
                rat!(6),
                rat!(7),
                rat!(8)
            ]
        );
    }

    #[test]
    fn validation_errors() {
        let e = StepFn::new(0u8, vec![(rat!(2), 1), (rat!(1), 0)], None);
        assert!(matches!(e, Err(Error::NonIncreasingTimes { .. })));
        let e = StepFn::new(
            0u8,
            vec![],
            Some(Cycle::new(rat!(0), rat!(0), vec![(rat!(0), 1)])),
        );
        assert!(matches!(e, Err(Error::NonPositivePeriod(_))));
        let e = StepFn::new(
            0u8,
            vec![],
            Some(Cycle::new(rat!(0), rat!(2), vec![(rat!(1), 1)])),
        );
        assert!(matches!(e, Err(Error::BadPattern(_))));
        let e = StepFn::new(
            0u8,
            vec![],
            Some(Cycle::new(
                rat!(0),
                rat!(2),
                vec![(rat!(0), 1), (rat!(2), 0)],
            )),
        );
        assert!(matches!(e, Err(Error::BadPattern(_))));
        let e = StepFn::new(
            0u8,
            vec![(rat!(3), 1)],
            Some(Cycle::new(rat!(3), rat!(2), vec![(rat!(0), 0)])),
        );
        assert!(matches!(e, Err(Error::NonIncreasingTimes { .. })));
    }
}
