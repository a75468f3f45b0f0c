//! Random signal generators shared by the integration targets.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sigperiod::{rat, BinaryVector, Cycle, Rat, UpSignal};

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_width: usize,
    pub max_transient: usize,
    pub max_pattern: usize,
    pub max_den: i128,
    pub cycle_prob: f64,
}

pub const SMALL: Shape = Shape {
    max_width: 2,
    max_transient: 6,
    max_pattern: 5,
    max_den: 4,
    cycle_prob: 0.85,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn b(s: &str) -> BinaryVector {
    s.parse().unwrap()
}

pub fn xstar() -> UpSignal {
    sigperiod::parse_chi_expr(
        "chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) repeat start=3 period=5",
    )
    .unwrap()
}

pub fn vector(rng: &mut StdRng, width: usize) -> BinaryVector {
    BinaryVector::new((0..width).map(|_| rng.gen_bool(0.5)).collect()).unwrap()
}

/// A positive multiple of `1/d`, at most 2.
pub fn step(rng: &mut StdRng, d: i128) -> Rat {
    Rat::new(rng.gen_range(1..=2 * d), d)
}

/// A multiple of `1/d` in `[-span, span]`.
pub fn time(rng: &mut StdRng, d: i128, span: i128) -> Rat {
    Rat::new(rng.gen_range(-span * d..=span * d), d)
}

pub fn signal(rng: &mut StdRng, shape: Shape) -> UpSignal {
    let width = rng.gen_range(1..=shape.max_width);
    let d = rng.gen_range(1..=shape.max_den);
    let init = vector(rng, width);
    let mut t = time(rng, d, 2);
    let transient: Vec<(Rat, BinaryVector)> = (0..rng.gen_range(0..=shape.max_transient))
        .map(|_| {
            let item = (t, vector(rng, width));
            t += step(rng, d);
            item
        })
        .collect();
    let cycle = rng.gen_bool(shape.cycle_prob).then(|| {
        let mut offset = Rat::ZERO;
        let pattern: Vec<(Rat, BinaryVector)> = (0..rng.gen_range(1..=shape.max_pattern))
            .map(|_| {
                let item = (offset, vector(rng, width));
                offset += step(rng, d);
                item
            })
            .collect();
        Cycle::new(t, offset, pattern)
    });
    UpSignal::new(init, transient, cycle).unwrap()
}

pub fn nonconstant_signal(rng: &mut StdRng, shape: Shape) -> UpSignal {
    loop {
        let x = signal(rng, shape);
        if !x.is_constant() {
            return x;
        }
    }
}

/// A signal whose fiber of `μ` is exactly
/// `(-∞,t0) ∪ [t1,t0+T) ∪ [t1+T,t0+2T) ∪ …`, with the gaps filled by
/// arbitrary other values. Returns `(x, μ, t0, t1, T)`.
pub fn canonical_fixture(
    rng: &mut StdRng,
    max_den: i128,
    max_period: i128,
) -> (UpSignal, BinaryVector, Rat, Rat, Rat) {
    let width = rng.gen_range(1..=2);
    let mu = vector(rng, width);
    let others: Vec<BinaryVector> = (0..1usize << width)
        .map(|i| BinaryVector::from_index(i as u64, width))
        .filter(|v| *v != mu)
        .collect();
    let d = rng.gen_range(1..=max_den);
    let t0 = Rat::new(rng.gen_range(-3 * d..=3 * d), d);
    let n = rng.gen_range(2..=max_period * d);
    let period = Rat::new(n, d);
    let t1 = t0 + Rat::new(rng.gen_range(1..n), d);
    // Fill a gap [lo, hi) with up to three segments of values other than μ.
    let fill = |rng: &mut StdRng, lo: Rat, hi: Rat, origin: Rat| -> Vec<(Rat, BinaryVector)> {
        let ticks = ((hi - lo) * Rat::int(d)).numer();
        let mut cuts: Vec<i128> = (0..rng.gen_range(0..=2))
            .map(|_| rng.gen_range(1..=ticks))
            .collect();
        cuts.push(0);
        cuts.sort_unstable();
        cuts.dedup();
        cuts.into_iter()
            .filter(|&k| k < ticks)
            .map(|k| {
                (
                    lo + Rat::new(k, d) - origin,
                    others.choose(rng).unwrap().clone(),
                )
            })
            .collect()
    };
    let transient = fill(rng, t0, t1, Rat::ZERO);
    let mut pattern = vec![(Rat::ZERO, mu.clone())];
    pattern.extend(fill(rng, t0 + period, t1 + period, t1));
    let x = UpSignal::new(mu.clone(), transient, Some(Cycle::new(t1, period, pattern))).unwrap();
    (x, mu, t0, t1, period)
}

/// A signal whose initial value reappears as the last value of a cycle
/// starting at the first switch, so that the initial value is periodic.
pub fn periodic_fixture(rng: &mut StdRng, max_den: i128) -> UpSignal {
    loop {
        let width = rng.gen_range(1..=2);
        let init = vector(rng, width);
        let d = rng.gen_range(1..=max_den);
        let t0 = time(rng, d, 2);
        let mut offset = Rat::ZERO;
        let mut pattern: Vec<(Rat, BinaryVector)> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let item = (offset, vector(rng, width));
                offset += step(rng, d);
                item
            })
            .collect();
        pattern.push((offset, init.clone()));
        let period = offset + step(rng, d);
        let x = UpSignal::new(init, vec![], Some(Cycle::new(t0, period, pattern))).unwrap();
        if !x.is_constant() {
            return x;
        }
    }
}

/// Sample times around the interesting part of `x`.
pub fn sample_times(x: &UpSignal, extra: Rat) -> Vec<Rat> {
    let d = 2 * x.time_denominator();
    let lo = x.first_switch().unwrap_or(Rat::ZERO) - rat!(3);
    let hi = x.tail_start() + x.cycle().map_or(Rat::ONE, |c| c.period) * rat!(3) + extra;
    let n = ((hi - lo) * Rat::int(d)).ceil();
    (0..=n).map(|k| lo + Rat::new(k, d)).collect()
}
