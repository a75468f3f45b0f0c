//! Brute-force evaluation of the periodic-point definition.
//!
//! Everything here samples `x` pointwise on a finite grid and enumerates the
//! shifts `t + zT` literally. It does not touch [`UpSet`](crate::UpSet) or
//! the periodicity module, so it can serve as an independent reference.
//!
//! Sampling is exact: with `D` the common denominator of every stored time
//! of `x`, of `T` and of `t′`, all breakpoints of `x` and of `x(· + zT)`
//! lie on the grid `1/D`, so the grid `1/(2D)` hits every breakpoint and one
//! interior point of every segment. A violation of the shift condition
//! implies one between two consecutive points `u, u + T` of a chain; the
//! pair's membership pattern is periodic in `u` past the tail start, so a
//! window of one tail period plus `T` above `max(t′, tail start)` contains
//! a witness whenever one exists.

use crate::bits::BinaryVector;
use crate::error::Error;
use crate::rat::Rat;
use crate::signal::UpSignal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Tail periods enumerated beyond the point where `x` becomes periodic.
    pub horizon_periods: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { horizon_periods: 3 }
    }
}

impl OracleConfig {
    pub fn with_horizon(horizon_periods: u32) -> Self {
        assert!(horizon_periods > 0, "horizon must be positive");
        OracleConfig { horizon_periods }
    }
}

/// The sampled window `[tprime, horizon)` on the grid `step`.
struct Window {
    tprime: Rat,
    step: Rat,
    len: usize,
}

impl Window {
    fn new(x: &UpSignal, period: Rat, tprime: Rat, cfg: OracleConfig) -> Self {
        let d = x
            .time_denominator()
            .lcm_with(period.denom())
            .lcm_with(tprime.denom());
        let step = Rat::new(1, 2 * d);
        let tail_period = x.cycle().map_or(Rat::ONE, |c| c.period);
        let horizon = tprime.max(x.tail_start())
            + tail_period * Rat::int(cfg.horizon_periods as i128)
            + period
            + Rat::ONE;
        let len = ((horizon - tprime) / step).ceil() as usize;
        Window { tprime, step, len }
    }

    fn point(&self, j: usize) -> Rat {
        self.tprime + self.step * Rat::int(j as i128)
    }
}

trait LcmWith {
    fn lcm_with(self, other: i128) -> i128;
}

impl LcmWith for i128 {
    fn lcm_with(self, other: i128) -> i128 {
        num_integer::Integer::lcm(&self, &other)
    }
}

fn in_orbit(x: &UpSignal, mu: &BinaryVector) -> Result<(), Error> {
    if mu.width() != x.width() {
        return Err(Error::WidthMismatch {
            expected: x.width(),
            found: mu.width(),
        });
    }
    if x.orbit().contains(mu) {
        Ok(())
    } else {
        Err(Error::NotInOrbit)
    }
}

/// `(-∞, t′] ⊆ T^x_{x(-∞+0)}`, by sampling every grid point from below the
/// first stored time up to `t′`.
fn initial_ray_sampled(x: &UpSignal, tprime: Rat, step: Rat) -> bool {
    let init = x.initial_value();
    let floor = x.first_switch().map_or(tprime, |t| t.min(tprime)) - Rat::ONE;
    let mut t = tprime;
    while t >= floor {
        if x.eval(t) != init {
            return false;
        }
        t -= step;
    }
    true
}

/// Evaluates both conditions of the definition directly.
pub fn oracle_check(
    x: &UpSignal,
    mu: &BinaryVector,
    period: Rat,
    tprime: Rat,
    cfg: OracleConfig,
) -> Result<bool, Error> {
    if !period.is_positive() {
        return Err(Error::NonPositivePeriod(period));
    }
    in_orbit(x, mu)?;
    let window = Window::new(x, period, tprime, cfg);
    if !initial_ray_sampled(x, tprime, window.step) {
        return Ok(false);
    }
    let in_fiber: Vec<bool> = (0..window.len)
        .map(|j| x.eval(window.point(j)) == mu)
        .collect();
    let shift = (period / window.step).numer() as i64;
    let n = window.len as i64;
    let z_bound = n / shift + 1;
    for (j, &member) in in_fiber.iter().enumerate() {
        if !member {
            continue;
        }
        for z in -z_bound..=z_bound {
            let k = j as i64 + z * shift;
            // t + zT ∈ [t′, horizon)
            if (0..n).contains(&k) && !in_fiber[k as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least `q ≥ 1` with `word[i] = word[(i + q) mod n]` for every `i`.
pub fn oracle_min_word_period<T: Eq>(word: &[T]) -> Result<usize, Error> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    Ok((1..=n)
        .find(|&q| (0..n).all(|i| word[i] == word[(i + q) % n]))
        .expect("q = n always works"))
}

/// Whether some `t′` works for this `T`.
///
/// Every admissible `t′` lies below the first switch `t0`, and the
/// constraints for a smaller `t′` include those for a larger one. The
/// admissible set is therefore an interval ending at `t0` whose lower end
/// lies on the grid `1/D`, and it is non-empty iff the grid point just below
/// `t0` is accepted.
fn some_tprime_accepted(x: &UpSignal, mu: &BinaryVector, period: Rat, cfg: OracleConfig) -> bool {
    let t0 = x.first_switch().expect("non-constant signal");
    let d = x.time_denominator().lcm_with(period.denom());
    let step = Rat::new(1, 2 * d);
    oracle_check(x, mu, period, t0 - step, cfg).unwrap_or(false)
}

/// Least accepted `T`, or `None` when `μ` is not periodic, not in the
/// orbit, or `x` is constant (every `T` works, so there is no least one).
///
/// Candidate periods are the multiples of the least period of the sampled
/// tail word of the fiber. When the fiber has no periodic tail the scan
/// falls back to every grid value of `T` up to a bound past the tail start.
pub fn oracle_prime_period(x: &UpSignal, mu: &BinaryVector, cfg: OracleConfig) -> Option<Rat> {
    if in_orbit(x, mu).is_err() || x.is_constant() {
        return None;
    }
    let t0 = x.first_switch().expect("non-constant signal");
    let d = x.time_denominator();
    let tail_word: Option<(Vec<bool>, Rat)> = x.cycle().map(|c| {
        let step = Rat::new(1, d);
        let len = (c.period / step).numer() as usize;
        let word = (0..len)
            .map(|i| x.eval(c.start + step * Rat::int(i as i128)) == mu)
            .collect();
        (word, c.start)
    });
    match tail_word {
        Some((word, start)) if word.iter().any(|&b| b) && word.iter().any(|&b| !b) => {
            let p = Rat::new(oracle_min_word_period(&word).unwrap() as i128, d);
            let span = (start - t0).max(Rat::ZERO);
            let k_max = (span / p).ceil() + 2 + cfg.horizon_periods as i128;
            (1..=k_max)
                .map(|k| p * Rat::int(k))
                .find(|&period| some_tprime_accepted(x, mu, period, cfg))
        }
        _ => {
            let tail_period = x.cycle().map_or(Rat::ONE, |c| c.period);
            let bound =
                (x.tail_start() - t0).max(Rat::ZERO) + tail_period * Rat::int(2) + Rat::int(2);
            let step = Rat::new(1, 2 * d);
            let count = (bound / step).ceil();
            (1..=count)
                .map(|j| step * Rat::int(j))
                .find(|&period| some_tprime_accepted(x, mu, period, cfg))
        }
    }
}
