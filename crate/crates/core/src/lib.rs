//! Exact periodicity analysis for ultimately periodic binary signals.
//!
//! A signal is a right-continuous step function `ℝ → {0,1}^n` with finitely
//! many switches before it repeats. Times are exact rationals. The crate
//! decides whether a value `μ` is a periodic point of a signal, finds its
//! prime period, and computes the admissible range of the anchor `t′`.
//!
//! ```
//! use sigperiod::{prime_period, rat, sigfmt, PeriodicityVerdict};
//!
//! let x = sigfmt::parse_chi_expr(
//!     "chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) repeat start=3 period=5",
//! )
//! .unwrap();
//! let mu = "1".parse().unwrap();
//! match prime_period(&x, &mu) {
//!     PeriodicityVerdict::Prime { period, admissible_tprime } => {
//!         assert_eq!(period, rat!(5));
//!         assert_eq!((admissible_tprime.lo, admissible_tprime.hi), (rat!(-2), rat!(0)));
//!     }
//!     other => panic!("{other:?}"),
//! }
//! ```

pub mod bits;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod periodicity;
pub mod rat;
pub mod sigfmt;
pub mod signal;
mod step;
pub mod upset;

pub use bits::BinaryVector;
pub use error::Error;
pub use oracle::{oracle_check, oracle_min_word_period, oracle_prime_period, OracleConfig};
pub use periodicity::{
    candidate_multiples, canonical_union, check_periodic_point, check_theorem76, derive_t0_t1,
    detect_canonical_fiber, lemma8_closure, prime_period, valid_tprime_interval,
    PeriodicityVerdict, TPrimeRange, Theorem76Report,
};
pub use rat::{ParseRatError, Rat};
pub use sigfmt::{parse_chi_expr, ParseError};
pub use signal::{make_signal, UpSignal};
pub use step::Cycle;
pub use upset::{cyclic_word_period, EventualPeriod, Extended, Interval, Tail, UpSet};
