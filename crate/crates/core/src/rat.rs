//! Exact rational time coordinates.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(Ratio<i128>);

impl Rat {
    pub const ZERO: Rat = Rat(Ratio::new_raw(0, 1));
    pub const ONE: Rat = Rat(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        Rat(Ratio::new(numer, denom))
    }

    pub fn int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Greatest integer not above `self`.
    pub fn floor(&self) -> i128 {
        *self.0.floor().numer()
    }

    /// Least integer not below `self`.
    pub fn ceil(&self) -> i128 {
        *self.0.ceil().numer()
    }

    /// The representative of `self` modulo `m` in `[0, m)`. `m` must be positive.
    pub fn rem_euclid(&self, m: Rat) -> Rat {
        debug_assert!(m.is_positive());
        let q = (*self / m).floor();
        *self - m * Rat::int(q)
    }

    /// Least positive common multiple of two positive rationals.
    pub fn lcm(&self, other: Rat) -> Rat {
        debug_assert!(self.is_positive() && other.is_positive());
        Rat::new(
            self.numer().lcm(&other.numer()),
            self.denom().gcd(&other.denom()),
        )
    }

    /// Largest positive rational dividing both operands an integral number of times.
    pub fn gcd(&self, other: Rat) -> Rat {
        debug_assert!(self.is_positive() && other.is_positive());
        Rat::new(
            self.numer().gcd(&other.numer()),
            self.denom().lcm(&other.denom()),
        )
    }

    /// `self / other` when it is an integer.
    pub fn exact_multiple_of(&self, other: Rat) -> Option<i128> {
        let q = *self / other;
        q.is_integer().then(|| q.numer())
    }

    pub fn min(self, other: Rat) -> Rat {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Rat) -> Rat {
        std::cmp::max(self, other)
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty input).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rat>>(values: I) -> i128 {
    values.into_iter().fold(1, |acc, r| acc.lcm(&r.denom()))
}

impl From<i128> for Rat {
    fn from(n: i128) -> Self {
        Rat::int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Self {
        Rat::int(n as i128)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("empty rational")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p` or `p/q` with an optional sign on `p`. Decimals are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatError::Empty);
        }
        let int = |part: &str, signed: bool| -> Result<i128, ParseRatError> {
            let digits = if signed {
                part.strip_prefix(['-', '+']).unwrap_or(part)
            } else {
                part
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRatError::BadInteger(part.to_string()));
            }
            part.parse::<i128>()
                .map_err(|_| ParseRatError::BadInteger(part.to_string()))
        };
        match s.split_once('/') {
            None => Ok(Rat::int(int(s, true)?)),
            Some((p, q)) => {
                let p = int(p, true)?;
                let q = int(q, false)?;
                if q == 0 {
                    return Err(ParseRatError::ZeroDenominator);
                }
                Ok(Rat::new(p, q))
            }
        }
    }
}

/// `Rat` literal helper: `rat!(3)` or `rat!(-7, 2)`.
#[macro_export]
macro_rules! rat {
    ($n:expr) => {
        $crate::Rat::int($n)
    };
    ($n:expr, $d:expr) => {
        $crate::Rat::new($n, $d)
    };
}
