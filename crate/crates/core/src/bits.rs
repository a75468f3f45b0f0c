use std::fmt;
use std::ops::{BitAnd, BitXor};
use std::str::FromStr;

use crate::error::Error;

/// A point of `B^n`: the value of an `n`-bit signal at some instant.
///
/// Written as a bit string, most significant coordinate first; `"10"` has
/// coordinate 0 equal to 1 and coordinate 1 equal to 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryVector {
    bits: Vec<bool>,
}

impl BinaryVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, Error> {
        if bits.is_empty() {
            return Err(Error::ZeroWidth);
        }
        Ok(BinaryVector { bits })
    }

    pub fn zeros(width: usize) -> Self {
        assert!(width > 0, "width must be positive");
        BinaryVector {
            bits: vec![false; width],
        }
    }

    pub fn ones(width: usize) -> Self {
        assert!(width > 0, "width must be positive");
        BinaryVector {
            bits: vec![true; width],
        }
    }

    /// The single-bit vector `b`.
    pub fn bit(b: bool) -> Self {
        BinaryVector { bits: vec![b] }
    }

    /// The `width`-bit vector whose coordinate `i` is bit `width-1-i` of `value`.
    pub fn from_index(value: u64, width: usize) -> Self {
        assert!(width > 0 && width <= 64, "width must be in 1..=64");
        let bits = (0..width)
            .map(|i| (value >> (width - 1 - i)) & 1 == 1)
            .collect();
        BinaryVector { bits }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    fn check_width(&self, other: &BinaryVector) -> Result<(), Error> {
        if self.width() != other.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                found: other.width(),
            });
        }
        Ok(())
    }

    /// Componentwise modulo-2 sum.
    pub fn xor(&self, other: &BinaryVector) -> Result<BinaryVector, Error> {
        self.check_width(other)?;
        Ok(BinaryVector {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Componentwise product.
    pub fn and(&self, other: &BinaryVector) -> Result<BinaryVector, Error> {
        self.check_width(other)?;
        Ok(BinaryVector {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        })
    }

    pub fn not(&self) -> BinaryVector {
        BinaryVector {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }
}

impl BitXor for &BinaryVector {
    type Output = BinaryVector;

    /// Panics on width mismatch; use [`BinaryVector::xor`] for a checked variant.
    fn bitxor(self, rhs: &BinaryVector) -> BinaryVector {
        self.xor(rhs).expect("width mismatch in ⊕")
    }
}

impl BitAnd for &BinaryVector {
    type Output = BinaryVector;

    fn bitand(self, rhs: &BinaryVector) -> BinaryVector {
        self.and(rhs).expect("width mismatch in ·")
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"{self}\"")
    }
}

impl FromStr for BinaryVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadBits(format!("unexpected character `{other}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BinaryVector::new(bits)
    }
}
