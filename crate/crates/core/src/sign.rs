use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Sign;

/// Largest supported number of entries.
pub const MAX_LEN: usize = 64;

/// A vector in `{-1, 0, +1}^n`, stored as two bit masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    len: u8,
    pos: u64,
    neg: u64,
}

impl SignVector {
    /// The all-zero vector of length `len`.
    pub fn zero(len: usize) -> Self {
        assert!(
            len <= MAX_LEN,
            "sign vectors support at most {MAX_LEN} entries"
        );
        SignVector {
            len: len as u8,
            pos: 0,
            neg: 0,
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = SignVector::zero(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            v.set(i, s);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        debug_assert!(i < self.len());
        let bit = 1u64 << i;
        if self.pos & bit != 0 {
            Sign::Positive
        } else if self.neg & bit != 0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len(), "index {i} out of range");
        let bit = 1u64 << i;
        self.pos &= !bit;
        self.neg &= !bit;
        match s {
            Sign::Positive => self.pos |= bit,
            Sign::Negative => self.neg |= bit,
            Sign::Zero => {}
        }
    }

    pub fn negated(&self) -> Self {
        SignVector {
            len: self.len,
            pos: self.neg,
            neg: self.pos,
        }
    }

    pub fn positive_count(&self) -> usize {
        self.pos.count_ones() as usize
    }

    pub fn negative_count(&self) -> usize {
        self.neg.count_ones() as usize
    }

    pub fn zero_count(&self) -> usize {
        self.len() - self.positive_count() - self.negative_count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn positive_mask(&self) -> u64 {
        self.pos
    }

    pub fn negative_mask(&self) -> u64 {
        self.neg
    }

    pub fn zero_mask(&self) -> u64 {
        let full = if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        };
        full & !(self.pos | self.neg)
    }

    fn indices(mask: u64) -> Vec<usize> {
        (0..64).filter(|i| mask & (1u64 << i) != 0).collect()
    }

    pub fn positive_set(&self) -> Vec<usize> {
        Self::indices(self.pos)
    }

    pub fn negative_set(&self) -> Vec<usize> {
        Self::indices(self.neg)
    }

    pub fn zero_set(&self) -> Vec<usize> {
        Self::indices(self.zero_mask())
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Applies a relabeling: entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let signs: Vec<Sign> = perm.iter().map(|&p| self.get(p)).collect();
        SignVector::from_signs(&signs)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.iter() {
            f.write_str(match s {
                Sign::Positive => "+",
                Sign::Negative => "-",
                Sign::Zero => "0",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '-' => Ok(Sign::Negative),
                '0' => Ok(Sign::Zero),
                other => Err(Error::InvalidParameter(format!(
                    "bad sign character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        if signs.len() > MAX_LEN {
            return Err(Error::InvalidParameter(format!(
                "sign vector longer than {MAX_LEN}"
            )));
        }
        Ok(SignVector::from_signs(&signs))
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        let v: SignVector = "+0--+".parse().unwrap();
        assert_eq!(v.positive_set(), vec![0, 4]);
        assert_eq!(v.zero_set(), vec![1]);
        assert_eq!(v.negative_set(), vec![2, 3]);
        assert_eq!(v.negated().to_string(), "-0++-");
        assert_eq!((v.zero_count(), v.negative_count()), (1, 2));
    }

    #[test]
    fn rejects_garbage() {
        assert!("+x".parse::<SignVector>().is_err());
    }
}
