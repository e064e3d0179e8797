use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;
use crate::error::Error;

/// Finite binary word labelling a vertex of the dyadic tree.
///
/// Words order breadth-first: shorter words first, then lexicographically.
/// That is the order in which the tree is swept everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    bits: Vec<bool>,
}

impl Word {
    /// The empty word, labelling `[0, 1]`.
    pub fn root() -> Word {
        Word { bits: Vec::new() }
    }

    pub fn from_bits(bits: Vec<bool>) -> Word {
        Word { bits }
    }

    /// `bit` repeated `n` times.
    pub fn repeat(bit: bool, n: usize) -> Word {
        Word { bits: vec![bit; n] }
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn is_root(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn child(&self, bit: bool) -> Word {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(bit);
        Word { bits }
    }

    pub fn children(&self) -> [Word; 2] {
        [self.child(false), self.child(true)]
    }

    pub fn parent(&self) -> Option<Word> {
        if self.bits.is_empty() {
            None
        } else {
            Some(Word {
                bits: self.bits[..self.bits.len() - 1].to_vec(),
            })
        }
    }

    pub fn last_bit(&self) -> Option<bool> {
        self.bits.last().copied()
    }

    pub fn sibling(&self) -> Option<Word> {
        let mut bits = self.bits.clone();
        let last = bits.last_mut()?;
        *last = !*last;
        Some(Word { bits })
    }

    /// The prefix of length `n` (`n` clamped to the depth).
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            bits: self.bits[..n.min(self.bits.len())].to_vec(),
        }
    }

    /// All prefixes from the root up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.bits.len()).map(move |n| self.prefix(n))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.bits.len() >= self.bits.len() && other.bits[..self.bits.len()] == self.bits[..]
    }

    pub fn concat(&self, tail: &Word) -> Word {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&tail.bits);
        Word { bits }
    }

    /// Binary value `k` of the word, so that the interval is `[k 2^{-n}, (k+1) 2^{-n}]`.
    pub fn value(&self) -> BigInt {
        let mut k = BigInt::zero();
        for &b in &self.bits {
            k <<= 1;
            if b {
                k += 1;
            }
        }
        k
    }

    /// Closed dyadic interval `[k 2^{-n}, (k+1) 2^{-n}]`.
    pub fn interval(&self) -> Interval {
        let n = self.depth() as u64;
        let k = self.value();
        let scale = BigInt::one() << n;
        let lo = Rat::from_big(k.clone(), scale.clone()).expect("nonzero scale");
        let hi = Rat::from_big(k + 1, scale).expect("nonzero scale");
        Interval { lo, hi }
    }

    /// Every word of length `n`, in increasing order.
    pub fn all_of_depth(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 32, "refusing to enumerate 2^{n} words");
        (0u64..(1u64 << n)).map(move |k| Word::from_bits((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
    }

    /// Every word of length at most `n`, breadth-first.
    pub fn all_up_to_depth(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_depth)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word, Error> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("not a binary word: {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from_bits)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn unit() -> Interval {
        Interval {
            lo: Rat::zero(),
            hi: Rat::one(),
        }
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::integer(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn interior_contains(&self, x: &Rat) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Closed intervals share at least one point.
    pub fn meets(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// The open interiors share a point.
    pub fn interiors_meet(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi && self.lo < self.hi && other.lo < other.hi
    }

    /// The open interior of `self` meets the closed interval `other`.
    pub fn interior_meets_closed(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
