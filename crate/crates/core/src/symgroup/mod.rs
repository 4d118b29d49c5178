//! The symmetric group `S_n` as a Coxeter group with generators
//! `s_1, ..., s_{n-1}`, together with partitions, tableaux and characters.
//!
//! Conventions: permutations compose as functions, `(xy)(i) = x(y(i))`.
//! Right multiplication by `s_i` swaps positions `i, i+1` of the one-line
//! word; left multiplication swaps the values `i, i+1`. Generator indices are
//! 1-based everywhere.

mod group;
mod parabolic;
mod partition;
mod tableau;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use group::SymGroup;
pub use parabolic::{compositions, parse_composition, ParabolicData};
pub use partition::{
    class_size, class_word, factorial, mn_character, parse_partition, partitions, Partition,
};
pub use tableau::{knuth_neighbors, rsk, StandardTableau};

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    w: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "n too large");
        Permutation {
            w: (1..=n as u8).collect(),
        }
    }

    /// Validates a one-line word.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::invalid("empty permutation"));
        }
        if n > u8::MAX as usize {
            return Err(Error::invalid("permutation too long"));
        }
        let mut seen = vec![false; n];
        for &x in one_line {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::invalid(format!(
                    "{one_line:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            w: one_line.iter().map(|&x| x as u8).collect(),
        })
    }

    /// The simple reflection `s_i` of `S_n` (1-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "generator s_{i} does not exist in S_{n}");
        let mut p = Self::identity(n);
        p.w.swap(i - 1, i);
        p
    }

    /// The product `s_{word[0]} s_{word[1]} ...`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::invalid(format!(
                    "generator s_{i} does not exist in S_{n}"
                )));
            }
            p.w.swap(i - 1, i);
        }
        Ok(p)
    }

    /// The longest element `w_0`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            w: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.w[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.w.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.w.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.w.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.w[i] > self.w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `self * other` as functions: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::size(format!("S_{} vs S_{}", self.n(), other.n())));
        }
        Ok(Permutation {
            w: other.w.iter().map(|&j| self.w[j as usize - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut w = vec![0u8; self.w.len()];
        for (i, &x) in self.w.iter().enumerate() {
            w[x as usize - 1] = i as u8 + 1;
        }
        Permutation { w }
    }

    /// `self * s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Permutation {
        let mut p = self.clone();
        p.w.swap(i - 1, i);
        p
    }

    /// `s_i * self`.
    pub fn mul_simple_left(&self, i: usize) -> Permutation {
        let a = i as u8;
        Permutation {
            w: self
                .w
                .iter()
                .map(|&x| {
                    if x == a {
                        a + 1
                    } else if x == a + 1 {
                        a
                    } else {
                        x
                    }
                })
                .collect(),
        }
    }

    /// `self * s_i < self`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.w[i - 1] > self.w[i]
    }

    /// `s_i * self < self`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let a = self.w.iter().position(|&x| x as usize == i).unwrap();
        let b = self.w.iter().position(|&x| x as usize == i + 1).unwrap();
        b < a
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.has_right_descent(i))
            .collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.has_left_descent(i))
            .collect()
    }

    /// `(D_L(w), D_R(w))` as 1-based generator indices.
    pub fn descents(&self) -> (Vec<usize>, Vec<usize>) {
        (self.left_descents(), self.right_descents())
    }

    /// A reduced word, built by repeatedly stripping the largest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..w.n()).rev().find(|&i| w.has_right_descent(i)) {
            word.push(i);
            w = w.mul_simple_right(i);
        }
        word.reverse();
        word
    }

    /// Bruhat order by the dot criterion: for all `i, j`,
    /// `#{k <= i : x(k) >= j} <= #{k <= i : y(k) >= j}`.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        let n = self.n();
        if n != other.n() {
            return Err(Error::size(format!("S_{} vs S_{}", n, other.n())));
        }
        let mut cx = vec![0i32; n + 2];
        let mut cy = vec![0i32; n + 2];
        for i in 0..n {
            // cx[j] = #{k <= i : x(k) >= j}
            for c in &mut cx[1..=self.w[i] as usize] {
                *c += 1;
            }
            for c in &mut cy[1..=other.w[i] as usize] {
                *c += 1;
            }
            if (1..=n).any(|j| cx[j] > cy[j]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Block-diagonal embedding into `S_{offset + self.n() + tail}`.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        let mut p = Permutation::identity(total);
        for (i, &x) in self.w.iter().enumerate() {
            p.w[offset + i] = x + offset as u8;
        }
        p
    }

    /// Restriction to the positions `offset+1..=offset+k`, assuming they are
    /// mapped onto themselves.
    pub fn restrict(&self, offset: usize, k: usize) -> Option<Permutation> {
        let w: Vec<u8> = self.w[offset..offset + k]
            .iter()
            .map(|&x| {
                x.checked_sub(offset as u8)
                    .filter(|&y| y >= 1 && y as usize <= k)
            })
            .collect::<Option<_>>()?;
        Some(Permutation { w })
    }

    /// Cycle type as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.w[i] as usize - 1;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("cycle lengths form a partition")
    }

    /// Order used for bases: length first, then lexicographic one-line word.
    pub fn cmp_length_lex(&self, other: &Permutation) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.w.cmp(&other.w))
    }
}

/// Lexicographic order of one-line words.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.w.cmp(&other.w)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Comma-separated one-line word.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.w.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Accepts `2,1,3` or, for `n <= 9`, the compact form `213`.
impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad permutation entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::invalid(format!("bad permutation entry {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(&entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.w.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}
