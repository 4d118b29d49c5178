use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The single-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=first)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// `sum_i parts[i]^2`.
    pub fn square_sum(&self) -> usize {
        self.parts.iter().map(|p| p * p).sum()
    }

    /// `self ⊴ other`: every prefix sum of `self` is at most that of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::size(format!(
                "partitions of {} and {}",
                self.n(),
                other.n()
            )));
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict dominance.
    pub fn dominance_lt(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominance_leq(other)?)
    }

    /// True when neither partition dominates the other.
    pub fn incomparable(&self, other: &Partition) -> Result<bool> {
        Ok(!self.dominance_leq(other)? && !other.dominance_leq(self)?)
    }

    /// Number of standard tableaux of this shape, by the hook length formula.
    pub fn num_standard_tableaux(&self) -> u128 {
        let t = self.transpose();
        let mut num: u128 = factorial(self.n());
        let mut den: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = row - j + t.parts[j] - i - 1;
                den *= hook as u128;
            }
        }
        num /= den;
        num
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All partitions of `n` in decreasing lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the conjugacy class of cycle type `mu`: `n! / z_mu`.
pub fn class_size(mu: &Partition) -> u128 {
    let mut z: u128 = 1;
    let mut i = 0;
    while i < mu.parts.len() {
        let p = mu.parts[i];
        let m = mu.parts[i..].iter().take_while(|&&q| q == p).count();
        z *= (p as u128).pow(m as u32) * factorial(m);
        i += m;
    }
    factorial(mu.n()) / z
}

/// A minimal-length generator word for a permutation of cycle type `mu`:
/// consecutive generators inside each block of consecutive positions.
pub fn class_word(mu: &Partition) -> Vec<usize> {
    let mut word = Vec::new();
    let mut start = 1;
    for &p in &mu.parts {
        word.extend(start..start + p - 1);
        start += p;
    }
    word
}

/// Irreducible character `chi^lambda` on the class of cycle type `mu`, by
/// the Murnaghan-Nakayama rule on beta-sets.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::size(format!(
            "character of S_{} on a class of S_{}",
            lambda.n(),
            mu.n()
        )));
    }
    let k = lambda.len();
    // beta numbers lambda_i + (k - i), strictly decreasing
    let beta: Vec<usize> = lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + k - 1 - i)
        .collect();
    Ok(mn_rec(&beta, &mu.parts))
}

fn mn_rec(beta: &[usize], hooks: &[usize]) -> i64 {
    let Some((&r, rest)) = hooks.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.to_vec();
        next[idx] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&next, rest);
    }
    total
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses `3,1,1`; parts must already be weakly decreasing.
pub fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad partition part {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        return Err(Error::invalid("empty partition"));
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{Permutation, SymGroup};

    fn pt(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=12).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(3), vec![pt(&[3]), pt(&[2, 1]), pt(&[1, 1, 1])]);
    }

    #[test]
    fn dominance_examples() {
        for n in 1..=6 {
            for p in partitions(n) {
                assert!(p.dominance_leq(&Partition::row(n)).unwrap());
                assert!(Partition::column(n).dominance_leq(&p).unwrap());
            }
        }
        assert!(pt(&[3, 3]).incomparable(&pt(&[4, 1, 1])).unwrap());
        assert!(pt(&[4, 3]).incomparable(&pt(&[5, 1, 1])).unwrap());
        assert!(!pt(&[4, 3]).dominance_leq(&pt(&[5, 1, 1])).unwrap());
        assert!(pt(&[2, 1]).dominance_leq(&pt(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn transpose_and_hooks() {
        assert_eq!(pt(&[3, 1]).transpose(), pt(&[2, 1, 1]));
        for n in 1..=7 {
            for p in partitions(n) {
                assert_eq!(p.transpose().transpose(), p);
            }
        }
        assert_eq!(pt(&[2, 1]).num_standard_tableaux(), 2);
        assert_eq!(pt(&[3, 2]).num_standard_tableaux(), 5);
        assert_eq!(pt(&[3, 2, 1]).num_standard_tableaux(), 16);
    }

    #[test]
    fn character_examples() {
        for n in 1..=6 {
            for mu in partitions(n) {
                assert_eq!(mn_character(&Partition::row(n), &mu).unwrap(), 1);
                let sign = if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&Partition::column(n), &mu).unwrap(), sign);
            }
        }
        let l = pt(&[2, 1]);
        let vals: Vec<i64> = [pt(&[1, 1, 1]), pt(&[2, 1]), pt(&[3])]
            .iter()
            .map(|mu| mn_character(&l, mu).unwrap())
            .collect();
        assert_eq!(vals, vec![2, 0, -1]);
        assert!(mn_character(&l, &pt(&[2, 2])).is_err());
    }

    /// Character of the permutation module on row tabloids of shape `lambda`:
    /// the number of tabloids fixed by a permutation of cycle type `mu`.
    fn tabloid_character(lambda: &Partition, w: &Permutation) -> i64 {
        let n = lambda.n();
        // a tabloid is a row assignment of each letter
        let mut count = 0;
        let total = lambda.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let rows: Vec<usize> = (0..n)
                .map(|_| {
                    let r = c % lambda.len();
                    c /= lambda.len();
                    r
                })
                .collect();
            let sizes_ok = (0..lambda.len())
                .all(|r| rows.iter().filter(|&&x| x == r).count() == lambda.parts()[r]);
            if sizes_ok && (1..=n).all(|i| rows[w.at(i) - 1] == rows[i - 1]) {
                count += 1;
            }
        }
        count
    }

    /// Young's rule oracle: the tabloid character decomposes with Kostka
    /// multiplicities, so it is upper unitriangular in dominance order.
    #[test]
    fn characters_match_tabloid_oracle() {
        for n in 1..=5 {
            let parts = partitions(n);
            let g = SymGroup::new(n);
            for lambda in &parts {
                let perm_char: Vec<i64> = parts
                    .iter()
                    .map(|mu| {
                        let w = Permutation::from_word(n, &class_word(mu)).unwrap();
                        assert_eq!(w.cycle_type(), *mu);
                        tabloid_character(lambda, &w)
                    })
                    .collect();
                // multiplicity of chi^nu in the tabloid character
                for nu in &parts {
                    let mut m: i128 = 0;
                    for (k, mu) in parts.iter().enumerate() {
                        m += class_size(mu) as i128
                            * perm_char[k] as i128
                            * mn_character(nu, mu).unwrap() as i128;
                    }
                    assert_eq!(m % g.order() as i128, 0);
                    let m = m / g.order() as i128;
                    if nu == lambda {
                        assert_eq!(m, 1);
                    } else if !lambda.dominance_leq(nu).unwrap() {
                        assert_eq!(m, 0, "{nu} in M^{lambda}");
                    } else {
                        assert!(m >= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_identity() {
        for n in 1..=7 {
            let e = Partition::column(n);
            let sum: i128 = partitions(n)
                .iter()
                .map(|l| {
                    let d = mn_character(l, &e).unwrap() as i128;
                    assert_eq!(d as u128, l.num_standard_tableaux());
                    d * d
                })
                .sum();
            assert_eq!(sum as u128, factorial(n));
            let classes: u128 = partitions(n).iter().map(class_size).sum();
            assert_eq!(classes, factorial(n));
        }
    }
}
