use serde::Serialize;

use super::Permutation;
use crate::error::{Error, Result};

/// A standard parabolic subgroup `W' = S_{i_1} x ... x S_{i_r}` of `S_n`,
/// acting on consecutive blocks of `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParabolicData {
    n: usize,
    composition: Vec<usize>,
}

impl ParabolicData {
    pub fn new(composition: Vec<usize>) -> Result<Self> {
        if composition.is_empty() || composition.contains(&0) {
            return Err(Error::invalid(format!(
                "composition {composition:?} must have positive entries"
            )));
        }
        let n = composition.iter().sum();
        Ok(ParabolicData { n, composition })
    }

    /// Checks the composition against `n`.
    pub fn for_n(n: usize, composition: Vec<usize>) -> Result<Self> {
        let p = Self::new(composition)?;
        if p.n != n {
            return Err(Error::invalid(format!(
                "composition {:?} does not sum to {n}",
                p.composition
            )));
        }
        Ok(p)
    }

    /// `W'` trivial.
    pub fn trivial(n: usize) -> Self {
        ParabolicData {
            n,
            composition: vec![1; n],
        }
    }

    /// `W' = W`.
    pub fn full(n: usize) -> Self {
        ParabolicData {
            n,
            composition: vec![n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn composition(&self) -> &[usize] {
        &self.composition
    }

    /// `(offset, size)` of each block; positions `offset+1..=offset+size`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.composition.len());
        let mut offset = 0;
        for &k in &self.composition {
            out.push((offset, k));
            offset += k;
        }
        out
    }

    fn block_of_value(&self) -> Vec<usize> {
        let mut label = Vec::with_capacity(self.n);
        for (b, &k) in self.composition.iter().enumerate() {
            label.extend(std::iter::repeat_n(b, k));
        }
        label
    }

    /// True when `s_i` lies in `S'`.
    pub fn in_sprime(&self, i: usize) -> bool {
        let label = self.block_of_value();
        i >= 1 && i < self.n && label[i - 1] == label[i]
    }

    /// The generators `S'` of `W'`.
    pub fn sprime(&self) -> Vec<usize> {
        (1..self.n).filter(|&i| self.in_sprime(i)).collect()
    }

    /// True when `w` lies in `W'`.
    pub fn contains(&self, w: &Permutation) -> bool {
        let label = self.block_of_value();
        w.n() == self.n && (1..=self.n).all(|i| label[w.at(i) - 1] == label[i - 1])
    }

    /// True when `w` is the shortest element of its coset `W'w`.
    pub fn is_short(&self, w: &Permutation) -> bool {
        self.sprime().iter().all(|&i| !w.has_left_descent(i))
    }

    /// `(W' \ W)_short` in the order (length, lexicographic).
    pub fn short_reps(&self) -> Vec<Permutation> {
        // a short rep lists each block of values in increasing order
        let mut labels = self.block_of_value();
        let mut out = Vec::new();
        loop {
            let mut next_value: Vec<usize> = self.blocks().iter().map(|&(o, _)| o + 1).collect();
            let word: Vec<usize> = labels
                .iter()
                .map(|&b| {
                    let v = next_value[b];
                    next_value[b] += 1;
                    v
                })
                .collect();
            out.push(Permutation::from_one_line(&word).unwrap());
            if !next_multiset_permutation(&mut labels) {
                break;
            }
        }
        out.sort_by(|a, b| a.cmp_length_lex(b));
        out
    }

    /// The longest element `w'_0` of `W'`.
    pub fn longest_in_wprime(&self) -> Permutation {
        let mut w = Vec::with_capacity(self.n);
        for (o, k) in self.blocks() {
            w.extend((o + 1..=o + k).rev());
        }
        Permutation::from_one_line(&w).unwrap()
    }

    /// `(W' \ W)_long`: the longest element `w'_0 w` of each coset, in the
    /// order of [`Self::short_reps`].
    pub fn long_reps(&self) -> Vec<Permutation> {
        let w0p = self.longest_in_wprime();
        self.short_reps()
            .iter()
            .map(|w| w0p.compose(w).unwrap())
            .collect()
    }

    /// The longest short coset representative `w'_0 w_0`.
    pub fn longest_short(&self) -> Permutation {
        self.longest_in_wprime()
            .compose(&Permutation::longest(self.n))
            .unwrap()
    }

    /// The unique factorization `y = u w` with `u` in `W'` and `w` short;
    /// lengths add.
    pub fn decompose(&self, y: &Permutation) -> Result<(Permutation, Permutation)> {
        if y.n() != self.n {
            return Err(Error::size(format!("S_{} vs S_{}", y.n(), self.n)));
        }
        let label = self.block_of_value();
        let mut next_value: Vec<usize> = self.blocks().iter().map(|&(o, _)| o + 1).collect();
        let word: Vec<usize> = (1..=self.n)
            .map(|i| {
                let b = label[y.at(i) - 1];
                let v = next_value[b];
                next_value[b] += 1;
                v
            })
            .collect();
        let w = Permutation::from_one_line(&word)?;
        let u = y.compose(&w.inverse())?;
        Ok((u, w))
    }

    /// Shortest representatives of the left cosets `W / W'`: the inverses of
    /// [`Self::short_reps`], in the same order.
    pub fn left_reps(&self) -> Vec<Permutation> {
        self.short_reps().iter().map(Permutation::inverse).collect()
    }

    /// True when `w` is shortest in its left coset `wW'`.
    pub fn is_left_short(&self, w: &Permutation) -> bool {
        self.sprime().iter().all(|&i| !w.has_right_descent(i))
    }

    /// All elements of `W'` in the order (length, lexicographic).
    pub fn wprime_elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.n)];
        for (o, k) in self.blocks() {
            let group = super::SymGroup::new(k);
            let mut next = Vec::with_capacity(out.len() * group.order());
            for u in &out {
                for x in group.elements() {
                    let e = x.embed(o, self.n);
                    next.push(u.compose(&e).unwrap());
                }
            }
            out = next;
        }
        out.sort_by(|a, b| a.cmp_length_lex(b));
        out
    }
}

fn next_multiset_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All compositions of `n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Parses `2,1,3`.
pub fn parse_composition(s: &str) -> Result<Vec<usize>> {
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad composition entry {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::invalid("composition entries must be positive"));
    }
    Ok(parts)
}
