use std::collections::HashMap;

use super::Permutation;

/// All of `S_n`, indexed in the order (length, lexicographic one-line word),
/// with multiplication tables for the simple reflections.
#[derive(Clone, Debug)]
pub struct SymGroup {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lengths: Vec<usize>,
    // right[w][i-1] = index of w * s_i
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl SymGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "S_0 is not supported");
        let mut elements = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            elements.push(Permutation::from_one_line(&current).unwrap());
            if !next_permutation(&mut current) {
                break;
            }
        }
        let mut keyed: Vec<(usize, Permutation)> =
            elements.into_iter().map(|p| (p.length(), p)).collect();
        keyed.sort();
        let lengths: Vec<usize> = keyed.iter().map(|(l, _)| *l).collect();
        let elements: Vec<Permutation> = keyed.into_iter().map(|(_, p)| p).collect();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let right = elements
            .iter()
            .map(|w| (1..n).map(|i| index[&w.mul_simple_right(i)]).collect())
            .collect();
        let left = elements
            .iter()
            .map(|w| (1..n).map(|i| index[&w.mul_simple_left(i)]).collect())
            .collect();
        let inverse = elements.iter().map(|w| index[&w.inverse()]).collect();
        SymGroup {
            n,
            elements,
            index,
            lengths,
            right,
            left,
            inverse,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &Permutation) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// Index of `w * s_gen`.
    pub fn right_mul(&self, w: usize, gen: usize) -> usize {
        self.right[w][gen - 1]
    }

    /// Index of `s_gen * w`.
    pub fn left_mul(&self, w: usize, gen: usize) -> usize {
        self.left[w][gen - 1]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn has_right_descent(&self, w: usize, gen: usize) -> bool {
        self.lengths[self.right_mul(w, gen)] < self.lengths[w]
    }

    pub fn has_left_descent(&self, w: usize, gen: usize) -> bool {
        self.lengths[self.left_mul(w, gen)] < self.lengths[w]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn longest_index(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index ranges of the length layers.
    pub fn layers(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.elements.len() {
            if i == self.elements.len() || self.lengths[i] != self.lengths[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        let g = SymGroup::new(4);
        assert_eq!(g.order(), 24);
        assert!(g.element(g.identity_index()).is_identity());
        assert_eq!(*g.element(g.longest_index()), Permutation::longest(4));
        for w in 0..g.order() {
            assert_eq!(g.index_of(g.element(w)), Some(w));
            assert_eq!(g.length(w), g.element(w).length());
            assert_eq!(g.inverse(g.inverse(w)), w);
            for s in 1..4 {
                assert_eq!(g.right_mul(g.right_mul(w, s), s), w);
                assert_eq!(g.left_mul(w, s), g.inverse(g.right_mul(g.inverse(w), s)));
            }
        }
        let sizes: Vec<usize> = g.layers().iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![1, 3, 5, 6, 5, 3, 1]);
    }
}
