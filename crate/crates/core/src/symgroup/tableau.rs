use std::fmt;

use serde::Serialize;

use super::{Partition, Permutation};
use crate::error::{Error, Result};

/// A standard Young tableau with entries `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = StandardTableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let lens: Vec<usize> = self.rows.iter().map(Vec::len).collect();
        Partition::new(lens)?;
        let n: usize = self.rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::invalid("tableau entries must be exactly 1..n"));
                }
                seen[x] = true;
                if j > 0 && row[j - 1] >= x {
                    return Err(Error::invalid("tableau rows must increase"));
                }
                if i > 0 && self.rows[i - 1][j] >= x {
                    return Err(Error::invalid("tableau columns must increase"));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("valid tableau shape")
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Robinson-Schensted row insertion of the one-line word; returns the
/// insertion tableau `P` and the recording tableau `Q`.
pub fn rsk(w: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (pos, x) in w.one_line().into_iter().enumerate() {
        let mut bump = x;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![bump]);
                q.push(vec![pos + 1]);
                break;
            }
            match p[r].iter().position(|&y| y > bump) {
                Some(k) => {
                    bump = std::mem::replace(&mut p[r][k], bump);
                    r += 1;
                }
                None => {
                    p[r].push(bump);
                    q[r].push(pos + 1);
                    break;
                }
            }
        }
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

/// Permutations one elementary Knuth transformation away from `w`:
/// `xzy <-> zxy` and `yxz <-> yzx` on adjacent letters with `x < y < z`.
pub fn knuth_neighbors(w: &Permutation) -> Vec<Permutation> {
    let word = w.one_line();
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(2) {
        let (a, b, c) = (word[i], word[i + 1], word[i + 2]);
        if a.min(b) < c && c < a.max(b) {
            let mut v = word.clone();
            v.swap(i, i + 1);
            out.push(Permutation::from_one_line(&v).unwrap());
        }
        if b.min(c) < a && a < b.max(c) {
            let mut v = word.clone();
            v.swap(i + 1, i + 2);
            out.push(Permutation::from_one_line(&v).unwrap());
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use std::collections::{HashMap, HashSet};

    use super::*;
    use crate::symgroup::SymGroup;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rsk_examples() {
        let (pt, qt) = rsk(&Permutation::identity(4));
        assert_eq!(pt.rows(), &[vec![1, 2, 3, 4]]);
        assert_eq!(qt, pt);
        let (pt, _) = rsk(&Permutation::longest(4));
        assert_eq!(pt.shape(), Partition::column(4));
        let (pt, qt) = rsk(&p("213"));
        assert_eq!(pt.shape().parts(), &[2, 1]);
        assert_eq!(pt.rows(), &[vec![1, 3], vec![2]]);
        assert_eq!(qt.rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn rsk_is_bijective_and_inverse_swaps() {
        for n in 1..=5 {
            let g = SymGroup::new(n);
            let mut seen = HashSet::new();
            for w in g.elements() {
                let (pt, qt) = rsk(w);
                pt.validate().unwrap();
                qt.validate().unwrap();
                assert_eq!(pt.shape(), qt.shape());
                let (pi, qi) = rsk(&w.inverse());
                assert_eq!((pi, qi), (qt.clone(), pt.clone()));
                assert!(seen.insert((pt, qt)));
            }
            assert_eq!(seen.len(), g.order());
        }
    }

    #[test]
    fn knuth_examples() {
        assert!(knuth_neighbors(&Permutation::identity(4)).is_empty());
        assert_eq!(knuth_neighbors(&p("213")), vec![p("231")]);
        assert_eq!(knuth_neighbors(&p("231")), vec![p("213")]);
    }

    #[test]
    fn knuth_classes_are_insertion_classes() {
        for n in 1..=5 {
            let g = SymGroup::new(n);
            let mut class_of: HashMap<Permutation, usize> = HashMap::new();
            let mut next = 0;
            for w in g.elements() {
                if class_of.contains_key(w) {
                    continue;
                }
                let mut stack = vec![w.clone()];
                class_of.insert(w.clone(), next);
                while let Some(u) = stack.pop() {
                    for v in knuth_neighbors(&u) {
                        if !class_of.contains_key(&v) {
                            class_of.insert(v.clone(), next);
                            stack.push(v);
                        }
                    }
                }
                next += 1;
            }
            let mut p_of_class: HashMap<usize, StandardTableau> = HashMap::new();
            for (w, c) in &class_of {
                let pt = rsk(w).0;
                assert_eq!(p_of_class.entry(*c).or_insert_with(|| pt.clone()), &pt);
            }
            let distinct: HashSet<_> = p_of_class.values().collect();
            assert_eq!(distinct.len(), next);
        }
    }

    #[test]
    fn invalid_tableaux() {
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2, 4, 5]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![2]]).is_err());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3]]).is_ok());
    }
}
