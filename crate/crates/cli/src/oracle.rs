//! Kazhdan-Lusztig basis by brute force: for each `x`, solve the linear
//! system `bar(C) = C` for `C = H_x + sum_{y != x} sum_{k=1}^{L} a_{y,k} v^k H_y`
//! over `Q`, with `L` the length of the longest element. Nothing from the
//! recursive construction is used; `bar(H_y)` comes from the standard basis
//! alone.

use std::collections::{BTreeMap, HashMap};

use hecke_core::{HeckeElt, LaurentPoly, SymGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Row = BTreeMap<usize, BigRational>;

/// Gauss-Jordan elimination keeping every pivot row free of the other pivot
/// columns.
#[derive(Default)]
struct Eliminator {
    pivots: HashMap<usize, (Row, BigRational)>,
    inconsistent: bool,
}

impl Eliminator {
    fn push(&mut self, mut row: Row, mut rhs: BigRational) {
        let hits: Vec<usize> = row
            .keys()
            .filter(|k| self.pivots.contains_key(k))
            .copied()
            .collect();
        for k in hits {
            let Some(c) = row.get(&k).cloned() else {
                continue;
            };
            let (prow, prhs) = &self.pivots[&k];
            for (j, a) in prow {
                let e = row.entry(*j).or_insert_with(BigRational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            rhs -= &c * prhs;
        }
        let Some((&p, c)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = c.recip();
        for a in row.values_mut() {
            *a *= &inv;
        }
        rhs *= &inv;
        for (prow, prhs) in self.pivots.values_mut() {
            if let Some(c) = prow.get(&p).cloned() {
                for (j, a) in &row {
                    let e = prow.entry(*j).or_insert_with(BigRational::zero);
                    *e -= &c * a;
                    if e.is_zero() {
                        prow.remove(j);
                    }
                }
                *prhs -= &c * &rhs;
            }
        }
        self.pivots.insert(p, (row, rhs));
    }
}

/// Outcome of the brute-force solve for one `x`.
pub enum Solve {
    /// `h[y]` for every `y`, with `h[x] = 1`.
    Unique(Vec<LaurentPoly>),
    Inconsistent,
    /// Number of free unknowns.
    Underdetermined(usize),
    /// Some coefficient is not an integer.
    NonIntegral,
}

/// `bar(H_y)` for every element, as `z -> coefficient`.
pub fn standard_bars(g: &SymGroup) -> Vec<HashMap<usize, LaurentPoly>> {
    g.elements()
        .iter()
        .map(|y| {
            HeckeElt::standard(y)
                .bar()
                .terms()
                .iter()
                .map(|(z, c)| (g.index_of(z).expect("same group"), c.clone()))
                .collect()
        })
        .collect()
}

/// Solves for the KL element of the element with index `x`.
pub fn solve(g: &SymGroup, bars: &[HashMap<usize, LaurentPoly>], x: usize) -> Solve {
    let order = g.order();
    let top = g.length(g.longest_index()) as i32;
    let unknown = |y: usize, k: i32| -> usize {
        let slot = if y < x { y } else { y - 1 };
        slot * top as usize + (k - 1) as usize
    };
    let num_unknowns = (order - 1) * top as usize;
    // equation (z, d): coefficient of v^d H_z in bar(C) - C
    let mut rows: BTreeMap<(usize, i32), (Row, BigRational)> = BTreeMap::new();
    let rat = |c: &BigInt| BigRational::from_integer(c.clone());
    for (y, bar_y) in bars.iter().enumerate() {
        for (&z, r) in bar_y {
            for (deg, c) in r.terms() {
                if y == x {
                    let e = rows.entry((z, deg)).or_default();
                    e.1 -= rat(c);
                    continue;
                }
                // a_{y,k} v^{-k} * c v^deg contributes to v^{deg - k}
                for k in 1..=top {
                    let e = rows.entry((z, deg - k)).or_default();
                    *e.0.entry(unknown(y, k)).or_insert_with(BigRational::zero) += rat(c);
                }
            }
        }
    }
    for z in 0..order {
        if z == x {
            let e = rows.entry((z, 0)).or_default();
            e.1 += BigRational::one();
            continue;
        }
        for k in 1..=top {
            let e = rows.entry((z, k)).or_default();
            *e.0.entry(unknown(z, k)).or_insert_with(BigRational::zero) -= BigRational::one();
        }
    }
    let mut elim = Eliminator::default();
    for (_, (mut row, rhs)) in rows {
        row.retain(|_, a| !a.is_zero());
        elim.push(row, rhs);
        if elim.inconsistent {
            return Solve::Inconsistent;
        }
    }
    if elim.pivots.len() < num_unknowns {
        return Solve::Underdetermined(num_unknowns - elim.pivots.len());
    }
    let mut h = vec![LaurentPoly::zero(); order];
    h[x] = LaurentPoly::one();
    for y in (0..order).filter(|&y| y != x) {
        let mut coeffs = Vec::with_capacity(top as usize);
        for k in 1..=top {
            let (_, value) = &elim.pivots[&unknown(y, k)];
            if !value.is_integer() {
                return Solve::NonIntegral;
            }
            coeffs.push(value.to_integer());
        }
        h[y] = LaurentPoly::new(1, coeffs);
    }
    Solve::Unique(h)
}
