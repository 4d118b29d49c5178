use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::HeckeElt;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::symgroup::{Permutation, SymGroup};

/// Sorted `(y, h_{y,x})` for `y < x` with nonzero `h`.
pub(crate) type Column = Vec<(u32, LaurentPoly)>;

/// Kazhdan-Lusztig polynomials `h_{y,x}` and the `mu`-function of `S_n`.
///
/// `H̲_x = sum_y h_{y,x} H_y`, with `h_{x,x} = 1` and `h_{y,x}` in `vZ[v]`
/// for `y < x`. Elements are addressed by their [`SymGroup`] index.
#[derive(Clone, Debug)]
pub struct KlTable {
    group: Arc<SymGroup>,
    columns: Vec<Column>,
    // mu_below[x] = (y, mu(y, x)) for y < x with mu != 0
    mu_below: Vec<Vec<(u32, i64)>>,
}

impl KlTable {
    pub fn compute(n: usize) -> Self {
        Self::compute_with_group(Arc::new(SymGroup::new(n)))
    }

    pub fn compute_with_group(group: Arc<SymGroup>) -> Self {
        let size = group.order();
        let mut columns: Vec<Option<Column>> = vec![None; size];
        let mut mu_below: Vec<Vec<(u32, i64)>> = vec![Vec::new(); size];
        columns[group.identity_index()] = Some(Vec::new());
        for layer in group.layers().into_iter().skip(1) {
            let computed: Vec<(usize, Column)> = layer
                .into_par_iter()
                .map(|x| {
                    let get = |y: usize| columns[y].as_ref().expect("shorter column is ready");
                    (x, compute_column(&group, get, &mu_below, x))
                })
                .collect();
            for (x, col) in computed {
                mu_below[x] = mu_list(&col);
                columns[x] = Some(col);
            }
        }
        KlTable {
            group,
            columns: columns.into_iter().map(Option::unwrap).collect(),
            mu_below,
        }
    }

    /// Assembles a table from stored columns without checking them.
    pub(crate) fn from_columns(group: Arc<SymGroup>, columns: Vec<Column>) -> Self {
        let mu_below = columns.iter().map(mu_list).collect();
        KlTable {
            group,
            columns,
            mu_below,
        }
    }

    /// Recomputes the column of `x` from the stored shorter columns.
    pub(crate) fn recompute_column(&self, x: usize) -> Column {
        if x == self.group.identity_index() {
            return Vec::new();
        }
        compute_column(&self.group, |y| &self.columns[y], &self.mu_below, x)
    }

    pub(crate) fn raw_column(&self, x: usize) -> &Column {
        &self.columns[x]
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn group(&self) -> &Arc<SymGroup> {
        &self.group
    }

    /// `h_{y,x}` by group index.
    pub fn h_idx(&self, y: usize, x: usize) -> LaurentPoly {
        if y == x {
            return LaurentPoly::one();
        }
        let col = &self.columns[x];
        col.binary_search_by_key(&(y as u32), |(k, _)| *k)
            .map(|pos| col[pos].1.clone())
            .unwrap_or_default()
    }

    /// `h_{y,x}`.
    pub fn h(&self, y: &Permutation, x: &Permutation) -> Result<LaurentPoly> {
        Ok(self.h_idx(self.idx(y)?, self.idx(x)?))
    }

    fn idx(&self, w: &Permutation) -> Result<usize> {
        self.group
            .index_of(w)
            .ok_or_else(|| Error::size(format!("{w} is not in S_{}", self.n())))
    }

    /// Symmetric `mu` by group index.
    pub fn mu_idx(&self, x: usize, y: usize) -> i64 {
        let (lo, hi) = if self.group.length(x) < self.group.length(y) {
            (x, y)
        } else {
            (y, x)
        };
        self.mu_below[hi]
            .binary_search_by_key(&(lo as u32), |(k, _)| *k)
            .map(|pos| self.mu_below[hi][pos].1)
            .unwrap_or(0)
    }

    pub fn mu(&self, x: &Permutation, y: &Permutation) -> Result<i64> {
        Ok(self.mu_idx(self.idx(x)?, self.idx(y)?))
    }

    /// `(y, mu(y, x))` for `y < x` with nonzero `mu`.
    pub fn mu_below(&self, x: usize) -> &[(u32, i64)] {
        &self.mu_below[x]
    }

    /// `(y, h_{y,x})` for all `y <= x` with nonzero `h`, including `y = x`.
    pub fn column(&self, x: usize) -> impl Iterator<Item = (usize, LaurentPoly)> + '_ {
        self.columns[x]
            .iter()
            .map(|(y, h)| (*y as usize, h.clone()))
            .chain(std::iter::once((x, LaurentPoly::one())))
    }

    /// Number of stored pairs `y <= x`.
    pub fn num_pairs(&self) -> usize {
        self.columns.iter().map(|c| c.len() + 1).sum()
    }

    /// `H̲_x` in the standard basis.
    pub fn kl_element(&self, x: &Permutation) -> Result<HeckeElt> {
        let xi = self.idx(x)?;
        HeckeElt::from_terms(
            self.n(),
            self.column(xi)
                .map(|(y, h)| (self.group.element(y).clone(), h)),
        )
    }

    /// `sum_w c_w H̲_w` in the standard basis.
    pub fn from_kl(&self, coeffs: &BTreeMap<Permutation, LaurentPoly>) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero(self.n());
        for (w, c) in coeffs {
            let xi = self.idx(w)?;
            for (y, h) in self.column(xi) {
                out.add_term(self.group.element(y), &(&h * c));
            }
        }
        Ok(out)
    }

    /// Coordinates of `a` in the Kazhdan-Lusztig basis.
    pub fn to_kl(&self, a: &HeckeElt) -> Result<BTreeMap<Permutation, LaurentPoly>> {
        if a.n() != self.n() {
            return Err(Error::size(format!(
                "H(S_{}) vs table for S_{}",
                a.n(),
                self.n()
            )));
        }
        let mut rest: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        for (w, c) in a.terms() {
            rest.insert(self.idx(w)?, c.clone());
        }
        let mut out = BTreeMap::new();
        while let Some((top, c)) = rest.pop_last() {
            for (y, h) in self.columns[top].iter() {
                let e = rest.entry(*y as usize).or_default();
                *e -= h * &c;
                if e.is_zero() {
                    rest.remove(&(*y as usize));
                }
            }
            out.insert(self.group.element(top).clone(), c);
        }
        Ok(out)
    }
}

fn mu_list(col: &Column) -> Vec<(u32, i64)> {
    col.iter()
        .filter_map(|(y, h)| {
            let m = h.coeff(1);
            (!num_traits::Zero::is_zero(&m)).then(|| (*y, m.to_i64().expect("mu fits in i64")))
        })
        .collect()
}

/// `H̲_x = H̲_{xs} H̲_s - sum_{z < xs, zs < z} mu(z, xs) H̲_z` for the smallest
/// right descent `s` of `x`.
fn compute_column<'a>(
    group: &SymGroup,
    column: impl Fn(usize) -> &'a Column,
    mu_below: &[Vec<(u32, i64)>],
    x: usize,
) -> Column {
    let n = group.n();
    let s = (1..n)
        .find(|&s| group.has_right_descent(x, s))
        .expect("non-identity element has a right descent");
    let xp = group.right_mul(x, s);
    let xp_col = column(xp);
    let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    let v = LaurentPoly::v();
    let v_inv = LaurentPoly::v_inv();
    let entries = xp_col
        .iter()
        .map(|(y, h)| (*y as usize, h.clone()))
        .chain(std::iter::once((xp, LaurentPoly::one())));
    // H_y H̲_s = H_{ys} + v H_y if ys > y, else H_{ys} + v^-1 H_y
    for (y, h) in entries {
        let ys = group.right_mul(y, s);
        *acc.entry(ys).or_default() += &h;
        let c = if group.length(ys) > group.length(y) {
            &v
        } else {
            &v_inv
        };
        acc.entry(y).or_default().add_mul(c, &h);
    }
    for &(z, m) in &mu_below[xp] {
        let z = z as usize;
        if !group.has_right_descent(z, s) {
            continue;
        }
        let m = LaurentPoly::constant(m);
        let z_col = column(z);
        for (y, h) in z_col
            .iter()
            .map(|(y, h)| (*y as usize, h))
            .chain(std::iter::once((z, &LaurentPoly::one())))
        {
            let e = acc.entry(y).or_default();
            *e -= &m * h;
        }
    }
    let one = acc.remove(&x);
    debug_assert!(one.is_some_and(|p| p.is_one()));
    acc.into_iter()
        .filter(|(_, h)| !h.is_zero())
        .map(|(y, h)| (y as u32, h))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    #[test]
    fn s2_table() {
        let t = KlTable::compute(2);
        let s = Permutation::simple(2, 1);
        let e = Permutation::identity(2);
        assert_eq!(t.h(&e, &s).unwrap(), LaurentPoly::v());
        assert_eq!(t.kl_element(&s).unwrap(), HeckeElt::kl_generator(2, 1));
    }

    #[test]
    fn s3_polynomials_are_monomials() {
        let t = KlTable::compute(3);
        let g = t.group().clone();
        for x in g.elements() {
            for y in g.elements() {
                let h = t.h(y, x).unwrap();
                if y.bruhat_leq(x).unwrap() {
                    assert_eq!(h, lp((x.length() - y.length()) as i32, &[1]), "{y} {x}");
                } else {
                    assert!(h.is_zero());
                }
            }
        }
    }

    #[test]
    fn kl_elements_are_bar_invariant_s4() {
        let t = KlTable::compute(4);
        for x in t.group().elements() {
            let c = t.kl_element(x).unwrap();
            assert_eq!(c.bar(), c, "{x}");
        }
    }

    #[test]
    fn known_s4_singular_polynomials() {
        // h_{e,3412} = v^4 + v^2 and h_{e,4231} = v^5 + v^3 in this normalization
        let t = KlTable::compute(4);
        let e = Permutation::identity(4);
        assert_eq!(
            t.h(&e, &"3412".parse().unwrap()).unwrap(),
            lp(2, &[1, 0, 1])
        );
        assert_eq!(
            t.h(&e, &"4231".parse().unwrap()).unwrap(),
            lp(3, &[1, 0, 1])
        );
    }

    #[test]
    fn mu_of_simple_edges() {
        for n in 2..=5 {
            let t = KlTable::compute(n);
            let g = t.group().clone();
            for x in 0..g.order() {
                for s in 1..n {
                    let xs = g.right_mul(x, s);
                    if g.length(xs) > g.length(x) {
                        assert_eq!(t.mu_idx(x, xs), 1);
                        assert_eq!(t.mu_idx(xs, x), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn kl_basis_change_round_trip() {
        let t = KlTable::compute(4);
        let g = t.group().clone();
        let s = Permutation::simple(4, 1);
        let hs = HeckeElt::standard(&s);
        let coords = t.to_kl(&hs).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(s.clone(), LaurentPoly::one());
        expected.insert(Permutation::identity(4), -LaurentPoly::v());
        assert_eq!(coords, expected);
        for (k, w) in g.elements().iter().enumerate() {
            let mut unit = BTreeMap::new();
            unit.insert(w.clone(), LaurentPoly::one());
            assert_eq!(t.to_kl(&t.kl_element(w).unwrap()).unwrap(), unit);
            let a = HeckeElt::standard(w)
                .scale(&lp(-1, &[1, k as i64]))
                .add(&HeckeElt::standard(g.element((k * 7) % 24)))
                .unwrap();
            assert_eq!(t.from_kl(&t.to_kl(&a).unwrap()).unwrap(), a);
        }
    }
}
