//! Right cell modules `S(R)` with basis `C_x`, the image of `H_x` (KL
//! basis) modulo the elements strictly above `R` in the right order.
//!
//! Matrices store images as columns: `action[s][(y, x)]` is the coefficient
//! of `C_y` in `C_x H_s` (KL generator).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cells::parabolic_right_cell;
use crate::error::{Error, Result};
use crate::laurent::{nullspace, rf_invert_matrix, LaurentPoly, Matrix, RationalFunction};
use crate::symgroup::{class_word, partitions, rsk, ParabolicData, Partition, Permutation};
use crate::tables::Tables;

#[derive(Clone, Debug, Serialize)]
pub struct CellModule {
    parabolic: ParabolicData,
    cell: Vec<Permutation>,
    generators: Vec<usize>,
    action: Vec<Matrix<LaurentPoly>>,
}

impl CellModule {
    /// The cell module of a right cell of `S_n`.
    pub fn new(tables: &Tables, cell: &[Permutation]) -> Result<Self> {
        let Some(first) = cell.first() else {
            return Err(Error::NotACell("empty set".into()));
        };
        let n = first.n();
        let cells = tables.cells(n)?;
        if !cells.is_right_cell(cell) {
            return Err(Error::NotACell(format!(
                "{{{}}} is not a right cell of S_{n}",
                cell.iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            )));
        }
        let table = cells.table().clone();
        let g = table.group().clone();
        let mut members = cell.to_vec();
        members.sort_by(|a, b| a.cmp_length_lex(b));
        let ids: Vec<usize> = members
            .iter()
            .map(|w| g.index_of(w).expect("checked"))
            .collect();
        let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &w)| (w, k)).collect();
        let d = ids.len();
        let generators: Vec<usize> = (1..n).collect();
        let action = generators
            .iter()
            .map(|&s| {
                let mut a = Matrix::zeros(d, d);
                for (j, &x) in ids.iter().enumerate() {
                    if g.has_right_descent(x, s) {
                        a[(j, j)] = LaurentPoly::v_plus_v_inv();
                        continue;
                    }
                    if let Some(&k) = pos.get(&g.right_mul(x, s)) {
                        a[(k, j)] += LaurentPoly::one();
                    }
                    for &(y, mu) in table.mu_below(x) {
                        let y = y as usize;
                        if g.has_right_descent(y, s) {
                            if let Some(&k) = pos.get(&y) {
                                a[(k, j)] += LaurentPoly::constant(mu);
                            }
                        }
                    }
                }
                a
            })
            .collect();
        Ok(CellModule {
            parabolic: ParabolicData::full(n),
            cell: members,
            generators,
            action,
        })
    }

    /// The cell module of the right cell of `S_n` containing `x`.
    pub fn of(tables: &Tables, x: &Permutation) -> Result<Self> {
        let cell = tables.cells(x.n())?.right_cell_of(x)?;
        Self::new(tables, &cell)
    }

    /// The cell module of the right cell of `W'` containing `x`: the outer
    /// tensor product of the cell modules of the block restrictions.
    pub fn parabolic(tables: &Tables, p: &ParabolicData, x: &Permutation) -> Result<Self> {
        let members = parabolic_right_cell(p, x, |k| tables.cells(k))?;
        let n = p.n();
        let blocks = p.blocks();
        let factors = blocks
            .iter()
            .map(|&(o, k)| Self::of(tables, &x.restrict(o, k).expect("x lies in W'")))
            .collect::<Result<Vec<_>>>()?;
        // position of each product element, keyed by its factor indices
        let mut pos: HashMap<Vec<usize>, usize> = HashMap::new();
        for (k, w) in members.iter().enumerate() {
            let key = blocks
                .iter()
                .zip(&factors)
                .map(|(&(o, size), f)| {
                    let r = w.restrict(o, size).expect("cell lies in W'");
                    f.cell.iter().position(|c| *c == r).expect("factor member")
                })
                .collect();
            pos.insert(key, k);
        }
        let d = members.len();
        let mut generators = Vec::new();
        let mut action = Vec::new();
        for (b, &(o, k)) in blocks.iter().enumerate() {
            for local in 1..k {
                let fa = &factors[b].action[local - 1];
                let mut a = Matrix::zeros(d, d);
                for (key, &j) in &pos {
                    for r in 0..fa.rows() {
                        let c = &fa[(r, key[b])];
                        if c.is_zero() {
                            continue;
                        }
                        let mut target = key.clone();
                        target[b] = r;
                        a[(pos[&target], j)] = c.clone();
                    }
                }
                generators.push(o + local);
                action.push(a);
            }
        }
        debug_assert!(generators.iter().all(|&s| s < n));
        Ok(CellModule {
            parabolic: p.clone(),
            cell: members,
            generators,
            action,
        })
    }

    pub fn n(&self) -> usize {
        self.parabolic.n()
    }

    pub fn parabolic_data(&self) -> &ParabolicData {
        &self.parabolic
    }

    /// Basis order: (length, lexicographic).
    pub fn cell(&self) -> &[Permutation] {
        &self.cell
    }

    pub fn dim(&self) -> usize {
        self.cell.len()
    }

    /// The generators `s_i` of `W'` acting on the module.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Action of the KL generator for `s_i`, if `s_i` lies in `W'`.
    pub fn action(&self, i: usize) -> Option<&Matrix<LaurentPoly>> {
        self.generators
            .iter()
            .position(|&s| s == i)
            .map(|k| &self.action[k])
    }

    pub fn actions(&self) -> impl Iterator<Item = (usize, &Matrix<LaurentPoly>)> {
        self.generators.iter().copied().zip(&self.action)
    }

    pub fn position(&self, x: &Permutation) -> Option<usize> {
        self.cell.iter().position(|c| c == x)
    }

    /// Specht label at `v = 1`: the transposed RSK shape. Only meaningful
    /// for `W' = S_n`.
    pub fn specht_label(&self) -> Partition {
        rsk(&self.cell[0]).0.shape().transpose()
    }

    /// Character at `v = 1` on each cycle type, using `H_s = C_s - v`.
    pub fn character(&self) -> Result<BTreeMap<Partition, i64>> {
        if self.generators.len() + 1 != self.n() {
            return Err(Error::invalid("characters need the full symmetric group"));
        }
        let d = self.dim();
        let std: Vec<Matrix<i64>> = self
            .action
            .iter()
            .map(|a| a.eval_one_i64().sub(&Matrix::identity(d)))
            .collect::<Result<_>>()?;
        partitions(self.n())
            .into_iter()
            .map(|mu| {
                let mut m = Matrix::<i64>::identity(d);
                for s in class_word(&mu) {
                    m = std[s - 1].mul(&m)?;
                }
                Ok((mu, m.trace()))
            })
            .collect()
    }

    /// The symmetric invariant form, normalized as in [`normalize_form`].
    ///
    /// Solves `A_s^T G = G A_s` for symmetric `G` over the fraction field.
    pub fn invariant_form(&self) -> Result<Matrix<LaurentPoly>> {
        let d = self.dim();
        let var = |i: usize, j: usize| {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            i * d - i * (i + 1) / 2 + j
        };
        let nvars = d * (d + 1) / 2;
        let mut rows = Vec::new();
        for a in &self.action {
            for p in 0..d {
                for q in p + 1..d {
                    // (A^T G - G A)_{pq}
                    let mut row: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                    for k in 0..d {
                        if !a[(k, p)].is_zero() {
                            *row.entry(var(k, q)).or_default() += &a[(k, p)];
                        }
                        if !a[(k, q)].is_zero() {
                            *row.entry(var(p, k)).or_default() -= &a[(k, q)];
                        }
                    }
                    row.retain(|_, c| !c.is_zero());
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let basis = nullspace(&rows, nvars);
        if basis.len() != 1 {
            return Err(Error::NonUniqueForm {
                nullity: basis.len(),
            });
        }
        let sol = &basis[0];
        let g = Matrix::from_fn(d, d, |i, j| sol[var(i, j)].clone());
        Ok(normalize_form(g))
    }
}

/// Scales a primitive form by `+-v^k`: the first nonzero diagonal entry (in
/// basis order) gets a positive leading coefficient and its degrees are
/// centred at `0`, rounding towards lower degrees.
pub fn normalize_form(g: Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
    let d = g.rows();
    let reference = (0..d)
        .map(|i| g[(i, i)].clone())
        .find(|p| !p.is_zero())
        .or_else(|| {
            (0..d)
                .flat_map(|i| g.row(i).to_vec())
                .find(|p| !p.is_zero())
        });
    let Some(r) = reference else {
        return g;
    };
    let max = r.max_deg().expect("nonzero");
    let shift = -(r.min_deg() + max).div_euclid(2);
    let sign = r
        .leading_coeff()
        .is_some_and(|c| c.sign() == num_bigint::Sign::Minus);
    g.map(|p| {
        let q = p.shift(shift);
        if sign {
            -q
        } else {
            q
        }
    })
}

/// True when `A^T G = G A` for every matrix `A`.
pub fn is_invariant(g: &Matrix<LaurentPoly>, actions: &[&Matrix<LaurentPoly>]) -> bool {
    actions.iter().all(|a| {
        let lhs = a.transpose().mul(g);
        let rhs = g.mul(a);
        matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
    })
}

/// An invertible module homomorphism `Phi` with `Phi A_s = B_s Phi`.
#[derive(Clone, Debug, Serialize)]
pub struct Intertwiner {
    pub matrix: Matrix<LaurentPoly>,
    pub inverse: Matrix<RationalFunction>,
    /// Dimension of the space of all homomorphisms.
    pub solution_dim: usize,
}

/// Searches for an invertible `Phi` with `Phi src[k] = dst[k] Phi` for all
/// `k`.
///
/// The homomorphism space is solved exactly; invertibility is tested on each
/// basis vector, then on the sums `sum_i b_i` and `sum_i (i+1) b_i`.
pub fn solve_intertwiner(
    src: &[&Matrix<LaurentPoly>],
    dst: &[&Matrix<LaurentPoly>],
) -> Result<Option<Intertwiner>> {
    if src.len() != dst.len() {
        return Err(Error::size("generator counts differ"));
    }
    let Some(first) = src.first() else {
        return Err(Error::invalid("no generators"));
    };
    let d1 = first.rows();
    let d2 = dst[0].rows();
    if d1 != d2 {
        return Ok(None);
    }
    let d = d1;
    let var = |a: usize, b: usize| a * d + b;
    let mut rows = Vec::new();
    for (a1, a2) in src.iter().zip(dst) {
        for a in 0..d {
            for c in 0..d {
                // (Phi A1 - A2 Phi)_{ac}
                let mut row: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
                for b in 0..d {
                    if !a1[(b, c)].is_zero() {
                        *row.entry(var(a, b)).or_default() += &a1[(b, c)];
                    }
                    if !a2[(a, b)].is_zero() {
                        *row.entry(var(b, c)).or_default() -= &a2[(a, b)];
                    }
                }
                row.retain(|_, p| !p.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let basis = nullspace(&rows, d * d);
    let as_matrix = |v: &[LaurentPoly]| Matrix::from_fn(d, d, |a, b| v[var(a, b)].clone());
    let mut candidates: Vec<Matrix<LaurentPoly>> = basis.iter().map(|v| as_matrix(v)).collect();
    if basis.len() > 1 {
        for weights in [1i64, 2] {
            let mut sum = vec![LaurentPoly::zero(); d * d];
            for (i, v) in basis.iter().enumerate() {
                let w = LaurentPoly::constant(if weights == 1 { 1 } else { i as i64 + 1 });
                for (s, x) in sum.iter_mut().zip(v) {
                    s.add_mul(&w, x);
                }
            }
            candidates.push(as_matrix(&sum));
        }
    }
    for m in candidates {
        if let Ok(inverse) = rf_invert_matrix(&m) {
            return Ok(Some(Intertwiner {
                matrix: m,
                inverse,
                solution_dim: basis.len(),
            }));
        }
    }
    Ok(None)
}

/// An isomorphism between two cell modules of the same `W'`, if one exists.
pub fn cell_iso(m1: &CellModule, m2: &CellModule) -> Result<Option<Intertwiner>> {
    if m1.parabolic != m2.parabolic {
        return Err(Error::size("cell modules of different parabolic subgroups"));
    }
    let src: Vec<&Matrix<LaurentPoly>> = m1.action.iter().collect();
    let dst: Vec<&Matrix<LaurentPoly>> = m2.action.iter().collect();
    if src.is_empty() {
        // W' trivial: every cell module is the 1-dimensional trivial module
        let id = Matrix::identity(m1.dim());
        return Ok(Some(Intertwiner {
            inverse: id.to_rational(),
            matrix: id,
            solution_dim: 1,
        }));
    }
    solve_intertwiner(&src, &dst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::SparseMatrix;
    use crate::relations::check_kl_relations;
    use crate::symgroup::mn_character;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn lp(min: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    fn relations_hold(m: &CellModule) -> bool {
        let sparse: Vec<(usize, SparseMatrix)> = m
            .actions()
            .map(|(s, a)| (s, SparseMatrix::from_dense(a)))
            .collect();
        let refs: Vec<(usize, &SparseMatrix)> = sparse.iter().map(|(s, a)| (*s, a)).collect();
        check_kl_relations(&refs).is_ok()
    }

    #[test]
    fn s3_examples() {
        let t = Tables::new();
        let top = CellModule::of(&t, &p("321")).unwrap();
        assert_eq!(top.dim(), 1);
        assert_eq!(top.action(1).unwrap()[(0, 0)], LaurentPoly::v_plus_v_inv());
        assert_eq!(top.invariant_form().unwrap()[(0, 0)], LaurentPoly::one());
        let bottom = CellModule::of(&t, &p("123")).unwrap();
        assert!(bottom.action(1).unwrap().is_zero() && bottom.action(2).unwrap().is_zero());

        let s = Permutation::simple(3, 1);
        let st = Permutation::from_word(3, &[1, 2]).unwrap();
        let m = CellModule::new(&t, &[s.clone(), st.clone()]).unwrap();
        assert_eq!(m.cell(), &[s, st]);
        let vv = LaurentPoly::v_plus_v_inv();
        let (o, z) = (LaurentPoly::one(), LaurentPoly::zero());
        assert_eq!(
            *m.action(1).unwrap(),
            Matrix::from_rows(vec![
                vec![vv.clone(), o.clone()],
                vec![z.clone(), z.clone()]
            ])
        );
        assert_eq!(
            *m.action(2).unwrap(),
            Matrix::from_rows(vec![vec![z.clone(), z], vec![o.clone(), vv.clone()]])
        );
        let g = m.invariant_form().unwrap();
        assert_eq!(
            g,
            Matrix::from_rows(vec![vec![vv.clone(), o.clone()], vec![o, vv]])
        );
        let acts: Vec<_> = m.actions().map(|(_, a)| a).collect();
        assert!(is_invariant(&g, &acts));
        // scaling keeps invariance but not the normalization
        let scaled = g.scale(&LaurentPoly::v());
        assert!(is_invariant(&scaled, &acts));
        assert_ne!(normalize_form(scaled.clone()), scaled);
        assert_eq!(normalize_form(scaled), g);
        assert!(matches!(
            CellModule::new(&t, &[p("213")]),
            Err(Error::NotACell(_))
        ));
    }

    #[test]
    fn normalization_centres_and_fixes_sign() {
        let g = Matrix::from_rows(vec![vec![lp(2, &[-1, 0, -1])]]);
        assert_eq!(normalize_form(g)[(0, 0)], lp(-1, &[1, 0, 1]));
    }

    #[test]
    fn cell_modules_up_to_s5() {
        let t = Tables::new();
        for n in 1..=5 {
            let cells = t.cells(n).unwrap();
            let modules: Vec<CellModule> = cells
                .right_cells()
                .iter()
                .map(|c| CellModule::new(&t, c).unwrap())
                .collect();
            for m in &modules {
                assert!(relations_hold(m), "{:?}", m.cell());
                let g = m.invariant_form().unwrap();
                assert!(g.is_symmetric());
                let acts: Vec<_> = m.actions().map(|(_, a)| a).collect();
                assert!(is_invariant(&g, &acts));
                assert!(rf_invert_matrix(&g).is_ok());
                // entries: v + v^-1 on the diagonal or nonnegative integers
                for (_, a) in m.actions() {
                    for i in 0..m.dim() {
                        for j in 0..m.dim() {
                            let e = &a[(i, j)];
                            assert!(
                                e.is_zero()
                                    || (i == j && *e == LaurentPoly::v_plus_v_inv())
                                    || (e.min_deg() == 0
                                        && e.max_deg() == Some(0)
                                        && e.is_nonnegative())
                            );
                        }
                    }
                }
                let lambda = m.specht_label();
                for (mu, chi) in m.character().unwrap() {
                    assert_eq!(chi, mn_character(&lambda, &mu).unwrap());
                }
            }
        }
    }

    #[test]
    fn isomorphism_iff_same_two_sided_cell() {
        let t = Tables::new();
        for n in 2..=4 {
            let cells = t.cells(n).unwrap();
            let rc = cells.right_cells();
            let modules: Vec<CellModule> =
                rc.iter().map(|c| CellModule::new(&t, c).unwrap()).collect();
            for (a, ma) in modules.iter().enumerate() {
                for (b, mb) in modules.iter().enumerate() {
                    let same = cells.same_two_sided_cell(&rc[a][0], &rc[b][0]).unwrap();
                    let iso = cell_iso(ma, mb).unwrap();
                    assert_eq!(iso.is_some(), same, "n={n} {a} {b}");
                    if let Some(phi) = iso {
                        assert_eq!(phi.solution_dim, 1);
                        for ((_, x), (_, y)) in ma.actions().zip(mb.actions()) {
                            assert_eq!(phi.matrix.mul(x).unwrap(), y.mul(&phi.matrix).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_cell_modules() {
        let t = Tables::new();
        let pd = ParabolicData::new(vec![3, 2]).unwrap();
        let x = Permutation::from_word(5, &[1, 4]).unwrap();
        let m = CellModule::parabolic(&t, &pd, &x).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.generators(), &[1, 2, 4]);
        assert!(relations_hold(&m));
        assert_eq!(
            m.action(4).unwrap(),
            &Matrix::identity(2).scale(&LaurentPoly::v_plus_v_inv())
        );
        let g = m.invariant_form().unwrap();
        let acts: Vec<_> = m.actions().map(|(_, a)| a).collect();
        assert!(is_invariant(&g, &acts));
        let trivial = CellModule::parabolic(&t, &ParabolicData::trivial(3), &p("123")).unwrap();
        assert_eq!(trivial.dim(), 1);
        assert!(trivial.generators().is_empty());
        assert_eq!(
            trivial.invariant_form().unwrap()[(0, 0)],
            LaurentPoly::one()
        );
    }
}
