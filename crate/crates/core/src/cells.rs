//! Left, right and two-sided Kazhdan-Lusztig cells of `S_n`.
//!
//! `x ->_L y` when `mu(x, y) != 0` and some `s` lies in `D_L(x) \ D_L(y)`;
//! `>=_L` is its reflexive transitive closure, so `e` is the unique minimum
//! and `w_0` the unique maximum. Right versions use right descents, which is
//! the same as conjugating the left versions by `w -> w^-1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::KlTable;
use crate::symgroup::{rsk, ParabolicData, Partition, Permutation, StandardTableau, SymGroup};

/// Which RSK tableau is constant on right cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RskConvention {
    /// Insertion tableau of the one-line word.
    P,
    /// Recording tableau of the one-line word.
    Q,
}

#[derive(Clone, Debug)]
struct Partitioned {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
    // reach[a][b]: cell a >= cell b
    reach: Vec<Vec<bool>>,
}

/// Cell decomposition of `S_n` computed from the `mu`-graph.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    table: Arc<KlTable>,
    left: Partitioned,
    right: Partitioned,
    two_sided: Partitioned,
}

impl CellDecomposition {
    pub fn compute(table: Arc<KlTable>) -> Self {
        let g = table.group().clone();
        let size = g.order();
        let n = g.n();
        let mask = |w: usize, left: bool| -> u32 {
            (1..n)
                .filter(|&s| {
                    if left {
                        g.has_left_descent(w, s)
                    } else {
                        g.has_right_descent(w, s)
                    }
                })
                .fold(0u32, |m, s| m | 1 << s)
        };
        let dl: Vec<u32> = (0..size).map(|w| mask(w, true)).collect();
        let dr: Vec<u32> = (0..size).map(|w| mask(w, false)).collect();
        let mut left_edges = Vec::new();
        let mut right_edges = Vec::new();
        for x in 0..size {
            for &(y, _) in table.mu_below(x) {
                let y = y as usize;
                for (a, b) in [(x, y), (y, x)] {
                    if dl[a] & !dl[b] != 0 {
                        left_edges.push((a, b));
                    }
                    if dr[a] & !dr[b] != 0 {
                        right_edges.push((a, b));
                    }
                }
            }
        }
        let mut both = left_edges.clone();
        both.extend_from_slice(&right_edges);
        CellDecomposition {
            left: partition_by_scc(size, &left_edges),
            right: partition_by_scc(size, &right_edges),
            two_sided: partition_by_scc(size, &both),
            table,
        }
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &Arc<KlTable> {
        &self.table
    }

    pub fn group(&self) -> &Arc<SymGroup> {
        self.table.group()
    }

    fn idx(&self, w: &Permutation) -> Result<usize> {
        self.group()
            .index_of(w)
            .ok_or_else(|| Error::size(format!("{w} is not in S_{}", self.n())))
    }

    fn to_perms(&self, cells: &[Vec<usize>]) -> Vec<Vec<Permutation>> {
        let g = self.group();
        cells
            .iter()
            .map(|c| c.iter().map(|&i| g.element(i).clone()).collect())
            .collect()
    }

    /// Left cells; members and cells in (length, lexicographic) order of
    /// their first element.
    pub fn left_cells(&self) -> Vec<Vec<Permutation>> {
        self.to_perms(&self.left.cells)
    }

    pub fn right_cells(&self) -> Vec<Vec<Permutation>> {
        self.to_perms(&self.right.cells)
    }

    pub fn two_sided_cells(&self) -> Vec<Vec<Permutation>> {
        self.to_perms(&self.two_sided.cells)
    }

    pub fn right_cell_indices(&self) -> &[Vec<usize>] {
        &self.right.cells
    }

    pub fn left_cell_id(&self, w: usize) -> usize {
        self.left.cell_of[w]
    }

    pub fn right_cell_id(&self, w: usize) -> usize {
        self.right.cell_of[w]
    }

    pub fn two_sided_id(&self, w: usize) -> usize {
        self.two_sided.cell_of[w]
    }

    /// The right cell containing `w`.
    pub fn right_cell_of(&self, w: &Permutation) -> Result<Vec<Permutation>> {
        let id = self.right.cell_of[self.idx(w)?];
        Ok(self.right_cells().swap_remove(id))
    }

    pub fn same_left_cell(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        Ok(self.left.cell_of[self.idx(x)?] == self.left.cell_of[self.idx(y)?])
    }

    pub fn same_two_sided_cell(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        Ok(self.two_sided.cell_of[self.idx(x)?] == self.two_sided.cell_of[self.idx(y)?])
    }

    /// `x <=_R y`.
    pub fn right_leq(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        Ok(self.right_geq_idx(self.idx(y)?, self.idx(x)?))
    }

    /// `x >=_R y` by group index.
    pub fn right_geq_idx(&self, x: usize, y: usize) -> bool {
        self.right.reach[self.right.cell_of[x]][self.right.cell_of[y]]
    }

    /// `x >=_L y` by group index.
    pub fn left_geq_idx(&self, x: usize, y: usize) -> bool {
        self.left.reach[self.left.cell_of[x]][self.left.cell_of[y]]
    }

    /// `x >=_LR y` by group index.
    pub fn two_sided_geq_idx(&self, x: usize, y: usize) -> bool {
        self.two_sided.reach[self.two_sided.cell_of[x]][self.two_sided.cell_of[y]]
    }

    /// Hasse diagram of the right order on right cells: `covers[a]` lists the
    /// cells `b` with `a >_R b` and nothing strictly between.
    pub fn right_order_covers(&self) -> Vec<Vec<usize>> {
        let reach = &self.right.reach;
        let k = reach.len();
        (0..k)
            .map(|a| {
                (0..k)
                    .filter(|&b| {
                        a != b
                            && reach[a][b]
                            && !(0..k).any(|c| c != a && c != b && reach[a][c] && reach[c][b])
                    })
                    .collect()
            })
            .collect()
    }

    /// `{w : w <=_R x for some x in the right cell}`.
    pub fn down_set(&self, right_cell: usize) -> Vec<Permutation> {
        let g = self.group();
        (0..g.order())
            .filter(|&w| self.right.reach[right_cell][self.right.cell_of[w]])
            .map(|w| g.element(w).clone())
            .collect()
    }

    /// True when `members` is exactly one right cell.
    pub fn is_right_cell(&self, members: &[Permutation]) -> bool {
        let Some(first) = members.first() else {
            return false;
        };
        let Ok(i) = self.idx(first) else {
            return false;
        };
        let mut cell = self.right_cells().swap_remove(self.right.cell_of[i]);
        let mut m = members.to_vec();
        m.sort_by(|a, b| a.cmp_length_lex(b));
        m.dedup();
        cell.sort_by(|a, b| a.cmp_length_lex(b));
        m == cell
    }

    /// RSK shape of the two-sided cell of `w`.
    pub fn shape_of(&self, w: &Permutation) -> Partition {
        rsk(w).0.shape()
    }

    /// Which RSK tableau is constant on the right cells of this decomposition.
    pub fn detect_rsk_convention(&self) -> Result<RskConvention> {
        let mine = canonical(self.right_cells());
        for conv in [RskConvention::P, RskConvention::Q] {
            if canonical(cells_via_rsk(self.n(), conv)) == mine {
                return Ok(conv);
            }
        }
        Err(Error::ConventionMismatch { n: self.n() })
    }
}

fn canonical(mut cells: Vec<Vec<Permutation>>) -> Vec<Vec<Permutation>> {
    for c in &mut cells {
        c.sort();
    }
    cells.sort();
    cells
}

fn partition_by_scc(size: usize, edges: &[(usize, usize)]) -> Partitioned {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(size, edges.len());
    let nodes: Vec<NodeIndex> = (0..size).map(|_| graph.add_node(())).collect();
    for &(a, b) in edges {
        graph.update_edge(nodes[a], nodes[b], ());
    }
    let mut cells: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(NodeIndex::index).collect();
            v.sort_unstable();
            v
        })
        .collect();
    cells.sort();
    let mut cell_of = vec![0; size];
    for (k, c) in cells.iter().enumerate() {
        for &w in c {
            cell_of[w] = k;
        }
    }
    let k = cells.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in edges {
        let (ca, cb) = (cell_of[a], cell_of[b]);
        if ca != cb {
            succ[ca].push(cb);
        }
    }
    let mut reach = vec![vec![false; k]; k];
    for (start, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![start];
        row[start] = true;
        while let Some(c) = stack.pop() {
            for &d in &succ[c] {
                if !row[d] {
                    row[d] = true;
                    stack.push(d);
                }
            }
        }
    }
    Partitioned {
        cells,
        cell_of,
        reach,
    }
}

/// Groups `S_n` by the chosen RSK tableau. Cells are returned in
/// (length, lexicographic) order of their members and of their first member.
pub fn cells_via_rsk(n: usize, convention: RskConvention) -> Vec<Vec<Permutation>> {
    let g = SymGroup::new(n);
    let mut groups: HashMap<StandardTableau, Vec<Permutation>> = HashMap::new();
    for w in g.elements() {
        let (p, q) = rsk(w);
        let key = match convention {
            RskConvention::P => p,
            RskConvention::Q => q,
        };
        groups.entry(key).or_default().push(w.clone());
    }
    let mut cells: Vec<Vec<Permutation>> = groups.into_values().collect();
    cells.sort_by(|a, b| a[0].cmp_length_lex(&b[0]));
    cells
}

/// The right cell of `W' = S_{i_1} x ... x S_{i_r}` containing `x`: the
/// product of the right cells of the block restrictions of `x`, embedded
/// block-diagonally, in (length, lexicographic) order.
pub fn parabolic_right_cell(
    p: &ParabolicData,
    x: &Permutation,
    mut factor: impl FnMut(usize) -> Result<Arc<CellDecomposition>>,
) -> Result<Vec<Permutation>> {
    if !p.contains(x) {
        return Err(Error::NotACell(format!(
            "{x} does not lie in the parabolic subgroup {:?}",
            p.composition()
        )));
    }
    let mut out = vec![Permutation::identity(p.n())];
    for (offset, k) in p.blocks() {
        let restricted = x.restrict(offset, k).expect("x preserves its blocks");
        let cell = factor(k)?.right_cell_of(&restricted)?;
        let mut next = Vec::with_capacity(out.len() * cell.len());
        for u in &out {
            for c in &cell {
                next.push(u.compose(&c.embed(offset, p.n()))?);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.cmp_length_lex(b));
    Ok(out)
}

/// Every right cell of `W'`, each in (length, lexicographic) order, listed by
/// their first elements in the order of `wprime_elements`.
pub fn parabolic_right_cells(
    p: &ParabolicData,
    mut factor: impl FnMut(usize) -> Result<Arc<CellDecomposition>>,
) -> Result<Vec<Vec<Permutation>>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in p.wprime_elements() {
        if seen.contains(&x) {
            continue;
        }
        let cell = parabolic_right_cell(p, &x, &mut factor)?;
        seen.extend(cell.iter().cloned());
        out.push(cell);
    }
    Ok(out)
}

/// True when `members` is a right cell of `W'`.
pub fn is_parabolic_right_cell(
    p: &ParabolicData,
    members: &[Permutation],
    factor: impl FnMut(usize) -> Result<Arc<CellDecomposition>>,
) -> Result<bool> {
    let Some(first) = members.first() else {
        return Ok(false);
    };
    if !members.iter().all(|m| p.contains(m)) {
        return Ok(false);
    }
    let cell = parabolic_right_cell(p, first, factor)?;
    let mut m = members.to_vec();
    m.sort_by(|a, b| a.cmp_length_lex(b));
    m.dedup();
    Ok(m == cell)
}

/// The pair `(x_nu, x_mu)` attached to a partition `r` of `k`.
///
/// `nu = (b_1, ..., b_k)` with `b_{r_1 + ... + r_{j-1} + m} = r_j - m`, and
/// `mu + rho` is the decreasing rearrangement of `nu`. Each weight is turned
/// into a rearrangement `eta` of `(k-1, ..., 0)` by ranking its entries
/// (ties broken left to right), and `x` is defined by
/// `eta = x (k-1, ..., 0)`, i.e. `eta_i = k - x^-1(i)`.
pub fn singular_pair(r: &Partition) -> Result<(Permutation, Permutation)> {
    let k = r.n();
    if k < 2 {
        return Err(Error::invalid("singular_pair needs k >= 2"));
    }
    let mut nu = Vec::with_capacity(k);
    for &rj in r.parts() {
        nu.extend((1..=rj).map(|m| rj - m));
    }
    let mut mu_rho = nu.clone();
    mu_rho.sort_unstable_by(|a, b| b.cmp(a));
    Ok((weight_to_permutation(&nu)?, weight_to_permutation(&mu_rho)?))
}

/// The rank conversion `xi -> eta` followed by `eta = x rho`.
pub fn weight_to_permutation(xi: &[usize]) -> Result<Permutation> {
    let k = xi.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (xi[i], i));
    let mut eta = vec![0; k];
    for (rank, &i) in order.iter().enumerate() {
        eta[i] = rank;
    }
    let x_inv: Vec<usize> = eta.iter().map(|&e| k - e).collect();
    Ok(Permutation::from_one_line(&x_inv)?.inverse())
}

/// Right cells grouped by two-sided cell, keyed by RSK shape.
pub fn right_cells_by_shape(c: &CellDecomposition) -> BTreeMap<Partition, Vec<Vec<Permutation>>> {
    let mut out: BTreeMap<Partition, Vec<Vec<Permutation>>> = BTreeMap::new();
    for cell in c.right_cells() {
        out.entry(c.shape_of(&cell[0])).or_default().push(cell);
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::symgroup::{knuth_neighbors, partitions};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn decomposition(n: usize) -> CellDecomposition {
        CellDecomposition::compute(Arc::new(KlTable::compute(n)))
    }

    #[test]
    fn s2_and_s3_cells() {
        let c2 = decomposition(2);
        assert_eq!(c2.right_cells(), vec![vec![p("12")], vec![p("21")]]);
        let c3 = decomposition(3);
        let s = Permutation::simple(3, 1);
        let t = Permutation::simple(3, 2);
        let st = s.compose(&t).unwrap();
        let ts = t.compose(&s).unwrap();
        let e = Permutation::identity(3);
        let w0 = Permutation::longest(3);
        assert_eq!(
            canonical(c3.right_cells()),
            canonical(vec![vec![e], vec![s, st], vec![t, ts], vec![w0]])
        );
    }

    #[test]
    fn s4_right_cells() {
        let c = decomposition(4);
        assert_eq!(c.right_cells().len(), 10);
        let s1s3 = Permutation::from_word(4, &[1, 3]).unwrap();
        let s1s3s2 = Permutation::from_word(4, &[1, 3, 2]).unwrap();
        let cell = c.right_cell_of(&s1s3).unwrap();
        assert_eq!(cell, vec![s1s3, s1s3s2]);
    }

    #[test]
    fn right_order_examples() {
        let c = decomposition(3);
        let s = Permutation::simple(3, 1);
        let w0 = Permutation::longest(3);
        let e = Permutation::identity(3);
        assert!(c.right_leq(&s, &s).unwrap());
        assert!(c.right_leq(&s, &w0).unwrap());
        assert!(!c.right_leq(&w0, &s).unwrap());
        assert!(c.right_leq(&e, &s).unwrap());
        let e_cell = c.right_cell_id(0);
        assert_eq!(c.down_set(e_cell), vec![e]);
        assert_eq!(c.down_set(c.right_cell_id(5)).len(), 6);
        // two middle cells are incomparable, so w0 covers both and both cover e
        let covers = c.right_order_covers();
        let top = c.right_cell_id(5);
        assert_eq!(covers[top].len(), 2);
    }

    /// Reachability over one-step right edges, computed independently of the
    /// SCC condensation.
    #[test]
    #[allow(clippy::needless_range_loop)]
    fn right_order_matches_closure_oracle_s4() {
        let t = Arc::new(KlTable::compute(4));
        let c = CellDecomposition::compute(t.clone());
        let g = t.group().clone();
        let size = g.order();
        let mut reach = vec![vec![false; size]; size];
        for x in 0..size {
            reach[x][x] = true;
            for y in 0..size {
                if x == y || t.mu_idx(x, y) == 0 {
                    continue;
                }
                let xd = g.element(x).right_descents();
                let yd = g.element(y).right_descents();
                if xd.iter().any(|s| !yd.contains(s)) {
                    reach[x][y] = true;
                }
            }
        }
        // Floyd-Warshall transitive closure
        for k in 0..size {
            for i in 0..size {
                if reach[i][k] {
                    for j in 0..size {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                assert_eq!(c.right_geq_idx(x, y), reach[x][y], "{x} {y}");
            }
        }
    }

    #[test]
    fn cell_structure_invariants() {
        for n in 1..=5 {
            let c = decomposition(n);
            let g = c.group().clone();
            for w in 0..g.order() {
                let wi = g.inverse(w);
                // right cells are inverses of left cells
                for u in 0..g.order() {
                    let ui = g.inverse(u);
                    assert_eq!(
                        c.right_cell_id(w) == c.right_cell_id(u),
                        c.left_cell_id(wi) == c.left_cell_id(ui)
                    );
                }
            }
            // two-sided cells: unions of left and of right cells; left meets right
            // in exactly one element inside a two-sided cell
            for two in c.two_sided_cells() {
                let ids: HashSet<usize> = two.iter().map(|w| g.index_of(w).unwrap()).collect();
                let lefts: HashSet<usize> = ids.iter().map(|&w| c.left_cell_id(w)).collect();
                let rights: HashSet<usize> = ids.iter().map(|&w| c.right_cell_id(w)).collect();
                for &l in &lefts {
                    for &r in &rights {
                        let meet = ids
                            .iter()
                            .filter(|&&w| c.left_cell_id(w) == l && c.right_cell_id(w) == r)
                            .count();
                        assert_eq!(meet, 1);
                    }
                }
                let shape = c.shape_of(&two[0]);
                assert!(two.iter().all(|w| c.shape_of(w) == shape));
                assert_eq!(rights.len() as u128, shape.num_standard_tableaux());
            }
            assert_eq!(c.two_sided_cells().len(), partitions(n).len());
            for cell in c.right_cells() {
                let id = c.right_cell_id(g.index_of(&cell[0]).unwrap());
                let down = c.down_set(id);
                assert!(cell.iter().all(|w| down.contains(w)));
                assert!(c.is_right_cell(&cell));
            }
        }
    }

    #[test]
    fn rsk_convention_is_insertion_tableau() {
        for n in 2..=5 {
            assert_eq!(
                decomposition(n).detect_rsk_convention().unwrap(),
                RskConvention::P
            );
        }
    }

    #[test]
    fn knuth_classes_refine_right_cells() {
        let c = decomposition(5);
        let g = c.group().clone();
        for w in g.elements() {
            let wi = g.index_of(w).unwrap();
            for u in knuth_neighbors(w) {
                assert_eq!(
                    c.right_cell_id(wi),
                    c.right_cell_id(g.index_of(&u).unwrap())
                );
            }
        }
    }

    #[test]
    fn singular_pair_examples() {
        let (xn, xm) = singular_pair(&Partition::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(xn, Permutation::from_word(4, &[2, 1, 3]).unwrap());
        assert_eq!(xm, Permutation::from_word(4, &[1, 3]).unwrap());
        for k in 2..=6 {
            let (a, b) = singular_pair(&Partition::row(k)).unwrap();
            assert!(a.is_identity() && b.is_identity());
            let (a, b) = singular_pair(&Partition::column(k)).unwrap();
            assert_eq!(a, Permutation::longest(k));
            assert_eq!(b, Permutation::longest(k));
        }
    }

    #[test]
    fn singular_pairs_share_a_left_cell() {
        for k in 2..=6 {
            let c = decomposition(k);
            for r in partitions(k) {
                let (xn, xm) = singular_pair(&r).unwrap();
                assert!(c.same_left_cell(&xn, &xm).unwrap(), "{r}");
                assert_eq!(rsk(&xn).1, rsk(&xm).1);
            }
        }
    }

    #[test]
    fn parabolic_cells() {
        let pd = ParabolicData::new(vec![2, 2]).unwrap();
        let mut cache: HashMap<usize, Arc<CellDecomposition>> = HashMap::new();
        let mut factor = |k: usize| -> Result<Arc<CellDecomposition>> {
            Ok(cache
                .entry(k)
                .or_insert_with(|| Arc::new(decomposition(k)))
                .clone())
        };
        let cell = parabolic_right_cell(&pd, &p("2143"), &mut factor).unwrap();
        assert_eq!(cell, vec![p("2143")]);
        let pd3 = ParabolicData::new(vec![3, 1]).unwrap();
        let cell = parabolic_right_cell(&pd3, &p("2134"), &mut factor).unwrap();
        assert_eq!(cell, vec![p("2134"), p("2314")]);
        assert!(is_parabolic_right_cell(&pd3, &cell, &mut factor).unwrap());
        assert!(!is_parabolic_right_cell(&pd3, &[p("2134")], &mut factor).unwrap());
        assert!(parabolic_right_cell(&pd, &p("1324"), &mut factor).is_err());
    }
}
