//! The acceptance checks behind `verify`.
//!
//! Each check scales with `max_n` where a size is involved; the fixed
//! fixtures and the partition arithmetic always run in full.
//!
//! 1. brute-force KL basis equals the recursive table (`n <= 4`, 5 s budget)
//! 2. cells of `S_3` and agreement of `mu`-graph cells with RSK (`n <= 5`, 30 s)
//! 3. defining relations on cell, induced, parabolic and twisting matrices (`n <= 5`)
//! 4. rank-two fixture for the regular and twisting matrices
//! 5. rank-three fixture for the dual KL action on the regular module
//! 6. the induced KL element in `S_3` over `<s>`
//! 7. invariant forms and Gram block structure (`n <= 5`)
//! 8. cell modules are isomorphic iff their cells share a two-sided cell (`n <= 5`)
//! 9. GK filtrations of regular and permutation modules (`n <= 6`) and the `n = 7` split
//! 10. dominance implies a smaller sum of squares (`n <= 12`)
//! 11. singular pairs share a left cell (`k <= 6`)
//! 12. nonnegativity of KL coefficients (`n <= 6`)

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use hecke_core::cellmod::{cell_iso, is_invariant, Intertwiner};
use hecke_core::cells::{cells_via_rsk, parabolic_right_cells, singular_pair};
use hecke_core::filtration::{
    character_at_one, decompose, dominance_implies_squares, dominance_matches_gk, dominance_splits,
    gk_filtration, Filtration,
};
use hecke_core::laurent::SparseMatrix;
use hecke_core::relations::{check_kl_relations, check_standard_relations};
use hecke_core::symgroup::{compositions, partitions};
use hecke_core::{
    CellModule, InducedModule, LaurentPoly, Matrix, ParabolicData, ParabolicKind, ParabolicModule,
    Partition, Permutation, RskConvention, Tables, TwistingAction,
};
use serde::Serialize;

use crate::oracle::{self, Solve};

type CheckResult = Result<String, String>;

pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub budget: Option<Duration>,
    run: fn(&Tables, usize) -> CheckResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {:<22} {:>8.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub const CHECKS: [Check; 12] = [
    Check {
        id: 1,
        name: "kl-oracle",
        budget: Some(Duration::from_secs(5)),
        run: kl_oracle,
    },
    Check {
        id: 2,
        name: "cells",
        budget: Some(Duration::from_secs(30)),
        run: cells_match,
    },
    Check {
        id: 3,
        name: "relations",
        budget: None,
        run: relations,
    },
    Check {
        id: 4,
        name: "rank-two-fixture",
        budget: None,
        run: rank_two_fixture,
    },
    Check {
        id: 5,
        name: "rank-three-fixture",
        budget: None,
        run: rank_three_fixture,
    },
    Check {
        id: 6,
        name: "induced-kl-element",
        budget: None,
        run: induced_kl_element,
    },
    Check {
        id: 7,
        name: "form-invariance",
        budget: None,
        run: form_invariance,
    },
    Check {
        id: 8,
        name: "cell-isomorphism",
        budget: None,
        run: cell_isomorphism,
    },
    Check {
        id: 9,
        name: "filtrations",
        budget: None,
        run: filtrations,
    },
    Check {
        id: 10,
        name: "dominance-squares",
        budget: None,
        run: dominance_squares,
    },
    Check {
        id: 11,
        name: "singular-pairs",
        budget: None,
        run: singular_pairs,
    },
    Check {
        id: 12,
        name: "kl-positivity",
        budget: None,
        run: kl_positivity,
    },
];

pub fn run_check(tables: &Tables, check: &Check, max_n: usize) -> Outcome {
    let start = Instant::now();
    let result = (check.run)(tables, max_n);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(budget) = check.budget {
        if passed && elapsed > budget {
            passed = false;
            detail = format!("{detail}; exceeded the {budget:?} budget");
        }
    }
    Outcome {
        id: check.id,
        name: check.name,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
    }
}

/// Runs every check in order; `on_outcome` sees each result as it lands.
pub fn run_all(
    tables: &Tables,
    max_n: usize,
    mut on_outcome: impl FnMut(&Outcome),
) -> Vec<Outcome> {
    CHECKS
        .iter()
        .map(|c| {
            let o = run_check(tables, c, max_n);
            on_outcome(&o);
            o
        })
        .collect()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("literal permutation")
}

fn word(n: usize, w: &[usize]) -> Permutation {
    Permutation::from_word(n, w).expect("literal word")
}

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

/// Every induced module `S(R') (x) H` with `n` in the range, over all
/// compositions and all right cells `R'` of `W'`.
fn all_induced(tables: &Tables, n: usize) -> Result<Vec<InducedModule>, String> {
    let mut out = Vec::new();
    for comp in compositions(n) {
        let pd = ParabolicData::new(comp).map_err(err)?;
        for cell in parabolic_right_cells(&pd, |k| tables.cells(k)).map_err(err)? {
            out.push(InducedModule::from_cell(tables, &pd, &cell).map_err(err)?);
        }
    }
    Ok(out)
}

fn all_cell_modules(tables: &Tables, n: usize) -> Result<Vec<CellModule>, String> {
    let cells = tables.cells(n).map_err(err)?;
    cells
        .right_cells()
        .iter()
        .map(|c| CellModule::new(tables, c).map_err(err))
        .collect()
}

fn sparse_actions(m: &CellModule) -> Vec<(usize, SparseMatrix)> {
    m.actions()
        .map(|(s, a)| (s, SparseMatrix::from_dense(a)))
        .collect()
}

fn kl_oracle(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(4);
    let mut pairs = 0usize;
    for n in 1..=top {
        let table = tables.kl(n).map_err(err)?;
        let g = table.group().clone();
        let bars = oracle::standard_bars(&g);
        for x in 0..g.order() {
            let h = match oracle::solve(&g, &bars, x) {
                Solve::Unique(h) => h,
                Solve::Inconsistent => {
                    return Err(format!("S_{n}, x = {}: no solution", g.element(x)))
                }
                Solve::Underdetermined(k) => {
                    return Err(format!("S_{n}, x = {}: {k} free unknowns", g.element(x)))
                }
                Solve::NonIntegral => {
                    return Err(format!(
                        "S_{n}, x = {}: non-integral solution",
                        g.element(x)
                    ))
                }
            };
            for (y, hy) in h.iter().enumerate() {
                let recursive = table.h_idx(y, x);
                ensure!(
                    *hy == recursive,
                    "S_{n}: h({}, {}) is {hy} by brute force, {recursive} recursively",
                    g.element(y),
                    g.element(x)
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} coefficients agree for n <= {top}"))
}

fn cell_sets(cells: Vec<Vec<Permutation>>) -> BTreeSet<BTreeSet<Permutation>> {
    cells.into_iter().map(|c| c.into_iter().collect()).collect()
}

fn cells_match(tables: &Tables, max_n: usize) -> CheckResult {
    let c3 = tables.cells(3).map_err(err)?;
    let e = Permutation::identity(3);
    let (s, t) = (word(3, &[1]), word(3, &[2]));
    let (st, ts) = (word(3, &[1, 2]), word(3, &[2, 1]));
    let w0 = Permutation::longest(3);
    let expected = cell_sets(vec![vec![e], vec![s, st], vec![t, ts], vec![w0]]);
    ensure!(
        cell_sets(c3.right_cells()) == expected,
        "right cells of S_3: {:?}",
        c3.right_cells()
    );
    let top = max_n.min(5);
    let mut count = 0;
    for n in 1..=top {
        let c = tables.cells(n).map_err(err)?;
        ensure!(
            cell_sets(c.right_cells()) == cell_sets(cells_via_rsk(n, RskConvention::P)),
            "S_{n}: right cells differ from insertion-tableau classes"
        );
        ensure!(
            cell_sets(c.left_cells()) == cell_sets(cells_via_rsk(n, RskConvention::Q)),
            "S_{n}: left cells differ from recording-tableau classes"
        );
        count += c.right_cells().len();
    }
    Ok(format!(
        "S_3 cells exact; {count} right cells match RSK for n <= {top}"
    ))
}

fn relations(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(5);
    let (mut cellmods, mut induced, mut parabolic) = (0, 0, 0);
    for n in 1..=top {
        for m in all_cell_modules(tables, n)? {
            let acts = sparse_actions(&m);
            let refs: Vec<(usize, &SparseMatrix)> = acts.iter().map(|(s, a)| (*s, a)).collect();
            check_kl_relations(&refs).map_err(|e| format!("cell module {:?}: {e}", m.cell()))?;
            cellmods += 1;
        }
        for m in all_induced(tables, n)? {
            check_kl_relations(&m.actions().collect::<Vec<_>>()).map_err(|e| {
                format!(
                    "induced module {:?} over {:?}: {e}",
                    m.cell_module().cell(),
                    m.parabolic_data().composition()
                )
            })?;
            induced += 1;
        }
        for comp in compositions(n) {
            let pd = ParabolicData::new(comp).map_err(err)?;
            for kind in [ParabolicKind::Sign, ParabolicKind::Permutation] {
                let m = ParabolicModule::new(kind, &pd);
                check_kl_relations(&m.actions().collect::<Vec<_>>())
                    .map_err(|e| format!("{kind:?} module {:?}: {e}", pd.composition()))?;
            }
            let t = TwistingAction::new(&pd);
            check_standard_relations(&t.matrices().collect::<Vec<_>>())
                .map_err(|e| format!("twisting {:?}: {e}", pd.composition()))?;
            parabolic += 3;
        }
    }
    Ok(format!(
        "{cellmods} cell, {induced} induced, {parabolic} parabolic and twisting modules for n <= {top}"
    ))
}

fn lp(min_deg: i32, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_i64s(min_deg, coeffs)
}

fn rank_two_fixture(tables: &Tables, _max_n: usize) -> CheckResult {
    let v = LaurentPoly::v;
    let one = LaurentPoly::one;
    let zero = LaurentPoly::zero;
    let pd = ParabolicData::trivial(2);
    let regular = InducedModule::new(tables, &pd, &Permutation::identity(2)).map_err(err)?;
    ensure!(
        regular.products() == [Permutation::identity(2), perm("21")],
        "unexpected basis order {:?}",
        regular.products()
    );
    // columns are images: C_s D(e) = v D(e) + D(s), C_s D(s) = D(e) + v^-1 D(s)
    let theta = Matrix::from_rows(vec![vec![v(), one()], vec![one(), LaurentPoly::v_inv()]]);
    ensure!(
        regular.action(1).to_dense() == theta,
        "regular C_s is {:?}",
        regular.action(1).to_dense()
    );
    // T_s D(e) = D(s), T_s D(s) = D(e) + (v^-1 - v) D(s)
    let twisting = TwistingAction::new(&pd);
    let t = Matrix::from_rows(vec![
        vec![zero(), one()],
        vec![one(), LaurentPoly::v_inv_minus_v()],
    ]);
    ensure!(
        twisting.matrix(1).to_dense() == t,
        "twisting H_s is {:?}",
        twisting.matrix(1).to_dense()
    );
    let perm_mod = ParabolicModule::new(ParabolicKind::Permutation, &pd);
    ensure!(
        perm_mod.action(1).to_dense() == theta,
        "parabolic module over the trivial subgroup differs from the regular module"
    );
    Ok("C_s and T_s tables reproduced".into())
}

fn rank_three_fixture(tables: &Tables, _max_n: usize) -> CheckResult {
    let m = InducedModule::new(
        tables,
        &ParabolicData::trivial(3),
        &Permutation::identity(3),
    )
    .map_err(err)?;
    let g = tables.kl(3).map_err(err)?.group().clone();
    ensure!(m.products() == g.elements(), "basis is not the group order");
    let fb = m.four_bases().map_err(err)?;
    let e = Permutation::identity(3);
    let (s, t) = (word(3, &[1]), word(3, &[2]));
    let (st, ts) = (word(3, &[1, 2]), word(3, &[2, 1]));
    let w0 = Permutation::longest(3);
    let idx = |w: &Permutation| g.index_of(w).expect("element of S_3");
    // (generator, loops, edges a -> b with unit weight)
    let graph = [
        (
            1,
            vec![&s, &ts, &w0],
            vec![(&s, &e), (&s, &st), (&w0, &st), (&ts, &t)],
        ),
        (
            2,
            vec![&t, &st, &w0],
            vec![(&t, &e), (&t, &ts), (&w0, &ts), (&st, &s)],
        ),
    ];
    for (gen, loops, edges) in graph {
        let mut expected = Matrix::zeros(6, 6);
        for w in loops {
            expected[(idx(w), idx(w))] = LaurentPoly::v_plus_v_inv();
        }
        for (a, b) in edges {
            expected[(idx(b), idx(a))] = LaurentPoly::one();
        }
        let got = m.dual_kl_action(&fb, gen).to_dense();
        ensure!(
            got == expected,
            "dual KL action of generator {gen}: {got:?}"
        );
    }
    Ok("dual KL graph reproduced for both generators".into())
}

fn induced_kl_element(tables: &Tables, _max_n: usize) -> CheckResult {
    let pd = ParabolicData::new(vec![2, 1]).map_err(err)?;
    let s = word(3, &[1]);
    let m = InducedModule::from_cell(tables, &pd, std::slice::from_ref(&s)).map_err(err)?;
    let e = Permutation::identity(3);
    let t = word(3, &[2]);
    let ts = word(3, &[2, 1]);
    let at = |w: &Permutation| {
        m.index_of(&s, w)
            .ok_or_else(|| format!("({s}, {w}) is not an index pair"))
    };
    let (i_e, i_t, i_ts) = (at(&e)?, at(&t)?, at(&ts)?);
    let kl = m.kl_elements().map_err(err)?;
    let mut got: BTreeMap<usize, LaurentPoly> = kl.column(i_ts).iter().cloned().collect();
    let expected = BTreeMap::from([
        (i_ts, LaurentPoly::one()),
        (i_t, LaurentPoly::v()),
        (i_e, lp(2, &[1])),
    ]);
    got.retain(|_, c| !c.is_zero());
    ensure!(got == expected, "KL element is {got:?}");
    Ok("D_{s,ts} + v D_{s,t} + v^2 D_{s,e}".into())
}

fn form_invariance(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(5);
    let (mut cellmods, mut induced) = (0, 0);
    for n in 1..=top {
        for m in all_cell_modules(tables, n)? {
            let g = m.invariant_form().map_err(err)?;
            let acts: Vec<&Matrix<LaurentPoly>> = m.actions().map(|(_, a)| a).collect();
            ensure!(
                is_invariant(&g, &acts),
                "form of cell module {:?} is not invariant",
                m.cell()
            );
            ensure!(g.is_symmetric(), "form of {:?} is not symmetric", m.cell());
            cellmods += 1;
        }
        for m in all_induced(tables, n)? {
            let g = m.gram();
            for (s, a) in m.actions() {
                ensure!(
                    a.transpose().compose(&g) == g.compose(a),
                    "Gram matrix of {:?} over {:?} is not invariant under generator {s}",
                    m.cell_module().cell(),
                    m.parabolic_data().composition()
                );
            }
            let basis = m.basis();
            let form = m.cell_form();
            let cm = m.cell_module();
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let expected = if a.w == b.w {
                        let ia = cm.position(&a.x).ok_or("basis x outside the cell")?;
                        let ib = cm.position(&b.x).ok_or("basis x outside the cell")?;
                        form[(ia, ib)].clone()
                    } else {
                        LaurentPoly::zero()
                    };
                    ensure!(
                        g.get(i, j) == expected,
                        "Gram entry ({i}, {j}) of {:?} over {:?} breaks the block structure",
                        cm.cell(),
                        m.parabolic_data().composition()
                    );
                }
            }
            induced += 1;
        }
    }
    Ok(format!(
        "{cellmods} cell and {induced} induced modules for n <= {top}"
    ))
}

fn intertwines(phi: &Intertwiner, a: &CellModule, b: &CellModule) -> bool {
    a.actions().zip(b.actions()).all(|((_, x), (_, y))| {
        matches!((phi.matrix.mul(x), y.mul(&phi.matrix)), (Ok(l), Ok(r)) if l == r)
    }) && phi
        .matrix
        .to_rational()
        .mul(&phi.inverse)
        .is_ok_and(|m| m.is_identity())
}

fn cell_isomorphism(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(5);
    let (mut iso, mut non_iso) = (0, 0);
    for n in 1..=top {
        let cells = tables.cells(n).map_err(err)?;
        let mods = all_cell_modules(tables, n)?;
        let chars = mods
            .iter()
            .map(|m| m.character().map_err(err))
            .collect::<Result<Vec<_>, _>>()?;
        for i in 0..mods.len() {
            for j in i + 1..mods.len() {
                let (a, b) = (&mods[i], &mods[j]);
                let same = cells
                    .same_two_sided_cell(&a.cell()[0], &b.cell()[0])
                    .map_err(err)?;
                let found = cell_iso(a, b).map_err(err)?;
                match (same, found) {
                    (true, Some(phi)) => {
                        ensure!(
                            intertwines(&phi, a, b),
                            "intertwiner {:?} -> {:?} does not intertwine",
                            a.cell(),
                            b.cell()
                        );
                        iso += 1;
                    }
                    (true, None) => {
                        return Err(format!(
                            "no intertwiner {:?} -> {:?} within one two-sided cell",
                            a.cell(),
                            b.cell()
                        ))
                    }
                    (false, Some(_)) => {
                        return Err(format!(
                            "intertwiner {:?} -> {:?} across two-sided cells",
                            a.cell(),
                            b.cell()
                        ))
                    }
                    (false, None) => {
                        // characters at v = 1 certify the absence of an isomorphism
                        ensure!(
                            chars[i] != chars[j],
                            "{:?} and {:?} have equal characters but no intertwiner",
                            a.cell(),
                            b.cell()
                        );
                        non_iso += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{iso} isomorphic and {non_iso} non-isomorphic pairs for n <= {top}"
    ))
}

fn check_filtration(m: &InducedModule, label: &str) -> Result<Filtration, String> {
    let n = m.n();
    let fb = m.four_bases().map_err(err)?;
    let f = gk_filtration(m, &fb).map_err(|e| format!("{label}: {e}"))?;
    ensure!(
        f.layers_incomparable(),
        "{label}: comparable labels in one layer"
    );
    ensure!(
        f.respects_dominance(),
        "{label}: layers do not respect dominance"
    );
    ensure!(
        dominance_matches_gk(&f),
        "{label}: dominance and GK filtrations differ"
    );
    let acts: Vec<SparseMatrix> = m.actions().map(|(_, a)| a.clone()).collect();
    let whole = decompose(n, &character_at_one(&acts, n)).map_err(err)?;
    ensure!(
        f.total_specht() == whole,
        "{label}: layer contents {:?} do not add up to {whole:?}",
        f.total_specht()
    );
    Ok(f)
}

fn filtrations(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(6);
    let mut modules = 0;
    for n in 1..=top {
        let regular = InducedModule::new(
            tables,
            &ParabolicData::trivial(n),
            &Permutation::identity(n),
        )
        .map_err(err)?;
        check_filtration(&regular, &format!("regular S_{n}"))?;
        modules += 1;
        for lambda in partitions(n) {
            let pd = ParabolicData::new(lambda.parts().to_vec()).map_err(err)?;
            let m = InducedModule::new(tables, &pd, &pd.longest_in_wprime()).map_err(err)?;
            let label = format!("permutation module ({lambda})");
            let f = check_filtration(&m, &label)?;
            ensure!(
                f.layers[0].specht == BTreeMap::from([(lambda.clone(), 1)]),
                "{label}: first layer is {:?}",
                f.layers[0].specht
            );
            modules += 1;
        }
    }
    for n in 1..=6 {
        ensure!(
            dominance_splits(n).is_empty(),
            "S_{n}: a dominance layer splits under GK"
        );
    }
    let split = dominance_splits(7);
    let expected = vec![(p("2,2,2,1"), p("3,1,1,1,1"))];
    ensure!(split == expected, "S_7 splits: {split:?}");
    let (a, b) = (p("4,3"), p("5,1,1"));
    ensure!(
        (a.square_sum(), b.square_sum()) == (25, 27),
        "statistics of (4,3) and (5,1,1): {} and {}",
        a.square_sum(),
        b.square_sum()
    );
    ensure!(
        a.incomparable(&b).map_err(err)?,
        "(4,3) and (5,1,1) are comparable"
    );
    Ok(format!(
        "{modules} modules for n <= {top}; S_7 splits (5,1,1) [27] from (4,3) [25]"
    ))
}

fn dominance_squares(_tables: &Tables, _max_n: usize) -> CheckResult {
    let mut pairs = 0usize;
    for n in 1..=12 {
        if let Some((mu, nu)) = dominance_implies_squares(n) {
            return Err(format!("({mu}) < ({nu}) without a smaller sum of squares"));
        }
        let k = partitions(n).len();
        pairs += k * k;
    }
    Ok(format!("{pairs} ordered pairs of partitions for n <= 12"))
}

fn singular_pairs(tables: &Tables, max_n: usize) -> CheckResult {
    let (x_nu, x_mu) = singular_pair(&p("2,2")).map_err(err)?;
    ensure!(
        (&x_nu, &x_mu) == (&word(4, &[2, 1, 3]), &word(4, &[1, 3])),
        "singular_pair((2,2)) = ({x_nu}, {x_mu})"
    );
    let top = max_n.clamp(4, 6);
    let mut count = 0;
    for k in 2..=top {
        let cells = tables.cells(k).map_err(err)?;
        for r in partitions(k) {
            let (x_nu, x_mu) = singular_pair(&r).map_err(err)?;
            ensure!(
                cells.same_left_cell(&x_nu, &x_mu).map_err(err)?,
                "({r}): {x_nu} and {x_mu} lie in different left cells"
            );
            count += 1;
        }
    }
    Ok(format!(
        "example reproduced; {count} partitions for k <= {top}"
    ))
}

fn kl_positivity(tables: &Tables, max_n: usize) -> CheckResult {
    let top = max_n.min(6);
    let mut coeffs = 0usize;
    for n in 1..=top {
        let table = tables.kl(n).map_err(err)?;
        for x in 0..table.group().order() {
            for (y, h) in table.column(x) {
                ensure!(
                    h.is_nonnegative(),
                    "S_{n}: h({}, {}) = {h}",
                    table.group().element(y),
                    table.group().element(x)
                );
                coeffs += h.coeffs().len();
            }
        }
    }
    Ok(format!("{coeffs} coefficients nonnegative for n <= {top}"))
}
