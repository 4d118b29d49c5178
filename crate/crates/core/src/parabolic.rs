//! Sign and permutation parabolic modules, and twisting matrices on the
//! classes of parabolic Verma modules.

use std::collections::HashMap;

use serde::Serialize;

use crate::cellmod::{solve_intertwiner, Intertwiner};
use crate::error::Result;
use crate::induced::InducedModule;
use crate::laurent::{LaurentPoly, Matrix, SparseMatrix, SparseVec};
use crate::symgroup::{ParabolicData, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParabolicKind {
    /// `H_s -> -v` on `W'`, so `C_s` acts by `0` on the inducing module.
    Sign,
    /// `H_s -> v^-1` on `W'`, so `C_s` acts by `v + v^-1`.
    Permutation,
}

impl std::str::FromStr for ParabolicKind {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sign" => Ok(ParabolicKind::Sign),
            "permutation" => Ok(ParabolicKind::Permutation),
            _ => Err(crate::error::Error::invalid(format!(
                "unknown module kind {s:?}"
            ))),
        }
    }
}

/// Basis `N_x` or `M_x`, `x` in `(W' \ W)_short`.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicModule {
    kind: ParabolicKind,
    parabolic: ParabolicData,
    basis: Vec<Permutation>,
    action: Vec<SparseMatrix>,
}

impl ParabolicModule {
    pub fn new(kind: ParabolicKind, p: &ParabolicData) -> Self {
        let basis = p.short_reps();
        let pos: HashMap<&Permutation, usize> =
            basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let dim = basis.len();
        let action = (1..p.n())
            .map(|s| {
                let cols: Vec<SparseVec> = basis
                    .iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let xs = x.mul_simple_right(s);
                        match pos.get(&xs) {
                            Some(&k) => {
                                let c = if xs.length() > x.length() {
                                    LaurentPoly::v()
                                } else {
                                    LaurentPoly::v_inv()
                                };
                                vec![(k, LaurentPoly::one()), (j, c)]
                            }
                            None => match kind {
                                ParabolicKind::Sign => Vec::new(),
                                ParabolicKind::Permutation => {
                                    vec![(j, LaurentPoly::v_plus_v_inv())]
                                }
                            },
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        ParabolicModule {
            kind,
            parabolic: p.clone(),
            basis,
            action,
        }
    }

    pub fn kind(&self) -> ParabolicKind {
        self.kind
    }

    pub fn parabolic_data(&self) -> &ParabolicData {
        &self.parabolic
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Action of the KL generator for `s_i`.
    pub fn action(&self, i: usize) -> &SparseMatrix {
        &self.action[i - 1]
    }

    pub fn actions(&self) -> impl Iterator<Item = (usize, &SparseMatrix)> {
        self.action.iter().enumerate().map(|(k, a)| (k + 1, a))
    }
}

/// Matrices of the graded twisting functors `T_s` on the classes
/// `[M(x . lambda)]`, `x` in `(W / W')_short`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistingAction {
    parabolic: ParabolicData,
    basis: Vec<Permutation>,
    matrices: Vec<SparseMatrix>,
}

impl TwistingAction {
    /// Basis: inverses of the right-coset representatives, in their order.
    pub fn new(p: &ParabolicData) -> Self {
        let basis = p.left_reps();
        let pos: HashMap<&Permutation, usize> =
            basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let dim = basis.len();
        let matrices = (1..p.n())
            .map(|s| {
                let cols: Vec<SparseVec> = basis
                    .iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let sx = x.mul_simple_left(s);
                        match pos.get(&sx) {
                            Some(&k) if sx.length() < x.length() => {
                                vec![(k, LaurentPoly::one()), (j, LaurentPoly::v_inv_minus_v())]
                            }
                            Some(&k) => vec![(k, LaurentPoly::one())],
                            None => vec![(j, LaurentPoly::v_inv())],
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        TwistingAction {
            parabolic: p.clone(),
            basis,
            matrices,
        }
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `T_{s_i}`.
    pub fn matrix(&self, i: usize) -> &SparseMatrix {
        &self.matrices[i - 1]
    }

    pub fn matrices(&self) -> impl Iterator<Item = (usize, &SparseMatrix)> {
        self.matrices.iter().enumerate().map(|(k, a)| (k + 1, a))
    }

    pub fn parabolic_data(&self) -> &ParabolicData {
        &self.parabolic
    }
}

/// An isomorphism from a parabolic module to an induced module over the same
/// `W'`.
///
/// Tries the basis matching `N_w -> D_{x,w}` (one-dimensional cell) first;
/// otherwise solves for an intertwiner over the fraction field.
pub fn parabolic_iso_check(
    pm: &ParabolicModule,
    im: &InducedModule,
) -> Result<Option<Intertwiner>> {
    if pm.parabolic != *im.parabolic_data() {
        return Ok(None);
    }
    let d = pm.dim();
    if d != im.dim() {
        return Ok(None);
    }
    let dense_src: Vec<Matrix<LaurentPoly>> =
        pm.action.iter().map(SparseMatrix::to_dense).collect();
    let dense_dst: Vec<Matrix<LaurentPoly>> = im.actions().map(|(_, a)| a.to_dense()).collect();
    if im.cell_module().dim() == 1 {
        let x = &im.cell_module().cell()[0];
        let mut phi = Matrix::zeros(d, d);
        for (j, w) in pm.basis.iter().enumerate() {
            let i = im.index_of(x, w).expect("same coset representatives");
            phi[(i, j)] = LaurentPoly::one();
        }
        let commutes = dense_src
            .iter()
            .zip(&dense_dst)
            .all(|(a, b)| phi.mul(a).ok() == b.mul(&phi).ok());
        if commutes {
            return Ok(Some(Intertwiner {
                inverse: phi.transpose().to_rational(),
                matrix: phi,
                solution_dim: 1,
            }));
        }
    }
    solve_intertwiner(
        &dense_src.iter().collect::<Vec<_>>(),
        &dense_dst.iter().collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::{check_kl_relations, check_standard_relations};
    use crate::symgroup::compositions;
    use crate::tables::Tables;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn s3_tables() {
        let pd = ParabolicData::new(vec![2, 1]).unwrap();
        let e = [(0usize, LaurentPoly::one())];
        let sign = ParabolicModule::new(ParabolicKind::Sign, &pd);
        assert!(sign.action(1).apply(&e).is_empty());
        let perm = ParabolicModule::new(ParabolicKind::Permutation, &pd);
        assert_eq!(
            perm.action(1).apply(&e),
            vec![(0, LaurentPoly::v_plus_v_inv())]
        );
        assert_eq!(
            perm.action(2).apply(&e),
            vec![(0, LaurentPoly::v()), (1, LaurentPoly::one())]
        );
    }

    #[test]
    fn relations_for_all_compositions_up_to_5() {
        for n in 1..=5 {
            for comp in compositions(n) {
                let pd = ParabolicData::new(comp).unwrap();
                for kind in [ParabolicKind::Sign, ParabolicKind::Permutation] {
                    let m = ParabolicModule::new(kind, &pd);
                    check_kl_relations(&m.actions().collect::<Vec<_>>()).unwrap();
                }
                let t = TwistingAction::new(&pd);
                check_standard_relations(&t.matrices().collect::<Vec<_>>()).unwrap();
            }
        }
    }

    #[test]
    fn twisting_regular_s2() {
        let t = TwistingAction::new(&ParabolicData::trivial(2));
        let m = t.matrix(1);
        assert_eq!(m.column(0), &vec![(1, LaurentPoly::one())]);
        assert_eq!(
            m.column(1),
            &vec![(0, LaurentPoly::one()), (1, LaurentPoly::v_inv_minus_v())]
        );
        let single = TwistingAction::new(&ParabolicData::full(2));
        assert_eq!(single.matrix(1).column(0), &vec![(0, LaurentPoly::v_inv())]);
    }

    #[test]
    fn twisting_at_one_is_the_coset_permutation_action() {
        let pd = ParabolicData::new(vec![2, 1]).unwrap();
        let t = TwistingAction::new(&pd);
        for (s, m) in t.matrices() {
            let at_one = m.eval_one_i64();
            for (j, x) in t.basis().iter().enumerate() {
                let sx = x.mul_simple_left(s);
                let target = t
                    .basis()
                    .iter()
                    .position(|y| pd.contains(&y.inverse().compose(&sx).unwrap()))
                    .unwrap();
                assert_eq!(at_one[j], vec![(target, 1)]);
            }
        }
    }

    #[test]
    fn identifications_with_induced_modules() {
        let tables = Tables::new();
        for comp in [
            vec![2, 1],
            vec![1, 2],
            vec![1, 1, 1],
            vec![2, 2],
            vec![3, 1],
        ] {
            let pd = ParabolicData::new(comp).unwrap();
            let n = pd.n();
            let sign = ParabolicModule::new(ParabolicKind::Sign, &pd);
            let from_e = InducedModule::new(&tables, &pd, &Permutation::identity(n)).unwrap();
            assert!(parabolic_iso_check(&sign, &from_e).unwrap().is_some());
            let perm = ParabolicModule::new(ParabolicKind::Permutation, &pd);
            let from_top = InducedModule::new(&tables, &pd, &pd.longest_in_wprime()).unwrap();
            assert!(parabolic_iso_check(&perm, &from_top).unwrap().is_some());
        }
        let pd = ParabolicData::new(vec![2, 1]).unwrap();
        let perm = ParabolicModule::new(ParabolicKind::Permutation, &pd);
        let from_s = InducedModule::new(&tables, &pd, &p("213")).unwrap();
        assert!(parabolic_iso_check(&perm, &from_s).unwrap().is_some());
        let sign = ParabolicModule::new(ParabolicKind::Sign, &pd);
        assert!(parabolic_iso_check(&sign, &from_s).unwrap().is_none());
    }
}
