//! Gelfand-Kirillov filtration of induced cell modules and the dominance
//! filtration of permutation modules.
//!
//! The dual KL element at `(x, w)` is assigned the RSK shape `mu` of `xw`,
//! with `2 GKdim = n^2 - sum mu_i^2`. `Q_i` is spanned by the dual KL
//! elements with `2 GKdim` at most the `i`-th threshold; layer `i` carries
//! Specht modules labelled by transposed RSK shapes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::induced::{FourBases, InducedModule};
use crate::laurent::SparseMatrix;
use crate::symgroup::{
    class_size, class_word, factorial, mn_character, partitions, rsk, Partition, Permutation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GkStatistic {
    pub shape: Partition,
    /// `sum mu_i^2`.
    pub value: usize,
    /// `n(n-1) - sum mu_i(mu_i - 1)`.
    pub double_gkdim: usize,
}

pub fn gk_statistic(w: &Permutation) -> GkStatistic {
    let shape = rsk(w).0.shape();
    let value = shape.square_sum();
    let n = w.n();
    GkStatistic {
        shape,
        value,
        double_gkdim: n * n - value,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub double_gkdim: usize,
    pub value: usize,
    /// Basis indices of the dual KL elements in this layer.
    pub members: Vec<usize>,
    /// Specht multiplicities of the subquotient at `v = 1`.
    #[serde(serialize_with = "serialize_multiplicities")]
    pub specht: BTreeMap<Partition, u64>,
}

/// JSON objects need string keys, so the map is written as a list of
/// `{shape, multiplicity}` records in increasing shape order.
pub fn serialize_multiplicities<S: Serializer>(
    m: &BTreeMap<Partition, u64>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        shape: &'a Partition,
        multiplicity: u64,
    }
    serializer.collect_seq(m.iter().map(|(shape, &multiplicity)| Entry {
        shape,
        multiplicity,
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    pub n: usize,
    /// Increasing `2 GKdim` thresholds of `Q_1 < ... < Q_r`.
    pub thresholds: Vec<usize>,
    pub layers: Vec<Layer>,
}

impl Filtration {
    /// Specht labels of each layer.
    pub fn labels(&self) -> Vec<BTreeSet<Partition>> {
        self.layers
            .iter()
            .map(|l| l.specht.keys().cloned().collect())
            .collect()
    }

    /// Total Specht content of the module.
    pub fn total_specht(&self) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for l in &self.layers {
            for (p, m) in &l.specht {
                *out.entry(p.clone()).or_insert(0) += m;
            }
        }
        out
    }

    /// True when the labels inside every layer are pairwise incomparable.
    pub fn layers_incomparable(&self) -> bool {
        self.labels().iter().all(|set| {
            let v: Vec<&Partition> = set.iter().collect();
            v.iter().enumerate().all(|(i, a)| {
                v[i + 1..]
                    .iter()
                    .all(|b| a.incomparable(b).unwrap_or(false))
            })
        })
    }

    /// True when a label dominated by another label never lies in a later
    /// layer.
    pub fn respects_dominance(&self) -> bool {
        let labels = self.labels();
        labels.iter().enumerate().all(|(i, li)| {
            labels.iter().enumerate().all(|(j, lj)| {
                li.iter().all(|a| {
                    lj.iter()
                        .all(|b| !(a.dominance_lt(b).unwrap_or(false) && i >= j))
                })
            })
        })
    }
}

/// Computes and validates the filtration.
///
/// Fails with `NotSubmodule` when some `C_s` maps a dual KL element of a
/// layer outside the span of that layer and earlier ones, and with
/// `CharacterDecomposition` when a layer character is not a nonnegative
/// integral combination of irreducible characters.
pub fn gk_filtration(m: &InducedModule, bases: &FourBases) -> Result<Filtration> {
    let n = m.n();
    let stats: Vec<GkStatistic> = m.products().iter().map(gk_statistic).collect();
    let thresholds: Vec<usize> = stats
        .iter()
        .map(|s| s.double_gkdim)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let layer_of: Vec<usize> = stats
        .iter()
        .map(|s| {
            thresholds
                .binary_search(&s.double_gkdim)
                .expect("threshold")
        })
        .collect();
    let dual: Vec<(usize, SparseMatrix)> = (1..n)
        .into_par_iter()
        .map(|s| (s, m.dual_kl_action(bases, s)))
        .collect();
    for (s, a) in &dual {
        for (j, col) in a.columns().iter().enumerate() {
            if let Some((i, _)) = col.iter().find(|(i, _)| layer_of[*i] > layer_of[j]) {
                return Err(Error::NotSubmodule(format!(
                    "C_s{s} sends the dual KL element at {} (2GKdim {}) onto {} (2GKdim {})",
                    m.products()[j],
                    thresholds[layer_of[j]],
                    m.products()[*i],
                    thresholds[layer_of[*i]]
                )));
            }
        }
    }
    let standard = standard_at_one(&dual.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>());
    let layers = thresholds
        .par_iter()
        .enumerate()
        .map(|(k, &t)| {
            let members: Vec<usize> = (0..m.dim()).filter(|&i| layer_of[i] == k).collect();
            let chars = character_on(&standard, n, &members);
            let specht = decompose(n, &chars)?;
            Ok(Layer {
                double_gkdim: t,
                value: n * n - t,
                members,
                specht,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Filtration {
        n,
        thresholds,
        layers,
    })
}

type IntColumns = Vec<Vec<(usize, i64)>>;

/// `H_s = C_s - v` at `v = 1`, per generator.
fn standard_at_one(actions: &[SparseMatrix]) -> Vec<IntColumns> {
    actions
        .iter()
        .map(|a| {
            let mut cols = a.eval_one_i64();
            for (j, col) in cols.iter_mut().enumerate() {
                match col.iter_mut().find(|(i, _)| *i == j) {
                    Some(e) => e.1 -= 1,
                    None => col.push((j, -1)),
                }
                col.retain(|(_, x)| *x != 0);
            }
            cols
        })
        .collect()
}

/// Character of the subquotient spanned by `members` (a union of layers
/// closed under the action modulo earlier layers), per cycle type.
fn character_on(standard: &[IntColumns], n: usize, members: &[usize]) -> BTreeMap<Partition, i64> {
    let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
    partitions(n)
        .into_iter()
        .map(|mu| {
            let word = class_word(&mu);
            let trace = members
                .iter()
                .map(|&j| {
                    let mut v: HashMap<usize, i64> = HashMap::from([(j, 1)]);
                    for &s in &word {
                        let mut next: HashMap<usize, i64> = HashMap::new();
                        for (&k, &c) in &v {
                            for &(i, a) in &standard[s - 1][k] {
                                if inside.contains(&i) {
                                    *next.entry(i).or_insert(0) += c * a;
                                }
                            }
                        }
                        next.retain(|_, x| *x != 0);
                        v = next;
                    }
                    v.get(&j).copied().unwrap_or(0)
                })
                .sum();
            (mu, trace)
        })
        .collect()
}

/// Character at `v = 1` of a module given by its `C_s` matrices.
pub fn character_at_one(actions: &[SparseMatrix], n: usize) -> BTreeMap<Partition, i64> {
    let standard = standard_at_one(actions);
    let dim = actions.first().map_or(1, SparseMatrix::dim);
    character_on(&standard, n, &(0..dim).collect::<Vec<_>>())
}

/// Multiplicities of the irreducible characters in `chi`.
pub fn decompose(n: usize, chi: &BTreeMap<Partition, i64>) -> Result<BTreeMap<Partition, u64>> {
    let order = factorial(n) as i128;
    let classes = partitions(n);
    let mut out = BTreeMap::new();
    for lambda in &classes {
        let mut sum: i128 = 0;
        for mu in &classes {
            let c = *chi
                .get(mu)
                .ok_or_else(|| Error::CharacterDecomposition(format!("missing class {mu}")))?;
            sum += class_size(mu) as i128 * c as i128 * mn_character(lambda, mu)? as i128;
        }
        if sum % order != 0 || sum < 0 {
            return Err(Error::CharacterDecomposition(format!(
                "multiplicity of {lambda} is {sum}/{order}"
            )));
        }
        if sum > 0 {
            out.insert(lambda.clone(), (sum / order) as u64);
        }
    }
    Ok(out)
}

/// Layers obtained by repeatedly removing the dominance-minimal labels.
pub fn dominance_layers(labels: &BTreeSet<Partition>) -> Vec<BTreeSet<Partition>> {
    let mut rest = labels.clone();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let minimal: BTreeSet<Partition> = rest
            .iter()
            .filter(|a| !rest.iter().any(|b| b.dominance_lt(a).unwrap_or(false)))
            .cloned()
            .collect();
        rest.retain(|p| !minimal.contains(p));
        out.push(minimal);
    }
    out
}

/// The dominance filtration of a module with the given Specht content:
/// label sets of its layers, with multiplicities.
pub fn dominance_filtration(content: &BTreeMap<Partition, u64>) -> Vec<BTreeMap<Partition, u64>> {
    let labels: BTreeSet<Partition> = content.keys().cloned().collect();
    dominance_layers(&labels)
        .into_iter()
        .map(|layer| {
            layer
                .into_iter()
                .map(|p| (p.clone(), content[&p]))
                .collect()
        })
        .collect()
}

/// True when the GK layers carry exactly the dominance layers.
pub fn dominance_matches_gk(f: &Filtration) -> bool {
    let dom: Vec<BTreeMap<Partition, u64>> = dominance_filtration(&f.total_specht());
    let gk: Vec<BTreeMap<Partition, u64>> = f.layers.iter().map(|l| l.specht.clone()).collect();
    dom == gk
}

/// Checks `mu < nu` (dominance) implies `sum mu_i^2 < sum nu_i^2` for all
/// partitions of `n`; returns a counterexample if there is one.
pub fn dominance_implies_squares(n: usize) -> Option<(Partition, Partition)> {
    let ps = partitions(n);
    for mu in &ps {
        for nu in &ps {
            if mu.dominance_lt(nu).unwrap_or(false) && mu.square_sum() >= nu.square_sum() {
                return Some((mu.clone(), nu.clone()));
            }
        }
    }
    None
}

/// Pairs of Specht labels that share a dominance layer of the regular
/// module of `S_n` but whose GK statistics (of the transposed labels)
/// differ.
pub fn dominance_splits(n: usize) -> Vec<(Partition, Partition)> {
    let labels: BTreeSet<Partition> = partitions(n).into_iter().collect();
    let mut out = Vec::new();
    for layer in dominance_layers(&labels) {
        let v: Vec<&Partition> = layer.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                if a.transpose().square_sum() != b.transpose().square_sum() {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
    }
    out
}
