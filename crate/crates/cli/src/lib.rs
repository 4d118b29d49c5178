//! Command-line front end: argument parsing, JSON rendering and the `verify`
//! driver. Every subcommand writes one JSON document, pretty-printed with
//! sorted object keys, so repeated runs are byte-identical.

pub mod oracle;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::cellmod::is_invariant;
use hecke_core::filtration::{dominance_filtration, dominance_matches_gk, gk_filtration};
use hecke_core::parabolic::parabolic_iso_check;
use hecke_core::symgroup::parse_composition;
use hecke_core::tables::MAX_TABLE_N;
use hecke_core::{
    CellModule, InducedModule, LaurentPoly, Matrix, ParabolicData, ParabolicKind, ParabolicModule,
    Permutation, Tables, TwistingAction,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Exit status for malformed or inconsistent arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for failed computations and failed checks.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "hecke",
    version,
    about = "Kazhdan-Lusztig combinatorics of symmetric groups: cells, cell modules, induced modules and filtrations"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Directory holding persistent KL tables.
    #[arg(long, global = true, env = "HECKE_CACHE_DIR", value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Report timings on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// KL polynomials h(y, x) of S_n.
    Kl {
        n: usize,
        /// A single pair, in one-line notation.
        #[arg(long, num_args = 2, value_names = ["Y", "X"])]
        pair: Option<Vec<String>>,
    },
    /// Left, right and two-sided cells of S_n with the right order.
    Cells { n: usize },
    /// Action matrices and invariant form of a right cell module.
    Cellmod {
        n: usize,
        /// Any element of the cell, e.g. 2,1,3.
        #[arg(long, value_name = "PERM")]
        cell_of: String,
    },
    /// Induced cell module with its four bases and Gram matrix.
    Induce {
        n: usize,
        /// Block sizes of W'; defaults to 1,...,1.
        #[arg(long, value_name = "I1,I2,...")]
        composition: Option<String>,
        /// Element of W' whose right cell is induced; defaults to the longest
        /// element of W'.
        #[arg(long, value_name = "PERM")]
        cell_of: Option<String>,
    },
    /// Sign or permutation module, or the twisting matrices.
    Parabolic {
        n: usize,
        #[arg(long, value_name = "I1,I2,...")]
        composition: Option<String>,
        #[arg(long, value_enum)]
        kind: ModuleKind,
    },
    /// Gelfand-Kirillov filtration of an induced module.
    Filtration {
        n: usize,
        #[arg(long, value_name = "I1,I2,...")]
        composition: Option<String>,
        #[arg(long, value_name = "PERM")]
        cell_of: Option<String>,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 4, value_name = "K")]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Sign,
    Permutation,
    Twisting,
}

/// Arguments that parse but make no sense together.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

/// Exit status for an error returned by [`run`].
pub fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    }
}

fn check_n(n: usize) -> anyhow::Result<()> {
    if n == 0 || n > MAX_TABLE_N {
        return usage(format!("n must lie in 1..={MAX_TABLE_N}, got {n}"));
    }
    Ok(())
}

fn parse_perm(n: usize, s: &str) -> anyhow::Result<Permutation> {
    match s.parse::<Permutation>() {
        Ok(w) if w.n() == n => Ok(w),
        Ok(w) => usage(format!("{w} is not an element of S_{n}")),
        Err(e) => usage(e.to_string()),
    }
}

fn parse_parabolic(n: usize, composition: Option<&str>) -> anyhow::Result<ParabolicData> {
    let Some(s) = composition else {
        return Ok(ParabolicData::trivial(n));
    };
    let comp = parse_composition(s).or_else(|e| usage(e.to_string()))?;
    ParabolicData::for_n(n, comp).or_else(|e| usage(e.to_string()))
}

fn parse_cell_in(p: &ParabolicData, cell_of: Option<&str>) -> anyhow::Result<Permutation> {
    let Some(s) = cell_of else {
        return Ok(p.longest_in_wprime());
    };
    let x = parse_perm(p.n(), s)?;
    if !p.contains(&x) {
        return usage(format!(
            "{x} does not lie in the parabolic subgroup {:?}",
            p.composition()
        ));
    }
    Ok(x)
}

#[derive(Serialize)]
struct Generator<'a, M: Serialize> {
    generator: usize,
    matrix: &'a M,
}

fn generators<'a, M: Serialize + 'a>(
    it: impl Iterator<Item = (usize, &'a M)>,
) -> Vec<Generator<'a, M>> {
    it.map(|(generator, matrix)| Generator { generator, matrix })
        .collect()
}

/// Runs one command; returns the process exit status on success.
pub fn run(cfg: &RunConfig) -> anyhow::Result<i32> {
    let tables = match &cfg.cache {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("creating cache directory {}", dir.display()))?;
            Tables::with_cache_dir(dir)
        }
        None => Tables::new(),
    };
    let start = Instant::now();
    let (value, status) = match &cfg.command {
        Command::Verify { max_n } => {
            if *max_n == 0 {
                return usage("--max-n must be positive");
            }
            let mut stdout = std::io::stdout().lock();
            let outcomes = verify::run_all(&tables, *max_n, |o| {
                let _ = writeln!(stdout, "{}", o.line());
                let _ = stdout.flush();
            });
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(stdout, "{passed}/{} checks passed", outcomes.len());
            let status = if passed == outcomes.len() {
                0
            } else {
                EXIT_FAILURE
            };
            if let Some(path) = &cfg.json {
                let report = json!({ "max_n": max_n, "checks": outcomes });
                write_json(path, &report)?;
            }
            return Ok(status);
        }
        other => (command_json(&tables, other)?, 0),
    };
    if cfg.verbose > 0 {
        eprintln!("computed in {:.3}s", start.elapsed().as_secs_f64());
    }
    match &cfg.json {
        Some(path) => write_json(path, &value)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(render(&value)?.as_bytes())?;
        }
    }
    Ok(status)
}

fn render(value: &Value) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_json(path: &Path, value: &Value) -> anyhow::Result<()> {
    fs::write(path, render(value)?).with_context(|| format!("writing {}", path.display()))
}

/// The JSON document produced by a non-`verify` command.
pub fn command_json(tables: &Tables, command: &Command) -> anyhow::Result<Value> {
    match command {
        Command::Kl { n, pair } => {
            check_n(*n)?;
            let table = tables.kl(*n)?;
            if let Some(pair) = pair {
                let y = parse_perm(*n, &pair[0])?;
                let x = parse_perm(*n, &pair[1])?;
                let h = table.h(&y, &x)?;
                return Ok(json!({ "n": n, "y": y, "x": x, "h": h }));
            }
            let g = table.group();
            let entries: Vec<Value> = (0..g.order())
                .flat_map(|x| {
                    table
                        .column(x)
                        .map(move |(y, h)| json!({ "y": g.element(y), "x": g.element(x), "h": h }))
                })
                .collect();
            Ok(json!({ "n": n, "entries": entries }))
        }
        Command::Cells { n } => {
            check_n(*n)?;
            let cells = tables.cells(*n)?;
            let g = cells.group().clone();
            let right: Vec<Value> = cells
                .right_cell_indices()
                .iter()
                .enumerate()
                .map(|(id, members)| {
                    let first = g.element(members[0]);
                    json!({
                        "id": id,
                        "members": members.iter().map(|&i| g.element(i)).collect::<Vec<_>>(),
                        "shape": cells.shape_of(first),
                        "two_sided": cells.two_sided_id(members[0]),
                    })
                })
                .collect();
            Ok(json!({
                "n": n,
                "right_cells": right,
                "left_cells": cells.left_cells(),
                "two_sided_cells": cells.two_sided_cells(),
                "right_order_covers": cells.right_order_covers(),
            }))
        }
        Command::Cellmod { n, cell_of } => {
            check_n(*n)?;
            let x = parse_perm(*n, cell_of)?;
            let m = CellModule::of(tables, &x)?;
            let form = m.invariant_form()?;
            let acts: Vec<&Matrix<LaurentPoly>> = m.actions().map(|(_, a)| a).collect();
            if !is_invariant(&form, &acts) {
                bail!("computed form is not invariant");
            }
            Ok(json!({
                "n": n,
                "cell": m.cell(),
                "specht_label": m.specht_label(),
                "dim": m.dim(),
                "action": generators(m.actions()),
                "form": form,
            }))
        }
        Command::Induce {
            n,
            composition,
            cell_of,
        } => {
            check_n(*n)?;
            let p = parse_parabolic(*n, composition.as_deref())?;
            let x = parse_cell_in(&p, cell_of.as_deref())?;
            let m = InducedModule::new(tables, &p, &x)?;
            let fb = m.four_bases()?;
            Ok(json!({
                "n": n,
                "composition": p.composition(),
                "cell": m.cell_module().cell(),
                "dim": m.dim(),
                "basis": m.basis(),
                "action": generators(m.actions()),
                "kl": fb.kl,
                "kl_inverse": fb.kl_inverse,
                "dual_standard": fb.dual_standard(),
                "dual_kl": fb.dual_kl()?,
                "gram": m.gram(),
            }))
        }
        Command::Parabolic {
            n,
            composition,
            kind,
        } => {
            check_n(*n)?;
            let p = parse_parabolic(*n, composition.as_deref())?;
            let (basis, matrices, identified) = match kind {
                ModuleKind::Twisting => {
                    let t = TwistingAction::new(&p);
                    (
                        json!(t.basis()),
                        json!(generators(t.matrices())),
                        Value::Null,
                    )
                }
                ModuleKind::Sign | ModuleKind::Permutation => {
                    let k = if *kind == ModuleKind::Sign {
                        ParabolicKind::Sign
                    } else {
                        ParabolicKind::Permutation
                    };
                    let m = ParabolicModule::new(k, &p);
                    // sign modules induce the cell of e, permutation modules that of w'_0
                    let x = match k {
                        ParabolicKind::Sign => Permutation::identity(*n),
                        ParabolicKind::Permutation => p.longest_in_wprime(),
                    };
                    let im = InducedModule::new(tables, &p, &x)?;
                    let iso = parabolic_iso_check(&m, &im)?.is_some();
                    (
                        json!(m.basis()),
                        json!(generators(m.actions())),
                        json!({ "cell_of": x, "isomorphic": iso }),
                    )
                }
            };
            let kind_name = match kind {
                ModuleKind::Sign => "sign",
                ModuleKind::Permutation => "permutation",
                ModuleKind::Twisting => "twisting",
            };
            Ok(json!({
                "n": n,
                "composition": p.composition(),
                "kind": kind_name,
                "basis": basis,
                "matrices": matrices,
                "induced_identification": identified,
            }))
        }
        Command::Filtration {
            n,
            composition,
            cell_of,
        } => {
            check_n(*n)?;
            let p = parse_parabolic(*n, composition.as_deref())?;
            let x = parse_cell_in(&p, cell_of.as_deref())?;
            let m = InducedModule::new(tables, &p, &x)?;
            let fb = m.four_bases()?;
            let f = gk_filtration(&m, &fb)?;
            let shapes: Vec<Vec<_>> = f
                .labels()
                .iter()
                .map(|set| set.iter().map(|l| l.transpose()).collect())
                .collect();
            let dominance: Vec<Value> = dominance_filtration(&f.total_specht())
                .into_iter()
                .map(|layer| {
                    layer
                        .into_iter()
                        .map(|(shape, multiplicity)| {
                            json!({ "shape": shape, "multiplicity": multiplicity })
                        })
                        .collect()
                })
                .collect();
            Ok(json!({
                "n": n,
                "composition": p.composition(),
                "cell": m.cell_module().cell(),
                "thresholds": f.thresholds,
                "layers": f.layers,
                "layer_shapes": shapes,
                "dominance_layers": dominance,
                "layers_incomparable": f.layers_incomparable(),
                "respects_dominance": f.respects_dominance(),
                "dominance_matches_gk": dominance_matches_gk(&f),
            }))
        }
        Command::Verify { .. } => unreachable!("handled by run"),
    }
}
