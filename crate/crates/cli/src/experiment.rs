//! Seed sweeps over the constructions, with optional certifier and detector
//! tasks per cell.
//!
//! A spec is JSON:
//!
//! ```json
//! {
//!   "constructions": [{"name": "tournament3"}, {"name": "sk-free", "k": 4}],
//!   "ns": [100, 200], "seeds": [0, 1, 2],
//!   "tasks": [{"task": "weak", "mode": "search"}, {"task": "k4-minus", "ordered": true}],
//!   "output": {"csv": "out.csv", "json": "out.json", "plot": "density.dat"}
//! }
//! ```
//!
//! Cells are the product of `constructions`, `ns` and `seeds`, plus any listed
//! explicitly under `cells`. Every certifier seed is derived from the cell
//! seed, so a spec fully determines its report.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use qturan::certifiers::{
    pair_deviation, quad_vertex_deviation, weak_deviation, xyz_deviation, Mode, SampleConfig,
};
use qturan::constructions::ConstructionKind;
use qturan::detectors::{count_k4_minus, find_clique3, find_f4, find_k4_minus, find_sk};
use qturan::hash::derive_seed;
use qturan::{parse_rational, AnyHypergraph, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("bad experiment spec: {0}")]
    Spec(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, ExperimentError>;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub constructions: Vec<ConstructionSpec>,
    #[serde(default)]
    pub ns: Vec<usize>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub tasks: Vec<Task>,
    #[serde(default)]
    pub output: Output,
    /// Record per-cell wall time. Off by default since it breaks
    /// byte-identical reruns.
    #[serde(default)]
    pub timing: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionSpec {
    pub name: String,
    #[serde(default)]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub construction: String,
    #[serde(default)]
    pub k: Option<usize>,
    pub n: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    /// Directory receiving every generated hypergraph in text format.
    pub hypergraphs: Option<PathBuf>,
    /// gnuplot data file: mean density per construction and `n`.
    pub plot: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum TaskMode {
    Exact,
    #[default]
    Search,
}

/// Certifier tasks take `d` as `"empirical"` (the default), `"expected"`
/// (the construction's limit density) or a rational such as `"1/4"`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Weak {
        #[serde(default)]
        mode: TaskMode,
        #[serde(default)]
        d: Option<String>,
    },
    Pair {
        #[serde(default)]
        mode: TaskMode,
        #[serde(default)]
        d: Option<String>,
    },
    Xyz {
        samples: usize,
        #[serde(default)]
        d: Option<String>,
    },
    Quad {
        samples: usize,
        #[serde(default)]
        d: Option<String>,
    },
    K4Minus {
        #[serde(default)]
        ordered: bool,
        #[serde(default)]
        count: bool,
    },
    Clique {
        k: usize,
    },
    Sk {
        k: usize,
    },
    F4,
}

impl Task {
    fn column(&self) -> &'static str {
        match self {
            Task::Weak { .. } => "weak",
            Task::Pair { .. } => "pair",
            Task::Xyz { .. } => "xyz",
            Task::Quad { .. } => "quad",
            Task::K4Minus { .. } => "k4-minus",
            Task::Clique { .. } => "clique",
            Task::Sk { .. } => "sk",
            Task::F4 => "f4",
        }
    }
}

/// One line of the report. The column set is fixed; tasks that were not
/// requested leave their columns empty.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub schema_version: u32,
    pub construction: String,
    pub n: usize,
    pub k: Option<usize>,
    pub seed: u64,
    pub arity: Option<usize>,
    pub edges: Option<u64>,
    /// Exact density as `p/q`.
    pub density: Option<String>,
    pub density_f64: Option<f64>,
    pub eta_weak: Option<f64>,
    pub eta_pair: Option<f64>,
    pub eta_xyz: Option<f64>,
    pub eta_quad: Option<f64>,
    pub k4_minus: Option<bool>,
    pub k4_minus_count: Option<u64>,
    pub clique_k: Option<usize>,
    pub clique: Option<bool>,
    pub sk_k: Option<usize>,
    pub sk: Option<bool>,
    pub f4: Option<bool>,
    pub wall_ms: Option<u64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub rows: Vec<ReportRow>,
}

struct ResolvedCell {
    kind: ConstructionKind,
    k: Option<usize>,
    n: usize,
    seed: u64,
}

fn parse_kind(name: &str) -> Result<ConstructionKind> {
    name.parse().map_err(|e: qturan::Error| ExperimentError::Spec(e.to_string()))
}

fn resolve(spec: &ExperimentSpec) -> Result<Vec<ResolvedCell>> {
    let mut seen = std::collections::BTreeSet::new();
    for t in &spec.tasks {
        if !seen.insert(t.column()) {
            return Err(ExperimentError::Spec(format!("task {} listed twice", t.column())));
        }
    }
    let mut cells = Vec::new();
    for c in &spec.constructions {
        let kind = parse_kind(&c.name)?;
        for &n in &spec.ns {
            for &seed in &spec.seeds {
                cells.push(ResolvedCell { kind, k: c.k, n, seed });
            }
        }
    }
    for c in &spec.cells {
        cells.push(ResolvedCell {
            kind: parse_kind(&c.construction)?,
            k: c.k,
            n: c.n,
            seed: c.seed,
        });
    }
    Ok(cells)
}

fn reference(d: &Option<String>, kind: ConstructionKind, k: Option<usize>) -> qturan::Result<Option<Rational>> {
    match d.as_deref() {
        None | Some("empirical") => Ok(None),
        Some("expected") => kind
            .expected_density(k)
            .map(Some)
            .ok_or_else(|| qturan::Error::InvalidInput(format!("{} has no known limit density", kind.name()))),
        Some(s) => parse_rational(s).map(Some),
    }
}

fn mode(m: TaskMode, seed: u64) -> Mode {
    match m {
        TaskMode::Exact => Mode::exact(),
        TaskMode::Search => Mode::search(seed),
    }
}

fn wrong_arity(task: &Task, arity: usize) -> qturan::Error {
    qturan::Error::InvalidInput(format!("task {} does not apply to {arity}-uniform hypergraphs", task.column()))
}

fn run_tasks(
    row: &mut ReportRow,
    h: &AnyHypergraph,
    tasks: &[Task],
    cell: &ResolvedCell,
) -> qturan::Result<()> {
    for (i, task) in tasks.iter().enumerate() {
        let seed = derive_seed(cell.seed, i as u64 + 1);
        match (task, h) {
            (Task::Weak { mode: m, d }, AnyHypergraph::Three(h)) => {
                let r = weak_deviation(h, reference(d, cell.kind, cell.k)?, mode(*m, seed))?;
                row.eta_weak = Some(r.eta);
            }
            (Task::Pair { mode: m, d }, AnyHypergraph::Three(h)) => {
                let r = pair_deviation(h, reference(d, cell.kind, cell.k)?, mode(*m, seed))?;
                row.eta_pair = Some(r.eta);
            }
            (Task::Xyz { samples, d }, AnyHypergraph::Three(h)) => {
                let r = xyz_deviation(h, reference(d, cell.kind, cell.k)?, &SampleConfig::new(*samples, seed))?;
                row.eta_xyz = Some(r.eta);
            }
            (Task::Quad { samples, d }, AnyHypergraph::Four(h)) => {
                let r = quad_vertex_deviation(h, reference(d, cell.kind, cell.k)?, &SampleConfig::new(*samples, seed))?;
                row.eta_quad = Some(r.eta);
            }
            (Task::K4Minus { ordered, count }, AnyHypergraph::Three(h)) => {
                row.k4_minus = Some(find_k4_minus(h, *ordered).is_some());
                if *count {
                    row.k4_minus_count = Some(count_k4_minus(h));
                }
            }
            (Task::Clique { k }, AnyHypergraph::Three(h)) => {
                row.clique_k = Some(*k);
                row.clique = Some(find_clique3(h, *k)?.is_some());
            }
            (Task::Sk { k }, AnyHypergraph::Three(h)) => {
                row.sk_k = Some(*k);
                row.sk = Some(find_sk(h, *k)?.is_some());
            }
            (Task::F4, AnyHypergraph::Four(h)) => {
                row.f4 = Some(find_f4(h).is_some());
            }
            (task, h) => return Err(wrong_arity(task, h.arity())),
        }
    }
    Ok(())
}

fn file_name(cell: &ResolvedCell) -> String {
    match cell.k {
        Some(k) => format!("{}_n{}_k{}_s{}.txt", cell.kind.name(), cell.n, k, cell.seed),
        None => format!("{}_n{}_s{}.txt", cell.kind.name(), cell.n, cell.seed),
    }
}

fn run_cell(cell: &ResolvedCell, spec: &ExperimentSpec) -> ReportRow {
    let start = Instant::now();
    let mut row = ReportRow {
        schema_version: SCHEMA_VERSION,
        construction: cell.kind.name().to_string(),
        n: cell.n,
        k: cell.k,
        seed: cell.seed,
        ..ReportRow::default()
    };
    let outcome = (|| -> std::result::Result<(), String> {
        let h = cell.kind.generate(cell.n, cell.k, cell.seed).map_err(|e| e.to_string())?;
        let density = match &h {
            AnyHypergraph::Three(h) => h.density(),
            AnyHypergraph::Four(h) => h.density(),
        };
        row.arity = Some(h.arity());
        row.edges = Some(density.edge_count);
        row.density = Some(density.exact.to_string());
        row.density_f64 = Some(density.value);
        if let Some(dir) = &spec.output.hypergraphs {
            let path = dir.join(file_name(cell));
            fs::write(&path, h.to_text()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        run_tasks(&mut row, &h, &spec.tasks, cell).map_err(|e| e.to_string())
    })();
    if let Err(e) = outcome {
        row.error = Some(e);
    }
    if spec.timing {
        row.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    row
}

fn sort_key(r: &ReportRow) -> (&str, usize, Option<usize>, u64) {
    (&r.construction, r.n, r.k, r.seed)
}

/// Runs every cell in parallel. Failures of individual cells are recorded in
/// their row; only a malformed spec is an error.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report> {
    let cells = resolve(spec)?;
    if let Some(dir) = &spec.output.hypergraphs {
        fs::create_dir_all(dir).map_err(|source| ExperimentError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let mut rows: Vec<ReportRow> = cells.par_iter().map(|c| run_cell(c, spec)).collect();
    rows.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        rows,
    })
}

pub fn write_csv<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(csv_header())?;
    for row in &report.rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|source| ExperimentError::Io {
        path: PathBuf::from("<csv>"),
        source,
    })?;
    Ok(())
}

/// The fixed header. Written even for an empty report.
pub fn csv_header() -> [&'static str; 22] {
    [
        "schema_version",
        "construction",
        "n",
        "k",
        "seed",
        "arity",
        "edges",
        "density",
        "density_f64",
        "eta_weak",
        "eta_pair",
        "eta_xyz",
        "eta_quad",
        "k4_minus",
        "k4_minus_count",
        "clique_k",
        "clique",
        "sk_k",
        "sk",
        "f4",
        "wall_ms",
        "error",
    ]
}

pub fn write_json<W: Write>(report: &Report, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, report)?;
    Ok(())
}

/// `n -> (density sum, cells)`.
type DensitySums = BTreeMap<usize, (f64, usize)>;

/// gnuplot blocks, one per construction (and `k`), with columns
/// `n mean_density seeds`. Failed cells are skipped.
pub fn write_plot<W: Write>(report: &Report, mut out: W) -> std::io::Result<()> {
    let mut groups: BTreeMap<(String, Option<usize>), DensitySums> = BTreeMap::new();
    for r in &report.rows {
        if let Some(d) = r.density_f64 {
            let e = groups
                .entry((r.construction.clone(), r.k))
                .or_default()
                .entry(r.n)
                .or_insert((0.0, 0));
            e.0 += d;
            e.1 += 1;
        }
    }
    for (i, ((name, k), by_n)) in groups.iter().enumerate() {
        if i > 0 {
            writeln!(out, "\n")?;
        }
        match k {
            Some(k) => writeln!(out, "# {name} k={k}")?,
            None => writeln!(out, "# {name}")?,
        }
        writeln!(out, "# n mean_density seeds")?;
        for (n, (sum, count)) in by_n {
            writeln!(out, "{n} {:.6} {count}", sum / *count as f64)?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes whichever outputs the spec names.
pub fn emit_outputs(spec: &ExperimentSpec, report: &Report) -> Result<()> {
    if let Some(p) = &spec.output.csv {
        write_csv(report, std::io::BufWriter::new(create(p)?))?;
    }
    if let Some(p) = &spec.output.json {
        write_json(report, std::io::BufWriter::new(create(p)?))?;
    }
    if let Some(p) = &spec.output.plot {
        write_plot(report, std::io::BufWriter::new(create(p)?)).map_err(|source| ExperimentError::Io {
            path: p.clone(),
            source,
        })?;
    }
    Ok(())
}

/// Mean density over the successful rows matching `construction` and `n`.
pub fn mean_density(report: &Report, construction: &str, n: usize) -> Option<f64> {
    let ds: Vec<f64> = report
        .rows
        .iter()
        .filter(|r| r.construction == construction && r.n == n)
        .filter_map(|r| r.density_f64)
        .collect();
    (!ds.is_empty()).then(|| ds.iter().sum::<f64>() / ds.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spec_gives_empty_table() {
        let r = run_experiment(&ExperimentSpec::default()).unwrap();
        assert!(r.rows.is_empty());
        let mut buf = Vec::new();
        write_csv(&r, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }

    #[test]
    fn cell_errors_stay_in_their_row() {
        let spec: ExperimentSpec = serde_json::from_str(
            r#"{"constructions": [{"name": "sk-free"}, {"name": "tournament3"}], "ns": [10], "seeds": [0, 1]}"#,
        )
        .unwrap();
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().filter(|r| r.construction == "sk-free").all(|r| r.error.is_some()));
        assert!(r.rows.iter().filter(|r| r.construction == "tournament3").all(|r| r.error.is_none()));
    }

    #[test]
    fn rows_are_sorted() {
        let spec: ExperimentSpec = serde_json::from_str(
            r#"{"cells": [
                {"construction": "tournament3", "n": 12, "seed": 3},
                {"construction": "party6", "n": 12, "seed": 1},
                {"construction": "tournament3", "n": 10, "seed": 9}
            ]}"#,
        )
        .unwrap();
        let r = run_experiment(&spec).unwrap();
        let keys: Vec<_> = r.rows.iter().map(|r| (r.construction.as_str(), r.n)).collect();
        assert_eq!(keys, [("party6", 12), ("tournament3", 10), ("tournament3", 12)]);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let spec: ExperimentSpec =
            serde_json::from_str(r#"{"constructions": [{"name": "nope"}], "ns": [5], "seeds": [0]}"#).unwrap();
        assert!(run_experiment(&spec).is_err());
        assert!(serde_json::from_str::<ExperimentSpec>(r#"{"bogus": 1}"#).is_err());
        let spec: ExperimentSpec =
            serde_json::from_str(r#"{"tasks": [{"task": "f4"}, {"task": "f4"}]}"#).unwrap();
        assert!(run_experiment(&spec).is_err());
    }

    #[test]
    fn tasks_fill_their_columns() {
        let spec: ExperimentSpec = serde_json::from_str(
            r#"{"constructions": [{"name": "tournament3"}], "ns": [14], "seeds": [2],
                "tasks": [{"task": "weak", "mode": "exact", "d": "expected"},
                          {"task": "k4-minus", "ordered": false, "count": true},
                          {"task": "f4"}]}"#,
        )
        .unwrap();
        let r = run_experiment(&spec).unwrap();
        let row = &r.rows[0];
        assert!(row.eta_weak.is_some());
        assert_eq!((row.k4_minus, row.k4_minus_count), (Some(false), Some(0)));
        assert!(row.error.as_deref().unwrap().contains("f4"));
    }
}
