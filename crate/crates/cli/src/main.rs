use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qturan::certifiers::{
    bipartite_regularity_deviation, pair_deviation, quad_vertex_deviation, relative_density, tcl_check,
    weak_deviation, xyz_deviation, DeviationReport, Mode, SampleConfig, Triad, DEFAULT_RESTARTS,
};
use qturan::constructions::{gen_sk_free_with_colouring, ConstructionKind};
use qturan::detectors::{
    check_vanishing_condition, count_k4_minus, embed_small, find_clique3, find_f4, find_k4_minus, find_sk,
    link_colouring_witness,
};
use qturan::multipartite::{
    explore_extremal, find_clique_mp, find_three_triples, find_triangle_mp, half_split, mean_square_profile,
    proof_diagnostics, AuxBlock, AuxHypergraph, ExploreConfig, MultipartiteGraph,
};
use qturan::{parse_rational, read_hypergraph, AnyHypergraph, Hypergraph3, Hypergraph4, Rational};
use qturan_cli::experiment::{self, ExperimentSpec};
use qturan_cli::verify::{verify_suite, Level};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qturan", version, about = "Quasirandom hypergraph constructions, certifiers and detectors")]
struct Cli {
    /// Master seed for generators and randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction and write it in text format.
    Generate {
        construction: ConstructionKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Output file (default stdout).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Measure deviation from uniform edge distribution.
    Certify {
        kind: CertifyKind,
        /// Hypergraph file, or a multipartite file for `bipartite` and `tcl`.
        #[arg(long, short)]
        input: PathBuf,
        /// Reference density `p/q` (default: empirical).
        #[arg(long)]
        d: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Override the exact-mode size cap.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Classes of the multipartite file forming the bipartite graph.
        #[arg(long, num_args = 2, default_values_t = [0, 1])]
        parts: Vec<usize>,
        /// Host vertices of the triad for `relative-density`, one list per
        /// class, as comma-separated lists.
        #[arg(long)]
        triad: Option<PathBuf>,
        /// Exit with status 1 when eta exceeds this value.
        #[arg(long)]
        max_eta: Option<f64>,
    },
    /// Search for forbidden configurations.
    Detect {
        what: DetectKind,
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long)]
        k: Option<usize>,
        /// Require the apex to be the least or greatest vertex / an
        /// order-preserving embedding.
        #[arg(long)]
        ordered: bool,
        /// Pattern file for `embed`.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Apex for `link-colouring`; all vertices when omitted.
        #[arg(long)]
        apex: Option<usize>,
        /// `n` for `link-colouring`, which regenerates the S_k-free
        /// construction together with its colouring.
        #[arg(long)]
        n: Option<usize>,
        /// Exit with status 1 if something is found.
        #[arg(long)]
        expect_none: bool,
    },
    /// Mean-square degree conditions and related tools.
    Multipartite {
        #[command(subcommand)]
        action: MpAction,
    },
    /// Run a JSON experiment spec.
    Experiment { spec: PathBuf },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyKind {
    Weak,
    Xyz,
    Pair,
    Quad,
    Bipartite,
    Tcl,
    RelativeDensity,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectKind {
    K4Minus,
    CountK4Minus,
    Clique,
    Sk,
    F4,
    Embed,
    Vanishing,
    LinkColouring,
}

#[derive(Subcommand)]
enum MpAction {
    /// Mean-square ratios and hypothesis flags.
    Profile {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value = "0")]
        eps: String,
        /// Check the K_k condition instead of the triangle condition.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Search for a triangle, or a K_k with `--k`.
    Find {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Write the half-split construction.
    HalfSplit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sizes of Q_ij(r) and pair colours.
    Diagnostics {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Hill-climb from the half split looking for a better min ratio.
    Explore {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
        /// Write the best graph here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Three-triple search on a random auxiliary hypergraph.
    ThreeTriples {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        class_size: usize,
        #[arg(long)]
        p: f64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Refused(String),
}

impl From<qturan::Error> for Failure {
    fn from(e: qturan::Error) -> Self {
        if e.is_refusal() {
            Failure::Refused(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<experiment::ExperimentError> for Failure {
    fn from(e: experiment::ExperimentError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn read_file(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn load(p: &Path) -> Result<AnyHypergraph> {
    read_hypergraph(&read_file(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn load3(p: &Path) -> Result<Hypergraph3> {
    Ok(load(p)?.into_three()?)
}

fn load4(p: &Path) -> Result<Hypergraph4> {
    Ok(load(p)?.into_four()?)
}

fn load_mp(p: &Path) -> Result<MultipartiteGraph> {
    MultipartiteGraph::from_text(&read_file(p)?).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Prints a value as pretty JSON, or as a two-column `key,value` CSV of its
/// top-level fields.
fn emit<T: Serialize>(format: Format, value: &T) -> Result<()> {
    let json = serde_json::to_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = io::stdout().lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json).unwrap_or_default())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let put = |w: &mut csv::Writer<_>, k: &str, v: &serde_json::Value| {
                let s = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                w.write_record([k, s.as_str()])
            };
            let io_err = |e: csv::Error| Failure::Usage(e.to_string());
            w.write_record(["field", "value"]).map_err(io_err)?;
            match &json {
                serde_json::Value::Object(map) => {
                    for (k, v) in map {
                        put(&mut w, k, v).map_err(io_err)?;
                    }
                }
                other => put(&mut w, "value", other).map_err(io_err)?,
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn mode(m: ModeArg, cap: Option<usize>, restarts: usize, seed: u64) -> Mode {
    match m {
        ModeArg::Exact => Mode::Exact { cap },
        ModeArg::Search => Mode::Search { restarts, seed },
    }
}

fn check_eta(r: &DeviationReport, max_eta: Option<f64>) -> Result<()> {
    match max_eta {
        Some(m) if r.eta > m => Err(Failure::Check(format!("eta {} exceeds {m}", r.eta))),
        _ => Ok(()),
    }
}

/// Triad file: three lines of comma-separated host vertices.
fn load_triad(p: &Path) -> Result<[Vec<usize>; 3]> {
    let text = read_file(p)?;
    let lists: Vec<Vec<usize>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))))
                .collect()
        })
        .collect::<Result<_>>()?;
    <[Vec<usize>; 3]>::try_from(lists).map_err(|_| Failure::Usage(format!("{}: expected three lines", p.display())))
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    let format = cli.format;
    match cli.command {
        Command::Generate { construction, n, k, out } => {
            let h = construction.generate(n, k, seed)?;
            write_out(&out, &h.to_text())?;
        }
        Command::Certify {
            kind,
            input,
            d,
            mode: m,
            cap,
            restarts,
            samples,
            parts,
            triad,
            max_eta,
        } => {
            let d = d.as_deref().map(rational).transpose()?;
            let md = mode(m, cap, restarts, seed);
            let cfg = SampleConfig::new(samples, seed);
            match kind {
                CertifyKind::Weak | CertifyKind::Xyz | CertifyKind::Pair => {
                    let h = load3(&input)?;
                    let r = match kind {
                        CertifyKind::Weak => weak_deviation(&h, d, md)?,
                        CertifyKind::Pair => pair_deviation(&h, d, md)?,
                        _ => xyz_deviation(&h, d, &cfg)?,
                    };
                    emit(format, &r)?;
                    check_eta(&r, max_eta)?;
                }
                CertifyKind::Quad => {
                    let r = quad_vertex_deviation(&load4(&input)?, d, &cfg)?;
                    emit(format, &r)?;
                    check_eta(&r, max_eta)?;
                }
                CertifyKind::Bipartite => {
                    let g = load_mp(&input)?;
                    let (i, j) = (parts[0], parts[1]);
                    if i == j || i.max(j) >= g.m() {
                        return Err(Failure::Usage(format!("--parts {i} {j} invalid for {} classes", g.m())));
                    }
                    let r = bipartite_regularity_deviation(&g.bipartite(i, j), d, md)?;
                    emit(format, &r)?;
                    check_eta(&r, max_eta)?;
                }
                CertifyKind::Tcl => {
                    let g = load_mp(&input)?;
                    let d = d.ok_or_else(|| Failure::Usage("tcl needs --d".into()))?;
                    let r = tcl_check(&g, d, md)?;
                    emit(format, &r)?;
                    if !r.holds {
                        return Err(Failure::Check("triangle count exceeds the bound".into()));
                    }
                }
                CertifyKind::RelativeDensity => {
                    let h = load3(&input)?;
                    let path = triad.ok_or_else(|| Failure::Usage("relative-density needs --triad".into()))?;
                    let [x, y, z] = load_triad(&path)?;
                    let r = relative_density(&h, &Triad::complete([&x, &y, &z]))?;
                    emit(format, &r)?;
                }
            }
        }
        Command::Detect {
            what,
            input,
            k,
            ordered,
            pattern,
            apex,
            n,
            expect_none,
        } => {
            let need_input = || input.clone().ok_or_else(|| Failure::Usage("--input is required".into()));
            let need_k = || k.ok_or_else(|| Failure::Usage("--k is required".into()));
            let found = match what {
                DetectKind::K4Minus => {
                    let w = find_k4_minus(&load3(&need_input()?)?, ordered);
                    emit(format, &w)?;
                    w.is_some()
                }
                DetectKind::CountK4Minus => {
                    let c = count_k4_minus(&load3(&need_input()?)?);
                    emit(format, &serde_json::json!({ "k4_minus_count": c }))?;
                    c > 0
                }
                DetectKind::Clique => {
                    let w = find_clique3(&load3(&need_input()?)?, need_k()?)?;
                    emit(format, &w)?;
                    w.is_some()
                }
                DetectKind::Sk => {
                    let w = find_sk(&load3(&need_input()?)?, need_k()?)?;
                    emit(format, &w)?;
                    w.is_some()
                }
                DetectKind::F4 => {
                    let w = find_f4(&load4(&need_input()?)?);
                    emit(format, &w)?;
                    w.is_some()
                }
                DetectKind::Embed => {
                    let f = load3(&pattern.ok_or_else(|| Failure::Usage("embed needs --pattern".into()))?)?;
                    let phi = embed_small(&f, &load3(&need_input()?)?, ordered)?;
                    emit(format, &serde_json::json!({ "embedding": phi }))?;
                    phi.is_some()
                }
                DetectKind::Vanishing => {
                    let w = check_vanishing_condition(&load3(&need_input()?)?)?;
                    emit(format, &w)?;
                    w.is_some()
                }
                DetectKind::LinkColouring => {
                    let n = n.ok_or_else(|| Failure::Usage("link-colouring needs --n".into()))?;
                    let (h, psi) = gen_sk_free_with_colouring(n, need_k()?, seed)?;
                    let apexes: Vec<usize> = match apex {
                        Some(a) => vec![a],
                        None => (0..n).collect(),
                    };
                    let all = apexes
                        .into_iter()
                        .map(|a| link_colouring_witness(&h, Some(&psi), a))
                        .collect::<qturan::Result<Vec<_>>>()?;
                    let bad = all.iter().filter(|lc| !lc.all_independent()).count();
                    emit(format, &all)?;
                    if bad > 0 {
                        return Err(Failure::Check(format!("{bad} apexes with a non-independent class")));
                    }
                    false
                }
            };
            if expect_none && found {
                return Err(Failure::Check("found a configuration".into()));
            }
        }
        Command::Multipartite { action } => multipartite(action, seed, format)?,
        Command::Experiment { spec } => {
            let spec: ExperimentSpec = serde_json::from_str(&read_file(&spec)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", spec.display())))?;
            let report = experiment::run_experiment(&spec)?;
            experiment::emit_outputs(&spec, &report)?;
            if spec.output.csv.is_none() && spec.output.json.is_none() {
                let out = io::stdout().lock();
                match format {
                    Format::Csv => experiment::write_csv(&report, out)?,
                    Format::Json => experiment::write_json(&report, out)?,
                }
            }
        }
        Command::Verify { level } => {
            let results = verify_suite(level);
            let mut out = io::stdout().lock();
            for r in &results {
                writeln!(out, "{}", r.line())?;
                for f in &r.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} criteria failed")));
            }
        }
    }
    Ok(())
}

fn multipartite(action: MpAction, seed: u64, format: Format) -> Result<()> {
    match action {
        MpAction::Profile { input, eps, k } => {
            let g = load_mp(&input)?;
            let eps = rational(&eps)?;
            let p = mean_square_profile(&g)?;
            let flags = match k {
                Some(k) => p.clique_flags(k, &eps),
                None => p.triangle_flags(&eps),
            };
            let ratios: Vec<Vec<String>> = (0..p.m())
                .map(|i| (0..p.m()).map(|j| if i == j { "-".into() } else { p.ratio(i, j).to_string() }).collect())
                .collect();
            let holds = flags.iter().all(|f| f.2);
            emit(
                format,
                &serde_json::json!({
                    "sizes": p.sizes,
                    "ratios": ratios,
                    "min_ratio": p.min_ratio().map(|r| r.to_string()),
                    "flags": flags,
                    "hypothesis_holds": holds,
                }),
            )?;
        }
        MpAction::Find { input, k } => {
            let g = load_mp(&input)?;
            let found = match k {
                Some(k) => find_clique_mp(&g, k),
                None => find_triangle_mp(&g).map(|t| t.to_vec()),
            };
            let labelled: Option<Vec<(usize, usize)>> = found.map(|vs| vs.iter().map(|&v| g.local(v)).collect());
            emit(format, &serde_json::json!({ "found": labelled }))?;
        }
        MpAction::HalfSplit { m, s, out } => write_out(&out, &half_split(m, s)?.to_text())?,
        MpAction::Diagnostics { input, delta, eps } => {
            let g = load_mp(&input)?;
            let eps = eps.as_deref().map(rational).transpose()?;
            let d = proof_diagnostics(&g, &rational(&delta)?, eps.as_ref())?;
            emit(format, &d)?;
            let bad = d.claim_violations();
            if !bad.is_empty() {
                return Err(Failure::Check(format!("claim fails for pairs {bad:?}")));
            }
        }
        MpAction::Explore {
            m,
            s,
            target,
            restarts,
            iterations,
            out,
        } => {
            let mut cfg = ExploreConfig::new(m, s, seed);
            cfg.target = target.as_deref().map(rational).transpose()?;
            if let Some(r) = restarts {
                cfg.restarts = r;
            }
            if let Some(i) = iterations {
                cfg.iterations = i;
            }
            let r = explore_extremal(&cfg)?;
            if let Some(p) = &out {
                write_out(&Some(p.clone()), &r.graph.to_text())?;
            }
            emit(format, &r)?;
        }
        MpAction::ThreeTriples { m, class_size, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("p = {p} is not a probability")));
            }
            let mut i = 0;
            let a = AuxHypergraph::from_blocks(m, |_, _| class_size, |_, _, _, sizes| {
                i += 1;
                AuxBlock::random(sizes, p, qturan::hash::derive_seed(seed, i))
            })?;
            let found = find_three_triples(&a)?;
            emit(format, &serde_json::json!({ "configuration": found }))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
    }
}
