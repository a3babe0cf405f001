//! `polydiag`: enumerate, classify and count polydiagonal subspaces, find the
//! invariant ones for a network, and simulate coupled cell systems.
//!
//! Exit codes: 0 success, 1 a checked assertion failed, 2 bad input.

mod input;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use polydiag::counting::count_table;
use polydiag::dynamics::{
    integrate_with, random_state, CoupledSystem, Preset, RealMatrix, Trajectory, TwistedSubspace,
};
use polydiag::graph::automorphisms;
use polydiag::invariance::{invariant_polydiagonals_capped, orbits, InvariantSet, SubspaceLattice, DEFAULT_N_CAP};
use polydiag::partitions::{enumerate_tagged_partitions, SubspaceKind, TaggedPartition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use input::{MatrixKind, Network};
use suites::{Suite, SuiteArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Md,
}

#[derive(Parser)]
#[command(name = "polydiag", version, about = "Polydiagonal subspaces of coupled cell networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command has its own default and accepted set.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest cell count for exhaustive scans.
    #[arg(long = "n-cap", global = true, default_value_t = DEFAULT_N_CAP)]
    n_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the tagged partitions of n cells as typical elements.
    Enumerate {
        n: usize,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Classify typical elements such as "(a,-a,0)" or partition JSON.
    Classify {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Invariant polydiagonal subspaces of a network matrix.
    Invariants {
        /// Catalog name or file (digraph JSON, edge list or matrix JSON).
        input: String,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
        #[arg(long)]
        filter: Option<String>,
        /// Print the lattice instead of the list.
        #[arg(long)]
        lattice: bool,
        /// Group the subspaces into automorphism orbits.
        #[arg(long)]
        orbits: bool,
    },
    /// Containment lattice of the invariant subspaces.
    Lattice {
        input: String,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
    },
    /// Invariant subspaces grouped by automorphism orbit.
    Orbits {
        input: String,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
    },
    /// Table of subspace counts for n = 0..=N with cross-checks.
    Count {
        n: usize,
        /// Include the freely tagged rows.
        #[arg(long)]
        all_kinds: bool,
    },
    /// Integrate x_i' = f(x_i) + H sum_j M_ij x_j with RK4.
    Simulate {
        input: String,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
        /// M = scale times the chosen matrix.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        scale: f64,
        #[arg(long, default_value = "vanderpol")]
        preset: String,
        /// Preset parameters, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Inner coupling: "r11,r12;r21,r22" or a diagonal "d1,d2,d3".
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        /// Initial state, k*n comma separated values.
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        /// Start at a seeded random point of this subspace and report the
        /// distance from it.
        #[arg(long)]
        start: Option<String>,
        /// Involution N for the subspace, as for --h; defaults to -I.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long = "T", default_value_t = 50.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Keep every stride-th sample in the CSV.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Run a named property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest random instance size.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Check this network instead of random ones.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
        /// Eigenvalues for main-lemma, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long = "T", default_value_t = 50.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

/// Whether every checked assertion held.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(text) = std::env::var("POLYDIAG_THREADS") else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| anyhow!("POLYDIAG_THREADS must be a positive integer, got {text:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn sink(output: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut out = sink(output)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn format_or(format: Option<Format>, default: Format, allowed: &[Format], command: &str) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("{command} does not support --format {f:?}; use one of {allowed:?}");
    }
    Ok(f)
}

fn parse_filter(filter: &Option<String>) -> Result<Option<SubspaceKind>> {
    filter.as_deref().map(|f| f.parse::<SubspaceKind>().map_err(anyhow::Error::from)).transpose()
}

fn run(cli: Cli) -> Result<Verdict> {
    let Cli {
        command,
        format,
        output,
        seed,
        n_cap,
    } = cli;
    match command {
        Command::Enumerate { n, filter, count_only } => enumerate(n, parse_filter(&filter)?, count_only, format, &output, n_cap),
        Command::Classify { elements } => classify(&elements, format, &output),
        Command::Invariants {
            input,
            matrix,
            filter,
            lattice,
            orbits,
        } => {
            let kind = parse_filter(&filter)?;
            if lattice {
                return show_lattice(&input, matrix, kind, format, &output, n_cap);
            }
            show_invariants(&input, matrix, kind, orbits, format, &output, n_cap)
        }
        Command::Lattice { input, matrix } => show_lattice(&input, matrix, None, format, &output, n_cap),
        Command::Orbits { input, matrix } => show_invariants(&input, matrix, None, true, format, &output, n_cap),
        Command::Count { n, all_kinds } => count(n, all_kinds, format, &output, n_cap),
        Command::Simulate {
            input,
            matrix,
            scale,
            preset,
            params,
            h,
            x0,
            start,
            twist,
            dt,
            t_end,
            tol,
            stride,
        } => {
            let sim = Simulation {
                input,
                matrix,
                scale,
                preset,
                params,
                h,
                x0,
                start,
                twist,
                dt,
                t_end,
                tol,
                stride,
                seed,
            };
            simulate(&sim, format, &output)
        }
        Command::Check {
            suite,
            n,
            trials,
            file,
            matrix,
            lambda,
            dt,
            t_end,
            tol,
        } => {
            let args = SuiteArgs {
                n,
                trials,
                seed,
                file,
                matrix,
                lambda,
                dt,
                t_end,
                tol,
                n_cap,
            };
            let report = suites::run(suite, &args)?;
            let text = match format_or(format, Format::Md, &[Format::Md, Format::Json], "check")? {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                _ => report.to_text(),
            };
            emit(&output, &text)?;
            Ok(if report.passed { Verdict::Pass } else { Verdict::Fail })
        }
    }
}

fn enumerate(
    n: usize,
    kind: Option<SubspaceKind>,
    count_only: bool,
    format: Option<Format>,
    output: &Option<PathBuf>,
    n_cap: usize,
) -> Result<Verdict> {
    // counting without listing is cheap enough past the usual cap
    if n > n_cap + usize::from(count_only) {
        bail!("n = {n} exceeds the cap {n_cap} (raise it with --n-cap)");
    }
    let parts = enumerate_tagged_partitions(n, kind);
    if count_only {
        emit(output, &format!("{}\n", parts.count()))?;
        return Ok(Verdict::Pass);
    }
    let f = format_or(format, Format::Md, &[Format::Md, Format::Csv, Format::Json], "enumerate")?;
    let mut out = sink(output)?;
    match f {
        Format::Json => {
            let all: Vec<String> = parts.map(|p| p.typical_element()).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
        }
        Format::Csv => {
            writeln!(out, "typical,class,dimension")?;
            for p in parts {
                writeln!(out, "{},{},{}", csv_quote(&p.typical_element()), p.classify().label(), p.dimension())?;
            }
        }
        _ => {
            for p in parts {
                writeln!(out, "{}", p.typical_element())?;
            }
        }
    }
    out.flush()?;
    Ok(Verdict::Pass)
}

/// Typical elements contain commas.
fn csv_quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn parse_partition(text: &str) -> Result<TaggedPartition> {
    if text.trim_start().starts_with('{') {
        Ok(TaggedPartition::from_json(text)?)
    } else {
        Ok(TaggedPartition::parse_typical_element(text)?)
    }
}

fn classify(elements: &[String], format: Option<Format>, output: &Option<PathBuf>) -> Result<Verdict> {
    let parts = elements.iter().map(|e| parse_partition(e)).collect::<Result<Vec<_>>>()?;
    let f = format_or(format, Format::Md, &[Format::Md, Format::Csv, Format::Json], "classify")?;
    let text = match f {
        Format::Json => {
            let docs: Vec<Value> = parts
                .iter()
                .map(|p| {
                    json!({
                        "typical": p.typical_element(),
                        "label": p.classify().label(),
                        "dimension": p.dimension(),
                        "class": p.classify(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&docs)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from("typical,label,dimension\n");
            for p in &parts {
                s += &format!("{},{},{}\n", csv_quote(&p.typical_element()), p.classify().label(), p.dimension());
            }
            s
        }
        _ => {
            let mut s = String::from("| subspace | class | dim |\n|---|---|--:|\n");
            for p in &parts {
                s += &format!("| {} | {} | {} |\n", p.typical_element(), p.classify().label(), p.dimension());
            }
            s
        }
    };
    emit(output, &text)?;
    Ok(Verdict::Pass)
}

fn invariant_set(input: &str, matrix: MatrixKind, kind: Option<SubspaceKind>, n_cap: usize) -> Result<(Network, InvariantSet)> {
    let net = Network::load(input)?;
    let m = net.matrix(matrix)?;
    let set = invariant_polydiagonals_capped(&m, n_cap)?;
    let set = match kind {
        Some(k) => set.filtered(|e| k.matches(&e.class)),
        None => set,
    };
    Ok((net, set))
}

fn show_invariants(
    input: &str,
    matrix: MatrixKind,
    kind: Option<SubspaceKind>,
    with_orbits: bool,
    format: Option<Format>,
    output: &Option<PathBuf>,
    n_cap: usize,
) -> Result<Verdict> {
    let f = format_or(format, Format::Md, &[Format::Md, Format::Csv, Format::Json, Format::Dot], "invariants")?;
    if f == Format::Dot {
        return show_lattice(input, matrix, kind, format, output, n_cap);
    }
    let (net, set) = invariant_set(input, matrix, kind, n_cap)?;
    // orbit index of each entry
    let groups = if with_orbits {
        let autos = automorphisms(&net.digraph()?)?;
        Some(orbits(&set, &autos)?)
    } else {
        None
    };
    let mut orbit_of = vec![0; set.len()];
    for (o, members) in groups.iter().flatten().enumerate() {
        for &i in members {
            orbit_of[i] = o;
        }
    }
    let text = match f {
        Format::Json => {
            let mut doc: Value = serde_json::from_str(&set.to_json())?;
            if let Some(groups) = &groups {
                let named: Vec<Vec<String>> = groups
                    .iter()
                    .map(|g| g.iter().map(|&i| set.entries[i].partition.typical_element()).collect())
                    .collect();
                doc["orbits"] = json!(named);
            }
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut s = String::from(if with_orbits { "typical,class,dimension,orbit\n" } else { "typical,class,dimension\n" });
            for (i, e) in set.entries.iter().enumerate() {
                s += &format!("{},{},{}", csv_quote(&e.partition.typical_element()), e.class.label(), e.partition.dimension());
                if with_orbits {
                    s += &format!(",{}", orbit_of[i] + 1);
                }
                s.push('\n');
            }
            s
        }
        _ => {
            let mut s = String::from(if with_orbits {
                "| # | subspace | class | dim | orbit |\n|--:|---|---|--:|--:|\n"
            } else {
                "| # | subspace | class | dim |\n|--:|---|---|--:|\n"
            });
            for (i, e) in set.entries.iter().enumerate() {
                s += &format!("| {} | {} | {} | {} |", i + 1, e.partition.typical_element(), e.class.label(), e.partition.dimension());
                if with_orbits {
                    s += &format!(" {} |", orbit_of[i] + 1);
                }
                s.push('\n');
            }
            s += &format!("\n{} invariant subspaces", set.len());
            if let Some(g) = &groups {
                s += &format!(" in {} orbits", g.len());
            }
            s.push('\n');
            s
        }
    };
    emit(output, &text)?;
    Ok(Verdict::Pass)
}

fn show_lattice(
    input: &str,
    matrix: MatrixKind,
    kind: Option<SubspaceKind>,
    format: Option<Format>,
    output: &Option<PathBuf>,
    n_cap: usize,
) -> Result<Verdict> {
    let f = format_or(format, Format::Dot, &[Format::Dot, Format::Json], "lattice")?;
    let (_, set) = invariant_set(input, matrix, kind, n_cap)?;
    let lattice = SubspaceLattice::build(set);
    let mut text = if f == Format::Json { lattice.to_json() } else { lattice.to_dot() };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(output, &text)?;
    Ok(Verdict::Pass)
}

fn count(n: usize, all_kinds: bool, format: Option<Format>, output: &Option<PathBuf>, n_cap: usize) -> Result<Verdict> {
    let f = format_or(format, Format::Md, &[Format::Md, Format::Csv, Format::Json], "count")?;
    let table = count_table(n, n_cap);
    let mut text = match f {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(all_kinds),
        _ => table.to_markdown(all_kinds),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(output, &text)?;
    Ok(if table.all_agree() { Verdict::Pass } else { Verdict::Fail })
}

struct Simulation {
    input: String,
    matrix: MatrixKind,
    scale: f64,
    preset: String,
    params: Option<String>,
    h: Option<String>,
    x0: Option<String>,
    start: Option<String>,
    twist: Option<String>,
    dt: f64,
    t_end: f64,
    tol: f64,
    stride: usize,
    seed: u64,
}

fn default_h(preset: &Preset) -> RealMatrix {
    match preset {
        // coupling enters the velocity equation
        Preset::Vanderpol { .. } | Preset::SingularOsc => {
            RealMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).expect("rectangular")
        }
        other => RealMatrix::identity(other.k()),
    }
}

fn simulate(sim: &Simulation, format: Option<Format>, output: &Option<PathBuf>) -> Result<Verdict> {
    let f = format_or(format, Format::Csv, &[Format::Csv, Format::Json], "simulate")?;
    let params = sim.params.as_deref().map(input::real_list).transpose()?.unwrap_or_default();
    let preset = Preset::from_name(&sim.preset, &params)?;
    let k = preset.k();
    let h = match &sim.h {
        Some(text) => input::real_matrix(text, k)?,
        None => default_h(&preset),
    };
    let m = Network::load(&sim.input)?.matrix(sim.matrix)?;
    let sys = CoupledSystem::new(preset, h, RealMatrix::from_rational(&m).scaled(sim.scale))?;
    let subspace = match &sim.start {
        Some(text) => {
            let twist = sim.twist.as_deref().map(|t| input::real_matrix(t, k)).transpose()?;
            Some(TwistedSubspace::new(parse_partition(text)?, k, twist)?)
        }
        None => None,
    };
    let x0 = match (&sim.x0, &subspace) {
        (Some(text), _) => input::real_list(text)?,
        (None, Some(s)) => s.sample(&mut ChaCha8Rng::seed_from_u64(sim.seed)),
        (None, None) => random_state(&sys, 2.0, sim.seed),
    };
    let stride = sim.stride.max(1);
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut max_distance = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut step = 0usize;
    let result = integrate_with(&sys, &x0, sim.dt, sim.t_end, |t, x| {
        if let Some(s) = &subspace {
            max_distance = max_distance.max(s.distance(x).unwrap_or(f64::INFINITY));
        }
        max_abs = x.iter().fold(max_abs, |m, v| m.max(v.abs()));
        if f == Format::Csv && step.is_multiple_of(stride) {
            times.push(t);
            states.push(x.to_vec());
        }
        step += 1;
    });
    let (final_state, error) = match result {
        Ok(x) => (Some(x), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let text = if f == Format::Csv {
        if let Some(x) = &final_state {
            // the last sample is always kept
            let t_last = sim.dt * (step.saturating_sub(1)) as f64;
            if !(step - 1).is_multiple_of(stride) {
                times.push(t_last);
                states.push(x.clone());
            }
        }
        Trajectory { k, times, states }.to_csv()
    } else {
        let mut doc = json!({
            "preset": sys.preset(),
            "n": sys.n(),
            "k": k,
            "dt": sim.dt,
            "T": sim.t_end,
            "seed": sim.seed,
            "initial_state": x0,
            "final_state": final_state,
            "max_abs": max_abs,
            "error": error,
        });
        if let Some(s) = &subspace {
            doc["subspace"] = json!(s.to_string());
            doc["max_distance"] = json!(max_distance);
            doc["tol"] = json!(sim.tol);
            doc["stayed_in_subspace"] = json!(max_distance <= sim.tol);
        }
        serde_json::to_string_pretty(&doc)? + "\n"
    };
    emit(output, &text)?;
    if let Some(e) = error {
        eprintln!("integration stopped: {e}");
        return Ok(Verdict::Fail);
    }
    Ok(Verdict::Pass)
}
