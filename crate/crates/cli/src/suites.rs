//! Named property suites for `polydiag check`. Each suite returns its report
//! lines and whether every assertion held; falsifying inputs are printed.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use polydiag::catalog;
use polydiag::dynamics::{
    equivariance_check, invariance_test, CoupledSystem, EquivarianceStatus, InvarianceOptions, Preset, RealMatrix,
    TwistedSubspace,
};
use polydiag::graph::{io, WeightedDigraph};
use polydiag::invariance::{
    check_constant_column_sums_theorem, check_evenly_tagged, invariant_polydiagonals_capped, main_lemma_on, Hypotheses,
};
use polydiag::linalg::{format_rational, parse_rational, RationalMatrix};
use polydiag::partitions::TaggedPartition;
use polydiag::sampling;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::input::{MatrixKind, Network};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    MainLemma,
    ColumnSums,
    Conjecture53,
    InputOutput,
    DynamicsVdp,
    DynamicsLorenz,
}

pub struct SuiteArgs {
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub file: Option<String>,
    pub matrix: MatrixKind,
    pub lambda: Option<String>,
    pub dt: f64,
    pub t_end: f64,
    pub tol: f64,
    pub n_cap: usize,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.to_possible_value().expect("no skipped variants").get_name().to_string(),
            passed: true,
            cases: 0,
            lines: Vec::new(),
        }
    }

    fn fail(&mut self, line: String) {
        self.passed = false;
        self.lines.push(line);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {} ({} cases)\n", self.suite, self.cases));
        out
    }
}

pub fn run(suite: Suite, args: &SuiteArgs) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite);
    match suite {
        Suite::MainLemma => main_lemma(args, &mut report)?,
        Suite::ColumnSums => column_sums(args, &mut report)?,
        Suite::Conjecture53 => conjecture53(args, &mut report)?,
        Suite::InputOutput => input_output(args, &mut report)?,
        Suite::DynamicsVdp => dynamics_vdp(args, &mut report)?,
        Suite::DynamicsLorenz => dynamics_lorenz(args, &mut report)?,
    }
    Ok(report)
}

fn file_matrix(args: &SuiteArgs) -> Result<Option<RationalMatrix>> {
    args.file
        .as_deref()
        .map(|f| Network::load(f)?.matrix(args.matrix))
        .transpose()
}

fn size_range(args: &SuiteArgs, default: usize) -> Result<std::ops::RangeInclusive<usize>> {
    let max = args.n.unwrap_or(default);
    if max < 2 {
        bail!("--n must be at least 2");
    }
    if max > args.n_cap {
        bail!("--n {max} exceeds the cap {} (raise it with --n-cap)", args.n_cap);
    }
    Ok(2..=max)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main_lemma(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    let m = file_matrix(args)?.unwrap_or_else(catalog::golub);
    let lambdas = args.lambda.as_deref().unwrap_or("0,1");
    let set = invariant_polydiagonals_capped(&m, args.n_cap)?;
    for text in lambdas.split(',') {
        let lambda = parse_rational(text.trim()).with_context(|| format!("bad --lambda {text:?}"))?;
        let lemma = main_lemma_on(&set, &lambda)?;
        report.lines.push(format!(
            "lambda = {}: v_R = {}, v_L = {}",
            lemma.lambda, lemma.right_eigenvector, lemma.left_eigenvector
        ));
        for row in &lemma.rows {
            report.cases += 1;
            let line = format!(
                "  {:<12} v_R in W: {:<3} v_L perp W: {}",
                row.typical,
                yes(row.right_in_subspace),
                yes(row.left_orthogonal)
            );
            if row.holds() {
                report.lines.push(line);
            } else {
                report.fail(format!("{line} VIOLATION"));
            }
        }
    }
    Ok(())
}

fn column_sums(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    if let Some(m) = file_matrix(args)? {
        let r = check_constant_column_sums_theorem(&m)?;
        let Hypotheses::Met { lambda, eigenvector } = &r.hypotheses else {
            bail!("hypotheses do not hold: {}", serde_json::to_string(&r.hypotheses)?);
        };
        report.lines.push(format!("lambda = {lambda}, v = {eigenvector}"));
        for row in &r.rows {
            report.cases += 1;
            let kind = if row.synchrony { "synchrony" } else if row.evenly_tagged { "evenly tagged" } else { "anti-synchrony" };
            let line = format!("  {:<12} {kind:<14} contains v: {}", row.typical, yes(row.contains_eigenvector));
            if row.holds() {
                report.lines.push(line);
            } else {
                report.fail(format!("{line} VIOLATION"));
            }
        }
        return Ok(());
    }
    let sizes = size_range(args, 6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for _ in 0..args.trials {
        let n = rng.gen_range(sizes.clone());
        let (m, r, _) = sampling::matrix_meeting_hypotheses(&mut rng, n, 3)?;
        report.cases += 1;
        let bad = r.counterexamples();
        if !bad.is_empty() {
            let names: Vec<&str> = bad.iter().map(|row| row.typical.as_str()).collect();
            report.fail(format!("counterexample {} at {}", matrix_text(&m), names.join(" ")));
        }
    }
    report.lines.push(format!(
        "{} matrices with equal column sums, n in {sizes:?}, seed {}",
        report.cases, args.seed
    ));
    Ok(())
}

fn matrix_text(m: &RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let r: Vec<String> = m.row(i).iter().map(format_rational).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn evenly_tagged_case(g: &WeightedDigraph, report: &mut SuiteReport) -> Result<()> {
    let r = check_evenly_tagged(&g.laplacian_matrix())?;
    report.cases += 1;
    if !r.passed() {
        report.fail(format!("counterexample {} at {}", io::to_json(g), r.violations.join(" ")));
    }
    Ok(())
}

fn conjecture53(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    if let Some(f) = &args.file {
        let g = Network::load(f)?.digraph()?;
        evenly_tagged_case(&g, report)?;
        report.lines.push(format!("{f}: every L-invariant anti-synchrony subspace checked"));
        return Ok(());
    }
    let sizes = size_range(args, 7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for _ in 0..args.trials {
        let n = rng.gen_range(sizes.clone());
        let g = sampling::random_connected_graph(&mut rng, n, 0.4);
        evenly_tagged_case(&g, report)?;
    }
    report
        .lines
        .push(format!("{} connected graphs, n in {sizes:?}, seed {}", report.cases, args.seed));
    Ok(())
}

fn input_output(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    let sizes = size_range(args, 6)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    while report.cases < args.trials {
        let n = rng.gen_range(sizes.clone());
        let g = WeightedDigraph::from_adjacency(&sampling::random_balanced_adjacency(&mut rng, n))?;
        // the statement needs 0 to be a simple eigenvalue of L
        if g.laplacian_matrix().rank() + 1 != n {
            continue;
        }
        evenly_tagged_case(&g, report)?;
    }
    report.lines.push(format!(
        "{} weight-balanced digraphs with rank(L) = n - 1, n in {sizes:?}, seed {}",
        report.cases, args.seed
    ));
    Ok(())
}

fn options(args: &SuiteArgs) -> InvarianceOptions {
    InvarianceOptions {
        trials: 4,
        dt: args.dt,
        t_end: args.t_end,
        tol: args.tol,
        seed: args.seed,
    }
}

fn invariance_case(sys: &CoupledSystem, s: &TwistedSubspace, args: &SuiteArgs, label: &str, report: &mut SuiteReport) -> Result<()> {
    let r = invariance_test(sys, s, &options(args))?;
    report.cases += 1;
    let line = format!(
        "{label} {}: max distance {:.3e}, {} of {} trials completed",
        s.partition().typical_element(),
        r.max_distance,
        r.completed,
        r.trials
    );
    if r.passed {
        report.lines.push(line);
    } else {
        report.fail(format!("{line} FAIL"));
    }
    Ok(())
}

fn vdp_h() -> RealMatrix {
    RealMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).expect("rectangular")
}

fn dynamics_vdp(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    for (label, m) in [("0.5A", catalog::two_cell_adjacency()), ("0.5L", catalog::two_cell_laplacian())] {
        let sys = CoupledSystem::new(Preset::vanderpol(2.0), vdp_h(), RealMatrix::from_rational(&m).scaled(0.5))?;
        let set = invariant_polydiagonals_capped(&m, args.n_cap)?;
        for p in set.partitions() {
            invariance_case(&sys, &TwistedSubspace::new(p.clone(), 2, None)?, args, label, report)?;
        }
    }
    // (a,a) is not A-invariant, so trajectories must leave it
    let a = catalog::two_cell_adjacency();
    let p = TaggedPartition::parse_typical_element("(a,a)")?;
    let sys = CoupledSystem::new(Preset::vanderpol(2.0), vdp_h(), RealMatrix::from_rational(&a).scaled(0.5))?;
    let r = invariance_test(&sys, &TwistedSubspace::new(p, 2, None)?, &options(args))?;
    report.cases += 1;
    let line = format!("0.5A (a,a) control: max distance {:.3e}", r.max_distance);
    if r.max_distance > 1e-2 {
        report.lines.push(line);
    } else {
        report.fail(format!("{line} did not leave the subspace"));
    }
    Ok(())
}

fn dynamics_lorenz(args: &SuiteArgs, report: &mut SuiteReport) -> Result<()> {
    let n = RealMatrix::diagonal(&[-1.0, -1.0, 1.0]);
    let l = RealMatrix::from_rational(&catalog::two_cell_symmetric_laplacian());
    let h_plus = RealMatrix::diagonal(&[0.0, 0.0, 1.0]);
    let h_minus = RealMatrix::diagonal(&[0.0, 1.0, 0.0]);
    let twisted = TaggedPartition::parse_typical_element("(a,-a)")?;
    for (label, h, kappa) in [("H+, M = -2L", &h_plus, -2.0), ("H-, M = 2L", &h_minus, 2.0)] {
        let sys = CoupledSystem::new(Preset::lorenz(), h.clone(), l.scaled(kappa))?;
        for cell in 0..2 {
            let e = equivariance_check(&sys, &n, cell, 200, args.seed)?;
            report.cases += 1;
            let line = format!(
                "{label} cell {cell}: |f(Nx) - Nf(x)| <= {:.3e}, HN = H {}, NH = H {}, NH = -H {}",
                e.f_equivariance_error,
                yes(e.hn_equals_h),
                yes(e.nh_equals_h),
                yes(e.nh_equals_minus_h)
            );
            match &e.status {
                EquivarianceStatus::Pass => report.lines.push(line),
                // only the commuting case is asserted
                EquivarianceStatus::HypothesisFailure(why) if e.nh_equals_minus_h => {
                    report.lines.push(format!("{line} ({why})"))
                }
                other => report.fail(format!("{line} {other:?}")),
            }
        }
        let s = TwistedSubspace::new(twisted.clone(), 3, Some(n.clone()))?;
        invariance_case(&sys, &s, args, &format!("{label} Delta^N"), report)?;
    }
    Ok(())
}
