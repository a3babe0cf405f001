//! Floating-point integration of coupled cell systems
//! `ẋᵢ = f(xᵢ) + H Σⱼ Mᵢⱼ xⱼ` and numerical checks that polydiagonal
//! subspaces found exactly by [`crate::invariance`] are dynamically invariant.
//!
//! States are flat vectors of length `k·n`; cell `i` occupies `x[i·k..(i+1)·k]`.

mod presets;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::RationalMatrix;
use crate::partitions::TaggedPartition;

pub use presets::Preset;

/// Integration aborts once the state norm exceeds this.
pub const BLOW_UP_NORM: f64 = 1e9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state norm exceeded 1e9 at t = {time}")]
    BlowUp { time: f64 },
    #[error("state became NaN at t = {time}")]
    NaN { time: f64 },
    #[error("N is not an involution: max |N² - I| = {0:e}")]
    NotAnInvolution(f64),
}

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = v;
        }
        m
    }

    /// Rows must all have the same length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, DynamicsError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(DynamicsError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(RealMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        RealMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.to_f64(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scaled(&self, s: f64) -> Self {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self · other`; panics on a shape mismatch.
    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = RealMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a != 0.0 {
                    for j in 0..other.cols {
                        out.data[i * other.cols + j] += a * other.get(l, j);
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise `|self - other|`; infinite on a shape mismatch.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `ẋᵢ = f(xᵢ) + H Σⱼ Mᵢⱼ xⱼ` on `(R^k)^n`.
#[derive(Clone, Debug, Serialize)]
pub struct CoupledSystem {
    n: usize,
    k: usize,
    preset: Preset,
    h: RealMatrix,
    m: RealMatrix,
}

impl CoupledSystem {
    pub fn new(preset: Preset, h: RealMatrix, m: RealMatrix) -> Result<Self, DynamicsError> {
        let k = preset.k();
        if h.rows != k || h.cols != k {
            return Err(DynamicsError::DimensionMismatch {
                expected: k,
                found: if h.rows != k { h.rows } else { h.cols },
            });
        }
        if m.rows != m.cols {
            return Err(DynamicsError::DimensionMismatch {
                expected: m.rows,
                found: m.cols,
            });
        }
        Ok(CoupledSystem {
            n: m.rows,
            k,
            preset,
            h,
            m,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n * self.k
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    pub fn h(&self) -> &RealMatrix {
        &self.h
    }

    pub fn m(&self) -> &RealMatrix {
        &self.m
    }

    /// Writes `F(x)` into `out`.
    pub fn eval(&self, x: &[f64], out: &mut [f64]) {
        let (n, k) = (self.n, self.k);
        let mut coupled = vec![0.0; k];
        for i in 0..n {
            let cell = i * k..(i + 1) * k;
            self.preset.eval(&x[cell.clone()], &mut out[cell.clone()]);
            coupled.iter_mut().for_each(|c| *c = 0.0);
            for j in 0..n {
                let w = self.m.get(i, j);
                if w != 0.0 {
                    for (c, xj) in coupled.iter_mut().zip(&x[j * k..(j + 1) * k]) {
                        *c += w * xj;
                    }
                }
            }
            for (o, hc) in out[cell].iter_mut().zip(self.h.mul_vec(&coupled)) {
                *o += hc;
            }
        }
    }

    pub fn vector_field(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.eval(x, &mut out);
        out
    }

    fn check_state(&self, x: &[f64]) -> Result<(), DynamicsError> {
        if x.len() != self.dim() {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }
}

/// Solution sampled on the uniform grid `t = i·dt`.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub k: usize,
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    /// Component `c` of cell `i` along the trajectory.
    pub fn coordinate(&self, cell: usize, c: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[cell * self.k + c]).collect()
    }

    /// Keeps every `stride`-th sample and the final one.
    pub fn thinned(&self, stride: usize) -> Trajectory {
        let stride = stride.max(1);
        let last = self.len().saturating_sub(1);
        let keep: Vec<usize> = (0..self.len()).filter(|i| i % stride == 0 || *i == last).collect();
        Trajectory {
            k: self.k,
            times: keep.iter().map(|&i| self.times[i]).collect(),
            states: keep.iter().map(|&i| self.states[i].clone()).collect(),
        }
    }

    /// Header `t,x1,...,x{kn}` followed by one row per sample.
    pub fn to_csv(&self) -> String {
        let dim = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for c in 1..=dim {
            out.push_str(&format!(",x{c}"));
        }
        out.push('\n');
        for (t, s) in self.times.iter().zip(&self.states) {
            out.push_str(&t.to_string());
            for v in s {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn step_count(dt: f64, t_end: f64) -> Result<usize, DynamicsError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(DynamicsError::InvalidParameter(format!("dt = {dt}")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(DynamicsError::InvalidParameter(format!("T = {t_end}")));
    }
    Ok((t_end / dt).round().max(1.0) as usize)
}

/// Classical RK4 with `round(T/dt)` fixed steps, calling `observe(t, x)` at
/// `t = 0` and after every step. Returns the final state.
pub fn integrate_with<F>(sys: &CoupledSystem, x0: &[f64], dt: f64, t_end: f64, mut observe: F) -> Result<Vec<f64>, DynamicsError>
where
    F: FnMut(f64, &[f64]),
{
    sys.check_state(x0)?;
    let steps = step_count(dt, t_end)?;
    let d = sys.dim();
    let mut x = x0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]);
    let mut tmp = vec![0.0; d];
    observe(0.0, &x);
    for s in 1..=steps {
        sys.eval(&x, &mut k1);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * dt * k1[i];
        }
        sys.eval(&tmp, &mut k2);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * dt * k2[i];
        }
        sys.eval(&tmp, &mut k3);
        for i in 0..d {
            tmp[i] = x[i] + dt * k3[i];
        }
        sys.eval(&tmp, &mut k4);
        for i in 0..d {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = s as f64 * dt;
        if x.iter().any(|v| v.is_nan()) {
            return Err(DynamicsError::NaN { time: t });
        }
        if norm(&x) > BLOW_UP_NORM {
            return Err(DynamicsError::BlowUp { time: t });
        }
        observe(t, &x);
    }
    Ok(x)
}

/// Stores every step; prefer [`integrate_with`] for long runs.
pub fn integrate(sys: &CoupledSystem, x0: &[f64], dt: f64, t_end: f64) -> Result<Trajectory, DynamicsError> {
    let mut traj = Trajectory {
        k: sys.k(),
        times: Vec::new(),
        states: Vec::new(),
    };
    integrate_with(sys, x0, dt, t_end, |t, x| {
        traj.times.push(t);
        traj.states.push(x.to_vec());
    })?;
    Ok(traj)
}

/// `Δ_P^N`: `xᵢ = xⱼ` within a class, `xᵢ = N xⱼ` across a tagged pair and
/// `xᵢ = N xᵢ` on the fixed class. With `N = -I` this is `R^k ⊗ Δ_P`.
#[derive(Clone, Debug)]
pub struct TwistedSubspace {
    partition: TaggedPartition,
    k: usize,
    twist: RealMatrix,
}

impl TwistedSubspace {
    /// `twist` defaults to `-I`; a supplied matrix must satisfy `N² = I`
    /// within 1e-12.
    pub fn new(partition: TaggedPartition, k: usize, twist: Option<RealMatrix>) -> Result<Self, DynamicsError> {
        let twist = twist.unwrap_or_else(|| RealMatrix::identity(k).scaled(-1.0));
        if twist.rows != k || twist.cols != k {
            return Err(DynamicsError::DimensionMismatch {
                expected: k,
                found: twist.rows,
            });
        }
        let err = twist.mul(&twist).max_abs_diff(&RealMatrix::identity(k));
        if err > 1e-12 {
            return Err(DynamicsError::NotAnInvolution(err));
        }
        Ok(TwistedSubspace { partition, k, twist })
    }

    pub fn partition(&self) -> &TaggedPartition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn twist(&self) -> &RealMatrix {
        &self.twist
    }

    pub fn dim(&self) -> usize {
        self.partition.n() * self.k
    }

    /// Norm of the residual of the defining constraints, divided by `‖x‖ + 1`.
    pub fn distance(&self, x: &[f64]) -> Result<f64, DynamicsError> {
        if x.len() != self.dim() {
            return Err(DynamicsError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let k = self.k;
        let cell = |i: usize| &x[i * k..(i + 1) * k];
        let classes = self.partition.classes();
        let mut sq = 0.0;
        for (c, members) in classes.iter().enumerate() {
            let rep = cell(members[0]);
            for &i in &members[1..] {
                sq += cell(i).iter().zip(rep).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
            }
            match self.partition.partner(c) {
                Some(d) if d == c => {
                    // only the part outside Fix(N) violates xᵢ = N xᵢ
                    for &i in members {
                        let nx = self.twist.mul_vec(cell(i));
                        sq += cell(i).iter().zip(&nx).map(|(a, b)| ((a - b) / 2.0).powi(2)).sum::<f64>();
                    }
                }
                Some(d) if d > c => {
                    let nrep = self.twist.mul_vec(rep);
                    for &i in &classes[d] {
                        sq += cell(i).iter().zip(&nrep).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
                    }
                }
                _ => {}
            }
        }
        Ok(sq.sqrt() / (norm(x) + 1.0))
    }

    /// A point of the subspace: coefficients uniform in `[-1, 1]^k` per free
    /// class, mapped by `N` onto partners and projected onto `Fix(N)` on the
    /// fixed class.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let k = self.k;
        let count = self.partition.class_count();
        let mut values: Vec<Option<Vec<f64>>> = vec![None; count];
        for c in 0..count {
            if values[c].is_some() {
                continue;
            }
            let y: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            match self.partition.partner(c) {
                Some(d) if d == c => {
                    let ny = self.twist.mul_vec(&y);
                    values[c] = Some(y.iter().zip(&ny).map(|(a, b)| (a + b) / 2.0).collect());
                }
                Some(d) => {
                    values[d] = Some(self.twist.mul_vec(&y));
                    values[c] = Some(y);
                }
                None => values[c] = Some(y),
            }
        }
        let mut x = Vec::with_capacity(self.dim());
        for i in 0..self.partition.n() {
            x.extend_from_slice(values[self.partition.class_of(i)].as_ref().expect("every class assigned"));
        }
        x
    }
}

impl fmt::Display for TwistedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k = {})", self.partition.typical_element(), self.k)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceOptions {
    pub trials: usize,
    pub dt: f64,
    pub t_end: f64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for InvarianceOptions {
    fn default() -> Self {
        InvarianceOptions {
            trials: 8,
            dt: 1e-3,
            t_end: 50.0,
            tol: 1e-6,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub subspace: String,
    pub trials: usize,
    /// Trials that reached `T`.
    pub completed: usize,
    /// Inconclusive trials, with the integration error.
    pub blowups: Vec<String>,
    pub max_distance: f64,
    /// Smallest `|x|` over first cell coordinates, useful when `f` has a
    /// singularity at 0.
    pub min_abs_first_coordinate: f64,
    pub tol: f64,
    pub passed: bool,
}

struct TrialOutcome {
    max_distance: f64,
    min_abs: f64,
    error: Option<DynamicsError>,
}

fn run_trial(sys: &CoupledSystem, s: &TwistedSubspace, x0: &[f64], dt: f64, t_end: f64) -> TrialOutcome {
    let k = sys.k();
    let mut max_distance = 0.0f64;
    let mut min_abs = f64::INFINITY;
    let result = integrate_with(sys, x0, dt, t_end, |_, x| {
        max_distance = max_distance.max(s.distance(x).unwrap_or(f64::INFINITY));
        for i in 0..sys.n() {
            min_abs = min_abs.min(x[i * k].abs());
        }
    });
    TrialOutcome {
        max_distance,
        min_abs,
        error: result.err(),
    }
}

/// Integrates from each given start and records the largest distance from
/// `s` ever reached. Starts are used as given; blow-ups are inconclusive.
pub fn invariance_test_from(
    sys: &CoupledSystem,
    s: &TwistedSubspace,
    starts: &[Vec<f64>],
    dt: f64,
    t_end: f64,
    tol: f64,
) -> Result<InvarianceReport, DynamicsError> {
    if s.dim() != sys.dim() {
        return Err(DynamicsError::DimensionMismatch {
            expected: sys.dim(),
            found: s.dim(),
        });
    }
    for x in starts {
        sys.check_state(x)?;
    }
    step_count(dt, t_end)?;
    let outcomes: Vec<TrialOutcome> = starts.par_iter().map(|x0| run_trial(sys, s, x0, dt, t_end)).collect();
    let mut report = InvarianceReport {
        subspace: s.to_string(),
        trials: starts.len(),
        completed: 0,
        blowups: Vec::new(),
        max_distance: 0.0,
        min_abs_first_coordinate: f64::INFINITY,
        tol,
        passed: false,
    };
    for o in outcomes {
        report.max_distance = report.max_distance.max(o.max_distance);
        report.min_abs_first_coordinate = report.min_abs_first_coordinate.min(o.min_abs);
        match o.error {
            None => report.completed += 1,
            Some(e) => report.blowups.push(e.to_string()),
        }
    }
    report.passed = report.completed > 0 && report.max_distance <= tol;
    Ok(report)
}

/// Trial `t` starts from a point of `s` drawn with seed `seed + t`.
pub fn invariance_test(sys: &CoupledSystem, s: &TwistedSubspace, opts: &InvarianceOptions) -> Result<InvarianceReport, DynamicsError> {
    let starts: Vec<Vec<f64>> = (0..opts.trials)
        .map(|t| s.sample(&mut ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(t as u64))))
        .collect();
    invariance_test_from(sys, s, &starts, opts.dt, opts.t_end, opts.tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum EquivarianceStatus {
    Pass,
    Fail,
    /// A hypothesis failed and the check was skipped.
    HypothesisFailure(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub cell: usize,
    pub samples: usize,
    /// Largest `‖f(Nx) - N f(x)‖` over the samples.
    pub f_equivariance_error: f64,
    pub hn_equals_h: bool,
    pub nh_equals_h: bool,
    pub nh_equals_minus_h: bool,
    /// Largest `‖F(γx) - γF(x)‖`, or NaN when skipped.
    pub max_error: f64,
    pub status: EquivarianceStatus,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.status == EquivarianceStatus::Pass
    }
}

/// Compares `F(γ_ℓ x)` with `γ_ℓ F(x)`, where `γ_ℓ` applies `N` to cell `ℓ`
/// only, at `samples` seeded points with coordinates in `[-2, 2]`. Requires
/// `f(Nx) = N f(x)` at the samples and `HN = NH = H`.
pub fn equivariance_check(
    sys: &CoupledSystem,
    twist: &RealMatrix,
    cell: usize,
    samples: usize,
    seed: u64,
) -> Result<EquivarianceReport, DynamicsError> {
    let (n, k) = (sys.n(), sys.k());
    if twist.rows != k || twist.cols != k {
        return Err(DynamicsError::DimensionMismatch {
            expected: k,
            found: twist.rows,
        });
    }
    if cell >= n {
        return Err(DynamicsError::InvalidParameter(format!("cell {cell} out of range for n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..samples)
        .map(|_| (0..n * k).map(|_| rng.gen_range(-2.0..=2.0)).collect())
        .collect();

    let mut f_err = 0.0f64;
    let mut f_ok = true;
    for x in &points {
        for i in 0..n {
            let xi = &x[i * k..(i + 1) * k];
            let fx = sys.preset().apply(xi);
            let lhs = sys.preset().apply(&twist.mul_vec(xi));
            let rhs = twist.mul_vec(&fx);
            let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            let e = norm(&diff);
            if e.is_finite() {
                f_err = f_err.max(e);
                f_ok &= e <= 1e-10 * (1.0 + norm(&fx));
            }
        }
    }
    let h = sys.h();
    let tol = 1e-12 * (1.0 + h.data.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    let hn = h.mul(twist);
    let nh = twist.mul(h);
    let mut report = EquivarianceReport {
        cell,
        samples,
        f_equivariance_error: f_err,
        hn_equals_h: hn.max_abs_diff(h) <= tol,
        nh_equals_h: nh.max_abs_diff(h) <= tol,
        nh_equals_minus_h: nh.max_abs_diff(&h.scaled(-1.0)) <= tol,
        max_error: f64::NAN,
        status: EquivarianceStatus::Pass,
    };
    let failure = if !f_ok {
        Some(format!("f(Nx) != N f(x) (error {f_err:e})"))
    } else if !report.hn_equals_h || !report.nh_equals_h {
        let note = if report.nh_equals_minus_h { "; NH = -H holds instead" } else { "" };
        Some(format!("HN = NH = H fails{note}"))
    } else {
        None
    };
    if let Some(reason) = failure {
        report.status = EquivarianceStatus::HypothesisFailure(reason);
        return Ok(report);
    }

    let gamma = |x: &[f64]| -> Vec<f64> {
        let mut y = x.to_vec();
        let image = twist.mul_vec(&x[cell * k..(cell + 1) * k]);
        y[cell * k..(cell + 1) * k].copy_from_slice(&image);
        y
    };
    let mut max_error = 0.0f64;
    let mut ok = true;
    for x in &points {
        let fx = sys.vector_field(x);
        if fx.iter().any(|v| !v.is_finite()) {
            continue;
        }
        let lhs = sys.vector_field(&gamma(x));
        let rhs = gamma(&fx);
        let diff: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        let e = norm(&diff);
        max_error = max_error.max(e);
        ok &= e <= 1e-10 * (1.0 + norm(&fx));
    }
    report.max_error = max_error;
    report.status = if ok { EquivarianceStatus::Pass } else { EquivarianceStatus::Fail };
    Ok(report)
}

/// Max of `|uᵢ + sign·uⱼ|` over the final `tail_fraction` of `[0, T]`, where
/// `u` is the first coordinate of a cell. `sign = 1` measures distance from
/// anti-synchrony and `sign = -1` from synchrony.
pub fn antisynchrony_convergence(
    sys: &CoupledSystem,
    pair: (usize, usize),
    sign: f64,
    x0: &[f64],
    dt: f64,
    t_end: f64,
    tail_fraction: f64,
) -> Result<f64, DynamicsError> {
    let (i, j) = pair;
    if i >= sys.n() || j >= sys.n() {
        return Err(DynamicsError::InvalidParameter(format!("cell pair ({i}, {j}) out of range")));
    }
    if !(0.0..=1.0).contains(&tail_fraction) || tail_fraction == 0.0 {
        return Err(DynamicsError::InvalidParameter(format!("tail fraction {tail_fraction}")));
    }
    let k = sys.k();
    let start = t_end * (1.0 - tail_fraction);
    let mut worst = 0.0f64;
    integrate_with(sys, x0, dt, t_end, |t, x| {
        if t >= start - 0.5 * dt {
            worst = worst.max((x[i * k] + sign * x[j * k]).abs());
        }
    })?;
    Ok(worst)
}

/// Uniform in `[-scale, scale]^{kn}`.
pub fn random_state(sys: &CoupledSystem, scale: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sys.dim()).map(|_| rng.gen_range(-scale..=scale)).collect()
}
