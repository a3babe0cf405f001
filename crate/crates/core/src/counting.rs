//! Counts of each family of polydiagonal subspaces of `R^n`, computed three
//! independent ways: generating-function coefficients, recurrences, and
//! direct enumeration.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{int, Rational};
use crate::partitions::{enumerate_tagged_partitions, SetPartitions, SubspaceKind};

/// Default truncation order of generating-function series.
pub const DEFAULT_ORDER: usize = 16;
/// Largest `n` enumerated unless the caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error("exponential needs a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("no recurrence for {0}; use the generating function or enumeration")]
    NoRecurrence(SubspaceKind),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("series of order {left} and {right} cannot be combined")]
    OrderMismatch { left: usize, right: usize },
}

/// Power series `Σ c_k x^k` truncated after `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coefficients: Vec<Rational>,
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl RationalSeries {
    /// Coefficients `c_0..=c_order`; missing ones are zero.
    pub fn new(order: usize, mut coefficients: Vec<Rational>) -> Self {
        coefficients.resize(order + 1, Rational::zero());
        Self { coefficients }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::new(order, vec![c])
    }

    /// `e^{a x}`.
    pub fn exp_linear(order: usize, a: i64) -> Self {
        let mut power = BigInt::one();
        let coefficients = (0..=order)
            .map(|k| {
                let c = Rational::new(power.clone(), factorial(k));
                power *= a;
                c
            })
            .collect();
        Self { coefficients }
    }

    /// `Σ_k C(2k, k) x^{2k} / (2k)!`, the series of `I_0(2x)`.
    pub fn bessel_i0_2x(order: usize) -> Self {
        let mut coefficients = vec![Rational::zero(); order + 1];
        for k in 0..=order / 2 {
            // C(2k, k) / (2k)! = 1 / (k!)^2
            let kf = factorial(k);
            coefficients[2 * k] = Rational::new(BigInt::one(), &kf * &kf);
        }
        Self { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> &Rational {
        &self.coefficients[k]
    }

    fn check_order(&self, other: &Self) -> Result<(), CountingError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(CountingError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CountingError> {
        self.check_order(other)?;
        Ok(Self {
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CountingError> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coefficients.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coefficients[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coefficients: out })
    }

    /// `n! · c_n`, the counting sequence of an exponential generating function.
    pub fn egf_term(&self, n: usize) -> Rational {
        &self.coefficients[n] * Rational::from_integer(factorial(n))
    }
}

/// `exp(s)` for `s(0) = 0`, from `(exp s)' = s' exp s`, i.e.
/// `n g_n = Σ_{k=1..n} k s_k g_{n-k}`.
pub fn series_exp(s: &RationalSeries) -> Result<RationalSeries, CountingError> {
    if !s.coefficient(0).is_zero() {
        return Err(CountingError::NonzeroConstantTerm);
    }
    let order = s.order();
    let mut g = vec![Rational::zero(); order + 1];
    g[0] = Rational::one();
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            let sk = s.coefficient(k);
            if !sk.is_zero() {
                acc += sk * int(k as i64) * &g[n - k];
            }
        }
        g[n] = acc / int(n as i64);
    }
    Ok(RationalSeries { coefficients: g })
}

/// The exponent whose exponential is the generating function of `kind`;
/// `None` for kinds whose series is not a plain exponential.
fn exponent(kind: SubspaceKind, order: usize) -> Option<RationalSeries> {
    let e = |a| RationalSeries::exp_linear(order, a);
    let c = |v: Rational| RationalSeries::constant(order, v);
    let x = RationalSeries::new(order, vec![Rational::zero(), Rational::one()]);
    let half = crate::linalg::ratio(1, 2);
    let sum = |terms: &[RationalSeries]| {
        terms
            .iter()
            .skip(1)
            .fold(terms[0].clone(), |acc, t| acc.add(t).expect("equal orders"))
    };
    let series = match kind {
        // (e^{2x} - 1 + 2x) / 2
        SubspaceKind::Polydiagonal => sum(&[e(2), c(int(-1)), x.scaled(&int(2))]).scaled(&half),
        // e^x - 1
        SubspaceKind::Synchrony => sum(&[e(1), c(int(-1))]),
        // (e^{2x} - 2e^x + 2x + 1) / 2
        SubspaceKind::Fully => sum(&[e(2), e(1).scaled(&int(-2)), x.scaled(&int(2)), c(int(1))]).scaled(&half),
        // (e^{2x} - 2e^x + 1) / 2
        SubspaceKind::FreelyFully => sum(&[e(2), e(1).scaled(&int(-2)), c(int(1))]).scaled(&half),
        // I_0(2x)/2 - 1/2 + x
        SubspaceKind::Evenly => sum(&[RationalSeries::bessel_i0_2x(order).scaled(&half), c(-half.clone()), x]),
        // I_0(2x)/2 - 1/2
        SubspaceKind::FreelyEvenly => sum(&[RationalSeries::bessel_i0_2x(order).scaled(&half), c(-half.clone())]),
        SubspaceKind::AntiSynchrony | SubspaceKind::Minimally => return None,
    };
    Some(series)
}

/// Exponential generating function of `kind`, truncated after `x^order`.
pub fn egf(kind: SubspaceKind, order: usize) -> RationalSeries {
    if let Some(s) = exponent(kind, order) {
        return series_exp(&s).expect("exponents have zero constant term");
    }
    let bell = egf(SubspaceKind::Synchrony, order);
    match kind {
        SubspaceKind::AntiSynchrony => egf(SubspaceKind::Polydiagonal, order)
            .add(&bell.scaled(&int(-1)))
            .expect("equal orders"),
        // (e^x - 1) exp(e^x - 1): a nonempty fixed class beside a set partition
        SubspaceKind::Minimally => {
            let nonempty = RationalSeries::exp_linear(order, 1).add(&RationalSeries::constant(order, int(-1)));
            nonempty.expect("equal orders").mul(&bell).expect("equal orders")
        }
        _ => unreachable!("handled by exponent"),
    }
}

fn to_integer(r: Rational) -> BigInt {
    assert!(r.is_integer(), "count {r} is not an integer");
    r.to_integer()
}

/// `n!` times the coefficient of `x^n` in the generating function of `kind`.
pub fn egf_count(kind: SubspaceKind, n: usize) -> BigInt {
    to_integer(egf(kind, n.max(DEFAULT_ORDER)).egf_term(n))
}

fn multinomial(n: usize, parts: &[usize]) -> BigInt {
    let rest = n - parts.iter().sum::<usize>();
    let denom = parts.iter().fold(factorial(rest), |acc, &k| acc * factorial(k));
    factorial(n) / denom
}

fn binomial(n: usize, k: usize) -> BigInt {
    multinomial(n, &[k])
}

// memo tables per recurrence; each entry i holds the i-th term
static MEMO: Mutex<BTreeMap<SubspaceKind, Vec<BigInt>>> = Mutex::new(BTreeMap::new());

fn next_term(kind: SubspaceKind, prev: &[BigInt]) -> BigInt {
    let n = prev.len() - 1;
    let mut total = BigInt::zero();
    match kind {
        SubspaceKind::Polydiagonal => {
            total += &prev[n];
            for (k, p) in prev.iter().enumerate().take(n) {
                for l in 0..n - k {
                    total += multinomial(n, &[k, l]) * p;
                }
            }
            for (k, p) in prev.iter().enumerate() {
                total += binomial(n, k) * p;
            }
        }
        SubspaceKind::Synchrony => {
            for (k, s) in prev.iter().enumerate() {
                total += binomial(n, k) * s;
            }
        }
        SubspaceKind::Fully => {
            total += &prev[n];
            for (k, p) in prev.iter().enumerate().take(n) {
                for l in 0..n - k {
                    total += multinomial(n, &[k, l]) * p;
                }
            }
        }
        SubspaceKind::Evenly => {
            total += &prev[n];
            for l in 0..=n.saturating_sub(1) / 2 {
                if 2 * l < n {
                    let k = n - 2 * l - 1;
                    total += multinomial(n, &[k, l]) * &prev[k];
                }
            }
        }
        _ => unreachable!("only base recurrences are memoized"),
    }
    total
}

fn base_recurrence(kind: SubspaceKind, n: usize) -> BigInt {
    let mut memo = MEMO.lock().expect("memo lock");
    let terms = memo.entry(kind).or_insert_with(|| vec![BigInt::one()]);
    while terms.len() <= n {
        let t = next_term(kind, terms);
        terms.push(t);
    }
    terms[n].clone()
}

/// Count of `kind` in `R^n` from its recurrence; `m_n = B_{n+1} - B_n` and
/// `a_n = p_n - s_n` are derived from the base sequences.
pub fn recurrence_count(kind: SubspaceKind, n: usize) -> Result<BigInt, CountingError> {
    match kind {
        SubspaceKind::Polydiagonal | SubspaceKind::Synchrony | SubspaceKind::Fully | SubspaceKind::Evenly => {
            Ok(base_recurrence(kind, n))
        }
        SubspaceKind::AntiSynchrony => Ok(base_recurrence(SubspaceKind::Polydiagonal, n)
            - base_recurrence(SubspaceKind::Synchrony, n)),
        SubspaceKind::Minimally => Ok(base_recurrence(SubspaceKind::Synchrony, n + 1)
            - base_recurrence(SubspaceKind::Synchrony, n)),
        SubspaceKind::FreelyEvenly | SubspaceKind::FreelyFully => Err(CountingError::NoRecurrence(kind)),
    }
}

/// Counts of every kind among the tagged partitions of `n` cells.
pub fn enumeration_counts(n: usize, cap: usize) -> Result<BTreeMap<SubspaceKind, u64>, CountingError> {
    if n > cap {
        return Err(CountingError::TooLarge { n, cap });
    }
    let set_partitions: Vec<Vec<usize>> = SetPartitions::new(n).collect();
    let involutions: Vec<_> = (0..=n).map(crate::partitions::partial_involutions).collect();
    let totals = set_partitions
        .par_iter()
        .map(|rgs| {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut counts = [0u64; 8];
            for partner in &involutions[k] {
                let class = crate::partitions::TaggedPartition::from_raw(rgs.clone(), partner.clone()).classify();
                for (slot, kind) in SubspaceKind::ALL.iter().enumerate() {
                    counts[slot] += u64::from(kind.matches(&class));
                }
            }
            counts
        })
        .reduce(|| [0u64; 8], |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    Ok(SubspaceKind::ALL.iter().copied().zip(totals).collect())
}

/// Count of one kind by streaming the enumeration.
pub fn enumeration_count(kind: SubspaceKind, n: usize, cap: usize) -> Result<u64, CountingError> {
    if n > cap {
        return Err(CountingError::TooLarge { n, cap });
    }
    Ok(enumerate_tagged_partitions(n, Some(kind)).count() as u64)
}

/// Whether the independent methods agreed at one `(kind, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub kind: SubspaceKind,
    pub n: usize,
    pub egf: String,
    pub recurrence: Option<String>,
    pub enumeration: Option<u64>,
    pub agree: bool,
}

/// Counts for `n = 0..=max_n`, one row per kind.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub max_n: usize,
    pub rows: BTreeMap<SubspaceKind, Vec<BigInt>>,
    pub checks: Vec<CrossCheck>,
}

/// Rows shown in the standard table.
pub const TABLE_KINDS: [SubspaceKind; 6] = [
    SubspaceKind::Polydiagonal,
    SubspaceKind::Synchrony,
    SubspaceKind::AntiSynchrony,
    SubspaceKind::Minimally,
    SubspaceKind::Fully,
    SubspaceKind::Evenly,
];

/// Builds the table from generating functions and cross-checks against the
/// recurrences and, for `n ≤ enumeration_cap`, against enumeration.
pub fn count_table(max_n: usize, enumeration_cap: usize) -> CountTable {
    let order = max_n.max(DEFAULT_ORDER);
    let mut rows = BTreeMap::new();
    let mut checks = Vec::new();
    let enumerated: Vec<Option<BTreeMap<SubspaceKind, u64>>> = (0..=max_n)
        .map(|n| enumeration_counts(n, enumeration_cap).ok())
        .collect();
    for kind in SubspaceKind::ALL {
        let series = egf(kind, order);
        let values: Vec<BigInt> = (0..=max_n).map(|n| to_integer(series.egf_term(n))).collect();
        for (n, value) in values.iter().enumerate() {
            let recurrence = recurrence_count(kind, n).ok();
            let enumeration = enumerated[n].as_ref().map(|m| m[&kind]);
            let agree = recurrence.as_ref().is_none_or(|r| r == value)
                && enumeration.is_none_or(|e| BigInt::from(e) == *value);
            checks.push(CrossCheck {
                kind,
                n,
                egf: value.to_string(),
                recurrence: recurrence.map(|r| r.to_string()),
                enumeration,
                agree,
            });
        }
        rows.insert(kind, values);
    }
    CountTable { max_n, rows, checks }
}

impl CountTable {
    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(|c| c.agree)
    }

    pub fn get(&self, kind: SubspaceKind, n: usize) -> Option<&BigInt> {
        self.rows.get(&kind)?.get(n)
    }

    fn status(&self, kind: SubspaceKind) -> &'static str {
        let relevant: Vec<&CrossCheck> = self.checks.iter().filter(|c| c.kind == kind).collect();
        if relevant.iter().any(|c| !c.agree) {
            "MISMATCH"
        } else if relevant.iter().any(|c| c.enumeration.is_some() || c.recurrence.is_some()) {
            "ok"
        } else {
            "unchecked"
        }
    }

    fn kinds(&self, all_kinds: bool) -> Vec<SubspaceKind> {
        if all_kinds {
            SubspaceKind::ALL.to_vec()
        } else {
            TABLE_KINDS.to_vec()
        }
    }

    pub fn to_markdown(&self, all_kinds: bool) -> String {
        let cols: Vec<String> = (0..=self.max_n).map(|n| n.to_string()).collect();
        let mut out = format!("| kind | | {} | check |\n", cols.join(" | "));
        out.push_str(&format!("|---|---|{}---|\n", "--:|".repeat(self.max_n + 1)));
        for kind in self.kinds(all_kinds) {
            let values: Vec<String> = self.rows[&kind].iter().map(BigInt::to_string).collect();
            out.push_str(&format!(
                "| {} | {}_n | {} | {} |\n",
                kind.name(),
                kind.symbol(),
                values.join(" | "),
                self.status(kind)
            ));
        }
        out
    }

    pub fn to_csv(&self, all_kinds: bool) -> String {
        let cols: Vec<String> = (0..=self.max_n).map(|n| n.to_string()).collect();
        let mut out = format!("kind,{},check\n", cols.join(","));
        for kind in self.kinds(all_kinds) {
            let values: Vec<String> = self.rows[&kind].iter().map(BigInt::to_string).collect();
            out.push_str(&format!("{},{},{}\n", kind.name(), values.join(","), self.status(kind)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: BTreeMap<&str, Vec<serde_json::Value>> = self
            .rows
            .iter()
            .map(|(k, v)| {
                let values = v
                    .iter()
                    .map(|x| match x.to_u64() {
                        Some(u) => serde_json::Value::from(u),
                        None => serde_json::Value::from(x.to_string()),
                    })
                    .collect();
                (k.name(), values)
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "max_n": self.max_n,
            "rows": rows,
            "all_agree": self.all_agree(),
            "checks": self.checks,
        }))
        .expect("table serializes")
    }
}
