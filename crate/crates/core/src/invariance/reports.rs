//! Executable statements about invariant polydiagonals. Reports never fail
//! on a violated conclusion; they list the offending subspaces instead.

use num_traits::Zero;
use serde::Serialize;

use super::{invariant_polydiagonals_capped, InvarianceError, InvariantSet, DEFAULT_N_CAP};
use crate::linalg::{format_rational, nullspace, span_contains, Rational, RationalMatrix, RationalVector};
use crate::partitions::TaggedPartition;

/// Right and left eigenspaces of a matrix at one rational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub lambda: Rational,
    pub right_basis: Vec<RationalVector>,
    pub left_basis: Vec<RationalVector>,
}

impl EigenData {
    pub fn is_eigenvalue(&self) -> bool {
        !self.right_basis.is_empty()
    }

    pub fn geometric_multiplicity(&self) -> usize {
        self.right_basis.len()
    }
}

fn square(m: &RationalMatrix) -> Result<(), InvarianceError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(InvarianceError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Exact nullspaces of `M - λI` and `Mᵀ - λI`.
pub fn eigendata(m: &RationalMatrix, lambda: &Rational) -> Result<EigenData, InvarianceError> {
    square(m)?;
    let shifted = m.shifted(lambda).expect("square");
    let shifted_t = m.transpose().shifted(lambda).expect("square");
    Ok(EigenData {
        lambda: lambda.clone(),
        right_basis: nullspace(&shifted),
        left_basis: nullspace(&shifted_t),
    })
}

fn simple_eigenvectors(m: &RationalMatrix, lambda: &Rational) -> Result<(RationalVector, RationalVector), InvarianceError> {
    let data = eigendata(m, lambda)?;
    if data.right_basis.len() != 1 || data.left_basis.len() != 1 {
        return Err(InvarianceError::Multiplicity {
            lambda: format_rational(lambda),
            multiplicity: data.right_basis.len(),
        });
    }
    Ok((data.right_basis[0].clone(), data.left_basis[0].clone()))
}

fn orthogonal(v: &RationalVector, p: &TaggedPartition) -> bool {
    p.basis().iter().all(|b| v.dot(b).expect("lengths agree").is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct MainLemmaRow {
    pub typical: String,
    pub right_in_subspace: bool,
    pub left_orthogonal: bool,
}

impl MainLemmaRow {
    pub fn holds(&self) -> bool {
        self.right_in_subspace || self.left_orthogonal
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainLemmaReport {
    pub lambda: String,
    pub right_eigenvector: String,
    pub left_eigenvector: String,
    pub rows: Vec<MainLemmaRow>,
}

impl MainLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(MainLemmaRow::holds)
    }

    pub fn violations(&self) -> Vec<&MainLemmaRow> {
        self.rows.iter().filter(|r| !r.holds()).collect()
    }
}

/// For a simple eigenvalue `λ` with eigenvectors `v_R` of `M` and `v_L` of
/// `Mᵀ`, records for every invariant polydiagonal `W` whether `v_R ∈ W`
/// and whether `v_L ⊥ W`.
pub fn check_main_lemma(m: &RationalMatrix, lambda: &Rational) -> Result<MainLemmaReport, InvarianceError> {
    let set = invariant_polydiagonals_capped(m, DEFAULT_N_CAP)?;
    main_lemma_on(&set, lambda)
}

/// As [`check_main_lemma`], over an already computed invariant set.
pub fn main_lemma_on(set: &InvariantSet, lambda: &Rational) -> Result<MainLemmaReport, InvarianceError> {
    let (vr, vl) = simple_eigenvectors(&set.matrix, lambda)?;
    let rows = set
        .partitions()
        .map(|p| MainLemmaRow {
            typical: p.typical_element(),
            right_in_subspace: span_contains(&p.basis(), &vr).expect("lengths agree"),
            left_orthogonal: orthogonal(&vl, p),
        })
        .collect();
    Ok(MainLemmaReport {
        lambda: format_rational(lambda),
        right_eigenvector: vr.to_string(),
        left_eigenvector: vl.to_string(),
        rows,
    })
}

/// Why the constant-column-sum statement does or does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Hypotheses {
    Met { lambda: String, eigenvector: String },
    UnequalColumnSums,
    NotSimple { lambda: String, multiplicity: usize },
    OpposingEntries { eigenvector: String, i: usize, j: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnSumsRow {
    pub typical: String,
    pub synchrony: bool,
    pub evenly_tagged: bool,
    pub contains_eigenvector: bool,
}

impl ColumnSumsRow {
    /// Synchrony containing `v`, or evenly tagged anti-synchrony without it.
    pub fn holds(&self) -> bool {
        (self.synchrony && self.contains_eigenvector)
            || (!self.synchrony && self.evenly_tagged && !self.contains_eigenvector)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnSumsReport {
    pub hypotheses: Hypotheses,
    pub rows: Vec<ColumnSumsRow>,
}

impl ColumnSumsReport {
    pub fn hypotheses_met(&self) -> bool {
        matches!(self.hypotheses, Hypotheses::Met { .. })
    }

    pub fn counterexamples(&self) -> Vec<&ColumnSumsRow> {
        self.rows.iter().filter(|r| !r.holds()).collect()
    }

    /// True when the hypotheses hold and no row violates the conclusion.
    pub fn passed(&self) -> bool {
        self.hypotheses_met() && self.counterexamples().is_empty()
    }
}

/// Checks the hypotheses (equal column sums `λ`, `λ` of geometric
/// multiplicity one, `v_i + v_j ≠ 0` for all `i, j`) and, if they hold,
/// classifies every invariant polydiagonal against the conclusion.
pub fn check_constant_column_sums_theorem(m: &RationalMatrix) -> Result<ColumnSumsReport, InvarianceError> {
    square(m)?;
    let hypotheses = column_sum_hypotheses(m)?;
    let Hypotheses::Met { .. } = &hypotheses else {
        return Ok(ColumnSumsReport {
            hypotheses,
            rows: Vec::new(),
        });
    };
    let lambda = m.col_sums().into_iter().next().unwrap_or_else(Rational::zero);
    let v = eigendata(m, &lambda)?.right_basis.remove(0);
    let set = invariant_polydiagonals_capped(m, DEFAULT_N_CAP)?;
    let rows = set
        .entries
        .iter()
        .map(|e| ColumnSumsRow {
            typical: e.partition.typical_element(),
            synchrony: e.class.synchrony,
            evenly_tagged: e.class.evenly_tagged,
            contains_eigenvector: e.partition.contains(&v).expect("lengths agree"),
        })
        .collect();
    Ok(ColumnSumsReport { hypotheses, rows })
}

fn column_sum_hypotheses(m: &RationalMatrix) -> Result<Hypotheses, InvarianceError> {
    let sums = m.col_sums();
    let Some(lambda) = sums.first().cloned() else {
        // the empty matrix has no eigenvalue
        return Ok(Hypotheses::NotSimple {
            lambda: "0".into(),
            multiplicity: 0,
        });
    };
    if sums.iter().any(|s| *s != lambda) {
        return Ok(Hypotheses::UnequalColumnSums);
    }
    let data = eigendata(m, &lambda)?;
    if data.geometric_multiplicity() != 1 {
        return Ok(Hypotheses::NotSimple {
            lambda: format_rational(&lambda),
            multiplicity: data.geometric_multiplicity(),
        });
    }
    let v = &data.right_basis[0];
    for i in 0..v.len() {
        for j in i..v.len() {
            if (&v[i] + &v[j]).is_zero() {
                return Ok(Hypotheses::OpposingEntries {
                    eigenvector: v.to_string(),
                    i,
                    j,
                });
            }
        }
    }
    Ok(Hypotheses::Met {
        lambda: format_rational(&lambda),
        eigenvector: v.to_string(),
    })
}

/// Invariant anti-synchrony subspaces that fail to be evenly tagged.
#[derive(Clone, Debug, Serialize)]
pub struct EvenlyTaggedReport {
    pub invariant_count: usize,
    pub anti_synchrony_count: usize,
    pub violations: Vec<String>,
}

impl EvenlyTaggedReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every invariant anti-synchrony subspace of `m` that is not evenly
/// tagged.
pub fn check_evenly_tagged(m: &RationalMatrix) -> Result<EvenlyTaggedReport, InvarianceError> {
    let set = invariant_polydiagonals_capped(m, DEFAULT_N_CAP)?;
    let anti: Vec<_> = set.entries.iter().filter(|e| e.class.anti_synchrony).collect();
    Ok(EvenlyTaggedReport {
        invariant_count: set.len(),
        anti_synchrony_count: anti.len(),
        violations: anti
            .iter()
            .filter(|e| !e.class.evenly_tagged)
            .map(|e| e.partition.typical_element())
            .collect(),
    })
}
