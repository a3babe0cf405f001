//! Exact decisions of `M W ⊆ W` for polydiagonal subspaces `W`, and the
//! structures built from them.

mod lattice;
mod orbits;
mod perron;
mod reports;

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{format_rational, RationalMatrix};
use crate::partitions::{partial_involutions, SetPartitions, SubspaceClass, TaggedPartition};

pub use lattice::SubspaceLattice;
pub use orbits::orbits;
pub use perron::{check_perron, perron_power_iteration, PerronEstimate, PerronReport};
pub use reports::{
    check_constant_column_sums_theorem, check_evenly_tagged, check_main_lemma, eigendata, main_lemma_on, ColumnSumsReport,
    ColumnSumsRow, EigenData, EvenlyTaggedReport, Hypotheses, MainLemmaReport, MainLemmaRow,
};

/// Largest `n` scanned exhaustively unless the caller raises the cap.
pub const DEFAULT_N_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvarianceError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("partition is over {found} cells, matrix is {expected}x{expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("n = {n} exceeds the exhaustive scan cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("eigenvalue {lambda} has geometric multiplicity {multiplicity}, expected 1")]
    Multiplicity { lambda: String, multiplicity: usize },
    #[error("permutations are not closed under composition: {0}")]
    NotAGroup(String),
    #[error("permutation {0} is not an automorphism of the matrix")]
    NotAnAutomorphism(String),
    #[error("power iteration did not converge in {0} iterations")]
    NoConvergence(usize),
}

trait Scalar: Clone + Zero + PartialEq + Neg<Output = Self> + Add<Output = Self> + Sub<Output = Self> {}
impl<T> Scalar for T where T: Clone + Zero + PartialEq + Neg<Output = T> + Add<Output = T> + Sub<Output = T> {}

/// Decides invariance from column sums of the matrix: for each untagged
/// class or involution pair, `y = M e_P - M e_P*` must lie in the subspace.
fn invariant_by_columns<T: Scalar>(n: usize, entry: impl Fn(usize, usize) -> T, p: &TaggedPartition) -> bool {
    let classes = p.classes();
    let column_sum = |class: &[usize], i: usize| {
        class.iter().fold(T::zero(), |acc, &j| acc + entry(i, j))
    };
    let mut y: Vec<T> = Vec::with_capacity(n);
    for (c, members) in classes.iter().enumerate() {
        let partner = match p.partner(c) {
            Some(d) if d == c => continue,
            Some(d) if d < c => continue,
            other => other,
        };
        y.clear();
        for i in 0..n {
            let mut v = column_sum(members, i);
            if let Some(d) = partner {
                v = v - column_sum(&classes[d], i);
            }
            y.push(v);
        }
        if !p.contains_values(&y) {
            return false;
        }
    }
    true
}

/// Reusable invariance test for one matrix. Entries are scaled to
/// integers when they fit, so most checks avoid big-number arithmetic.
#[derive(Clone, Debug)]
pub struct InvarianceChecker {
    matrix: RationalMatrix,
    // row-major entries of c * M for some c > 0
    scaled: Option<Vec<i64>>,
}

impl InvarianceChecker {
    pub fn new(m: &RationalMatrix) -> Result<Self, InvarianceError> {
        if !m.is_square() {
            return Err(InvarianceError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self {
            matrix: m.clone(),
            scaled: m.integer_scaling().map(|(_, ints)| ints),
        })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_invariant(&self, p: &TaggedPartition) -> Result<bool, InvarianceError> {
        let n = self.n();
        if p.n() != n {
            return Err(InvarianceError::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        Ok(match &self.scaled {
            Some(ints) => invariant_by_columns(n, |i, j| i128::from(ints[i * n + j]), p),
            None => invariant_by_columns(n, |i, j| self.matrix.get(i, j).clone(), p),
        })
    }

    /// The rational route, bypassing integer scaling.
    pub fn is_invariant_rational(&self, p: &TaggedPartition) -> Result<bool, InvarianceError> {
        let n = self.n();
        if p.n() != n {
            return Err(InvarianceError::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        Ok(invariant_by_columns(n, |i, j| self.matrix.get(i, j).clone(), p))
    }
}

/// Whether `m` maps the subspace of `p` into itself.
pub fn is_invariant(m: &RationalMatrix, p: &TaggedPartition) -> Result<bool, InvarianceError> {
    InvarianceChecker::new(m)?.is_invariant(p)
}

/// One member of an [`InvariantSet`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantEntry {
    pub partition: TaggedPartition,
    pub class: SubspaceClass,
}

/// The invariant polydiagonal subspaces of one matrix, in canonical
/// partition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSet {
    pub matrix: RationalMatrix,
    pub entries: Vec<InvariantEntry>,
}

#[derive(Serialize)]
struct EntryDoc {
    typical: String,
    class: &'static str,
    dimension: usize,
}

#[derive(Serialize)]
struct SetDoc {
    n: usize,
    matrix: Vec<Vec<String>>,
    subspaces: Vec<EntryDoc>,
}

impl InvariantSet {
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partitions(&self) -> impl Iterator<Item = &TaggedPartition> + '_ {
        self.entries.iter().map(|e| &e.partition)
    }

    pub fn typical_elements(&self) -> Vec<String> {
        self.partitions().map(TaggedPartition::typical_element).collect()
    }

    pub fn position(&self, p: &TaggedPartition) -> Option<usize> {
        self.entries.binary_search_by(|e| e.partition.cmp(p)).ok()
    }

    /// Keeps the entries satisfying `keep`, preserving order.
    pub fn filtered(&self, keep: impl Fn(&InvariantEntry) -> bool) -> InvariantSet {
        InvariantSet {
            matrix: self.matrix.clone(),
            entries: self.entries.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = SetDoc {
            n: self.n(),
            matrix: (0..self.matrix.rows())
                .map(|i| self.matrix.row(i).iter().map(format_rational).collect())
                .collect(),
            subspaces: self
                .entries
                .iter()
                .map(|e| EntryDoc {
                    typical: e.partition.typical_element(),
                    class: e.class.label(),
                    dimension: e.partition.dimension(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("invariant set serializes")
    }
}

/// Exhaustive scan with the default size cap.
pub fn invariant_polydiagonals(m: &RationalMatrix) -> Result<InvariantSet, InvarianceError> {
    invariant_polydiagonals_capped(m, DEFAULT_N_CAP)
}

/// Tests every tagged partition of `n` cells. Set partitions are checked in
/// parallel; results keep canonical order.
pub fn invariant_polydiagonals_capped(m: &RationalMatrix, cap: usize) -> Result<InvariantSet, InvarianceError> {
    let checker = InvarianceChecker::new(m)?;
    let n = checker.n();
    if n > cap {
        return Err(InvarianceError::TooLarge { n, cap });
    }
    let involutions: Vec<Vec<Vec<Option<usize>>>> = (0..=n).map(partial_involutions).collect();
    let set_partitions: Vec<Vec<usize>> = SetPartitions::new(n).collect();
    let found: Vec<Vec<InvariantEntry>> = set_partitions
        .par_iter()
        .map(|rgs| {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            involutions[k]
                .iter()
                .filter_map(|partner| {
                    let p = TaggedPartition::from_raw(rgs.clone(), partner.clone());
                    let keep = checker.is_invariant(&p).expect("sizes agree");
                    keep.then(|| InvariantEntry {
                        class: p.classify(),
                        partition: p,
                    })
                })
                .collect()
        })
        .collect();
    Ok(InvariantSet {
        matrix: m.clone(),
        entries: found.into_iter().flatten().collect(),
    })
}
