//! Tagged partitions and the polydiagonal subspaces they encode.
//!
//! A tagged partition of `{0..n}` is a set partition together with a partial
//! involution on its classes having at most one fixed point. Its subspace is
//! `{x : x_i = x_j if [i] = [j], x_i = -x_j if [i]* = [j]}`; cells of the
//! fixed class are forced to zero.

mod btype;
mod enumerate;
mod json;
mod typical;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VertexPermutation;
use crate::linalg::{int, Rational, RationalVector};

pub use btype::{btype_partitions, BTypePartition};
pub use enumerate::{enumerate_tagged_partitions, partial_involutions, SetPartitions, TaggedPartitions};
pub use json::TaggedPartitionDoc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("invalid tagged partition: {0}")]
    Invalid(String),
    #[error("malformed typical element {text:?}: {reason}")]
    Typical { text: String, reason: String },
    #[error("invalid B-type partition: {0}")]
    BType(String),
    #[error("vector has length {found}, partition is over {expected} cells")]
    LengthMismatch { expected: usize, found: usize },
    #[error("unknown subspace kind {0:?}")]
    UnknownKind(String),
}

/// Canonical tagged partition: classes are numbered by their smallest
/// member (so `class_of` is a restricted growth string) and
/// `partner[c]` is the image of class `c` under the involution.
///
/// The derived ordering (restricted growth string first, then the
/// involution with `None < Some(_)`) is the enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedPartition {
    class_of: Vec<usize>,
    partner: Vec<Option<usize>>,
}

/// Which of the named regions of the classification a subspace lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubspaceClass {
    pub synchrony: bool,
    pub anti_synchrony: bool,
    pub minimally_tagged: bool,
    pub fully_tagged: bool,
    pub evenly_tagged: bool,
    pub freely_tagged: bool,
}

impl SubspaceClass {
    /// The most specific label, as used in tables and exports.
    pub fn label(&self) -> &'static str {
        if self.synchrony {
            "synchrony"
        } else if self.minimally_tagged && self.fully_tagged {
            "trivial"
        } else if self.evenly_tagged {
            "evenly_tagged"
        } else if self.fully_tagged {
            "fully_tagged"
        } else if self.minimally_tagged {
            "minimally_tagged"
        } else {
            "anti_synchrony"
        }
    }
}

/// Named families of polydiagonal subspaces, used as enumeration filters
/// and as the rows of the count table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    Polydiagonal,
    Synchrony,
    AntiSynchrony,
    Minimally,
    Fully,
    Evenly,
    FreelyEvenly,
    FreelyFully,
}

impl SubspaceKind {
    pub const ALL: [SubspaceKind; 8] = [
        SubspaceKind::Polydiagonal,
        SubspaceKind::Synchrony,
        SubspaceKind::AntiSynchrony,
        SubspaceKind::Minimally,
        SubspaceKind::Fully,
        SubspaceKind::Evenly,
        SubspaceKind::FreelyEvenly,
        SubspaceKind::FreelyFully,
    ];

    pub fn matches(self, class: &SubspaceClass) -> bool {
        match self {
            SubspaceKind::Polydiagonal => true,
            SubspaceKind::Synchrony => class.synchrony,
            SubspaceKind::AntiSynchrony => class.anti_synchrony,
            SubspaceKind::Minimally => class.minimally_tagged,
            SubspaceKind::Fully => class.fully_tagged,
            SubspaceKind::Evenly => class.evenly_tagged,
            SubspaceKind::FreelyEvenly => class.freely_tagged && class.evenly_tagged,
            SubspaceKind::FreelyFully => class.freely_tagged && class.fully_tagged,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SubspaceKind::Polydiagonal => "polydiagonal",
            SubspaceKind::Synchrony => "synchrony",
            SubspaceKind::AntiSynchrony => "anti-synchrony",
            SubspaceKind::Minimally => "minimally",
            SubspaceKind::Fully => "fully",
            SubspaceKind::Evenly => "evenly",
            SubspaceKind::FreelyEvenly => "freely-evenly",
            SubspaceKind::FreelyFully => "freely-fully",
        }
    }

    /// One-letter sequence name used in the count table.
    pub fn symbol(self) -> &'static str {
        match self {
            SubspaceKind::Polydiagonal => "p",
            SubspaceKind::Synchrony => "s",
            SubspaceKind::AntiSynchrony => "a",
            SubspaceKind::Minimally => "m",
            SubspaceKind::Fully => "f",
            SubspaceKind::Evenly => "e",
            SubspaceKind::FreelyEvenly => "~e",
            SubspaceKind::FreelyFully => "~f",
        }
    }
}

impl std::str::FromStr for SubspaceKind {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match norm.as_str() {
            "polydiagonal" | "all" | "p" => SubspaceKind::Polydiagonal,
            "synchrony" | "s" => SubspaceKind::Synchrony,
            "anti-synchrony" | "antisynchrony" | "a" => SubspaceKind::AntiSynchrony,
            "minimally" | "minimally-tagged" | "m" => SubspaceKind::Minimally,
            "fully" | "fully-tagged" | "f" => SubspaceKind::Fully,
            "evenly" | "evenly-tagged" | "e" => SubspaceKind::Evenly,
            "freely-evenly" => SubspaceKind::FreelyEvenly,
            "freely-fully" => SubspaceKind::FreelyFully,
            _ => return Err(PartitionError::UnknownKind(s.to_string())),
        };
        Ok(kind)
    }
}

impl fmt::Display for SubspaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn invalid(msg: impl Into<String>) -> PartitionError {
    PartitionError::Invalid(msg.into())
}

impl TaggedPartition {
    /// Builds from canonical data, checking every invariant.
    pub fn from_canonical(class_of: Vec<usize>, partner: Vec<Option<usize>>) -> Result<Self, PartitionError> {
        let mut next = 0;
        for &c in &class_of {
            if c > next {
                return Err(invalid("class ids are not numbered by smallest member"));
            }
            if c == next {
                next += 1;
            }
        }
        if partner.len() != next {
            return Err(invalid(format!(
                "involution covers {} classes, partition has {next}",
                partner.len()
            )));
        }
        let mut fixed = 0;
        for (c, p) in partner.iter().enumerate() {
            if let Some(d) = *p {
                if d >= next || partner[d] != Some(c) {
                    return Err(invalid(format!("class {c} -> {d} is not part of an involution")));
                }
                if d == c {
                    fixed += 1;
                }
            }
        }
        if fixed > 1 {
            return Err(invalid("involution has more than one fixed point"));
        }
        Ok(Self { class_of, partner })
    }

    /// Builds from arbitrary class labels: `labels[i]` is any id for the
    /// class of cell `i`, `partner_of` maps ids under the involution.
    pub fn from_labels(labels: &[usize], partner_of: impl Fn(usize) -> Option<usize>) -> Result<Self, PartitionError> {
        let mut canon: Vec<(usize, usize)> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for &l in labels {
            let id = match canon.iter().find(|(label, _)| *label == l) {
                Some(&(_, id)) => id,
                None => {
                    canon.push((l, canon.len()));
                    canon.len() - 1
                }
            };
            class_of.push(id);
        }
        let mut partner = vec![None; canon.len()];
        for &(label, id) in &canon {
            if let Some(other) = partner_of(label) {
                let Some(&(_, other_id)) = canon.iter().find(|(l, _)| *l == other) else {
                    return Err(invalid(format!("label {label} is paired with an empty class")));
                };
                partner[id] = Some(other_id);
            }
        }
        Self::from_canonical(class_of, partner)
    }

    /// Builds from explicit classes of 0-based cells, involution pairs of
    /// class indices, and an optional fixed class.
    pub fn from_classes(
        n: usize,
        classes: &[Vec<usize>],
        pairs: &[(usize, usize)],
        fixed: Option<usize>,
    ) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(invalid(format!("class {k} is empty")));
            }
            for &cell in class {
                if cell >= n {
                    return Err(invalid(format!("cell {cell} out of range")));
                }
                if labels[cell] != usize::MAX {
                    return Err(invalid(format!("cell {cell} appears twice")));
                }
                labels[cell] = k;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(invalid("classes do not cover every cell"));
        }
        let mut partner = vec![None; classes.len()];
        let mut assign = |a: usize, b: usize| -> Result<(), PartitionError> {
            if a >= classes.len() || b >= classes.len() {
                return Err(invalid(format!("class index {} out of range", a.max(b))));
            }
            for (x, y) in [(a, b), (b, a)] {
                match partner[x] {
                    Some(prev) if prev != y => {
                        return Err(invalid(format!("class {x} is tagged twice")));
                    }
                    _ => partner[x] = Some(y),
                }
            }
            Ok(())
        };
        for &(a, b) in pairs {
            if a == b {
                return Err(invalid("a pair must join two distinct classes; use the fixed class"));
            }
            assign(a, b)?;
        }
        if let Some(f) = fixed {
            assign(f, f)?;
        }
        Self::from_labels(&labels, |l| partner[l])
    }

    /// Skips validation; callers guarantee canonical form.
    pub(crate) fn from_raw(class_of: Vec<usize>, partner: Vec<Option<usize>>) -> Self {
        Self { class_of, partner }
    }

    /// The partition of `n` cells into singletons with no tags (all of `R^n`).
    pub fn discrete(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
            partner: vec![None; n],
        }
    }

    /// One class, fixed by the involution: the zero subspace.
    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Self::discrete(0);
        }
        Self {
            class_of: vec![0; n],
            partner: vec![Some(0)],
        }
    }

    /// One untagged class: the diagonal `span(1)`.
    pub fn diagonal(n: usize) -> Self {
        if n == 0 {
            return Self::discrete(0);
        }
        Self {
            class_of: vec![0; n],
            partner: vec![None],
        }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.partner.len()
    }

    pub fn class_of(&self, cell: usize) -> usize {
        self.class_of[cell]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn partner(&self, class: usize) -> Option<usize> {
        self.partner[class]
    }

    pub fn partners(&self) -> &[Option<usize>] {
        &self.partner
    }

    /// Members of each class, in class order, each sorted ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (cell, &c) in self.class_of.iter().enumerate() {
            out[c].push(cell);
        }
        out
    }

    pub fn fixed_class(&self) -> Option<usize> {
        self.partner.iter().enumerate().find(|&(c, p)| *p == Some(c)).map(|(c, _)| c)
    }

    /// Involution pairs `(c, d)` with `c < d`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.filter(|&d| d > c).map(|d| (c, d)))
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count()];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn dimension(&self) -> usize {
        self.partner.iter().filter(|p| p.is_none()).count() + self.pairs().count()
    }

    pub fn classify(&self) -> SubspaceClass {
        let tagged = self.partner.iter().filter(|p| p.is_some()).count();
        let synchrony = tagged == 0;
        let fully = tagged == self.class_count();
        let sizes = self.class_sizes();
        let evenly = fully && self.pairs().all(|(c, d)| sizes[c] == sizes[d]);
        SubspaceClass {
            synchrony,
            anti_synchrony: !synchrony,
            minimally_tagged: tagged == 1,
            fully_tagged: fully,
            evenly_tagged: evenly,
            freely_tagged: self.fixed_class().is_none(),
        }
    }

    /// Spanning vectors: `e_P` for each untagged class, `e_P - e_P*` for each
    /// pair (smaller class first), nothing for the fixed class.
    pub fn basis(&self) -> Vec<RationalVector> {
        let n = self.n();
        let classes = self.classes();
        let mut out = Vec::with_capacity(self.dimension());
        for (c, members) in classes.iter().enumerate() {
            let mut v = vec![Rational::zero(); n];
            match self.partner[c] {
                None => {
                    for &i in members {
                        v[i] = int(1);
                    }
                }
                Some(d) if d > c => {
                    for &i in members {
                        v[i] = int(1);
                    }
                    for &i in &classes[d] {
                        v[i] = int(-1);
                    }
                }
                Some(_) => continue,
            }
            out.push(RationalVector::new(v));
        }
        out
    }

    /// Membership test against the defining equations.
    pub fn contains(&self, x: &RationalVector) -> Result<bool, PartitionError> {
        if x.len() != self.n() {
            return Err(PartitionError::LengthMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(self.contains_values(x.entries()))
    }

    pub(crate) fn contains_values<T>(&self, x: &[T]) -> bool
    where
        T: PartialEq + Zero + Clone + std::ops::Neg<Output = T>,
    {
        let mut first: Vec<Option<&T>> = vec![None; self.class_count()];
        for (cell, value) in x.iter().enumerate() {
            let c = self.class_of[cell];
            match first[c] {
                Some(v) if v != value => return false,
                Some(_) => {}
                None => first[c] = Some(value),
            }
        }
        for (c, p) in self.partner.iter().enumerate() {
            match *p {
                Some(d) if d == c => {
                    if !first[c].is_some_and(|v| v.is_zero()) {
                        return false;
                    }
                }
                Some(d) if d > c => {
                    let (Some(a), Some(b)) = (first[c], first[d]) else {
                        return false;
                    };
                    if a.clone() != -b.clone() {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    /// Whether the all-ones vector is orthogonal to the subspace.
    pub fn orthogonal_to_ones(&self) -> bool {
        self.basis()
            .iter()
            .all(|b| b.iter().fold(Rational::zero(), |acc, x| acc + x).is_zero())
    }

    /// Image under a relabelling of the cells: cell `phi(i)` takes the role
    /// of cell `i`.
    pub fn relabel(&self, phi: &VertexPermutation) -> TaggedPartition {
        assert_eq!(phi.len(), self.n(), "permutation size must match partition size");
        let mut labels = vec![0; self.n()];
        for (cell, &c) in self.class_of.iter().enumerate() {
            labels[phi.apply(cell)] = c;
        }
        Self::from_labels(&labels, |l| self.partner[l]).expect("relabelling preserves validity")
    }
}

impl fmt::Display for TaggedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.typical_element())
    }
}
