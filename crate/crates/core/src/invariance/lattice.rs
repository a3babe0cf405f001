//! Invariant polydiagonal subspaces ordered by reverse inclusion.

use serde::Serialize;

use super::InvariantSet;
use crate::partitions::TaggedPartition;

/// Node `i` is entry `i` of the underlying set. A cover `(i, j)` means
/// `W_i ⊂ W_j` with nothing invariant strictly between; in the reverse
/// inclusion order `i` is drawn above `j`.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    pub set: InvariantSet,
    pub covers: Vec<(usize, usize)>,
    // contained[i][j] iff W_i ⊆ W_j
    contained: Vec<Vec<bool>>,
}

#[derive(Serialize)]
struct NodeDoc {
    typical: String,
    class: &'static str,
}

#[derive(Serialize)]
struct LatticeDoc {
    nodes: Vec<NodeDoc>,
    covers: Vec<(usize, usize)>,
}

fn subspace_le(a: &TaggedPartition, b: &TaggedPartition) -> bool {
    a.dimension() <= b.dimension() && a.basis().iter().all(|v| b.contains_values(v.entries()))
}

impl SubspaceLattice {
    pub fn build(set: InvariantSet) -> Self {
        let parts: Vec<&TaggedPartition> = set.partitions().collect();
        let k = parts.len();
        let contained: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i == j || subspace_le(parts[i], parts[j])).collect())
            .collect();
        let strictly = |i: usize, j: usize| i != j && contained[i][j];
        let mut covers = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if strictly(i, j) && !(0..k).any(|m| strictly(i, m) && strictly(m, j)) {
                    covers.push((i, j));
                }
            }
        }
        Self { set, covers, contained }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// Whether `W_i ⊆ W_j`.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.contained[i][j]
    }

    /// The smallest subspace: contained in every node.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.contained[i][j]))
    }

    /// The largest subspace: contains every node.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&j| (0..self.len()).all(|i| self.contained[i][j]))
    }

    /// The largest node inside both `W_i` and `W_j`.
    pub fn intersection(&self, i: usize, j: usize) -> Option<usize> {
        let below: Vec<usize> = (0..self.len())
            .filter(|&m| self.contained[m][i] && self.contained[m][j])
            .collect();
        below
            .iter()
            .copied()
            .find(|&m| below.iter().all(|&o| self.contained[o][m]))
    }

    /// The smallest node containing both `W_i` and `W_j`.
    pub fn span(&self, i: usize, j: usize) -> Option<usize> {
        let above: Vec<usize> = (0..self.len())
            .filter(|&m| self.contained[i][m] && self.contained[j][m])
            .collect();
        above
            .iter()
            .copied()
            .find(|&m| above.iter().all(|&o| self.contained[m][o]))
    }

    pub fn to_json(&self) -> String {
        let doc = LatticeDoc {
            nodes: self
                .set
                .entries
                .iter()
                .map(|e| NodeDoc {
                    typical: e.partition.typical_element(),
                    class: e.class.label(),
                })
                .collect(),
            covers: self.covers.clone(),
        };
        serde_json::to_string(&doc).expect("lattice serializes")
    }

    /// Hasse diagram with the smallest subspace on top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=TB;\n  node [shape=box, style=filled];\n");
        for (i, e) in self.set.entries.iter().enumerate() {
            let color = match e.class.label() {
                "synchrony" => "lightblue",
                "trivial" => "white",
                "evenly_tagged" => "palegreen",
                "fully_tagged" => "khaki",
                "minimally_tagged" => "lightpink",
                _ => "lightgrey",
            };
            out.push_str(&format!(
                "  n{i} [label=\"{}\", fillcolor={color}, tooltip=\"{}\"];\n",
                e.partition.typical_element(),
                e.class.label()
            ));
        }
        for &(i, j) in &self.covers {
            out.push_str(&format!("  n{i} -> n{j} [dir=none];\n"));
        }
        out.push_str("}\n");
        out
    }
}
