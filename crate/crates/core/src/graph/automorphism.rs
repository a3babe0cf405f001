use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GraphError, WeightedDigraph};
use crate::linalg::Rational;

/// Largest digraph the exhaustive automorphism search accepts.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 12;

/// A bijection on `0..n`, stored as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexPermutation {
    images: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        Self {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.images.len()];
        for (v, &img) in self.images.iter().enumerate() {
            inv[img] = v;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(PartialEq, Eq)]
struct Signature {
    self_loop: Option<Rational>,
    incoming: Vec<Rational>,
    outgoing: Vec<Rational>,
}

fn signatures(g: &WeightedDigraph) -> Vec<Signature> {
    let mut sigs: Vec<Signature> = (0..g.n())
        .map(|v| Signature {
            self_loop: g.weight(v, v).cloned(),
            incoming: Vec::new(),
            outgoing: Vec::new(),
        })
        .collect();
    for (t, h, w) in g.arrows() {
        if t != h {
            sigs[t].outgoing.push(w.clone());
            sigs[h].incoming.push(w.clone());
        }
    }
    for s in &mut sigs {
        s.incoming.sort();
        s.outgoing.sort();
    }
    sigs
}

/// All weight-preserving automorphisms, in lexicographic order of their
/// image lists (the identity comes first).
///
/// Backtracking assigns vertices in order, pruning candidates whose
/// loop weight and sorted in/out weight multisets differ.
pub fn automorphisms(g: &WeightedDigraph) -> Result<Vec<VertexPermutation>, GraphError> {
    let n = g.n();
    if n > MAX_AUTOMORPHISM_VERTICES {
        return Err(GraphError::TooLarge {
            n,
            max: MAX_AUTOMORPHISM_VERTICES,
        });
    }
    let sigs = signatures(g);
    let mut found = Vec::new();
    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(g, &sigs, &mut mapping, &mut used, &mut found);
    Ok(found)
}

fn extend(
    g: &WeightedDigraph,
    sigs: &[Signature],
    mapping: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Vec<VertexPermutation>,
) {
    let v = mapping.len();
    if v == g.n() {
        found.push(VertexPermutation {
            images: mapping.clone(),
        });
        return;
    }
    for c in 0..g.n() {
        if used[c] || sigs[c] != sigs[v] {
            continue;
        }
        let consistent = mapping.iter().enumerate().all(|(u, &image)| {
            g.weight(u, v) == g.weight(image, c) && g.weight(v, u) == g.weight(c, image)
        });
        if !consistent || g.weight(v, v) != g.weight(c, c) {
            continue;
        }
        used[c] = true;
        mapping.push(c);
        extend(g, sigs, mapping, used, found);
        mapping.pop();
        used[c] = false;
    }
}
