//! Weighted digraphs and the matrices they induce.
//!
//! Vertices are `0..n` in the Rust API. Every file format and the CLI use
//! `1..=n`, matching how networks are usually written down.

mod automorphism;
mod cayley;
pub mod io;

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{Rational, RationalMatrix};

pub use automorphism::{automorphisms, VertexPermutation, MAX_AUTOMORPHISM_VERTICES};
pub use cayley::{cayley_digraph, cyclic_group_table, dihedral_group_table, GroupTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate arrow {tail} -> {head}")]
    DuplicateArrow { tail: usize, head: usize },
    #[error("arrow {tail} -> {head} has weight zero")]
    ZeroWeight { tail: usize, head: usize },
    #[error("malformed edge {{{0}, {1}}}")]
    MalformedEdge(usize, usize),
    #[error("automorphism search is exhaustive and limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("generators produce two arrows {tail} -> {head}")]
    CollidingArrows { tail: usize, head: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A digraph on `0..n` with nonzero rational arrow weights. Loops are
/// allowed; parallel arrows are not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedDigraph {
    n: usize,
    arrows: BTreeMap<(usize, usize), Rational>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            arrows: BTreeMap::new(),
        }
    }

    pub fn from_arrows<I>(n: usize, arrows: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut g = Self::new(n);
        for (tail, head, w) in arrows {
            g.add_arrow(tail, head, w)?;
        }
        Ok(g)
    }

    /// The digraph whose (in-)adjacency matrix is `a`, i.e. an arrow
    /// `j -> i` of weight `a[i][j]` for every nonzero entry.
    pub fn from_adjacency(a: &RationalMatrix) -> Result<Self, GraphError> {
        if !a.is_square() {
            return Err(GraphError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let mut g = Self::new(a.rows());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let w = a.get(i, j);
                if !w.is_zero() {
                    g.add_arrow(j, i, w.clone())?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_arrow(&mut self, tail: usize, head: usize, weight: Rational) -> Result<(), GraphError> {
        for vertex in [tail, head] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        if weight.is_zero() {
            return Err(GraphError::ZeroWeight { tail, head });
        }
        if self.arrows.contains_key(&(tail, head)) {
            return Err(GraphError::DuplicateArrow { tail, head });
        }
        self.arrows.insert((tail, head), weight);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Arrows as `(tail, head, weight)` in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.arrows.iter().map(|(&(t, h), w)| (t, h, w))
    }

    pub fn weight(&self, tail: usize, head: usize) -> Option<&Rational> {
        self.arrows.get(&(tail, head))
    }

    /// `A[i][j] = w(j, i)`: the weight of the arrow into `i` from `j`.
    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let mut a = RationalMatrix::zeros(self.n, self.n);
        for (&(tail, head), w) in &self.arrows {
            a.set(head, tail, w.clone());
        }
        a
    }

    /// `L = diag(row sums of A) - A`.
    pub fn laplacian_matrix(&self) -> RationalMatrix {
        let a = self.adjacency_matrix();
        let sums = a.row_sums();
        let mut l = a.scaled(&-Rational::from_integer(1.into()));
        for (i, s) in sums.into_iter().enumerate() {
            let d = l.get(i, i) + s;
            l.set(i, i, d);
        }
        l
    }

    /// Weighted in-degree of every vertex (row sums of `A`).
    pub fn in_degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for (&(_, head), w) in &self.arrows {
            d[head] += w;
        }
        d
    }

    /// Weighted out-degree of every vertex (column sums of `A`).
    pub fn out_degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for (&(tail, _), w) in &self.arrows {
            d[tail] += w;
        }
        d
    }

    /// Out-degree minus in-degree.
    pub fn imbalance(&self, vertex: usize) -> Result<Rational, GraphError> {
        if vertex >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
        }
        Ok(self.imbalances().swap_remove(vertex))
    }

    pub fn imbalances(&self) -> Vec<Rational> {
        self.out_degrees()
            .into_iter()
            .zip(self.in_degrees())
            .map(|(out, inn)| out - inn)
            .collect()
    }

    pub fn is_weight_balanced(&self) -> bool {
        self.imbalances().iter().all(Zero::is_zero)
    }

    pub fn is_weakly_connected(&self) -> bool {
        let mut neighbours = vec![Vec::new(); self.n];
        for &(t, h) in self.arrows.keys() {
            neighbours[t].push(h);
            neighbours[h].push(t);
        }
        reaches_all(self.n, &neighbours)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let mut forward = vec![Vec::new(); self.n];
        let mut backward = vec![Vec::new(); self.n];
        for &(t, h) in self.arrows.keys() {
            forward[t].push(h);
            backward[h].push(t);
        }
        reaches_all(self.n, &forward) && reaches_all(self.n, &backward)
    }

    /// Whether the automorphism group moves vertex 0 onto every vertex.
    pub fn is_vertex_transitive(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Ok(true);
        }
        let autos = automorphisms(self)?;
        let mut hit = vec![false; self.n];
        for phi in &autos {
            hit[phi.apply(0)] = true;
        }
        Ok(hit.into_iter().all(|h| h))
    }
}

fn reaches_all(n: usize, adjacency: &[Vec<usize>]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The digraph of an undirected graph: each edge `{i, j}` becomes the two
/// arrows `i -> j` and `j -> i` of weight 1.
pub fn digraph_of_graph(n: usize, edges: &[(usize, usize)]) -> Result<WeightedDigraph, GraphError> {
    let mut g = WeightedDigraph::new(n);
    let one = Rational::from_integer(1.into());
    for &(i, j) in edges {
        if i == j {
            return Err(GraphError::MalformedEdge(i, j));
        }
        g.add_arrow(i, j, one.clone()).map_err(|e| match e {
            GraphError::DuplicateArrow { .. } => GraphError::MalformedEdge(i, j),
            other => other,
        })?;
        g.add_arrow(j, i, one.clone())?;
    }
    Ok(g)
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0` with unit weights.
pub fn directed_cycle(n: usize) -> WeightedDigraph {
    let one = Rational::from_integer(1.into());
    WeightedDigraph::from_arrows(n, (0..n).map(|i| (i, (i + 1) % n, one.clone())))
        .expect("directed cycle is well formed")
}

pub fn complete_graph(n: usize) -> WeightedDigraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    digraph_of_graph(n, &edges).expect("complete graph is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};

    fn from_adj(rows: &[[i64; 3]]) -> WeightedDigraph {
        WeightedDigraph::from_adjacency(&RationalMatrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn driven_pair_matrices() {
        // cell 2 listens to cell 1 and to itself
        let g = WeightedDigraph::from_arrows(2, [(0, 1, int(1)), (1, 1, int(1))]).unwrap();
        assert_eq!(g.adjacency_matrix(), RationalMatrix::from_ints(&[[0, 0], [1, 1]]));
        assert_eq!(g.laplacian_matrix(), RationalMatrix::from_ints(&[[0, 0], [-1, 1]]));
    }

    #[test]
    fn arrowless_matrices_are_zero() {
        let g = WeightedDigraph::new(2);
        assert!(g.adjacency_matrix().is_zero());
        assert!(g.laplacian_matrix().is_zero());
    }

    #[test]
    fn bidirectional_pair_laplacian() {
        let g = digraph_of_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(g.laplacian_matrix(), RationalMatrix::from_ints(&[[1, -1], [-1, 1]]));
    }

    #[test]
    fn adjacency_round_trip() {
        let a = RationalMatrix::from_ints(&[[0, 1, 1], [2, 0, 2], [1, 2, 0]]);
        let g = WeightedDigraph::from_adjacency(&a).unwrap();
        assert_eq!(g.weight(0, 1), Some(&int(2)));
        assert_eq!(g.adjacency_matrix(), a);
    }

    #[test]
    fn imbalance_values() {
        let g = from_adj(&[[1, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(g.imbalances(), vec![int(1), int(0), int(-1)]);
        assert_eq!(g.imbalance(2).unwrap(), int(-1));
        assert!(matches!(g.imbalance(3), Err(GraphError::VertexOutOfRange { .. })));

        let balanced = from_adj(&[[0, 0, 2], [1, 0, 0], [1, 1, 0]]);
        assert!(balanced.is_weight_balanced());
        assert!(complete_graph(4).is_weight_balanced());
    }

    #[test]
    fn connectivity() {
        let c3 = directed_cycle(3);
        assert!(c3.is_strongly_connected());
        assert!(c3.is_weight_balanced());

        let split = digraph_of_graph(3, &[(1, 2)]).unwrap();
        assert!(!split.is_weakly_connected());

        let single = WeightedDigraph::new(1);
        assert!(single.is_strongly_connected());
        assert!(single.is_weight_balanced());

        let chain = from_adj(&[[1, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert!(chain.is_weakly_connected());
        assert!(!chain.is_strongly_connected());
    }

    #[test]
    fn rejects_bad_arrows() {
        let mut g = WeightedDigraph::new(2);
        g.add_arrow(0, 1, ratio(1, 2)).unwrap();
        assert_eq!(
            g.add_arrow(0, 1, int(3)),
            Err(GraphError::DuplicateArrow { tail: 0, head: 1 })
        );
        assert_eq!(g.add_arrow(1, 0, int(0)), Err(GraphError::ZeroWeight { tail: 1, head: 0 }));
        assert!(matches!(g.add_arrow(2, 0, int(1)), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn graph_builder() {
        let g = digraph_of_graph(3, &[(1, 2)]).unwrap();
        assert_eq!(g.arrow_count(), 2);
        assert_eq!(g.laplacian_matrix(), RationalMatrix::from_ints(&[[0, 0, 0], [0, 1, -1], [0, -1, 1]]));
        assert_eq!(complete_graph(3).arrow_count(), 6);
        assert_eq!(digraph_of_graph(3, &[]).unwrap().arrow_count(), 0);
        assert_eq!(digraph_of_graph(3, &[(1, 1)]), Err(GraphError::MalformedEdge(1, 1)));
        assert_eq!(digraph_of_graph(3, &[(0, 1), (1, 0)]), Err(GraphError::MalformedEdge(1, 0)));
    }

    #[test]
    fn equal_in_degrees_make_a_plus_l_scalar() {
        let g = directed_cycle(5);
        let sum = g.adjacency_matrix().add(&g.laplacian_matrix()).unwrap();
        assert_eq!(sum, RationalMatrix::identity(5));
    }
}
