//! Small named networks used by tests, the acceptance suite and the CLI.

use crate::graph::{cayley_digraph, cyclic_group_table, dihedral_group_table, WeightedDigraph};
use crate::linalg::{Rational, RationalMatrix};

/// Symmetric tridiagonal matrix `[[3,-1,0],[-1,2,-1],[0,-1,3]]` with simple
/// eigenvalues 1, 3, 4.
pub fn lap_dirichlet() -> RationalMatrix {
    RationalMatrix::from_ints(&[[3, -1, 0], [-1, 2, -1], [0, -1, 3]])
}

/// Adjacency matrix with a defective eigenvalue 0 and a simple eigenvalue 1.
pub fn golub() -> RationalMatrix {
    RationalMatrix::from_ints(&[[1, 0, 0], [1, 0, 0], [0, 1, 0]])
}

/// Nonnegative irreducible matrix with Perron eigenvalue 2,
/// `v_R = (1,1,1)` and `v_L = (1,2,1)`.
pub fn perron_example() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 2, 0], [1, 0, 1], [0, 2, 0]])
}

/// Column sums 0; eigenvalue 0 is simple with eigenvector `(0,1,-1)`.
pub fn zero_column_sums() -> RationalMatrix {
    RationalMatrix::from_ints(&[[1, 0, 0], [-1, -1, -1], [0, 1, 1]])
}

/// The directed 3-cycle; column sums 1 with eigenvector `1`.
pub fn directed_c3() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]])
}

/// Column sums 3 with eigenvector `(5,8,7)`, whose entries are distinct.
pub fn distinct_eigenvector() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 1, 1], [2, 0, 2], [1, 2, 0]])
}

/// Laplacian of the graph on three vertices with the single edge `{2,3}`.
pub fn three_vertices_one_edge() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 0, 0], [0, 1, -1], [0, -1, 1]])
}

/// Weighted Cayley digraph of `D_3` on the reflections `σ` (weight `s`) and
/// `τ` (weight `t`).
pub fn d3_cayley(s: Rational, t: Rational) -> WeightedDigraph {
    let (table, sigma, tau) = dihedral_group_table(3);
    cayley_digraph(&table, &[(sigma, s), (tau, t)]).expect("σ and τ give distinct arrows")
}

/// Weighted Cayley digraph of `Z_7` on `σ` (weight `s`) and `σ⁻¹` (weight `t`).
pub fn z7_cayley(s: Rational, t: Rational) -> WeightedDigraph {
    cayley_digraph(&cyclic_group_table(7), &[(1, s), (6, t)]).expect("σ and σ⁻¹ give distinct arrows")
}

/// Two-cell network with arrows `1 -> 2` and `2 -> 2`, as an adjacency matrix.
pub fn two_cell_adjacency() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 0], [1, 1]])
}

/// Laplacian of [`two_cell_adjacency`].
pub fn two_cell_laplacian() -> RationalMatrix {
    RationalMatrix::from_ints(&[[0, 0], [-1, 1]])
}

/// Laplacian of the undirected edge on two cells.
pub fn two_cell_symmetric_laplacian() -> RationalMatrix {
    RationalMatrix::from_ints(&[[1, -1], [-1, 1]])
}

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: &[&str] = &[
    "lap-dirichlet",
    "golub",
    "perron",
    "zero-column-sums",
    "directed-c3",
    "distinct-eigenvector",
    "three-vertices-one-edge",
    "d3-cayley",
    "z7-cayley",
    "two-cell-adjacency",
    "two-cell-laplacian",
    "two-cell-symmetric-laplacian",
];

/// Looks up a named matrix. Cayley examples use equal unit weights.
pub fn example(name: &str) -> Option<RationalMatrix> {
    let one = || Rational::from_integer(1.into());
    let m = match name.trim().to_ascii_lowercase().replace('_', "-").as_str() {
        "lap-dirichlet" => lap_dirichlet(),
        "golub" => golub(),
        "perron" => perron_example(),
        "zero-column-sums" => zero_column_sums(),
        "directed-c3" => directed_c3(),
        "distinct-eigenvector" => distinct_eigenvector(),
        "three-vertices-one-edge" | "3v1e" => three_vertices_one_edge(),
        "d3-cayley" => d3_cayley(one(), one()).adjacency_matrix(),
        "z7-cayley" => z7_cayley(one(), one()).adjacency_matrix(),
        "two-cell-adjacency" => two_cell_adjacency(),
        "two-cell-laplacian" => two_cell_laplacian(),
        "two-cell-symmetric-laplacian" => two_cell_symmetric_laplacian(),
        _ => return None,
    };
    Some(m)
}
