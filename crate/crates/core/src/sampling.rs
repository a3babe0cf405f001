//! Seeded random inputs for the property suites.

use rand::Rng;

use crate::graph::{digraph_of_graph, WeightedDigraph};
use crate::invariance::{check_constant_column_sums_theorem, ColumnSumsReport, InvarianceError};
use crate::linalg::{int, RationalMatrix};

/// Random connected graph on `n` vertices: a random spanning tree plus each
/// remaining edge with probability `density`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.contains(&(i, j)) && rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    digraph_of_graph(n, &edges).expect("edges are distinct and loop free")
}

/// Sum of one to four directed cycles on random vertex sequences with
/// weights in `{-2,-1,1,2,3}`; weight-balanced by construction. Returns the
/// adjacency matrix, since overlapping cycles can cancel arrows.
pub fn random_balanced_adjacency<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(n, n);
    if n < 2 {
        return a;
    }
    for _ in 0..rng.gen_range(1..=4) {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        order.truncate(rng.gen_range(2..=n));
        let w = [-2, -1, 1, 2, 3][rng.gen_range(0..5)];
        for k in 0..order.len() {
            let (tail, head) = (order[k], order[(k + 1) % order.len()]);
            let cur = a.get(head, tail).clone();
            a.set(head, tail, cur + int(w));
        }
    }
    a
}

/// Random integer `n × n` matrix with every column summing to the same
/// value; entries outside the last row are uniform in `[-bound, bound]`.
pub fn random_column_sum_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RationalMatrix {
    let c = rng.gen_range(-bound..=bound);
    let mut m = RationalMatrix::zeros(n, n);
    for j in 0..n {
        let mut total = 0;
        for i in 0..n.saturating_sub(1) {
            let v = rng.gen_range(-bound..=bound);
            m.set(i, j, int(v));
            total += v;
        }
        if n > 0 {
            m.set(n - 1, j, int(c - total));
        }
    }
    m
}

/// Draws matrices until one meets the hypotheses of the constant column sum
/// statement; returns it with its report and the number of draws.
pub fn matrix_meeting_hypotheses<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: i64,
) -> Result<(RationalMatrix, ColumnSumsReport, usize), InvarianceError> {
    let mut draws = 0;
    loop {
        draws += 1;
        let m = random_column_sum_matrix(rng, n, bound);
        let report = check_constant_column_sums_theorem(&m)?;
        if report.hypotheses_met() {
            return Ok((m, report, draws));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..8 {
            assert!(random_connected_graph(&mut rng, n, 0.3).is_weakly_connected());
        }
    }

    #[test]
    fn cycle_sums_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..7 {
            let a = random_balanced_adjacency(&mut rng, n);
            assert_eq!(a.row_sums(), a.col_sums());
        }
    }

    #[test]
    fn column_sums_are_equal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_column_sum_matrix(&mut rng, 5, 3);
        let sums = m.col_sums();
        assert!(sums.iter().all(|s| *s == sums[0]));
        let (_, report, draws) = matrix_meeting_hypotheses(&mut rng, 4, 3).unwrap();
        assert!(report.hypotheses_met() && draws >= 1);
    }
}
