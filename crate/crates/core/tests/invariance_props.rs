
use std::collections::BTreeSet;

use polydiag::{catalog, sampling};
use polydiag::graph::{automorphisms, complete_graph, WeightedDigraph};
use polydiag::invariance::{
    check_evenly_tagged, check_main_lemma, check_perron, invariant_polydiagonals, perron_power_iteration,
    InvarianceChecker, SubspaceLattice,
};
use polydiag::linalg::{int, ratio, RationalMatrix, RationalVector};
use polydiag::partitions::{enumerate_tagged_partitions, TaggedPartition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent invariance oracle: `M b` must satisfy the defining equations
/// `x_i = x_j`, `x_i = -x_j` and `x_i = 0` for every basis vector `b`.
fn oracle(m: &RationalMatrix, p: &TaggedPartition) -> bool {
    let classes = p.classes();
    p.basis().iter().all(|b| {
        let y = m.mul_vec(b).unwrap();
        classes.iter().enumerate().all(|(c, members)| {
            let rep = &y[members[0]];
            let same = members.iter().all(|&i| &y[i] == rep);
            let partner_ok = match p.partner(c) {
                Some(d) if d == c => rep == &int(0),
                Some(d) => classes[d].iter().all(|&i| y[i] == -rep.clone()),
                None => true,
            };
            same && partner_ok
        })
    })
}

fn small_matrix(max_n: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_map(|rows| RationalMatrix::from_ints(&rows))
    })
}

/// Mostly structured matrices (so that many subspaces are invariant) with
/// some fractional entries to exercise the rational path.
fn structured_matrix(max_n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop_oneof![
        small_matrix(max_n),
        (2..=max_n, 1i64..4, 1i64..4).prop_map(|(n, s, t)| {
            let mut m = RationalMatrix::zeros(n, n);
            for i in 0..n {
                m.set(i, (i + 1) % n, ratio(s, t));
                m.set((i + 1) % n, i, int(s));
            }
            m
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_set_is_sound_and_complete(m in structured_matrix(5)) {
        let n = m.rows();
        let set = invariant_polydiagonals(&m).unwrap();
        let found: BTreeSet<TaggedPartition> = set.partitions().cloned().collect();
        let checker = InvarianceChecker::new(&m).unwrap();
        for p in enumerate_tagged_partitions(n, None) {
            let expected = oracle(&m, &p);
            prop_assert_eq!(found.contains(&p), expected, "{}", p);
            prop_assert_eq!(checker.is_invariant_rational(&p).unwrap(), expected);
        }
        prop_assert!(found.contains(&TaggedPartition::discrete(n)));
        prop_assert!(found.contains(&TaggedPartition::trivial(n)));
    }

    #[test]
    fn lattice_meets_and_joins(m in structured_matrix(4)) {
        let lattice = SubspaceLattice::build(invariant_polydiagonals(&m).unwrap());
        let n = m.rows();
        let parts: Vec<TaggedPartition> = lattice.set.partitions().cloned().collect();
        let dim_sum = |i: usize, j: usize| {
            let mut rows = parts[i].basis();
            rows.extend(parts[j].basis());
            RationalMatrix::from_row_vectors(&rows, n).unwrap().rank()
        };
        for i in 0..parts.len() {
            for j in 0..parts.len() {
                let meet = lattice.intersection(i, j);
                prop_assert!(meet.is_some());
                let meet = meet.unwrap();
                // the intersection of invariant polydiagonals is one of them
                prop_assert_eq!(
                    parts[meet].dimension(),
                    parts[i].dimension() + parts[j].dimension() - dim_sum(i, j)
                );
                let join = lattice.span(i, j);
                prop_assert!(join.is_some());
                let join = join.unwrap();
                prop_assert!(lattice.is_contained(i, join) && lattice.is_contained(j, join));
                prop_assert!(parts[join].dimension() >= dim_sum(i, j));
            }
        }
    }
}

/// Rank `n - 1` integer matrix: the last column is a combination of the others.
fn corank_one<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    loop {
        let mut b = RationalMatrix::zeros(n, n);
        let coeffs: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
        for i in 0..n {
            let mut last = 0;
            for (j, c) in coeffs.iter().enumerate() {
                let v = rng.gen_range(-3..=3);
                b.set(i, j, int(v));
                last += c * v;
            }
            b.set(i, n - 1, int(last));
        }
        if b.rank() == n - 1 {
            return b;
        }
    }
}

#[test]
fn main_lemma_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let n = rng.gen_range(2..=5);
        let lambda = rng.gen_range(-3..=3);
        let m = corank_one(&mut rng, n).add(&RationalMatrix::identity(n).scaled(&int(lambda))).unwrap();
        let report = check_main_lemma(&m, &int(lambda)).unwrap();
        assert!(report.all_hold(), "{m:?}: {:?}", report.violations());
    }
}

#[test]
fn weight_balanced_laplacians_with_simple_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tested = 0;
    while tested < 100 {
        let n = rng.gen_range(2..=6);
        let a = sampling::random_balanced_adjacency(&mut rng, n);
        let g = WeightedDigraph::from_adjacency(&a).unwrap();
        assert!(g.is_weight_balanced());
        let l = g.laplacian_matrix();
        if l.rank() != n - 1 {
            continue;
        }
        let report = check_evenly_tagged(&l).unwrap();
        assert!(report.passed(), "{l:?}: {:?}", report.violations);
        tested += 1;
    }
}

#[test]
fn connected_graph_laplacians() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = sampling::random_connected_graph(&mut rng, n, 0.5);
        assert!(check_evenly_tagged(&g.laplacian_matrix()).unwrap().passed());
    }
}

#[test]
fn complete_graph_invariants_are_synchrony_or_evenly_tagged() {
    for n in 1..=5 {
        let l = complete_graph(n).laplacian_matrix();
        let set = invariant_polydiagonals(&l).unwrap();
        let want: Vec<TaggedPartition> = enumerate_tagged_partitions(n, None)
            .filter(|p| {
                let c = p.classify();
                c.synchrony || c.evenly_tagged
            })
            .collect();
        assert_eq!(set.partitions().cloned().collect::<Vec<_>>(), want, "n = {n}");
    }
}

#[test]
fn perron_vectors_of_regular_digraphs() {
    // sums of d derangement matrices have in-degree d, so Perron value d
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut tested = 0;
    while tested < 40 {
        let n = rng.gen_range(3..=6);
        let d = rng.gen_range(1..=2);
        let mut a = RationalMatrix::zeros(n, n);
        let mut ok = true;
        for _ in 0..d {
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            for (i, &j) in perm.iter().enumerate() {
                ok &= i != j && a.get(i, j) == &int(0);
                a.set(i, j, int(1));
            }
        }
        let g = WeightedDigraph::from_adjacency(&a).unwrap();
        if !ok || !g.is_strongly_connected() {
            continue;
        }
        let report = check_perron(&a, &int(d)).unwrap();
        assert!(report.passed(), "{a:?}: {report:?}");
        let est = perron_power_iteration(&a, 1e-12, 1_000_000).unwrap();
        assert!((est.lambda - d as f64).abs() < 1e-6);
        tested += 1;
    }
}

#[test]
fn perron_example_vectors() {
    let report = check_perron(&catalog::perron_example(), &int(2)).unwrap();
    assert!(report.passed());
    assert_eq!(report.left_eigenvector, RationalVector::from_ints(&[1, 2, 1]).to_string());
}

#[test]
fn equal_in_degrees_give_equal_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let (s, t) = (rng.gen_range(1..=3), rng.gen_range(-3..=3));
        if t == 0 {
            continue;
        }
        for g in [catalog::d3_cayley(int(s), int(t)), catalog::z7_cayley(int(s), int(t))] {
            let a = invariant_polydiagonals(&g.adjacency_matrix()).unwrap();
            let l = invariant_polydiagonals(&g.laplacian_matrix()).unwrap();
            assert_eq!(a.typical_elements(), l.typical_elements());
        }
    }
}

#[test]
fn odd_cell_count_forces_a_zero_cell() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let n = [3, 5][rng.gen_range(0..2)];
        let (_, report, _) = sampling::matrix_meeting_hypotheses(&mut rng, n, 3).expect("small square matrix");
        for row in report.rows.iter().filter(|r| !r.synchrony) {
            let p = TaggedPartition::parse_typical_element(&row.typical).unwrap();
            assert!(p.fixed_class().is_some(), "{}", row.typical);
        }
    }
}

#[test]
fn dirichlet_matrix_laplacian_lattice() {
    let g = WeightedDigraph::from_adjacency(&catalog::lap_dirichlet()).unwrap();
    assert!(g.is_weight_balanced());
    let a: BTreeSet<String> = invariant_polydiagonals(&g.adjacency_matrix()).unwrap().typical_elements().into_iter().collect();
    let l: BTreeSet<String> = invariant_polydiagonals(&g.laplacian_matrix()).unwrap().typical_elements().into_iter().collect();
    let removed: Vec<_> = a.difference(&l).collect();
    let added: Vec<_> = l.difference(&a).collect();
    assert_eq!(removed, vec!["(a,-a,a)"]);
    assert_eq!(added, vec!["(a,a,a)"]);
    assert!(check_evenly_tagged(&g.laplacian_matrix()).unwrap().passed());
}

#[test]
fn z7_cayley_lattices() {
    let equal = catalog::z7_cayley(int(1), int(1));
    let set = invariant_polydiagonals(&equal.adjacency_matrix()).unwrap();
    let reflected = TaggedPartition::parse_typical_element("(a,b,c,0,-c,-b,-a)").unwrap();
    assert!(set.position(&reflected).is_some());
    for g in [equal, catalog::z7_cayley(int(1), int(2))] {
        let set = invariant_polydiagonals(&g.adjacency_matrix()).unwrap();
        for e in set.entries.iter().filter(|e| e.class.anti_synchrony) {
            assert!(e.class.evenly_tagged && e.partition.fixed_class().is_some());
        }
        let autos = automorphisms(&g).unwrap();
        assert!(polydiag::invariance::orbits(&set, &autos).is_ok());
    }
}

#[test]
fn zero_column_sums_example() {
    let m = catalog::zero_column_sums();
    let report = polydiag::invariance::check_constant_column_sums_theorem(&m).unwrap();
    // v = (0, 1, -1) has opposing entries, so only the weaker disjunction applies
    assert!(!report.hypotheses_met());
    let lemma = check_main_lemma(&m, &int(0)).unwrap();
    assert!(lemma.all_hold());
    let both = lemma.rows.iter().find(|r| r.typical == "(0,a,-a)").unwrap();
    assert!(both.right_in_subspace && both.left_orthogonal);
}

#[test]
fn directed_three_cycle() {
    let set = invariant_polydiagonals(&catalog::directed_c3()).unwrap();
    assert_eq!(set.typical_elements(), vec!["(a,a,a)", "(0,0,0)", "(a,b,c)"]);
}
