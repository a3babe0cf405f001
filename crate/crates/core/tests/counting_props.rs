use num_bigint::BigInt;
use polydiag::counting::{egf, egf_count, recurrence_count, CountingError, RationalSeries};
use polydiag::partitions::SubspaceKind;
use proptest::prelude::*;

const ORDER: usize = 12;

fn times_exp_x(s: &RationalSeries) -> RationalSeries {
    s.mul(&RationalSeries::exp_linear(ORDER, 1)).unwrap()
}

#[test]
fn product_identities() {
    use SubspaceKind::*;
    assert_eq!(times_exp_x(&egf(FreelyEvenly, ORDER)), egf(Evenly, ORDER));
    assert_eq!(times_exp_x(&egf(FreelyFully, ORDER)), egf(Fully, ORDER));
    assert_eq!(egf(Synchrony, ORDER).mul(&egf(Fully, ORDER)).unwrap(), egf(Polydiagonal, ORDER));
}

/// Bell numbers from the Bell triangle.
fn bell(max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    let mut row = vec![BigInt::from(1)];
    for _ in 0..max {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

#[test]
fn bell_rows() {
    let b = bell(ORDER + 1);
    for n in 0..=ORDER {
        assert_eq!(egf_count(SubspaceKind::Synchrony, n), b[n]);
        assert_eq!(egf_count(SubspaceKind::Minimally, n), &b[n + 1] - &b[n]);
    }
}

/// Counts per kind by a direct recursive construction: every set partition
/// (built cell by cell) times every partial involution on its classes with
/// at most one fixed point.
fn brute_counts(n: usize) -> [u64; 8] {
    fn partitions(n: usize, i: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(blocks.iter().map(Vec::len).collect());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            partitions(n, i + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        partitions(n, i + 1, blocks, out);
        blocks.pop();
    }
    // (tagged, fixed, pairs) for each partial involution
    fn involutions(k: usize, i: usize, seen: &mut Vec<bool>, fixed: bool, state: &mut Vec<(usize, usize)>, sizes: &[usize], acc: &mut Vec<(usize, bool, bool)>) {
        if i == k {
            let tagged = seen.iter().filter(|s| **s).count();
            let balanced = state.iter().all(|&(a, b)| sizes[a] == sizes[b]);
            acc.push((tagged, fixed, balanced));
            return;
        }
        if seen[i] {
            return involutions(k, i + 1, seen, fixed, state, sizes, acc);
        }
        involutions(k, i + 1, seen, fixed, state, sizes, acc);
        seen[i] = true;
        if !fixed {
            involutions(k, i + 1, seen, true, state, sizes, acc);
        }
        for j in i + 1..k {
            if !seen[j] {
                seen[j] = true;
                state.push((i, j));
                involutions(k, i + 1, seen, fixed, state, sizes, acc);
                state.pop();
                seen[j] = false;
            }
        }
        seen[i] = false;
    }
    let mut parts = Vec::new();
    partitions(n, 0, &mut Vec::new(), &mut parts);
    let mut counts = [0u64; 8];
    for sizes in parts {
        let k = sizes.len();
        let mut acc = Vec::new();
        involutions(k, 0, &mut vec![false; k], false, &mut Vec::new(), &sizes, &mut acc);
        for (tagged, fixed, balanced) in acc {
            let fully = tagged == k;
            let evenly = fully && balanced;
            let flags = [
                true,
                tagged == 0,
                tagged > 0,
                tagged == 1,
                fully,
                evenly,
                evenly && !fixed,
                fully && !fixed,
            ];
            for (c, f) in counts.iter_mut().zip(flags) {
                *c += u64::from(f);
            }
        }
    }
    counts
}

#[test]
fn generating_functions_match_direct_counts() {
    use SubspaceKind::*;
    let kinds = [Polydiagonal, Synchrony, AntiSynchrony, Minimally, Fully, Evenly, FreelyEvenly, FreelyFully];
    for n in 0..=7 {
        let counts = brute_counts(n);
        for (kind, want) in kinds.iter().zip(counts) {
            assert_eq!(egf_count(*kind, n), BigInt::from(want), "{kind:?} n = {n}");
        }
    }
}

#[test]
fn recurrences_match_generating_functions() {
    for n in 0..=ORDER {
        for kind in SubspaceKind::ALL {
            match recurrence_count(kind, n) {
                Ok(v) => assert_eq!(v, egf_count(kind, n), "{kind:?} n = {n}"),
                Err(CountingError::NoRecurrence(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn figure_relations() {
    use SubspaceKind::*;
    for n in 0..=8 {
        assert!(egf_count(Evenly, n) <= egf_count(Fully, n));
        assert_eq!(egf_count(AntiSynchrony, n), egf_count(Polydiagonal, n) - egf_count(Synchrony, n));
    }
}

proptest! {
    #[test]
    fn exp_of_sum_is_product(a in -3i64..=3, b in -3i64..=3) {
        let lhs = RationalSeries::exp_linear(ORDER, a + b);
        let rhs = RationalSeries::exp_linear(ORDER, a).mul(&RationalSeries::exp_linear(ORDER, b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
