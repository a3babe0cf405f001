use polydiag::linalg::{int, nullspace, rref, span_contains, RationalMatrix, RationalVector};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
            .prop_map(|rows| RationalMatrix::from_ints(&rows))
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(5, 5)) {
        let (r, rank) = rref(&m);
        let (rr, rank2) = rref(&r);
        prop_assert_eq!(rr, r);
        prop_assert_eq!(rank, rank2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated(m in matrix(5, 6)) {
        for b in nullspace(&m) {
            prop_assert!(m.mul_vec(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        prop_assert_eq!(m.rank() + nullspace(&m).len(), m.cols());
    }

    #[test]
    fn span_contains_matches_rank_test(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=5),
        v in prop::collection::vec(-3i64..=3, 5),
        in_span in any::<bool>(),
        coeffs in prop::collection::vec(-2i64..=2, 5),
    ) {
        let basis: Vec<RationalVector> = rows.iter().map(|r| RationalVector::from_ints(r)).collect();
        // half the cases use a combination of the basis so both answers occur
        let v = if in_span {
            let mut acc = RationalVector::zeros(5);
            for (b, c) in basis.iter().zip(&coeffs) {
                let scaled = b.scaled(&int(*c));
                acc = RationalVector::new(acc.iter().zip(scaled.iter()).map(|(x, y)| x + y).collect());
            }
            acc
        } else {
            RationalVector::from_ints(&v)
        };
        let b_rank = RationalMatrix::from_row_vectors(&basis, 5).unwrap().rank();
        let mut stacked = basis.clone();
        stacked.push(v.clone());
        let bv_rank = RationalMatrix::from_row_vectors(&stacked, 5).unwrap().rank();
        prop_assert_eq!(span_contains(&basis, &v).unwrap(), b_rank == bv_rank);
        if in_span {
            prop_assert!(span_contains(&basis, &v).unwrap());
        }
    }
}

#[test]
fn nullspace_uses_free_variables_in_order() {
    let m = RationalMatrix::from_ints(&[[1, 1, 0, 0]]);
    let basis = nullspace(&m);
    assert_eq!(basis, vec![
        RationalVector::from_ints(&[-1, 1, 0, 0]),
        RationalVector::from_ints(&[0, 0, 1, 0]),
        RationalVector::from_ints(&[0, 0, 0, 1]),
    ]);
}
