use std::collections::BTreeSet;

use proptest::prelude::*;
use schurforge::arith::binomial;
use schurforge::partition::{enumerate_in_rect, partitions_of, Partition, Rectangle};

fn rect(rows: u32, cols: u32) -> Rectangle {
    Rectangle::new(rows, cols).unwrap()
}

#[test]
fn enumeration_counts_and_uniqueness() {
    for rows in 1..=8 {
        for cols in 1..=8 {
            let r = rect(rows, cols);
            let all = enumerate_in_rect(r);
            assert_eq!(
                num_bigint::BigInt::from(all.len()),
                binomial(u64::from(rows + cols), u64::from(rows))
            );
            assert!(all.iter().all(|p| p.fits(r)));
            let distinct: BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn involutions_in_small_rectangles() {
    for rows in 1..=5 {
        for cols in 1..=5 {
            let r = rect(rows, cols);
            for p in enumerate_in_rect(r) {
                assert_eq!(p.transpose().transpose(), p);
                assert_eq!(p.complement(r).unwrap().complement(r).unwrap(), p);
                let one_way = p.complement(r).unwrap().transpose();
                let other_way = p.transpose().complement(r.transposed()).unwrap();
                assert_eq!(one_way, other_way, "{p} in {r}");
                assert_eq!(p.transpose_complement(r).unwrap(), one_way);
                assert_eq!(p.weight() + p.complement(r).unwrap().weight(), r.area());
            }
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=12).map(|n| partitions_of(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..8, 0..8).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn text_round_trip(p in arb_partition()) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn transpose_preserves_weight_and_reverses_dominance(a in arb_partition(), b in arb_partition()) {
        prop_assert_eq!(a.transpose().weight(), a.weight());
        if a.weight() == b.weight() {
            prop_assert_eq!(a.dominates(&b).unwrap(), b.transpose().dominates(&a.transpose()).unwrap());
        }
    }

    #[test]
    fn union_is_sorted_concatenation(a in arb_partition(), b in arb_partition()) {
        let u = a.union(&b);
        prop_assert_eq!(u.weight(), a.weight() + b.weight());
        prop_assert_eq!(u.len(), a.len() + b.len());
        prop_assert_eq!(u, b.union(&a));
    }
}
