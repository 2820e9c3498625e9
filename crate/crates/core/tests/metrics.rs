use proptest::prelude::*;
use rand::Rng;

use tightspan::metric::{
    check_directed_tree_metric, check_path_condition, check_tree_condition, congruence_witness,
    congruent_on_triples, cycle_length, four_point_violation, CyclicSequence,
};
use tightspan::random::{random_distance, random_metric, rng, EntryShape};
use tightspan::rational::{int, ratio, Rational};
use tightspan::treereal::{evaluate_realization, random_realization, RealizationKind};
use tightspan::{DirectedDistance, Error, GroundSet};

fn mat(rows: &[&[i64]]) -> DirectedDistance {
    DirectedDistance::with_default_labels(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
        .unwrap()
}

fn max_of<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    xs.into_iter().max().unwrap().clone()
}

/// Lexicographically first violating quadruple, by plain enumeration.
fn oracle_path(mu: &DirectedDistance) -> Option<[usize; 4]> {
    let n = mu.n();
    let m = |a, b| mu.get(a, b).clone();
    for s in 0..n {
        for t in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let cross = m(s, v) + m(t, u);
                    let rhs = max_of([&cross, mu.get(s, u), mu.get(s, v), mu.get(t, u), mu.get(t, v)]);
                    if m(s, u) + m(t, v) > rhs {
                        return Some([s, t, u, v]);
                    }
                }
            }
        }
    }
    None
}

/// Whether some 3×3 submatrix (repeats allowed) has a unique maximum
/// permutation sum, by listing all six permutations.
fn oracle_tree_violated(mu: &DirectedDistance) -> bool {
    let n = mu.n();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx: Vec<[usize; 3]> =
        (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c]))).collect();
    idx.iter().any(|rows| {
        idx.iter().any(|cols| {
            let sums: Vec<Rational> =
                perms.iter().map(|p| (0..3).map(|i| mu.get(rows[i], cols[p[i]]).clone()).sum()).collect();
            let best = sums.iter().max().unwrap();
            sums.iter().filter(|s| *s == best).count() == 1
        })
    })
}

#[test]
fn validation_examples() {
    assert!(DirectedDistance::with_default_labels(vec![vec![int(0)]]).is_ok());
    assert!(matches!(
        DirectedDistance::with_default_labels(vec![vec![int(1)]]),
        Err(Error::NonzeroDiagonal(0))
    ));
    assert!(matches!(
        DirectedDistance::with_default_labels(vec![vec![int(0), int(1)]]),
        Err(Error::NonSquare(_))
    ));
    assert!(matches!(
        DirectedDistance::new(vec!["a".into(), "a".into()], vec![vec![int(0); 2]; 2]),
        Err(Error::DuplicateLabel(_))
    ));
}

#[test]
fn metric_and_cycle_examples() {
    let one = mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
    let path = mat(&[&[0, 1, 2], &[0, 0, 1], &[0, 0, 0]]);
    assert!(one.is_metric());
    assert!(path.is_metric());
    assert!(!mat(&[&[0, 1, 3], &[0, 0, 1], &[0, 0, 0]]).is_metric());
    let abc = CyclicSequence::new(vec![0, 1, 2]).unwrap();
    assert_eq!(cycle_length(&one, &abc).unwrap(), int(3));
    assert_eq!(cycle_length(&path, &abc).unwrap(), int(2));
    assert_eq!(cycle_length(&path, &CyclicSequence::new(vec![0]).unwrap()).unwrap(), int(0));
    assert!(matches!(
        cycle_length(&path, &CyclicSequence::new(vec![0, 5]).unwrap()),
        Err(Error::IndexOutOfRange { .. })
    ));
}

#[test]
fn congruence_examples() {
    let one = mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
    assert_eq!(congruence_witness(&one, &one).unwrap().unwrap().values, vec![int(0); 3]);
    assert_eq!(congruence_witness(&one, &DirectedDistance::zero(3)).unwrap(), None);
    let two = DirectedDistance::zero(2);
    assert_eq!(congruence_witness(&one, &two), Err(Error::GroundSetMismatch));
}

#[test]
fn condition_examples() {
    let one = mat(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
    assert!(check_path_condition(&DirectedDistance::zero(3)).holds);
    assert!(!check_path_condition(&one).holds);
    assert_eq!(check_path_condition(&one).witness, oracle_path(&one));
    let line = mat(&[&[0, 1, 3], &[0, 0, 2], &[0, 0, 0]]);
    assert!(check_path_condition(&line).holds);
    assert!(check_tree_condition(&one).holds);
    assert!(check_tree_condition(&DirectedDistance::zero(3)).holds);
    let spike = mat(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]);
    assert_eq!(check_tree_condition(&spike).holds, !oracle_tree_violated(&spike));
    assert!(check_directed_tree_metric(&one).unwrap());
    assert!(check_directed_tree_metric(&mat(&[&[0, 1, 2], &[0, 0, 1], &[0, 0, 0]])).unwrap());
    let c4 = mat(&[&[0, 1, 2, 1], &[1, 0, 1, 2], &[2, 1, 0, 1], &[1, 2, 1, 0]]);
    assert!(!check_directed_tree_metric(&c4).unwrap());
    assert!(four_point_violation(&c4.symmetrization()).is_some());
    assert!(matches!(check_directed_tree_metric(&spike), Err(Error::NotAMetric(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cycle_lengths_are_nonnegative_and_rotation_invariant(seed in any::<u64>(), n in 1usize..6, len in 1usize..7) {
        let mut r = rng(seed);
        let d = random_distance(&mut r, n, &EntryShape::default());
        let pts: Vec<usize> = (0..len).map(|_| r.gen_range(0..n)).collect();
        let base = cycle_length(&d, &CyclicSequence::new(pts.clone()).unwrap()).unwrap();
        prop_assert!(base >= int(0));
        for k in 0..len {
            let rot: Vec<usize> = pts[k..].iter().chain(&pts[..k]).copied().collect();
            prop_assert_eq!(&cycle_length(&d, &CyclicSequence::new(rot).unwrap()).unwrap(), &base);
        }
    }

    #[test]
    fn potentials_give_congruent_metrics(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let d2 = random_distance(&mut r, n, &EntryShape::default());
        let alpha: Vec<Rational> = (0..n).map(|_| ratio(r.gen_range(-3..=3), r.gen_range(1..=2))).collect();
        // shift entries up so the congruent copy stays nonnegative
        let lift = int(8);
        let lifted = DirectedDistance::from_fn(d2.ground().clone(), |x, y| {
            if x == y { int(0) } else { d2.get(x, y) + &lift }
        }).unwrap();
        let d = DirectedDistance::from_fn(d2.ground().clone(), |x, y| lifted.get(x, y) - &alpha[x] + &alpha[y]).unwrap();
        let w = congruence_witness(&d, &lifted).unwrap().expect("congruent by construction");
        for x in 0..n {
            prop_assert_eq!(&w.values[x], &(&alpha[x] - &alpha[0]));
        }
        prop_assert!(congruent_on_triples(&d, &lifted).unwrap());
        for _ in 0..20 {
            let len = r.gen_range(1..=6);
            let c = CyclicSequence::new((0..len).map(|_| r.gen_range(0..n)).collect()).unwrap();
            prop_assert_eq!(cycle_length(&d, &c).unwrap(), cycle_length(&lifted, &c).unwrap());
        }
    }

    #[test]
    fn witness_and_triples_agree(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let shape = EntryShape { max_num: 2, max_den: 1, zero_prob: 0.3 };
        let a = random_distance(&mut r, n, &shape);
        let b = if seed % 3 == 0 { a.transpose() } else { random_distance(&mut r, n, &shape) };
        prop_assert_eq!(congruence_witness(&a, &b).unwrap().is_some(), congruent_on_triples(&a, &b).unwrap());
    }

    #[test]
    fn conditions_match_oracles(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let shape = EntryShape { max_num: 3, max_den: 1, zero_prob: 0.3 };
        let mu = random_distance(&mut r, n, &shape);
        let p = check_path_condition(&mu);
        prop_assert_eq!(p.witness, oracle_path(&mu));
        prop_assert_eq!(p.holds, p.witness.is_none());
        prop_assert_eq!(check_tree_condition(&mu).holds, !oracle_tree_violated(&mu));
    }

    #[test]
    fn directed_tree_metric_test_matches_tree_condition(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let mu = random_metric(&mut r, n, &EntryShape::default());
        prop_assert_eq!(check_directed_tree_metric(&mu).unwrap(), check_tree_condition(&mu).holds);
        let tree = evaluate_realization(&random_realization(RealizationKind::Singleton, n, seed).unwrap()).unwrap();
        prop_assert!(check_directed_tree_metric(&tree).unwrap());
        prop_assert!(check_tree_condition(&tree).holds);
    }
}

#[test]
fn default_labels_are_letters() {
    assert_eq!(GroundSet::default_labels(3).labels(), ["a", "b", "c"]);
}
