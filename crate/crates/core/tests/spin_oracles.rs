//! Spin character values checked against oracles that do not share code
//! with the path enumeration: column orthogonality over odd-part classes,
//! the hook-type degree formula, and brute-force 2-adic valuations.

use spinmod::partition::{enumerate, FamilyKind, Partition, PartitionFamily};
use spinmod::spin_chars::{
    lemma_cases, lemma_prediction, spin_char, spin_degree, spin_value, zeta_parity, LemmaCase,
};

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Size of the class of cycle type `alpha` in `S_n`.
fn class_size(alpha: &Partition) -> u128 {
    let mut z: u128 = 1;
    let mut i = 0;
    let parts = alpha.parts();
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let m = (j - i) as u32;
        z *= (parts[i] as u128).pow(m) * factorial(m as usize);
        i = j;
    }
    factorial(alpha.n()) / z
}

fn v2(x: i64) -> u32 {
    x.unsigned_abs().trailing_zeros()
}

#[test]
fn orthogonality_relations() {
    for n in 1..=10 {
        let labels = enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n));
        let classes = enumerate(PartitionFamily::new(FamilyKind::OddParts, n));
        let table: Vec<Vec<i128>> = labels
            .iter()
            .map(|l| classes.iter().map(|a| spin_char(l, a).unwrap() as i128).collect())
            .collect();
        for (i, li) in labels.iter().enumerate() {
            for (j, _) in labels.iter().enumerate() {
                let s: i128 = classes
                    .iter()
                    .enumerate()
                    .map(|(k, a)| table[i][k] * table[j][k] * class_size(a) as i128)
                    .sum();
                let expected = if i != j {
                    0
                } else if (n - li.h()) % 2 == 0 {
                    factorial(n) as i128
                } else {
                    factorial(n) as i128 / 2
                };
                assert_eq!(s, expected, "n={n} rows {i},{j}");
            }
        }
    }
}

#[test]
fn degree_matches_identity_class() {
    for n in 1..=12 {
        let ones = Partition::new(vec![1; n]).unwrap();
        for lambda in enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n)) {
            let v = spin_char(&lambda, &ones).unwrap();
            assert_eq!(v as u128, spin_degree(&lambda).unwrap(), "{lambda}");
        }
    }
    assert_eq!(spin_degree(&part("5")).unwrap(), 4);
    assert_eq!(spin_degree(&part("3,2")).unwrap(), 4);
    assert_eq!(spin_degree(&part("4,1")).unwrap(), 6);
}

#[test]
fn sample_values() {
    assert_eq!(spin_char(&part("3,2"), &part("5")).unwrap(), 1);
    assert_eq!(spin_char(&part("3,1"), &part("3,1")).unwrap(), -1);
    assert_eq!(spin_char(&part("4"), &part("3,1")).unwrap(), 1);
    assert_eq!(spin_char(&part("4"), &part("1,1,1,1")).unwrap(), 2);
}

#[test]
fn sign_free_data_agrees_with_values() {
    for n in 1..=12 {
        for lambda in enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n)) {
            for alpha in enumerate(PartitionFamily::new(FamilyKind::OddParts, n)) {
                let sv = spin_value(&lambda, &alpha, true).unwrap();
                let v = sv.value.unwrap();
                assert_eq!(sv.parity as i64, v.rem_euclid(2), "{lambda} {alpha}");
                match sv.valuation_lb {
                    None => assert_eq!(v, 0),
                    Some(lb) => assert!(v == 0 || v2(v) >= lb),
                }
            }
        }
    }
}

#[test]
fn lemma_predictions_hold() {
    let mut literal_misses = Vec::new();
    for n in 1..=13 {
        for case in lemma_cases(n) {
            let label = case.label();
            for alpha in enumerate(PartitionFamily::new(FamilyKind::OddParts, n)) {
                let pred = lemma_prediction(&case, &alpha).unwrap();
                let v = spin_char(&label, &alpha).unwrap();
                assert_eq!(pred.odd_refined, v % 2 != 0, "{case:?} at {alpha}: {v}");
                if pred.odd != pred.odd_refined {
                    literal_misses.push((label.clone(), alpha.clone()));
                }
                if let LemmaCase::TwoEvenParts { .. } = case {
                    if pred.four_divides == Some(true) {
                        assert_eq!(v % 4, 0, "{case:?} at {alpha}");
                    }
                    if pred.four_not_divides == Some(true) {
                        assert_ne!(v % 4, 0, "{case:?} at {alpha}");
                    }
                }
            }
        }
    }
    // the literal reading is wrong exactly on collisions, e.g. (6,1) at (5,1,1)
    assert!(literal_misses.contains(&(part("6,1"), part("5,1,1"))));
}

#[test]
fn literal_collision_counterexample_from_path_counts() {
    // two paths with a <= 1 reach (6,1) from the class (5,1,1)
    let paths = spinmod::spin_chars::enumerate_paths(&part("6,1"), &part("5,1,1")).unwrap();
    assert_eq!(paths.iter().filter(|p| p.a <= 1).count(), 2);
    assert_eq!(zeta_parity(&part("6,1"), &part("5,1,1")).unwrap(), 0);
}

#[test]
fn parity_agrees_for_large_weight() {
    let lambda = part("7,5,2");
    for alpha in enumerate(PartitionFamily::new(FamilyKind::OddParts, 14)).into_iter().take(40) {
        let v = spin_char(&lambda, &alpha).unwrap();
        assert_eq!(zeta_parity(&lambda, &alpha).unwrap() as i64, v.rem_euclid(2));
    }
}

#[test]
fn basic_spin_magnitudes() {
    for n in 2..=12 {
        let table = spinmod::spin_chars::basic_spin_tables(n);
        for (alpha, m) in &table.magnitudes {
            let v = spin_char(&Partition::row(n), alpha).unwrap();
            assert_eq!(v.unsigned_abs(), *m, "n={n} {alpha}");
            assert_eq!(*m, 1 << ((alpha.h() - 1) / 2));
        }
    }
}
