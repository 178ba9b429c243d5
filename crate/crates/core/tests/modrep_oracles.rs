use spinmod::gf2::meataxe::{chop, iso};
use spinmod::gf2::{GroupTag, Rep, RepLabel, Sign};
use spinmod::modrep::*;
use spinmod::partition::{beta, benson_split, enumerate, FamilyKind, Partition, PartitionFamily};

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn label(s: &str) -> RepLabel {
    RepLabel { partition: part(s), sign: None }
}

#[test]
fn specht_dimension_is_hook_number() {
    for n in 1..=9 {
        for lambda in enumerate(PartitionFamily::new(FamilyKind::All, n)) {
            assert_eq!(specht(&lambda).dim() as u128, lambda.hook_dimension(), "{lambda}");
        }
    }
}

#[test]
fn simple_modules_of_s5() {
    let lib = all_irreducibles(5).unwrap();
    let dims: Vec<(String, usize)> = lib.iter().map(|(l, d)| (l.to_string(), d.rep.degree())).collect();
    assert_eq!(dims, vec![("(3,2)".into(), 4), ("(4,1)".into(), 4), ("(5)".into(), 1)]);
}

#[test]
fn basic_spin_degree() {
    for n in 2..=9 {
        let d = irreducible_head(&beta(n)).unwrap();
        assert_eq!(d.rep.degree(), 1 << ((n - 1) / 2), "n = {n}");
    }
}

#[test]
fn alternating_labels_small() {
    let a5 = alt_irreducibles(5, 1).unwrap();
    let plus = RepLabel { partition: part("3,2"), sign: Some(Sign::Plus) };
    let minus = RepLabel { partition: part("3,2"), sign: Some(Sign::Minus) };
    for l in [&plus, &minus] {
        let e = a5.iter().find(|e| &e.label == l).unwrap();
        assert_eq!(e.field_dim(), 2);
    }
    let a4 = alt_irreducibles(4, 1).unwrap();
    let halves: Vec<_> = a4.iter().filter(|e| e.label.partition == part("3,1")).collect();
    assert_eq!(halves.len(), 2);
    assert!(halves.iter().all(|e| e.field_dim() == 1 && e.split != Split::NonSplit));
}

#[test]
fn splitting_agrees_with_criterion() {
    // alt_irreducibles aborts on any disagreement
    for n in 2..=9 {
        let list = alt_irreducibles(n, 1).unwrap();
        for lambda in enumerate(PartitionFamily::new(FamilyKind::TwoRegular, n)) {
            let k = list.iter().filter(|e| e.label.partition == lambda).count();
            assert_eq!(k == 2, benson_split(&lambda).unwrap(), "{lambda}");
        }
    }
}

#[test]
fn natural_permutation_module_factors() {
    let lib = all_irreducibles(5).unwrap();
    let m = perm_module(5, &part("4,1")).unwrap();
    let f = comp_factors(&m, lib.values(), 1).unwrap();
    assert_eq!(f, FactorMultiset::from_counts([(label("5"), 1), (label("4,1"), 1)]));
}

#[test]
fn unmatched_factor_aborts() {
    // a library missing D^(4,1) cannot label M^(4,1)
    let lib = all_irreducibles(5).unwrap();
    let partial: Vec<_> = lib.values().filter(|d| d.label != label("4,1")).collect();
    let m = perm_module(5, &part("4,1")).unwrap();
    assert!(matches!(comp_factors(&m, partial, 1), Err(spinmod::Error::UnmatchedFactor { dim: 4 })));
}

#[test]
fn branching_examples() {
    let lib2 = all_irreducibles(2).unwrap();
    let d = irreducible_head(&part("2,1")).unwrap();
    let b = branching_data(&part("2,1"), &d.rep, &lib2, 1).unwrap();
    assert_eq!(b.blocks.len(), 1);
    assert_eq!(b.multiplicity(1, &part("2")), 2);

    for n in 2..=6 {
        let prev = all_irreducibles(n - 1).unwrap();
        let d = irreducible_head(&Partition::row(n)).unwrap();
        let b = branching_data(&Partition::row(n), &d.rep, &prev, 1).unwrap();
        let total: usize = b.blocks.values().map(FactorMultiset::total).sum();
        assert_eq!(total, 1);
        assert_eq!(b.blocks.values().next().unwrap().get(&label(&(n - 1).to_string())), 1);
    }
}

#[test]
fn young_restriction_of_basic_spin() {
    // D^(3,2) on S_3 x S_2 is D^(2,1) tensored with the regular module of S_2
    let d = irreducible_head(&beta(5)).unwrap();
    let r = young_restrict(&d.rep, &[3, 2]).unwrap();
    assert_eq!(r.degree(), 4);
    let s4 = &r.gens()[2];
    let nil = s4.add_identity();
    assert!(!nil.is_zero());
    assert!(nil.mul(&nil).unwrap().is_zero());
    let factors = chop(&r, 1).unwrap();
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|f| f.degree() == 2));
    assert!(iso(&factors[0], &factors[1], 1).unwrap());

    let t = Rep::trivial(GroupTag::Sym(4));
    assert_eq!(young_restrict(&t, &[2, 2]).unwrap().degree(), 1);
}
