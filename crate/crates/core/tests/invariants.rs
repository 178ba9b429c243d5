use proptest::prelude::*;

use spinmod::crystal::{e_tilde, eps, f_tilde, phi, total_eps};
use spinmod::gf2::{charpoly, io, irreducible_factors, rank, BitMatrix, GroupTag, Poly, Rep};
use spinmod::partition::{dbl_partition, regularize, undouble, Partition};
use spinmod::perm::Perm;

fn partition(max_n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=max_n, 0..6).prop_map(|v| Partition::sort_to_partition(&v))
}

fn two_regular(max_n: usize) -> impl Strategy<Value = Partition> {
    partition(max_n).prop_map(|p| regularize(&p))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(prop::collection::vec(0u8..2, cols), rows)
        .prop_map(move |r| if rows == 0 { BitMatrix::zeros(0, cols) } else { BitMatrix::from_rows(&r).unwrap() })
}

fn square(max: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u8..2, 1..20).prop_map(|c| Poly::from_coeffs(&c))
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition(9)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().n(), p.n());
    }

    #[test]
    fn regularization_is_two_regular_and_dominating(p in partition(9)) {
        let r = regularize(&p);
        prop_assert!(r.is_two_regular());
        prop_assert_eq!(r.n(), p.n());
        prop_assert!(r.dominates(&p));
    }

    #[test]
    fn crystal_operators_are_inverse(p in two_regular(8), i in 0usize..2) {
        if let Some(q) = f_tilde(&p, i, 1, 2).unwrap() {
            prop_assert!(q.is_two_regular());
            prop_assert_eq!(q.n(), p.n() + 1);
            prop_assert_eq!(e_tilde(&q, i, 1, 2).unwrap(), Some(p.clone()));
            prop_assert_eq!(eps(&q, i, 2).unwrap(), eps(&p, i, 2).unwrap() + 1);
        } else {
            prop_assert_eq!(phi(&p, i, 2).unwrap(), 0);
        }
        if let Some(q) = e_tilde(&p, i, 1, 2).unwrap() {
            prop_assert_eq!(f_tilde(&q, i, 1, 2).unwrap(), Some(p.clone()));
        }
    }

    #[test]
    fn total_eps_counts_normal_nodes(p in two_regular(8)) {
        let e = total_eps(&p, 2).unwrap();
        prop_assert_eq!(e, eps(&p, 0, 2).unwrap() + eps(&p, 1, 2).unwrap());
        prop_assert_eq!(e == 0, p.is_empty());
    }

    #[test]
    fn doubling_round_trips(p in partition(9)) {
        let odd: Vec<usize> = p.parts().iter().map(|x| 2 * x - 1).collect();
        let mut distinct = odd.clone();
        distinct.dedup();
        let lam = Partition::sort_to_partition(&distinct);
        if let Ok(d) = dbl_partition(&lam) {
            prop_assert_eq!(d.n(), lam.n());
            prop_assert_eq!(undouble(&d), Some(lam));
        }
    }

    #[test]
    fn matrix_product_is_associative(
        (a, b, c) in (1usize..40, 1usize..40, 1usize..40, 1usize..40)
            .prop_flat_map(|(m, n, k, l)| (matrix(m, n), matrix(n, k), matrix(k, l)))
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_reverses_products(
        (a, b) in (1usize..70, 1usize..70, 1usize..70).prop_flat_map(|(m, n, k)| (matrix(m, n), matrix(n, k)))
    ) {
        let t = a.mul(&b).unwrap().transpose();
        prop_assert_eq!(t, b.transpose().mul(&a.transpose()).unwrap());
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn cayley_hamilton(a in square(24)) {
        prop_assert!(charpoly(&a).eval(&a).is_zero());
    }

    #[test]
    fn factors_multiply_back(f in poly()) {
        prop_assume!(f.degree().is_some_and(|d| d > 0));
        // distinct factors; dividing them out repeatedly leaves 1
        let factors = irreducible_factors(&f);
        let mut rest = f.clone();
        for g in &factors {
            prop_assert!(f.rem(g).is_zero());
            prop_assert_eq!(irreducible_factors(g), vec![g.clone()]);
            while rest.rem(g).is_zero() {
                rest = rest.divrem(g).0;
            }
        }
        prop_assert!(rest.is_one());
        let mut sorted = factors.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), factors.len());
    }

    #[test]
    fn division_identity(f in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), f);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn coxeter_words_rebuild_permutations(word in prop::collection::vec(0usize..6, 0..30)) {
        let n = 7;
        let p = word.iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::coxeter(n, i)));
        let q = p.coxeter_word().iter().fold(Perm::identity(n), |acc, &i| acc.compose(&Perm::coxeter(n, i)));
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(p.is_even(), word.len() % 2 == 0);
        prop_assert_eq!(p.compose(&p.inverse()), Perm::identity(n));
    }

    #[test]
    fn rep_files_round_trip(gens in prop::collection::vec(matrix(9, 9), 1..4)) {
        let k = gens.len();
        let rep = Rep::new(GroupTag::Sym(k + 1), 9, gens).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.rep");
        io::save(&path, &rep).unwrap();
        let back = io::load(&path).unwrap();
        prop_assert_eq!(back.gens(), rep.gens());
        prop_assert_eq!(back.degree(), 9);
    }
}
