mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qumbral::qcombinatorics::{
    binomial, compositions, qbinomial, qfactorial, qint, qmultinomial, qpochhammer_x_minus_1,
    qshifted_power,
};
use qumbral::{Composition, Error, QRat, XPoly};

#[test]
fn q_integers() {
    assert_eq!(qint(0), QRat::zero());
    assert_eq!(qint(1), QRat::one());
    assert_eq!(qint(3), qpoly(&[1, 1, 1]));
}

#[test]
fn q_factorials() {
    assert_eq!(qfactorial(0), QRat::one());
    assert_eq!(qfactorial(2), qpoly(&[1, 1]));
    let by_hand = &poly(&[1, 1]) * &poly(&[1, 1, 1]);
    assert_eq!(by_hand, poly(&[1, 2, 2, 1]));
    assert_eq!(qfactorial(3), QRat::from_poly(by_hand));
}

#[test]
fn gaussian_binomials() {
    assert_eq!(qbinomial(5, 0), QRat::one());
    assert_eq!(qbinomial(2, 1), qpoly(&[1, 1]));
    let ratio = &qfactorial(4) / &(&qfactorial(2) * &qfactorial(2));
    assert_eq!(ratio, qpoly(&[1, 1, 2, 1, 1]));
    assert_eq!(qbinomial(4, 2), ratio);
    assert_eq!(qbinomial(3, -1), QRat::zero());
    assert_eq!(qbinomial(3, 4), QRat::zero());
    assert!(qbinomial(9, 4).is_polynomial());
}

#[test]
fn q_multinomials() {
    assert_eq!(qmultinomial(4, &Composition::new(vec![4])).unwrap(), QRat::one());
    assert_eq!(qmultinomial(2, &Composition::new(vec![1, 1])).unwrap(), qpoly(&[1, 1]));
    assert_eq!(
        qmultinomial(3, &Composition::new(vec![1, 1, 1])).unwrap(),
        qpoly(&[1, 2, 2, 1])
    );
    assert!(matches!(
        qmultinomial(3, &Composition::new(vec![1, 1])),
        Err(Error::CompositionMismatch { .. })
    ));
}

#[test]
fn composition_listing() {
    let list = |n, j| compositions(n, j).map(|c| c.parts().to_vec()).collect::<Vec<_>>();
    assert_eq!(list(0, 3), vec![vec![0, 0, 0]]);
    assert_eq!(list(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    assert_eq!(list(0, 0), vec![Vec::<usize>::new()]);
    assert!(list(3, 0).is_empty());
    assert_eq!(compositions(5, 3).count(), 21);
}

#[test]
fn composition_counts_match_stars_and_bars() {
    for n in 0..8 {
        for j in 1..5 {
            let expected = binomial(n + j - 1, (j - 1) as i64);
            assert_eq!(BigInt::from(compositions(n, j).count()), expected, "n={n} j={j}");
        }
    }
}

#[test]
fn compositions_are_lexicographic_and_distinct() {
    for (n, j) in [(4, 3), (6, 2), (3, 4)] {
        let all: Vec<Composition> = compositions(n, j).collect();
        assert!(all.windows(2).all(|w| w[0].parts() < w[1].parts()));
        assert!(all.iter().all(|c| c.total() == n && c.arity() == j));
    }
}

#[test]
fn q_pochhammer_small_cases() {
    assert_eq!(qpochhammer_x_minus_1(0), XPoly::one());
    assert_eq!(
        qpochhammer_x_minus_1(1),
        XPoly::new(vec![QRat::from_int(-1), QRat::one()])
    );
    let by_hand = &XPoly::new(vec![QRat::from_int(-1), QRat::one()])
        * &XPoly::new(vec![-QRat::q(), QRat::one()]);
    assert_eq!(by_hand, XPoly::new(vec![QRat::q(), qpoly(&[-1, -1]), QRat::one()]));
    assert_eq!(qpochhammer_x_minus_1(2), by_hand);
}

#[test]
fn q_pochhammer_equals_iterated_product() {
    let mut product = XPoly::one();
    for n in 0..=10 {
        assert_eq!(qpochhammer_x_minus_1(n), product, "n={n}");
        product = &product * &XPoly::new(vec![-QRat::q_pow(n), QRat::one()]);
    }
}

#[test]
fn shifted_powers() {
    let a = frac(&[2, 1], &[1, 1]);
    assert_eq!(qshifted_power(&a, &QRat::q(), 0), QRat::one());
    assert_eq!(qshifted_power(&QRat::one(), &QRat::zero(), 5), QRat::one());
    assert_eq!(qshifted_power(&QRat::one(), &QRat::one(), 2), qpoly(&[2, 2]));
}

#[test]
fn classical_limits() {
    let one = BigRational::from_integer(1.into());
    for n in 0..=12usize {
        assert_eq!(qint(n).eval(&one).unwrap(), BigRational::from_integer(n.into()));
        for k in 0..=n as i64 {
            let at_one = qbinomial(n, k).eval(&one).unwrap();
            assert_eq!(at_one, BigRational::from_integer(binomial(n, k)), "n={n} k={k}");
        }
    }
}

#[test]
fn pascal_recurrence() {
    for n in 2..=12usize {
        for k in 1..n {
            let lhs = qbinomial(n, k as i64);
            let rhs = &qbinomial(n - 1, k as i64 - 1) + &(&QRat::q_pow(k) * &qbinomial(n - 1, k as i64));
            assert_eq!(lhs, rhs, "n={n} k={k}");
        }
    }
}

#[test]
fn two_part_multinomial_is_binomial() {
    for n in 0..=12usize {
        for k in 0..=n {
            let c = Composition::new(vec![k, n - k]);
            assert_eq!(qmultinomial(n, &c).unwrap(), qbinomial(n, k as i64));
        }
    }
}

proptest! {
    #[test]
    fn q_binomial_symmetry(n in 0usize..14, k in 0usize..14) {
        prop_assume!(k <= n);
        prop_assert_eq!(qbinomial(n, k as i64), qbinomial(n, (n - k) as i64));
    }

    #[test]
    fn multinomial_factors_through_binomials(a in 0usize..5, b in 0usize..5, c in 0usize..5) {
        let n = a + b + c;
        let m = qmultinomial(n, &Composition::new(vec![a, b, c])).unwrap();
        let chained = &qbinomial(n, a as i64) * &qbinomial(b + c, b as i64);
        prop_assert_eq!(m, chained);
    }
}
