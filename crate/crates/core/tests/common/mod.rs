#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qumbral::{IntPolyQ, QRat, TSeries, XPoly};

pub fn poly(c: &[i64]) -> IntPolyQ {
    IntPolyQ::from_i64s(c)
}

pub fn qpoly(c: &[i64]) -> QRat {
    QRat::from_poly(poly(c))
}

pub fn frac(n: &[i64], d: &[i64]) -> QRat {
    QRat::new(poly(n), poly(d)).unwrap()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_poly() -> impl Strategy<Value = IntPolyQ> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| IntPolyQ::from_i64s(&c))
}

pub fn nonzero_int_poly() -> impl Strategy<Value = IntPolyQ> {
    int_poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn qrat() -> impl Strategy<Value = QRat> {
    (int_poly(), nonzero_int_poly()).prop_map(|(n, d)| QRat::new(n, d).unwrap())
}

pub fn nonzero_qrat() -> impl Strategy<Value = QRat> {
    qrat().prop_filter("nonzero", |x| !x.is_zero())
}

/// Rational function with an integer-polynomial numerator and a denominator
/// of degree at most one, which keeps towers of operations fast.
pub fn light_qrat() -> impl Strategy<Value = QRat> {
    (
        prop::collection::vec(-4i64..=4, 0..3),
        prop_oneof![Just(vec![1i64]), (1i64..=3, 1i64..=3).prop_map(|(a, b)| vec![a, b])],
    )
        .prop_map(|(n, d)| frac(&n, &d))
}

pub fn xpoly(max_len: usize) -> impl Strategy<Value = XPoly> {
    prop::collection::vec(light_qrat(), 0..=max_len).prop_map(XPoly::new)
}

pub fn tseries(max_cap: usize) -> impl Strategy<Value = TSeries> {
    prop::collection::vec(light_qrat(), 1..=max_cap).prop_map(TSeries::new)
}

/// Rationals away from the small roots of unity that appear in denominators.
pub fn sample_point() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}
