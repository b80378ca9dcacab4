//! q-Bernoulli numbers and polynomials of every order, and the expansions of
//! arbitrary polynomials in the bases they form.
//!
//! `B_{n,q}` is the umbral coefficient of `t / (e_q(t) - 1)`, i.e. the
//! coefficient of `t^n / [n]_q!`. The order-`r` numbers come from the `r`-th
//! power of that series, and the polynomials from its action on `x^n`.

mod expansion;

use std::collections::HashMap;
use std::sync::RwLock;

pub use expansion::{
    expand_in_bernoulli, expand_in_higher_bernoulli, expand_in_qpoch, expand_in_qpoch_basis,
    eq_power_pairing_bernoulli, qpoch_in_bernoulli_closed, thm6_coefficients,
    thm6_low_prefactor, thm6_low_prefactor_unsimplified, Basis, ExpansionResult,
};

use crate::qcombinatorics::{compositions, qbinomial, qint, qmultinomial};
use crate::qfield::QRat;
use crate::qpolynomial::XPoly;
use crate::qumbral::{bernoulli_generating_series, TSeries};

/// `B_{0,q}, ..., B_{n_max,q}` read off the inverse of `(e_q(t) - 1)/t`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<QRat> {
    let g = bernoulli_generating_series(n_max + 1);
    (0..=n_max)
        .map(|k| g.umbral_coeff(k).expect("within cap"))
        .collect()
}

/// `B_{n,q}` by series inversion.
pub fn bernoulli_number(n: usize) -> QRat {
    bernoulli_numbers(n).pop().expect("nonempty")
}

/// `B_{0,q}, ..., B_{n_max,q}` from the recurrence
/// `B_0 = 1`, `B_n = -sum_{k=1..n} binom(n,k)_q B_{n-k} / [k+1]_q`.
pub fn bernoulli_numbers_rec(n_max: usize) -> Vec<QRat> {
    let mut b = vec![QRat::one()];
    for n in 1..=n_max {
        let s: QRat = (1..=n)
            .filter(|&k| !b[n - k].is_zero())
            .map(|k| &(&qbinomial(n, k as i64) * &b[n - k]) / &qint(k + 1))
            .sum();
        b.push(-s);
    }
    b
}

/// `B_{n,q}` by the recurrence alone.
pub fn bernoulli_number_rec(n: usize) -> QRat {
    bernoulli_numbers_rec(n).pop().expect("nonempty")
}

/// `B_{n,q}(x) = sum_l binom(n,l)_q B_{l,q} x^{n-l}` from given numbers.
pub fn bernoulli_poly_from(numbers: &[QRat], n: usize) -> XPoly {
    XPoly::new(
        (0..=n)
            .map(|k| &qbinomial(n, k as i64) * &numbers[n - k])
            .collect(),
    )
}

pub fn bernoulli_poly(n: usize) -> XPoly {
    bernoulli_poly_from(&bernoulli_numbers(n), n)
}

/// `B^{(r)}_{n,q}` as the umbral coefficient of `(t/(e_q(t)-1))^r`;
/// `r = 0` gives `delta_{n,0}`.
pub fn higher_bernoulli_number(n: usize, r: usize) -> QRat {
    BernoulliCache::new().higher_number(n, r)
}

/// `B^{(r)}_{n,q} = sum_{i_1+...+i_r=n} binom(n; i)_q B_{i_1,q}...B_{i_r,q}`
/// over the given first-order numbers (which must reach index `n`).
pub fn higher_number_multinomial_from(numbers: &[QRat], n: usize, r: usize) -> QRat {
    compositions(n, r)
        .map(|comp| {
            comp.parts()
                .iter()
                .fold(qmultinomial(n, &comp).expect("parts sum to n"), |acc, &i| {
                    &acc * &numbers[i]
                })
        })
        .sum()
}

/// The multinomial-sum route to `B^{(r)}_{n,q}`, fed by the recurrence
/// numbers so it shares no code with the series route.
pub fn higher_bernoulli_number_multinomial(n: usize, r: usize) -> QRat {
    higher_number_multinomial_from(&bernoulli_numbers_rec(n), n, r)
}

/// `B^{(r)}_{n,q}(x) = (t/(e_q(t)-1))^r x^n`.
pub fn higher_bernoulli_poly(n: usize, r: usize) -> XPoly {
    BernoulliCache::new().higher_poly(n, r)
}

/// Series cap for a computation touching index `n` at order `r`.
pub fn series_cap(n: usize, r: usize) -> usize {
    n + r + 2
}

#[derive(Default, Debug)]
struct Tables {
    numbers: Vec<QRat>,
    higher: HashMap<usize, Vec<QRat>>,
    polys: HashMap<usize, XPoly>,
    higher_polys: HashMap<(usize, usize), XPoly>,
}

/// Memo of q-Bernoulli numbers and polynomials.
///
/// Reads take a shared lock; misses are computed outside the lock and
/// inserted under an exclusive one. Every entry equals the corresponding
/// free function unless [`BernoulliCache::override_number`] was used.
#[derive(Default, Debug)]
pub struct BernoulliCache {
    tables: RwLock<Tables>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `B_{0,q}, ..., B_{n_max,q}`.
    pub fn numbers(&self, n_max: usize) -> Vec<QRat> {
        {
            let t = self.tables.read().unwrap();
            if t.numbers.len() > n_max {
                return t.numbers[..=n_max].to_vec();
            }
        }
        let fresh = bernoulli_numbers(n_max);
        let mut t = self.tables.write().unwrap();
        let have = t.numbers.len();
        if have <= n_max {
            t.numbers.extend(fresh.into_iter().skip(have));
        }
        t.numbers[..=n_max].to_vec()
    }

    pub fn number(&self, n: usize) -> QRat {
        {
            let t = self.tables.read().unwrap();
            if let Some(b) = t.numbers.get(n) {
                return b.clone();
            }
        }
        self.numbers(n).pop().expect("nonempty")
    }

    /// Replaces a cached `B_{n,q}` and drops everything derived from it.
    /// Exists so tests can confirm the verification suites notice a wrong
    /// value.
    pub fn override_number(&self, n: usize, value: QRat) {
        self.numbers(n);
        let mut t = self.tables.write().unwrap();
        t.numbers[n] = value;
        t.higher.clear();
        t.polys.clear();
        t.higher_polys.clear();
    }

    /// `t/(e_q(t)-1)` assembled from the cached numbers.
    pub fn generating_series(&self, cap: usize) -> TSeries {
        if cap == 0 {
            return TSeries::new(Vec::new());
        }
        TSeries::from_umbral(&self.numbers(cap - 1))
    }

    pub fn poly(&self, n: usize) -> XPoly {
        if let Some(p) = self.tables.read().unwrap().polys.get(&n) {
            return p.clone();
        }
        let p = bernoulli_poly_from(&self.numbers(n), n);
        self.tables.write().unwrap().polys.insert(n, p.clone());
        p
    }

    pub fn higher_number(&self, n: usize, r: usize) -> QRat {
        match r {
            0 => {
                return if n == 0 { QRat::one() } else { QRat::zero() };
            }
            1 => return self.number(n),
            _ => {}
        }
        if let Some(v) = self.tables.read().unwrap().higher.get(&r).and_then(|v| v.get(n)) {
            return v.clone();
        }
        let power = self.generating_series(series_cap(n, r)).pow(r);
        let values: Vec<QRat> = (0..=n)
            .map(|k| power.umbral_coeff(k).expect("within cap"))
            .collect();
        let mut t = self.tables.write().unwrap();
        let entry = t.higher.entry(r).or_default();
        if entry.len() <= n {
            *entry = values;
        }
        entry[n].clone()
    }

    /// Multinomial sum over the cached first-order numbers.
    pub fn higher_number_multinomial(&self, n: usize, r: usize) -> QRat {
        higher_number_multinomial_from(&self.numbers(n), n, r)
    }

    pub fn higher_poly(&self, n: usize, r: usize) -> XPoly {
        match r {
            0 => return XPoly::x_pow(n),
            1 => return self.poly(n),
            _ => {}
        }
        if let Some(p) = self.tables.read().unwrap().higher_polys.get(&(n, r)) {
            return p.clone();
        }
        let p = self
            .generating_series(series_cap(n, r))
            .pow(r)
            .apply(&XPoly::x_pow(n))
            .expect("cap exceeds degree");
        self.tables
            .write()
            .unwrap()
            .higher_polys
            .insert((n, r), p.clone());
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::IntPolyQ;
    use crate::qumbral::eq_minus_one_over_t;

    fn frac(n: &[i64], d: &[i64]) -> QRat {
        QRat::new(IntPolyQ::from_i64s(n), IntPolyQ::from_i64s(d)).unwrap()
    }

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(0), QRat::one());
        assert_eq!(bernoulli_number(1), frac(&[-1], &[1, 1]));
        // q^2 / ((1+q)(1+q+q^2))
        assert_eq!(bernoulli_number(2), frac(&[0, 0, 1], &[1, 2, 2, 1]));
    }

    #[test]
    fn recurrence_route() {
        assert_eq!(bernoulli_number_rec(0), QRat::one());
        assert_eq!(bernoulli_number_rec(1), frac(&[-1], &[1, 1]));
        assert_eq!(bernoulli_numbers_rec(12), bernoulli_numbers(12));
    }

    #[test]
    fn first_polys() {
        assert_eq!(bernoulli_poly(0), XPoly::one());
        assert_eq!(
            bernoulli_poly(1),
            XPoly::new(vec![frac(&[-1], &[1, 1]), QRat::one()])
        );
        for n in 0..8 {
            let p = bernoulli_poly(n);
            assert_eq!(p.degree(), Some(n));
            assert!(p.leading().unwrap().is_one());
        }
    }

    #[test]
    fn poly_is_operator_image_of_monomial() {
        let g = eq_minus_one_over_t(9).inverse().unwrap();
        for n in 0..8 {
            assert_eq!(g.apply(&XPoly::x_pow(n)).unwrap(), bernoulli_poly(n));
        }
    }

    #[test]
    fn higher_order_basics() {
        for n in 0..6 {
            assert_eq!(higher_bernoulli_number(n, 1), bernoulli_number(n));
            assert_eq!(higher_bernoulli_poly(n, 1), bernoulli_poly(n));
            assert_eq!(higher_bernoulli_number(n, 0), if n == 0 { QRat::one() } else { QRat::zero() });
        }
        for r in 1..4 {
            assert_eq!(higher_bernoulli_number(0, r), QRat::one());
            assert_eq!(higher_bernoulli_poly(0, r), XPoly::one());
        }
    }

    #[test]
    fn multinomial_route_small() {
        // compositions(1, 2) = (0,1), (1,0), each with multinomial 1
        let b1 = bernoulli_number(1);
        assert_eq!(higher_bernoulli_number_multinomial(1, 2), &b1 + &b1);
        assert_eq!(higher_bernoulli_number_multinomial(1, 2), frac(&[-2], &[1, 1]));
        for n in 0..5 {
            assert_eq!(higher_bernoulli_number_multinomial(n, 1), bernoulli_number(n));
            for r in 2..4 {
                assert_eq!(
                    higher_bernoulli_number_multinomial(n, r),
                    higher_bernoulli_number(n, r),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn higher_poly_coefficients() {
        for r in 2..4 {
            for n in 0..6 {
                let expected = XPoly::new(
                    (0..=n)
                        .map(|k| &qbinomial(n, k as i64) * &higher_bernoulli_number(n - k, r))
                        .collect(),
                );
                assert_eq!(higher_bernoulli_poly(n, r), expected);
            }
        }
    }

    #[test]
    fn cache_is_a_pure_memo() {
        let cache = BernoulliCache::new();
        assert_eq!(cache.number(5), bernoulli_number(5));
        assert_eq!(cache.numbers(3), bernoulli_numbers(3));
        assert_eq!(cache.number(9), bernoulli_number(9));
        assert_eq!(cache.poly(4), bernoulli_poly(4));
        assert_eq!(cache.higher_number(4, 3), higher_bernoulli_number(4, 3));
        assert_eq!(cache.higher_number(2, 3), higher_bernoulli_number(2, 3));
        assert_eq!(cache.higher_poly(3, 2), higher_bernoulli_poly(3, 2));
        assert_eq!(cache.higher_number_multinomial(4, 3), cache.higher_number(4, 3));
    }

    #[test]
    fn override_invalidates_derived_values() {
        let cache = BernoulliCache::new();
        let p2 = cache.poly(2);
        let bumped = &cache.number(1) + &QRat::one();
        cache.override_number(1, bumped.clone());
        assert_eq!(cache.number(1), bumped);
        assert_ne!(cache.poly(2), p2);
        assert_eq!(cache.number(2), bernoulli_number(2));
    }

    #[test]
    fn concurrent_reads() {
        let cache = BernoulliCache::new();
        std::thread::scope(|s| {
            for n in 0..6 {
                let cache = &cache;
                s.spawn(move || assert_eq!(cache.poly(n), bernoulli_poly(n)));
            }
        });
    }
}
