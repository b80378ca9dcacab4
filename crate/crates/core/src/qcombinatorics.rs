//! q-integers, q-factorials, Gaussian binomial and q-multinomial
//! coefficients, q-Pochhammer products, and weak compositions.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qfield::{IntPolyQ, QRat};
use crate::qpolynomial::XPoly;

/// `[n]_q = 1 + q + ... + q^{n-1}` as an integer polynomial.
pub fn qint_poly(n: usize) -> IntPolyQ {
    IntPolyQ::from_coeffs(vec![BigInt::one(); n])
}

/// `[n]_q`; `qint(0) = 0`.
pub fn qint(n: usize) -> QRat {
    QRat::from_poly(qint_poly(n))
}

/// `[n]_q [n-1]_q ... [n-k+1]_q`, the q-falling product with `k` factors.
pub fn qfalling_poly(n: usize, k: usize) -> IntPolyQ {
    assert!(k <= n, "falling product longer than its base");
    (n - k + 1..=n).fold(IntPolyQ::one(), |acc, i| &acc * &qint_poly(i))
}

pub fn qfactorial_poly(n: usize) -> IntPolyQ {
    qfalling_poly(n, n)
}

/// `[n]_q!`, with `[0]_q! = 1`.
pub fn qfactorial(n: usize) -> QRat {
    QRat::from_poly(qfactorial_poly(n))
}

/// Gaussian binomial as an integer polynomial; zero outside `0 <= k <= n`.
pub fn qbinomial_poly(n: usize, k: i64) -> IntPolyQ {
    if k < 0 || k as usize > n {
        return IntPolyQ::zero();
    }
    let k = (k as usize).min(n - k as usize);
    if k == 0 {
        return IntPolyQ::one();
    }
    qfalling_poly(n, k)
        .div_exact(&qfactorial_poly(k))
        .expect("Gaussian binomial is a polynomial")
}

/// `binom(n, k)_q = [n]_q! / ([k]_q! [n-k]_q!)`, and 0 when `k < 0` or `k > n`.
pub fn qbinomial(n: usize, k: i64) -> QRat {
    QRat::from_poly(qbinomial_poly(n, k))
}

/// Ordinary binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::from(0);
    }
    let k = k as usize;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A weak composition `(m_1, ..., m_j)`: nonnegative parts with a fixed sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
    total: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        let total = parts.iter().sum();
        Composition { parts, total }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Number of parts, zeros included.
    pub fn arity(&self) -> usize {
        self.parts.len()
    }
}

/// `[n]_q! / ([m_1]_q! ... [m_j]_q!)`.
pub fn qmultinomial(n: usize, parts: &Composition) -> Result<QRat> {
    if parts.total() != n {
        return Err(Error::CompositionMismatch {
            parts: parts.parts().to_vec(),
            sum: parts.total(),
            expected: n,
        });
    }
    let den = parts
        .parts()
        .iter()
        .fold(IntPolyQ::one(), |acc, &m| &acc * &qfactorial_poly(m));
    let value = qfactorial_poly(n)
        .div_exact(&den)
        .expect("q-multinomial is a polynomial");
    Ok(QRat::from_poly(value))
}

/// Lexicographic enumeration of the weak compositions of `n` into exactly
/// `j` parts.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<usize>>,
    total: usize,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Composition {
            parts: current,
            total: self.total,
        })
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let j = parts.len();
    if j < 2 {
        return None;
    }
    let mut tail = 0;
    for i in (0..j - 1).rev() {
        tail += parts[i + 1];
        if tail > 0 {
            let mut next = parts.to_vec();
            next[i] += 1;
            for p in &mut next[i + 1..j - 1] {
                *p = 0;
            }
            next[j - 1] = tail - 1;
            return Some(next);
        }
    }
    None
}

/// Every weak composition of `n` into `j` parts, each exactly once, in
/// lexicographic order. `j = 0` yields the empty composition iff `n = 0`.
pub fn compositions(n: usize, j: usize) -> Compositions {
    let first = match j {
        0 if n == 0 => Some(Vec::new()),
        0 => None,
        _ => {
            let mut v = vec![0; j];
            v[j - 1] = n;
            Some(v)
        }
    };
    Compositions {
        next: first,
        total: n,
    }
}

/// `(x-1)_q^n = (x-1)(x-q)...(x-q^{n-1})` expanded through its closed form
/// `sum_m binom(n,m)_q (-1)^{n-m} q^{binom(n-m,2)} x^m`.
pub fn qpochhammer_x_minus_1(n: usize) -> XPoly {
    let coeffs = (0..=n)
        .map(|m| {
            let d = n - m;
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let qpow = IntPolyQ::monomial(BigInt::from(sign), d * d.saturating_sub(1) / 2);
            QRat::from_poly(&qbinomial_poly(n, m as i64) * &qpow)
        })
        .collect();
    XPoly::new(coeffs)
}

/// `(a + b)_q^n = prod_{i<n} (a + q^i b)`.
pub fn qshifted_power(a: &QRat, b: &QRat, n: usize) -> QRat {
    (0..n).map(|i| a + &(&QRat::q_pow(i) * b)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QRat {
        QRat::from_poly(IntPolyQ::from_i64s(c))
    }

    #[test]
    fn qint_values() {
        assert_eq!(qint(0), QRat::zero());
        assert_eq!(qint(1), QRat::one());
        assert_eq!(qint(3), poly(&[1, 1, 1]));
    }

    #[test]
    fn qfactorial_values() {
        assert_eq!(qfactorial(0), QRat::one());
        assert_eq!(qfactorial(2), poly(&[1, 1]));
        // (1+q)(1+q+q^2)
        assert_eq!(qfactorial(3), poly(&[1, 2, 2, 1]));
    }

    #[test]
    fn qbinomial_values() {
        assert_eq!(qbinomial(5, 0), QRat::one());
        assert_eq!(qbinomial(2, 1), poly(&[1, 1]));
        assert_eq!(qbinomial(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinomial(4, -1), QRat::zero());
        assert_eq!(qbinomial(4, 5), QRat::zero());
        // the direct quotient of factorials agrees
        let direct = &qfactorial(4) / &(&qfactorial(2) * &qfactorial(2));
        assert_eq!(qbinomial(4, 2), direct);
    }

    #[test]
    fn qmultinomial_values() {
        assert_eq!(qmultinomial(4, &Composition::new(vec![4])).unwrap(), QRat::one());
        assert_eq!(qmultinomial(2, &Composition::new(vec![1, 1])).unwrap(), poly(&[1, 1]));
        assert_eq!(
            qmultinomial(3, &Composition::new(vec![1, 1, 1])).unwrap(),
            poly(&[1, 2, 2, 1])
        );
        assert!(matches!(
            qmultinomial(3, &Composition::new(vec![1, 1])),
            Err(Error::CompositionMismatch { sum: 2, expected: 3, .. })
        ));
    }

    fn listed(n: usize, j: usize) -> Vec<Vec<usize>> {
        compositions(n, j).map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn composition_listing() {
        assert_eq!(listed(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(listed(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(listed(0, 0), vec![Vec::<usize>::new()]);
        assert!(listed(3, 0).is_empty());
        assert_eq!(listed(4, 1), vec![vec![4]]);
        assert_eq!(
            listed(1, 3),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn composition_count_is_stars_and_bars() {
        for n in 0..8 {
            for j in 1..5 {
                let expected = binomial(n + j - 1, (j - 1) as i64);
                assert_eq!(BigInt::from(compositions(n, j).count()), expected, "n={n} j={j}");
            }
        }
        assert_eq!(compositions(5, 3).count(), 21);
    }

    #[test]
    fn compositions_are_sorted_and_valid() {
        let all: Vec<_> = compositions(6, 4).collect();
        assert!(all.windows(2).all(|w| w[0].parts() < w[1].parts()));
        assert!(all.iter().all(|c| c.total() == 6 && c.arity() == 4 && c.parts().iter().sum::<usize>() == 6));
    }

    #[test]
    fn qpochhammer_small() {
        assert_eq!(qpochhammer_x_minus_1(0), XPoly::one());
        assert_eq!(
            qpochhammer_x_minus_1(1),
            XPoly::new(vec![QRat::from_int(-1), QRat::one()])
        );
        assert_eq!(
            qpochhammer_x_minus_1(2),
            XPoly::new(vec![QRat::q(), poly(&[-1, -1]), QRat::one()])
        );
    }

    #[test]
    fn qshifted_power_values() {
        assert_eq!(qshifted_power(&QRat::one(), &QRat::one(), 0), QRat::one());
        assert_eq!(qshifted_power(&QRat::one(), &QRat::zero(), 5), QRat::one());
        assert_eq!(qshifted_power(&QRat::one(), &QRat::one(), 2), poly(&[2, 2]));
    }

    #[test]
    fn ordinary_binomial() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
