use num_bigint::BigInt;
use serde_json::json;

use super::BernoulliCache;
use crate::qcombinatorics::{
    binomial, compositions, qbinomial, qfactorial, qfalling_poly, qmultinomial,
    qpochhammer_x_minus_1,
};
use crate::qfield::{IntPolyQ, QRat};
use crate::qpolynomial::XPoly;
use crate::qumbral::eq_minus_one_over_t;

/// Target basis of an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Bernoulli,
    /// `B^{(r)}_{k,q}(x)`
    BernoulliOrder(usize),
    /// `(x-1)_q^k`
    QPochXMinus1,
}

impl Basis {
    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Monomial => "monomial",
            Basis::Bernoulli => "bernoulli",
            Basis::BernoulliOrder(_) => "bernoulli_order_r",
            Basis::QPochXMinus1 => "qpoch_x_minus_1",
        }
    }

    /// The `k`-th basis polynomial.
    pub fn element(&self, cache: &BernoulliCache, k: usize) -> XPoly {
        match *self {
            Basis::Monomial => XPoly::x_pow(k),
            Basis::Bernoulli => cache.poly(k),
            Basis::BernoulliOrder(r) => cache.higher_poly(k, r),
            Basis::QPochXMinus1 => qpochhammer_x_minus_1(k),
        }
    }
}

/// Coefficients `b_k` of a polynomial in one of the bases above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub basis: Basis,
    pub coeffs: Vec<QRat>,
}

impl ExpansionResult {
    /// `sum_k b_k basis_k(x)`.
    pub fn reconstruct(&self, cache: &BernoulliCache) -> XPoly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(k, b)| self.basis.element(cache, k).scale(b))
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<_> = self.coeffs.iter().map(QRat::to_json).collect();
        match self.basis {
            Basis::BernoulliOrder(r) => {
                json!({ "basis": self.basis.tag(), "r": r, "coeffs": coeffs })
            }
            _ => json!({ "basis": self.basis.tag(), "coeffs": coeffs }),
        }
    }
}

/// `b_k = (1/[k]_q!) int_0^1 D_q^k p(x) d_q x`, the coefficients of `p` in
/// the q-Bernoulli basis.
pub fn expand_in_bernoulli(p: &XPoly) -> ExpansionResult {
    let len = p.degree().map_or(0, |d| d + 1);
    let coeffs = (0..len)
        .map(|k| &p.dq_iter(k).jackson_integral_01() / &qfactorial(k))
        .collect();
    ExpansionResult {
        basis: Basis::Bernoulli,
        coeffs,
    }
}

/// `B_{n,q}(x) = sum_k binom(n,k)_q B_{n-k,q}(1) (x-1)_q^k`.
pub fn expand_in_qpoch(cache: &BernoulliCache, n: usize) -> ExpansionResult {
    let coeffs = (0..=n)
        .map(|k| &qbinomial(n, k as i64) * &cache.poly(n - k).eval_x(&QRat::one()))
        .collect();
    ExpansionResult {
        basis: Basis::QPochXMinus1,
        coeffs,
    }
}

/// Coefficients of any `p` in the `(x-1)_q^k` basis:
/// `c_k = <e_q(t) t^k | p> / [k]_q! = (D_q^k p)(1) / [k]_q!`.
pub fn expand_in_qpoch_basis(p: &XPoly) -> ExpansionResult {
    let len = p.degree().map_or(0, |d| d + 1);
    let coeffs = (0..len)
        .map(|k| &p.dq_iter(k).eval_x(&QRat::one()) / &qfactorial(k))
        .collect();
    ExpansionResult {
        basis: Basis::QPochXMinus1,
        coeffs,
    }
}

/// Closed-form coefficients of `(x-1)_q^n` in the q-Bernoulli basis:
/// `binom(n,k)_q sum_m binom(n-k,m)_q (-1)^{n-k-m} q^{binom(n-k-m,2)} / [m+1]_q`.
pub fn qpoch_in_bernoulli_closed(n: usize) -> Vec<QRat> {
    (0..=n)
        .map(|k| {
            let d = n - k;
            let inner: QRat = (0..=d)
                .map(|m| {
                    let e = d - m;
                    let sign = if e % 2 == 0 { 1 } else { -1 };
                    let qp = QRat::from_poly(IntPolyQ::monomial(
                        BigInt::from(sign),
                        e * e.saturating_sub(1) / 2,
                    ));
                    &(&qbinomial(d, m as i64) * &qp) / &crate::qcombinatorics::qint(m + 1)
                })
                .sum();
            &qbinomial(n, k as i64) * &inner
        })
        .collect()
}

/// `b^{(r)}_k = (1/[k]_q!) <((e_q(t)-1)/t)^r | D_q^k p(x)>`, the coefficients
/// of `p` in the order-`r` q-Bernoulli basis.
pub fn expand_in_higher_bernoulli(p: &XPoly, r: usize) -> ExpansionResult {
    let len = p.degree().map_or(0, |d| d + 1);
    let kernel = eq_minus_one_over_t(len.max(1)).pow(r);
    let coeffs = (0..len)
        .map(|k| {
            let paired = kernel.pairing(&p.dq_iter(k)).expect("cap covers degree");
            &paired / &qfactorial(k)
        })
        .collect();
    ExpansionResult {
        basis: Basis::BernoulliOrder(r),
        coeffs,
    }
}

/// `<e_q(t)^j | B_{N,q}(x)>` through the closed double sum
/// `sum_m [sum_{m_1+...+m_j=m} binom(m; m_1..m_j)_q] binom(N,m)_q B_{N-m,q}`.
pub fn eq_power_pairing_bernoulli(cache: &BernoulliCache, j: usize, big_n: usize) -> QRat {
    let numbers = cache.numbers(big_n);
    (0..=big_n)
        .map(|m| {
            let multinomials: QRat = compositions(m, j)
                .map(|c| qmultinomial(m, &c).expect("parts sum to m"))
                .sum();
            if multinomials.is_zero() {
                return QRat::zero();
            }
            &(&multinomials * &qbinomial(big_n, m as i64)) * &numbers[big_n - m]
        })
        .sum()
}

/// `<(e_q(t)-1)^r | B_{N,q}(x)> = sum_j binom(r,j) (-1)^{r-j} <e_q(t)^j | B_{N,q}(x)>`
/// with ordinary binomials.
fn eq_minus_one_power_pairing(cache: &BernoulliCache, r: usize, big_n: usize) -> QRat {
    (0..=r)
        .map(|j| {
            let sign = if (r - j) % 2 == 0 { 1 } else { -1 };
            let c = QRat::from_bigint(binomial(r, j as i64) * BigInt::from(sign));
            &c * &eq_power_pairing_bernoulli(cache, j, big_n)
        })
        .sum()
}

/// Prefactor of the `k < r` regime in simplified form,
/// `binom(r,k)_q / ([r]_q! binom(n+r-k, r-k)_q)`.
pub fn thm6_low_prefactor(n: usize, r: usize, k: usize) -> QRat {
    assert!(k < r);
    &qbinomial(r, k as i64) / &(&qfactorial(r) * &qbinomial(n + r - k, (r - k) as i64))
}

/// The same prefactor before simplification,
/// `1 / ([k]_q! [n+r-k]_q [n+r-k-1]_q ... [n+1]_q)`.
pub fn thm6_low_prefactor_unsimplified(n: usize, r: usize, k: usize) -> QRat {
    assert!(k < r);
    let den = &qfactorial(k) * &QRat::from_poly(qfalling_poly(n + r - k, r - k));
    &QRat::one() / &den
}

/// Prefactor of the `k >= r` regime, `binom(n, k-r)_q / ([r]_q! binom(k,r)_q)`.
fn thm6_high_prefactor(n: usize, r: usize, k: usize) -> QRat {
    assert!(k >= r);
    &qbinomial(n, (k - r) as i64) / &(&qfactorial(r) * &qbinomial(k, r as i64))
}

/// Coefficients of `B_{n,q}(x)` in the order-`r` basis from the two-regime
/// closed form. Both regimes pair `(e_q(t)-1)^r` with `B_{n+r-k,q}(x)`; they
/// differ only in the prefactor.
pub fn thm6_coefficients(cache: &BernoulliCache, n: usize, r: usize) -> ExpansionResult {
    assert!(r >= 1, "order must be positive");
    let coeffs = (0..=n)
        .map(|k| {
            let prefactor = if k < r {
                thm6_low_prefactor(n, r, k)
            } else {
                thm6_high_prefactor(n, r, k)
            };
            &prefactor * &eq_minus_one_power_pairing(cache, r, n + r - k)
        })
        .collect();
    ExpansionResult {
        basis: Basis::BernoulliOrder(r),
        coeffs,
    }
}
