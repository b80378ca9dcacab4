//! The q-umbral algebra: truncated power series in `t` that act on
//! polynomials in `x` both as linear functionals and as operators.
//!
//! A series `f(t) = sum_k a_k t^k / [k]_q!` pairs with polynomials through
//! `<f(t) | x^n> = a_n`, and acts on them with `t` standing for `D_q`.
//! Coefficients are stored plainly (the coefficient of `t^k`); the umbral
//! coefficient is `a_k = coeffs[k] * [k]_q!`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcombinatorics::{binomial, compositions, qfactorial, qmultinomial};
use crate::qfield::QRat;
use crate::qpolynomial::XPoly;

/// A power series in `t` known up to (excluding) `t^cap`.
///
/// Coefficients from `t^cap` on are unknown, not zero. Binary operations
/// produce the smaller of the two caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TSeriesJson")]
pub struct TSeries {
    cap: usize,
    coeffs: Vec<QRat>,
}

#[derive(Deserialize)]
struct TSeriesJson {
    cap: usize,
    coeffs: Vec<QRat>,
}

impl TryFrom<TSeriesJson> for TSeries {
    type Error = String;

    fn try_from(raw: TSeriesJson) -> std::result::Result<Self, String> {
        if raw.coeffs.len() != raw.cap {
            return Err(format!(
                "series cap {} does not match {} coefficients",
                raw.cap,
                raw.coeffs.len()
            ));
        }
        Ok(TSeries::new(raw.coeffs))
    }
}

impl TSeries {
    /// A series whose cap is the number of coefficients given.
    pub fn new(coeffs: Vec<QRat>) -> Self {
        TSeries {
            cap: coeffs.len(),
            coeffs,
        }
    }

    /// Builds from umbral coefficients `a_k`, storing `a_k / [k]_q!`.
    pub fn from_umbral(a: &[QRat]) -> Self {
        Self::new(
            a.iter()
                .enumerate()
                .map(|(k, ak)| ak / &qfactorial(k))
                .collect(),
        )
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(0, cap)
    }

    /// `t^k` truncated at `cap`.
    pub fn monomial(k: usize, cap: usize) -> Self {
        let mut coeffs = vec![QRat::zero(); cap];
        if k < cap {
            coeffs[k] = QRat::one();
        }
        Self::new(coeffs)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    /// Plain coefficient of `t^k`; `None` when `k >= cap`.
    pub fn coeff(&self, k: usize) -> Option<&QRat> {
        self.coeffs.get(k)
    }

    /// `a_k = coeffs[k] [k]_q! = <f(t) | x^k>`.
    pub fn umbral_coeff(&self, k: usize) -> Option<QRat> {
        self.coeff(k).map(|c| c * &qfactorial(k))
    }

    /// Keeps the first `cap` coefficients.
    pub fn truncate(&self, cap: usize) -> TSeries {
        let cap = cap.min(self.cap);
        Self::new(self.coeffs[..cap].to_vec())
    }

    pub fn add(&self, rhs: &TSeries) -> TSeries {
        let cap = self.cap.min(rhs.cap);
        Self::new((0..cap).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }

    pub fn sub(&self, rhs: &TSeries) -> TSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TSeries {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &QRat) -> TSeries {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product truncated at the smaller cap.
    pub fn mul(&self, rhs: &TSeries) -> TSeries {
        let cap = self.cap.min(rhs.cap);
        let coeffs = (0..cap)
            .map(|n| {
                (0..=n)
                    .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[n - i].is_zero())
                    .map(|i| &self.coeffs[i] * &rhs.coeffs[n - i])
                    .sum()
            })
            .collect();
        Self::new(coeffs)
    }

    /// `f^r` by repeated squaring; `f^0 = 1` at the same cap.
    pub fn pow(&self, r: usize) -> TSeries {
        let mut result = TSeries::one(self.cap);
        let mut base = self.clone();
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse through `g_0 = 1/f_0`,
    /// `g_n = -(1/f_0) sum_{j=1..n} f_j g_{n-j}`.
    pub fn inverse(&self) -> Result<TSeries> {
        if self.cap == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0].inv().map_err(|_| Error::NotInvertible)?;
        let mut g: Vec<QRat> = Vec::with_capacity(self.cap);
        g.push(inv0.clone());
        for n in 1..self.cap {
            let acc: QRat = (1..=n)
                .filter(|&j| !self.coeffs[j].is_zero())
                .map(|j| &self.coeffs[j] * &g[n - j])
                .sum();
            g.push(-(&acc * &inv0));
        }
        Ok(Self::new(g))
    }

    /// `f / t^k`, requiring the first `k` coefficients to vanish; the cap
    /// drops by `k`.
    pub fn shifted_down(&self, k: usize) -> Result<TSeries> {
        if k > self.cap {
            return Err(Error::NotDivisible {
                power: k,
                index: self.cap,
            });
        }
        if let Some(index) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { power: k, index });
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// `f t^k`; the cap grows by `k` since the low coefficients are known zeros.
    pub fn shifted_up(&self, k: usize) -> TSeries {
        let mut coeffs = vec![QRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    fn check_cap(&self, p: &XPoly) -> Result<()> {
        match p.degree() {
            Some(d) if d >= self.cap => Err(Error::CapTooSmall {
                degree: d,
                cap: self.cap,
            }),
            _ => Ok(()),
        }
    }

    /// `<f(t) | p(x)> = sum_k coeffs[k] [k]_q! p_k`.
    pub fn pairing(&self, p: &XPoly) -> Result<QRat> {
        self.check_cap(p)?;
        Ok(p.coeffs()
            .iter()
            .enumerate()
            .filter(|(k, c)| !c.is_zero() && !self.coeffs[*k].is_zero())
            .map(|(k, c)| &(&self.coeffs[k] * &qfactorial(k)) * c)
            .sum())
    }

    /// `f(t) p(x) = sum_k coeffs[k] D_q^k p(x)`.
    pub fn apply(&self, p: &XPoly) -> Result<XPoly> {
        self.check_cap(p)?;
        let deg = match p.degree() {
            Some(d) => d,
            None => return Ok(XPoly::zero()),
        };
        Ok((0..=deg)
            .filter(|&k| !self.coeffs[k].is_zero())
            .map(|k| p.dq_iter(k).scale(&self.coeffs[k]))
            .sum())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("TSeries serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The q-exponential `e_q(t) = sum_k t^k / [k]_q!` with `n_terms` known terms.
pub fn eq_series(n_terms: usize) -> TSeries {
    assert!(n_terms >= 1, "e_q(t) needs at least one term");
    TSeries::new((0..n_terms).map(|k| QRat::one() / qfactorial(k)).collect())
}

/// `e_q(y t) = sum_k y^k t^k / [k]_q!`.
pub fn eq_series_scaled(y: &QRat, n_terms: usize) -> TSeries {
    assert!(n_terms >= 1, "e_q(yt) needs at least one term");
    TSeries::new(
        (0..n_terms)
            .map(|k| &y.pow(k as u32) / &qfactorial(k))
            .collect(),
    )
}

/// `(e_q(t) - 1) / t` with `cap` known terms.
pub fn eq_minus_one_over_t(cap: usize) -> TSeries {
    let e = eq_series(cap + 1);
    e.sub(&TSeries::one(cap + 1))
        .shifted_down(1)
        .expect("e_q(t) - 1 has no constant term")
}

/// `t / (e_q(t) - 1)`, the generating series of the q-Bernoulli numbers.
pub fn bernoulli_generating_series(cap: usize) -> TSeries {
    eq_minus_one_over_t(cap)
        .inverse()
        .expect("(e_q(t) - 1)/t has constant term 1")
}

/// `(e_q(t) - 1)^r` by repeated series multiplication.
pub fn eq_minus_one_pow(r: usize, cap: usize) -> TSeries {
    let e = eq_series(cap.max(1));
    e.sub(&TSeries::one(cap.max(1))).pow(r).truncate(cap)
}

/// `(e_q(t) - 1)^r = sum_j binom(r, j) (-1)^{r-j} e_q(t)^j`, with ordinary
/// binomial coefficients.
pub fn eq_minus_one_pow_binomial(r: usize, cap: usize) -> TSeries {
    let e = eq_series(cap.max(1));
    let mut acc = TSeries::new(vec![QRat::zero(); cap]);
    for j in 0..=r {
        let sign = if (r - j) % 2 == 0 { 1 } else { -1 };
        let c = QRat::from_bigint(binomial(r, j as i64) * BigInt::from(sign));
        acc = acc.add(&e.pow(j).truncate(cap).scale(&c));
    }
    acc
}

/// Outcome of a Sheffer-orthogonality check, one entry per `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShefferReport {
    pub cases: Vec<ShefferCase>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShefferCase {
    pub n: usize,
    pub k: usize,
    pub pass: bool,
}

impl ShefferReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

/// Checks `<g(t) t^k | s_n(x)> = [n]_q! delta_{n,k}` for every `n, k` below
/// `s.len()`. `g` must have cap at least `s.len()`.
pub fn sheffer_check(g: &TSeries, s: &[XPoly]) -> Result<ShefferReport> {
    let bound = s.len();
    let mut cases = Vec::with_capacity(bound * bound);
    for k in 0..bound {
        let gk = g.shifted_up(k);
        for (n, sn) in s.iter().enumerate() {
            let lhs = gk.pairing(sn)?;
            let expected = if n == k { qfactorial(n) } else { QRat::zero() };
            let pass = sn.degree() == Some(n) && lhs == expected;
            cases.push(ShefferCase { n, k, pass });
        }
    }
    cases.sort_by_key(|c| (c.n, c.k));
    Ok(ShefferReport { cases })
}

/// Right-hand side of the product rule
/// `<f_1...f_m | x^n> = sum_{i_1+...+i_m=n} binom(n; i)_q prod_j <f_j | x^{i_j}>`.
pub fn pairing_multinomial_sum(fs: &[TSeries], n: usize) -> Result<QRat> {
    let xs: Vec<XPoly> = (0..=n).map(XPoly::x_pow).collect();
    let mut total = QRat::zero();
    for comp in compositions(n, fs.len()) {
        let mut term = qmultinomial(n, &comp)?;
        for (f, &i) in fs.iter().zip(comp.parts()) {
            if term.is_zero() {
                break;
            }
            term = &term * &f.pairing(&xs[i])?;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Compares both sides of the product rule for the pairing.
pub fn pairing_multinomial_check(fs: &[TSeries], n: usize) -> Result<bool> {
    let cap = fs.iter().map(TSeries::cap).min().unwrap_or(n + 1);
    let product = fs
        .iter()
        .fold(TSeries::one(cap), |acc, f| acc.mul(f));
    let lhs = product.pairing(&XPoly::x_pow(n))?;
    Ok(lhs == pairing_multinomial_sum(fs, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcombinatorics::{qint, qpochhammer_x_minus_1};
    use crate::qfield::IntPolyQ;

    fn poly(c: &[i64]) -> QRat {
        QRat::from_poly(IntPolyQ::from_i64s(c))
    }

    #[test]
    fn q_exponential_coefficients() {
        let e = eq_series(6);
        assert_eq!(e.coeff(0), Some(&QRat::one()));
        assert_eq!(e.coeff(2), Some(&(QRat::one() / poly(&[1, 1]))));
        for n in 0..6 {
            assert_eq!(e.pairing(&XPoly::x_pow(n)).unwrap(), QRat::one());
        }
    }

    #[test]
    fn products_and_powers() {
        let f = TSeries::new(vec![QRat::from_int(2), QRat::q(), poly(&[1, 1])]);
        assert_eq!(f.mul(&TSeries::one(3)), f);
        assert_eq!(f.pow(1), f);
        assert_eq!(f.pow(0), TSeries::one(3));
        assert_eq!(f.pow(3), f.mul(&f).mul(&f));
        assert_eq!(f.mul(&TSeries::one(2)).cap(), 2);
    }

    #[test]
    fn inverse_pair() {
        let a = eq_minus_one_over_t(8);
        let b = a.inverse().unwrap();
        assert_eq!(a.mul(&b), TSeries::one(8));
        assert_eq!(b.coeff(0), Some(&QRat::one()));
        assert_eq!(
            b.umbral_coeff(1).unwrap(),
            -(QRat::one() / poly(&[1, 1]))
        );
        assert_eq!(TSeries::one(4).inverse().unwrap(), TSeries::one(4));
        let not = TSeries::new(vec![QRat::zero(), QRat::one()]);
        assert_eq!(not.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn division_by_t() {
        let g = TSeries::new(vec![QRat::one(), QRat::q(), QRat::from_int(3)]);
        assert_eq!(g.shifted_up(1).shifted_down(1).unwrap(), g);
        assert_eq!(g.shifted_down(0).unwrap(), g);
        let e = eq_series(5).sub(&TSeries::one(5)).shifted_down(1).unwrap();
        assert_eq!(e.coeff(0), Some(&QRat::one()));
        assert_eq!(e.cap(), 4);
        assert_eq!(
            g.shifted_down(1),
            Err(Error::NotDivisible { power: 1, index: 0 })
        );
    }

    #[test]
    fn pairing_with_monomials() {
        for k in 0..5 {
            let tk = TSeries::monomial(k, 6);
            for n in 0..5 {
                let expected = if n == k { qfactorial(n) } else { QRat::zero() };
                assert_eq!(tk.pairing(&XPoly::x_pow(n)).unwrap(), expected);
            }
        }
        assert_eq!(
            TSeries::one(2).pairing(&XPoly::x_pow(2)),
            Err(Error::CapTooSmall { degree: 2, cap: 2 })
        );
        assert!(TSeries::one(0).pairing(&XPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn pairing_evaluates_and_integrates() {
        let p = XPoly::new(vec![poly(&[1, 2]), QRat::from_int(-3), QRat::q(), QRat::one()]);
        let y = QRat::from_ratio(2, 3).unwrap();
        assert_eq!(eq_series_scaled(&y, 4).pairing(&p).unwrap(), p.eval_x(&y));
        assert_eq!(
            eq_minus_one_over_t(4).pairing(&p).unwrap(),
            p.jackson_integral_01()
        );
    }

    #[test]
    fn operator_action() {
        let p = XPoly::new(vec![QRat::one(), QRat::q(), QRat::from_int(2)]);
        assert_eq!(TSeries::one(3).apply(&p).unwrap(), p);
        for n in 1..6 {
            assert_eq!(
                TSeries::monomial(1, 7).apply(&XPoly::x_pow(n)).unwrap(),
                XPoly::monomial(qint(n), n - 1)
            );
        }
    }

    #[test]
    fn binomial_and_product_routes_agree() {
        for r in 0..4 {
            assert_eq!(eq_minus_one_pow(r, 7), eq_minus_one_pow_binomial(r, 7));
        }
    }

    #[test]
    fn sheffer_for_qpochhammer() {
        let s: Vec<XPoly> = (0..6).map(qpochhammer_x_minus_1).collect();
        let report = sheffer_check(&eq_series(6), &s).unwrap();
        assert_eq!(report.cases.len(), 36);
        assert!(report.all_pass());
        let mut wrong = s.clone();
        wrong[3] = XPoly::x_pow(3);
        assert!(!sheffer_check(&eq_series(6), &wrong).unwrap().all_pass());
    }

    #[test]
    fn multinomial_product_rule() {
        let e = eq_series(6);
        assert!(pairing_multinomial_check(&[e.clone()], 4).unwrap());
        assert!(pairing_multinomial_check(&[e.clone(), e.clone(), e.clone()], 5).unwrap());
        let f = TSeries::new(vec![QRat::q(), QRat::from_int(2), poly(&[1, 0, 1]), QRat::zero(), QRat::one(), QRat::q_pow(2)]);
        assert!(pairing_multinomial_check(&[f.clone(), e], 5).unwrap());
    }

    #[test]
    fn json_schema() {
        let s = TSeries::new(vec![QRat::one(), QRat::q()]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"cap":2,"coeffs":[{"num":[1],"den":[1]},{"num":[0,1],"den":[1]}]}"#
        );
        assert_eq!(TSeries::from_json_str(&json).unwrap(), s);
        assert!(TSeries::from_json_str(r#"{"cap":3,"coeffs":[]}"#).is_err());
    }
}
