//! Polynomials in `x` over `Q(q)`, with the q-derivative `D_q` and the
//! Jackson q-integral.
//!
//! The Jackson integral is evaluated through the exact antiderivative
//! `x^k -> x^{k+1} / [k+1]_q`, never through its defining series, which only
//! converges for numeric `0 < q < 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcombinatorics::{qfalling_poly, qint};
use crate::qfield::QRat;

/// `sum_k coeffs[k] x^k`. The leading coefficient is nonzero unless the
/// polynomial is zero (empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "XPolyJson")]
pub struct XPoly {
    coeffs: Vec<QRat>,
}

#[derive(Deserialize)]
struct XPolyJson {
    coeffs: Vec<QRat>,
}

impl TryFrom<XPolyJson> for XPoly {
    type Error = std::convert::Infallible;

    fn try_from(raw: XPolyJson) -> std::result::Result<Self, Self::Error> {
        Ok(XPoly::new(raw.coeffs))
    }
}

impl XPoly {
    pub fn new(mut coeffs: Vec<QRat>) -> Self {
        while coeffs.last().is_some_and(QRat::is_zero) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QRat::one())
    }

    pub fn constant(c: QRat) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: QRat, k: usize) -> Self {
        let mut coeffs = vec![QRat::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        Self::monomial(QRat::one(), k)
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> QRat {
        self.coeffs.get(k).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&QRat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &QRat) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The q-derivative: `x^n -> [n]_q x^{n-1}`, extended linearly. The
    /// difference quotient is singular at `x = 0`; this monomial rule is its
    /// limit there.
    pub fn dq(&self) -> XPoly {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &qint(k))
                .collect(),
        )
    }

    /// `D_q^k p`; coefficients scale by the q-falling product directly.
    pub fn dq_iter(&self, k: usize) -> XPoly {
        if k == 0 {
            return self.clone();
        }
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(k)
                .map(|(m, c)| c * &QRat::from_poly(qfalling_poly(m, k)))
                .collect(),
        )
    }

    /// The q-antiderivative vanishing at 0: `x^k -> x^{k+1} / [k+1]_q`.
    pub fn jackson_antiderivative(&self) -> XPoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(QRat::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / &qint(k + 1));
        }
        XPoly::new(coeffs)
    }

    /// `int_0^1 p(x) d_q x = sum_k c_k / [k+1]_q`.
    pub fn jackson_integral_01(&self) -> QRat {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c / &qint(k + 1))
            .sum()
    }

    /// `int_a^b p(x) d_q x = F(b) - F(a)` with `F` the antiderivative above.
    pub fn jackson_integral(&self, a: &QRat, b: &QRat) -> QRat {
        let f = self.jackson_antiderivative();
        &f.eval_x(b) - &f.eval_x(a)
    }

    /// Horner evaluation at `x = x0` over `Q(q)`.
    pub fn eval_x(&self, x0: &QRat) -> QRat {
        self.coeffs
            .iter()
            .rev()
            .fold(QRat::zero(), |acc, c| &(&acc * x0) + c)
    }

    /// Numeric evaluation at `q = q0`, `x = x0`.
    pub fn eval_at(&self, q0: &BigRational, x0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c.eval(q0)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("XPoly serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses the compact literal `[[num_coeffs, den_coeffs], ...]`, one pair
    /// per power of `x` in ascending order.
    pub fn from_literal(s: &str) -> Result<Self> {
        let pairs: Vec<(Vec<serde_json::Number>, Vec<serde_json::Number>)> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs = pairs
            .into_iter()
            .map(|(num, den)| QRat::from_json(&serde_json::json!({ "num": num, "den": den })))
            .collect::<Result<Vec<_>>>()?;
        Ok(XPoly::new(coeffs))
    }

    /// Terms `c_k x^k` from the highest power down, coefficients as LaTeX.
    pub fn to_latex(&self) -> String {
        self.render(QRat::to_latex, true)
    }

    fn render(&self, show: impl Fn(&QRat) -> String, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative_monomial();
            let mag = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let xpow = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ if latex => format!("x^{{{k}}}"),
                _ => format!("x^{k}"),
            };
            let body = show(&mag);
            if k == 0 {
                out.push_str(&body);
            } else if mag.is_one() {
                out.push_str(&xpow);
            } else if mag.num().term_count() > 1 && mag.is_polynomial() {
                if latex {
                    out.push_str(&format!("\\left({body}\\right) {xpow}"));
                } else {
                    out.push_str(&format!("({body}) {xpow}"));
                }
            } else {
                out.push_str(&format!("{body} {xpow}"));
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| c.to_string(), false))
    }
}

impl Add for &XPoly {
    type Output = XPoly;

    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;

    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &(-rhs)
    }
}

impl Neg for &XPoly {
    type Output = XPoly;

    fn neg(self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &XPoly {
    type Output = XPoly;

    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![QRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        XPoly::new(coeffs)
    }
}

impl std::iter::Sum for XPoly {
    fn sum<I: Iterator<Item = XPoly>>(iter: I) -> XPoly {
        iter.fold(XPoly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcombinatorics::{qfactorial, qpochhammer_x_minus_1};
    use crate::qfield::IntPolyQ;

    fn poly(c: &[i64]) -> QRat {
        QRat::from_poly(IntPolyQ::from_i64s(c))
    }

    #[test]
    fn ring_operations() {
        let p = XPoly::new(vec![poly(&[1, 2]), QRat::q()]);
        assert_eq!(&p + &XPoly::zero(), p);
        let a = XPoly::new(vec![QRat::from_int(-1), QRat::one()]);
        let b = XPoly::new(vec![-QRat::q(), QRat::one()]);
        assert_eq!(
            &a * &b,
            XPoly::new(vec![QRat::q(), poly(&[-1, -1]), QRat::one()])
        );
        assert!(XPoly::x_pow(2).scale(&QRat::zero()).is_zero());
    }

    #[test]
    fn q_derivative_on_monomials() {
        assert!(XPoly::constant(poly(&[3, 1])).dq().is_zero());
        assert_eq!(
            XPoly::x_pow(3).dq(),
            XPoly::monomial(poly(&[1, 1, 1]), 2)
        );
    }

    #[test]
    fn iterated_q_derivative() {
        let p = XPoly::new(vec![QRat::one(), poly(&[0, 2]), QRat::from_int(5)]);
        assert_eq!(p.dq_iter(0), p);
        assert_eq!(p.dq_iter(2), p.dq().dq());
        for n in 0..7 {
            assert_eq!(XPoly::x_pow(n).dq_iter(n), XPoly::constant(qfactorial(n)));
        }
        assert!(XPoly::x_pow(3).dq_iter(4).is_zero());
    }

    #[test]
    fn jackson_integrals() {
        assert_eq!(XPoly::one().jackson_integral_01(), QRat::one());
        for n in 0..6 {
            assert_eq!(
                XPoly::x_pow(n).jackson_integral_01(),
                QRat::one() / qint(n + 1)
            );
        }
        let c = poly(&[2, 1]);
        let p = XPoly::new(vec![QRat::one(), QRat::q(), QRat::from_int(3)]);
        assert!(p.jackson_integral(&c, &c).is_zero());
        assert_eq!(
            XPoly::x_pow(1).jackson_integral(&QRat::zero(), &QRat::one()),
            QRat::one() / qint(2)
        );
        assert_eq!(XPoly::one().jackson_integral(&QRat::zero(), &c), c);
    }

    #[test]
    fn antiderivative_inverts_dq() {
        let p = XPoly::new(vec![poly(&[1, -1]), QRat::from_int(4), QRat::zero(), QRat::q_pow(3)]);
        assert_eq!(p.jackson_antiderivative().dq(), p);
    }

    #[test]
    fn evaluation_in_x() {
        let p = XPoly::new(vec![poly(&[7, 1]), QRat::one()]);
        assert_eq!(p.eval_x(&QRat::zero()), poly(&[7, 1]));
        let pochhammer = qpochhammer_x_minus_1(2);
        assert!(pochhammer.eval_x(&QRat::one()).is_zero());
        assert!(pochhammer.eval_x(&QRat::q()).is_zero());
    }

    #[test]
    fn rendering() {
        let p = XPoly::new(vec![QRat::from_ratio(-1, 1).unwrap() / poly(&[1, 1]), QRat::one()]);
        assert_eq!(p.to_string(), "x - 1/(1 + q)");
        let p2 = qpochhammer_x_minus_1(2);
        assert_eq!(p2.to_string(), "x^2 + (-1 - q) x + q");
        assert_eq!(XPoly::zero().to_string(), "0");
        assert_eq!(p.to_latex(), "x - \\frac{1}{1 + q}");
    }

    #[test]
    fn json_and_literal_forms() {
        let p = XPoly::new(vec![QRat::zero(), poly(&[1, 1])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":[{"num":[0],"den":[1]},{"num":[1,1],"den":[1]}]}"#);
        assert_eq!(XPoly::from_json_str(&s).unwrap(), p);
        assert_eq!(XPoly::from_literal("[[[0],[1]],[[1,1],[1]]]").unwrap(), p);
        assert_eq!(XPoly::from_literal("[[[1],[1]],[[0],[1]]]").unwrap(), XPoly::one());
        assert!(XPoly::from_literal("[[[1],[0]]]").is_err());
        assert!(XPoly::from_literal("x^2").is_err());
    }
}
