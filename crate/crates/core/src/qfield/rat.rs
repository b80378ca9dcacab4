use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IntPolyQ;
use crate::error::{Error, Result};

/// An element of the rational function field `Q(q)`.
///
/// Stored as `num / den` with `gcd(num, den) = 1` over `Z[q]` (content
/// included) and a positive leading coefficient on `den`, so two values are
/// equal exactly when their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat {
    num: IntPolyQ,
    den: IntPolyQ,
}

impl QRat {
    /// Canonicalizes `num / den`.
    pub fn new(num: IntPolyQ, den: IntPolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: IntPolyQ, den: IntPolyQ) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::with_sign(num, den)
    }

    fn with_sign(num: IntPolyQ, den: IntPolyQ) -> Self {
        if den.leading().is_some_and(Signed::is_negative) {
            QRat {
                num: -&num,
                den: -&den,
            }
        } else {
            QRat { num, den }
        }
    }

    pub fn zero() -> Self {
        QRat {
            num: IntPolyQ::zero(),
            den: IntPolyQ::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(IntPolyQ::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_poly(IntPolyQ::constant(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        Self::new(
            IntPolyQ::constant(BigInt::from(num)),
            IntPolyQ::constant(BigInt::from(den)),
        )
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(
            IntPolyQ::constant(r.numer().clone()),
            IntPolyQ::constant(r.denom().clone()),
        )
    }

    pub fn from_poly(p: IntPolyQ) -> Self {
        QRat {
            num: p,
            den: IntPolyQ::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: usize) -> Self {
        Self::from_poly(IntPolyQ::monomial(BigInt::one(), k))
    }

    pub fn num(&self) -> &IntPolyQ {
        &self.num
    }

    pub fn den(&self) -> &IntPolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QRat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes an exact rational for `q`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint {
                point: q0.to_string(),
            });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// True when the numerator is a single term with a negative coefficient,
    /// so the value renders as `-(...)`.
    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.num.term_count() == 1 && self.num.leading().is_some_and(Signed::is_negative)
    }

    /// LaTeX rendering with `\frac` and explicit `q^{k}` powers.
    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            return self.num.render(true);
        }
        if self.num.coeffs().iter().all(|c| !c.is_positive()) {
            let pos = -&self.num;
            return format!("-\\frac{{{}}}{{{}}}", pos.render(true), self.den.render(true));
        }
        format!("\\frac{{{}}}{{{}}}", self.num.render(true), self.den.render(true))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("QRat serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        QRat::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl From<IntPolyQ> for QRat {
    fn from(p: IntPolyQ) -> Self {
        QRat::from_poly(p)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPolyQ| {
            if p.term_count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl Add for &QRat {
    type Output = QRat;

    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return QRat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // coprime denominators over a UFD leave nothing to cancel
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return QRat::zero();
            }
            return QRat::with_sign(num, &self.den * &rhs.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return QRat::zero();
        }
        let g2 = num.gcd(&g);
        let num = num.div_exact(&g2).expect("gcd divides");
        let den = &b * &rhs.den.div_exact(&g2).expect("gcd divides");
        QRat::with_sign(num, den)
    }
}

impl Sub for &QRat {
    type Output = QRat;

    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;

    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QRat {
    type Output = QRat;

    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        QRat::with_sign(&a * &c, &b * &d)
    }
}

/// Panics on a zero divisor; use [`QRat::checked_div`] for a `Result`.
impl Div for &QRat {
    type Output = QRat;

    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("QRat division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QRat {
    type Output = QRat;

    fn neg(self) -> QRat {
        -&self
    }
}

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |acc, x| &acc * &x)
    }
}

#[derive(Serialize, Deserialize)]
struct QRatJson {
    num: Vec<serde_json::Number>,
    den: Vec<serde_json::Number>,
}

fn poly_to_json(p: &IntPolyQ) -> Vec<serde_json::Number> {
    let coeffs: Vec<_> = if p.is_zero() {
        vec![BigInt::zero()]
    } else {
        p.coeffs().to_vec()
    };
    coeffs
        .iter()
        .map(|c| c.to_string().parse().expect("integer literal is a JSON number"))
        .collect()
}

fn poly_from_json(v: &[serde_json::Number]) -> std::result::Result<IntPolyQ, String> {
    let coeffs = v
        .iter()
        .map(|n| {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| format!("coefficient {n} is not an integer"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(IntPolyQ::from_coeffs(coeffs))
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QRatJson {
            num: poly_to_json(&self.num),
            den: poly_to_json(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QRatJson::deserialize(d)?;
        let num = poly_from_json(&raw.num).map_err(D::Error::custom)?;
        let den = poly_from_json(&raw.den).map_err(D::Error::custom)?;
        QRat::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QRat {
        QRat::from_poly(IntPolyQ::from_i64s(c))
    }

    fn frac(n: &[i64], d: &[i64]) -> QRat {
        QRat::new(IntPolyQ::from_i64s(n), IntPolyQ::from_i64s(d)).unwrap()
    }

    #[test]
    fn additive_identity() {
        let x = frac(&[1, 2], &[3, 0, 1]);
        assert_eq!(&QRat::zero() + &x, x);
    }

    #[test]
    fn common_denominator_collapses() {
        let a = frac(&[1], &[1, 1]);
        let b = frac(&[0, 1], &[1, 1]);
        assert_eq!(&a + &b, QRat::one());
    }

    #[test]
    fn canonicalization_cancels() {
        let x = frac(&[1, -1], &[1, 0, -1]);
        assert_eq!(&x + &QRat::zero(), frac(&[1], &[1, 1]));
        assert_eq!(x.num(), &IntPolyQ::from_i64s(&[1]));
        assert_eq!(x.den(), &IntPolyQ::from_i64s(&[1, 1]));
    }

    #[test]
    fn sign_lives_on_denominator() {
        let x = frac(&[1], &[1, -1]);
        assert!(x.den().leading().unwrap().is_positive());
        assert_eq!(x.num(), &IntPolyQ::from_i64s(&[-1]));
        let y = frac(&[-2], &[-4]);
        assert_eq!(y, QRat::from_ratio(1, 2).unwrap());
    }

    #[test]
    fn multiplicative_identity_and_inverse() {
        let x = frac(&[1, 2], &[3, 0, 1]);
        assert_eq!(&x * &QRat::one(), x);
        let a = poly(&[1, 1]);
        assert_eq!(&a * &frac(&[1], &[1, 1]), QRat::one());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QRat::one().checked_div(&QRat::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            QRat::new(IntPolyQ::one(), IntPolyQ::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(QRat::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            frac(&[1], &[1, 1]).eval(&one).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            poly(&[1, 1, 1]).eval(&half).unwrap(),
            BigRational::new(7.into(), 4.into())
        );
        // q^2 / ((1+q)(1+q+q^2)) at q = 1
        let b2 = frac(&[0, 0, 1], &[1, 2, 2, 1]);
        assert_eq!(b2.eval(&one).unwrap(), BigRational::new(1.into(), 6.into()));
        let pole = frac(&[1], &[1, -1]);
        assert!(matches!(pole.eval(&one), Err(Error::PoleAtPoint { .. })));
    }

    #[test]
    fn human_and_latex_rendering() {
        assert_eq!(frac(&[-1], &[1, 1]).to_string(), "-1/(1 + q)");
        assert_eq!(frac(&[0, 0, 1], &[1, 2, 2, 1]).to_string(), "q^2/(1 + 2q + 2q^2 + q^3)");
        assert_eq!(poly(&[1, 1]).to_string(), "1 + q");
        assert_eq!(frac(&[-1], &[1, 1]).to_latex(), "-\\frac{1}{1 + q}");
        assert_eq!(frac(&[0, 0, 1], &[1, 1]).to_latex(), "\\frac{q^{2}}{1 + q}");
    }

    #[test]
    fn json_form() {
        let x = frac(&[-1], &[1, 1]);
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"num":[-1],"den":[1,1]}"#
        );
        assert_eq!(QRat::from_json_str(r#"{"num":[2,2],"den":[0,4,4]}"#).unwrap(), frac(&[1], &[0, 2]));
        assert_eq!(serde_json::to_string(&QRat::zero()).unwrap(), r#"{"num":[0],"den":[1]}"#);
        assert!(QRat::from_json_str(r#"{"num":[1],"den":[0]}"#).is_err());
        assert!(QRat::from_json_str(r#"{"num":[1.5],"den":[1]}"#).is_err());
        let big = "123456789012345678901234567890";
        let parsed = QRat::from_json_str(&format!(r#"{{"num":[{big}],"den":[1]}}"#)).unwrap();
        assert_eq!(parsed.num().coeffs()[0].to_string(), big);
        assert!(serde_json::to_string(&parsed).unwrap().contains(big));
    }
}
