//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients, including content/primitive-part gcd.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial `c_0 + c_1 q + ... + c_d q^d` over the integers.
///
/// The zero polynomial is stored as an empty coefficient vector; every other
/// polynomial has a nonzero last coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolyQ {
    coeffs: Vec<BigInt>,
}

impl IntPolyQ {
    pub fn zero() -> Self {
        IntPolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolyQ { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The polynomial divided by its content, with the sign left untouched.
    pub fn primitive_part(&self) -> IntPolyQ {
        if self.is_zero() {
            return self.clone();
        }
        self.div_scalar_exact(&self.content())
    }

    pub fn scale(&self, c: &BigInt) -> IntPolyQ {
        if c.is_zero() {
            return IntPolyQ::zero();
        }
        IntPolyQ {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> IntPolyQ {
        if c.is_one() {
            return self.clone();
        }
        IntPolyQ {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> IntPolyQ {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolyQ { coeffs }
    }

    /// Exact quotient `self / divisor` over the integers, or `None` if the
    /// division leaves a remainder or needs fractions.
    pub fn div_exact(&self, divisor: &IntPolyQ) -> Option<IntPolyQ> {
        let dd = divisor.degree()?;
        if divisor.is_one() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(IntPolyQ::zero());
        }
        if dd == 0 {
            let c = &divisor.coeffs[0];
            if self.coeffs.iter().all(|x| x.is_multiple_of(c)) {
                return Some(IntPolyQ {
                    coeffs: self.coeffs.iter().map(|x| x / c).collect(),
                });
            }
            return None;
        }
        let ds = self.degree()?;
        if ds < dd {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        for i in (0..=ds - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * d;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolyQ::from_coeffs(quot))
    }

    /// Remainder of `self` modulo `divisor`, up to a nonzero integer factor.
    ///
    /// Steps whose leading coefficient is divisible by the divisor's leading
    /// coefficient are done without scaling, which keeps coefficients small
    /// for the monic divisors that dominate q-analogue computations.
    fn sparse_pseudo_rem(&self, divisor: &IntPolyQ) -> IntPolyQ {
        let dd = divisor.degree().expect("pseudo-remainder by zero");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top_idx = rem.len() - 1;
            let shift = top_idx - dd;
            let top = rem[top_idx].clone();
            let (qc, r) = top.div_rem(lead);
            if r.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &qc * d;
                }
            } else {
                for c in rem.iter_mut() {
                    *c *= lead;
                }
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] -= &top * d;
                }
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        IntPolyQ::from_coeffs(rem)
    }

    /// Greatest common divisor over the integers, content included, with a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPolyQ) -> IntPolyQ {
        if self.is_zero() {
            return other.with_positive_leading();
        }
        if other.is_zero() {
            return self.with_positive_leading();
        }
        if self.is_one() || other.is_one() {
            return IntPolyQ::one();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        if self.is_constant() || other.is_constant() {
            return IntPolyQ::constant(c);
        }
        let mut a = self.div_scalar_exact(&ca);
        let mut b = other.div_scalar_exact(&cb);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if a == b {
            return a.scale(&c).with_positive_leading();
        }
        let g = super::modgcd::gcd_primitive(&a, &b).unwrap_or_else(|| primitive_prs(a, b));
        g.scale(&c).with_positive_leading()
    }

    /// Gcd by the primitive polynomial remainder sequence. Slower than the
    /// modular route but shares no code with it.
    pub fn gcd_prs(&self, other: &IntPolyQ) -> IntPolyQ {
        if self.is_zero() {
            return other.with_positive_leading();
        }
        if other.is_zero() {
            return self.with_positive_leading();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        if self.is_constant() || other.is_constant() {
            return IntPolyQ::constant(c);
        }
        let mut a = self.div_scalar_exact(&ca);
        let mut b = other.div_scalar_exact(&cb);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        primitive_prs(a, b).scale(&c).with_positive_leading()
    }

    pub(crate) fn with_positive_leading(&self) -> IntPolyQ {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Renders with `q^k` powers; `latex` wraps exponents in braces.
    pub(crate) fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ if latex => format!("q^{{{k}}}"),
                _ => format!("q^{k}"),
            };
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&power);
        }
        out
    }
}

/// Primitive remainder sequence on primitive inputs with `deg a >= deg b`.
fn primitive_prs(mut a: IntPolyQ, mut b: IntPolyQ) -> IntPolyQ {
    loop {
        if b.is_constant() {
            return IntPolyQ::one();
        }
        let r = a.sparse_pseudo_rem(&b);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = r.primitive_part();
    }
}

impl fmt::Display for IntPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &IntPolyQ {
    type Output = IntPolyQ;

    fn add(self, rhs: &IntPolyQ) -> IntPolyQ {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPolyQ::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolyQ {
    type Output = IntPolyQ;

    fn sub(self, rhs: &IntPolyQ) -> IntPolyQ {
        self + &(-rhs)
    }
}

impl Neg for &IntPolyQ {
    type Output = IntPolyQ;

    fn neg(self) -> IntPolyQ {
        IntPolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPolyQ {
    type Output = IntPolyQ;

    fn mul(self, rhs: &IntPolyQ) -> IntPolyQ {
        if self.is_zero() || rhs.is_zero() {
            return IntPolyQ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolyQ::from_coeffs(coeffs)
    }
}

impl PartialOrd for IntPolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down. Only used to make
/// map keys and test output deterministic.
impl Ord for IntPolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
