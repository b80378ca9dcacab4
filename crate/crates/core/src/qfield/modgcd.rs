//! Multi-prime modular gcd for primitive polynomials over the integers.
//!
//! The gcd is computed modulo a sequence of word-sized primes, combined by
//! Chinese remaindering, and accepted once the lifted candidate divides both
//! inputs. A prime whose image has lower degree than the ones seen so far
//! discards the accumulated images; a candidate that divides both inputs and
//! has the minimal image degree is the gcd.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::IntPolyQ;

const PRIME_COUNT: usize = 256;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn image(poly: &IntPolyQ, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = poly.coeffs().iter().map(|c| reduce(c, p)).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod b` over `Z/p`, in place.
fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv_lead = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let factor = mul_mod(a[top], inv_lead, p);
        if factor != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                let sub = mul_mod(factor, bj, p);
                let slot = &mut a[shift + j];
                *slot = if *slot >= sub { *slot - sub } else { *slot + p - sub };
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd over `Z/p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv_lead = inv_mod(*a.last().expect("gcd of nonzero images"), p);
    a.iter().map(|&c| mul_mod(c, inv_lead, p)).collect()
}

fn symmetric_lift(c: &BigInt, modulus: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - modulus
    } else {
        c.clone()
    }
}

/// Gcd of two primitive polynomials of positive degree, normalized to a
/// positive leading coefficient. Returns `None` if the prime table runs out.
pub(super) fn gcd_primitive(a: &IntPolyQ, b: &IntPolyQ) -> Option<IntPolyQ> {
    let la = a.leading().unwrap();
    let lb = b.leading().unwrap();
    let gamma = la.gcd(lb);
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();

    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut best_degree = usize::MAX;
    let mut last_candidate: Option<IntPolyQ> = None;

    for &p in primes() {
        let big_p = BigInt::from(p);
        if la.is_multiple_of(&big_p) || lb.is_multiple_of(&big_p) {
            continue;
        }
        let ia = image(a, p);
        let ib = image(b, p);
        debug_assert!(ia.len() == da + 1 && ib.len() == db + 1);
        let g = gcd_mod(ia, ib, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Some(IntPolyQ::one());
        }
        if deg > best_degree {
            continue;
        }
        let scale = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, p)).collect();
        if deg < best_degree {
            best_degree = deg;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = big_p;
            last_candidate = None;
        } else {
            let m_inv = inv_mod(reduce(&modulus, p), p);
            for (slot, &gp) in acc.iter_mut().zip(&g) {
                let cur = reduce(slot, p);
                let diff = if gp >= cur { gp - cur } else { gp + p - cur };
                let t = mul_mod(diff, m_inv, p);
                *slot += &modulus * BigInt::from(t);
            }
            modulus *= &big_p;
        }
        let half: BigInt = &modulus >> 1;
        let lifted = IntPolyQ::from_coeffs(
            acc.iter()
                .map(|c| symmetric_lift(c, &modulus, &half))
                .collect(),
        );
        let candidate = lifted.primitive_part().with_positive_leading();
        if last_candidate.as_ref() == Some(&candidate) {
            if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
                return Some(candidate);
            }
        }
        last_candidate = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_table() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert!(ps.iter().all(|&p| p < (1 << 62) && is_prime(p)));
        assert!(!is_prime(1 << 40));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn modular_gcd_basic() {
        let f = IntPolyQ::from_i64s(&[3, 2]);
        let a = &f * &IntPolyQ::from_i64s(&[-1, 1]);
        let b = &f * &IntPolyQ::from_i64s(&[1, 3]);
        assert_eq!(gcd_primitive(&a, &b), Some(f));
        let c = IntPolyQ::from_i64s(&[1, 1, 1]);
        let d = IntPolyQ::from_i64s(&[1, -1]);
        assert_eq!(gcd_primitive(&c, &d), Some(IntPolyQ::one()));
    }
}
