//! Identity-verification suites.
//!
//! Each suite checks one family of exact identities over a bounded parameter
//! range and returns a [`VerifyReport`] with one entry per case. Cases run in
//! parallel; reports are sorted by case key so output never depends on
//! scheduling. Every suite reads q-Bernoulli values through the supplied
//! [`BernoulliCache`], so a corrupted cache entry shows up as failures.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::qbernoulli::{
    bernoulli_numbers_rec, expand_in_bernoulli, expand_in_higher_bernoulli, expand_in_qpoch,
    expand_in_qpoch_basis, higher_number_multinomial_from, qpoch_in_bernoulli_closed,
    thm6_coefficients, thm6_low_prefactor, thm6_low_prefactor_unsimplified, BernoulliCache,
};
use crate::qcombinatorics::{binomial, qbinomial, qfactorial, qint, qpochhammer_x_minus_1};
use crate::qfield::{IntPolyQ, QRat};
use crate::qpolynomial::XPoly;
use crate::qumbral::{eq_minus_one_over_t, eq_series, sheffer_check};

/// Number of random polynomials in the expansion round-trip suite.
pub const ROUND_TRIP_SAMPLES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Prop1,
    Classical,
    Sheffer,
    Thm2,
    Lemma3,
    Thm4,
    Thm5,
    Thm6,
    Eq21,
    Eq23,
    Eq24,
    Eq28,
    Eq30,
    Eq31,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const EACH: [Suite; 14] = [
        Suite::Prop1,
        Suite::Classical,
        Suite::Sheffer,
        Suite::Thm2,
        Suite::Lemma3,
        Suite::Thm4,
        Suite::Thm5,
        Suite::Thm6,
        Suite::Eq21,
        Suite::Eq23,
        Suite::Eq24,
        Suite::Eq28,
        Suite::Eq30,
        Suite::Eq31,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Classical => "classical",
            Suite::Sheffer => "sheffer",
            Suite::Thm2 => "thm2",
            Suite::Lemma3 => "lemma3",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Thm6 => "thm6",
            Suite::Eq21 => "eq21",
            Suite::Eq23 => "eq23",
            Suite::Eq24 => "eq24",
            Suite::Eq28 => "eq28",
            Suite::Eq30 => "eq30",
            Suite::Eq31 => "eq31",
            Suite::All => "all",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Suite::Prop1 => "B_{n,q} by series inversion equals B_{n,q} by recurrence",
            Suite::Classical => "B_{n,q} at q = 1 equals the classical Bernoulli number",
            Suite::Sheffer => {
                "<g(t) t^k | s_n(x)> = [n]_q! delta_{n,k} for the Bernoulli, \
                 (x-1)_q^n and order-r Bernoulli sequences"
            }
            Suite::Thm2 => "random polynomials expand in the Bernoulli basis and reconstruct",
            Suite::Lemma3 => "order-r numbers by series power equal the multinomial sum",
            Suite::Thm4 => {
                "B^{(r)}_{n,q}(x) = sum_k binom(n,k)_q B^{(r-1)}_{n-k,q} B_{k,q}(x)"
            }
            Suite::Thm5 => "polynomials expand in the order-r basis and reconstruct",
            Suite::Thm6 => {
                "closed-form order-r coefficients of B_{n,q}(x) equal the direct pairing"
            }
            Suite::Eq21 => "D_q B_{n,q}(x) = [n]_q B_{n-1,q}(x)",
            Suite::Eq23 => "<(e_q(t)-1)/t | p(x)> = int_0^1 p(x) d_q x",
            Suite::Eq24 => "int_0^1 B_{n,q}(x) d_q x = delta_{n,0}",
            Suite::Eq28 => "B_{n,q}(x) = sum_k binom(n,k)_q B_{n-k,q}(1) (x-1)_q^k",
            Suite::Eq30 => "D_q^k (x-1)_q^n = [n]_q!/[n-k]_q! (x-1)_q^{n-k}",
            Suite::Eq31 => {
                "(x-1)_q^n in the Bernoulli basis matches the closed form, and the two \
                 basis changes are mutually inverse"
            }
            Suite::All => "every suite",
        }
    }

    /// Default `(n_max, r_max)`; `r_max` is `None` for suites without an order.
    pub fn default_bounds(&self) -> (usize, Option<usize>) {
        match self {
            Suite::Prop1 => (25, None),
            Suite::Classical => (20, None),
            Suite::Sheffer => (10, Some(3)),
            Suite::Thm2 => (10, None),
            Suite::Lemma3 => (8, Some(4)),
            Suite::Thm4 => (10, Some(4)),
            Suite::Thm5 => (8, Some(3)),
            Suite::Thm6 => (8, Some(3)),
            Suite::Eq21 | Suite::Eq23 | Suite::Eq24 | Suite::Eq28 | Suite::Eq30 | Suite::Eq31 => {
                (10, None)
            }
            Suite::All => (25, Some(4)),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Bounds and seed for a verification run. `None` means the suite default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: Option<usize>,
    pub r_max: Option<usize>,
    pub seed: u64,
}

impl VerifyOptions {
    fn bounds(&self, suite: Suite) -> (usize, usize) {
        let (n, r) = suite.default_bounds();
        (
            self.n_max.unwrap_or(n),
            self.r_max.or(r).unwrap_or(1).max(1),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub key: String,
    pub pass: bool,
    /// Error text when the case could not be evaluated.
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub identity: Suite,
    pub ranges: String,
    pub cases: Vec<CaseResult>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// JSON form without the wall time, so identical runs serialize identically.
    pub fn to_json(&self) -> serde_json::Value {
        let cases: Vec<_> = self
            .cases
            .iter()
            .map(|c| match &c.detail {
                Some(d) => json!({ "key": c.key, "pass": c.pass, "detail": d }),
                None => json!({ "key": c.key, "pass": c.pass }),
            })
            .collect();
        json!({
            "identity": self.identity.name(),
            "description": self.identity.description(),
            "ranges": self.ranges,
            "pass": self.pass(),
            "cases": cases,
            "notes": self.notes,
        })
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite, opts: &VerifyOptions, cache: &BernoulliCache) -> Vec<VerifyReport> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| run_one(s, opts, cache)).collect(),
        s => vec![run_one(s, opts, cache)],
    }
}

fn run_one(suite: Suite, opts: &VerifyOptions, cache: &BernoulliCache) -> VerifyReport {
    let start = Instant::now();
    let (n, r) = opts.bounds(suite);
    let (ranges, mut cases, notes) = match suite {
        Suite::Prop1 => prop1(cache, n),
        Suite::Classical => classical(cache, n),
        Suite::Sheffer => sheffer(cache, n, r),
        Suite::Thm2 => thm2(cache, n, opts.seed),
        Suite::Lemma3 => lemma3(cache, n, r),
        Suite::Thm4 => thm4(cache, n, r),
        Suite::Thm5 => thm5(cache, n, r, opts.seed),
        Suite::Thm6 => thm6(cache, n, r),
        Suite::Eq21 => eq21(cache, n),
        Suite::Eq23 => eq23(n, opts.seed),
        Suite::Eq24 => eq24(cache, n),
        Suite::Eq28 => eq28(cache, n),
        Suite::Eq30 => eq30(n),
        Suite::Eq31 => eq31(cache, n),
        Suite::All => unreachable!("expanded by run"),
    };
    cases.sort_by(|a, b| a.key.cmp(&b.key));
    VerifyReport {
        identity: suite,
        ranges,
        cases,
        notes,
        elapsed: start.elapsed(),
    }
}

type SuiteOutput = (String, Vec<CaseResult>, Vec<String>);

fn run_cases<T, K, C>(params: Vec<T>, key: K, check: C) -> Vec<CaseResult>
where
    T: Send + Sync,
    K: Fn(&T) -> String + Sync,
    C: Fn(&T) -> Result<bool> + Sync,
{
    params
        .par_iter()
        .map(|p| {
            let key = key(p);
            match check(p) {
                Ok(pass) => CaseResult {
                    key,
                    pass,
                    detail: None,
                },
                Err(e) => CaseResult {
                    key,
                    pass: false,
                    detail: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn delta(n: usize, k: usize) -> QRat {
    if n == k {
        QRat::one()
    } else {
        QRat::zero()
    }
}

/// A polynomial in `x` of exact degree `degree` whose coefficients are
/// integer polynomials in `q` of degree at most 2 with entries in `-4..=4`.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize) -> XPoly {
    let mut coeffs: Vec<QRat> = (0..=degree).map(|_| random_coeff(rng)).collect();
    while coeffs[degree].is_zero() {
        coeffs[degree] = random_coeff(rng);
    }
    XPoly::new(coeffs)
}

fn random_coeff<R: Rng>(rng: &mut R) -> QRat {
    let len = rng.gen_range(1..=3);
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
    QRat::from_poly(IntPolyQ::from_i64s(&c))
}

/// Random polynomials with degrees drawn from `0..=max_degree`.
pub fn random_polys(seed: u64, count: usize, max_degree: usize) -> Vec<XPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(0..=max_degree);
            random_poly(&mut rng, d)
        })
        .collect()
}

/// Classical Bernoulli numbers with `B_1 = -1/2`, from
/// `sum_{k<=n} binom(n+1,k) B_k = 0`.
pub fn classical_bernoulli(n_max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=n_max {
        let s: BigRational = (0..n)
            .map(|k| BigRational::from_integer(binomial(n + 1, k as i64)) * &b[k])
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

fn prop1(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    let series = cache.numbers(n_max);
    let rec = bernoulli_numbers_rec(n_max);
    let cases = run_cases(
        (0..=n_max).collect(),
        |n| format!("n={n:02}"),
        |&n| Ok(series[n] == rec[n]),
    );
    (format!("0 <= n <= {n_max}"), cases, Vec::new())
}

fn classical(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    let numbers = cache.numbers(n_max);
    let oracle = classical_bernoulli(n_max);
    let one = BigRational::one();
    let cases = run_cases(
        (0..=n_max).collect(),
        |n| format!("n={n:02}"),
        |&n| {
            let at_one = numbers[n].eval(&one)?;
            let odd_vanishes = n < 3 || n % 2 == 0 || at_one.is_zero();
            Ok(at_one == oracle[n] && odd_vanishes)
        },
    );
    (format!("0 <= n <= {n_max}"), cases, Vec::new())
}

fn sheffer(cache: &BernoulliCache, n_max: usize, r_max: usize) -> SuiteOutput {
    let len = n_max + 1;
    cache.numbers(n_max);
    let mut families: Vec<(String, usize)> = vec![("qpoch".to_string(), 0)];
    families.extend((1..=r_max).map(|r| (format!("bernoulli r={r}"), r)));
    let per_family: Vec<Vec<CaseResult>> = families
        .par_iter()
        .map(|(label, r)| {
            let (g, s): (_, Vec<XPoly>) = if *r == 0 {
                (eq_series(len), (0..len).map(qpochhammer_x_minus_1).collect())
            } else {
                (
                    eq_minus_one_over_t(len).pow(*r),
                    (0..len).map(|n| cache.higher_poly(n, *r)).collect(),
                )
            };
            match sheffer_check(&g, &s) {
                Ok(report) => report
                    .cases
                    .into_iter()
                    .map(|c| CaseResult {
                        key: format!("{label} n={:02} k={:02}", c.n, c.k),
                        pass: c.pass,
                        detail: None,
                    })
                    .collect(),
                Err(e) => vec![CaseResult {
                    key: label.clone(),
                    pass: false,
                    detail: Some(e.to_string()),
                }],
            }
        })
        .collect();
    (
        format!("0 <= n, k <= {n_max}; 1 <= r <= {r_max}"),
        per_family.into_iter().flatten().collect(),
        Vec::new(),
    )
}

fn thm2(cache: &BernoulliCache, max_degree: usize, seed: u64) -> SuiteOutput {
    let polys = random_polys(seed, ROUND_TRIP_SAMPLES, max_degree);
    cache.numbers(max_degree);
    let cases = run_cases(
        polys.into_iter().enumerate().collect(),
        |(i, p)| format!("sample={i:02} deg={:02}", p.degree().unwrap_or(0)),
        |(_, p)| Ok(expand_in_bernoulli(p).reconstruct(cache) == *p),
    );
    (
        format!("{ROUND_TRIP_SAMPLES} random polynomials, degree <= {max_degree}, seed {seed}"),
        cases,
        Vec::new(),
    )
}

fn lemma3(cache: &BernoulliCache, n_max: usize, r_max: usize) -> SuiteOutput {
    let rec = bernoulli_numbers_rec(n_max);
    cache.numbers(n_max);
    let params: Vec<(usize, usize)> = (1..=r_max)
        .flat_map(|r| (0..=n_max).map(move |n| (n, r)))
        .collect();
    let cases = run_cases(
        params,
        |(n, r)| format!("r={r} n={n:02}"),
        |&(n, r)| Ok(cache.higher_number(n, r) == higher_number_multinomial_from(&rec, n, r)),
    );
    (
        format!("0 <= n <= {n_max}; 1 <= r <= {r_max}"),
        cases,
        Vec::new(),
    )
}

fn thm4(cache: &BernoulliCache, n_max: usize, r_max: usize) -> SuiteOutput {
    cache.numbers(n_max);
    let params: Vec<(usize, usize)> = (2..=r_max)
        .flat_map(|r| (0..=n_max).map(move |n| (n, r)))
        .collect();
    let cases = run_cases(
        params,
        |(n, r)| format!("r={r} n={n:02}"),
        |&(n, r)| {
            let rhs: XPoly = (0..=n)
                .map(|k| {
                    let c = &qbinomial(n, k as i64) * &cache.higher_number(n - k, r - 1);
                    cache.poly(k).scale(&c)
                })
                .sum();
            Ok(cache.higher_poly(n, r) == rhs)
        },
    );
    (
        format!("0 <= n <= {n_max}; 2 <= r <= {r_max}"),
        cases,
        Vec::new(),
    )
}

fn thm5(cache: &BernoulliCache, max_degree: usize, r_max: usize, seed: u64) -> SuiteOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cache.numbers(max_degree);
    let mut params = Vec::new();
    for r in 1..=r_max {
        for d in 0..=max_degree {
            params.push((r, d, "monomial", XPoly::x_pow(d)));
            params.push((r, d, "random", random_poly(&mut rng, d)));
        }
    }
    let cases = run_cases(
        params,
        |(r, d, kind, _)| format!("r={r} deg={d:02} {kind}"),
        |(r, _, _, p)| Ok(expand_in_higher_bernoulli(p, *r).reconstruct(cache) == *p),
    );
    (
        format!("degree <= {max_degree}; 1 <= r <= {r_max}; seed {seed}"),
        cases,
        Vec::new(),
    )
}

/// Corrections applied when turning the printed closed form into code.
pub fn thm6_notes() -> Vec<String> {
    vec![
        "k >= r regime: the printed denominator [r]_q! binom(r,k)_q vanishes for k > r; \
         the derivation gives the prefactor binom(n,k-r)_q / ([r]_q! binom(k,r)_q), which is \
         what is checked"
            .to_string(),
        "inner sum: the printed index m_1+...+m_j+m is read as the composition \
         m_1+...+m_j = m"
            .to_string(),
        "k < r regime: the printed bound n-k+r and subscript n+r-k denote the same index; \
         n+r-k is used throughout"
            .to_string(),
        "k < r regime: the simplified prefactor binom(r,k)_q / ([r]_q! binom(n+r-k,r-k)_q) is \
         checked case by case against 1 / ([k]_q! [n+r-k]_q ... [n+1]_q)"
            .to_string(),
    ]
}

fn thm6(cache: &BernoulliCache, n_max: usize, r_max: usize) -> SuiteOutput {
    cache.numbers(n_max + r_max);
    let mut params: Vec<(usize, usize, Option<usize>)> = Vec::new();
    for r in 1..=r_max {
        for n in 0..=n_max {
            params.push((n, r, None));
            params.extend((0..r.min(n + 1)).map(|k| (n, r, Some(k))));
        }
    }
    let cases = run_cases(
        params,
        |(n, r, k)| match k {
            None => format!("r={r} n={n:02} coefficients"),
            Some(k) => format!("r={r} n={n:02} prefactor k={k}"),
        },
        |&(n, r, k)| {
            Ok(match k {
                None => {
                    thm6_coefficients(cache, n, r)
                        == expand_in_higher_bernoulli(&cache.poly(n), r)
                }
                Some(k) => {
                    thm6_low_prefactor(n, r, k) == thm6_low_prefactor_unsimplified(n, r, k)
                }
            })
        },
    );
    (
        format!("0 <= n <= {n_max}; 1 <= r <= {r_max}"),
        cases,
        thm6_notes(),
    )
}

fn eq21(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    cache.numbers(n_max);
    let cases = run_cases(
        (1..=n_max).collect(),
        |n| format!("n={n:02}"),
        |&n| Ok(cache.poly(n).dq() == cache.poly(n - 1).scale(&qint(n))),
    );
    (format!("1 <= n <= {n_max}"), cases, Vec::new())
}

fn eq23(max_degree: usize, seed: u64) -> SuiteOutput {
    let mut params: Vec<(String, XPoly)> = (0..=max_degree)
        .map(|d| (format!("monomial deg={d:02}"), XPoly::x_pow(d)))
        .collect();
    params.extend(
        random_polys(seed, max_degree + 1, max_degree)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("random sample={i:02}"), p)),
    );
    let kernel = eq_minus_one_over_t(max_degree + 1);
    let cases = run_cases(
        params,
        |(key, _)| key.clone(),
        |(_, p)| Ok(kernel.pairing(p)? == p.jackson_integral_01()),
    );
    (
        format!("degree <= {max_degree}; seed {seed}"),
        cases,
        Vec::new(),
    )
}

fn eq24(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    cache.numbers(n_max);
    let cases = run_cases(
        (0..=n_max).collect(),
        |n| format!("n={n:02}"),
        |&n| Ok(cache.poly(n).jackson_integral_01() == delta(n, 0)),
    );
    (format!("0 <= n <= {n_max}"), cases, Vec::new())
}

fn eq28(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    cache.numbers(n_max);
    let cases = run_cases(
        (0..=n_max).collect(),
        |n| format!("n={n:02}"),
        |&n| {
            let closed = expand_in_qpoch(cache, n);
            let poly = cache.poly(n);
            Ok(closed.reconstruct(cache) == poly
                && closed.coeffs == expand_in_qpoch_basis(&poly).coeffs)
        },
    );
    (format!("0 <= n <= {n_max}"), cases, Vec::new())
}

fn eq30(n_max: usize) -> SuiteOutput {
    let params: Vec<(usize, usize)> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .collect();
    let cases = run_cases(
        params,
        |(n, k)| format!("n={n:02} k={k:02}"),
        |&(n, k)| {
            let ratio = &qfactorial(n) / &qfactorial(n - k);
            Ok(qpochhammer_x_minus_1(n).dq_iter(k) == qpochhammer_x_minus_1(n - k).scale(&ratio))
        },
    );
    (format!("0 <= k <= n <= {n_max}"), cases, Vec::new())
}

fn eq31(cache: &BernoulliCache, n_max: usize) -> SuiteOutput {
    cache.numbers(n_max);
    // Row n of `to_bernoulli` holds (x-1)_q^n in the Bernoulli basis; row n of
    // `to_qpoch` holds B_{n,q}(x) in the (x-1)_q basis.
    let to_bernoulli: Vec<Vec<QRat>> = (0..=n_max)
        .into_par_iter()
        .map(qpoch_in_bernoulli_closed)
        .collect();
    let to_qpoch: Vec<Vec<QRat>> = (0..=n_max)
        .into_par_iter()
        .map(|n| expand_in_qpoch(cache, n).coeffs)
        .collect();
    let mut params: Vec<(usize, bool)> = (0..=n_max).map(|n| (n, false)).collect();
    params.extend((0..=n_max).map(|n| (n, true)));
    let cases = run_cases(
        params,
        |(n, inverse)| {
            if *inverse {
                format!("inverse n={n:02}")
            } else {
                format!("closed form n={n:02}")
            }
        },
        |&(n, inverse)| {
            if !inverse {
                let direct = expand_in_bernoulli(&qpochhammer_x_minus_1(n));
                return Ok(direct.coeffs == to_bernoulli[n]
                    && direct.reconstruct(cache) == qpochhammer_x_minus_1(n));
            }
            Ok((0..=n).all(|j| {
                let entry: QRat = (j..=n)
                    .map(|k| &to_bernoulli[n][k] * &to_qpoch[k][j])
                    .sum();
                entry == delta(n, j)
            }))
        },
    );
    (format!("0 <= n <= {n_max}"), cases, Vec::new())
}
