//! Exact q-umbral calculus over the field of rational functions in `q`.
//!
//! The crate is layered bottom-up:
//!
//! - [`qfield`]: `Z[q]` polynomials and the field `Q(q)` ([`QRat`])
//! - [`qcombinatorics`]: q-integers, q-factorials, Gaussian binomials,
//!   q-multinomials, weak compositions and q-Pochhammer products
//! - [`qpolynomial`]: polynomials in `x` over `Q(q)` with the q-derivative
//!   and the Jackson integral
//! - [`qumbral`]: truncated power series in `t` acting on polynomials as
//!   linear functionals (pairing) and as operators (`t` acts as `D_q`)
//! - [`qbernoulli`]: q-Bernoulli numbers and polynomials of every order and
//!   the basis-expansion identities built on them
//! - [`verify`]: named identity-verification suites with deterministic reports

pub mod error;
pub mod qbernoulli;
pub mod qcombinatorics;
pub mod qfield;
pub mod qpolynomial;
pub mod qumbral;
pub mod verify;

pub use error::{Error, Result};
pub use qbernoulli::{BernoulliCache, Basis, ExpansionResult};
pub use qcombinatorics::Composition;
pub use qfield::{IntPolyQ, QRat};
pub use qpolynomial::XPoly;
pub use qumbral::TSeries;
