//! Exact arithmetic in the field of rational functions `Q(q)`.
//!
//! `q` is a formal indeterminate throughout; numeric values of `q` only enter
//! through [`QRat::eval`].

mod intpoly;
mod modgcd;
mod rat;

pub use intpoly::IntPolyQ;
pub use rat::QRat;
