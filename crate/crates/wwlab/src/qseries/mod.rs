//! Exact arithmetic for truncated q-power series whose coefficients are
//! integer Laurent polynomials in the four colour variables `a, b, c, d`.
//!
//! This is the coefficient engine under everything else:
//! - [`ColourMonomial`]: exponent vectors, negative exponents allowed;
//! - [`CoeffPoly`]: sparse integer combinations with exact arithmetic;
//! - [`QSeries`]: per-series truncation order, strict about mixing orders;
//! - [`pochhammer`]: finite and truncated-infinite products `(x;q)_n`;
//! - [`Substitution`]: colour specialisations (`b := c`, `b := 1`) and
//!   dilations (`q -> q^m` with per-colour q-shifts).
//!
//! Division exists only for series with constant term exactly 1
//! ([`QSeries::invert_unit`]); factors like `1-b` are never inverted, and the
//! recurrence modules cancel them symbolically instead.

mod monomial;
mod poly;
mod series;

pub use monomial::{print_order, ColourMonomial, Var};
pub use poly::CoeffPoly;
pub use series::{pochhammer, Mismatch, QSeries, SeriesError, Substitution};
