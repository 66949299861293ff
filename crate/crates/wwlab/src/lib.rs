//! wwlab — exact computation and verification for the weighted-words
//! Capparelli and Primc partition identities.
//!
//! The crate works with partitions into coloured integers subject to
//! gap-matrix difference conditions and with their generating functions,
//! computed as truncated q-series over integer Laurent polynomials in the
//! colour variables `a, b, c, d`. Everything is coefficient-exact; every
//! identity check compares polynomials term by term, never numerically.
//!
//! Module map:
//! - [`qseries`]: the series/polynomial engine (arithmetic, Pochhammer
//!   products, unit inversion, colour substitutions and dilations);
//! - [`enumeration`]: declarative coloured-partition families and their
//!   exhaustive enumeration — the ground-truth oracle;
//! - [`recurrences`]: the Capparelli and Primc recurrence systems and the
//!   auxiliary H-sequence;
//! - [`closed_forms`]: the explicit finite formulas (u-sequence, finite
//!   identities, b=1 corollaries) and the infinite-product truncations;
//! - [`bijection`]: the colour-exchange bijection between Capparelli pairs
//!   and Primc partitions, with full traces and inverses;
//! - [`oracles`]: small independent brute-force counters used to cross-check
//!   everything above;
//! - [`verify`]: named theorem checks producing deterministic reports — the
//!   engine behind the `wwlab verify` command.

pub mod bijection;
pub mod closed_forms;
pub mod enumeration;
pub mod oracles;
pub mod qseries;
pub mod recurrences;
pub mod verify;
