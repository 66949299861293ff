//! Truncated q-power series with [`CoeffPoly`] coefficients.
//!
//! Every series carries its own exclusive truncation order `N` and stores the
//! coefficients of `q^0 .. q^(N-1)` exactly. Binary operations demand equal
//! truncation orders; nothing ever re-truncates implicitly. q-exponents are
//! never negative — operations that would produce one fail instead.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use super::monomial::{ColourMonomial, Var};
use super::poly::CoeffPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {lhs} vs {rhs}")]
    TruncMismatch { lhs: usize, rhs: usize },
    #[error("cannot invert: constant term is `{found}`, not 1")]
    NonUnitConstant { found: String },
    #[error("substitution sends `{term}` to negative q-exponent {exp}")]
    NegativeQExponent { term: String, exp: i64 },
    #[error("infinite Pochhammer product needs start exponent >= 1")]
    InfiniteProductFromZero,
    #[error("Pochhammer step must be positive")]
    ZeroStep,
    #[error("q-dilation factor must be >= 1")]
    ZeroDilation,
    #[error("shift by q^-{shift} hits nonzero coefficient at q^{exp}")]
    NegativeShift { shift: usize, exp: usize },
    #[error("requested truncation {requested} exceeds available {available}")]
    TruncTooLarge { requested: usize, available: usize },
    #[error("series must have truncation order >= 1")]
    EmptyTruncation,
}

/// A q-power series truncated at an exclusive order bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<CoeffPoly>,
}

impl QSeries {
    pub fn zero(trunc: usize) -> Self {
        QSeries {
            coeffs: vec![CoeffPoly::zero(); trunc],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = QSeries::zero(trunc);
        if trunc > 0 {
            s.coeffs[0] = CoeffPoly::one();
        }
        s
    }

    /// Builds `sum coeff * mono * q^exp` from the listed terms; terms at or
    /// beyond `trunc` are ignored.
    pub fn from_terms(terms: &[(i64, ColourMonomial, usize)], trunc: usize) -> Self {
        let mut s = QSeries::zero(trunc);
        for &(c, m, e) in terms {
            if e < trunc {
                s.coeffs[e].add_term(m, c);
            }
        }
        s
    }

    /// The polynomial `1 + coeff * mono * q^exp` as a series.
    pub fn binomial(coeff: i64, mono: ColourMonomial, exp: usize, trunc: usize) -> Self {
        QSeries::from_terms(&[(1, ColourMonomial::ONE, 0), (coeff, mono, exp)], trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Option<&CoeffPoly> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[CoeffPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CoeffPoly::is_zero)
    }

    fn check_same_trunc(&self, rhs: &QSeries) -> Result<(), SeriesError> {
        if self.trunc() != rhs.trunc() {
            return Err(SeriesError::TruncMismatch {
                lhs: self.trunc(),
                rhs: rhs.trunc(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_same_trunc(rhs)?;
        let mut out = self.clone();
        for (lhs, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *lhs += r;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }

    /// Exact truncated product.
    pub fn mul(&self, rhs: &QSeries) -> Result<QSeries, SeriesError> {
        self.check_same_trunc(rhs)?;
        let trunc = self.trunc();
        let mut out = QSeries::zero(trunc);
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, r) in rhs.coeffs.iter().take(trunc - i).enumerate() {
                if r.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(p * r);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by a fixed polynomial (no q-shift, so no
    /// truncation concerns).
    pub fn mul_poly(&self, p: &CoeffPoly) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Multiplies by the monomial term `coeff * mono * q^shift`; terms pushed
    /// past the truncation order fall away, which is the correct truncated
    /// semantics.
    pub fn mul_term(&self, coeff: i64, mono: ColourMonomial, shift: usize) -> QSeries {
        let trunc = self.trunc();
        let mut out = QSeries::zero(trunc);
        let p = CoeffPoly::term(mono, coeff);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || i + shift >= trunc {
                continue;
            }
            out.coeffs[i + shift] = c * &p;
        }
        out
    }

    /// Divides by `q^shift`. The low coefficients must vanish; the truncation
    /// order drops by `shift` because the top coefficients are unknown.
    pub fn shift_down(&self, shift: usize) -> Result<QSeries, SeriesError> {
        for (i, c) in self.coeffs.iter().take(shift).enumerate() {
            if !c.is_zero() {
                return Err(SeriesError::NegativeShift { shift, exp: i });
            }
        }
        Ok(QSeries {
            coeffs: self.coeffs[shift.min(self.trunc())..].to_vec(),
        })
    }

    /// Explicitly restricts to a lower truncation order.
    pub fn restricted(&self, trunc: usize) -> Result<QSeries, SeriesError> {
        if trunc > self.trunc() {
            return Err(SeriesError::TruncTooLarge {
                requested: trunc,
                available: self.trunc(),
            });
        }
        Ok(QSeries {
            coeffs: self.coeffs[..trunc].to_vec(),
        })
    }

    /// Multiplicative inverse of a series whose constant term is the
    /// constant polynomial 1. Anything else — including units of the
    /// polynomial ring like `1-b` — is refused; callers must cancel such
    /// factors symbolically.
    pub fn invert_unit(&self) -> Result<QSeries, SeriesError> {
        let Some(c0) = self.coeffs.first() else {
            return Err(SeriesError::EmptyTruncation);
        };
        if !c0.is_one() {
            return Err(SeriesError::NonUnitConstant {
                found: c0.to_string(),
            });
        }
        let trunc = self.trunc();
        let mut inv = QSeries::zero(trunc);
        inv.coeffs[0] = CoeffPoly::one();
        for n in 1..trunc {
            // s[0] = 1, so t[n] = -sum_{i=1..=n} s[i] t[n-i].
            let mut acc = CoeffPoly::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[i] * &inv.coeffs[n - i]);
            }
            inv.coeffs[n] = -&acc;
        }
        Ok(inv)
    }

    /// Drops every term containing any of the listed variables with a
    /// positive exponent (i.e. sets those variables to zero). A negative
    /// exponent on a zeroed variable is undefined and fails.
    pub fn set_vars_to_zero(&self, vars: &[Var]) -> Result<QSeries, SeriesError> {
        let mut out = QSeries::zero(self.trunc());
        for (n, p) in self.coeffs.iter().enumerate() {
            for (m, &c) in p.iter() {
                let mut keep = true;
                for &v in vars {
                    let e = m.exp(v);
                    if e < 0 {
                        return Err(SeriesError::NegativeQExponent {
                            term: format!("{m}*q^{n}"),
                            exp: e as i64,
                        });
                    }
                    if e > 0 {
                        keep = false;
                        break;
                    }
                }
                if keep {
                    out.coeffs[n].add_term(*m, c);
                }
            }
        }
        Ok(out)
    }

    /// First q-exponent at which two equally truncated series disagree.
    pub fn first_mismatch(&self, rhs: &QSeries) -> Result<Option<Mismatch>, SeriesError> {
        self.check_same_trunc(rhs)?;
        for (n, (l, r)) in self.coeffs.iter().zip(&rhs.coeffs).enumerate() {
            if l != r {
                return Ok(Some(Mismatch {
                    q_exp: n,
                    lhs: l.clone(),
                    rhs: r.clone(),
                }));
            }
        }
        Ok(None)
    }

    /// JSON form `{trunc, coeffs}` with each coefficient rendered as
    /// `[[exponent-vector, integer], ...]` in canonical term order.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|p| {
                Value::Array(
                    p.terms_in_print_order()
                        .into_iter()
                        .map(|(m, c)| json!([m.exps(), c]))
                        .collect(),
                )
            })
            .collect();
        json!({ "trunc": self.trunc(), "coeffs": coeffs })
    }
}

/// The first disagreement between two series, kept for failure reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub q_exp: usize,
    pub lhs: CoeffPoly,
    pub rhs: CoeffPoly,
}

impl fmt::Display for QSeries {
    /// Text form `c0 + (poly)*q + (poly)*q^2 + ... + O(q^N)`, skipping zero
    /// coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match n {
                0 => {
                    if p.num_terms() == 1 {
                        write!(f, "{p}")?;
                    } else {
                        write!(f, "({p})")?;
                    }
                }
                1 => write!(f, "({p})*q")?,
                _ => write!(f, "({p})*q^{n}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc())
    }
}

/// The truncated Pochhammer-style product `prod_i (1 - coeff*mono*q^(start + i*step))`
/// over `i < n_factors`, or over all factors below the truncation order when
/// `n_factors` is `None`.
///
/// `(cq;q)_k` is `pochhammer(1, c, 1, 1, Some(k), trunc)`; `(-aq;q^2)_inf` is
/// `pochhammer(-1, a, 1, 2, None, trunc)`.
pub fn pochhammer(
    coeff: i64,
    mono: ColourMonomial,
    start_exp: usize,
    step: usize,
    n_factors: Option<usize>,
    trunc: usize,
) -> Result<QSeries, SeriesError> {
    if step == 0 {
        return Err(SeriesError::ZeroStep);
    }
    if n_factors.is_none() && start_exp == 0 {
        return Err(SeriesError::InfiniteProductFromZero);
    }
    let mut out = QSeries::one(trunc);
    let mut exp = start_exp;
    let mut i = 0usize;
    loop {
        if let Some(n) = n_factors {
            if i == n {
                break;
            }
        }
        if exp >= trunc {
            // Every remaining factor is 1 up to the truncation order.
            break;
        }
        // out *= (1 - coeff*mono*q^exp)
        out = out.sub(&out.mul_term(coeff, mono, exp))?;
        exp += step;
        i += 1;
    }
    Ok(out)
}

/// A simultaneous colour substitution with optional global q-dilation.
///
/// Each mapped variable is rewritten to a monomial times a q-power shift;
/// unmapped variables stay put. Applying `q -> q^m` plus per-variable shifts
/// rewrites a term `a^i b^j c^k d^l q^n` into the image monomial at
/// `q^(m*n + i*s_a + j*s_b + k*s_c + l*s_d)`.
#[derive(Clone, Debug)]
pub struct Substitution {
    q_power: usize,
    map: [Option<(ColourMonomial, i64)>; 4],
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution {
            q_power: 1,
            map: [None, None, None, None],
        }
    }
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    /// Global dilation `q -> q^m`, `m >= 1`.
    pub fn dilate_q(mut self, m: usize) -> Self {
        self.q_power = m;
        self
    }

    /// Sends `v` to `target * q^shift`.
    pub fn map_var(mut self, v: Var, target: ColourMonomial, shift: i64) -> Self {
        self.map[v.index()] = Some((target, shift));
        self
    }

    /// Sends `v` to 1 (stop tracking that colour).
    pub fn set_one(self, v: Var) -> Self {
        self.map_var(v, ColourMonomial::ONE, 0)
    }

    pub fn q_power(&self) -> usize {
        self.q_power
    }

    pub fn mapping(&self, v: Var) -> Option<(ColourMonomial, i64)> {
        self.map[v.index()]
    }

    /// Applies the substitution; the result keeps the original truncation
    /// order, and any term rewritten to a negative q-exponent is an error.
    pub fn apply(&self, s: &QSeries) -> Result<QSeries, SeriesError> {
        if self.q_power == 0 {
            return Err(SeriesError::ZeroDilation);
        }
        let trunc = s.trunc();
        let mut out = QSeries::zero(trunc);
        for (n, p) in s.coeffs.iter().enumerate() {
            for (m, &c) in p.iter() {
                let mut new_mono = ColourMonomial::ONE;
                let mut new_exp = (n * self.q_power) as i64;
                for v in Var::ALL {
                    let e = m.exp(v);
                    if e == 0 {
                        continue;
                    }
                    match self.map[v.index()] {
                        Some((target, shift)) => {
                            new_mono = new_mono.mul(&target.pow(e));
                            new_exp += shift * e as i64;
                        }
                        None => {
                            *new_mono.exp_mut(v) += e;
                        }
                    }
                }
                if new_exp < 0 {
                    return Err(SeriesError::NegativeQExponent {
                        term: format!("{m}*q^{n}"),
                        exp: new_exp,
                    });
                }
                let new_exp = new_exp as usize;
                if new_exp < trunc {
                    out.coeffs[new_exp].add_term(new_mono, c);
                }
            }
        }
        Ok(out)
    }
}
