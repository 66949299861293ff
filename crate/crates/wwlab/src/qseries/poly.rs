//! Integer Laurent polynomials in the colour variables — the coefficient
//! ring of every truncated q-series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::monomial::{print_order, ColourMonomial, Var};

/// A finite integer combination of colour monomials.
///
/// Zero coefficients are never stored, so structural equality is
/// coefficient-exact equality. All arithmetic is exact `i64` work; overflow
/// trips the debug-mode checks long before it could corrupt a verdict.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct CoeffPoly {
    terms: BTreeMap<ColourMonomial, i64>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly::default()
    }

    pub fn one() -> Self {
        CoeffPoly::constant(1)
    }

    pub fn constant(n: i64) -> Self {
        CoeffPoly::term(ColourMonomial::ONE, n)
    }

    pub fn var(v: Var) -> Self {
        CoeffPoly::term(ColourMonomial::var(v), 1)
    }

    /// The single-term polynomial `coeff * mono`.
    pub fn term(mono: ColourMonomial, coeff: i64) -> Self {
        let mut p = CoeffPoly::default();
        p.add_term(mono, coeff);
        p
    }

    pub fn from_terms(terms: &[(ColourMonomial, i64)]) -> Self {
        let mut p = CoeffPoly::default();
        for &(m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&ColourMonomial::ONE) == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &ColourMonomial) -> i64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ColourMonomial, &i64)> {
        self.terms.iter()
    }

    /// Add `coeff * mono` in place, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, mono: ColourMonomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(mono).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn scaled(&self, n: i64) -> CoeffPoly {
        if n == 0 {
            return CoeffPoly::zero();
        }
        let mut out = CoeffPoly::default();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c * n);
        }
        out
    }

    /// Terms in the canonical printing order (degree ascending, then
    /// descending lexicographic exponent vectors).
    pub fn terms_in_print_order(&self) -> Vec<(ColourMonomial, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, *c)).collect();
        v.sort_by(|x, y| print_order(&x.0, &y.0));
        v
    }
}

impl AddAssign<&CoeffPoly> for CoeffPoly {
    fn add_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, *c);
        }
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scaled(-1)
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for CoeffPoly {
    /// Renders like `a+2*c+d`, `1-b`, `-1+b`; the zero polynomial is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms_in_print_order().into_iter().enumerate() {
            let sign_negative = coeff < 0;
            if i == 0 {
                if sign_negative {
                    write!(f, "-")?;
                }
            } else if sign_negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = coeff.unsigned_abs();
            if mono.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> CoeffPoly {
        CoeffPoly::var(Var::A)
    }
    fn b() -> CoeffPoly {
        CoeffPoly::var(Var::B)
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let p = &a() - &a();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn product_expands_exactly() {
        // (1+a)(1-b) = 1 + a - b - ab
        let p = &(&CoeffPoly::one() + &a()) * &(&CoeffPoly::one() - &b());
        assert_eq!(p.coeff(&ColourMonomial::ONE), 1);
        assert_eq!(p.coeff(&ColourMonomial::var(Var::A)), 1);
        assert_eq!(p.coeff(&ColourMonomial::var(Var::B)), -1);
        assert_eq!(p.coeff(&ColourMonomial::new(1, 1, 0, 0)), -1);
        assert_eq!(p.num_terms(), 4);
    }

    #[test]
    fn display_matches_canonical_order() {
        let p = CoeffPoly::from_terms(&[
            (ColourMonomial::var(Var::D), 1),
            (ColourMonomial::var(Var::C), 2),
            (ColourMonomial::var(Var::A), 1),
        ]);
        assert_eq!(p.to_string(), "a+2*c+d");
        let q = &CoeffPoly::one() - &CoeffPoly::var(Var::B);
        assert_eq!(q.to_string(), "1-b");
        let r = &CoeffPoly::var(Var::B) - &CoeffPoly::one();
        assert_eq!(r.to_string(), "-1+b");
    }
}
