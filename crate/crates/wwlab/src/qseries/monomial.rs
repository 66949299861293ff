//! Laurent monomials in the four colour variables `a`, `b`, `c`, `d`.

use std::fmt;

/// One of the four colour variables of the coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    A,
    B,
    C,
    D,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::A, Var::B, Var::C, Var::D];

    pub fn index(self) -> usize {
        match self {
            Var::A => 0,
            Var::B => 1,
            Var::C => 2,
            Var::D => 3,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Var::A => 'a',
            Var::B => 'b',
            Var::C => 'c',
            Var::D => 'd',
        }
    }

    pub fn from_letter(ch: char) -> Option<Var> {
        match ch {
            'a' => Some(Var::A),
            'b' => Some(Var::B),
            'c' => Some(Var::C),
            'd' => Some(Var::D),
            _ => None,
        }
    }
}

/// Exponent vector of a Laurent monomial `a^i b^j c^k d^l`.
///
/// Negative exponents are allowed (the recurrence machinery divides by
/// monomials such as `ad`), so two monomials are equal exactly when their
/// exponent vectors are. The derived `Ord` is the lexicographic order on
/// `(exp_a, exp_b, exp_c, exp_d)` and is what keeps polynomial storage
/// canonical.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct ColourMonomial {
    pub exp_a: i32,
    pub exp_b: i32,
    pub exp_c: i32,
    pub exp_d: i32,
}

impl ColourMonomial {
    pub const ONE: ColourMonomial = ColourMonomial {
        exp_a: 0,
        exp_b: 0,
        exp_c: 0,
        exp_d: 0,
    };

    pub fn new(exp_a: i32, exp_b: i32, exp_c: i32, exp_d: i32) -> Self {
        ColourMonomial {
            exp_a,
            exp_b,
            exp_c,
            exp_d,
        }
    }

    /// The monomial consisting of a single variable.
    pub fn var(v: Var) -> Self {
        let mut m = ColourMonomial::ONE;
        *m.exp_mut(v) = 1;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        match v {
            Var::A => self.exp_a,
            Var::B => self.exp_b,
            Var::C => self.exp_c,
            Var::D => self.exp_d,
        }
    }

    pub fn exp_mut(&mut self, v: Var) -> &mut i32 {
        match v {
            Var::A => &mut self.exp_a,
            Var::B => &mut self.exp_b,
            Var::C => &mut self.exp_c,
            Var::D => &mut self.exp_d,
        }
    }

    pub fn exps(&self) -> [i32; 4] {
        [self.exp_a, self.exp_b, self.exp_c, self.exp_d]
    }

    pub fn is_one(&self) -> bool {
        *self == ColourMonomial::ONE
    }

    pub fn mul(&self, rhs: &ColourMonomial) -> ColourMonomial {
        ColourMonomial {
            exp_a: self.exp_a + rhs.exp_a,
            exp_b: self.exp_b + rhs.exp_b,
            exp_c: self.exp_c + rhs.exp_c,
            exp_d: self.exp_d + rhs.exp_d,
        }
    }

    pub fn pow(&self, n: i32) -> ColourMonomial {
        ColourMonomial {
            exp_a: self.exp_a * n,
            exp_b: self.exp_b * n,
            exp_c: self.exp_c * n,
            exp_d: self.exp_d * n,
        }
    }

    pub fn total_degree(&self) -> i32 {
        self.exp_a + self.exp_b + self.exp_c + self.exp_d
    }
}

/// Canonical printing order for polynomial terms: ascending total degree,
/// then descending lexicographic on the exponent vector, so that degree-one
/// terms read `a+2*c+d` rather than in reverse.
pub fn print_order(lhs: &ColourMonomial, rhs: &ColourMonomial) -> std::cmp::Ordering {
    lhs.total_degree()
        .cmp(&rhs.total_degree())
        .then_with(|| rhs.exps().cmp(&lhs.exps()))
}

impl fmt::Display for ColourMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.letter())?;
            } else {
                write!(f, "{}^{}", v.letter(), e)?;
            }
        }
        Ok(())
    }
}
