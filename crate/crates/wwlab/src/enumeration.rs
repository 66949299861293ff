//! Declarative descriptions and exhaustive enumeration of coloured-partition
//! families under gap-matrix difference conditions.
//!
//! A family is an [`EnumSpec`]: a colour alphabet, a [`GapMatrix`] giving the
//! minimal value difference between consecutive parts by colour pair,
//! per-colour minimum parts, a largest-part bound, and optionally a named set
//! of non-adjacent extra conditions. A sequence of coloured parts is a member
//! exactly when every consecutive pair satisfies the matrix — each order on
//! coloured integers used here is consistent with its matrix's zero pattern,
//! so the matrix alone decides validity and no separate order is stored.
//!
//! Enumeration is the ground-truth oracle for every generating function in
//! the crate: the series produced by the recurrence systems and closed
//! formulas are compared coefficient-exactly against
//! [`EnumSpec::generating_series`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::qseries::{CoeffPoly, ColourMonomial, QSeries, Var};

/// A part colour: the four Primc colours plus the tilde alphabet of the
/// three-colour Capparelli family.
///
/// Tilde colours live in the same four monomial slots as the plain colours
/// (`at` counts in the `d` slot, `bt` in `a`, `ct` in `c`), matching the
/// relabeling that carries the tilde family onto the plain one; the
/// relabeling itself is only ever applied explicitly via
/// [`relabel_tilde_to_plain`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Colour {
    A,
    B,
    C,
    D,
    TildeA,
    TildeB,
    TildeC,
}

impl Colour {
    /// Serialized form: `a, b, c, d, at, bt, ct`.
    pub fn letter(self) -> &'static str {
        match self {
            Colour::A => "a",
            Colour::B => "b",
            Colour::C => "c",
            Colour::D => "d",
            Colour::TildeA => "at",
            Colour::TildeB => "bt",
            Colour::TildeC => "ct",
        }
    }

    pub fn from_letter(s: &str) -> Option<Colour> {
        match s {
            "a" => Some(Colour::A),
            "b" => Some(Colour::B),
            "c" => Some(Colour::C),
            "d" => Some(Colour::D),
            "at" => Some(Colour::TildeA),
            "bt" => Some(Colour::TildeB),
            "ct" => Some(Colour::TildeC),
            _ => None,
        }
    }

    /// The monomial slot this colour counts in.
    pub fn slot(self) -> Var {
        match self {
            Colour::A => Var::A,
            Colour::B => Var::B,
            Colour::C => Var::C,
            Colour::D => Var::D,
            Colour::TildeA => Var::D,
            Colour::TildeB => Var::A,
            Colour::TildeC => Var::C,
        }
    }

    /// Position in the equal-value coloured order, ascending. For the plain
    /// alphabet this is `a < b < c < d`; for the tilde alphabet,
    /// `bt < at < ct`. The two alphabets never mix within one family.
    pub fn rank(self) -> u8 {
        match self {
            Colour::A => 0,
            Colour::B => 1,
            Colour::C => 2,
            Colour::D => 3,
            Colour::TildeB => 4,
            Colour::TildeA => 5,
            Colour::TildeC => 6,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("colour `{0}` is not in this family's alphabet")]
    UnknownColour(Colour),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("dilation sends part {part} to value {value}, below 1")]
    DilationBelowOne { part: ColouredPart, value: i64 },
    #[error("relabeling applies to tilde colours only, found {0}")]
    NotTilde(ColouredPart),
}

/// A single coloured part `value_colour`, e.g. `8_d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ColouredPart {
    pub value: u32,
    pub colour: Colour,
}

impl ColouredPart {
    pub fn new(value: u32, colour: Colour) -> Self {
        debug_assert!(value >= 1);
        ColouredPart { value, colour }
    }
}

impl fmt::Display for ColouredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, self.colour)
    }
}

/// Canonical part comparison: value descending, colour rank descending.
/// Sequences stored this way agree with the gap-valid arrangement for every
/// matrix in this crate.
fn part_cmp_desc(p: &ColouredPart, q: &ColouredPart) -> std::cmp::Ordering {
    q.value
        .cmp(&p.value)
        .then_with(|| q.colour.rank().cmp(&p.colour.rank()))
}

/// A coloured partition: a finite part multiset kept as a canonically sorted
/// sequence (largest first).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ColouredPartition {
    parts: Vec<ColouredPart>,
}

impl ColouredPartition {
    pub fn empty() -> Self {
        ColouredPartition::default()
    }

    /// Builds from arbitrary part order; sorts into canonical order.
    pub fn from_parts(mut parts: Vec<ColouredPart>) -> Self {
        parts.sort_by(part_cmp_desc);
        ColouredPartition { parts }
    }

    pub fn parts(&self) -> &[ColouredPart] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| u64::from(p.value)).sum()
    }

    /// Value of the largest part; 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.parts.first().map_or(0, |p| p.value)
    }

    pub fn colour_count(&self, colour: Colour) -> usize {
        self.parts.iter().filter(|p| p.colour == colour).count()
    }

    pub fn count_at(&self, value: u32, colour: Colour) -> usize {
        self.parts
            .iter()
            .filter(|p| p.value == value && p.colour == colour)
            .count()
    }

    pub fn has(&self, value: u32, colour: Colour) -> bool {
        self.count_at(value, colour) > 0
    }

    /// Distinct part values, descending.
    pub fn values(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.parts.iter().map(|p| p.value).collect();
        vs.dedup();
        vs
    }

    /// The colour-count monomial `a^#a b^#b c^#c d^#d` (via each colour's
    /// slot).
    pub fn slot_monomial(&self) -> ColourMonomial {
        let mut m = ColourMonomial::ONE;
        for p in &self.parts {
            *m.exp_mut(p.colour.slot()) += 1;
        }
        m
    }

    /// Rebuilds with each part rewritten, restoring canonical order.
    pub fn map_parts(&self, f: impl FnMut(ColouredPart) -> ColouredPart) -> ColouredPartition {
        ColouredPartition::from_parts(self.parts.iter().copied().map(f).collect())
    }

    /// Parses the serialized grammar: parts joined by `+`, each part a
    /// positive integer followed by a colour letter (`8d+8a+6c`); the empty
    /// string is the empty partition.
    pub fn parse(input: &str) -> Result<Self, EnumError> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Ok(ColouredPartition::empty());
        }
        let mut parts = Vec::new();
        for token in trimmed.split('+') {
            let token = token.trim();
            let digits_end = token
                .char_indices()
                .find(|(_, ch)| !ch.is_ascii_digit())
                .map(|(i, _)| i)
                .unwrap_or(token.len());
            let (digits, colour_str) = token.split_at(digits_end);
            let value: u32 = digits.parse().map_err(|_| EnumError::Parse {
                input: token.to_string(),
                reason: "expected a positive integer value".into(),
            })?;
            if value == 0 {
                return Err(EnumError::Parse {
                    input: token.to_string(),
                    reason: "part values start at 1".into(),
                });
            }
            let colour = Colour::from_letter(colour_str).ok_or_else(|| EnumError::Parse {
                input: token.to_string(),
                reason: format!("unknown colour `{colour_str}`"),
            })?;
            parts.push(ColouredPart::new(value, colour));
        }
        Ok(ColouredPartition::from_parts(parts))
    }
}

impl fmt::Display for ColouredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Deterministic listing order: weight ascending, then lexicographic on the
/// canonical part sequences.
pub fn partition_cmp(x: &ColouredPartition, y: &ColouredPartition) -> std::cmp::Ordering {
    x.weight().cmp(&y.weight()).then_with(|| {
        for (p, q) in x.parts.iter().zip(&y.parts) {
            let ord = part_cmp_desc(p, q);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        x.parts.len().cmp(&y.parts.len())
    })
}

/// Minimal value differences between consecutive parts, indexed by (larger
/// part's colour, smaller part's colour).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapMatrix {
    colours: Vec<Colour>,
    rows: Vec<Vec<u32>>,
}

impl GapMatrix {
    pub fn new(colours: Vec<Colour>, rows: Vec<Vec<u32>>) -> Self {
        assert_eq!(colours.len(), rows.len());
        for row in &rows {
            assert_eq!(row.len(), colours.len());
        }
        GapMatrix { colours, rows }
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    fn colour_index(&self, colour: Colour) -> Option<usize> {
        self.colours.iter().position(|&c| c == colour)
    }

    pub fn gap(&self, upper: Colour, lower: Colour) -> Result<u32, EnumError> {
        let i = self
            .colour_index(upper)
            .ok_or(EnumError::UnknownColour(upper))?;
        let j = self
            .colour_index(lower)
            .ok_or(EnumError::UnknownColour(lower))?;
        Ok(self.rows[i][j])
    }

    /// The three-colour Capparelli matrix over `a, c, d`.
    pub fn capparelli() -> Self {
        use Colour::{A, C, D};
        GapMatrix::new(
            vec![A, C, D],
            vec![vec![2, 2, 2], vec![1, 1, 2], vec![0, 1, 2]],
        )
    }

    /// The four-colour Primc matrix over `a, b, c, d`.
    pub fn primc() -> Self {
        use Colour::{A, B, C, D};
        GapMatrix::new(
            vec![A, B, C, D],
            vec![
                vec![2, 1, 2, 2],
                vec![1, 0, 1, 1],
                vec![0, 1, 0, 2],
                vec![0, 1, 0, 2],
            ],
        )
    }

    /// The tilde-alphabet Capparelli matrix over `at, bt, ct`.
    pub fn capparelli_tilde() -> Self {
        use Colour::{TildeA, TildeB, TildeC};
        GapMatrix::new(
            vec![TildeA, TildeB, TildeC],
            vec![vec![2, 0, 2], vec![2, 2, 3], vec![1, 0, 1]],
        )
    }

    /// The dilated Primc matrix (images of parts under `k_a -> (2k-1)_a`,
    /// `k_b -> (2k)_b`, `k_c -> (2k)_c`, `k_d -> (2k+1)_d`).
    pub fn primc_dil2() -> Self {
        use Colour::{A, B, C, D};
        GapMatrix::new(
            vec![A, B, C, D],
            vec![
                vec![4, 1, 3, 2],
                vec![3, 0, 2, 1],
                vec![1, 2, 0, 3],
                vec![2, 3, 1, 4],
            ],
        )
    }

    /// The matrix satisfied after inserting b-coloured parts into a
    /// Capparelli partition (bijection stage 1).
    pub fn m1() -> Self {
        use Colour::{A, B, C, D};
        GapMatrix::new(
            vec![A, B, C, D],
            vec![
                vec![2, 1, 2, 2],
                vec![0, 0, 1, 1],
                vec![1, 0, 1, 2],
                vec![0, 0, 1, 2],
            ],
        )
    }

    /// The matrix satisfied after the first recolouring (bijection stage 2).
    pub fn m2() -> Self {
        use Colour::{A, B, C, D};
        GapMatrix::new(
            vec![A, B, C, D],
            vec![
                vec![2, 1, 2, 2],
                vec![1, 0, 1, 1],
                vec![0, 0, 0, 2],
                vec![0, 1, 0, 2],
            ],
        )
    }

    /// Single-colour matrix admitting every weakly decreasing c-coloured
    /// sequence (unrestricted partitions coloured c).
    pub fn unrestricted_c() -> Self {
        GapMatrix::new(vec![Colour::C], vec![vec![0]])
    }
}

/// A named violation of a family's membership conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Gap {
        upper: ColouredPart,
        lower: ColouredPart,
        required: u32,
    },
    BelowMinPart {
        part: ColouredPart,
        min: u32,
    },
    AboveMaxPart {
        part: ColouredPart,
        max: u32,
    },
    /// A named non-adjacent condition, e.g. `C1` at value `m`.
    Condition {
        name: &'static str,
        value: u32,
    },
    /// A part whose colour lies outside the family alphabet (stage
    /// validation reports this instead of erroring).
    ColourNotAllowed {
        part: ColouredPart,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Gap {
                upper,
                lower,
                required,
            } => write!(
                f,
                "gap violation: {upper} then {lower} needs difference >= {required}"
            ),
            Violation::BelowMinPart { part, min } => {
                write!(f, "part {part} below the colour minimum {min}")
            }
            Violation::AboveMaxPart { part, max } => {
                write!(f, "part {part} above the largest-part bound {max}")
            }
            Violation::Condition { name, value } => {
                write!(f, "condition ({name}) violated at value {value}")
            }
            Violation::ColourNotAllowed { part } => {
                write!(f, "part {part} uses a colour outside the family alphabet")
            }
        }
    }
}

/// Closed set of named global condition systems that a gap matrix cannot
/// express: the stage-1 and stage-2 bijection conditions, and the per-colour
/// parity classes of the dilated Primc family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionSet {
    /// (C1)–(C4): for every m, forbid {m_a, (m-1)_a}, {m_c, m_a},
    /// {m_c, (m-1)_d}, {m_d, (m-1)_d}.
    M1,
    /// (C'1)–(C'3): for every m, forbid {m_d, m_b}; m_c may repeat only
    /// alongside m_a or m_d; forbid {m_c, (m-1)_d}.
    M2,
    /// Dilated Primc parts: a- and d-parts odd, b- and c-parts even.
    Dil2Parity,
}

impl ConditionSet {
    /// Per-part admissibility (used to filter enumeration candidates).
    pub fn allows_part(self, value: u32, colour: Colour) -> bool {
        match self {
            ConditionSet::M1 | ConditionSet::M2 => true,
            ConditionSet::Dil2Parity => match colour {
                Colour::A | Colour::D => value % 2 == 1,
                Colour::B | Colour::C => value.is_multiple_of(2),
                _ => false,
            },
        }
    }

    /// All violations of the condition set on a complete partition.
    pub fn violations(self, p: &ColouredPartition) -> Vec<Violation> {
        let mut out = Vec::new();
        match self {
            ConditionSet::M1 => {
                for m in p.values() {
                    if p.has(m, Colour::A) && m > 1 && p.has(m - 1, Colour::A) {
                        out.push(Violation::Condition {
                            name: "C1",
                            value: m,
                        });
                    }
                    if p.has(m, Colour::C) && p.has(m, Colour::A) {
                        out.push(Violation::Condition {
                            name: "C2",
                            value: m,
                        });
                    }
                    if p.has(m, Colour::C) && m > 1 && p.has(m - 1, Colour::D) {
                        out.push(Violation::Condition {
                            name: "C3",
                            value: m,
                        });
                    }
                    if p.has(m, Colour::D) && m > 1 && p.has(m - 1, Colour::D) {
                        out.push(Violation::Condition {
                            name: "C4",
                            value: m,
                        });
                    }
                }
            }
            ConditionSet::M2 => {
                for m in p.values() {
                    if p.has(m, Colour::D) && p.has(m, Colour::B) {
                        out.push(Violation::Condition {
                            name: "C'1",
                            value: m,
                        });
                    }
                    if p.count_at(m, Colour::C) >= 2
                        && !p.has(m, Colour::A)
                        && !p.has(m, Colour::D)
                    {
                        out.push(Violation::Condition {
                            name: "C'2",
                            value: m,
                        });
                    }
                    if p.has(m, Colour::C) && m > 1 && p.has(m - 1, Colour::D) {
                        out.push(Violation::Condition {
                            name: "C'3",
                            value: m,
                        });
                    }
                }
            }
            ConditionSet::Dil2Parity => {
                for part in p.parts() {
                    if !self.allows_part(part.value, part.colour) {
                        out.push(Violation::Condition {
                            name: "parity",
                            value: part.value,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Declarative description of a weighted-words partition family.
#[derive(Clone, Debug)]
pub struct EnumSpec {
    colours: Vec<Colour>,
    matrix: GapMatrix,
    min_part: BTreeMap<Colour, u32>,
    max_part: u32,
    extra: Option<ConditionSet>,
}

impl EnumSpec {
    pub fn new(
        matrix: GapMatrix,
        min_part: &[(Colour, u32)],
        max_part: u32,
        extra: Option<ConditionSet>,
    ) -> Self {
        let colours = matrix.colours().to_vec();
        let mut mins: BTreeMap<Colour, u32> = colours.iter().map(|&c| (c, 1)).collect();
        for &(c, v) in min_part {
            assert!(colours.contains(&c));
            mins.insert(c, v);
        }
        EnumSpec {
            colours,
            matrix,
            min_part: mins,
            max_part,
            extra,
        }
    }

    /// Capparelli family: matrix over `a, c, d`, parts at most `max_part`.
    pub fn capparelli(max_part: u32) -> Self {
        EnumSpec::new(GapMatrix::capparelli(), &[], max_part, None)
    }

    /// Primc family: matrix over `a, b, c, d`, parts at most `max_part`.
    pub fn primc(max_part: u32) -> Self {
        EnumSpec::new(GapMatrix::primc(), &[], max_part, None)
    }

    /// The tilde-coloured Capparelli family: no parts `1_at` or `1_bt`.
    pub fn capparelli_tilde(max_part: u32) -> Self {
        EnumSpec::new(
            GapMatrix::capparelli_tilde(),
            &[(Colour::TildeA, 2), (Colour::TildeB, 2)],
            max_part,
            None,
        )
    }

    /// Images of the Primc family under the part dilation
    /// `k_a -> (2k-1)_a, k_b -> (2k)_b, k_c -> (2k)_c, k_d -> (2k+1)_d`:
    /// a-parts odd, b- and c-parts even from 2, d-parts odd from 3.
    pub fn primc_dil2(max_part: u32) -> Self {
        EnumSpec::new(
            GapMatrix::primc_dil2(),
            &[(Colour::B, 2), (Colour::C, 2), (Colour::D, 3)],
            max_part,
            Some(ConditionSet::Dil2Parity),
        )
    }

    /// Bijection stage-1 family: matrix M1 plus conditions (C1)–(C4).
    pub fn m1_family(max_part: u32) -> Self {
        EnumSpec::new(GapMatrix::m1(), &[], max_part, Some(ConditionSet::M1))
    }

    /// Bijection stage-2 family: matrix M2 plus conditions (C'1)–(C'3).
    pub fn m2_family(max_part: u32) -> Self {
        EnumSpec::new(GapMatrix::m2(), &[], max_part, Some(ConditionSet::M2))
    }

    /// Unrestricted partitions coloured `c`.
    pub fn unrestricted_c(max_part: u32) -> Self {
        EnumSpec::new(GapMatrix::unrestricted_c(), &[], max_part, None)
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn matrix(&self) -> &GapMatrix {
        &self.matrix
    }

    pub fn max_part(&self) -> u32 {
        self.max_part
    }

    pub fn min_part(&self, colour: Colour) -> u32 {
        self.min_part.get(&colour).copied().unwrap_or(1)
    }

    /// All membership violations; errors only when a part uses a colour
    /// outside this family's alphabet.
    pub fn check(&self, p: &ColouredPartition) -> Result<Vec<Violation>, EnumError> {
        let mut out = Vec::new();
        for part in p.parts() {
            if !self.colours.contains(&part.colour) {
                return Err(EnumError::UnknownColour(part.colour));
            }
            let min = self.min_part(part.colour);
            if part.value < min {
                out.push(Violation::BelowMinPart { part: *part, min });
            }
            if part.value > self.max_part {
                out.push(Violation::AboveMaxPart {
                    part: *part,
                    max: self.max_part,
                });
            }
        }
        for pair in p.parts().windows(2) {
            let (upper, lower) = (pair[0], pair[1]);
            let required = self.matrix.gap(upper.colour, lower.colour)?;
            if upper.value < lower.value + required {
                out.push(Violation::Gap {
                    upper,
                    lower,
                    required,
                });
            }
        }
        if let Some(extra) = self.extra {
            out.extend(extra.violations(p));
        }
        Ok(out)
    }

    /// True exactly when the partition belongs to the family.
    pub fn is_member(&self, p: &ColouredPartition) -> Result<bool, EnumError> {
        Ok(self.check(p)?.is_empty())
    }

    fn candidate_range(&self, last: Option<ColouredPart>, colour: Colour) -> Option<(u32, u32)> {
        let hi = match last {
            None => self.max_part,
            Some(prev) => {
                let gap = self
                    .matrix
                    .gap(prev.colour, colour)
                    .expect("alphabet colours");
                prev.value.checked_sub(gap)?
            }
        };
        let lo = self.min_part(colour);
        (lo <= hi).then_some((lo, hi))
    }

    /// Exactly the members of weight at most `max_weight`, in the
    /// deterministic [`partition_cmp`] order. The search only descends into
    /// prefixes that still fit under the weight bound.
    pub fn enumerate(&self, max_weight: u32) -> Vec<ColouredPartition> {
        let mut out = Vec::new();
        let mut stack: Vec<ColouredPart> = Vec::new();
        self.enumerate_rec(&mut stack, 0, max_weight, &mut out);
        out.sort_by(partition_cmp);
        out
    }

    fn enumerate_rec(
        &self,
        stack: &mut Vec<ColouredPart>,
        weight: u32,
        max_weight: u32,
        out: &mut Vec<ColouredPartition>,
    ) {
        // Every prefix is itself a partition; non-adjacent conditions are
        // checked on the prefix as a whole (they are not prefix-monotone:
        // a later part can satisfy (C'2)).
        let candidate = ColouredPartition {
            parts: stack.clone(),
        };
        let ok = match self.extra {
            Some(extra) => extra.violations(&candidate).is_empty(),
            None => true,
        };
        if ok {
            out.push(candidate);
        }
        let last = stack.last().copied();
        for &colour in &self.colours {
            let Some((lo, hi)) = self.candidate_range(last, colour) else {
                continue;
            };
            let hi = hi.min(max_weight.saturating_sub(weight));
            for value in lo..=hi {
                if let Some(extra) = self.extra {
                    if !extra.allows_part(value, colour) {
                        continue;
                    }
                }
                stack.push(ColouredPart::new(value, colour));
                self.enumerate_rec(stack, weight + value, max_weight, out);
                stack.pop();
            }
        }
    }

    /// The generating series `sum a^#a b^#b c^#c d^#d q^weight` over members
    /// of weight below `trunc`, accumulated directly by a recursive walk —
    /// a code path independent of [`EnumSpec::enumerate`].
    pub fn generating_series(&self, trunc: usize) -> QSeries {
        let mut coeffs = vec![CoeffPoly::zero(); trunc];
        if trunc == 0 {
            return QSeries::zero(0);
        }
        self.series_rec(None, 0, ColourMonomial::ONE, &mut coeffs);
        let terms: Vec<(i64, ColourMonomial, usize)> = coeffs
            .iter()
            .enumerate()
            .flat_map(|(n, p)| p.iter().map(move |(m, c)| (*c, *m, n)))
            .collect();
        QSeries::from_terms(&terms, trunc)
    }

    fn series_rec(
        &self,
        last: Option<ColouredPart>,
        weight: usize,
        mono: ColourMonomial,
        coeffs: &mut [CoeffPoly],
    ) {
        let record = match self.extra {
            // With per-part conditions only (parity), every reached node is
            // valid; M1/M2 families are not enumerated through this path.
            Some(ConditionSet::M1) | Some(ConditionSet::M2) => {
                unimplemented!("generating series with non-adjacent conditions")
            }
            _ => true,
        };
        if record {
            coeffs[weight].add_term(mono, 1);
        }
        let trunc = coeffs.len();
        for &colour in &self.colours {
            let Some((lo, hi)) = self.candidate_range(last, colour) else {
                continue;
            };
            let hi = (hi as usize).min(trunc - 1 - weight);
            let slot = colour.slot();
            let mut child = mono;
            *child.exp_mut(slot) += 1;
            for value in lo..=(hi as u32) {
                if let Some(extra) = self.extra {
                    if !extra.allows_part(value, colour) {
                        continue;
                    }
                }
                self.series_rec(
                    Some(ColouredPart::new(value, colour)),
                    weight + value as usize,
                    child,
                    coeffs,
                );
            }
        }
    }
}

/// Per-colour affine rewriting of part values, `k -> mul*k + offset`.
#[derive(Clone, Debug)]
pub struct DilationRule {
    map: BTreeMap<Colour, (u32, i64)>,
}

impl DilationRule {
    pub fn new() -> Self {
        DilationRule {
            map: BTreeMap::new(),
        }
    }

    pub fn with(mut self, colour: Colour, mul: u32, offset: i64) -> Self {
        assert!(mul >= 1);
        self.map.insert(colour, (mul, offset));
        self
    }

    /// `k_a -> (2k-1)_a, k_b -> (2k)_b, k_c -> (2k)_c, k_d -> (2k+1)_d`.
    pub fn primc() -> Self {
        DilationRule::new()
            .with(Colour::A, 2, -1)
            .with(Colour::B, 2, 0)
            .with(Colour::C, 2, 0)
            .with(Colour::D, 2, 1)
    }

    /// `k_a -> (3k-1)_a, k_c -> (3k)_c, k_d -> (3k+1)_d` (the dilation
    /// recovering Capparelli's original identity).
    pub fn capparelli() -> Self {
        DilationRule::new()
            .with(Colour::A, 3, -1)
            .with(Colour::C, 3, 0)
            .with(Colour::D, 3, 1)
    }

    /// `k_at -> (3k-2)_at, k_bt -> (3k-4)_bt, k_ct -> (3k)_ct`.
    pub fn capparelli_tilde() -> Self {
        DilationRule::new()
            .with(Colour::TildeA, 3, -2)
            .with(Colour::TildeB, 3, -4)
            .with(Colour::TildeC, 3, 0)
    }

    /// Rewrites every part value per its colour's affine map; colours are
    /// preserved, and any resulting value below 1 is an error.
    pub fn apply(&self, p: &ColouredPartition) -> Result<ColouredPartition, EnumError> {
        let mut parts = Vec::with_capacity(p.len());
        for part in p.parts() {
            let &(mul, offset) = self
                .map
                .get(&part.colour)
                .ok_or(EnumError::UnknownColour(part.colour))?;
            let value = i64::from(part.value) * i64::from(mul) + offset;
            if value < 1 {
                return Err(EnumError::DilationBelowOne { part: *part, value });
            }
            parts.push(ColouredPart::new(value as u32, part.colour));
        }
        Ok(ColouredPartition::from_parts(parts))
    }
}

impl Default for DilationRule {
    fn default() -> Self {
        DilationRule::new()
    }
}

/// The explicit relabeling carrying the tilde family onto the plain
/// Capparelli family: `k_at -> (k-1)_d`, `k_bt -> (k-1)_a`, `k_ct -> k_c`.
pub fn relabel_tilde_to_plain(p: &ColouredPartition) -> Result<ColouredPartition, EnumError> {
    let mut parts = Vec::with_capacity(p.len());
    for part in p.parts() {
        let (value, colour) = match part.colour {
            Colour::TildeA => (i64::from(part.value) - 1, Colour::D),
            Colour::TildeB => (i64::from(part.value) - 1, Colour::A),
            Colour::TildeC => (i64::from(part.value), Colour::C),
            _ => return Err(EnumError::NotTilde(*part)),
        };
        if value < 1 {
            return Err(EnumError::DilationBelowOne { part: *part, value });
        }
        parts.push(ColouredPart::new(value as u32, colour));
    }
    Ok(ColouredPartition::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ColouredPartition {
        ColouredPartition::parse(s).unwrap()
    }

    #[test]
    fn membership_examples_under_capparelli_matrix() {
        let spec = EnumSpec::capparelli(10);
        // C[d][a] = 0 admits 1_d followed by 1_a.
        assert!(spec.is_member(&pt("1d+1a")).unwrap());
        // C[c][a] = 1 rejects 1_c followed by 1_a.
        assert!(!spec.is_member(&pt("1c+1a")).unwrap());
        // Vacuous conditions on the empty partition.
        assert!(spec.is_member(&ColouredPartition::empty()).unwrap());
        // Colour b is not in the three-colour alphabet.
        assert!(matches!(
            spec.is_member(&pt("1b")),
            Err(EnumError::UnknownColour(Colour::B))
        ));
    }

    #[test]
    fn enumerate_primc_small() {
        let spec = EnumSpec::primc(1);
        let got: Vec<String> = spec.enumerate(2).iter().map(|p| p.to_string()).collect();
        let mut expected = vec![
            "", "1a", "1b", "1c", "1d", "1b+1b", "1c+1c", "1c+1a", "1d+1a", "1d+1c",
        ];
        expected.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, expected);
        assert_eq!(got.len(), 10);
    }

    #[test]
    fn enumerate_capparelli_small() {
        let spec = EnumSpec::capparelli(2);
        let got: Vec<String> = spec.enumerate(2).iter().map(|p| p.to_string()).collect();
        let mut expected = vec!["", "1a", "1c", "1d", "2a", "2c", "2d", "1d+1a"];
        expected.sort();
        let mut got_sorted = got;
        got_sorted.sort();
        assert_eq!(got_sorted, expected);
    }

    #[test]
    fn enumerate_weight_zero_gives_only_empty() {
        for spec in [EnumSpec::primc(4), EnumSpec::capparelli(7)] {
            let got = spec.enumerate(0);
            assert_eq!(got, vec![ColouredPartition::empty()]);
        }
    }

    #[test]
    fn generating_series_examples() {
        use crate::qseries::Var;
        let a = ColourMonomial::var(Var::A);
        let b = ColourMonomial::var(Var::B);
        let c = ColourMonomial::var(Var::C);
        let d = ColourMonomial::var(Var::D);

        // Primc, largest part at most 1:
        // 1 + (a+b+c+d) q + (b^2+c^2+ac+ad+cd) q^2
        let s = EnumSpec::primc(1).generating_series(3);
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a, 1),
                (1, b, 1),
                (1, c, 1),
                (1, d, 1),
                (1, b.pow(2), 2),
                (1, c.pow(2), 2),
                (1, a.mul(&c), 2),
                (1, a.mul(&d), 2),
                (1, c.mul(&d), 2),
            ],
            3,
        );
        assert_eq!(s, expected);

        // Capparelli, largest part at most 1: 1 + (a+c+d) q + ad q^2
        let s = EnumSpec::capparelli(1).generating_series(3);
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a, 1),
                (1, c, 1),
                (1, d, 1),
                (1, a.mul(&d), 2),
            ],
            3,
        );
        assert_eq!(s, expected);

        // Tilde family, largest part at most 2: the only weight-1 member is
        // 1_ct; at weight 2 the three singletons 2_at, 2_bt, 2_ct remain
        // (1_ct cannot repeat). Slots: at -> d, bt -> a, ct -> c.
        let s = EnumSpec::capparelli_tilde(2).generating_series(3);
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, c, 1),
                (1, a, 2),
                (1, c, 2),
                (1, d, 2),
            ],
            3,
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn series_agrees_with_grouped_enumeration() {
        // Two independent code paths over the same family.
        for spec in [
            EnumSpec::primc(3),
            EnumSpec::capparelli(4),
            EnumSpec::capparelli_tilde(5),
            EnumSpec::primc_dil2(8),
        ] {
            let trunc = 9usize;
            let series = spec.generating_series(trunc);
            let mut grouped = QSeries::zero(trunc);
            for p in spec.enumerate(trunc as u32 - 1) {
                grouped = grouped
                    .add(&QSeries::from_terms(
                        &[(1, p.slot_monomial(), p.weight() as usize)],
                        trunc,
                    ))
                    .unwrap();
            }
            assert_eq!(series, grouped);
        }
    }

    #[test]
    fn raising_bounds_never_removes_members() {
        let small = EnumSpec::primc(2).enumerate(6);
        let larger_strings: std::collections::BTreeSet<String> = EnumSpec::primc(3)
            .enumerate(8)
            .iter()
            .map(|p| p.to_string())
            .collect();
        for p in small {
            assert!(larger_strings.contains(&p.to_string()));
        }
    }

    #[test]
    fn primc_dil2_counts_start_like_ordinary_partitions() {
        let spec = EnumSpec::primc_dil2(6);
        let mut counts = [0u64; 7];
        for p in spec.enumerate(6) {
            counts[p.weight() as usize] += 1;
        }
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn dilation_examples() {
        // Primc dilation on one part of each colour.
        let p = pt("1a+1b+1c+1d");
        let d = DilationRule::primc().apply(&p).unwrap();
        assert_eq!(d.to_string(), "3d+2c+2b+1a");

        // Tilde dilation: 2_at -> 4_at.
        let p = pt("2at");
        let d = DilationRule::capparelli_tilde().apply(&p).unwrap();
        assert_eq!(d.to_string(), "4at");

        // Fixed point of k -> 3k-2 at k = 1.
        let rule = DilationRule::new().with(Colour::A, 3, -2);
        assert_eq!(rule.apply(&pt("1a")).unwrap().to_string(), "1a");

        // 1_bt -> (3-4) = -1 is rejected.
        let err = DilationRule::capparelli_tilde().apply(&pt("1bt"));
        assert!(matches!(err, Err(EnumError::DilationBelowOne { .. })));
    }

    #[test]
    fn tilde_relabeling_matches_plain_family() {
        // Every tilde-family member maps to a plain Capparelli member with
        // the same slot monomial, and the weights drop by #at + #bt.
        let tilde = EnumSpec::capparelli_tilde(12);
        let plain = EnumSpec::capparelli(12);
        for p in tilde.enumerate(12) {
            let q = relabel_tilde_to_plain(&p).unwrap();
            assert!(plain.is_member(&q).unwrap(), "{p} -> {q}");
            assert_eq!(p.slot_monomial(), q.slot_monomial());
            let drop = (p.colour_count(Colour::TildeA) + p.colour_count(Colour::TildeB)) as u64;
            assert_eq!(p.weight() - drop, q.weight());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = "8d+8a+6c+5c+3d+1a";
        assert_eq!(pt(s).to_string(), s);
        let t = "4at+2bt+1ct";
        assert_eq!(pt(t).to_string(), t);
        assert_eq!(ColouredPartition::parse("").unwrap(), ColouredPartition::empty());
        assert!(ColouredPartition::parse("0a").is_err());
        assert!(ColouredPartition::parse("3x").is_err());
        assert!(ColouredPartition::parse("a3").is_err());
    }

    #[test]
    fn validate_reports_every_violation() {
        let spec = EnumSpec::m2_family(10);
        let report = spec.check(&pt("5d+5b")).unwrap();
        // Both the matrix entry M2[d][b] = 1 and condition (C'1) reject this.
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::Condition { name: "C'1", value: 5 })));
        assert!(report.iter().any(|v| matches!(v, Violation::Gap { .. })));
    }
}
