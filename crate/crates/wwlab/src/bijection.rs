//! The colour-exchange bijection between pairs (Capparelli partition,
//! unrestricted c-coloured partition) and Primc partitions.
//!
//! Forward direction:
//! - step 0 recolours every part of the second component to `b`;
//! - step 1 merges the b-parts into the Capparelli partition (equal values
//!   tie-break `d > c > b > a`), landing in the M1 family with conditions
//!   (C1)–(C4);
//! - step 2 recolours, at every value carrying an a- or d-part, all b-parts
//!   to `c`, landing in the M2 family with conditions (C'1)–(C'3);
//! - step 3 absorbs, at every value with a c-part, the trailing b-parts into
//!   `c`, landing in the Primc family.
//!
//! Each step only exchanges the colours `b` and `c`, so the weight, the
//! largest part, the number of a-parts, the number of d-parts, and the
//! combined number of b/c-parts are all preserved. Every stage output is
//! validated; a validation failure there signals an implementation bug, not
//! bad input, and is reported as such.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::enumeration::{
    Colour, ColouredPart, ColouredPartition, EnumSpec, Violation,
};

/// Validation stages: the two intermediate families plus the two endpoint
/// families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Matrix M1 plus conditions (C1)–(C4).
    M1C,
    /// Matrix M2 plus conditions (C'1)–(C'3).
    M2C,
    /// The Primc family (matrix P).
    PFamily,
    /// The Capparelli family (matrix C over `a, c, d`).
    CFamily,
}

impl Stage {
    fn spec(self) -> EnumSpec {
        match self {
            Stage::M1C => EnumSpec::m1_family(u32::MAX),
            Stage::M2C => EnumSpec::m2_family(u32::MAX),
            Stage::PFamily => EnumSpec::primc(u32::MAX),
            Stage::CFamily => EnumSpec::capparelli(u32::MAX),
        }
    }
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Stage::M1C => "M1+(C1..C4)",
            Stage::M2C => "M2+(C'1..C'3)",
            Stage::PFamily => "P",
            Stage::CFamily => "C",
        };
        write!(f, "{name}")
    }
}

/// Outcome of validating a partition against a stage: valid exactly when no
/// violation was found. Every violated condition is listed, not just the
/// first.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub stage: Stage,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn details(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks the gap matrix of the stage and all its named conditions,
/// reporting every violation. Parts in colours outside the stage alphabet
/// are reported as violations rather than errors.
pub fn validate(p: &ColouredPartition, stage: Stage) -> ValidationReport {
    let spec = stage.spec();
    let foreign: Vec<Violation> = p
        .parts()
        .iter()
        .filter(|part| !spec.colours().contains(&part.colour))
        .map(|part| Violation::ColourNotAllowed { part: *part })
        .collect();
    if !foreign.is_empty() {
        return ValidationReport {
            stage,
            violations: foreign,
        };
    }
    ValidationReport {
        stage,
        violations: spec.check(p).expect("alphabet pre-checked"),
    }
}

#[derive(Debug, Error, Clone)]
pub enum BijectionError {
    #[error("{which} fails {stage} validation: {details}")]
    InvalidInput {
        which: &'static str,
        stage: Stage,
        details: String,
    },
    #[error("mu must be entirely c-coloured, found {part}")]
    MuNotCColoured { part: ColouredPart },
    #[error("step {step} output failed {stage} validation (implementation bug): {details}")]
    PostValidation {
        step: &'static str,
        stage: Stage,
        details: String,
    },
}

fn ensure_stage(
    p: &ColouredPartition,
    stage: Stage,
    step: &'static str,
) -> Result<(), BijectionError> {
    let report = validate(p, stage);
    if report.is_valid() {
        Ok(())
    } else {
        Err(BijectionError::PostValidation {
            step,
            stage,
            details: report.details(),
        })
    }
}

/// A Capparelli partition paired with an unrestricted c-coloured partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPair {
    pub lambda: ColouredPartition,
    pub mu: ColouredPartition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The full chain of one bijection run, retained for auditing and
/// serialization.
#[derive(Clone, Debug)]
pub struct BijectionTrace {
    pub direction: Direction,
    pub lambda: ColouredPartition,
    pub mu: ColouredPartition,
    pub mu_prime: ColouredPartition,
    pub nu1: ColouredPartition,
    pub nu2: ColouredPartition,
    pub nu3: ColouredPartition,
}

/// Step 0: recolour every part of `mu` to `b`. Errors on any non-c part.
pub fn step0_recolour(mu: &ColouredPartition) -> Result<ColouredPartition, BijectionError> {
    if let Some(part) = mu.parts().iter().find(|p| p.colour != Colour::C) {
        return Err(BijectionError::MuNotCColoured { part: *part });
    }
    Ok(mu.map_parts(|p| ColouredPart::new(p.value, Colour::B)))
}

/// Step 1: merge the b-coloured parts into the Capparelli partition in the
/// four-colour order (equal values: `d > c > b > a`). The result must
/// satisfy matrix M1 together with (C1)–(C4).
pub fn step1_insert(
    lambda: &ColouredPartition,
    mu_prime: &ColouredPartition,
) -> Result<ColouredPartition, BijectionError> {
    let mut parts = lambda.parts().to_vec();
    parts.extend_from_slice(mu_prime.parts());
    let nu1 = ColouredPartition::from_parts(parts);
    ensure_stage(&nu1, Stage::M1C, "1")?;
    Ok(nu1)
}

/// Step 2: at every value `m` where `m_a` or `m_d` occurs, recolour all
/// `m_b` to `m_c`. The result must satisfy matrix M2 with (C'1)–(C'3).
pub fn step2_recolour_after_ad(
    nu1: &ColouredPartition,
) -> Result<ColouredPartition, BijectionError> {
    let triggered: BTreeSet<u32> = nu1
        .values()
        .into_iter()
        .filter(|&m| nu1.has(m, Colour::A) || nu1.has(m, Colour::D))
        .collect();
    let nu2 = nu1.map_parts(|p| {
        if p.colour == Colour::B && triggered.contains(&p.value) {
            ColouredPart::new(p.value, Colour::C)
        } else {
            p
        }
    });
    ensure_stage(&nu2, Stage::M2C, "2")?;
    Ok(nu2)
}

/// Step 3: every maximal run `m_c, m_b, ..., m_b` becomes all-c. The result
/// is a Primc partition.
pub fn step3_absorb_after_c(
    nu2: &ColouredPartition,
) -> Result<ColouredPartition, BijectionError> {
    let triggered: BTreeSet<u32> = nu2
        .values()
        .into_iter()
        .filter(|&m| nu2.has(m, Colour::C) && nu2.has(m, Colour::B))
        .collect();
    let nu3 = nu2.map_parts(|p| {
        if p.colour == Colour::B && triggered.contains(&p.value) {
            ColouredPart::new(p.value, Colour::C)
        } else {
            p
        }
    });
    ensure_stage(&nu3, Stage::PFamily, "3")?;
    Ok(nu3)
}

/// Runs steps 0–3 on a validated pair.
pub fn forward(pair: &PartitionPair) -> Result<BijectionTrace, BijectionError> {
    let lambda_report = validate(&pair.lambda, Stage::CFamily);
    if !lambda_report.is_valid() {
        return Err(BijectionError::InvalidInput {
            which: "lambda",
            stage: Stage::CFamily,
            details: lambda_report.details(),
        });
    }
    let mu_prime = step0_recolour(&pair.mu)?;
    let nu1 = step1_insert(&pair.lambda, &mu_prime)?;
    let nu2 = step2_recolour_after_ad(&nu1)?;
    let nu3 = step3_absorb_after_c(&nu2)?;
    Ok(BijectionTrace {
        direction: Direction::Forward,
        lambda: pair.lambda.clone(),
        mu: pair.mu.clone(),
        mu_prime,
        nu1,
        nu2,
        nu3,
    })
}

/// Reverses steps 3, 2, 1, 0 on a Primc partition:
/// - where `m_c` repeats without `m_a` or `m_d`, all but the first `m_c`
///   turn back into `m_b`;
/// - where `m_a` or `m_d` is present, every `m_c` turns back into `m_b`;
/// - the b-parts split off and recolour to `c`, leaving the Capparelli
///   partition behind.
pub fn inverse(nu: &ColouredPartition) -> Result<BijectionTrace, BijectionError> {
    let report = validate(nu, Stage::PFamily);
    if !report.is_valid() {
        return Err(BijectionError::InvalidInput {
            which: "nu",
            stage: Stage::PFamily,
            details: report.details(),
        });
    }

    // Undo step 3: keep the first (leftmost) c of each repeated all-c run.
    let repeated: BTreeSet<u32> = nu
        .values()
        .into_iter()
        .filter(|&m| {
            nu.count_at(m, Colour::C) >= 2 && !nu.has(m, Colour::A) && !nu.has(m, Colour::D)
        })
        .collect();
    let mut seen_first: BTreeSet<u32> = BTreeSet::new();
    let mut parts = Vec::with_capacity(nu.len());
    for p in nu.parts() {
        if p.colour == Colour::C && repeated.contains(&p.value) && !seen_first.insert(p.value) {
            parts.push(ColouredPart::new(p.value, Colour::B));
        } else {
            parts.push(*p);
        }
    }
    let nu2 = ColouredPartition::from_parts(parts);
    ensure_stage(&nu2, Stage::M2C, "undo-3")?;

    // Undo step 2: recolour every m_c sharing its value with m_a or m_d.
    let triggered: BTreeSet<u32> = nu2
        .values()
        .into_iter()
        .filter(|&m| nu2.has(m, Colour::A) || nu2.has(m, Colour::D))
        .collect();
    let nu1 = nu2.map_parts(|p| {
        if p.colour == Colour::C && triggered.contains(&p.value) {
            ColouredPart::new(p.value, Colour::B)
        } else {
            p
        }
    });
    ensure_stage(&nu1, Stage::M1C, "undo-2")?;

    // Undo step 1: the b-parts are exactly the inserted ones.
    let (mu_b, lambda_parts): (Vec<ColouredPart>, Vec<ColouredPart>) = nu1
        .parts()
        .iter()
        .partition(|p| p.colour == Colour::B);
    let lambda = ColouredPartition::from_parts(lambda_parts);
    let mu_prime = ColouredPartition::from_parts(mu_b);
    ensure_stage(&lambda, Stage::CFamily, "undo-1")?;

    // Undo step 0.
    let mu = mu_prime.map_parts(|p| ColouredPart::new(p.value, Colour::C));
    Ok(BijectionTrace {
        direction: Direction::Inverse,
        lambda,
        mu,
        mu_prime,
        nu1,
        nu2,
        nu3: nu.clone(),
    })
}

/// The statistics tuple preserved by the bijection: total weight, largest
/// part, number of a-parts, combined number of b/c-parts, number of d-parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile {
    pub weight: u64,
    pub largest: u32,
    pub a_parts: usize,
    pub bc_parts: usize,
    pub d_parts: usize,
}

/// Profile of a pair: the c-parts of the second component count towards the
/// combined b/c statistic.
pub fn pair_profile(pair: &PartitionPair) -> Profile {
    Profile {
        weight: pair.lambda.weight() + pair.mu.weight(),
        largest: pair.lambda.largest_part().max(pair.mu.largest_part()),
        a_parts: pair.lambda.colour_count(Colour::A),
        bc_parts: pair.lambda.colour_count(Colour::C) + pair.mu.len(),
        d_parts: pair.lambda.colour_count(Colour::D),
    }
}

pub fn primc_profile(nu: &ColouredPartition) -> Profile {
    Profile {
        weight: nu.weight(),
        largest: nu.largest_part(),
        a_parts: nu.colour_count(Colour::A),
        bc_parts: nu.colour_count(Colour::B) + nu.colour_count(Colour::C),
        d_parts: nu.colour_count(Colour::D),
    }
}
