//! The Capparelli and Primc recurrence systems and the auxiliary H-sequence,
//! computed as truncated series with all four colour statistics.
//!
//! `G_{k_x}` is the generating function for family members whose largest part
//! is at most `k_x` in the coloured order; `E_{k_x}` requires the largest
//! part to equal `k_x`. Removing the largest part yields the defining
//! equations; the only divisions ever performed are by series with constant
//! term 1 (geometric units like `1 - bq^k`), and the one place the
//! non-unit `1 - b` appears it is cancelled symbolically.

use std::collections::BTreeMap;

use crate::enumeration::Colour;
use crate::qseries::{CoeffPoly, ColourMonomial, QSeries, SeriesError, Var};

fn mono(v: Var) -> ColourMonomial {
    ColourMonomial::var(v)
}

fn ad() -> ColourMonomial {
    mono(Var::A).mul(&mono(Var::D))
}

fn bc() -> ColourMonomial {
    mono(Var::B).mul(&mono(Var::C))
}

/// `aq^k + dq^k + adq^{2k}` at a given truncation order.
fn a_d_ad(k: usize, trunc: usize) -> QSeries {
    QSeries::from_terms(
        &[(1, mono(Var::A), k), (1, mono(Var::D), k), (1, ad(), 2 * k)],
        trunc,
    )
}

/// Which recurrence system a table was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Capparelli,
    Primc,
}

/// All `G` and `E` series of one system, keyed by coloured index, including
/// the initial entries at `k <= 0`. Every intermediate is retained so that
/// the defining equations can be re-asserted after the fact.
#[derive(Clone, Debug)]
pub struct GFTable {
    kind: SystemKind,
    trunc: usize,
    k_max: u32,
    g: BTreeMap<(i32, Colour), QSeries>,
    e: BTreeMap<(i32, Colour), QSeries>,
}

impl GFTable {
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn g(&self, k: i32, colour: Colour) -> Option<&QSeries> {
        self.g.get(&(k, colour))
    }

    pub fn e(&self, k: i32, colour: Colour) -> Option<&QSeries> {
        self.e.get(&(k, colour))
    }

    /// Re-evaluates every defining equation against the stored entries,
    /// using only multiplication (the self-referential equations are checked
    /// in their pre-division form).
    pub fn check_consistency(&self) -> Result<bool, SeriesError> {
        let g = |k: i32, x: Colour| self.g[&(k, x)].clone();
        let e = |k: i32, x: Colour| self.e[&(k, x)].clone();
        for k in 1..=self.k_max as i32 {
            let ku = k as usize;
            match self.kind {
                SystemKind::Capparelli => {
                    use Colour::{A, C, D};
                    let eka = g(k - 2, D).mul_term(1, mono(Var::A), ku);
                    let ekc = g(k - 1, C).mul_term(1, mono(Var::C), ku);
                    let ekd = e(k, A).add(&g(k - 1, C))?.mul_term(1, mono(Var::D), ku);
                    let ok = e(k, A) == eka
                        && e(k, C) == ekc
                        && e(k, D) == ekd
                        && g(k, A) == g(k - 1, D).add(&e(k, A))?
                        && g(k, C) == g(k, A).add(&e(k, C))?
                        && g(k, D) == g(k, C).add(&e(k, D))?;
                    if !ok {
                        return Ok(false);
                    }
                }
                SystemKind::Primc => {
                    use Colour::{A, B, C, D};
                    let eka = e(k - 1, B)
                        .add(&g(k - 2, D))?
                        .mul_term(1, mono(Var::A), ku);
                    let ekb = e(k, B).add(&g(k - 1, D))?.mul_term(1, mono(Var::B), ku);
                    let common = e(k, A).add(&g(k - 1, C))?;
                    let ekc = e(k, C).add(&common)?.mul_term(1, mono(Var::C), ku);
                    let ekd = e(k, C).add(&common)?.mul_term(1, mono(Var::D), ku);
                    let ok = e(k, A) == eka
                        && e(k, B) == ekb
                        && e(k, C) == ekc
                        && e(k, D) == ekd
                        && g(k, A) == g(k - 1, D).add(&e(k, A))?
                        && g(k, B) == g(k, A).add(&e(k, B))?
                        && g(k, C) == g(k, B).add(&e(k, C))?
                        && g(k, D) == g(k, C).add(&e(k, D))?;
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Solves the Capparelli system: all `E_{m_x}` and `G_{m_x}` for `m <= k_max`
/// over colours `a, c, d`, from the equations obtained by removing the
/// largest part. Initial values: `E_{0_x} = 0`, `G_{0_x} = 1`,
/// `G_{-1_d} = 1`. No division is needed anywhere.
pub fn capparelli_system(k_max: u32, trunc: usize) -> Result<GFTable, SeriesError> {
    use Colour::{A, C, D};
    let one = QSeries::one(trunc);
    let zero = QSeries::zero(trunc);
    let mut g: BTreeMap<(i32, Colour), QSeries> = BTreeMap::new();
    let mut e: BTreeMap<(i32, Colour), QSeries> = BTreeMap::new();
    for x in [A, C, D] {
        g.insert((0, x), one.clone());
        e.insert((0, x), zero.clone());
    }
    g.insert((-1, D), one.clone());

    for k in 1..=k_max as i32 {
        let ku = k as usize;
        let e_ka = g[&(k - 2, D)].mul_term(1, mono(Var::A), ku);
        let g_ka = g[&(k - 1, D)].add(&e_ka)?;
        let e_kc = g[&(k - 1, C)].mul_term(1, mono(Var::C), ku);
        let g_kc = g_ka.add(&e_kc)?;
        let e_kd = e_ka.add(&g[&(k - 1, C)])?.mul_term(1, mono(Var::D), ku);
        let g_kd = g_kc.add(&e_kd)?;
        e.insert((k, A), e_ka);
        e.insert((k, C), e_kc);
        e.insert((k, D), e_kd);
        g.insert((k, A), g_ka);
        g.insert((k, C), g_kc);
        g.insert((k, D), g_kd);
    }
    Ok(GFTable {
        kind: SystemKind::Capparelli,
        trunc,
        k_max,
        g,
        e,
    })
}

/// `G_{k_d}` for the Capparelli family from the collapsed three-term
/// recurrence, index `k` in the returned vector (`[0]` is `G_{0_d} = 1`).
///
/// `G_k = (1+cq^k) G_{k-1} + (aq^k+dq^k+adq^{2k}) G_{k-2}
///        + adq^{2k-1}(1-cq^{k-1}) G_{k-3}`,
/// with `G_0 = G_{-1} = 1` and `G_{-2} = 0`.
pub fn capparelli_recurrence(k_max: u32, trunc: usize) -> Result<Vec<QSeries>, SeriesError> {
    let mut out = vec![QSeries::one(trunc)];
    // (G_{k-1}, G_{k-2}, G_{k-3}) starting at k = 1.
    let mut prev = (QSeries::one(trunc), QSeries::one(trunc), QSeries::zero(trunc));
    for k in 1..=k_max as usize {
        let m1 = QSeries::binomial(1, mono(Var::C), k, trunc);
        let m2 = a_d_ad(k, trunc);
        let m3 = QSeries::from_terms(
            &[(1, ad(), 2 * k - 1), (-1, ad().mul(&mono(Var::C)), 3 * k - 2)],
            trunc,
        );
        let gk = prev
            .0
            .mul(&m1)?
            .add(&prev.1.mul(&m2)?)?
            .add(&prev.2.mul(&m3)?)?;
        out.push(gk.clone());
        prev = (gk, prev.0, prev.1);
    }
    Ok(out)
}

/// Solves the Primc system up to `k_max`. The self-referential equations are
/// solved by isolating:
/// `E_{k_b} = bq^k G_{(k-1)_d} / (1-bq^k)`,
/// `E_{k_c} = cq^k (E_{k_a} + G_{(k-1)_c}) / (1-cq^k)`,
/// then `E_{k_d} = dq^k (E_{k_c} + E_{k_a} + G_{(k-1)_c})`; every divisor is
/// a unit. Initial values: `E_{0_b} = b`, `G_{0_a} = G_{-1_d} = 1-b`, the
/// other `E_0` zero and `G_0` one.
pub fn primc_system(k_max: u32, trunc: usize) -> Result<GFTable, SeriesError> {
    use Colour::{A, B, C, D};
    let one = QSeries::one(trunc);
    let zero = QSeries::zero(trunc);
    let one_minus_b = QSeries::from_terms(
        &[(1, ColourMonomial::ONE, 0), (-1, mono(Var::B), 0)],
        trunc,
    );
    let mut g: BTreeMap<(i32, Colour), QSeries> = BTreeMap::new();
    let mut e: BTreeMap<(i32, Colour), QSeries> = BTreeMap::new();
    e.insert((0, A), zero.clone());
    e.insert((0, B), QSeries::from_terms(&[(1, mono(Var::B), 0)], trunc));
    e.insert((0, C), zero.clone());
    e.insert((0, D), zero);
    g.insert((0, A), one_minus_b.clone());
    g.insert((0, B), one.clone());
    g.insert((0, C), one.clone());
    g.insert((0, D), one);
    g.insert((-1, D), one_minus_b);

    for k in 1..=k_max as i32 {
        let ku = k as usize;
        let e_ka = e[&(k - 1, B)]
            .add(&g[&(k - 2, D)])?
            .mul_term(1, mono(Var::A), ku);
        let g_ka = g[&(k - 1, D)].add(&e_ka)?;
        let inv_b = QSeries::binomial(-1, mono(Var::B), ku, trunc).invert_unit()?;
        let e_kb = g[&(k - 1, D)].mul_term(1, mono(Var::B), ku).mul(&inv_b)?;
        let g_kb = g_ka.add(&e_kb)?;
        let inv_c = QSeries::binomial(-1, mono(Var::C), ku, trunc).invert_unit()?;
        let e_kc = e_ka
            .add(&g[&(k - 1, C)])?
            .mul_term(1, mono(Var::C), ku)
            .mul(&inv_c)?;
        let g_kc = g_kb.add(&e_kc)?;
        let e_kd = e_kc
            .add(&e_ka)?
            .add(&g[&(k - 1, C)])?
            .mul_term(1, mono(Var::D), ku);
        let g_kd = g_kc.add(&e_kd)?;
        e.insert((k, A), e_ka);
        e.insert((k, B), e_kb);
        e.insert((k, C), e_kc);
        e.insert((k, D), e_kd);
        g.insert((k, A), g_ka);
        g.insert((k, B), g_kb);
        g.insert((k, C), g_kc);
        g.insert((k, D), g_kd);
    }
    Ok(GFTable {
        kind: SystemKind::Primc,
        trunc,
        k_max,
        g,
        e,
    })
}

/// The H-sequence, indexed from `H_{-1}`.
#[derive(Clone, Debug)]
pub struct HSequence {
    values: Vec<QSeries>,
}

impl HSequence {
    /// `H_k` for `-1 <= k <= k_max`.
    pub fn h(&self, k: i32) -> &QSeries {
        &self.values[(k + 1) as usize]
    }

    pub fn k_max(&self) -> i32 {
        self.values.len() as i32 - 2
    }
}

/// Computes `H_{-1} = 1`, `H_0 = 1/(1-bq)`,
/// `H_1 = (1-bcq^2)/((1-cq)(1-bq)(1-bq^2)) + (aq+dq+adq^2)/((1-cq)(1-bq^2))`,
/// and for `k >= 2` the recurrence
/// `(1-cq^k)(1-bq^{k+1}) H_k = (1-bcq^{2k}) H_{k-1}
///  + (aq^k+dq^k+adq^{2k}) H_{k-2} + adq^{2k-1} H_{k-3}`,
/// dividing by the unit `(1-cq^k)(1-bq^{k+1})`.
///
/// The recurrence instances at `k = 0, 1` involve `H_{-2}` and the Laurent
/// seed `H_{-3} = (b-1)cq/(ad)`; they are verified by
/// [`check_h_base_cases`] rather than used for construction, which avoids
/// dividing by the non-unit `1-c`.
pub fn h_sequence(k_max: u32, trunc: usize) -> Result<HSequence, SeriesError> {
    let mut values = vec![QSeries::one(trunc)]; // H_{-1}
    let h0 = QSeries::binomial(-1, mono(Var::B), 1, trunc).invert_unit()?;
    values.push(h0);
    if k_max >= 1 {
        values.push(h1(trunc)?);
    }
    for k in 2..=k_max as usize {
        let prev1 = &values[k]; // H_{k-1}
        let prev2 = &values[k - 1];
        let prev3 = &values[k - 2];
        let t1 = prev1.mul(&QSeries::binomial(-1, bc(), 2 * k, trunc))?;
        let t2 = prev2.mul(&a_d_ad(k, trunc))?;
        let t3 = prev3.mul_term(1, ad(), 2 * k - 1);
        let divisor = QSeries::binomial(-1, mono(Var::C), k, trunc)
            .mul(&QSeries::binomial(-1, mono(Var::B), k + 1, trunc))?;
        let hk = t1.add(&t2)?.add(&t3)?.mul(&divisor.invert_unit()?)?;
        values.push(hk);
    }
    Ok(HSequence { values })
}

fn h1(trunc: usize) -> Result<QSeries, SeriesError> {
    let one_m_cq = QSeries::binomial(-1, mono(Var::C), 1, trunc);
    let one_m_bq = QSeries::binomial(-1, mono(Var::B), 1, trunc);
    let one_m_bq2 = QSeries::binomial(-1, mono(Var::B), 2, trunc);
    let t1 = QSeries::binomial(-1, bc(), 2, trunc).mul(
        &one_m_cq
            .mul(&one_m_bq)?
            .mul(&one_m_bq2)?
            .invert_unit()?,
    )?;
    let t2 = a_d_ad(1, trunc).mul(&one_m_cq.mul(&one_m_bq2)?.invert_unit()?)?;
    t1.add(&t2)
}

/// Verifies by cross-multiplication that the H-recurrence also holds at
/// `k = 0` and `k = 1`, with `H_{-2} = 0` and the Laurent monomial seed
/// `H_{-3} = (b-1)cq/(ad)`. No non-unit is ever inverted: the `adq^{-1}`
/// factor is applied as a monomial multiplication followed by an exact
/// `q`-shift.
pub fn check_h_base_cases(trunc: usize) -> Result<bool, SeriesError> {
    assert!(trunc >= 2);
    // One extra order so the q^-1 shift loses nothing below `trunc`.
    let big = trunc + 1;
    let h_m1 = QSeries::one(big);
    let h0 = QSeries::binomial(-1, mono(Var::B), 1, big).invert_unit()?;
    let h1 = h1(big)?;

    // H_{-3} = (b-1)cq/(ad): colour exponents may be negative, q stays at 1.
    let inv_ad = ColourMonomial::new(-1, 0, 0, -1);
    let h_m3 = QSeries::from_terms(
        &[
            (1, bc().mul(&inv_ad), 1),
            (-1, mono(Var::C).mul(&inv_ad), 1),
        ],
        big,
    );

    // k = 0: (1-c)(1-bq) H_0 = (1-bc) H_{-1} + adq^{-1} H_{-3}.
    let one_minus_c = CoeffPoly::from_terms(&[
        (ColourMonomial::ONE, 1),
        (ColourMonomial::var(Var::C), -1),
    ]);
    let lhs0 = h0
        .mul(&QSeries::binomial(-1, mono(Var::B), 1, big))?
        .mul_poly(&one_minus_c)
        .restricted(big - 1)?;
    let one_minus_bc = CoeffPoly::from_terms(&[(ColourMonomial::ONE, 1), (bc(), -1)]);
    let t3 = h_m3.mul_term(1, ad(), 0).shift_down(1)?;
    let rhs0 = h_m1.mul_poly(&one_minus_bc).restricted(big - 1)?.add(&t3)?;
    if lhs0 != rhs0 {
        return Ok(false);
    }

    // k = 1: (1-cq)(1-bq^2) H_1 = (1-bcq^2) H_0 + (aq+dq+adq^2) H_{-1}.
    let lhs1 = h1
        .mul(&QSeries::binomial(-1, mono(Var::C), 1, big))?
        .mul(&QSeries::binomial(-1, mono(Var::B), 2, big))?;
    let rhs1 = h0
        .mul(&QSeries::binomial(-1, bc(), 2, big))?
        .add(&h_m1.mul(&a_d_ad(1, big))?)?;
    Ok(lhs1 == rhs1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::EnumSpec;
    use crate::qseries::Substitution;

    const TRUNC: usize = 12;

    fn a() -> ColourMonomial {
        mono(Var::A)
    }
    fn b() -> ColourMonomial {
        mono(Var::B)
    }
    fn c() -> ColourMonomial {
        mono(Var::C)
    }
    fn d() -> ColourMonomial {
        mono(Var::D)
    }

    #[test]
    fn capparelli_initial_values_and_first_step() {
        let table = capparelli_system(1, 3).unwrap();
        assert_eq!(table.g(0, Colour::D).unwrap(), &QSeries::one(3));
        // E_{1_c} = cq G_{0_c} = cq.
        assert_eq!(
            table.e(1, Colour::C).unwrap(),
            &QSeries::from_terms(&[(1, c(), 1)], 3)
        );
        // G_{1_d} = 1 + (a+c+d) q + ad q^2.
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a(), 1),
                (1, c(), 1),
                (1, d(), 1),
                (1, a().mul(&d()), 2),
            ],
            3,
        );
        assert_eq!(table.g(1, Colour::D).unwrap(), &expected);
    }

    #[test]
    fn capparelli_recurrence_first_step_by_hand() {
        // k = 1: (1+cq)*1 + (aq+dq+adq^2)*1 + adq(1-c)*0.
        let gs = capparelli_recurrence(1, 3).unwrap();
        assert_eq!(gs[0], QSeries::one(3));
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a(), 1),
                (1, c(), 1),
                (1, d(), 1),
                (1, a().mul(&d()), 2),
            ],
            3,
        );
        assert_eq!(gs[1], expected);
    }

    #[test]
    fn capparelli_routes_agree_with_each_other_and_the_oracle() {
        let k_max = 5;
        let table = capparelli_system(k_max, TRUNC).unwrap();
        let rec = capparelli_recurrence(k_max, TRUNC).unwrap();
        for k in 1..=k_max {
            let g = table.g(k as i32, Colour::D).unwrap();
            assert_eq!(g, &rec[k as usize], "system vs recurrence at k={k}");
            let oracle = EnumSpec::capparelli(k).generating_series(TRUNC);
            assert_eq!(g, &oracle, "system vs enumeration at k={k}");
        }
        assert!(table.check_consistency().unwrap());
    }

    #[test]
    fn primc_initial_values_and_first_step() {
        let table = primc_system(1, 3).unwrap();
        assert_eq!(
            table.e(0, Colour::B).unwrap(),
            &QSeries::from_terms(&[(1, b(), 0)], 3)
        );
        // G_{1_d} = 1 + (a+b+c+d) q + (b^2+c^2+ac+ad+cd) q^2.
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a(), 1),
                (1, b(), 1),
                (1, c(), 1),
                (1, d(), 1),
                (1, b().pow(2), 2),
                (1, c().pow(2), 2),
                (1, a().mul(&c()), 2),
                (1, a().mul(&d()), 2),
                (1, c().mul(&d()), 2),
            ],
            3,
        );
        assert_eq!(table.g(1, Colour::D).unwrap(), &expected);
    }

    #[test]
    fn primc_system_matches_enumeration_oracle() {
        let k_max = 4;
        let table = primc_system(k_max, TRUNC).unwrap();
        for k in 1..=k_max {
            let oracle = EnumSpec::primc(k).generating_series(TRUNC);
            assert_eq!(table.g(k as i32, Colour::D).unwrap(), &oracle, "k={k}");
        }
        assert!(table.check_consistency().unwrap());
    }

    #[test]
    fn h_sequence_base_values() {
        let hs = h_sequence(3, 4).unwrap();
        assert_eq!(hs.h(-1), &QSeries::one(4));
        // H_0 = 1 + bq + b^2 q^2 + b^3 q^3.
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, b(), 1),
                (1, b().pow(2), 2),
                (1, b().pow(3), 3),
            ],
            4,
        );
        assert_eq!(hs.h(0), &expected);
    }

    #[test]
    fn h1_cleared_denominators_match_hand_expansion() {
        // H_1 (1-cq)(1-bq)(1-bq^2) = (1-bcq^2) + (aq+dq+adq^2)(1-bq).
        let hs = h_sequence(1, 10).unwrap();
        let lhs = hs
            .h(1)
            .mul(&QSeries::binomial(-1, c(), 1, 10))
            .unwrap()
            .mul(&QSeries::binomial(-1, b(), 1, 10))
            .unwrap()
            .mul(&QSeries::binomial(-1, b(), 2, 10))
            .unwrap();
        let rhs = QSeries::binomial(-1, bc(), 2, 10)
            .add(
                &a_d_ad(1, 10)
                    .mul(&QSeries::binomial(-1, b(), 1, 10))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_base_cases_hold() {
        assert!(check_h_base_cases(2).unwrap());
        assert!(check_h_base_cases(16).unwrap());
    }

    #[test]
    fn lemma_quotients_relate_g_to_h() {
        let k_max = 4;
        let hs = h_sequence(k_max, TRUNC).unwrap();
        let cap = capparelli_system(k_max, TRUNC).unwrap();
        let primc = primc_system(k_max, TRUNC).unwrap();
        let b_to_c = Substitution::new().map_var(Var::B, c(), 0);
        for k in 0..=k_max {
            // G^C_{k_d} / (cq;q)_{k+1} = H_k with b := c.
            let poch = crate::qseries::pochhammer(1, c(), 1, 1, Some(k as usize + 1), TRUNC)
                .unwrap();
            let lhs = cap
                .g(k as i32, Colour::D)
                .unwrap()
                .mul(&poch.invert_unit().unwrap())
                .unwrap();
            assert_eq!(lhs, b_to_c.apply(hs.h(k as i32)).unwrap(), "capH at k={k}");

            // G^P_{k_d} = (1 - bq^{k+1}) H_k.
            let rhs = hs
                .h(k as i32)
                .mul(&QSeries::binomial(-1, b(), k as usize + 1, TRUNC))
                .unwrap();
            assert_eq!(primc.g(k as i32, Colour::D).unwrap(), &rhs, "primcH at k={k}");
        }
    }

    #[test]
    fn headline_quotient_identity() {
        // G^C_k / (cq;q)_k = G^P_k with b := c, for small k.
        let k_max = 4;
        let cap = capparelli_system(k_max, TRUNC).unwrap();
        let primc = primc_system(k_max, TRUNC).unwrap();
        let b_to_c = Substitution::new().map_var(Var::B, c(), 0);
        for k in 1..=k_max {
            let poch =
                crate::qseries::pochhammer(1, c(), 1, 1, Some(k as usize), TRUNC).unwrap();
            let lhs = cap
                .g(k as i32, Colour::D)
                .unwrap()
                .mul(&poch.invert_unit().unwrap())
                .unwrap();
            let rhs = b_to_c.apply(primc.g(k as i32, Colour::D).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn primc_collapsed_recurrence_cross_multiplied() {
        // (1-cq^k) G_k = (1-bcq^{2k})/(1-bq^k) G_{k-1}
        //   + (aq^k+dq^k+adq^{2k})/(1-bq^{k-1}) G_{k-2}
        //   + adq^{2k-1}/(1-bq^{k-2}) G_{k-3},
        // where at k = 2 the last term is adq^3 after the exact cancellation
        // G_{-1_d}/(1-b) = 1.
        let k_max = 5;
        let table = primc_system(k_max, TRUNC).unwrap();
        let g = |k: i32| table.g(k, Colour::D).unwrap().clone();
        for k in 2..=k_max as i32 {
            let ku = k as usize;
            let lhs = g(k)
                .mul(&QSeries::binomial(-1, c(), ku, TRUNC))
                .unwrap();
            let t1 = g(k - 1)
                .mul(&QSeries::binomial(-1, bc(), 2 * ku, TRUNC))
                .unwrap()
                .mul(
                    &QSeries::binomial(-1, b(), ku, TRUNC)
                        .invert_unit()
                        .unwrap(),
                )
                .unwrap();
            let t2 = g(k - 2)
                .mul(&a_d_ad(ku, TRUNC))
                .unwrap()
                .mul(
                    &QSeries::binomial(-1, b(), ku - 1, TRUNC)
                        .invert_unit()
                        .unwrap(),
                )
                .unwrap();
            let t3 = if k == 2 {
                QSeries::from_terms(&[(1, ad(), 3)], TRUNC)
            } else {
                g(k - 3)
                    .mul_term(1, ad(), 2 * ku - 1)
                    .mul(
                        &QSeries::binomial(-1, b(), ku - 2, TRUNC)
                            .invert_unit()
                            .unwrap(),
                    )
                    .unwrap()
            };
            let rhs = t1.add(&t2).unwrap().add(&t3).unwrap();
            assert_eq!(lhs, rhs, "k={k}");
        }
    }
}
