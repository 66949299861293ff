//! The explicit finite formulas: the u-sequence (recurrence and closed
//! sums), the closed H-sum, the finite Capparelli and Primc identities,
//! their b = 1 corollaries, and the infinite-product truncations.
//!
//! Conventions: `(x;q)_0 = 1`, an empty sum is 0, and `binom(m,2) = 0` for
//! `m <= 1`. Whenever a formula carries the non-unit factor `1-b` in a
//! denominator, the cancellation against the matching `1-b` prefactor is
//! performed symbolically before any series division, and every remaining
//! divisor has constant term 1.

use crate::qseries::{pochhammer, CoeffPoly, ColourMonomial, QSeries, SeriesError, Substitution, Var};

fn mono(v: Var) -> ColourMonomial {
    ColourMonomial::var(v)
}

/// `(q;q)_n`.
fn qq(n: usize, trunc: usize) -> Result<QSeries, SeriesError> {
    pochhammer(1, ColourMonomial::ONE, 1, 1, Some(n), trunc)
}

/// Inverse of `(q;q)_n`.
fn inv_qq(n: usize, trunc: usize) -> Result<QSeries, SeriesError> {
    qq(n, trunc)?.invert_unit()
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// How a [`USequence`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ByRecurrence,
    ByClosedForm,
}

/// The sequence `u_0, u_1, ...` of series; both provenances must agree
/// term by term (asserted by the callers that hold both).
#[derive(Clone, Debug)]
pub struct USequence {
    pub provenance: Provenance,
    values: Vec<QSeries>,
}

impl USequence {
    pub fn u(&self, n: usize) -> &QSeries {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `u_0 = 1`, `u_1 = q(b-1)/((1-bq)(1-q))`, and for `n >= 2`
/// `u_n = (1+aq^{n-1})(1+dq^{n-1}) / ((1-bq^n)(1-cq^{n-1})) u_{n-2}
///        + (-1)^n q^n (1-b) / ((1-bq^n)(q;q)_n)`.
/// All divisors are units for `n >= 2`.
pub fn u_by_recurrence(n_max: usize, trunc: usize) -> Result<USequence, SeriesError> {
    let mut values = vec![QSeries::one(trunc)];
    if n_max >= 1 {
        let numerator = QSeries::from_terms(
            &[(1, mono(Var::B), 1), (-1, ColourMonomial::ONE, 1)],
            trunc,
        );
        let denom = QSeries::binomial(-1, mono(Var::B), 1, trunc)
            .mul(&QSeries::binomial(-1, ColourMonomial::ONE, 1, trunc))?;
        values.push(numerator.mul(&denom.invert_unit()?)?);
    }
    for n in 2..=n_max {
        let t1 = values[n - 2]
            .mul(&QSeries::binomial(1, mono(Var::A), n - 1, trunc))?
            .mul(&QSeries::binomial(1, mono(Var::D), n - 1, trunc))?
            .mul(
                &QSeries::binomial(-1, mono(Var::B), n, trunc)
                    .mul(&QSeries::binomial(-1, mono(Var::C), n - 1, trunc))?
                    .invert_unit()?,
            )?;
        let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
        // (-1)^n q^n (1-b)
        let t2 = QSeries::from_terms(
            &[(sign, ColourMonomial::ONE, n), (-sign, mono(Var::B), n)],
            trunc,
        )
        .mul(&QSeries::binomial(-1, mono(Var::B), n, trunc).invert_unit()?)?
        .mul(&inv_qq(n, trunc)?)?;
        values.push(t1.add(&t2)?);
    }
    Ok(USequence {
        provenance: Provenance::ByRecurrence,
        values,
    })
}

/// The iterated closed sums:
/// `u_{2n} = (1-b) sum_{l=0}^{n} (-aq^{2l+1};q^2)_{n-l} (-dq^{2l+1};q^2)_{n-l}
///           / ((bq^{2l};q^2)_{n-l+1} (cq^{2l+1};q^2)_{n-l}) q^{2l}/(q;q)_{2l}`
/// and the analogous odd sum with prefactor `b-1`. The `l = 0` term of the
/// even sum carries `(1-b)` inside `(bq^0;q^2)_{n+1}`; that factor is
/// cancelled against the prefactor symbolically, after which every divisor
/// is a unit.
pub fn u_by_closed_form(n_max: usize, trunc: usize) -> Result<USequence, SeriesError> {
    let one_minus_b = CoeffPoly::from_terms(&[
        (ColourMonomial::ONE, 1),
        (ColourMonomial::var(Var::B), -1),
    ]);
    let b_minus_one = CoeffPoly::from_terms(&[
        (ColourMonomial::var(Var::B), 1),
        (ColourMonomial::ONE, -1),
    ]);
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n % 2 == 0 {
            let half = n / 2;
            // l = 0, with the (1-b) factor already cancelled:
            // (-aq;q^2)_half (-dq;q^2)_half / ((bq^2;q^2)_half (cq;q^2)_half)
            let mut sum = pochhammer(-1, mono(Var::A), 1, 2, Some(half), trunc)?
                .mul(&pochhammer(-1, mono(Var::D), 1, 2, Some(half), trunc)?)?
                .mul(
                    &pochhammer(1, mono(Var::B), 2, 2, Some(half), trunc)?
                        .mul(&pochhammer(1, mono(Var::C), 1, 2, Some(half), trunc)?)?
                        .invert_unit()?,
                )?;
            for l in 1..=half {
                let m = half - l;
                let term = pochhammer(-1, mono(Var::A), 2 * l + 1, 2, Some(m), trunc)?
                    .mul(&pochhammer(-1, mono(Var::D), 2 * l + 1, 2, Some(m), trunc)?)?
                    .mul(
                        &pochhammer(1, mono(Var::B), 2 * l, 2, Some(m + 1), trunc)?
                            .mul(&pochhammer(1, mono(Var::C), 2 * l + 1, 2, Some(m), trunc)?)?
                            .invert_unit()?,
                    )?
                    .mul_term(1, ColourMonomial::ONE, 2 * l)
                    .mul(&inv_qq(2 * l, trunc)?)?
                    .mul_poly(&one_minus_b);
                sum = sum.add(&term)?;
            }
            values.push(sum);
        } else {
            let half = (n - 1) / 2;
            let mut sum = QSeries::zero(trunc);
            for l in 0..=half {
                let m = half - l;
                let term = pochhammer(-1, mono(Var::A), 2 * l + 2, 2, Some(m), trunc)?
                    .mul(&pochhammer(-1, mono(Var::D), 2 * l + 2, 2, Some(m), trunc)?)?
                    .mul(
                        &pochhammer(1, mono(Var::B), 2 * l + 1, 2, Some(m + 1), trunc)?
                            .mul(&pochhammer(1, mono(Var::C), 2 * l + 2, 2, Some(m), trunc)?)?
                            .invert_unit()?,
                    )?
                    .mul_term(1, ColourMonomial::ONE, 2 * l + 1)
                    .mul(&inv_qq(2 * l + 1, trunc)?)?;
                sum = sum.add(&term)?;
            }
            values.push(sum.mul_poly(&b_minus_one));
        }
    }
    Ok(USequence {
        provenance: Provenance::ByClosedForm,
        values,
    })
}

/// The closed H-sum `H_k = sum_{j=0}^{k+1} u_j q^{binom(k+1-j,2)} / (q;q)_{k+1-j}`,
/// with the u-values taken from the closed form.
pub fn h_closed(k: u32, trunc: usize) -> Result<QSeries, SeriesError> {
    let top = k as usize + 1;
    let u = u_by_closed_form(top, trunc)?;
    let mut sum = QSeries::zero(trunc);
    for j in 0..=top {
        let term = u
            .u(j)
            .mul_term(1, ColourMonomial::ONE, binom2(top - j))
            .mul(&inv_qq(top - j, trunc)?)?;
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// Finite Primc identity: `G^P_k = (1 - bq^{k+1}) sum_j u_j(a,b,c,d)
/// q^{binom(k+1-j,2)} / (q;q)_{k+1-j}`.
pub fn finite_primc(k: u32, trunc: usize) -> Result<QSeries, SeriesError> {
    h_closed(k, trunc)?.mul(&QSeries::binomial(-1, mono(Var::B), k as usize + 1, trunc))
}

/// Finite Capparelli identity: `G^C_k = (cq;q)_{k+1} sum_j u_j(a,c,c,d)
/// q^{binom(k+1-j,2)} / (q;q)_{k+1-j}` — the u-values specialised at b := c.
pub fn finite_capparelli(k: u32, trunc: usize) -> Result<QSeries, SeriesError> {
    let top = k as usize + 1;
    let u = u_by_closed_form(top, trunc)?;
    let b_to_c = Substitution::new().map_var(Var::B, mono(Var::C), 0);
    let mut sum = QSeries::zero(trunc);
    for j in 0..=top {
        let term = b_to_c
            .apply(u.u(j))?
            .mul_term(1, ColourMonomial::ONE, binom2(top - j))
            .mul(&inv_qq(top - j, trunc)?)?;
        sum = sum.add(&term)?;
    }
    sum.mul(&pochhammer(1, mono(Var::C), 1, 1, Some(top), trunc)?)
}

/// The b = 1 corollary of the finite Primc identity, evaluated on its own
/// from Pochhammer blocks (independently of the u-machinery):
/// `G^P_k(q;a,1,c,d) = (1-q^{k+1}) sum_{j=0}^{floor((k+1)/2)}
///  (-aq;q^2)_j (-dq;q^2)_j / ((q^2;q^2)_j (cq;q^2)_j)
///  q^{binom(k+1-2j,2)} / (q;q)_{k+1-2j}`.
///
/// At b = 1 the odd u-terms vanish and the even ones collapse to the `l = 0`
/// summand, so only the even offsets `j` survive with weight `k+1-2j`.
pub fn cor_prim_fini_sans_b(k: u32, trunc: usize) -> Result<QSeries, SeriesError> {
    let top = k as usize + 1;
    let mut sum = QSeries::zero(trunc);
    for j in 0..=top / 2 {
        let term = pochhammer(-1, mono(Var::A), 1, 2, Some(j), trunc)?
            .mul(&pochhammer(-1, mono(Var::D), 1, 2, Some(j), trunc)?)?
            .mul(
                &pochhammer(1, ColourMonomial::ONE, 2, 2, Some(j), trunc)?
                    .mul(&pochhammer(1, mono(Var::C), 1, 2, Some(j), trunc)?)?
                    .invert_unit()?,
            )?
            .mul_term(1, ColourMonomial::ONE, binom2(top - 2 * j))
            .mul(&inv_qq(top - 2 * j, trunc)?)?;
        sum = sum.add(&term)?;
    }
    sum.mul(&QSeries::binomial(-1, ColourMonomial::ONE, top, trunc))
}

/// Both readings of the b = 1 Capparelli corollary (`G^C_k(q;a,1,d) =
/// (q;q)_{k+1} sum_j ...`): the right side as printed keeps a symbolic
/// `(cq;q^2)_j` factor even though the left side no longer involves `c`;
/// [`cor_capa_fini_sans_b`] evaluates that reading alongside the one with
/// `c := 1`, so the caller can report both comparisons.
#[derive(Clone, Debug)]
pub struct CapaSansB {
    pub with_c_one: QSeries,
    pub as_printed: QSeries,
}

pub fn cor_capa_fini_sans_b(k: u32, trunc: usize) -> Result<CapaSansB, SeriesError> {
    let top = k as usize + 1;
    let build = |c_mono: ColourMonomial| -> Result<QSeries, SeriesError> {
        let mut sum = QSeries::zero(trunc);
        for j in 0..=top / 2 {
            let term = pochhammer(-1, mono(Var::A), 1, 2, Some(j), trunc)?
                .mul(&pochhammer(-1, mono(Var::D), 1, 2, Some(j), trunc)?)?
                .mul(
                    &pochhammer(1, ColourMonomial::ONE, 2, 2, Some(j), trunc)?
                        .mul(&pochhammer(1, c_mono, 1, 2, Some(j), trunc)?)?
                        .invert_unit()?,
                )?
                .mul_term(1, ColourMonomial::ONE, binom2(top - 2 * j))
                .mul(&inv_qq(top - 2 * j, trunc)?)?;
            sum = sum.add(&term)?;
        }
        sum.mul(&qq(top, trunc)?)
    };
    Ok(CapaSansB {
        with_c_one: build(ColourMonomial::ONE)?,
        as_printed: build(mono(Var::C))?,
    })
}

/// `(-q;q)_inf (-aq;q^2)_inf (-dq;q^2)_inf` — the product side of the
/// reformulated Capparelli identity, tracking `a` and `d`.
pub fn product_capparelli(trunc: usize) -> Result<QSeries, SeriesError> {
    pochhammer(-1, ColourMonomial::ONE, 1, 1, None, trunc)?
        .mul(&pochhammer(-1, mono(Var::A), 1, 2, None, trunc)?)?
        .mul(&pochhammer(-1, mono(Var::D), 1, 2, None, trunc)?)
}

/// `(-aq;q^2)_inf (-dq;q^2)_inf / ((q;q)_inf (cq;q^2)_inf)` — the product
/// side of the Primc identity, tracking `a`, `c`, `d`.
pub fn product_primc(trunc: usize) -> Result<QSeries, SeriesError> {
    pochhammer(-1, mono(Var::A), 1, 2, None, trunc)?
        .mul(&pochhammer(-1, mono(Var::D), 1, 2, None, trunc)?)?
        .mul(&pochhammer(1, ColourMonomial::ONE, 1, 1, None, trunc)?.invert_unit()?)?
        .mul(&pochhammer(1, mono(Var::C), 1, 2, None, trunc)?.invert_unit()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrences::h_sequence;

    const TRUNC: usize = 14;

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
    fn u0_and_u1_frozen_expansions() {
        let u = u_by_recurrence(1, 4).unwrap();
        assert_eq!(u.u(0), &QSeries::one(4));
        // u_1 = q(b-1)(1+bq+b^2q^2)(1+q+q^2) truncated:
        // (b-1)q + (b^2-1)q^2 + (b^3-1)q^3.
        let expected = QSeries::from_terms(
            &[
                (1, b(), 1),
                (-1, ColourMonomial::ONE, 1),
                (1, b().pow(2), 2),
                (-1, ColourMonomial::ONE, 2),
                (1, b().pow(3), 3),
                (-1, ColourMonomial::ONE, 3),
            ],
            4,
        );
        assert_eq!(u.u(1), &expected);
        let uc = u_by_closed_form(1, 4).unwrap();
        assert_eq!(uc.u(0), &QSeries::one(4));
        assert_eq!(uc.u(1), &expected);
    }

    #[test]
    fn u2_matches_one_step_by_hand() {
        // u_2 = (1+aq)(1+dq)/((1-bq^2)(1-cq)) + q^2(1-b)/((1-bq^2)(q;q)_2).
        let t1 = QSeries::binomial(1, a(), 1, TRUNC)
            .mul(&QSeries::binomial(1, d(), 1, TRUNC))
            .unwrap()
            .mul(
                &QSeries::binomial(-1, b(), 2, TRUNC)
                    .mul(&QSeries::binomial(-1, c(), 1, TRUNC))
                    .unwrap()
                    .invert_unit()
                    .unwrap(),
            )
            .unwrap();
        let t2 = QSeries::from_terms(&[(1, ColourMonomial::ONE, 2), (-1, b(), 2)], TRUNC)
            .mul(
                &QSeries::binomial(-1, b(), 2, TRUNC)
                    .mul(&qq(2, TRUNC).unwrap())
                    .unwrap()
                    .invert_unit()
                    .unwrap(),
            )
            .unwrap();
        let expected = t1.add(&t2).unwrap();
        assert_eq!(u_by_recurrence(2, TRUNC).unwrap().u(2), &expected);
        assert_eq!(u_by_closed_form(2, TRUNC).unwrap().u(2), &expected);
    }

    #[test]
    fn u_routes_agree() {
        let n_max = 7;
        let rec = u_by_recurrence(n_max, TRUNC).unwrap();
        let closed = u_by_closed_form(n_max, TRUNC).unwrap();
        for n in 0..=n_max {
            assert_eq!(rec.u(n), closed.u(n), "n={n}");
        }
    }

    #[test]
    fn h_closed_base_case_is_geometric() {
        // H_0 = 1/(1-q) + q(b-1)/((1-bq)(1-q)) = 1/(1-bq).
        let got = h_closed(0, 10).unwrap();
        let expected = QSeries::binomial(-1, b(), 1, 10).invert_unit().unwrap();
        assert_eq!(got, expected);
        // Truncation order 1 keeps only the empty partition.
        assert_eq!(h_closed(5, 1).unwrap(), QSeries::one(1));
    }

    #[test]
    fn h_closed_matches_h_recurrence() {
        let hs = h_sequence(5, TRUNC).unwrap();
        for k in 0..=5u32 {
            assert_eq!(&h_closed(k, TRUNC).unwrap(), hs.h(k as i32), "k={k}");
        }
    }

    #[test]
    fn finite_forms_reproduce_first_generating_functions() {
        // G^P_1 and G^C_1 at truncation 3.
        let gp1 = finite_primc(1, 3).unwrap();
        let expected_p = QSeries::from_terms(
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
        assert_eq!(gp1, expected_p);

        let gc1 = finite_capparelli(1, 3).unwrap();
        let expected_c = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, a(), 1),
                (1, c(), 1),
                (1, d(), 1),
                (1, a().mul(&d()), 2),
            ],
            3,
        );
        assert_eq!(gc1, expected_c);
    }

    #[test]
    fn corollary_matches_b_one_specialisation() {
        let b_to_one = Substitution::new().set_one(Var::B);
        for k in 1..=5u32 {
            let direct = cor_prim_fini_sans_b(k, TRUNC).unwrap();
            let via_theorem = b_to_one.apply(&finite_primc(k, TRUNC).unwrap()).unwrap();
            assert_eq!(direct, via_theorem, "k={k}");
        }
    }

    #[test]
    fn capa_corollary_two_readings() {
        let c_to_one = Substitution::new().set_one(Var::C);
        for k in 1..=5u32 {
            let lhs = c_to_one
                .apply(&finite_capparelli(k, TRUNC).unwrap())
                .unwrap();
            let both = cor_capa_fini_sans_b(k, TRUNC).unwrap();
            assert_eq!(both.with_c_one, lhs, "c:=1 reading at k={k}");
            // The printed reading keeps c in a denominator the left side
            // does not have, so it cannot agree.
            assert_ne!(both.as_printed, lhs, "printed reading at k={k}");
        }
    }

    #[test]
    fn products_truncate_as_expected() {
        // (-q;q)(-aq;q^2)(-dq;q^2) = 1 + (1+a+d)q + (1+a+d+ad)q^2 + ...
        let p = product_capparelli(3).unwrap();
        let expected = QSeries::from_terms(
            &[
                (1, ColourMonomial::ONE, 0),
                (1, ColourMonomial::ONE, 1),
                (1, a(), 1),
                (1, d(), 1),
                (1, ColourMonomial::ONE, 2),
                (1, a(), 2),
                (1, d(), 2),
                (1, a().mul(&d()), 2),
            ],
            3,
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn primc_product_with_colours_zeroed_counts_partitions() {
        let trunc = 21;
        let p = product_primc(trunc)
            .unwrap()
            .set_vars_to_zero(&[Var::A, Var::C, Var::D])
            .unwrap();
        let counts = crate::oracles::ordinary_partition_counts(trunc - 1);
        for (n, &count) in counts.iter().enumerate() {
            assert_eq!(
                p.coeff(n).unwrap(),
                &CoeffPoly::constant(count as i64),
                "n={n}"
            );
        }
    }

    #[test]
    fn primc_product_specialises_to_capparelli_product() {
        // In the plain variables, c := 1 alone turns the Primc product into
        // the Capparelli product divided by (q;q)_inf, via 1/(q;q^2)_inf =
        // (-q;q)_inf.
        let trunc = 20;
        let inv_qq_inf = pochhammer(1, ColourMonomial::ONE, 1, 1, None, trunc)
            .unwrap()
            .invert_unit()
            .unwrap();
        let substituted = Substitution::new()
            .set_one(Var::C)
            .apply(&product_primc(trunc).unwrap())
            .unwrap();
        let rhs = product_capparelli(trunc)
            .unwrap()
            .mul(&inv_qq_inf)
            .unwrap();
        assert_eq!(substituted, rhs);

        // Stated through the tilde variables instead: c := 1, a := at*q,
        // d := bt*q (tilde colours live in the swapped slots d and a) yields
        // the tilde-coloured product times the same factor.
        let substituted = Substitution::new()
            .set_one(Var::C)
            .map_var(Var::A, d(), 1)
            .map_var(Var::D, a(), 1)
            .apply(&product_primc(trunc).unwrap())
            .unwrap();
        let tilde_product = pochhammer(-1, ColourMonomial::ONE, 1, 1, None, trunc)
            .unwrap()
            .mul(&pochhammer(-1, d(), 2, 2, None, trunc).unwrap())
            .unwrap()
            .mul(&pochhammer(-1, a(), 2, 2, None, trunc).unwrap())
            .unwrap();
        assert_eq!(substituted, tilde_product.mul(&inv_qq_inf).unwrap());
    }

    #[test]
    fn finite_primc_stabilises_to_the_product() {
        // For k >= trunc, the b = 1 closed form agrees with the infinite
        // product through the whole truncation window.
        let trunc = 10;
        let product = product_primc(trunc).unwrap();
        for k in [10u32, 12] {
            assert_eq!(cor_prim_fini_sans_b(k, trunc).unwrap(), product, "k={k}");
        }
    }

    #[test]
    fn capparelli_chain_from_primc() {
        // (q;q)_k * G^P_k(q;a,1,1,d) stabilises to the Capparelli product.
        let trunc = 10;
        let k = 10u32;
        let sub = Substitution::new().set_one(Var::B).set_one(Var::C);
        let lhs = sub
            .apply(&finite_primc(k, trunc).unwrap())
            .unwrap()
            .mul(&qq(k as usize, trunc).unwrap())
            .unwrap();
        assert_eq!(lhs, product_capparelli(trunc).unwrap());
    }
}
