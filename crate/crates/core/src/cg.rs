//! Clebsch-Gordan coefficients in the Condon-Shortley convention.
//!
//! Evaluated by Racah's single-sum formula over log-factorials, which stays
//! stable to ~1e-12 relative error through the spin ranges swept here
//! (couplings of a small spin with j up to ~100). Out-of-triangle or invalid
//! magnetic numbers return 0 rather than erroring, matching the usual
//! convention for coupling sums.

use std::sync::OnceLock;

use crate::half::HalfInteger;

/// ⟨j1 m1; j2 m2 | j m⟩.
///
/// `m` arguments are half-integers passed as floats; anything off the
/// half-integer grid or outside |m| ≤ j yields 0.
pub fn clebsch_gordan(
    j1: HalfInteger,
    m1: f64,
    j2: HalfInteger,
    m2: f64,
    j: HalfInteger,
    m: f64,
) -> f64 {
    let (Some(tm1), Some(tm2), Some(tm)) = (twice_m(m1), twice_m(m2), twice_m(m)) else {
        return 0.0;
    };
    cg_twice(j1.twice() as i64, tm1, j2.twice() as i64, tm2, j.twice() as i64, tm)
}

fn twice_m(m: f64) -> Option<i64> {
    let twice = 2.0 * m;
    let rounded = twice.round();
    if (twice - rounded).abs() > 1e-9 || rounded.abs() > i64::MAX as f64 {
        None
    } else {
        Some(rounded as i64)
    }
}

/// Core evaluation on doubled quantum numbers.
pub(crate) fn cg_twice(tj1: i64, tm1: i64, tj2: i64, tm2: i64, tj: i64, tm: i64) -> f64 {
    if tm1 + tm2 != tm
        || tm1.abs() > tj1
        || tm2.abs() > tj2
        || tm.abs() > tj
        || (tj1 + tm1) % 2 != 0
        || (tj2 + tm2) % 2 != 0
        || (tj + tm) % 2 != 0
        || !triangle_ok(tj1, tj2, tj)
    {
        return 0.0;
    }

    // Integer factorial arguments (all guaranteed even twice-values here).
    let half = |t: i64| -> i64 { t / 2 };
    let a1 = half(tj1 + tm1);
    let a2 = half(tj1 - tm1);
    let a3 = half(tj2 + tm2);
    let a4 = half(tj2 - tm2);
    let a5 = half(tj + tm);
    let a6 = half(tj - tm);

    let t_j12_j = half(tj1 + tj2 - tj);
    let t_j1_j2j = half(tj1 - tj2 + tj);
    let t_j2_j1j = half(-tj1 + tj2 + tj);
    let t_sum1 = half(tj1 + tj2 + tj) + 1;

    // log of the squared prefactor
    let log_pref = ln_fact(t_j12_j) + ln_fact(t_j1_j2j) + ln_fact(t_j2_j1j) - ln_fact(t_sum1)
        + ((tj + 1) as f64).ln()
        + ln_fact(a1)
        + ln_fact(a2)
        + ln_fact(a3)
        + ln_fact(a4)
        + ln_fact(a5)
        + ln_fact(a6);

    let b1 = half(tj - tj2 + tm1); // J - j2 + m1
    let b2 = half(tj - tj1 - tm2); // J - j1 - m2

    let k_min = 0.max(-b1).max(-b2);
    let k_max = t_j12_j.min(a2).min(a3);
    if k_min > k_max {
        return 0.0;
    }

    let mut sum = 0.0f64;
    for k in k_min..=k_max {
        let log_denom = ln_fact(k)
            + ln_fact(t_j12_j - k)
            + ln_fact(a2 - k)
            + ln_fact(a3 - k)
            + ln_fact(b1 + k)
            + ln_fact(b2 + k);
        let term = (0.5 * log_pref - log_denom).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    sum
}

fn triangle_ok(tj1: i64, tj2: i64, tj: i64) -> bool {
    (tj1 - tj2).abs() <= tj && tj <= tj1 + tj2 && (tj1 + tj2 + tj) % 2 == 0
}

const LN_FACT_LEN: usize = 2048;

/// ln(n!) table, built with compensated summation so entries are accurate to
/// a few ulps even at the top of the range.
pub(crate) fn ln_fact(n: i64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACT_LEN);
        t.push(0.0);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for k in 1..LN_FACT_LEN {
            let term = (k as f64).ln();
            let y = term - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            t.push(sum);
        }
        t
    });
    assert!(n >= 0, "factorial of negative integer");
    table[n as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::HalfInteger as H;

    fn j(twice: u32) -> H {
        H::from_twice(twice)
    }

    /// Exact-rational evaluation of the same formula (used only as a test
    /// oracle, j up to ~10): returns (CG², sign of CG).
    mod exact {
        use num::bigint::BigInt;
        use num::rational::Ratio;
        use num::traits::{One, Signed, Zero};

        fn fact(n: i64) -> BigInt {
            let mut f = BigInt::one();
            for k in 2..=n {
                f *= k;
            }
            f
        }

        pub fn cg_squared(
            tj1: i64,
            tm1: i64,
            tj2: i64,
            tm2: i64,
            tj: i64,
            tm: i64,
        ) -> (Ratio<BigInt>, i32) {
            let half = |t: i64| t / 2;
            let t_j12_j = half(tj1 + tj2 - tj);
            let pref: Ratio<BigInt> = Ratio::new(
                fact(t_j12_j)
                    * fact(half(tj1 - tj2 + tj))
                    * fact(half(-tj1 + tj2 + tj))
                    * BigInt::from(tj + 1)
                    * fact(half(tj1 + tm1))
                    * fact(half(tj1 - tm1))
                    * fact(half(tj2 + tm2))
                    * fact(half(tj2 - tm2))
                    * fact(half(tj + tm))
                    * fact(half(tj - tm)),
                fact(half(tj1 + tj2 + tj) + 1),
            );
            let b1 = half(tj - tj2 + tm1);
            let b2 = half(tj - tj1 - tm2);
            let k_min = 0.max(-b1).max(-b2);
            let k_max = t_j12_j.min(half(tj1 - tm1)).min(half(tj2 + tm2));
            let mut sum: Ratio<BigInt> = Ratio::zero();
            for k in k_min..=k_max {
                let denom = fact(k)
                    * fact(t_j12_j - k)
                    * fact(half(tj1 - tm1) - k)
                    * fact(half(tj2 + tm2) - k)
                    * fact(b1 + k)
                    * fact(b2 + k);
                let term = Ratio::new(BigInt::one(), denom);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            let sign = if sum.is_positive() {
                1
            } else if sum.is_zero() {
                0
            } else {
                -1
            };
            (pref * (&sum * &sum), sign)
        }
    }

    #[test]
    fn singlet_coefficients() {
        let c1 = clebsch_gordan(j(1), 0.5, j(1), -0.5, j(0), 0.0);
        let c2 = clebsch_gordan(j(1), -0.5, j(1), 0.5, j(0), 0.0);
        assert!((c1 - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((c2 + 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn stretched_state_is_one() {
        for tj in [1u32, 2, 3, 7, 40, 200] {
            let jj = j(tj);
            let top = jj.value();
            let c = clebsch_gordan(jj, top, j(1), 0.5, jj.plus_half(), top + 0.5);
            assert!((c - 1.0).abs() < 1e-12, "2j = {tj}: {c}");
        }
    }

    #[test]
    fn stretched_spin1_coefficient() {
        // ⟨j,j; 1,0 | j+1, j⟩ = 1/√(j+1)
        for tj in [1u32, 2, 3, 4, 10, 55] {
            let jj = j(tj);
            let top = jj.value();
            let c = clebsch_gordan(jj, top, j(2), 0.0, jj.plus_one(), top);
            let expect = 1.0 / (jj.value() + 1.0).sqrt();
            assert!((c - expect).abs() < 1e-13, "2j = {tj}: {c} vs {expect}");
        }
    }

    #[test]
    fn triangle_and_m_violations_are_zero() {
        assert_eq!(clebsch_gordan(j(1), 0.5, j(1), 0.5, j(4), 1.0), 0.0);
        assert_eq!(clebsch_gordan(j(1), 0.5, j(1), 0.5, j(2), 0.0), 0.0);
        assert_eq!(clebsch_gordan(j(1), 1.5, j(1), -0.5, j(2), 1.0), 0.0);
        assert_eq!(clebsch_gordan(j(1), 0.3, j(1), 0.7, j(2), 1.0), 0.0);
        // parity-violating total (1/2 ⊗ 1/2 has no half-integer totals)
        assert_eq!(clebsch_gordan(j(1), 0.5, j(1), 0.5, j(1), 1.0), 0.0);
    }

    #[test]
    fn unitarity_over_total_spin() {
        // Σ_J ⟨m1 m2|J M⟩⟨m1' m2'|J M⟩ = δ_{m1 m1'} for m1+m2 = m1'+m2' = M
        let cases = [(j(1), j(1)), (j(2), j(1)), (j(3), j(2)), (j(10), j(1)), (j(30), j(2))];
        for (j1, j2) in cases {
            let tm = ((j1.twice() + j2.twice()) % 2) as i64; // valid 2M parity
            let m_total = tm as f64 / 2.0;
            let pairs: Vec<(f64, f64)> = j1
                .twice_m_descending()
                .filter_map(|t1| {
                    let t2 = tm - t1;
                    (t2.abs() <= j2.twice() as i64 && (t2 + j2.twice() as i64) % 2 == 0)
                        .then(|| (t1 as f64 / 2.0, t2 as f64 / 2.0))
                })
                .collect();
            let totals: Vec<H> = {
                let lo = j1.twice().abs_diff(j2.twice());
                let hi = j1.twice() + j2.twice();
                (lo..=hi).step_by(2).map(H::from_twice).collect()
            };
            for (i, &(m1, m2)) in pairs.iter().enumerate() {
                for (k, &(m1p, m2p)) in pairs.iter().enumerate() {
                    let sum: f64 = totals
                        .iter()
                        .map(|&jt| {
                            clebsch_gordan(j1, m1, j2, m2, jt, m_total)
                                * clebsch_gordan(j1, m1p, j2, m2p, jt, m_total)
                        })
                        .sum();
                    let expect = if i == k { 1.0 } else { 0.0 };
                    assert!(
                        (sum - expect).abs() < 1e-12,
                        "j1={j1} j2={j2} m1={m1} m1'={m1p}: {sum}"
                    );
                }
            }
        }
    }

    #[test]
    fn matches_exact_rational_evaluation() {
        // sweep all coefficients for a few (j1, j2) pairs with j ≤ 10
        for (tj1, tj2) in [(1i64, 1i64), (2, 1), (3, 2), (6, 4), (20, 2), (13, 3)] {
            for tjt in ((tj1 - tj2).abs()..=(tj1 + tj2)).step_by(2) {
                for tm1 in (-tj1..=tj1).step_by(2) {
                    for tm2 in (-tj2..=tj2).step_by(2) {
                        let tm = tm1 + tm2;
                        if tm.abs() > tjt {
                            continue;
                        }
                        let float = cg_twice(tj1, tm1, tj2, tm2, tjt, tm);
                        let (sq, sign) = exact::cg_squared(tj1, tm1, tj2, tm2, tjt, tm);
                        let num = num::ToPrimitive::to_f64(sq.numer()).unwrap();
                        let den = num::ToPrimitive::to_f64(sq.denom()).unwrap();
                        let exact_val = sign as f64 * (num / den).sqrt();
                        assert!(
                            (float - exact_val).abs() <= 1e-12 * exact_val.abs().max(1.0),
                            "({tj1},{tm1};{tj2},{tm2}|{tjt},{tm}): {float} vs {exact_val}"
                        );
                    }
                }
            }
        }
    }
}
