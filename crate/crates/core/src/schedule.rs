//! Backward recursion for the principal payout schedule.
//!
//! Requiring total income to equal GDP in every year pins the holdings
//! implied by a payout fraction, `H_t = (G_t - I_t) / (p_t + d)`. Feeding two
//! consecutive implied holdings through the forward law
//! `H_{t+1} = (H_t (1 - p_t) + c I_t)(1 + s)` gives
//! `(1 - p_t) / (p_t + d) = alpha_t`, which is solved for `p_t` starting from
//! the full liquidation `p_T = 1` and walking back to year 1.

use crate::error::{Error, Result};
use crate::model::{EconomyPath, PayoutSchedule, PlanParams};
use crate::scalar::Scalar;

/// The intermediate `alpha_t` for years `1..T`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaTrace<S> {
    alpha: Vec<S>,
}

impl<S: Scalar> AlphaTrace<S> {
    /// `alpha_t` for plan year `t` in `1..T`.
    pub fn get(&self, t: usize) -> S {
        self.alpha[t - 1]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Holdings that make total income equal GDP: `(G_t - I_t) / (p_t + d)`.
pub fn implied_holdings<S: Scalar>(gdp: S, income: S, payout: S, dividend: S) -> Result<S> {
    implied_holdings_at(gdp, income, payout, dividend, 0)
}

fn implied_holdings_at<S: Scalar>(gdp: S, income: S, payout: S, dividend: S, year: usize) -> Result<S> {
    let rate = payout + dividend;
    if !(rate > S::zero()) {
        return Err(Error::Singular {
            what: "payout plus dividend rate (p_t + d <= 0)",
            year,
        });
    }
    Ok((gdp - income) / rate)
}

/// Inputs to `alpha_t`: the gaps and income around year `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaInputs<S> {
    pub gdp: S,
    pub income: S,
    pub gdp_next: S,
    pub income_next: S,
    pub payout_next: S,
}

/// `((G_{t+1} - I_{t+1}) / ((p_{t+1} + d)(1 + s)) - c I_t) / (G_t - I_t)`.
///
/// `year` only labels the error when the gap in year `t` vanishes.
pub fn alpha<S: Scalar>(inputs: AlphaInputs<S>, params: &PlanParams<S>, year: usize) -> Result<S> {
    let gap = inputs.gdp - inputs.income;
    if gap == S::zero() {
        return Err(Error::Singular {
            what: "income gap (G_t = I_t)",
            year,
        });
    }
    let next_holdings = implied_holdings_at(
        inputs.gdp_next,
        inputs.income_next,
        inputs.payout_next,
        params.dividend(),
        year + 1,
    )?;
    let carried = next_holdings / (S::one() + params.growth());
    Ok((carried - params.contribution() * inputs.income) / gap)
}

/// `p_t = (1 - d alpha_t) / (1 + alpha_t)`, unclamped.
pub fn payout_from_alpha<S: Scalar>(alpha: S, dividend: S) -> Result<S> {
    payout_from_alpha_at(alpha, dividend, 0)
}

fn payout_from_alpha_at<S: Scalar>(alpha: S, dividend: S, year: usize) -> Result<S> {
    let denom = S::one() + alpha;
    if denom == S::zero() {
        return Err(Error::Singular {
            what: "alpha_t = -1",
            year,
        });
    }
    Ok((S::one() - dividend * alpha) / denom)
}

/// Solves `p_T = 1`, then `p_{T-1}, ..., p_1` over the economy's first `T` years.
///
/// The recursion consumes the raw `p_{t+1}`; clamping only affects the
/// schedule's `clamped` view.
pub fn solve_schedule<S: Scalar>(
    economy: &EconomyPath<S>,
    params: &PlanParams<S>,
) -> Result<(PayoutSchedule<S>, AlphaTrace<S>)> {
    let term = params.term();
    if economy.horizon() < term {
        return Err(Error::LengthMismatch {
            what: "economy path shorter than plan term",
            expected: term,
            found: economy.horizon(),
        });
    }
    for t in 1..=term {
        if !(economy.gap(t) > S::zero()) {
            return Err(Error::Singular {
                what: "income gap (G_t <= I_t)",
                year: t,
            });
        }
    }

    let mut raw = vec![S::zero(); term];
    let mut alphas = vec![S::zero(); term.saturating_sub(1)];
    raw[term - 1] = S::one();
    for t in (1..term).rev() {
        let inputs = AlphaInputs {
            gdp: economy.gdp(t),
            income: economy.income(t),
            gdp_next: economy.gdp(t + 1),
            income_next: economy.income(t + 1),
            payout_next: raw[t],
        };
        let a = alpha(inputs, params, t)?;
        alphas[t - 1] = a;
        raw[t - 1] = payout_from_alpha_at(a, params.dividend(), t)?;
    }
    Ok((PayoutSchedule::from_raw(raw), AlphaTrace { alpha: alphas }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::project_model_economy;
    use approx::assert_relative_eq;

    fn params(c: f64, term: usize, d: f64, s: f64) -> PlanParams<f64> {
        PlanParams::new(c, term, d, s).unwrap()
    }

    #[test]
    fn implied_holdings_examples() {
        assert_relative_eq!(implied_holdings(1.2, 1.0, 0.5, 0.0).unwrap(), 0.4, max_relative = 1e-12);
        assert_eq!(implied_holdings(1.0, 1.0, 0.3, 0.02).unwrap(), 0.0);
        assert_relative_eq!(implied_holdings(1.024, 1.012, 0.977, 0.023).unwrap(), 0.012, max_relative = 1e-12);
        assert!(matches!(
            implied_holdings(1.2, 1.0, 0.0, 0.0),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn alpha_examples() {
        let p = params(0.0, 10, 0.0, 0.0);
        let a = alpha(
            AlphaInputs { gdp: 1.1, income: 1.0, gdp_next: 1.2, income_next: 1.0, payout_next: 1.0 },
            &p,
            3,
        )
        .unwrap();
        assert_relative_eq!(a, 2.0, max_relative = 1e-12);

        let zero_next = alpha(
            AlphaInputs { gdp: 1.3, income: 1.1, gdp_next: 1.05, income_next: 1.05, payout_next: 0.4 },
            &params(0.0, 10, 0.02, 0.07),
            3,
        )
        .unwrap();
        assert_eq!(zero_next, 0.0);

        let p = params(0.0, 10, 0.0, 0.1);
        let a = alpha(
            AlphaInputs { gdp: 1.1, income: 1.0, gdp_next: 1.11, income_next: 1.0, payout_next: 1.0 },
            &p,
            3,
        )
        .unwrap();
        assert_relative_eq!(a, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn alpha_zero_gap_names_year() {
        let err = alpha(
            AlphaInputs { gdp: 1.0, income: 1.0, gdp_next: 1.2, income_next: 1.0, payout_next: 1.0 },
            &params(0.05, 10, 0.02, 0.05),
            7,
        )
        .unwrap_err();
        match err {
            Error::Singular { year, .. } => assert_eq!(year, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn payout_from_alpha_examples() {
        assert_eq!(payout_from_alpha(0.0, 0.3).unwrap(), 1.0);
        assert_relative_eq!(payout_from_alpha(1.0, 0.0).unwrap(), 0.5);
        assert_eq!(payout_from_alpha(2.0, 0.5).unwrap(), 0.0);
        assert!(payout_from_alpha(-1.0, 0.02).is_err());
    }

    #[test]
    fn single_year_term_is_boundary_only() {
        let e = project_model_economy(0.012, 0.006, 1).unwrap();
        let (sched, trace) = solve_schedule(&e, &params(0.08, 1, 0.023, 0.06)).unwrap();
        assert_eq!(sched.raw_series(), &[1.0]);
        assert_eq!(sched.clamped_series(), &[1.0]);
        assert!(trace.is_empty());
    }

    #[test]
    fn rejects_zero_gap_in_plan_years() {
        let e = project_model_economy(0.0, 0.0, 5).unwrap();
        let err = solve_schedule(&e, &params(0.05, 5, 0.02, 0.05)).unwrap_err();
        assert!(matches!(err, Error::Singular { year: 1, .. }));
    }

    #[test]
    fn rejects_short_economy() {
        let e = project_model_economy(0.012, 0.006, 5).unwrap();
        assert!(solve_schedule(&e, &params(0.05, 6, 0.02, 0.05)).is_err());
    }

    #[test]
    fn paper_schedule_shape() {
        let e = project_model_economy(0.012, 0.006, 45).unwrap();
        let s = 1.088 / 1.026 - 1.0;
        let (sched, trace) = solve_schedule(&e, &params(0.07, 45, 0.023, s)).unwrap();
        assert_eq!(sched.raw(45), 1.0);
        assert_eq!(trace.len(), 44);
        // payouts rise toward the final liquidation
        for t in 20..45 {
            assert!(sched.raw(t + 1) > sched.raw(t));
        }
        for (r, c) in sched.raw_series().iter().zip(sched.clamped_series()) {
            assert_eq!(*c, r.clamp(0.0, 1.0));
        }
    }
}
