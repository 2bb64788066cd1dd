//! Forward simulation of plan holdings, total income and funds flow.

use crate::error::{Error, Result};
use crate::model::{EconomyPath, MarketPath, PayoutSchedule, PlanParams, SimulationResult};
use crate::scalar::Scalar;

/// One year of the forward law: `(H_t (1 - p̂_t) + c I_t)(1 + s)`.
pub fn step_holdings<S: Scalar>(holdings: S, payout: S, contribution: S, income: S, growth: S) -> Result<S> {
    if holdings < S::zero() {
        return Err(Error::NegativeHoldings(holdings.as_f64()));
    }
    if !(payout >= S::zero() && payout <= S::one()) {
        return Err(Error::InvalidParameter {
            name: "payout",
            value: payout.as_f64(),
            reason: "clamped payout must lie in [0, 1]",
        });
    }
    if !(growth > -S::one()) {
        return Err(Error::InvalidParameter {
            name: "growth",
            value: growth.as_f64(),
            reason: "must exceed -1",
        });
    }
    Ok((holdings * (S::one() - payout) + contribution * income) * (S::one() + growth))
}

/// Runs the plan over every year of `market` starting from empty holdings.
///
/// The base-year contribution `c I_0` seeds `H_1`; each later year pays
/// dividends and principal on beginning-of-year holdings, then adds the
/// year's contribution and applies the next year's growth. Only the first
/// `market.horizon()` entries of `schedule` are used, so a schedule solved for
/// a longer term can be replayed over a shorter data window.
pub fn simulate<S: Scalar>(
    economy: &EconomyPath<S>,
    market: &MarketPath<S>,
    schedule: &PayoutSchedule<S>,
    params: &PlanParams<S>,
) -> Result<SimulationResult<S>> {
    let n = market.horizon();
    if economy.horizon() != n {
        return Err(Error::LengthMismatch {
            what: "economy and market horizons",
            expected: n,
            found: economy.horizon(),
        });
    }
    if schedule.term() < n {
        return Err(Error::LengthMismatch {
            what: "schedule shorter than simulation horizon",
            expected: n,
            found: schedule.term(),
        });
    }
    if n == 0 {
        return Err(Error::LengthMismatch {
            what: "simulation horizon",
            expected: 1,
            found: 0,
        });
    }
    let c = params.contribution();

    let mut holdings = Vec::with_capacity(n);
    let mut total_income = Vec::with_capacity(n);
    let mut inflow = Vec::with_capacity(n);
    let mut principal_out = Vec::with_capacity(n);
    let mut dividend_out = Vec::with_capacity(n);

    let mut h = step_holdings(S::zero(), S::zero(), c, economy.income(0), market.growth(1))?;
    for t in 1..=n {
        let p = schedule.clamped(t);
        let d = market.div_yield(t);
        let income = economy.income(t);
        holdings.push(h);
        principal_out.push(p * h);
        dividend_out.push(d * h);
        total_income.push(income + (p + d) * h);
        inflow.push(c * income);
        if t < n {
            h = step_holdings(h, p, c, income, market.growth(t + 1))?;
        }
    }
    let residual = h * (S::one() - schedule.clamped(n));

    Ok(SimulationResult {
        base_year: economy.base_year(),
        holdings,
        total_income,
        inflow,
        principal_out,
        dividend_out,
        residual,
    })
}

/// Paying the deferred fraction as salary instead: `I_t (1 + c)` for `t = 1..=n`.
pub fn pay_raise_comparator<S: Scalar>(economy: &EconomyPath<S>, contribution: S) -> Vec<S> {
    economy.income_series()[1..]
        .iter()
        .map(|&i| i * (S::one() + contribution))
        .collect()
}

/// Economy-wide holdings for a workforce at the given mean per-worker holdings.
pub fn aggregate_holdings<S: Scalar>(mean_holdings_per_worker: S, workforce: S) -> S {
    mean_holdings_per_worker * workforce
}
