//! Derived measures over a simulation run: overlay deviation, ramp length,
//! funds-flow crossover and average holdings.

use crate::model::{mean, EconomyPath, SimulationResult};
use crate::scalar::Scalar;
use crate::simulate::pay_raise_comparator;

/// Relative tolerance under which total income is said to overlay GDP.
pub const OVERLAY_TOLERANCE: f64 = 0.01;

/// `|Î_t / G_t - 1|` for each simulated year.
pub fn overlay_deviation<S: Scalar>(result: &SimulationResult<S>, economy: &EconomyPath<S>) -> Vec<S> {
    result
        .total_income()
        .iter()
        .enumerate()
        .map(|(i, &inc)| (inc / economy.gdp(i + 1) - S::one()).abs())
        .collect()
}

/// Count of leading years whose deviation is at least `tolerance`.
pub fn ramp_years<S: Scalar>(deviation: &[S], tolerance: S) -> usize {
    deviation.iter().take_while(|&&d| d >= tolerance).count()
}

/// Count of leading years in which contributions exceed payouts.
pub fn inflow_span<S: Scalar>(result: &SimulationResult<S>) -> usize {
    result
        .inflow()
        .iter()
        .zip(result.outflow())
        .take_while(|(&inflow, outflow)| inflow > *outflow)
        .count()
}

/// First plan year from which total income beats the pay-raise comparator in
/// every remaining year, or `None` if it never does through the final year.
pub fn payraise_crossover<S: Scalar>(
    result: &SimulationResult<S>,
    economy: &EconomyPath<S>,
    contribution: S,
) -> Option<usize> {
    let comparator = pay_raise_comparator(economy, contribution);
    let beats: Vec<bool> = result
        .total_income()
        .iter()
        .zip(&comparator)
        .map(|(&dip, &raise)| dip > raise)
        .collect();
    let losing_tail = beats.iter().rev().take_while(|&&b| b).count();
    if losing_tail == 0 {
        None
    } else {
        Some(beats.len() - losing_tail + 1)
    }
}

/// Time-average of `H_t / I_t`: holdings measured in years of that year's
/// median income.
pub fn mean_holdings_in_income<S: Scalar>(result: &SimulationResult<S>, economy: &EconomyPath<S>) -> S {
    let ratios: Vec<S> = result
        .holdings()
        .iter()
        .enumerate()
        .map(|(i, &h)| h / economy.income(i + 1))
        .collect();
    mean(&ratios)
}

/// One-line digest of a model run at a given contribution rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanSummary<S> {
    pub contribution: S,
    pub loss: S,
    pub ramp_years: usize,
    pub inflow_span: usize,
    pub payraise_crossover: Option<usize>,
    pub mean_holdings: S,
    pub residual: S,
}

impl<S: Scalar> PlanSummary<S> {
    pub fn from_run(result: &SimulationResult<S>, economy: &EconomyPath<S>, contribution: S) -> Self {
        let deviation = overlay_deviation(result, economy);
        Self {
            contribution,
            loss: deviation.iter().fold(S::zero(), |acc, &d| acc + d),
            ramp_years: ramp_years(&deviation, S::lit(OVERLAY_TOLERANCE)),
            inflow_span: inflow_span(result),
            payraise_crossover: payraise_crossover(result, economy, contribution),
            mean_holdings: mean_holdings_in_income(result, economy),
            residual: result.residual(),
        }
    }
}
