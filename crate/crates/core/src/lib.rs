//! Deferred investment payroll engine.
//!
//! A fraction `c` of wages is invested in a broad stock index; dividends are
//! paid out as received and a fraction `p_t` of principal is liquidated each
//! year, with everything liquidated at the end of the term. This crate solves
//! the payout schedule that makes total worker income track GDP, searches for
//! the contribution rate minimizing the remaining deviation, simulates the
//! funds flow, and replays a schedule against historical data.
//!
//! All numerics are generic over [`Scalar`]; the `*64` aliases fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::manual_clamp)]

pub mod error;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod optimize;
pub mod scalar;
pub mod schedule;
pub mod simulate;

pub use error::{Error, Result};
pub use ingest::{build_historical_paths, load_series, AnnualSeries, HistoricalSeries, Window};
pub use metrics::PlanSummary;
pub use model::{
    deflate, project_model_economy, EconomyPath, MarketPath, ModelAssumptions, PayoutSchedule, PlanParams,
    RealRateMode, SimulationResult,
};
pub use optimize::{loss, optimize_c, ContributionGrid, LossCurve, Optimum};
pub use scalar::Scalar;
pub use schedule::{alpha, implied_holdings, payout_from_alpha, solve_schedule, AlphaInputs, AlphaTrace};
pub use simulate::{aggregate_holdings, pay_raise_comparator, simulate, step_holdings};

pub type PlanParams64 = PlanParams<f64>;
pub type EconomyPath64 = EconomyPath<f64>;
pub type MarketPath64 = MarketPath<f64>;
pub type PayoutSchedule64 = PayoutSchedule<f64>;
pub type SimulationResult64 = SimulationResult<f64>;
pub type AlphaTrace64 = AlphaTrace<f64>;
pub type LossCurve64 = LossCurve<f64>;
pub type Optimum64 = Optimum<f64>;
pub type ModelAssumptions64 = ModelAssumptions<f64>;
pub type AnnualSeries64 = AnnualSeries<f64>;
pub type HistoricalSeries64 = HistoricalSeries<f64>;
pub type PlanSummary64 = PlanSummary<f64>;

pub type PlanParams32 = PlanParams<f32>;
pub type EconomyPath32 = EconomyPath<f32>;
pub type PayoutSchedule32 = PayoutSchedule<f32>;
pub type SimulationResult32 = SimulationResult<f32>;
