//! Domain types shared by the solver, simulator and optimizer, plus the
//! constant-growth model economy and CPI deflation.
//!
//! Time is indexed by plan year. The economy path carries an extra entry at
//! `t = 0` (the base year, where income and GDP are both normalized to 1); the
//! plan itself runs over years `1..=T`.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, Scalar};

fn check_finite<S: Scalar>(name: &'static str, value: S) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason: "must be finite",
        })
    }
}

fn check_rate<S: Scalar>(name: &'static str, value: S) -> Result<()> {
    check_finite(name, value)?;
    if value <= -S::one() {
        return Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason: "must exceed -1",
        });
    }
    Ok(())
}

fn check_fraction<S: Scalar>(name: &'static str, value: S) -> Result<()> {
    check_finite(name, value)?;
    if value < S::zero() || value >= S::one() {
        return Err(Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason: "must lie in [0, 1)",
        });
    }
    Ok(())
}

/// The plan's knobs: contribution rate, term, dividend rate and real stock growth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanParams<S> {
    contribution: S,
    term: usize,
    dividend: S,
    growth: S,
}

impl<S: Scalar> PlanParams<S> {
    pub fn new(contribution: S, term: usize, dividend: S, growth: S) -> Result<Self> {
        check_fraction("contribution", contribution)?;
        check_fraction("dividend", dividend)?;
        check_rate("growth", growth)?;
        if term == 0 {
            return Err(Error::InvalidParameter {
                name: "term",
                value: 0.0,
                reason: "must be at least one year",
            });
        }
        Ok(Self {
            contribution,
            term,
            dividend,
            growth,
        })
    }

    /// Fraction `c` of wages deferred into the plan each year.
    pub fn contribution(&self) -> S {
        self.contribution
    }

    /// Plan term `T` in years.
    pub fn term(&self) -> usize {
        self.term
    }

    /// Dividend rate `d` as a fraction of holdings per year.
    pub fn dividend(&self) -> S {
        self.dividend
    }

    /// Real stock growth `s` per year.
    pub fn growth(&self) -> S {
        self.growth
    }

    pub fn with_contribution(&self, contribution: S) -> Result<Self> {
        Self::new(contribution, self.term, self.dividend, self.growth)
    }
}

/// Normalized real median income `I_t` and household GDP `G_t` for `t = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EconomyPath<S> {
    base_year: i32,
    income: Vec<S>,
    gdp: Vec<S>,
}

impl<S: Scalar> EconomyPath<S> {
    pub fn new(base_year: i32, income: Vec<S>, gdp: Vec<S>) -> Result<Self> {
        if income.len() != gdp.len() {
            return Err(Error::LengthMismatch {
                what: "income and gdp series",
                expected: income.len(),
                found: gdp.len(),
            });
        }
        if income.len() < 2 {
            return Err(Error::LengthMismatch {
                what: "economy path needs the base year and at least one plan year",
                expected: 2,
                found: income.len(),
            });
        }
        for &v in income.iter().chain(gdp.iter()) {
            check_finite("economy value", v)?;
            if v <= S::zero() {
                return Err(Error::InvalidParameter {
                    name: "economy value",
                    value: v.as_f64(),
                    reason: "must be positive",
                });
            }
        }
        if income[0] != S::one() || gdp[0] != S::one() {
            return Err(Error::InvalidParameter {
                name: "base-year normalization",
                value: income[0].as_f64(),
                reason: "income and gdp must equal 1 at t = 0",
            });
        }
        Ok(Self {
            base_year,
            income,
            gdp,
        })
    }

    pub fn base_year(&self) -> i32 {
        self.base_year
    }

    /// Number of plan years `n` covered (the path holds `n + 1` entries).
    pub fn horizon(&self) -> usize {
        self.income.len() - 1
    }

    pub fn income(&self, t: usize) -> S {
        self.income[t]
    }

    pub fn gdp(&self, t: usize) -> S {
        self.gdp[t]
    }

    /// `G_t - I_t`.
    pub fn gap(&self, t: usize) -> S {
        self.gdp[t] - self.income[t]
    }

    pub fn income_series(&self) -> &[S] {
        &self.income
    }

    pub fn gdp_series(&self) -> &[S] {
        &self.gdp
    }

    /// Calendar year of plan year `t`.
    pub fn year(&self, t: usize) -> i32 {
        self.base_year + t as i32
    }
}

/// Per-year real stock growth `s_t` and dividend yield `d_t` for plan years `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarketPath<S> {
    growth: Vec<S>,
    div_yield: Vec<S>,
}

impl<S: Scalar> MarketPath<S> {
    /// `growth[i]` and `div_yield[i]` describe plan year `i + 1`. The growth
    /// for year `t` is the real index return over the year ending in `t`.
    pub fn new(growth: Vec<S>, div_yield: Vec<S>) -> Result<Self> {
        if growth.len() != div_yield.len() {
            return Err(Error::LengthMismatch {
                what: "growth and dividend-yield series",
                expected: growth.len(),
                found: div_yield.len(),
            });
        }
        for &g in &growth {
            check_rate("stock growth", g)?;
        }
        for &d in &div_yield {
            check_fraction("dividend yield", d)?;
        }
        Ok(Self { growth, div_yield })
    }

    /// Model-mode market: the same growth and yield every year.
    pub fn constant(growth: S, div_yield: S, years: usize) -> Result<Self> {
        Self::new(vec![growth; years], vec![div_yield; years])
    }

    pub fn horizon(&self) -> usize {
        self.growth.len()
    }

    /// Real growth over the year ending in plan year `t` (1-based).
    pub fn growth(&self, t: usize) -> S {
        self.growth[t - 1]
    }

    /// Dividend yield paid in plan year `t` (1-based).
    pub fn div_yield(&self, t: usize) -> S {
        self.div_yield[t - 1]
    }

    pub fn growth_series(&self) -> &[S] {
        &self.growth
    }

    pub fn div_yield_series(&self) -> &[S] {
        &self.div_yield
    }
}

/// Raw `p_t` and clamped `p̂_t` principal payout fractions for years `1..=T`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoutSchedule<S> {
    raw: Vec<S>,
    clamped: Vec<S>,
}

impl<S: Scalar> PayoutSchedule<S> {
    /// Builds the clamped schedule from raw fractions, `p̂_t = min(max(p_t, 0), 1)`.
    pub fn from_raw(raw: Vec<S>) -> Self {
        let clamped = raw.iter().map(|&p| clamp_payout(p)).collect();
        Self { raw, clamped }
    }

    pub fn term(&self) -> usize {
        self.raw.len()
    }

    pub fn raw(&self, t: usize) -> S {
        self.raw[t - 1]
    }

    pub fn clamped(&self, t: usize) -> S {
        self.clamped[t - 1]
    }

    pub fn raw_series(&self) -> &[S] {
        &self.raw
    }

    pub fn clamped_series(&self) -> &[S] {
        &self.clamped
    }

    /// Plan years whose raw payout was moved by the clamp.
    pub fn clamped_years(&self) -> impl Iterator<Item = usize> + '_ {
        self.raw
            .iter()
            .zip(&self.clamped)
            .enumerate()
            .filter(|(_, (r, c))| r != c)
            .map(|(i, _)| i + 1)
    }
}

pub(crate) fn clamp_payout<S: Scalar>(p: S) -> S {
    p.max(S::zero()).min(S::one())
}

/// Year-by-year outcome of a forward simulation over plan years `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult<S> {
    pub(crate) base_year: i32,
    pub(crate) holdings: Vec<S>,
    pub(crate) total_income: Vec<S>,
    pub(crate) inflow: Vec<S>,
    pub(crate) principal_out: Vec<S>,
    pub(crate) dividend_out: Vec<S>,
    pub(crate) residual: S,
}

impl<S: Scalar> SimulationResult<S> {
    pub fn horizon(&self) -> usize {
        self.holdings.len()
    }

    pub fn base_year(&self) -> i32 {
        self.base_year
    }

    /// Beginning-of-year holdings `H_t`.
    pub fn holdings(&self) -> &[S] {
        &self.holdings
    }

    /// `Î_t = I_t + (p̂_t + d_t) H_t`.
    pub fn total_income(&self) -> &[S] {
        &self.total_income
    }

    /// Contributions `c I_t`.
    pub fn inflow(&self) -> &[S] {
        &self.inflow
    }

    /// Principal liquidated, `p̂_t H_t`.
    pub fn principal_out(&self) -> &[S] {
        &self.principal_out
    }

    /// Dividends paid, `d_t H_t`.
    pub fn dividend_out(&self) -> &[S] {
        &self.dividend_out
    }

    /// Total plan outflow per year (principal plus dividends).
    pub fn outflow(&self) -> Vec<S> {
        self.principal_out
            .iter()
            .zip(&self.dividend_out)
            .map(|(&p, &d)| p + d)
            .collect()
    }

    /// Holdings left after the final simulated year's payout, `H_n (1 - p̂_n)`.
    pub fn residual(&self) -> S {
        self.residual
    }
}

/// How the nominal stock CAGR is turned into a real growth rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RealRateMode {
    /// `(1 + nominal) / (1 + inflation) - 1`
    #[default]
    Ratio,
    /// `nominal - inflation`
    Subtract,
}

impl RealRateMode {
    pub fn real_rate<S: Scalar>(self, nominal: S, inflation: S) -> S {
        match self {
            RealRateMode::Ratio => (S::one() + nominal) / (S::one() + inflation) - S::one(),
            RealRateMode::Subtract => nominal - inflation,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RealRateMode::Ratio => "ratio",
            RealRateMode::Subtract => "subtract",
        }
    }
}

impl std::str::FromStr for RealRateMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(RealRateMode::Ratio),
            "subtract" => Ok(RealRateMode::Subtract),
            other => Err(format!("unknown real-rate mode `{other}` (expected ratio|subtract)")),
        }
    }
}

/// Constant-rate assumptions of the model economy, all as annual fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelAssumptions<S> {
    pub term: usize,
    pub gdp_cagr: S,
    pub income_cagr: S,
    pub inflation: S,
    pub sp500_cagr: S,
    pub dividend_yield: S,
    pub mode: RealRateMode,
}

impl<S: Scalar> Default for ModelAssumptions<S> {
    /// 45-year term, 1.2% real household GDP growth, 0.6% real median income
    /// growth, 2.6% inflation, 8.8% nominal index growth, 2.3% dividends.
    fn default() -> Self {
        Self {
            term: 45,
            gdp_cagr: S::lit(0.012),
            income_cagr: S::lit(0.006),
            inflation: S::lit(0.026),
            sp500_cagr: S::lit(0.088),
            dividend_yield: S::lit(0.023),
            mode: RealRateMode::Ratio,
        }
    }
}

impl<S: Scalar> ModelAssumptions<S> {
    pub fn real_growth(&self) -> S {
        self.mode.real_rate(self.sp500_cagr, self.inflation)
    }

    pub fn economy(&self) -> Result<EconomyPath<S>> {
        check_rate("inflation", self.inflation)?;
        project_model_economy(self.gdp_cagr, self.income_cagr, self.term)
    }

    pub fn market(&self) -> Result<MarketPath<S>> {
        MarketPath::constant(self.real_growth(), self.dividend_yield, self.term)
    }

    pub fn params(&self, contribution: S) -> Result<PlanParams<S>> {
        check_rate("sp500 cagr", self.sp500_cagr)?;
        check_rate("inflation", self.inflation)?;
        PlanParams::new(contribution, self.term, self.dividend_yield, self.real_growth())
    }
}

/// Compounds both series from 1 at `t = 0` through `t = term`.
pub fn project_model_economy<S: Scalar>(
    gdp_cagr: S,
    income_cagr: S,
    term: usize,
) -> Result<EconomyPath<S>> {
    check_rate("gdp cagr", gdp_cagr)?;
    check_rate("income cagr", income_cagr)?;
    if term == 0 {
        return Err(Error::InvalidParameter {
            name: "term",
            value: 0.0,
            reason: "must be at least one year",
        });
    }
    let compound = |rate: S| -> Vec<S> {
        (0..=term)
            .map(|t| (S::one() + rate).powi(t as i32))
            .collect()
    };
    EconomyPath::new(0, compound(income_cagr), compound(gdp_cagr))
}

/// Converts nominal values into the purchasing power of `cpi[base]`.
pub fn deflate<S: Scalar>(nominal: &[S], cpi: &[S], base: usize) -> Result<Vec<S>> {
    if nominal.len() != cpi.len() {
        return Err(Error::LengthMismatch {
            what: "nominal and cpi series",
            expected: nominal.len(),
            found: cpi.len(),
        });
    }
    if base >= cpi.len() {
        return Err(Error::InvalidParameter {
            name: "base index",
            value: base as f64,
            reason: "out of range",
        });
    }
    for &c in cpi {
        if !(c.is_finite() && c > S::zero()) {
            return Err(Error::InvalidParameter {
                name: "cpi",
                value: c.as_f64(),
                reason: "must be positive and finite",
            });
        }
    }
    let anchor = cpi[base];
    Ok(nominal
        .iter()
        .zip(cpi)
        .map(|(&x, &c)| x * (anchor / c))
        .collect())
}

/// Arithmetic mean of a non-empty slice.
pub(crate) fn mean<S: Scalar>(xs: &[S]) -> S {
    xs.iter().fold(S::zero(), |acc, &x| acc + x) / from_usize(xs.len())
}
