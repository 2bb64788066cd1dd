//! Subcommands: argument definitions and the runs behind them.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dip_core::ingest::HistoricalSeries;
use dip_core::metrics::PlanSummary;
use dip_core::{
    build_historical_paths, optimize_c, pay_raise_comparator, simulate, solve_schedule, ContributionGrid,
    EconomyPath64, ModelAssumptions64, Optimum64, PayoutSchedule64, RealRateMode, SimulationResult64, Window,
};

use crate::report::{Cell, OutputFormat, Table};

#[derive(Debug, Parser)]
#[command(name = "dip", version, about = "Deferred investment payroll: design, optimize and backtest")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the payout schedule at a contribution rate
    Solve(SolveArgs),
    /// Find the contribution rate that best closes the income/GDP gap
    Optimize(OptimizeArgs),
    /// Simulate the model economy: income overlay and funds flow
    Simulate(SolveArgs),
    /// Replay the model schedule against historical data
    Backtest(BacktestArgs),
    /// Optimize over the cross-product of parameter lists
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Plan term in years
    #[arg(long, default_value_t = 45)]
    pub term: usize,
    /// Real household GDP growth per year
    #[arg(long, default_value_t = 0.012, allow_hyphen_values = true)]
    pub gdp_cagr: f64,
    /// Real median income growth per year
    #[arg(long, default_value_t = 0.006, allow_hyphen_values = true)]
    pub income_cagr: f64,
    /// Inflation per year
    #[arg(long, default_value_t = 0.026, allow_hyphen_values = true)]
    pub inflation: f64,
    /// Nominal stock index growth per year
    #[arg(long = "sp500-cagr", default_value_t = 0.088, allow_hyphen_values = true)]
    pub sp500_cagr: f64,
    /// Dividend yield per year
    #[arg(long, default_value_t = 0.023)]
    pub dividend_yield: f64,
    /// How nominal growth and inflation combine into real growth
    #[arg(long, default_value = "ratio", value_parser = parse_mode)]
    pub real_rate_mode: RealRateMode,
}

fn parse_mode(s: &str) -> std::result::Result<RealRateMode, String> {
    s.parse()
}

impl ModelArgs {
    pub fn assumptions(&self) -> ModelAssumptions64 {
        ModelAssumptions64 {
            term: self.term,
            gdp_cagr: self.gdp_cagr,
            income_cagr: self.income_cagr,
            inflation: self.inflation,
            sp500_cagr: self.sp500_cagr,
            dividend_yield: self.dividend_yield,
            mode: self.real_rate_mode,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    pub c_min: f64,
    #[arg(long, default_value_t = 0.2)]
    pub c_max: f64,
    #[arg(long, default_value_t = 0.001)]
    pub c_step: f64,
    /// Width at which golden-section refinement stops
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

impl GridArgs {
    fn grid(&self) -> ContributionGrid<f64> {
        ContributionGrid {
            min: self.c_min,
            max: self.c_max,
            step: self.c_step,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Directory receiving the output files
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Contribution rate; the optimum is searched for when omitted
    #[arg(long)]
    pub contribution: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BacktestArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub contribution: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Directory with cpi.csv, sp500.csv, dividend_yield.csv, income.csv, gdp.csv
    #[arg(long)]
    pub data_dir: PathBuf,
    /// Year whose dollars and levels normalize the replay; the window starts a year later
    #[arg(long, default_value_t = 1984)]
    pub base_year: i32,
    /// Last simulated year; defaults to the last year every series covers, capped at the term
    #[arg(long)]
    pub end_year: Option<i32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "45")]
    pub term: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.012", allow_hyphen_values = true)]
    pub gdp_cagr: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.006", allow_hyphen_values = true)]
    pub income_cagr: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.026", allow_hyphen_values = true)]
    pub inflation: Vec<f64>,
    #[arg(long = "sp500-cagr", value_delimiter = ',', default_value = "0.088", allow_hyphen_values = true)]
    pub sp500_cagr: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.023")]
    pub dividend_yield: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "ratio", value_parser = parse_mode)]
    pub real_rate_mode: Vec<RealRateMode>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command printed and wrote.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Backtest(args) => cmd_backtest(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

const SUMMARY_COLUMNS: &[&str] = &[
    "term",
    "gdp_cagr",
    "income_cagr",
    "inflation",
    "sp500_cagr",
    "dividend_yield",
    "real_rate_mode",
    "real_growth",
    "c_star",
    "loss",
    "ramp_years",
    "inflow_span",
    "payraise_crossover",
    "mean_holdings",
    "residual",
];

/// A solved and simulated model run at one contribution rate.
pub struct ModelRun {
    pub assumptions: ModelAssumptions64,
    pub economy: EconomyPath64,
    pub schedule: PayoutSchedule64,
    pub alpha: Vec<f64>,
    pub result: SimulationResult64,
    pub summary: PlanSummary<f64>,
}

pub fn model_run(assumptions: &ModelAssumptions64, contribution: f64) -> Result<ModelRun> {
    let economy = assumptions.economy()?;
    let market = assumptions.market()?;
    let params = assumptions.params(contribution)?;
    let (schedule, alpha) = solve_schedule(&economy, &params)
        .with_context(|| format!("solving the payout schedule at c = {contribution}"))?;
    let result = simulate(&economy, &market, &schedule, &params)?;
    let summary = PlanSummary::from_run(&result, &economy, contribution);
    Ok(ModelRun {
        assumptions: *assumptions,
        economy,
        schedule,
        alpha: alpha.as_slice().to_vec(),
        result,
        summary,
    })
}

pub fn optimize_model(assumptions: &ModelAssumptions64, grid: &GridArgs) -> Result<Optimum64> {
    let economy = assumptions.economy()?;
    let base = assumptions.params(0.0)?;
    Ok(optimize_c(&economy, &base, grid.grid(), grid.tolerance)?)
}

fn resolve_contribution(assumptions: &ModelAssumptions64, contribution: Option<f64>, grid: &GridArgs) -> Result<f64> {
    match contribution {
        Some(c) => Ok(c),
        None => Ok(optimize_model(assumptions, grid)?.contribution),
    }
}

fn summary_row(run: &ModelRun, loss: f64) -> Vec<Cell> {
    let a = &run.assumptions;
    let s = &run.summary;
    vec![
        a.term.into(),
        a.gdp_cagr.into(),
        a.income_cagr.into(),
        a.inflation.into(),
        a.sp500_cagr.into(),
        a.dividend_yield.into(),
        a.mode.name().into(),
        a.real_growth().into(),
        s.contribution.into(),
        loss.into(),
        s.ramp_years.into(),
        s.inflow_span.into(),
        s.payraise_crossover.into(),
        s.mean_holdings.into(),
        s.residual.into(),
    ]
}

fn optimize_row(assumptions: &ModelAssumptions64, grid: &GridArgs) -> Result<(Vec<Cell>, Optimum64)> {
    let opt = optimize_model(assumptions, grid)?;
    let run = model_run(assumptions, opt.contribution)?;
    Ok((summary_row(&run, opt.loss), opt))
}

fn finish(tables: &[&Table], stdout_table: &Table, out: &OutputArgs) -> Result<Outcome> {
    let files = tables
        .iter()
        .map(|t| t.write(&out.out_dir, out.output))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        stdout: stdout_table.render(out.output),
        files,
    })
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<Outcome> {
    let assumptions = args.model.assumptions();
    let (row, opt) = optimize_row(&assumptions, &args.grid)?;
    let mut report = Table::new("optimize", SUMMARY_COLUMNS);
    report.push(row);
    let mut curve = Table::new("loss_curve", &["c", "loss"]);
    for &(c, l) in &opt.curve.points {
        curve.push(vec![c.into(), l.into()]);
    }
    finish(&[&report, &curve], &report, &args.out)
}

fn schedule_table(run: &ModelRun) -> Table {
    let mut t = Table::new("schedule", &["year", "raw_payout", "payout", "alpha"]);
    for year in 1..=run.schedule.term() {
        t.push(vec![
            year.into(),
            run.schedule.raw(year).into(),
            run.schedule.clamped(year).into(),
            run.alpha.get(year - 1).copied().into(),
        ]);
    }
    t
}

pub fn cmd_solve(args: &SolveArgs) -> Result<Outcome> {
    let assumptions = args.model.assumptions();
    let c = resolve_contribution(&assumptions, args.contribution, &args.grid)?;
    let run = model_run(&assumptions, c)?;
    let table = schedule_table(&run);
    finish(&[&table], &table, &args.out)
}

fn impact_table(years: &[i32], economy: &EconomyPath64, result: &SimulationResult64, contribution: f64) -> Table {
    let raise = pay_raise_comparator(economy, contribution);
    let mut t = Table::new("impact", &["year", "gdp", "income", "total_income", "pay_raise"]);
    for (i, &year) in years.iter().enumerate() {
        t.push(vec![
            year.into(),
            economy.gdp(i + 1).into(),
            economy.income(i + 1).into(),
            result.total_income()[i].into(),
            raise[i].into(),
        ]);
    }
    t
}

fn flows_table(years: &[i32], result: &SimulationResult64) -> Table {
    let mut t = Table::new("flows", &["year", "inflow", "principal_out", "dividend_out", "holdings"]);
    for (i, &year) in years.iter().enumerate() {
        t.push(vec![
            year.into(),
            result.inflow()[i].into(),
            result.principal_out()[i].into(),
            result.dividend_out()[i].into(),
            result.holdings()[i].into(),
        ]);
    }
    t
}

pub fn cmd_simulate(args: &SolveArgs) -> Result<Outcome> {
    let assumptions = args.model.assumptions();
    let c = resolve_contribution(&assumptions, args.contribution, &args.grid)?;
    let run = model_run(&assumptions, c)?;
    let years: Vec<i32> = (1..=run.result.horizon() as i32).collect();
    let impact = impact_table(&years, &run.economy, &run.result, c);
    let flows = flows_table(&years, &run.result);
    let schedule = schedule_table(&run);
    let mut summary = Table::new("summary", SUMMARY_COLUMNS);
    summary.push(summary_row(&run, run.summary.loss));
    finish(&[&impact, &flows, &schedule, &summary], &summary, &args.out)
}

pub fn cmd_backtest(args: &BacktestArgs) -> Result<Outcome> {
    let assumptions = args.model.assumptions();
    let c = resolve_contribution(&assumptions, args.contribution, &args.grid)?;
    let run = model_run(&assumptions, c)?;

    let series = HistoricalSeries::load_dir(&args.data_dir)
        .with_context(|| format!("loading historical data from {}", args.data_dir.display()))?;
    let start_year = args.base_year + 1;
    let end_year = match args.end_year {
        Some(y) => y,
        None => series.common_last_year().min(args.base_year + assumptions.term as i32),
    };
    if end_year - args.base_year > assumptions.term as i32 {
        bail!("window ends in {end_year}, beyond the {}-year plan term", assumptions.term);
    }
    let window = Window { start_year, end_year };
    let (economy, market) = build_historical_paths(&series, window, args.base_year)?;
    let params = assumptions.params(c)?;
    let result = simulate(&economy, &market, &run.schedule, &params)?;

    let years: Vec<i32> = (start_year..=end_year).collect();
    let impact = impact_table(&years, &economy, &result, c);
    let flows = flows_table(&years, &result);
    let mut summary = Table::new(
        "backtest",
        &["start_year", "end_year", "contribution", "terminal_holdings", "mean_holdings"],
    );
    let summary_metrics = PlanSummary::from_run(&result, &economy, c);
    summary.push(vec![
        start_year.into(),
        end_year.into(),
        c.into(),
        result.residual().into(),
        summary_metrics.mean_holdings.into(),
    ]);
    finish(&[&impact, &flows, &summary], &summary, &args.out)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<Outcome> {
    let mut table = Table::new("sweep", SUMMARY_COLUMNS);
    for &term in &args.term {
        for &gdp_cagr in &args.gdp_cagr {
            for &income_cagr in &args.income_cagr {
                for &inflation in &args.inflation {
                    for &sp500_cagr in &args.sp500_cagr {
                        for &dividend_yield in &args.dividend_yield {
                            for &mode in &args.real_rate_mode {
                                let assumptions = ModelAssumptions64 {
                                    term,
                                    gdp_cagr,
                                    income_cagr,
                                    inflation,
                                    sp500_cagr,
                                    dividend_yield,
                                    mode,
                                };
                                let (row, _) = optimize_row(&assumptions, &args.grid)
                                    .with_context(|| format!("scenario {assumptions:?}"))?;
                                table.push(row);
                            }
                        }
                    }
                }
            }
        }
    }
    finish(&[&table], &table, &args.out)
}
