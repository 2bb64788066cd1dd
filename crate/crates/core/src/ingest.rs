//! Historical input series: CSV loading, validation and conversion into
//! real, base-year-normalized economy and market paths.
//!
//! Every input file uses the same two-column schema:
//!
//! ```text
//! year,value
//! 1984,103.9
//! 1985,107.6
//! ```
//!
//! One row per calendar year, strictly increasing with no gaps. Dividend
//! yields are decimal fractions (`0.023`, not `2.3`). S&P 500 levels are
//! year-end closes; CPI is the annual average.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{deflate, EconomyPath, MarketPath};
use crate::scalar::Scalar;

pub const CPI_FILE: &str = "cpi.csv";
pub const SP500_FILE: &str = "sp500.csv";
pub const DIVIDEND_YIELD_FILE: &str = "dividend_yield.csv";
pub const INCOME_FILE: &str = "income.csv";
pub const GDP_FILE: &str = "gdp.csv";

/// A validated, contiguous run of annual observations.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualSeries<S> {
    name: String,
    first_year: i32,
    values: Vec<S>,
}

impl<S: Scalar> AnnualSeries<S> {
    /// Builds a series from `(year, value)` rows, enforcing contiguity.
    pub fn from_rows(name: impl Into<String>, rows: &[(i32, S)]) -> Result<Self> {
        Self::from_rows_at(name.into(), rows, Path::new(""))
    }

    fn from_rows_at(name: String, rows: &[(i32, S)], path: &Path) -> Result<Self> {
        let first_year = match rows.first() {
            Some(&(y, _)) => y,
            None => {
                return Err(Error::MalformedRow {
                    path: path.to_path_buf(),
                    line: 1,
                    message: format!("series `{name}` has no data rows"),
                })
            }
        };
        for pair in rows.windows(2) {
            let (prev, year) = (pair[0].0, pair[1].0);
            if year == prev {
                return Err(Error::DuplicateYear {
                    path: path.to_path_buf(),
                    series: name,
                    year,
                });
            }
            if year < prev {
                return Err(Error::Unordered {
                    path: path.to_path_buf(),
                    series: name,
                    year,
                    previous: prev,
                });
            }
            if year > prev + 1 {
                return Err(Error::Gap {
                    path: path.to_path_buf(),
                    series: name,
                    missing: prev + 1,
                });
            }
        }
        for &(year, value) in rows {
            if !value.is_finite() {
                return Err(Error::NonPositive {
                    series: name,
                    year,
                    value: value.as_f64(),
                });
            }
        }
        Ok(Self {
            name,
            first_year,
            values: rows.iter().map(|&(_, v)| v).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first_year(&self) -> i32 {
        self.first_year
    }

    pub fn last_year(&self) -> i32 {
        self.first_year + self.values.len() as i32 - 1
    }

    pub fn get(&self, year: i32) -> Option<S> {
        let idx = usize::try_from(year - self.first_year).ok()?;
        self.values.get(idx).copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (i32, S)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.first_year + i as i32, v))
    }

    /// Values for `first..=last`, or a coverage error listing every missing year.
    pub fn span(&self, first: i32, last: i32) -> Result<Vec<S>> {
        let missing: Vec<i32> = (first..=last).filter(|&y| self.get(y).is_none()).collect();
        if !missing.is_empty() {
            return Err(Error::Coverage {
                series: self.name.clone(),
                missing,
            });
        }
        Ok((first..=last).filter_map(|y| self.get(y)).collect())
    }

    fn require_positive(&self, first: i32, last: i32) -> Result<()> {
        for year in first..=last {
            if let Some(v) = self.get(year) {
                if !(v > S::zero()) {
                    return Err(Error::NonPositive {
                        series: self.name.clone(),
                        year,
                        value: v.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Reads a `year,value` CSV file into a validated series named `name`.
pub fn load_series<S: Scalar>(path: impl AsRef<Path>, name: &str) -> Result<AnnualSeries<S>> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::open(path).map_err(io_err)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(file);

    let malformed = |line: u64, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut rows = Vec::new();
    let mut saw_header = false;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            match e.into_kind() {
                csv::ErrorKind::Io(source) => io_err(source),
                kind => malformed(line, format!("{kind:?}")),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if !saw_header {
            if record.len() != 2 || &record[0] != "year" || &record[1] != "value" {
                return Err(malformed(line, "expected header `year,value`".into()));
            }
            saw_header = true;
            continue;
        }
        if record.len() != 2 {
            return Err(malformed(line, format!("expected 2 fields, found {}", record.len())));
        }
        let year: i32 = record[0]
            .parse()
            .map_err(|_| malformed(line, format!("bad year `{}`", &record[0])))?;
        let value: f64 = record[1]
            .parse()
            .map_err(|_| malformed(line, format!("bad value `{}`", &record[1])))?;
        if !value.is_finite() {
            return Err(malformed(line, format!("non-finite value `{}`", &record[1])));
        }
        let value = S::from_f64(value).ok_or_else(|| malformed(line, "value out of range".into()))?;
        rows.push((year, value));
    }
    if !saw_header {
        return Err(malformed(1, "empty file, expected header `year,value`".into()));
    }
    AnnualSeries::from_rows_at(name.to_string(), &rows, path)
}

/// The five inputs of a historical replay.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoricalSeries<S> {
    pub cpi: AnnualSeries<S>,
    pub sp500: AnnualSeries<S>,
    pub div_yield: AnnualSeries<S>,
    pub income: AnnualSeries<S>,
    pub gdp: AnnualSeries<S>,
}

impl<S: Scalar> HistoricalSeries<S> {
    /// Loads `cpi.csv`, `sp500.csv`, `dividend_yield.csv`, `income.csv` and
    /// `gdp.csv` from `dir`.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let file = |name: &str| -> PathBuf { dir.join(name) };
        Ok(Self {
            cpi: load_series(file(CPI_FILE), "cpi")?,
            sp500: load_series(file(SP500_FILE), "sp500")?,
            div_yield: load_series(file(DIVIDEND_YIELD_FILE), "dividend_yield")?,
            income: load_series(file(INCOME_FILE), "income")?,
            gdp: load_series(file(GDP_FILE), "gdp")?,
        })
    }

    /// Latest year covered by every series.
    pub fn common_last_year(&self) -> i32 {
        [&self.cpi, &self.sp500, &self.div_yield, &self.income, &self.gdp]
            .iter()
            .map(|s| s.last_year())
            .min()
            .expect("five series")
    }
}

/// Calendar years simulated, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start_year: i32,
    pub end_year: i32,
}

/// Deflates income and GDP to base-year dollars, normalizes them to 1 at the
/// base year, and derives real index growth from year-end levels.
///
/// The window must start the year after `base_year`, so that plan year `t`
/// is calendar year `base_year + t`.
pub fn build_historical_paths<S: Scalar>(
    series: &HistoricalSeries<S>,
    window: Window,
    base_year: i32,
) -> Result<(EconomyPath<S>, MarketPath<S>)> {
    let Window { start_year, end_year } = window;
    let bad_window = |reason| Error::InvalidWindow {
        start: start_year,
        end: end_year,
        base: base_year,
        reason,
    };
    if end_year < start_year {
        return Err(bad_window("end year precedes start year"));
    }
    if start_year != base_year + 1 {
        return Err(bad_window("window must begin the year after the base year"));
    }

    let cpi = series.cpi.span(base_year, end_year)?;
    let sp500 = series.sp500.span(base_year, end_year)?;
    let income = series.income.span(base_year, end_year)?;
    let gdp = series.gdp.span(base_year, end_year)?;
    let div_yield = series.div_yield.span(start_year, end_year)?;
    for s in [&series.cpi, &series.sp500, &series.income, &series.gdp] {
        s.require_positive(base_year, end_year)?;
    }

    let normalized = |nominal: &[S]| -> Result<Vec<S>> {
        let real = deflate(nominal, &cpi, 0)?;
        let anchor = real[0];
        Ok(real.iter().map(|&x| x / anchor).collect())
    };
    let economy = EconomyPath::new(base_year, normalized(&income)?, normalized(&gdp)?)?;

    let growth = (1..cpi.len())
        .map(|t| (sp500[t] / sp500[t - 1]) * (cpi[t - 1] / cpi[t]) - S::one())
        .collect();
    let market = MarketPath::new(growth, div_yield)?;
    Ok((economy, market))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        let mut f = std::fs::File::create(&p).unwrap();
        f.write_all(body.as_bytes()).unwrap();
        p
    }

    #[test]
    fn loads_two_rows() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "year,value\n1984,100\n1985,103.5\n");
        let s: AnnualSeries<f64> = load_series(&p, "cpi").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(1985), Some(103.5));
        assert_eq!(s.first_year(), 1984);
        assert_eq!(s.last_year(), 1985);
    }

    #[test]
    fn gap_names_missing_year() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "year,value\n1985,1\n1987,2\n");
        match load_series::<f64>(&p, "cpi").unwrap_err() {
            Error::Gap { missing, .. } => assert_eq!(missing, 1986),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nan_value_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "year,value\n1985,1\n1986,NaN\n");
        match load_series::<f64>(&p, "cpi").unwrap_err() {
            Error::MalformedRow { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_and_unordered_years() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "year,value\n1985,1\n1985,2\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::DuplicateYear { year: 1985, .. })));
        let p = write(dir.path(), "b.csv", "year,value\n1986,1\n1985,2\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::Unordered { .. })));
    }

    #[test]
    fn malformed_rows() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "a.csv", "year,value\n1985,1,3\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::MalformedRow { line: 2, .. })));
        let p = write(dir.path(), "b.csv", "year,value\n1985,\"1,000\"\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::MalformedRow { line: 2, .. })));
        let p = write(dir.path(), "c.csv", "yr,val\n1985,1\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::MalformedRow { line: 1, .. })));
        let p = write(dir.path(), "d.csv", "");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::MalformedRow { .. })));
        let p = write(dir.path(), "e.csv", "year,value\n");
        assert!(matches!(load_series::<f64>(&p, "x"), Err(Error::MalformedRow { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_series::<f64>("/nonexistent/cpi.csv", "cpi").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.to_string().contains("/nonexistent/cpi.csv"));
    }

    fn flat(name: &str, first: i32, last: i32, v: f64) -> AnnualSeries<f64> {
        let rows: Vec<_> = (first..=last).map(|y| (y, v)).collect();
        AnnualSeries::from_rows(name, &rows).unwrap()
    }

    fn flat_set() -> HistoricalSeries<f64> {
        HistoricalSeries {
            cpi: flat("cpi", 1984, 2020, 100.0),
            sp500: flat("sp500", 1984, 2020, 160.0),
            div_yield: flat("dividend_yield", 1985, 2020, 0.03),
            income: flat("income", 1984, 2020, 50_000.0),
            gdp: flat("gdp", 1984, 2020, 80_000.0),
        }
    }

    #[test]
    fn window_length_and_flat_market() {
        let w = Window { start_year: 1985, end_year: 2020 };
        let (e, m) = build_historical_paths(&flat_set(), w, 1984).unwrap();
        assert_eq!(e.horizon(), 36);
        assert_eq!(m.horizon(), 36);
        assert_eq!(e.year(36), 2020);
        assert!(m.growth_series().iter().all(|&s| s == 0.0));
        assert!(e.income_series().iter().all(|&i| i == 1.0));
        assert_eq!(m.div_yield(1), 0.03);
    }

    #[test]
    fn inflation_cancels_index_doubling() {
        let mut set = flat_set();
        set.cpi = AnnualSeries::from_rows("cpi", &[(1984, 100.0), (1985, 200.0)]).unwrap();
        set.sp500 = AnnualSeries::from_rows("sp500", &[(1984, 160.0), (1985, 320.0)]).unwrap();
        let w = Window { start_year: 1985, end_year: 1985 };
        let (_, m) = build_historical_paths(&set, w, 1984).unwrap();
        assert_eq!(m.growth(1), 0.0);
    }

    #[test]
    fn coverage_error_lists_missing_years() {
        let mut set = flat_set();
        set.div_yield = flat("dividend_yield", 1985, 2017, 0.03);
        let w = Window { start_year: 1985, end_year: 2020 };
        match build_historical_paths(&set, w, 1984).unwrap_err() {
            Error::Coverage { series, missing } => {
                assert_eq!(series, "dividend_yield");
                assert_eq!(missing, vec![2018, 2019, 2020]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn window_must_follow_base_year() {
        let w = Window { start_year: 1990, end_year: 2020 };
        assert!(matches!(
            build_historical_paths(&flat_set(), w, 1984),
            Err(Error::InvalidWindow { .. })
        ));
        let w = Window { start_year: 1985, end_year: 1984 };
        assert!(build_historical_paths(&flat_set(), w, 1984).is_err());
    }

    #[test]
    fn nonpositive_level_rejected() {
        let mut set = flat_set();
        set.sp500 = AnnualSeries::from_rows("sp500", &[(1984, 1.0), (1985, 0.0)]).unwrap();
        let w = Window { start_year: 1985, end_year: 1985 };
        assert!(matches!(
            build_historical_paths(&set, w, 1984),
            Err(Error::NonPositive { year: 1985, .. })
        ));
    }
}
