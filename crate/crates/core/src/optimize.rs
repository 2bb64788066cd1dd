//! Contribution-rate search: a coarse scan of the income-vs-GDP loss followed
//! by golden-section refinement around the best grid point.

use crate::error::{Error, Result};
use crate::model::{EconomyPath, MarketPath, PlanParams};
use crate::scalar::Scalar;
use crate::schedule::solve_schedule;
use crate::simulate::simulate;

/// Sum over plan years of `|1 - Î_t / G_t|` with the schedule solved at `contribution`.
///
/// A schedule the recursion cannot solve scores `+inf`.
pub fn loss<S: Scalar>(contribution: S, economy: &EconomyPath<S>, base: &PlanParams<S>) -> Result<S> {
    let params = base.with_contribution(contribution)?;
    let schedule = match solve_schedule(economy, &params) {
        Ok((schedule, _)) => schedule,
        Err(Error::Singular { .. }) => return Ok(S::infinity()),
        Err(e) => return Err(e),
    };
    let market = MarketPath::constant(params.growth(), params.dividend(), params.term())?;
    let run = simulate(economy, &market, &schedule, &params)?;
    Ok(run
        .total_income()
        .iter()
        .enumerate()
        .fold(S::zero(), |acc, (i, &inc)| acc + (S::one() - inc / economy.gdp(i + 1)).abs()))
}

/// Scan grid `c_min, c_min + step, ...` up to `c_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContributionGrid<S> {
    pub min: S,
    pub max: S,
    pub step: S,
}

impl<S: Scalar> Default for ContributionGrid<S> {
    fn default() -> Self {
        Self {
            min: S::zero(),
            max: S::lit(0.2),
            step: S::lit(0.001),
        }
    }
}

impl<S: Scalar> ContributionGrid<S> {
    pub fn points(&self) -> Result<Vec<S>> {
        let invalid = |name, value: S, reason| Error::InvalidParameter {
            name,
            value: value.as_f64(),
            reason,
        };
        if !(self.min >= S::zero() && self.min < S::one()) {
            return Err(invalid("c-min", self.min, "must lie in [0, 1)"));
        }
        if !(self.max < S::one()) {
            return Err(invalid("c-max", self.max, "must be below 1"));
        }
        if !(self.step > S::zero() && self.step.is_finite()) {
            return Err(invalid("c-step", self.step, "must be positive"));
        }
        if !(self.max >= self.min) {
            return Err(Error::EmptyGrid);
        }
        // slack so that an endpoint hit up to rounding is still included
        let span = (self.max - self.min) / self.step + S::lit(1e-9);
        let count = span.floor().to_usize().ok_or(Error::EmptyGrid)? + 1;
        Ok((0..count)
            .map(|k| {
                let c = self.min + self.step * S::from_usize(k).expect("grid index");
                c.min(self.max)
            })
            .collect())
    }
}

/// Scanned `(c, loss)` pairs in increasing `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossCurve<S> {
    pub points: Vec<(S, S)>,
}

impl<S: Scalar> LossCurve<S> {
    /// Grid index of the smallest loss, ties going to the smaller `c`.
    pub fn argmin(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &(_, l)) in self.points.iter().enumerate() {
            if l.is_nan() {
                continue;
            }
            if best.is_none_or(|b| l < self.points[b].1) {
                best = Some(i);
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum<S> {
    pub contribution: S,
    pub loss: S,
    pub curve: LossCurve<S>,
}

/// Golden-section minimization of `f` on `[lo, hi]` down to a bracket of width `tol`.
pub fn golden_section<S, F>(mut f: F, lo: S, hi: S, tol: S) -> Result<(S, S)>
where
    S: Scalar,
    F: FnMut(S) -> Result<S>,
{
    let inv_phi = (S::lit(5.0).sqrt() - S::one()) / S::lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Finds the contribution rate minimizing [`loss`].
///
/// `base` supplies the term, dividend rate and real growth; its contribution
/// is ignored. The refinement only replaces the best grid point when it
/// scores strictly lower.
pub fn optimize_c<S: Scalar>(
    economy: &EconomyPath<S>,
    base: &PlanParams<S>,
    grid: ContributionGrid<S>,
    tolerance: S,
) -> Result<Optimum<S>> {
    let cs = grid.points()?;
    let points = cs
        .iter()
        .map(|&c| loss(c, economy, base).map(|l| (c, l)))
        .collect::<Result<Vec<_>>>()?;
    let curve = LossCurve { points };
    let best = curve.argmin().ok_or(Error::EmptyGrid)?;
    let (grid_c, grid_loss) = curve.points[best];

    let lo = if best > 0 { curve.points[best - 1].0 } else { grid_c };
    let hi = curve.points.get(best + 1).map_or(grid_c, |p| p.0);
    let (contribution, loss_at) = if hi > lo && grid_loss.is_finite() {
        let (c, l) = golden_section(|c| loss(c, economy, base), lo, hi, tolerance)?;
        if l < grid_loss {
            (c, l)
        } else {
            (grid_c, grid_loss)
        }
    } else {
        (grid_c, grid_loss)
    };

    Ok(Optimum {
        contribution,
        loss: loss_at,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{project_model_economy, ModelAssumptions};

    fn setup() -> (EconomyPath<f64>, PlanParams<f64>) {
        let a = ModelAssumptions::<f64>::default();
        (a.economy().unwrap(), a.params(0.0).unwrap())
    }

    #[test]
    fn zero_contribution_loss_is_full_gap() {
        let (e, p) = setup();
        let expected: f64 = (1..=45).map(|t| (1.0 - e.income(t) / e.gdp(t)).abs()).sum();
        let l = loss(0.0, &e, &p).unwrap();
        assert!(l > 0.0);
        assert!((l - expected).abs() < 1e-12);
    }

    #[test]
    fn grid_points_inclusive() {
        let g = ContributionGrid { min: 0.0, max: 0.2, step: 0.001 };
        let pts = g.points().unwrap();
        assert_eq!(pts.len(), 201);
        assert_eq!(*pts.last().unwrap(), 0.2);
        let single = ContributionGrid { min: 0.05, max: 0.05, step: 0.001 };
        assert_eq!(single.points().unwrap(), vec![0.05]);
        assert!(matches!(
            ContributionGrid { min: 0.1, max: 0.05, step: 0.001 }.points(),
            Err(Error::EmptyGrid)
        ));
        assert!(ContributionGrid { min: 0.0, max: 0.1, step: 0.0 }.points().is_err());
    }

    #[test]
    fn single_point_grid_returns_it() {
        let (e, p) = setup();
        let g = ContributionGrid { min: 0.05, max: 0.05, step: 0.001 };
        let opt = optimize_c(&e, &p, g, 1e-6).unwrap();
        assert_eq!(opt.contribution, 0.05);
        assert_eq!(opt.curve.points.len(), 1);
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x: f64| Ok((x - 0.3).powi(2) + 0.5), 0.0, 1.0, 1e-7).unwrap();
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 0.5).abs() < 1e-14);
    }

    #[test]
    fn optimum_beats_every_grid_point_and_neighbours() {
        let (e, p) = setup();
        let opt = optimize_c(&e, &p, ContributionGrid::default(), 1e-6).unwrap();
        for &(_, l) in &opt.curve.points {
            assert!(opt.loss <= l);
        }
        let c = opt.contribution;
        assert!(loss(c - 0.02, &e, &p).unwrap() > opt.loss);
        assert!(loss(c + 0.02, &e, &p).unwrap() > opt.loss);
    }

    #[test]
    fn argmin_prefers_smaller_c_on_ties() {
        let curve = LossCurve { points: vec![(0.1, 2.0), (0.2, 1.0), (0.3, 1.0)] };
        assert_eq!(curve.argmin(), Some(1));
        let all_inf = LossCurve { points: vec![(0.1, f64::INFINITY), (0.2, f64::INFINITY)] };
        assert_eq!(all_inf.argmin(), Some(0));
    }

    #[test]
    fn singular_schedules_score_infinite() {
        // flat economy: zero gap in year 1
        let e = project_model_economy(0.0, 0.0, 5).unwrap();
        let p = PlanParams::new(0.0, 5, 0.02, 0.05).unwrap();
        assert_eq!(loss(0.05, &e, &p).unwrap(), f64::INFINITY);
    }
}
