//! Independent reference for the payout schedule.
//!
//! Works year by year from the final liquidation backward, but instead of the
//! closed-form update it bisects on `p_t` directly: holdings that pay exactly
//! the income gap at rate `p_t + d`, carried one year through the forward
//! law, must equal the holdings that pay next year's gap at `p_{t+1} + d`.
//! Only plain `f64` arithmetic is used; nothing is shared with the solver.

#![allow(dead_code)]

pub struct ToyEconomy {
    /// `income[t]`, `gdp[t]` for `t = 0..=T`.
    pub income: Vec<f64>,
    pub gdp: Vec<f64>,
    pub contribution: f64,
    pub dividend: f64,
    pub growth: f64,
}

impl ToyEconomy {
    pub fn compounding(gdp_cagr: f64, income_cagr: f64, term: usize, contribution: f64, dividend: f64, growth: f64) -> Self {
        let mut income = vec![1.0];
        let mut gdp = vec![1.0];
        for _ in 0..term {
            income.push(income.last().unwrap() * (1.0 + income_cagr));
            gdp.push(gdp.last().unwrap() * (1.0 + gdp_cagr));
        }
        Self { income, gdp, contribution, dividend, growth }
    }

    pub fn term(&self) -> usize {
        self.income.len() - 1
    }

    /// Holdings needed so that `I_t + (p + d) H = G_t`.
    fn holdings_paying_gap(&self, t: usize, p: f64) -> f64 {
        (self.gdp[t] - self.income[t]) / (p + self.dividend)
    }

    /// Forward-law mismatch for year `t` given the next year's payout.
    fn mismatch(&self, t: usize, p: f64, p_next: f64) -> f64 {
        let h = self.holdings_paying_gap(t, p);
        let carried = (h * (1.0 - p) + self.contribution * self.income[t]) * (1.0 + self.growth);
        carried - self.holdings_paying_gap(t + 1, p_next)
    }

    /// Raw payout fractions `p_1..=p_T`, or `None` if some year has no root
    /// with `p_t + d > 0`.
    pub fn solve_by_bisection(&self) -> Option<Vec<f64>> {
        let term = self.term();
        let mut p = vec![0.0; term + 1];
        p[term] = 1.0;
        for t in (1..term).rev() {
            // mismatch decreases in p on (-d, inf): +inf at the left edge
            let mut lo = -self.dividend + 1e-12;
            let mut hi = 1.0;
            if self.mismatch(t, lo, p[t + 1]) <= 0.0 {
                return None;
            }
            while self.mismatch(t, hi, p[t + 1]) > 0.0 {
                hi *= 2.0;
                if hi > 1e9 {
                    return None;
                }
            }
            for _ in 0..400 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.mismatch(t, mid, p[t + 1]) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            p[t] = 0.5 * (lo + hi);
        }
        Some(p[1..].to_vec())
    }
}
