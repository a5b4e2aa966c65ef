//! Step allowance for a tagged variable's walk.
//!
//! `h(n_i, k) = 4·Δ·n_i·(m − k + 1)² / ln 2`, where `n_i` is the number of
//! c_i-variables when color c_i is first processed, `k` the current list
//! size and `m` the edge count. The allowance is `⌈h⌉`; a walker gets
//! `⌈h⌉ − 1` steps.

use crate::error::ColoringError;

pub fn hitting_bound(n_i: usize, k: usize, delta: usize, m: usize) -> f64 {
    let span = (m - k + 1) as f64;
    4.0 * delta as f64 * n_i as f64 * span * span / std::f64::consts::LN_2
}

/// `⌈h(n_i, k)⌉`. Requires `1 ≤ k ≤ n_i` and `k ≤ m`.
pub fn step_budget(n_i: usize, k: usize, delta: usize, m: usize) -> Result<u64, ColoringError> {
    if n_i == 0 || k == 0 || k > n_i || k > m {
        return Err(ColoringError::InvalidBudget { n_i, k, m });
    }
    Ok(hitting_bound(n_i, k, delta, m).ceil().max(1.0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values from 50-digit evaluation of 4·Δ·n·(m−k+1)²/ln 2
    #[test]
    fn frozen_values() {
        assert_eq!(step_budget(1, 1, 3, 15).unwrap(), 3896);
        assert_eq!(step_budget(2, 1, 3, 15).unwrap(), 7791);
        assert_eq!(step_budget(2, 2, 3, 15).unwrap(), 6787);
        assert_eq!(step_budget(5, 5, 4, 5).unwrap(), 116);
        assert_eq!(step_budget(7, 3, 8, 400).unwrap(), 51_190_422);
    }

    #[test]
    fn last_variable_budget() {
        // k = n_i = m leaves (m − k + 1) = 1
        let (delta, m) = (3, 9);
        let expected = (4.0 * delta as f64 * m as f64 / std::f64::consts::LN_2).ceil() as u64;
        assert_eq!(step_budget(m, m, delta, m).unwrap(), expected);
    }

    #[test]
    fn decreasing_in_k() {
        let n_i = 12;
        let budgets: Vec<_> = (1..=n_i).map(|k| step_budget(n_i, k, 4, 40).unwrap()).collect();
        assert!(budgets.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn preconditions() {
        assert!(step_budget(0, 0, 3, 15).is_err());
        assert!(step_budget(2, 3, 3, 15).is_err());
        assert!(step_budget(2, 0, 3, 15).is_err());
        assert!(step_budget(20, 16, 3, 15).is_err());
    }
}
