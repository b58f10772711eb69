use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SearchConfig;
use crate::error::{Error, Result};
use crate::norm::{sample_vector, Norm, Vector, NEAR_ZERO_NORM};

/// Lorch pairs use their own child streams, disjoint from the climbs'.
const LORCH_STREAM_BASE: u64 = 1 << 41;

/// An equal-norm pair with `‖x+y‖ > ‖γx + γ⁻¹y‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorchViolation {
    pub x: Vector,
    pub y: Vector,
    pub gamma: f64,
    /// ‖x+y‖
    pub lhs: f64,
    /// ‖γx + γ⁻¹y‖
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorchResult {
    pub violations: Vec<LorchViolation>,
    pub pairs_tested: usize,
    pub gammas_per_pair: usize,
}

/// 61 log-spaced values of γ from 1e−3 to 1e3; the middle entry is exactly 1.
pub fn default_gamma_grid() -> Vec<f64> {
    (0..=60).map(|k| 10f64.powf(f64::from(k - 30) / 10.0)).collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("gamma grid is empty".into()));
    }
    if let Some(g) = grid.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
        return Err(Error::InvalidConfig(format!("gamma {g} is not positive")));
    }
    Ok(())
}

/// Rescales `y` to `‖x‖` and checks `‖x+y‖ ≤ ‖γx + γ⁻¹y‖` for every γ.
///
/// Only γ > 0 is needed: for γ < 0 the right-hand side equals the one at |γ|.
pub fn lorch_pair(norm: &Norm, x: &Vector, y: &Vector, grid: &[f64]) -> Result<Vec<LorchViolation>> {
    check_grid(grid)?;
    norm.check_dim(x)?;
    norm.check_dim(y)?;
    let nx = norm.eval_coords(x.coords());
    let ny = norm.eval_coords(y.coords());
    for n in [nx, ny] {
        if !(n > NEAR_ZERO_NORM) {
            return Err(Error::NearZeroVector(n));
        }
    }
    let y = y.scale(nx / ny);
    let lhs = norm.eval_coords((x + &y).coords());
    Ok(grid
        .iter()
        .filter_map(|&gamma| {
            let rhs = norm.eval_coords(x.lin_comb(gamma, &y, gamma.recip()).coords());
            (lhs > rhs + 1e-9 * lhs.max(1.0)).then(|| LorchViolation {
                x: x.clone(),
                y: y.clone(),
                gamma,
                lhs,
                rhs,
            })
        })
        .collect())
}

/// Samples `config.restarts` pairs and runs [`lorch_pair`] on each.
pub fn lorch_scan(norm: &Norm, config: &SearchConfig, grid: &[f64]) -> Result<LorchResult> {
    config.check_against(norm)?;
    check_grid(grid)?;
    let per_pair = (0..config.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = config.seed.child(LORCH_STREAM_BASE + i as u64);
            let x = sample_vector(norm, &mut rng, config.radius_range)?;
            let y = sample_vector(norm, &mut rng, config.radius_range)?;
            lorch_pair(norm, &x, &y, grid)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LorchResult {
        violations: per_pair.into_iter().flatten().collect(),
        pairs_tested: config.restarts,
        gammas_per_pair: grid.len(),
    })
}
