//! Numerical inner-product detection.
//!
//! A norm comes from an inner product exactly when `α[x,y] ≤ β[x,y]` for all
//! nonzero pairs. [`search_counterexample`] hunts for pairs with `α > β`;
//! [`lorch_scan`] looks for equal-norm pairs with `‖x+y‖ > ‖γx + γ⁻¹y‖`;
//! [`parallelogram_defect`] is the classical parallelogram-law check used as
//! an independent oracle. A violation from any of them is a certificate that
//! can be re-evaluated directly; finding none is only evidence.

mod lorch;
mod pattern;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{dunkl_williams_2, pair_geometry};
use crate::norm::{sample_vector, Norm, RadiusRange, RngSeed, Vector};

pub use lorch::{default_gamma_grid, lorch_pair, lorch_scan, LorchResult, LorchViolation};
use pattern::{climb, ClimbParams};

/// Knobs shared by the searches. Defaults match the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub restarts: usize,
    pub seed: RngSeed,
    pub radius_range: RadiusRange,
    pub step_init: f64,
    pub step_min: f64,
    pub violation_threshold: f64,
    pub max_iters_per_restart: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            restarts: 64,
            seed: RngSeed(0),
            radius_range: RadiusRange::default(),
            step_init: 0.5,
            step_min: 1e-10,
            violation_threshold: 1e-7,
            max_iters_per_restart: 10_000,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.dim == 0 {
            return bad("dim must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.max_iters_per_restart == 0 {
            return bad("max_iters_per_restart must be positive");
        }
        if !(self.step_min > 0.0 && self.step_min < self.step_init && self.step_init.is_finite()) {
            return bad("need 0 < step_min < step_init");
        }
        if !(self.violation_threshold > 0.0 && self.violation_threshold.is_finite()) {
            return bad("violation_threshold must be positive");
        }
        RadiusRange::new(self.radius_range.lo, self.radius_range.hi)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        Ok(())
    }

    fn check_against(&self, norm: &Norm) -> Result<()> {
        self.validate()?;
        if norm.dim() != self.dim {
            return Err(Error::InvalidConfig(format!(
                "norm is {}-dimensional but config asks for dim {}",
                norm.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    fn climb_params(&self) -> ClimbParams {
        ClimbParams {
            step_init: self.step_init,
            step_min: self.step_min,
            max_sweeps: self.max_iters_per_restart,
        }
    }
}

/// `α[x,y] − β[x,y]`. A positive value certifies the norm is not an
/// inner-product norm.
pub fn violation_objective(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    let g = pair_geometry(norm, x, y)?;
    Ok(g.alpha - g.beta)
}

/// `|‖x+y‖² + ‖x−y‖² − 2‖x‖² − 2‖y‖²|`. Defined for zero vectors too.
pub fn parallelogram_defect(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    norm.check_dim(x)?;
    norm.check_dim(y)?;
    let n = |v: &Vector| norm.eval_coords(v.coords());
    let (s, d, nx, ny) = (n(&(x + y)), n(&(x - y)), n(x), n(y));
    Ok((s * s + d * d - 2.0 * nx * nx - 2.0 * ny * ny).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CounterexampleFound,
    NoViolationFound,
}

/// Outcome of the `α − β` maximization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub verdict: Verdict,
    /// `α − β` at the best pair, re-evaluated after canonical rescaling.
    pub best_value: f64,
    /// Present iff a counterexample was found; scaled so `max(‖x‖, ‖y‖) = 1`.
    pub witness_x: Option<Vector>,
    pub witness_y: Option<Vector>,
    pub alpha_at_witness: f64,
    pub beta_at_witness: f64,
    pub restarts_used: usize,
    pub evaluations: u64,
}

/// Outcome of a secondary violation search (parallelogram defect,
/// constant-2 Dunkl–Williams).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub violation_found: bool,
    /// Objective at the best pair, re-evaluated after canonical rescaling.
    pub best_value: f64,
    pub witness_x: Option<Vector>,
    pub witness_y: Option<Vector>,
    pub restarts_used: usize,
    pub evaluations: u64,
}

struct Best {
    x: Vector,
    y: Vector,
    evaluations: u64,
}

/// Runs `config.restarts` independent climbs on `objective(x, y)` and keeps
/// the best, ties going to the lowest restart index. Restart `i` draws its
/// start from child stream `stream_base + i`, so the outcome does not depend
/// on the thread count.
fn multi_start<F>(norm: &Norm, config: &SearchConfig, stream_base: u64, objective: F) -> Result<Best>
where
    F: Fn(&Vector, &Vector) -> Option<f64> + Sync,
{
    let dim = config.dim;
    let climbs = (0..config.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = config.seed.child(stream_base + i as u64);
            let x = sample_vector(norm, &mut rng, config.radius_range)?;
            let y = sample_vector(norm, &mut rng, config.radius_range)?;
            let mut start = Vec::with_capacity(2 * dim);
            start.extend_from_slice(x.coords());
            start.extend_from_slice(y.coords());
            Ok(climb(start, config.climb_params(), |p| {
                let x = Vector::from_raw(p[..dim].to_vec());
                let y = Vector::from_raw(p[dim..].to_vec());
                objective(&x, &y)
            }))
        })
        .collect::<Result<Vec<_>>>()?;

    let evaluations = climbs.iter().map(|c| c.evaluations).sum();
    let best = climbs
        .into_iter()
        .reduce(|best, c| if c.value > best.value { c } else { best })
        .expect("restarts > 0");

    let x = Vector::from_raw(best.point[..dim].to_vec());
    let y = Vector::from_raw(best.point[dim..].to_vec());
    let scale = norm.eval_coords(x.coords()).max(norm.eval_coords(y.coords()));
    Ok(Best {
        x: x.div(scale),
        y: y.div(scale),
        evaluations,
    })
}

/// Maximizes `α − β` by multi-start pattern search.
pub fn search_counterexample(norm: &Norm, config: &SearchConfig) -> Result<DetectionResult> {
    config.check_against(norm)?;
    let best = multi_start(norm, config, 0, |x, y| violation_objective(norm, x, y).ok())?;
    let g = pair_geometry(norm, &best.x, &best.y)?;
    let best_value = g.alpha - g.beta;
    let found = best_value > config.violation_threshold;
    Ok(DetectionResult {
        verdict: if found {
            Verdict::CounterexampleFound
        } else {
            Verdict::NoViolationFound
        },
        best_value,
        witness_x: found.then(|| best.x.clone()),
        witness_y: found.then_some(best.y),
        alpha_at_witness: g.alpha,
        beta_at_witness: g.beta,
        restarts_used: config.restarts,
        evaluations: best.evaluations,
    })
}

fn normalized_defect(norm: &Norm, x: &Vector, y: &Vector) -> Option<f64> {
    let nx = norm.eval_coords(x.coords());
    let ny = norm.eval_coords(y.coords());
    let denom = nx * nx + ny * ny;
    if !(denom > 0.0) {
        return None;
    }
    parallelogram_defect(norm, x, y).ok().map(|d| d / denom)
}

fn secondary_search<F>(norm: &Norm, config: &SearchConfig, stream_base: u64, objective: F) -> Result<SearchOutcome>
where
    F: Fn(&Vector, &Vector) -> Option<f64> + Sync,
{
    config.check_against(norm)?;
    let best = multi_start(norm, config, stream_base, &objective)?;
    let best_value = objective(&best.x, &best.y)
        .ok_or_else(|| Error::Internal("degenerate witness".into()))?;
    let found = best_value > config.violation_threshold;
    Ok(SearchOutcome {
        violation_found: found,
        best_value,
        witness_x: found.then(|| best.x.clone()),
        witness_y: found.then_some(best.y),
        restarts_used: config.restarts,
        evaluations: best.evaluations,
    })
}

/// Maximizes the parallelogram defect normalized by `‖x‖² + ‖y‖²`.
pub fn search_parallelogram_defect(norm: &Norm, config: &SearchConfig) -> Result<SearchOutcome> {
    secondary_search(norm, config, 1 << 40, |x, y| normalized_defect(norm, x, y))
}

/// Maximizes `α − 2‖x−y‖/(‖x‖+‖y‖)`; a positive value violates the
/// constant-2 Dunkl–Williams bound, which only inner-product norms satisfy.
pub fn search_dunkl_williams_2(norm: &Norm, config: &SearchConfig) -> Result<SearchOutcome> {
    secondary_search(norm, config, 3 << 40, |x, y| {
        dunkl_williams_2(norm, x, y).ok().map(|r| r.lhs - r.rhs)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceVerdict {
    NotInnerProduct,
    ConsistentWithInnerProduct,
}

/// Combined outcome of the three sub-tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: SpaceVerdict,
    pub alpha_beta: DetectionResult,
    pub lorch: LorchResult,
    pub parallelogram: SearchOutcome,
}

impl Classification {
    /// Whether the three sub-tests point the same way.
    pub fn sub_tests_agree(&self) -> bool {
        let a = self.alpha_beta.verdict == Verdict::CounterexampleFound;
        let l = !self.lorch.violations.is_empty();
        let p = self.parallelogram.violation_found;
        a == l && l == p
    }
}

/// Runs the `α − β` search, the Lorch scan over [`default_gamma_grid`] and
/// the parallelogram-defect search. Any certified violation means
/// [`SpaceVerdict::NotInnerProduct`].
pub fn classify_space(norm: &Norm, config: &SearchConfig) -> Result<Classification> {
    let alpha_beta = search_counterexample(norm, config)?;
    let lorch = lorch_scan(norm, config, &default_gamma_grid())?;
    let parallelogram = search_parallelogram_defect(norm, config)?;
    let violated = alpha_beta.verdict == Verdict::CounterexampleFound
        || !lorch.violations.is_empty()
        || parallelogram.violation_found;
    Ok(Classification {
        verdict: if violated {
            SpaceVerdict::NotInnerProduct
        } else {
            SpaceVerdict::ConsistentWithInnerProduct
        },
        alpha_beta,
        lorch,
        parallelogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norm::NormSpec;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn quick(dim: usize) -> SearchConfig {
        SearchConfig {
            dim,
            restarts: 8,
            seed: RngSeed(11),
            ..SearchConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        for bad in [
            SearchConfig {
                restarts: 0,
                ..SearchConfig::default()
            },
            SearchConfig {
                step_min: 1.0,
                ..SearchConfig::default()
            },
            SearchConfig {
                violation_threshold: 0.0,
                ..SearchConfig::default()
            },
            SearchConfig {
                dim: 0,
                ..SearchConfig::default()
            },
            SearchConfig {
                radius_range: RadiusRange { lo: 2.0, hi: 1.0 },
                ..SearchConfig::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        }
        let norm = NormSpec::lp(2.0).build(3).unwrap();
        assert!(matches!(
            search_counterexample(&norm, &SearchConfig::default()),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn objective_equal_norms_is_zero() {
        let norm = NormSpec::lp(1.0).build(2).unwrap();
        let x = v(&[0.3, 0.7]);
        let y = v(&[-0.9, 0.1]);
        assert!(violation_objective(&norm, &x, &y).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn defect_examples() {
        let l1 = NormSpec::lp(1.0).build(2).unwrap();
        assert_eq!(parallelogram_defect(&l1, &v(&[1.0, 0.0]), &v(&[0.0, 1.0])).unwrap(), 4.0);
        assert_eq!(parallelogram_defect(&l1, &v(&[0.0, 0.0]), &v(&[2.0, -1.0])).unwrap(), 0.0);
        let g = NormSpec::gram(vec![vec![2.0, 0.5], vec![0.5, 1.0]]).build(2).unwrap();
        let (x, y) = (v(&[0.3, -1.2]), v(&[2.0, 0.7]));
        let scale = g.eval(&x).unwrap().powi(2) + g.eval(&y).unwrap().powi(2);
        assert!(parallelogram_defect(&g, &x, &y).unwrap() <= 1e-9 * scale);
        assert!(parallelogram_defect(&l1, &v(&[1.0]), &v(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn taxicab_counterexample_is_certified() {
        let norm = NormSpec::lp(1.0).build(2).unwrap();
        let r = search_counterexample(&norm, &quick(2)).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
        let (x, y) = (r.witness_x.as_ref().unwrap(), r.witness_y.as_ref().unwrap());
        let again = violation_objective(&norm, x, y).unwrap();
        assert!((again - r.best_value).abs() <= 1e-12);
        let top = norm.eval(x).unwrap().max(norm.eval(y).unwrap());
        assert!((top - 1.0).abs() <= 1e-12);
        assert!(r.best_value <= 2.0 + 1e-9);
    }

    #[test]
    fn euclidean_has_no_counterexample() {
        let norm = NormSpec::lp(2.0).build(3).unwrap();
        let r = search_counterexample(&norm, &quick(3)).unwrap();
        assert_eq!(r.verdict, Verdict::NoViolationFound);
        assert!(r.best_value <= 1e-7);
        assert!(r.witness_x.is_none() && r.witness_y.is_none());
    }

    #[test]
    fn same_seed_same_result() {
        let norm = NormSpec::lp(f64::INFINITY).build(2).unwrap();
        let a = search_counterexample(&norm, &quick(2)).unwrap();
        let b = search_counterexample(&norm, &quick(2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dunkl_williams_2_search() {
        let l1 = NormSpec::lp(1.0).build(2).unwrap();
        let r = search_dunkl_williams_2(&l1, &quick(2)).unwrap();
        assert!(r.violation_found);
        let w = dunkl_williams_2(&l1, r.witness_x.as_ref().unwrap(), r.witness_y.as_ref().unwrap()).unwrap();
        assert!(!w.holds);

        let l2 = NormSpec::lp(2.0).build(2).unwrap();
        let r = search_dunkl_williams_2(&l2, &quick(2)).unwrap();
        assert!(!r.violation_found && r.witness_x.is_none());
    }

    #[test]
    fn classify_diagonal_gram_and_weighted_l2() {
        for spec in [
            NormSpec::gram_diagonal(&[2.0, 3.0]),
            NormSpec::weighted(2.0, vec![1.0, 5.0]),
        ] {
            let norm = spec.build(2).unwrap();
            let c = classify_space(&norm, &quick(2)).unwrap();
            assert_eq!(c.verdict, SpaceVerdict::ConsistentWithInnerProduct);
            assert!(c.sub_tests_agree());
        }
    }
}
