//! Derivative-free coordinate pattern search.
//!
//! Each sweep tries `±step` on every coordinate in turn, keeping the first
//! direction that improves the objective. A sweep with no improvement halves
//! the step. The climb stops once the step drops below `step_min` or after
//! `max_sweeps` sweeps.

#[derive(Debug, Clone)]
pub(crate) struct Climb {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ClimbParams {
    pub step_init: f64,
    pub step_min: f64,
    pub max_sweeps: usize,
}

/// Maximizes `objective`; `None` marks an infeasible point and is never accepted.
pub(crate) fn climb<F>(start: Vec<f64>, params: ClimbParams, objective: F) -> Climb
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let mut point = start;
    let mut value = objective(&point).unwrap_or(f64::NEG_INFINITY);
    let mut evaluations = 1u64;
    let mut step = params.step_init;
    let mut sweeps = 0usize;

    while step >= params.step_min && sweeps < params.max_sweeps {
        sweeps += 1;
        let mut improved = false;
        for i in 0..point.len() {
            let origin = point[i];
            for delta in [step, -step] {
                point[i] = origin + delta;
                evaluations += 1;
                match objective(&point) {
                    Some(v) if v > value => {
                        value = v;
                        improved = true;
                        break;
                    }
                    _ => point[i] = origin,
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    Climb {
        point,
        value,
        evaluations,
    }
}
