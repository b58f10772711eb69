//! Randomized property suite over sampled pairs.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::functionals::{evaluate_pair, pair_geometry, Bound, BOUND_RTOL};
use crate::norm::{sample_vector, Norm, RadiusRange, RngSeed, Vector};

pub const ALPHA_RANGE: &str = "alpha_range";
pub const MALIGRANDA_GAP_NONNEGATIVE: &str = "maligranda_gap_nonnegative";
pub const DEHGHAN_GAP_NONNEGATIVE: &str = "dehghan_gap_nonnegative";
pub const REVERSE_TRIANGLE: &str = "reverse_triangle";
pub const SYMMETRY: &str = "symmetry";
pub const SCALE_INVARIANCE: &str = "scale_invariance";
pub const EQUAL_NORM_COLLAPSE: &str = "equal_norm_collapse";
pub const EUCLIDEAN_IDENTITY: &str = "euclidean_identity_defect";
pub const ALPHA_LE_BETA: &str = "alpha_le_beta";

const SCALES: [f64; 3] = [0.1, 3.0, 10.0];

/// Names of everything [`property_suite`] checks for `norm`.
pub fn suite_names(norm: &Norm) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = Bound::UNIVERSAL.iter().map(|b| b.as_str()).collect();
    names.extend([
        ALPHA_RANGE,
        MALIGRANDA_GAP_NONNEGATIVE,
        DEHGHAN_GAP_NONNEGATIVE,
        REVERSE_TRIANGLE,
        SYMMETRY,
        SCALE_INVARIANCE,
        EQUAL_NORM_COLLAPSE,
    ]);
    if norm.is_inner_product() {
        names.extend([
            Bound::DunklWilliams2.as_str(),
            EUCLIDEAN_IDENTITY,
            ALPHA_LE_BETA,
        ]);
    }
    names
}

fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}

/// Samples `pairs` pairs from `seed` and counts failures per name.
/// Inner-product norms additionally get the checks that only hold there.
pub fn property_suite(norm: &Norm, pairs: usize, seed: RngSeed) -> Result<BTreeMap<String, u64>> {
    let mut failures: BTreeMap<String, u64> =
        suite_names(norm).into_iter().map(|n| (n.to_string(), 0)).collect();
    let mut fail = |name: &str| *failures.get_mut(name).expect("registered name") += 1;
    let inner = norm.is_inner_product();
    let mut rng = seed.rng();
    let radius = RadiusRange::default();

    for _ in 0..pairs {
        let x = sample_vector(norm, &mut rng, radius)?;
        let y = sample_vector(norm, &mut rng, radius)?;
        let r = evaluate_pair(norm, &x, &y)?;
        let g = &r.geometry;

        for b in &r.bounds {
            if !b.holds {
                fail(b.name.as_str());
            }
        }
        if !(g.alpha >= 0.0 && g.alpha <= 2.0 + BOUND_RTOL) {
            fail(ALPHA_RANGE);
        }
        if r.maligranda_gap < -BOUND_RTOL {
            fail(MALIGRANDA_GAP_NONNEGATIVE);
        }
        if r.dehghan_gap < -BOUND_RTOL {
            fail(DEHGHAN_GAP_NONNEGATIVE);
        }
        if g.abs_norm_gap > g.norm_diff + BOUND_RTOL * g.norm_diff {
            fail(REVERSE_TRIANGLE);
        }

        let swapped = pair_geometry(norm, &y, &x)?;
        if (swapped.alpha - g.alpha).abs() > 1e-12 * g.alpha.max(1.0)
            || (swapped.beta - g.beta).abs() > 1e-12 * g.beta.max(1.0)
        {
            fail(SYMMETRY);
        }

        for c in SCALES {
            let s = pair_geometry(norm, &x.scale(c), &y.scale(c))?;
            if !rel_close(s.alpha, g.alpha, 1e-9) || !rel_close(s.beta, g.beta, 1e-9) {
                fail(SCALE_INVARIANCE);
                break;
            }
        }

        let y_eq: Vector = y.scale(g.norm_x / g.norm_y);
        let e = pair_geometry(norm, &x, &y_eq)?;
        if (e.alpha - e.beta).abs() > 1e-9 * e.alpha.max(1.0) {
            fail(EQUAL_NORM_COLLAPSE);
        }

        if inner {
            if !r.dunkl_williams_2.holds {
                fail(Bound::DunklWilliams2.as_str());
            }
            if let Some(d) = r.euclidean_identity_defect {
                if d > 1e-9 * (g.beta * g.beta).max(1.0) {
                    fail(EUCLIDEAN_IDENTITY);
                }
            }
            if g.alpha > g.beta + BOUND_RTOL * g.beta.max(1.0) {
                fail(ALPHA_LE_BETA);
            }
        }
    }
    Ok(failures)
}
