//! Angular and skew-angular distances together with the triangle-inequality
//! refinements and distance estimates built from them.
//!
//! For nonzero `x`, `y`:
//!
//! ```text
//! α[x,y] = ‖x/‖x‖ − y/‖y‖‖          (angular distance)
//! β[x,y] = ‖x/‖y‖ − y/‖x‖‖          (skew-angular distance)
//! ```
//!
//! Every formula is evaluated as written, with no algebraic rearrangement,
//! so a report can be checked by hand against the printed inequality.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::{Norm, NormSpec, Vector, NEAR_ZERO_NORM};

/// Relative tolerance used by every [`BoundReport`].
pub const BOUND_RTOL: f64 = 1e-9;

/// Per-pair scalars shared by all the functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairGeometry {
    pub norm_x: f64,
    pub norm_y: f64,
    pub norm_sum: f64,
    pub norm_diff: f64,
    pub alpha: f64,
    pub beta: f64,
    /// ‖x‖ / ‖y‖
    pub ratio: f64,
    /// |‖x‖ − ‖y‖|
    pub abs_norm_gap: f64,
}

impl PairGeometry {
    pub fn min_norm(&self) -> f64 {
        // Ties resolve to ‖x‖ for both min and max.
        if self.norm_y < self.norm_x {
            self.norm_y
        } else {
            self.norm_x
        }
    }

    pub fn max_norm(&self) -> f64 {
        if self.norm_y > self.norm_x {
            self.norm_y
        } else {
            self.norm_x
        }
    }
}

/// Identifier of a reported inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    MaligrandaUpper,
    MaligrandaLower,
    DehghanUpper,
    DehghanLower,
    AngularLower,
    AngularUpper,
    MasseraSchaffer,
    #[serde(rename = "dunkl_williams_4")]
    DunklWilliams4,
    SkewUpper,
    SkewLower,
    Mtype,
    /// Valid only in inner-product spaces.
    #[serde(rename = "dunkl_williams_2")]
    DunklWilliams2,
}

impl Bound {
    /// The bounds that hold in every normed space.
    pub const UNIVERSAL: [Bound; 11] = [
        Bound::MaligrandaUpper,
        Bound::MaligrandaLower,
        Bound::DehghanUpper,
        Bound::DehghanLower,
        Bound::AngularLower,
        Bound::AngularUpper,
        Bound::MasseraSchaffer,
        Bound::DunklWilliams4,
        Bound::SkewUpper,
        Bound::SkewLower,
        Bound::Mtype,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Bound::MaligrandaUpper => "maligranda_upper",
            Bound::MaligrandaLower => "maligranda_lower",
            Bound::DehghanUpper => "dehghan_upper",
            Bound::DehghanLower => "dehghan_lower",
            Bound::AngularLower => "angular_lower",
            Bound::AngularUpper => "angular_upper",
            Bound::MasseraSchaffer => "massera_schaffer",
            Bound::DunklWilliams4 => "dunkl_williams_4",
            Bound::SkewUpper => "skew_upper",
            Bound::SkewLower => "skew_lower",
            Bound::Mtype => "mtype",
            Bound::DunklWilliams2 => "dunkl_williams_2",
        }
    }

    pub fn is_universal(self) -> bool {
        self != Bound::DunklWilliams2
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One instance of an inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: Bound,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`
    pub slack: f64,
    pub holds: bool,
}

impl BoundReport {
    pub fn new(name: Bound, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        let holds = slack >= -BOUND_RTOL * lhs.abs().max(rhs.abs()).max(1.0);
        Self {
            name,
            lhs,
            rhs,
            slack,
            holds,
        }
    }
}

fn nonzero_norm(norm: &Norm, x: &Vector) -> Result<f64> {
    norm.check_dim(x)?;
    let n = norm.eval_coords(x.coords());
    if n > NEAR_ZERO_NORM {
        Ok(n)
    } else {
        Err(Error::NearZeroVector(n))
    }
}

/// Computes ‖x‖, ‖y‖, ‖x±y‖, α, β and the derived ratios.
pub fn pair_geometry(norm: &Norm, x: &Vector, y: &Vector) -> Result<PairGeometry> {
    let norm_x = nonzero_norm(norm, x)?;
    let norm_y = nonzero_norm(norm, y)?;
    let n = |v: &Vector| norm.eval_coords(v.coords());
    let alpha = n(&(&x.div(norm_x) - &y.div(norm_y)));
    let beta = n(&(&x.div(norm_y) - &y.div(norm_x)));
    Ok(PairGeometry {
        norm_x,
        norm_y,
        norm_sum: n(&(x + y)),
        norm_diff: n(&(x - y)),
        alpha,
        beta,
        ratio: norm_x / norm_y,
        abs_norm_gap: (norm_x - norm_y).abs(),
    })
}

/// `2 − ‖x/‖x‖ + y/‖y‖‖`, the Maligranda refinement factor.
pub fn maligranda_gap(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    let nx = nonzero_norm(norm, x)?;
    let ny = nonzero_norm(norm, y)?;
    Ok(maligranda_gap_with(norm, x, y, nx, ny))
}

fn maligranda_gap_with(norm: &Norm, x: &Vector, y: &Vector, nx: f64, ny: f64) -> f64 {
    2.0 - norm.eval_coords((&x.div(nx) + &y.div(ny)).coords())
}

/// `‖x‖/‖y‖ + ‖y‖/‖x‖ − ‖x/‖y‖ + y/‖x‖‖`, the skew refinement factor.
pub fn dehghan_gap(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    let nx = nonzero_norm(norm, x)?;
    let ny = nonzero_norm(norm, y)?;
    Ok(dehghan_gap_with(norm, x, y, nx, ny))
}

fn dehghan_gap_with(norm: &Norm, x: &Vector, y: &Vector, nx: f64, ny: f64) -> f64 {
    nx / ny + ny / nx - norm.eval_coords((&x.div(ny) + &y.div(nx)).coords())
}

fn triangle_from(g: &PairGeometry, maligranda: f64, dehghan: f64) -> [BoundReport; 4] {
    let (min, max) = (g.min_norm(), g.max_norm());
    let total = g.norm_x + g.norm_y;
    [
        BoundReport::new(Bound::MaligrandaUpper, g.norm_sum, total - maligranda * min),
        BoundReport::new(Bound::MaligrandaLower, total - maligranda * max, g.norm_sum),
        BoundReport::new(Bound::DehghanUpper, g.norm_sum, total - dehghan * min),
        BoundReport::new(Bound::DehghanLower, total - dehghan * max, g.norm_sum),
    ]
}

/// Upper and lower refinements of the triangle inequality, with the
/// Maligranda factor and with the skew factor.
pub fn triangle_bounds(norm: &Norm, x: &Vector, y: &Vector) -> Result<[BoundReport; 4]> {
    let g = pair_geometry(norm, x, y)?;
    let m = maligranda_gap_with(norm, x, y, g.norm_x, g.norm_y);
    let d = dehghan_gap_with(norm, x, y, g.norm_x, g.norm_y);
    Ok(triangle_from(&g, m, d))
}

fn angular_from(g: &PairGeometry) -> [BoundReport; 4] {
    let (min, max) = (g.min_norm(), g.max_norm());
    [
        BoundReport::new(
            Bound::AngularLower,
            (g.norm_diff - g.abs_norm_gap) / min,
            g.alpha,
        ),
        BoundReport::new(
            Bound::AngularUpper,
            g.alpha,
            (g.norm_diff + g.abs_norm_gap) / max,
        ),
        BoundReport::new(Bound::MasseraSchaffer, g.alpha, 2.0 * g.norm_diff / max),
        BoundReport::new(
            Bound::DunklWilliams4,
            g.alpha,
            4.0 * g.norm_diff / (g.norm_x + g.norm_y),
        ),
    ]
}

/// Two-sided estimate of α plus the Massera–Schaffer and Dunkl–Williams bounds.
pub fn angular_bounds(norm: &Norm, x: &Vector, y: &Vector) -> Result<[BoundReport; 4]> {
    Ok(angular_from(&pair_geometry(norm, x, y)?))
}

fn dunkl_williams_2_from(g: &PairGeometry) -> BoundReport {
    BoundReport::new(
        Bound::DunklWilliams2,
        g.alpha,
        2.0 * g.norm_diff / (g.norm_x + g.norm_y),
    )
}

/// `α ≤ 2‖x−y‖/(‖x‖+‖y‖)`. Holds for every pair exactly when the norm comes
/// from an inner product, so `holds == false` is expected elsewhere.
pub fn dunkl_williams_2(norm: &Norm, x: &Vector, y: &Vector) -> Result<BoundReport> {
    Ok(dunkl_williams_2_from(&pair_geometry(norm, x, y)?))
}

fn skew_from(g: &PairGeometry) -> [BoundReport; 3] {
    let (min, max) = (g.min_norm(), g.max_norm());
    [
        BoundReport::new(
            Bound::SkewUpper,
            g.beta,
            g.norm_diff / max + g.abs_norm_gap / min,
        ),
        BoundReport::new(
            Bound::SkewLower,
            g.norm_diff / min - g.abs_norm_gap / max,
            g.beta,
        ),
        BoundReport::new(
            Bound::Mtype,
            g.beta,
            (1.0 / g.norm_x + 1.0 / g.norm_y) * g.norm_diff,
        ),
    ]
}

/// Two-sided estimate of β and the estimate `β ≤ (1/‖x‖ + 1/‖y‖)‖x−y‖`.
pub fn skew_angular_bounds(norm: &Norm, x: &Vector, y: &Vector) -> Result<[BoundReport; 3]> {
    Ok(skew_from(&pair_geometry(norm, x, y)?))
}

/// `β·‖x‖‖y‖ / ((‖x‖+‖y‖)‖x−y‖)` for `x = −1`, `y = eps` on the real line.
///
/// Goes through [`pair_geometry`] rather than a closed form; the ratio tends
/// to 1 as `eps → 0`, so the constant in the m-type estimate cannot be lowered.
pub fn sharpness_ratio(eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let norm = NormSpec::lp(1.0).build(1)?;
    let x = Vector::new(vec![-1.0])?;
    let y = Vector::new(vec![eps])?;
    let g = pair_geometry(&norm, &x, &y)?;
    Ok(g.beta * g.norm_x * g.norm_y / ((g.norm_x + g.norm_y) * g.norm_diff))
}

/// `|β² − α² − (r − 1/r)²|` with `r = ‖x‖/‖y‖`; zero up to rounding in any
/// inner-product space.
pub fn euclidean_identity_defect(norm: &Norm, x: &Vector, y: &Vector) -> Result<f64> {
    if !norm.is_inner_product() {
        return Err(Error::NotInnerProductSpec);
    }
    let g = pair_geometry(norm, x, y)?;
    Ok(identity_defect_from(&g))
}

fn identity_defect_from(g: &PairGeometry) -> f64 {
    let r = g.ratio;
    let d = r - 1.0 / r;
    (g.beta * g.beta - g.alpha * g.alpha - d * d).abs()
}

/// Everything computed for one pair in a single pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub geometry: PairGeometry,
    pub maligranda_gap: f64,
    pub dehghan_gap: f64,
    /// The eleven bounds valid in every normed space, in [`Bound::UNIVERSAL`] order.
    pub bounds: Vec<BoundReport>,
    /// Reported separately: it is only guaranteed in inner-product spaces.
    pub dunkl_williams_2: BoundReport,
    /// Present for inner-product norms only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euclidean_identity_defect: Option<f64>,
}

impl PairReport {
    pub fn universal_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }
}

pub fn evaluate_pair(norm: &Norm, x: &Vector, y: &Vector) -> Result<PairReport> {
    let g = pair_geometry(norm, x, y)?;
    let m = maligranda_gap_with(norm, x, y, g.norm_x, g.norm_y);
    let d = dehghan_gap_with(norm, x, y, g.norm_x, g.norm_y);
    let mut bounds = Vec::with_capacity(11);
    bounds.extend(triangle_from(&g, m, d));
    bounds.extend(angular_from(&g));
    bounds.extend(skew_from(&g));
    Ok(PairReport {
        maligranda_gap: m,
        dehghan_gap: d,
        bounds,
        dunkl_williams_2: dunkl_williams_2_from(&g),
        euclidean_identity_defect: norm.is_inner_product().then(|| identity_defect_from(&g)),
        geometry: g,
    })
}
