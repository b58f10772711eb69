use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{Norm, Vector};
use crate::error::{Error, Result};

const MAX_REJECTIONS: usize = 1000;

/// Root seed for every random stream in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// The root stream.
    pub fn rng(self) -> ChaCha8Rng {
        self.child(0)
    }

    /// An independent stream for task `index`, so parallel tasks draw the
    /// same numbers no matter how they are scheduled.
    pub fn child(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        Self(seed)
    }
}

/// Closed range of target norms for sampled vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusRange {
    pub lo: f64,
    pub hi: f64,
}

impl RadiusRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "radius range [{lo}, {hi}] must satisfy 0 < lo <= hi < inf"
            )));
        }
        Ok(Self { lo, hi })
    }
}

impl Default for RadiusRange {
    fn default() -> Self {
        Self { lo: 0.25, hi: 4.0 }
    }
}

/// Draws a nonzero vector whose norm is uniform in `radius`.
///
/// Direction comes from standard Gaussian coordinates; the vector is then
/// rescaled to the drawn radius.
pub fn sample_vector<R: Rng + ?Sized>(norm: &Norm, rng: &mut R, radius: RadiusRange) -> Result<Vector> {
    let dim = norm.dim();
    for _ in 0..MAX_REJECTIONS {
        let coords: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm.eval_coords(&coords);
        if !(n > 0.0) {
            continue;
        }
        let target = if radius.lo == radius.hi {
            radius.lo
        } else {
            rng.random_range(radius.lo..=radius.hi)
        };
        let s = target / n;
        return Ok(Vector::from_raw(coords.into_iter().map(|c| c * s).collect()));
    }
    Err(Error::Internal(format!(
        "no nonzero sample after {MAX_REJECTIONS} draws"
    )))
}
