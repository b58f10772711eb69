use std::fmt;

use nalgebra::DMatrix;

use super::Vector;
use crate::error::{Error, Result};

/// Relative tolerance for the symmetry check on Gram matrices.
pub const SYMMETRY_RTOL: f64 = 1e-12;

/// Description of a norm on ℝⁿ.
///
/// `p = f64::INFINITY` stands for the max norm. Weighted norms put the
/// weight inside the sum, `(Σ wᵢ|xᵢ|ᵖ)^(1/p)`, and use `max wᵢ|xᵢ|` for
/// `p = ∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum NormSpec {
    Lp { p: f64 },
    WeightedLp { p: f64, weights: Vec<f64> },
    /// `‖x‖ = sqrt(xᵀ G x)` for a symmetric positive definite `G` (rows).
    Gram { matrix: Vec<Vec<f64>> },
}

impl NormSpec {
    pub fn lp(p: f64) -> Self {
        Self::Lp { p }
    }

    pub fn weighted(p: f64, weights: Vec<f64>) -> Self {
        Self::WeightedLp { p, weights }
    }

    pub fn gram(matrix: Vec<Vec<f64>>) -> Self {
        Self::Gram { matrix }
    }

    pub fn gram_identity(n: usize) -> Self {
        Self::Gram {
            matrix: (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn gram_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::Gram {
            matrix: (0..n)
                .map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0.0 }).collect())
                .collect(),
        }
    }

    /// Whether the norm comes from an inner product: every Gram norm, and
    /// the (weighted) ℓ² norm.
    pub fn is_inner_product(&self) -> bool {
        match self {
            Self::Lp { p } | Self::WeightedLp { p, .. } => *p == 2.0,
            Self::Gram { .. } => true,
        }
    }

    /// The fixed dimension this spec imposes, if any.
    pub fn intrinsic_dim(&self) -> Option<usize> {
        match self {
            Self::Lp { .. } => None,
            Self::WeightedLp { weights, .. } => Some(weights.len()),
            Self::Gram { matrix } => Some(matrix.len()),
        }
    }

    /// Checks every descriptor invariant and builds an evaluator for `dim`.
    pub fn build(&self, dim: usize) -> Result<Norm> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        let kind = match self {
            Self::Lp { p } => {
                check_p(*p)?;
                Kind::Lp { p: *p }
            }
            Self::WeightedLp { p, weights } => {
                check_p(*p)?;
                if weights.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: weights.len(),
                    });
                }
                if let Some((index, &value)) =
                    weights.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite()))
                {
                    return Err(Error::NonPositiveWeight { index, value });
                }
                Kind::Weighted {
                    p: *p,
                    weights: weights.clone(),
                }
            }
            Self::Gram { matrix } => Kind::Gram {
                factor: gram_factor(matrix, dim)?,
            },
        };
        Ok(Norm {
            spec: self.clone(),
            dim,
            kind,
        })
    }
}

impl fmt::Display for NormSpec {
    /// Canonical text form. Gram matrices are written inline as
    /// `gram:[a,b;c,d]`, which is not part of the CLI grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lp { p } => write!(f, "lp:{}", fmt_p(*p)),
            Self::WeightedLp { p, weights } => {
                write!(f, "wlp:{}:", fmt_p(*p))?;
                write_list(f, weights)
            }
            Self::Gram { matrix } => {
                f.write_str("gram:[")?;
                for (i, row) in matrix.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write_list(f, row)?;
                }
                f.write_str("]")
            }
        }
    }
}

fn fmt_p(p: f64) -> String {
    if p == f64::INFINITY {
        "inf".to_string()
    } else {
        p.to_string()
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    // NaN fails the comparison as well.
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidP(p))
    }
}

/// Validates a Gram matrix and returns the row-major upper factor `R` with `G = RᵀR`.
fn gram_factor(matrix: &[Vec<f64>], dim: usize) -> Result<Vec<f64>> {
    if matrix.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: matrix.len(),
        });
    }
    if let Some(row) = matrix.iter().find(|row| row.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: row.len(),
        });
    }
    if matrix.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::NotPositiveDefinite);
    }
    let scale = matrix.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..dim {
        for j in (i + 1)..dim {
            if (matrix[i][j] - matrix[j][i]).abs() > SYMMETRY_RTOL * scale {
                return Err(Error::NonSymmetricMatrix { row: i, col: j });
            }
        }
    }
    let g = DMatrix::from_fn(dim, dim, |i, j| 0.5 * (matrix[i][j] + matrix[j][i]));
    let chol = g.cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    if l.diagonal().iter().any(|d| !(*d > 0.0)) {
        return Err(Error::NotPositiveDefinite);
    }
    // R = Lᵀ, stored row-major.
    let mut factor = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            factor[i * dim + j] = l[(j, i)];
        }
    }
    Ok(factor)
}

#[derive(Debug, Clone)]
enum Kind {
    Lp { p: f64 },
    Weighted { p: f64, weights: Vec<f64> },
    Gram { factor: Vec<f64> },
}

/// A validated norm on ℝⁿ for a fixed dimension.
#[derive(Debug, Clone)]
pub struct Norm {
    spec: NormSpec,
    dim: usize,
    kind: Kind,
}

impl Norm {
    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_inner_product(&self) -> bool {
        self.spec.is_inner_product()
    }

    pub fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    /// ‖x‖.
    pub fn eval(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.eval_coords(x.coords()))
    }

    pub(crate) fn eval_coords(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            Kind::Lp { p } => lp(*p, x.iter().map(|v| (1.0, v.abs()))),
            Kind::Weighted { p, weights } => {
                lp(*p, weights.iter().zip(x).map(|(w, v)| (*w, v.abs())))
            }
            Kind::Gram { factor } => {
                let n = self.dim;
                let rx = (0..n).map(|i| {
                    let row = &factor[i * n..(i + 1) * n];
                    let dot: f64 = row[i..].iter().zip(&x[i..]).map(|(r, v)| r * v).sum();
                    (1.0, dot.abs())
                });
                lp(2.0, rx)
            }
        }
    }
}

/// `(Σ wᵢ aᵢᵖ)^(1/p)` over `(wᵢ, aᵢ)` with `aᵢ ≥ 0`, or `max wᵢ aᵢ` for `p = ∞`.
/// Finite `p` other than 1 factors out `max aᵢ` to avoid overflow.
fn lp(p: f64, terms: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    if p == f64::INFINITY {
        return terms.fold(0.0, |m, (w, a)| m.max(w * a));
    }
    if p == 1.0 {
        return terms.map(|(w, a)| w * a).sum();
    }
    let m = terms.clone().fold(0.0f64, |m, (_, a)| m.max(a));
    if m == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        let s: f64 = terms
            .map(|(w, a)| {
                let t = a / m;
                w * t * t
            })
            .sum();
        m * s.sqrt()
    } else {
        let s: f64 = terms.map(|(w, a)| w * (a / m).powf(p)).sum();
        m * s.powf(p.recip())
    }
}

/// Validates `spec` for `dim` without keeping the evaluator.
pub fn validate_spec(spec: &NormSpec, dim: usize) -> Result<()> {
    spec.build(dim).map(|_| ())
}

/// Evaluates ‖x‖ under `spec`, validating the spec against `x`'s dimension.
pub fn norm(spec: &NormSpec, x: &Vector) -> Result<f64> {
    spec.build(x.dim())?.eval(x)
}
