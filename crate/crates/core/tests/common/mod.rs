#![allow(dead_code)]

use std::path::Path;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// ℓp norm straight from the definition, independent of the library's
/// scaled evaluation.
pub fn oracle_lp(p: f64, v: &[f64]) -> f64 {
    if p.is_infinite() {
        v.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    } else {
        v.iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scaled(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

/// (α, β) computed from the definitions with [`oracle_lp`].
pub fn oracle_alpha_beta(p: f64, x: &[f64], y: &[f64]) -> (f64, f64) {
    let nx = oracle_lp(p, x);
    let ny = oracle_lp(p, y);
    let alpha = oracle_lp(p, &sub(&scaled(x, 1.0 / nx), &scaled(y, 1.0 / ny)));
    let beta = oracle_lp(p, &sub(&scaled(x, 1.0 / ny), &scaled(y, 1.0 / nx)));
    (alpha, beta)
}

/// Brute-force max of α − β over 360 × 360 unit directions in the plane
/// and the given ratios ‖y‖/‖x‖.
pub fn grid_max_alpha_minus_beta(p: f64, ratios: &[f64]) -> f64 {
    let dirs: Vec<[f64; 2]> = (0..360)
        .map(|k| {
            let t = (k as f64).to_radians();
            let d = [t.cos(), t.sin()];
            let n = oracle_lp(p, &d);
            [d[0] / n, d[1] / n]
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    for &r in ratios {
        for u in &dirs {
            for v in &dirs {
                let y = [r * v[0], r * v[1]];
                let (a, b) = oracle_alpha_beta(p, u, &y);
                best = best.max(a - b);
            }
        }
    }
    best
}

/// A seeded random SPD matrix `AAᵀ + I/2`, with its smallest eigenvalue.
pub fn random_spd(n: usize, seed: u64) -> (Vec<Vec<f64>>, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let g = &a * a.transpose() + DMatrix::identity(n, n) * 0.5;
    let min_eig = g.clone().symmetric_eigen().eigenvalues.min();
    let rows = (0..n).map(|i| (0..n).map(|j| g[(i, j)]).collect()).collect();
    (rows, min_eig)
}

pub fn write_matrix(path: &Path, rows: &[Vec<f64>]) {
    let mut text = String::from("# random SPD matrix\n");
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

/// Runs the CLI in-process; returns (stdout, stderr, exit code).
pub fn run_cli(args: &[&str]) -> (String, String, i32) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = normgeom::cli::run(
        std::iter::once("normgeom").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
        code,
    )
}

pub fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("bad report ({e}): {text}"))
}

pub fn coords(v: &serde_json::Value) -> Vec<f64> {
    v.as_array()
        .expect("vector array")
        .iter()
        .map(|c| c.as_f64().unwrap())
        .collect()
}
