//! Seeded curvature-range scans: per-radius rows of sampled sectional
//! curvature extrema, holomorphic sectional extrema, and the Ricci lower
//! bound.
//!
//! Each row fixes the base point `z = (r, 0, …, 0)` (rotational invariance
//! makes every |z| = r point equivalent) and draws `planes` tangent planes:
//! a quarter of them (at least one) are *holomorphic* planes `{X, JX}`,
//! which also feed the holomorphic-sectional column through the complex
//! engine; the rest are generic Gaussian 2-planes. Sectional values come
//! from the finite-difference real route, holomorphic values from the
//! analytic complex route — the two columns are independently derived,
//! which is what makes `H ≈ K(X, JX)` a meaningful cross-check in tests.
//!
//! Plane `j` of row `i` draws from RNG stream `i·2³² + j`, so reports are
//! byte-identical for a seed across thread counts.

use crate::error::Result;
use crate::kahler::{curvature_tensor_at, holomorphic_sectional, ricci_at, PointCn};
use crate::potential::RadialPotential;
use crate::realified::{apply_j, real_curvature_at};
use crate::rng::stream_rng;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

/// Sampled curvature ranges at one radius.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureRow {
    pub r: f64,
    #[serde(rename = "K_min")]
    pub k_min: f64,
    #[serde(rename = "K_max")]
    pub k_max: f64,
    #[serde(rename = "H_min")]
    pub h_min: f64,
    #[serde(rename = "H_max")]
    pub h_max: f64,
    pub ricci_lower: f64,
}

/// A full scan: one row per requested radius.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub potential: String,
    pub n: usize,
    pub seed: u64,
    pub rows: Vec<CurvatureRow>,
}

impl CurvatureReport {
    /// True when every sampled sectional curvature was strictly negative.
    pub fn all_negative(&self) -> bool {
        self.rows.iter().all(|row| row.k_max < 0.0)
    }
}

fn gaussian_vec(rng: &mut rand_chacha::ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Scan curvatures of the potential's metric on ℂⁿ at the given radii.
pub fn curvature_range_report(
    p: &RadialPotential,
    n: usize,
    radii: &[f64],
    planes: usize,
    seed: u64,
) -> Result<CurvatureReport> {
    assert!(n >= 1);
    assert!(planes >= 1);
    assert!(!radii.is_empty(), "need at least one radius");
    let rows: Vec<CurvatureRow> = radii
        .par_iter()
        .enumerate()
        .map(|(row_idx, &r)| curvature_row(p, n, r, planes, seed, row_idx as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurvatureReport {
        potential: p.to_string(),
        n,
        seed,
        rows,
    })
}

fn curvature_row(
    p: &RadialPotential,
    n: usize,
    r: f64,
    planes: usize,
    seed: u64,
    row_idx: u64,
) -> Result<CurvatureRow> {
    let dim = 2 * n;
    let mut coords = vec![0.0; dim];
    coords[0] = r;
    let z = PointCn::from_real(&coords);

    let real = real_curvature_at(p, &coords)?;
    let tensor = curvature_tensor_at(p, &z)?;
    let ricci = ricci_at(p, &z)?;

    let n_holo = (planes / 4).max(1).min(planes);
    let results: Vec<(f64, Option<f64>)> = (0..planes)
        .into_par_iter()
        .map(|j| -> Result<(f64, Option<f64>)> {
            let mut rng = stream_rng(seed, (row_idx << 32) | j as u64);
            if j < n_holo {
                // Holomorphic plane {X, JX}; H comes from the complex
                // engine on the vector X encodes.
                let x = gaussian_vec(&mut rng, dim);
                let jx = apply_j(&x);
                let k = real.sectional(&x, &jx)?;
                let v = PointCn::from_real(&x).z;
                let h = holomorphic_sectional(&tensor, &v)?;
                Ok((k, Some(h)))
            } else {
                // Generic plane; redraw on (measure-zero) degeneracy so
                // every requested plane contributes.
                for _ in 0..100 {
                    let x = gaussian_vec(&mut rng, dim);
                    let y = gaussian_vec(&mut rng, dim);
                    match real.sectional(&x, &y) {
                        Ok(k) => return Ok((k, None)),
                        Err(crate::error::Error::DegeneratePlane) => continue,
                        Err(e) => return Err(e),
                    }
                }
                Err(crate::error::Error::DegeneratePlane)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut k_min = f64::INFINITY;
    let mut k_max = f64::NEG_INFINITY;
    let mut h_min = f64::INFINITY;
    let mut h_max = f64::NEG_INFINITY;
    for (k, h) in results {
        k_min = k_min.min(k);
        k_max = k_max.max(k);
        if let Some(h) = h {
            h_min = h_min.min(h);
            h_max = h_max.max(h);
        }
    }
    Ok(CurvatureRow {
        r,
        k_min,
        k_max,
        h_min,
        h_max,
        ricci_lower: ricci.ricci_lower,
    })
}
