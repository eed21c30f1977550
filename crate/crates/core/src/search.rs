//! Search for phase vectors whose synthesized coefficients all have modulus
//! `1/√d`, i.e. maximally entangled bases.
//!
//! The search alternates between two constraint sets linked by the unitary
//! DFT: unit-modulus Fourier weights `c_α = e^{iθ_α}/√d` on one side and
//! flat coefficients `|a_k| = 1/√d` on the other. Each restart draws its
//! starting phases from a ChaCha stream keyed by `(rng_seed, restart_index)`,
//! so results do not depend on thread scheduling or platform.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{gram_check, GramReport};
use crate::error::{Error, Result};
use crate::math::{entanglement, idft, synthesize_coefficients, Complex, EntanglementValue, PhaseVector};

/// Thresholds for a maximally entangled basis certificate.
pub const CERT_RESIDUAL_TOL: f64 = 1e-9;
pub const CERT_ENTANGLEMENT_TOL: f64 = 1e-9;

/// Moduli below this are treated as zero during projection.
const ZERO_MODULUS: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub d: usize,
    pub max_iters: usize,
    pub residual_tol: f64,
    pub restarts: usize,
    pub rng_seed: u64,
}

impl SearchConfig {
    /// Defaults: 10 000 iterations, tolerance 1e-10, 32 restarts, seed 0.
    pub fn new(d: usize) -> Self {
        Self { d, max_iters: 10_000, residual_tol: 1e-10, restarts: 32, rng_seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidDimension { got: self.d, min: 2 });
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive"));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive"));
        }
        if !(self.residual_tol > 0.0 && self.residual_tol.is_finite()) {
            return Err(Error::InvalidConfig("residual_tol must be positive and finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub theta: PhaseVector,
    /// `max_k ||a_k| - 1/√d|` for the returned phases.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restart_index: usize,
}

/// `max_k ||a_k| - 1/√d|` for the coefficients synthesized from `theta`.
pub fn flatness_residual(theta: &PhaseVector) -> f64 {
    coefficient_flatness(&synthesize_coefficients(theta))
}

/// `max_k ||a_k| - 1/√d|` for an arbitrary coefficient vector.
pub fn coefficient_flatness(a: &[Complex]) -> f64 {
    let target = 1.0 / (a.len() as f64).sqrt();
    a.iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max)
}

/// Replace every modulus by `scale`, keeping the phase. Vanishing entries
/// get phase zero.
fn project_modulus(v: &[Complex], scale: f64) -> Vec<Complex> {
    v.iter()
        .map(|&z| {
            let r = z.norm();
            if r < ZERO_MODULUS {
                Complex::new(scale, 0.0)
            } else {
                z * (scale / r)
            }
        })
        .collect()
}

/// Run the alternating projection from a given starting point.
///
/// Returns the best iterate seen. `iterations` counts the projection rounds
/// performed; a flat starting point returns after zero rounds.
pub fn refine_phases(start: &PhaseVector, max_iters: usize, residual_tol: f64) -> SearchResult {
    let d = start.d();
    let scale = 1.0 / (d as f64).sqrt();
    let mut theta = start.canonical();
    let mut best = (flatness_residual(&theta), theta.clone(), 0usize);
    let mut iterations = 0;

    while best.0 >= residual_tol && iterations < max_iters {
        let a = synthesize_coefficients(&theta);
        let b = project_modulus(&a, scale);
        let c = project_modulus(&idft(&b), scale);
        theta = PhaseVector::canonical_from(c.iter().map(|z| z.arg()).collect())
            .expect("projected phases are finite and d >= 2");
        iterations += 1;

        let residual = flatness_residual(&theta);
        if residual < best.0 {
            best = (residual, theta.clone(), iterations);
        }
    }

    let (residual, theta, _) = best;
    SearchResult { theta, residual, iterations, converged: residual < residual_tol, restart_index: 0 }
}

/// Uniform phases on `[0, 2π)` with `θ_0 = 0`, drawn from stream
/// `restart_index` of the generator seeded by `seed`.
pub fn random_start(d: usize, seed: u64, restart_index: usize) -> PhaseVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart_index as u64);
    let theta = (0..d).map(|alpha| if alpha == 0 { 0.0 } else { rng.random::<f64>() * TAU }).collect();
    PhaseVector::new(theta).expect("d >= 2 and finite phases")
}

/// Multi-restart alternating projection search.
///
/// Restarts run in parallel; the result with the lowest residual is returned,
/// ties going to the lowest restart index. Identical configurations give
/// identical results.
pub fn alternating_projection_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let results: Vec<SearchResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let start = random_start(cfg.d, cfg.rng_seed, r);
            SearchResult { restart_index: r, ..refine_phases(&start, cfg.max_iters, cfg.residual_tol) }
        })
        .collect();
    Ok(results
        .into_iter()
        .reduce(|best, r| if r.residual < best.residual { r } else { best })
        .expect("at least one restart"))
}

/// Flatness, orthonormality and entanglement of the basis generated by
/// `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub residual: f64,
    pub gram: GramReport,
    pub entanglement: EntanglementValue,
}

impl Certificate {
    pub fn gram_pass(&self) -> bool {
        self.gram.passes()
    }

    /// Maximally entangled orthonormal basis at the default thresholds.
    pub fn maximal(&self) -> bool {
        self.maximal_at(CERT_RESIDUAL_TOL)
    }

    /// Same as [`Certificate::maximal`] with a custom flatness threshold.
    pub fn maximal_at(&self, residual_tol: f64) -> bool {
        self.residual < residual_tol
            && self.gram_pass()
            && (self.entanglement.value() - 1.0).abs() < CERT_ENTANGLEMENT_TOL
    }
}

pub fn verify_solution(theta: &PhaseVector) -> Certificate {
    verify_coefficients(&synthesize_coefficients(theta)).expect("synthesized coefficients have unit norm")
}

/// Certificate for coefficients that did not come from phase synthesis
/// (closed-form families, user input).
pub fn verify_coefficients(a: &[Complex]) -> Result<Certificate> {
    Ok(Certificate { residual: coefficient_flatness(a), gram: gram_check(a)?, entanglement: entanglement(a)? })
}

/// Fourier-side phases `θ_α` that reproduce `a` up to a global phase, when
/// `a` lies in the synthesized family.
pub fn phases_of(a: &[Complex]) -> Result<PhaseVector> {
    PhaseVector::canonical_from(idft(a).iter().map(|z| z.arg()).collect())
}
