//! Complex-vector primitives: roots of unity, the phase-to-coefficient
//! synthesis, cyclic autocorrelation, the unitary DFT pair and the base-`d`
//! entanglement entropy.

use std::f64::consts::TAU;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Tolerance on `Σ|a_k|² = 1` for [`CoefficientVector`].
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Looser tolerance used when raw slices are handed to [`entanglement`].
pub const ENTROPY_NORM_TOL: f64 = 1e-9;

/// `e^{2πi p/d}`.
///
/// Multiples of a quarter turn are returned exactly, so `p ≡ 0 (mod d)` gives
/// `1 + 0i` bit for bit.
pub fn root_of_unity(d: usize, p: i64) -> Result<Complex> {
    if d < 1 {
        return Err(Error::InvalidDimension { got: d, min: 1 });
    }
    let r = p.rem_euclid(d as i64) as usize;
    Ok(root_reduced(d, r))
}

fn root_reduced(d: usize, r: usize) -> Complex {
    if (4 * r).is_multiple_of(d) {
        return match 4 * r / d {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    Complex::from_polar(1.0, TAU * r as f64 / d as f64)
}

/// The `d` powers `ξ^0, …, ξ^{d-1}` of `ξ = e^{2πi/d}`.
pub(crate) fn roots_table(d: usize) -> Vec<Complex> {
    (0..d).map(|r| root_reduced(d, r)).collect()
}

fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Free phases `θ_α`, one per Fourier mode, each stored in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseVector {
    theta: Vec<f64>,
}

impl PhaseVector {
    /// Build from raw angles in radians. Angles are reduced to `[0, 2π)` but
    /// not gauge-fixed; see [`PhaseVector::canonical`].
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        if theta.len() < 2 {
            return Err(Error::InvalidDimension { got: theta.len(), min: 2 });
        }
        if let Some(index) = theta.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { theta: theta.into_iter().map(reduce_angle).collect() })
    }

    /// Build and gauge-fix in one step.
    pub fn canonical_from(theta: Vec<f64>) -> Result<Self> {
        Self::new(theta).map(|p| p.canonical())
    }

    pub fn zeros(d: usize) -> Result<Self> {
        Self::new(vec![0.0; d])
    }

    /// Shift all phases so that `θ_0 = 0`. This only changes the global phase
    /// of the synthesized coefficients.
    pub fn canonical(&self) -> Self {
        let t0 = self.theta[0];
        let theta =
            self.theta.iter().enumerate().map(|(i, &t)| if i == 0 { 0.0 } else { reduce_angle(t - t0) }).collect();
        Self { theta }
    }

    pub fn is_canonical(&self) -> bool {
        self.theta[0] == 0.0
    }

    /// Largest circular distance between the two vectors after gauge fixing.
    pub fn gauge_distance(&self, other: &Self) -> Result<f64> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch { left: self.d(), right: other.d() });
        }
        let (a, b) = (self.canonical(), other.canonical());
        Ok(a.theta
            .iter()
            .zip(&b.theta)
            .map(|(x, y)| {
                let diff = reduce_angle(x - y);
                diff.min(TAU - diff)
            })
            .fold(0.0, f64::max))
    }

    pub fn d(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.theta
    }
}

/// Amplitudes `a_k` of the seed state `Σ a_k |k,k⟩`; unit norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    a: Vec<Complex>,
}

impl CoefficientVector {
    pub fn new(a: Vec<Complex>) -> Result<Self> {
        check_components(&a)?;
        let deviation = (norm_sqr(&a) - 1.0).abs();
        if deviation > UNIT_NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { a })
    }

    /// Rescale arbitrary nonzero input to unit norm.
    pub fn normalized(a: Vec<Complex>) -> Result<Self> {
        check_components(&a)?;
        let norm = norm_sqr(&a).sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        Ok(Self { a: a.into_iter().map(|z| z / norm).collect() })
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis_vector(d: usize, k: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { got: d, min: 2 });
        }
        if k >= d {
            return Err(Error::ShiftOutOfRange { shift: k, d });
        }
        let mut a = vec![Complex::new(0.0, 0.0); d];
        a[k] = Complex::new(1.0, 0.0);
        Ok(Self { a })
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.a
    }

    /// Squared moduli, which are also the Schmidt weights of every basis state.
    pub fn weights(&self) -> Vec<f64> {
        self.a.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.a
    }
}

impl Deref for CoefficientVector {
    type Target = [Complex];

    fn deref(&self) -> &[Complex] {
        &self.a
    }
}

fn check_components(a: &[Complex]) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::InvalidDimension { got: a.len(), min: 2 });
    }
    match a.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn norm_sqr(a: &[Complex]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Base-`d` von Neumann entropy of a pure bipartite state, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct EntanglementValue(f64);

impl EntanglementValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<EntanglementValue> for f64 {
    fn from(e: EntanglementValue) -> f64 {
        e.0
    }
}

/// `-Σ w log_d w` with `0 log 0 = 0`, clamped into `[0, 1]`.
pub(crate) fn entropy_base_d(weights: impl IntoIterator<Item = f64>, d: usize) -> EntanglementValue {
    let ln_d = (d as f64).ln();
    let h: f64 = weights.into_iter().filter(|&w| w > 0.0).map(|w| -w * w.ln()).sum::<f64>() / ln_d;
    debug_assert!(h > -1e-12 && h < 1.0 + 1e-12, "entropy {h} out of range");
    EntanglementValue(h.clamp(0.0, 1.0))
}

/// Synthesize `a_k = (1/d) Σ_α e^{iθ_α} ξ^{kα}`.
///
/// The result has unit norm and zero cyclic autocorrelation for every input.
pub fn synthesize_coefficients(phases: &PhaseVector) -> CoefficientVector {
    let d = phases.d();
    let c: Vec<Complex> = phases.theta().iter().map(|&t| Complex::from_polar(1.0 / (d as f64).sqrt(), t)).collect();
    CoefficientVector { a: dft(&c) }
}

/// `Σ_i conj(a_i) a_{(i+m) mod d}`.
pub fn autocorrelation(a: &[Complex], m: usize) -> Result<Complex> {
    let d = a.len();
    if m >= d {
        return Err(Error::ShiftOutOfRange { shift: m, d });
    }
    Ok((0..d).map(|i| a[i].conj() * a[(i + m) % d]).sum())
}

/// Entanglement of every basis state generated by `a`:
/// `-Σ |a_i|² log_d |a_i|²`.
pub fn entanglement(a: &[Complex]) -> Result<EntanglementValue> {
    check_components(a)?;
    let deviation = (norm_sqr(a) - 1.0).abs();
    if deviation > ENTROPY_NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    Ok(entropy_base_d(a.iter().map(|z| z.norm_sqr()), a.len()))
}

/// Unitary DFT, `w_j = (1/√d) Σ_α v_α ξ^{jα}` with `ξ = e^{+2πi/d}`.
///
/// Direct `O(d²)` evaluation; the dimensions of interest are small.
pub fn dft(v: &[Complex]) -> Vec<Complex> {
    transform(v, false)
}

/// Inverse of [`dft`] (conjugate kernel).
pub fn idft(v: &[Complex]) -> Vec<Complex> {
    transform(v, true)
}

fn transform(v: &[Complex], inverse: bool) -> Vec<Complex> {
    let d = v.len();
    if d == 0 {
        return Vec::new();
    }
    let roots = roots_table(d);
    let scale = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|j| {
            let s: Complex = v
                .iter()
                .enumerate()
                .map(|(alpha, &x)| {
                    let r = roots[(j * alpha) % d];
                    x * if inverse { r.conj() } else { r }
                })
                .sum();
            s * scale
        })
        .collect()
}

/// Left-hand side of the linear system for the Fourier weights `|c_α|²`:
/// row `j` is `Σ_α ξ^{jα} w_α`. Any valid coefficient vector forces the
/// right-hand side `(1, 0, …, 0)`.
pub fn fourier_weight_system(weights: &[f64]) -> Vec<Complex> {
    let d = weights.len();
    let roots = roots_table(d.max(1));
    (0..d).map(|j| weights.iter().enumerate().map(|(alpha, &w)| roots[(j * alpha) % d] * w).sum()).collect()
}
