//! Closed-form coefficient families for `d = 3` and `d = 4`, the tabulated
//! maximally entangled endpoint phases, the linear interpolation schedule and
//! the quadratic-phase candidate for arbitrary `d`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{CoefficientVector, Complex, PhaseVector};
use crate::search::flatness_residual;

/// Flatness a tabulated or quadratic phase vector must reach.
pub const FLATNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    D3Real,
    D3Complex,
    D4Real,
    D4Complex,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [Self::D3Real, Self::D3Complex, Self::D4Real, Self::D4Complex];

    pub fn dimension(self) -> usize {
        match self {
            Self::D3Real | Self::D3Complex => 3,
            Self::D4Real | Self::D4Complex => 4,
        }
    }

    /// Coefficients at parameter `param` (radians).
    pub fn coefficients(self, param: f64) -> CoefficientVector {
        match self {
            Self::D3Real => family_d3_real(param),
            Self::D3Complex => family_d3_complex(param),
            Self::D4Real => family_d4_real(param),
            Self::D4Complex => family_d4_complex(param),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::D3Real => "d3-real",
            Self::D3Complex => "d3-complex",
            Self::D4Real => "d4-real",
            Self::D4Complex => "d4-complex",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| format!("unknown family '{s}' (expected d3-real, d3-complex, d4-real or d4-complex)"))
    }
}

fn real(values: &[f64]) -> CoefficientVector {
    complex(values.iter().map(|&x| Complex::new(x, 0.0)).collect())
}

fn complex(a: Vec<Complex>) -> CoefficientVector {
    // every family is normalized analytically; renormalizing only absorbs rounding
    CoefficientVector::normalized(a).expect("family coefficients are finite and nonzero")
}

/// Real qutrit family: `a = ((s+c)c, (s+c)s, -sc) / (1 + sc)` with
/// `s = sin φ`, `c = cos φ`.
pub fn family_d3_real(phi: f64) -> CoefficientVector {
    let (s, c) = phi.sin_cos();
    let den = 1.0 + s * c;
    real(&[(s + c) * c / den, (s + c) * s / den, -(s * c) / den])
}

/// Complex qutrit family: `N (2cos φ, -e^{iφ}, 2cos φ)`,
/// `N = 1/√(1 + 8cos²φ)`.
pub fn family_d3_complex(phi: f64) -> CoefficientVector {
    let c = phi.cos();
    let n = 1.0 / (1.0 + 8.0 * c * c).sqrt();
    let edge = Complex::new(2.0 * c * n, 0.0);
    complex(vec![edge, -Complex::from_polar(n, phi), edge])
}

/// Real ququart family: `(cos θ, 1 + sin θ, -cos θ, 1 - sin θ) / 2`.
pub fn family_d4_real(theta: f64) -> CoefficientVector {
    let (s, c) = theta.sin_cos();
    real(&[c / 2.0, (1.0 + s) / 2.0, -c / 2.0, (1.0 - s) / 2.0])
}

/// Complex ququart family: `a_0 = (1 + e^{iθ}cos θ)/2`,
/// `a_1 = i a_2 = -a_3 = e^{iθ} sin θ / 2`.
pub fn family_d4_complex(theta: f64) -> CoefficientVector {
    let (s, c) = theta.sin_cos();
    let e = Complex::from_polar(1.0, theta);
    let a0 = (Complex::new(1.0, 0.0) + e * c) / 2.0;
    let a1 = e * s / 2.0;
    complex(vec![a0, a1, a1 * Complex::new(0.0, -1.0), -a1])
}

/// Entanglement of [`family_d4_complex`] from its Schmidt weights
/// `λ_0 = (1 + 3cos²θ)/4` (once) and `λ_1 = sin²θ/4` (three times).
pub fn d4_complex_entanglement_closed_form(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let l0 = (1.0 + 3.0 * c * c) / 4.0;
    let l1 = s * s / 4.0;
    let term = |l: f64| if l > 0.0 { -l * l.ln() / 4f64.ln() } else { 0.0 };
    term(l0) + 3.0 * term(l1)
}

/// One row of the tabulated maximally entangled endpoint phases.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Entry {
    pub d: usize,
    pub variant: usize,
    pub theta0: PhaseVector,
}

/// All tabulated `(d, variant)` keys.
pub const TABLE1_KEYS: [(usize, usize); 5] = [(2, 0), (3, 0), (4, 0), (4, 1), (5, 0)];

fn table1_raw(d: usize, variant: usize) -> Option<Vec<f64>> {
    Some(match (d, variant) {
        (2, 0) => vec![0.0, PI / 2.0],
        (3, 0) => vec![0.0, 0.0, 2.0 * PI / 3.0],
        (4, 0) => vec![0.0, 0.0, 0.0, PI],
        (4, 1) => vec![0.0, PI, PI, PI],
        (5, 0) => vec![0.0, 2.0 * PI / 5.0, 0.0, 4.0 * PI / 5.0, 4.0 * PI / 5.0],
        _ => return None,
    })
}

/// Tabulated endpoint phases `θ⁰` for `(d, variant)`.
///
/// Each row is checked for flat synthesized moduli before it is returned.
pub fn table1_phases(d: usize, variant: usize) -> Result<Table1Entry> {
    let raw = table1_raw(d, variant).ok_or(Error::UnknownTableRow { d, variant })?;
    let theta0 = PhaseVector::new(raw)?;
    let residual = flatness_residual(&theta0);
    assert!(residual < FLATNESS_TOL, "tabulated row ({d}, {variant}) is not flat: {residual:e}");
    Ok(Table1Entry { d, variant, theta0 })
}

/// Every tabulated row, in key order.
pub fn table1_rows() -> Vec<Table1Entry> {
    TABLE1_KEYS.iter().map(|&(d, v)| table1_phases(d, v).expect("known key")).collect()
}

/// `θ_α = t θ⁰_α`, scaled before reduction to `[0, 2π)`.
pub fn interpolate(theta0: &PhaseVector, t: f64) -> Result<PhaseVector> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange { name: "t", value: t, lo: 0.0, hi: 1.0 });
    }
    PhaseVector::new(theta0.theta().iter().map(|&x| t * x).collect())
}

/// Quadratic (chirp) phases: `π α² / d` for even `d`, `π α(α+1) / d` for
/// odd `d`. Flatness is not promised here; check it with
/// [`flatness_residual`].
pub fn quadratic_phases(d: usize) -> Result<PhaseVector> {
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    let df = d as f64;
    let theta = (0..d)
        .map(|alpha| {
            // integer numerators keep the reduction exact for large alpha
            let num = if d.is_multiple_of(2) { alpha * alpha } else { alpha * (alpha + 1) };
            PI * (num % (2 * d)) as f64 / df
        })
        .collect();
    PhaseVector::new(theta)
}
