//! Explicit basis states `|ψ_mn⟩ = Σ_i a_i |i+m, i+m+n⟩`, the brute-force
//! orthonormality check and an entropy oracle working on full state vectors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{entropy_base_d, norm_sqr, Complex, EntanglementValue, ENTROPY_NORM_TOL, UNIT_NORM_TOL};

/// Tolerance for every entry of the Gram matrix.
pub const GRAM_TOL: f64 = 1e-12;

/// Reduced-state eigenvalues in `[-NEG_EIGEN_TOL, 0)` are treated as zero.
pub const NEG_EIGEN_TOL: f64 = 1e-12;

/// Index `(m, n)` of one of the `d²` basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub m: usize,
    pub n: usize,
}

impl BasisLabel {
    pub fn new(m: usize, n: usize, d: usize) -> Result<Self> {
        if m >= d || n >= d {
            return Err(Error::LabelOutOfRange { m, n, d });
        }
        Ok(Self { m, n })
    }

    /// All labels in row-major `(m, n)` order.
    pub fn all(d: usize) -> impl Iterator<Item = BasisLabel> {
        (0..d).flat_map(move |m| (0..d).map(move |n| BasisLabel { m, n }))
    }
}

/// Pure state of two `d`-level systems; `amp(j, k)` is the amplitude of
/// `|j, k⟩` with `j` on the first factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    d: usize,
    amp: Vec<Complex>,
}

impl StateVector {
    /// `amp` is row-major, `d × d`.
    pub fn new(d: usize, amp: Vec<Complex>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { got: d, min: 2 });
        }
        if amp.len() != d * d {
            return Err(Error::LengthMismatch { expected: d * d, got: amp.len() });
        }
        if let Some(index) = amp.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let deviation = (norm_sqr(&amp) - 1.0).abs();
        if deviation > UNIT_NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { d, amp })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amp(&self, j: usize, k: usize) -> Complex {
        self.amp[j * self.d + k]
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amp
    }

    /// Nonzero entries as `(j, k, amplitude)`, row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, Complex)> + '_ {
        self.amp
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != Complex::new(0.0, 0.0))
            .map(move |(idx, &z)| (idx / self.d, idx % self.d, z))
    }
}

/// `|ψ_mn⟩ = (S^m ⊗ S^{m+n}) |ψ_00⟩`, indices taken mod `d`.
pub fn build_state(a: &[Complex], label: BasisLabel) -> Result<StateVector> {
    let d = a.len();
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    let label = BasisLabel::new(label.m, label.n, d)?;
    Ok(place(a, label))
}

fn place(a: &[Complex], BasisLabel { m, n }: BasisLabel) -> StateVector {
    let d = a.len();
    let mut amp = vec![Complex::new(0.0, 0.0); d * d];
    for (i, &ai) in a.iter().enumerate() {
        let j = (i + m) % d;
        let k = (i + m + n) % d;
        amp[j * d + k] = ai;
    }
    StateVector { d, amp }
}

/// `⟨x|y⟩`, conjugate-linear in `x`.
pub fn inner_product(x: &StateVector, y: &StateVector) -> Result<Complex> {
    if x.d != y.d {
        return Err(Error::DimensionMismatch { left: x.d, right: y.d });
    }
    Ok(x.amp.iter().zip(&y.amp).map(|(p, q)| p.conj() * q).sum())
}

/// Summary of the `d² × d²` Gram matrix of the basis generated by `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub d: usize,
    pub max_offdiag: f64,
    pub max_diag_dev: f64,
    /// Entry with the largest deviation from the identity.
    pub worst_pair: (BasisLabel, BasisLabel),
}

impl GramReport {
    pub fn passes(&self) -> bool {
        self.max_offdiag < GRAM_TOL && self.max_diag_dev < GRAM_TOL
    }
}

#[derive(Clone, Copy)]
struct RowMax {
    offdiag: f64,
    diag: f64,
    worst: f64,
    pair: (BasisLabel, BasisLabel),
}

/// Brute-force orthonormality check over all pairs of basis states.
///
/// Deliberately avoids the autocorrelation shortcut: every state is built
/// explicitly and every inner product evaluated.
pub fn gram_check(a: &[Complex]) -> Result<GramReport> {
    let d = a.len();
    if d < 2 {
        return Err(Error::InvalidDimension { got: d, min: 2 });
    }
    let labels: Vec<BasisLabel> = BasisLabel::all(d).collect();
    let states: Vec<StateVector> = labels.iter().map(|&l| place(a, l)).collect();

    let rows: Vec<RowMax> = (0..states.len())
        .into_par_iter()
        .map(|p| {
            let mut acc = RowMax { offdiag: 0.0, diag: 0.0, worst: -1.0, pair: (labels[p], labels[p]) };
            for q in 0..states.len() {
                let g = inner_product(&states[p], &states[q]).expect("same dimension");
                let dev = if p == q {
                    let dev = (g - 1.0).norm();
                    acc.diag = acc.diag.max(dev);
                    dev
                } else {
                    let dev = g.norm();
                    acc.offdiag = acc.offdiag.max(dev);
                    dev
                };
                if dev > acc.worst {
                    acc.worst = dev;
                    acc.pair = (labels[p], labels[q]);
                }
            }
            acc
        })
        .collect();

    // sequential merge keeps the reported pair independent of scheduling
    let first = rows[0];
    let merged = rows[1..].iter().fold(first, |mut acc, r| {
        acc.offdiag = acc.offdiag.max(r.offdiag);
        acc.diag = acc.diag.max(r.diag);
        if r.worst > acc.worst {
            acc.worst = r.worst;
            acc.pair = r.pair;
        }
        acc
    });
    Ok(GramReport { d, max_offdiag: merged.offdiag, max_diag_dev: merged.diag, worst_pair: merged.pair })
}

/// Entanglement of an arbitrary pure state from the spectrum of its reduced
/// density matrix `ρ_A = M M†`.
pub fn state_entanglement(s: &StateVector) -> Result<EntanglementValue> {
    let deviation = (norm_sqr(&s.amp) - 1.0).abs();
    if deviation > ENTROPY_NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let d = s.d;
    let mut rho = vec![Complex::new(0.0, 0.0); d * d];
    for j in 0..d {
        for jp in 0..d {
            rho[j * d + jp] = (0..d).map(|k| s.amp(j, k) * s.amp(jp, k).conj()).sum();
        }
    }
    let mut weights = hermitian_eigenvalues(&rho, d);
    for w in &mut weights {
        if *w < 0.0 {
            if *w < -NEG_EIGEN_TOL {
                return Err(Error::NegativeEigenvalue { value: *w });
            }
            *w = 0.0;
        }
    }
    Ok(entropy_base_d(weights, d))
}

/// Eigenvalues of a Hermitian `n × n` matrix (row-major), ascending.
///
/// `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
/// spectrum is that of `H` with every eigenvalue doubled, and diagonalized by
/// cyclic Jacobi rotations.
pub(crate) fn hermitian_eigenvalues(h: &[Complex], n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            s[i * m + j] = z.re;
            s[(i + n) * m + (j + n)] = z.re;
            s[i * m + (j + n)] = -z.im;
            s[(i + n) * m + j] = z.im;
        }
    }
    let mut eig = jacobi_eigenvalues(s, m);
    eig.sort_by(f64::total_cmp);
    eig.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let total: f64 = a.iter().map(|x| x * x).sum();
    let threshold = f64::EPSILON * f64::EPSILON * total.max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}
