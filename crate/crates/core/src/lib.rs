//! Equi-entangled orthonormal bases for a pair of `d`-level systems.
//!
//! A basis is generated from one coefficient vector `a` by shifting the seed
//! state `Σ a_i |i,i⟩` with the cyclic shift operator on both factors. Every
//! basis state then carries the same entanglement, and orthonormality reduces
//! to `a` having zero cyclic autocorrelation. Such vectors are obtained by
//! Fourier synthesis from a vector of free phases.
//!
//! Modules:
//! - [`math`]: complex primitives, phase synthesis, autocorrelation, entropy.
//! - [`families`]: closed-form low-dimensional families and tabulated endpoints.
//! - [`basis`]: explicit basis states, brute-force Gram checks, entropy oracle.
//! - [`search`]: alternating-projection search for maximally entangled phases.

pub mod basis;
pub mod error;
pub mod families;
pub mod math;
pub mod search;

pub use basis::{build_state, gram_check, inner_product, state_entanglement, BasisLabel, GramReport, StateVector};
pub use error::{Error, Result};
pub use families::{
    family_d3_complex, family_d3_real, family_d4_complex, family_d4_real, interpolate, quadratic_phases, table1_phases,
    FamilyId, Table1Entry,
};
pub use math::{
    autocorrelation, dft, entanglement, idft, root_of_unity, synthesize_coefficients, CoefficientVector, Complex,
    EntanglementValue, PhaseVector,
};
pub use search::{
    alternating_projection_search, coefficient_flatness, flatness_residual, verify_coefficients, verify_solution,
    Certificate, SearchConfig, SearchResult,
};
