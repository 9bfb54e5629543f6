//! Numerical laboratory for block Toeplitz and block circulant matrices built
//! from matrix-valued symbols on the unit circle.
//!
//! The crate constructs `T_n(φ)` and `C_n(φ)` from a [`Symbol`] (a matrix-valued
//! function `φ : 𝕋 → ℂ^{N×N}` stored through its Fourier coefficients), evaluates
//! Szegő-Widom determinant asymptotics `det T_n(φ) ~ G(φ)^n E(φ)` together with
//! the modified asymptotics that applies when `E(φ) = 0`, computes topological
//! indices (Pfaffian ℤ₂ index, winding indices for block anti-diagonal symbols)
//! that predict zero-mode pairs, and measures the zero modes themselves.
//!
//! Everything is double precision and dense; the intended scale is matrices of a
//! few thousand rows at most. All operations are pure functions of immutable
//! inputs and are safe to call concurrently.

pub mod asymptotics;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod matrices;
pub mod report;
pub mod signed_log;
pub mod symbol;
pub mod topology;
pub mod wiener_hopf;
pub mod zero_modes;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
pub use signed_log::SignedLogValue;
pub use symbol::Symbol;

/// Row-count guard for dense matrix builds (`n·N` rows). Overridable through
/// the `SZEGO_LAB_SIZE_CAP` environment variable.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Effective dense-size cap: `SZEGO_LAB_SIZE_CAP` if set and parseable,
/// otherwise [`DEFAULT_SIZE_CAP`].
pub fn size_cap() -> usize {
    std::env::var("SZEGO_LAB_SIZE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}
