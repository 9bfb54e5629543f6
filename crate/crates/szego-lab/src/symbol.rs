//! Matrix-valued symbols on the unit circle.
//!
//! # Fourier convention
//!
//! The convention is fixed once for the whole crate and every downstream sign
//! (winding numbers in particular) depends on it:
//!
//! ```text
//!   φ_k = (1/2π) ∫₀^{2π} φ(e^{iθ}) e^{+ikθ} dθ      ⟺      φ(e^{iθ}) = Σ_k φ_k e^{-ikθ}
//! ```
//!
//! Equivalently `φ_k` is the coefficient of `z^{-k}` in the Laurent expansion
//! of `φ(z)` on the circle. Under this convention block `(i, j)` of the block
//! Toeplitz matrix `T_n(φ)` is exactly `φ_{i-j}`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Grid size at which adaptive sampling starts.
pub const SAMPLE_GRID_START: usize = 256;
/// Largest FFT grid tried before giving up on a rough symbol.
pub const SAMPLE_GRID_MAX: usize = 1 << 18;

/// Max-norm of a matrix (largest entry modulus).
pub fn mat_max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A matrix-valued symbol stored as its Fourier coefficients.
///
/// Invariants: every coefficient is `N×N`, the index 0 slot always exists
/// (possibly as the zero matrix) and `band = (k_min, k_max)` brackets the
/// stored indices with `k_min ≤ 0 ≤ k_max`. `tail_bound` is zero for symbols
/// entered coefficient-by-coefficient and records the largest truncated
/// coefficient norm for symbols recovered from grid samples.
#[derive(Debug, Clone)]
pub struct Symbol {
    block_size: usize,
    coeffs: BTreeMap<i64, CMatrix>,
    band: (i64, i64),
    tail_bound: f64,
}

impl Symbol {
    /// Build a symbol from explicit Fourier coefficients.
    pub fn from_coefficients(block_size: usize, coeffs: Vec<(i64, CMatrix)>) -> Result<Symbol> {
        assert!(block_size > 0, "block size must be positive");
        let mut map = BTreeMap::new();
        for (k, m) in coeffs {
            if m.nrows() != block_size || m.ncols() != block_size {
                return Err(Error::DimensionMismatch {
                    expected: (block_size, block_size),
                    got: (m.nrows(), m.ncols()),
                });
            }
            if map.insert(k, m).is_some() {
                return Err(Error::DuplicateIndex(k));
            }
        }
        map.entry(0)
            .or_insert_with(|| CMatrix::zeros(block_size, block_size));
        let band = (
            *map.keys().next().unwrap().min(&0),
            *map.keys().next_back().unwrap().max(&0),
        );
        Ok(Symbol { block_size, coeffs: map, band, tail_bound: 0.0 })
    }

    /// The constant symbol `c·I`.
    pub fn constant(block_size: usize, c: Complex64) -> Symbol {
        let m = CMatrix::identity(block_size, block_size) * c;
        Symbol::from_coefficients(block_size, vec![(0, m)]).unwrap()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Inclusive index range of stored coefficients.
    pub fn band(&self) -> (i64, i64) {
        self.band
    }

    /// Largest truncated-coefficient norm for sampled symbols; exactly zero
    /// for symbols built from explicit coefficients.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// True when the coefficient list is exact (no sampling tail). Banded
    /// symbols admit exact evaluation and exact Laurent determinants.
    pub fn is_banded_exact(&self) -> bool {
        self.tail_bound == 0.0
    }

    /// Coefficient `φ_k`; absent indices are the zero matrix.
    pub fn coefficient(&self, k: i64) -> CMatrix {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.block_size, self.block_size))
    }

    /// Whether index `k` carries a stored coefficient.
    pub fn has_coefficient(&self, k: i64) -> bool {
        self.coeffs.contains_key(&k)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &CMatrix)> {
        self.coeffs.iter().map(|(k, m)| (*k, m))
    }

    /// `φ(e^{iθ}) = Σ_k φ_k e^{-ikθ}`; exact for banded symbols.
    pub fn evaluate(&self, theta: f64) -> CMatrix {
        let mut acc = CMatrix::zeros(self.block_size, self.block_size);
        for (&k, m) in &self.coeffs {
            let w = Complex64::from_polar(1.0, -(k as f64) * theta);
            acc += m * w;
        }
        acc
    }

    /// `det φ(e^{iθ_j})` over the uniform grid `θ_j = 2πj/M`.
    pub fn det_on_grid(&self, grid_size: usize) -> Vec<Complex64> {
        assert!(grid_size.is_power_of_two(), "grid size must be a power of two");
        (0..grid_size)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / grid_size as f64;
                linalg::det(&self.evaluate(theta))
            })
            .collect()
    }

    /// Transposed-reflected symbol `ρ_k = (φ_{-k})ᵀ`, satisfying
    /// `T_n(ρ) = T_n(φ)ᵀ`.
    pub fn reflected_transpose(&self) -> Symbol {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&k, m)| (-k, m.transpose()))
            .collect();
        Symbol::from_coefficients(self.block_size, coeffs).unwrap()
    }

    /// Recover a symbol from a smooth 2π-periodic matrix evaluator.
    ///
    /// Samples on power-of-two grids starting at [`SAMPLE_GRID_START`],
    /// doubling until the outermost quarter of Fourier coefficients has
    /// max-norm below `tol` (that norm becomes the stored `tail_bound`).
    /// Coefficients below `tol/100` are pruned to keep the band short.
    pub fn from_evaluator<F>(eval: F, block_size: usize, tol: f64) -> Result<Symbol>
    where
        F: Fn(f64) -> CMatrix,
    {
        Symbol::from_fallible_evaluator(|theta| Ok(eval(theta)), block_size, tol)
    }

    pub fn from_fallible_evaluator<F>(eval: F, block_size: usize, tol: f64) -> Result<Symbol>
    where
        F: Fn(f64) -> Result<CMatrix>,
    {
        assert!(tol > 0.0, "tolerance must be positive");
        let mut grid = SAMPLE_GRID_START;
        loop {
            let sampled = SampledSymbol::from_fallible(&eval, block_size, grid)?;
            let (coeffs, tail) = sampled.fourier_coefficients();
            if tail < tol {
                return Ok(Self::assemble_pruned(block_size, coeffs, tail, tol / 100.0));
            }
            if grid >= SAMPLE_GRID_MAX {
                return Err(Error::NonConvergence { grid, tail });
            }
            grid *= 2;
        }
    }

    fn assemble_pruned(
        block_size: usize,
        coeffs: Vec<(i64, CMatrix)>,
        tail: f64,
        prune_below: f64,
    ) -> Symbol {
        let kept: Vec<(i64, CMatrix)> = coeffs
            .into_iter()
            .filter(|(_, m)| mat_max_norm(m) >= prune_below)
            .collect();
        let mut s = Symbol::from_coefficients(block_size, kept).unwrap();
        s.tail_bound = tail;
        s
    }

    /// Pointwise inverse `φ(e^{iθ})⁻¹`, re-Fourier'd through the sampling
    /// machinery. Fails if `det φ` (numerically) vanishes on the circle.
    pub fn inverse(&self, tol: f64) -> Result<Symbol> {
        // Scan a fine grid for singular samples before the adaptive loop;
        // 1e-13 of the largest determinant counts as vanishing.
        let probe = (4 * self.band_width()).next_power_of_two().max(2048);
        let dets = self.det_on_grid(probe);
        let max_det = dets.iter().map(|d| d.norm()).fold(0.0, f64::max);
        if max_det == 0.0 {
            return Err(Error::SingularSample { theta: 0.0, det_abs: 0.0 });
        }
        for (j, d) in dets.iter().enumerate() {
            if d.norm() < 1e-13 * max_det {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / dets.len() as f64;
                return Err(Error::SingularSample { theta, det_abs: d.norm() });
            }
        }
        let n = self.block_size;
        Symbol::from_fallible_evaluator(
            |theta| {
                let m = self.evaluate(theta);
                linalg::inverse(&m).map_err(|_| Error::SingularSample {
                    theta,
                    det_abs: linalg::det(&m).norm(),
                })
            },
            n,
            tol,
        )
    }

    pub fn band_width(&self) -> usize {
        (self.band.1 - self.band.0 + 1) as usize
    }

    /// Anti-diagonal bipartition of the internal index, if one exists: a split
    /// `(S₁, S₂)` of `0..N` such that every coefficient is supported on the
    /// `S₁×S₂` and `S₂×S₁` blocks only. `S₁` is the part containing index 0.
    ///
    /// Only permutation-type basis changes are searched; symbols needing a
    /// general unitary rotation into anti-diagonal form are not recognized.
    pub fn anti_diagonal_split(&self, tol: f64) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.block_size;
        if n < 2 {
            return None;
        }
        let scale = self
            .coeffs
            .values()
            .map(mat_max_norm)
            .fold(0.0, f64::max)
            .max(1.0);
        // 2-color the graph whose edges are the nonzero couplings
        let mut adj = vec![vec![false; n]; n];
        for m in self.coeffs.values() {
            for i in 0..n {
                for j in 0..n {
                    if m[(i, j)].norm() > tol * scale {
                        if i == j {
                            return None; // diagonal support can never be anti-diagonal
                        }
                        adj[i][j] = true;
                        adj[j][i] = true;
                    }
                }
            }
        }
        let mut color = vec![-1i8; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if color[start] != -1 {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for w in 0..n {
                    if adj[v][w] {
                        if color[w] == -1 {
                            color[w] = 1 - color[v];
                            queue.push_back(w);
                        } else if color[w] == color[v] {
                            return None; // odd cycle: not bipartite
                        }
                    }
                }
            }
        }
        let s1: Vec<usize> = (0..n).filter(|&i| color[i] == color[0]).collect();
        let s2: Vec<usize> = (0..n).filter(|&i| color[i] != color[0]).collect();
        if s1.is_empty() || s2.is_empty() || s1.len() != s2.len() {
            return None;
        }
        Some((s1, s2))
    }

    /// Restriction of every coefficient to the `rows × cols` sub-block,
    /// as a symbol of block size `rows.len()`.
    pub fn sub_block(&self, rows: &[usize], cols: &[usize]) -> Symbol {
        assert_eq!(rows.len(), cols.len());
        let coeffs: Vec<(i64, CMatrix)> = self
            .coeffs
            .iter()
            .map(|(&k, m)| {
                (k, CMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])]))
            })
            .filter(|(k, m)| *k == 0 || mat_max_norm(m) > 0.0)
            .collect();
        let mut s = Symbol::from_coefficients(rows.len(), coeffs).unwrap();
        s.tail_bound = self.tail_bound;
        s
    }
}

/// A symbol sampled on a uniform power-of-two grid; the intermediate
/// representation between evaluators and coefficient lists.
pub struct SampledSymbol {
    block_size: usize,
    samples: Vec<CMatrix>,
}

impl SampledSymbol {
    pub fn from_fallible<F>(eval: &F, block_size: usize, grid_size: usize) -> Result<SampledSymbol>
    where
        F: Fn(f64) -> Result<CMatrix>,
    {
        assert!(grid_size.is_power_of_two() && grid_size >= 2);
        let mut samples = Vec::with_capacity(grid_size);
        for j in 0..grid_size {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / grid_size as f64;
            let m = eval(theta)?;
            if m.nrows() != block_size || m.ncols() != block_size {
                return Err(Error::DimensionMismatch {
                    expected: (block_size, block_size),
                    got: (m.nrows(), m.ncols()),
                });
            }
            samples.push(m);
        }
        Ok(SampledSymbol { block_size, samples })
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len()
    }

    /// Fourier coefficients `φ_k ≈ (1/M) Σ_j φ(θ_j) e^{ikθ_j}` for
    /// `k ∈ [-M/2, M/2)`, together with the max-norm over the outermost
    /// quarter of indices (the truncation certificate).
    ///
    /// The `e^{+ikθ}` kernel corresponds to the *inverse* FFT direction.
    pub fn fourier_coefficients(&self) -> (Vec<(i64, CMatrix)>, f64) {
        let m = self.grid_size();
        let n = self.block_size;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_inverse(m);
        let mut per_entry: Vec<Vec<Complex64>> = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut buf: Vec<Complex64> = self.samples.iter().map(|s| s[(a, b)]).collect();
                fft.process(&mut buf);
                for v in buf.iter_mut() {
                    *v /= m as f64;
                }
                per_entry.push(buf);
            }
        }
        let half = (m / 2) as i64;
        let mut coeffs = Vec::with_capacity(m);
        let mut tail: f64 = 0.0;
        let outer = (3 * m as i64) / 8;
        for k in -half..half {
            let idx = k.rem_euclid(m as i64) as usize;
            let mat = CMatrix::from_fn(n, n, |a, b| per_entry[a * n + b][idx]);
            if k.abs() >= outer {
                tail = tail.max(mat_max_norm(&mat));
            }
            coeffs.push((k, mat));
        }
        (coeffs, tail)
    }
}

// ---------------------------------------------------------------------------
// Symbol JSON files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    k: i64,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct SymbolFile {
    block_size: usize,
    coefficients: Vec<CoefficientFile>,
}

/// Parse the symbol JSON schema
/// `{ "block_size": N, "coefficients": [ { "k": int, "re": [[..]], "im": [[..]] } ] }`.
/// The `im` part may be omitted for real coefficients.
pub fn symbol_from_json(text: &str) -> Result<Symbol> {
    let file: SymbolFile =
        serde_json::from_str(text).map_err(|e| Error::SymbolFile(e.to_string()))?;
    if file.block_size == 0 {
        return Err(Error::SymbolFile("block_size must be positive".into()));
    }
    let n = file.block_size;
    let mut coeffs = Vec::new();
    for c in file.coefficients {
        let rows = c.re.len();
        let cols = c.re.first().map(|r| r.len()).unwrap_or(0);
        if rows != n || cols != n || c.re.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: (n, n), got: (rows, cols) });
        }
        if let Some(im) = &c.im {
            if im.len() != n || im.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: (n, n),
                    got: (im.len(), im.first().map(|r| r.len()).unwrap_or(0)),
                });
            }
        }
        let mat = CMatrix::from_fn(n, n, |i, j| {
            let re = c.re[i][j];
            let im = c.im.as_ref().map(|m| m[i][j]).unwrap_or(0.0);
            Complex64::new(re, im)
        });
        coeffs.push((c.k, mat));
    }
    Symbol::from_coefficients(n, coeffs)
}

/// Serialize a symbol back to the JSON file schema.
pub fn symbol_to_json(s: &Symbol) -> String {
    let n = s.block_size();
    let file = SymbolFile {
        block_size: n,
        coefficients: s
            .coefficients()
            .map(|(k, m)| CoefficientFile {
                k,
                re: (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect(),
                im: Some((0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("symbol serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example1_symbol(u: f64) -> Symbol {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let cu = Complex64::new(u, 0.0);
        Symbol::from_coefficients(
            2,
            vec![
                (0, CMatrix::from_row_slice(2, 2, &[z, one, -one, z])),
                (1, CMatrix::from_row_slice(2, 2, &[z, -cu, z, z])),
                (-1, CMatrix::from_row_slice(2, 2, &[z, z, cu, z])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn from_coefficients_rejects_bad_dimensions() {
        let bad = CMatrix::zeros(3, 3);
        let err = Symbol::from_coefficients(2, vec![(0, bad)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn from_coefficients_rejects_duplicates() {
        let m = CMatrix::identity(2, 2);
        let err = Symbol::from_coefficients(2, vec![(1, m.clone()), (1, m)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateIndex(1)));
    }

    #[test]
    fn evaluate_example1_at_theta_zero() {
        // u=2 at θ=0: [[0, 1-u], [-1+u, 0]] = [[0,-1],[1,0]]
        let s = example1_symbol(2.0);
        let m = s.evaluate(0.0);
        assert!((m[(0, 1)] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((m[(1, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn evaluate_constant_symbol() {
        let s = Symbol::constant(1, Complex64::new(1.0, 0.0));
        let m = s.evaluate(1.234);
        assert!((m[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn det_on_grid_example1() {
        // det φ(θ) = 1 + u² - 2u cos θ; at θ=0 with u=2 this is 1
        let s = example1_symbol(2.0);
        let dets = s.det_on_grid(8);
        assert!((dets[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let theta = 2.0 * std::f64::consts::PI / 8.0;
        let expect = 1.0 + 4.0 - 4.0 * theta.cos();
        assert!((dets[1].re - expect).abs() < 1e-12);
    }

    #[test]
    fn sampling_recovers_banded_coefficients() {
        let s = example1_symbol(0.7);
        let r = Symbol::from_evaluator(|t| s.evaluate(t), 2, 1e-12).unwrap();
        for k in -2..=2 {
            let diff = r.coefficient(k) - s.coefficient(k);
            assert!(mat_max_norm(&diff) < 1e-12, "k={k}");
        }
        assert!(r.tail_bound() < 1e-12);
    }

    #[test]
    fn sampling_constant_evaluator() {
        let r = Symbol::from_evaluator(|_| CMatrix::identity(1, 1), 1, 1e-12).unwrap();
        assert_eq!(r.band(), (0, 0));
        assert!((r.coefficient(0)[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(r.tail_bound() < 1e-13);
    }

    #[test]
    fn inverse_of_example1_inside_regime() {
        // (φ⁻¹)₀ = [[0,-1],[1,0]] for |u| < 1
        let s = example1_symbol(0.5);
        let inv = s.inverse(1e-12).unwrap();
        let c0 = inv.coefficient(0);
        assert!((c0[(0, 1)].re + 1.0).abs() < 1e-10);
        assert!((c0[(1, 0)].re - 1.0).abs() < 1e-10);
        assert!(c0[(0, 0)].norm() < 1e-10 && c0[(1, 1)].norm() < 1e-10);
    }

    #[test]
    fn inverse_of_constant_two() {
        let s = Symbol::constant(1, Complex64::new(2.0, 0.0));
        let inv = s.inverse(1e-12).unwrap();
        assert!((inv.coefficient(0)[(0, 0)].re - 0.5).abs() < 1e-12);
        assert_eq!(inv.band(), (0, 0));
    }

    #[test]
    fn inverse_rejects_singular_symbol() {
        // 1 - e^{-iθ} vanishes at θ=0
        let one = Complex64::new(1.0, 0.0);
        let s = Symbol::from_coefficients(
            1,
            vec![
                (0, CMatrix::from_element(1, 1, one)),
                (1, CMatrix::from_element(1, 1, -one)),
            ],
        )
        .unwrap();
        assert!(matches!(s.inverse(1e-10), Err(Error::SingularSample { .. })));
    }

    #[test]
    fn anti_diagonal_split_found_for_example1() {
        let s = example1_symbol(2.0);
        let (s1, s2) = s.anti_diagonal_split(1e-10).unwrap();
        assert_eq!(s1, vec![0]);
        assert_eq!(s2, vec![1]);
    }

    #[test]
    fn anti_diagonal_split_absent_for_identity() {
        let s = Symbol::constant(2, Complex64::new(1.0, 0.0));
        assert!(s.anti_diagonal_split(1e-10).is_none());
    }

    #[test]
    fn json_roundtrip() {
        let s = example1_symbol(1.5);
        let text = symbol_to_json(&s);
        let r = symbol_from_json(&text).unwrap();
        assert_eq!(r.block_size(), 2);
        for k in -1..=1 {
            assert!(mat_max_norm(&(r.coefficient(k) - s.coefficient(k))) < 1e-15);
        }
    }

    #[test]
    fn json_rejects_ragged_matrix() {
        let text = r#"{"block_size": 2, "coefficients": [{"k": 0, "re": [[1, 0], [0]]}]}"#;
        assert!(symbol_from_json(text).is_err());
    }

    #[test]
    fn reflected_transpose_flips_band() {
        let s = example1_symbol(2.0);
        let r = s.reflected_transpose();
        assert!(mat_max_norm(&(r.coefficient(-1) - s.coefficient(1).transpose())) < 1e-15);
        assert!(mat_max_norm(&(r.coefficient(1) - s.coefficient(-1).transpose())) < 1e-15);
    }
}
