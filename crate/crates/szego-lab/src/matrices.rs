//! Dense realizations of block Toeplitz `T_n(φ)` and block circulant `C_n(φ)`
//! matrices, with sign-tracked determinants, Pfaffians, solves and spectra.
//!
//! Storage is dense on purpose: the intended scale (`n·N ≤ 4096` rows) makes
//! `O(n³)` factorizations cheap and avoids structured-solver machinery.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, LuFactors};
use crate::signed_log::SignedLogValue;
use crate::symbol::Symbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Toeplitz,
    Circulant,
}

/// A dense `(nN)×(nN)` matrix materialized from a symbol, with provenance.
#[derive(Debug, Clone)]
pub struct StructuredMatrix {
    pub kind: MatrixKind,
    /// Block count.
    pub n: usize,
    /// Block size.
    pub block_size: usize,
    pub data: CMatrix,
    /// Human-readable description of the source symbol.
    pub source: String,
}

/// Block Toeplitz matrix: block `(i, j)` is `φ_{i-j}` (1-based block indices).
pub fn build_toeplitz(s: &Symbol, n: usize) -> Result<StructuredMatrix> {
    assert!(n >= 1, "need at least one block");
    let bs = s.block_size();
    let rows = n * bs;
    let cap = crate::size_cap();
    if rows > cap {
        return Err(Error::SizeCap { rows, cap });
    }
    let mut data = CMatrix::zeros(rows, rows);
    for i in 0..n {
        for j in 0..n {
            let k = i as i64 - j as i64;
            if !s.has_coefficient(k) {
                continue;
            }
            let blk = s.coefficient(k);
            for a in 0..bs {
                for b in 0..bs {
                    data[(i * bs + a, j * bs + b)] = blk[(a, b)];
                }
            }
        }
    }
    Ok(StructuredMatrix {
        kind: MatrixKind::Toeplitz,
        n,
        block_size: bs,
        data,
        source: format!("toeplitz(N={bs}, band={:?})", s.band()),
    })
}

/// Block circulant matrix: block `(i, j)` is `φ_{i-j+n}`, `φ_{i-j}` or
/// `φ_{i-j-n}` according to which representative of `i-j` falls in
/// `[-n/2, n/2)`. The symbol band itself must fit there, otherwise wrapped
/// copies would overlap.
pub fn build_circulant(s: &Symbol, n: usize) -> Result<StructuredMatrix> {
    assert!(n >= 1, "need at least one block");
    let bs = s.block_size();
    let (k_min, k_max) = s.band();
    let lo = -(n as f64) / 2.0;
    let hi = n as f64 / 2.0;
    // nonzero coefficients must satisfy -n/2 <= k < n/2
    for (k, m) in s.coefficients() {
        if crate::symbol::mat_max_norm(m) == 0.0 {
            continue;
        }
        if (k as f64) < lo || (k as f64) >= hi {
            return Err(Error::BandTooWide { band: (k_min, k_max), n });
        }
    }
    let rows = n * bs;
    let cap = crate::size_cap();
    if rows > cap {
        return Err(Error::SizeCap { rows, cap });
    }
    let mut data = CMatrix::zeros(rows, rows);
    for i in 0..n {
        for j in 0..n {
            let d = i as i64 - j as i64;
            let k = if (d as f64) < lo {
                d + n as i64
            } else if (d as f64) >= hi {
                d - n as i64
            } else {
                d
            };
            if !s.has_coefficient(k) {
                continue;
            }
            let blk = s.coefficient(k);
            for a in 0..bs {
                for b in 0..bs {
                    data[(i * bs + a, j * bs + b)] = blk[(a, b)];
                }
            }
        }
    }
    Ok(StructuredMatrix {
        kind: MatrixKind::Circulant,
        n,
        block_size: bs,
        data,
        source: format!("circulant(N={bs}, band={:?})", s.band()),
    })
}

impl StructuredMatrix {
    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    /// Sign-tracked log-determinant through LU with partial pivoting.
    pub fn log_det(&self) -> SignedLogValue {
        linalg::log_det(&self.data)
    }

    /// Solve `M x = b`.
    pub fn solve(&self, b: &CVector) -> Result<CVector> {
        LuFactors::new(&self.data).solve(b)
    }

    pub fn lu(&self) -> LuFactors {
        LuFactors::new(&self.data)
    }

    /// Pfaffian; requires the matrix to be real antisymmetric within 1e-12.
    pub fn pfaffian(&self) -> Result<f64> {
        linalg::pfaffian(&self.data)
    }

    /// Eigenvalues of the two structures in scope.
    ///
    /// Antihermitian matrices (real antisymmetric `T_n` and the complex
    /// antihermitian momentum blocks of their circulants) are routed through
    /// the hermitian matrix `i·M`, which guarantees exact `±iε` pairs from
    /// one robust solver; hermitian matrices are diagonalized directly. Both
    /// come back sorted by modulus ascending.
    pub fn spectrum(&self) -> Result<Vec<Complex64>> {
        spectrum_of(&self.data)
    }
}

/// Structure-aware spectrum of a dense matrix (see
/// [`StructuredMatrix::spectrum`]).
pub fn spectrum_of(m: &CMatrix) -> Result<Vec<Complex64>> {
    const STRUCTURE_TOL: f64 = 1e-10;
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let n = m.nrows();
    let mut antiherm_dev: f64 = 0.0;
    let mut herm_dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = m[(i, j)];
            let b = m[(j, i)];
            antiherm_dev = antiherm_dev.max((a + b.conj()).norm());
            herm_dev = herm_dev.max((a - b.conj()).norm());
        }
    }
    if antiherm_dev <= STRUCTURE_TOL * scale {
        // i·M is hermitian; eigenvalues of M are -i·μ
        let h = m.map(|z| Complex64::new(0.0, 1.0) * z);
        let mut mu = linalg::hermitian_eigenvalues(&h);
        mu.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        Ok(mu.iter().map(|&x| Complex64::new(0.0, -x)).collect())
    } else if herm_dev <= STRUCTURE_TOL * scale {
        let mut mu = linalg::hermitian_eigenvalues(m);
        mu.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
        Ok(mu.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    } else {
        Err(Error::UnrecognizedStructure(antiherm_dev.min(herm_dev) / scale))
    }
}

/// Collapse a modulus-sorted spectrum into per-pair magnitudes
/// `ε = (|λ_{2i}| + |λ_{2i+1}|)/2`.
pub fn pair_magnitudes(spectrum: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(spectrum.len() / 2);
    let mut i = 0;
    while i + 1 < spectrum.len() {
        out.push(0.5 * (spectrum[i].norm() + spectrum[i + 1].norm()));
        i += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1_symbol;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn toeplitz_example1_matches_displayed_corner() {
        // u=2, n=2: [[0,1,0,0],[-1,0,2,0],[0,-2,0,1],[0,0,-1,0]]
        let t = build_toeplitz(&example1_symbol(2.0), 2).unwrap();
        let expect = [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 2.0, 0.0],
            [0.0, -2.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (t.data[(i, j)] - c(expect[i][j])).norm() < 1e-15,
                    "entry ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn toeplitz_blocks_are_bit_identical_coefficients() {
        let s = example1_symbol(1.7);
        let t = build_toeplitz(&s, 5).unwrap();
        for i in 0..5usize {
            for j in 0..5usize {
                let blk = s.coefficient(i as i64 - j as i64);
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(t.data[(2 * i + a, 2 * j + b)], blk[(a, b)]);
                    }
                }
            }
        }
    }

    #[test]
    fn toeplitz_constant_identity() {
        let s = Symbol::constant(1, c(1.0));
        let t = build_toeplitz(&s, 5).unwrap();
        assert_eq!(t.data, CMatrix::identity(5, 5));
    }

    #[test]
    fn toeplitz_size_cap() {
        let s = Symbol::constant(1, c(1.0));
        assert!(matches!(
            build_toeplitz(&s, crate::size_cap() + 1),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn circulant_wraps_example1() {
        // n=4: block (1,4) has d=-3 < -2, so it holds φ_{-3+4} = φ₁ = [[0,-u],[0,0]]
        let t = build_circulant(&example1_symbol(2.0), 4).unwrap();
        assert!((t.data[(0, 7)] - c(-2.0)).norm() < 1e-15);
        assert!(t.data[(1, 6)].norm() < 1e-15);
        // and each block row is a cyclic shift of the previous one
        for i in 0..4usize {
            for j in 0..4usize {
                let jp = (j + 1) % 4;
                let ip = (i + 1) % 4;
                for a in 0..2 {
                    for b in 0..2 {
                        assert_eq!(
                            t.data[(2 * i + a, 2 * j + b)],
                            t.data[(2 * ip + a, 2 * jp + b)]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn circulant_identity_any_n() {
        let s = Symbol::constant(2, c(1.0));
        let t = build_circulant(&s, 3).unwrap();
        assert_eq!(t.data, CMatrix::identity(6, 6));
    }

    #[test]
    fn circulant_band_too_wide() {
        // n=2 cannot host band {-1,0,1}: -n/2 <= k < n/2 fails at k=1
        let err = build_circulant(&example1_symbol(2.0), 2).unwrap_err();
        assert!(matches!(err, Error::BandTooWide { .. }));
    }

    #[test]
    fn det_example1_is_one_for_any_n() {
        let t = build_toeplitz(&example1_symbol(2.0), 10).unwrap();
        let d = t.log_det();
        assert!(d.log_abs.abs() < 1e-10, "log|det| = {}", d.log_abs);
        assert!((d.phase.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn det_identity() {
        let s = Symbol::constant(1, c(1.0));
        let t = build_toeplitz(&s, 7).unwrap();
        let d = t.log_det();
        assert!(d.log_abs.abs() < 1e-14 && (d.phase.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn solve_with_verified_residual() {
        let t = build_toeplitz(&example1_symbol(2.0), 2).unwrap();
        let mut b = CVector::zeros(4);
        b[0] = c(1.0);
        let x = t.solve(&b).unwrap();
        let r = &t.data * &x - &b;
        assert!(r.iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
    }

    #[test]
    fn spectrum_of_canonical_antisymmetric() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(-1.0), c(0.0)]);
        let s = spectrum_of(&m).unwrap();
        assert!((s[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12
            || (s[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((s[0] + s[1]).norm() < 1e-12);
    }

    #[test]
    fn spectrum_rejects_generic_matrix() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(3.0), c(4.0)]);
        assert!(matches!(spectrum_of(&m), Err(Error::UnrecognizedStructure(_))));
    }

    #[test]
    fn antisymmetric_spectra_pair_exactly() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let n = 12;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.gen_range(-1.0..1.0);
                m[(i, j)] = c(v);
                m[(j, i)] = c(-v);
            }
        }
        let s = spectrum_of(&m).unwrap();
        for p in s.chunks(2) {
            assert!((p[0] + p[1]).norm() < 1e-10, "pair {:?}", p);
        }
    }
}
