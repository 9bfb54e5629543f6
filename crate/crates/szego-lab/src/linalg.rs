//! Dense linear algebra kernels: sign-tracked LU, Pfaffian, hermitian
//! eigendecomposition and companion-matrix polynomial roots.
//!
//! The LU is hand-rolled because the determinant must come out in
//! [`SignedLogValue`] form (sum of pivot log-magnitudes, product of pivot
//! phases and the permutation sign); eigenproblems are delegated to nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signed_log::SignedLogValue;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Pivot magnitude below which a determinant is reported as an exact zero.
pub const EXACT_ZERO_PIVOT: f64 = 1e-300;

/// LU factorization with partial pivoting, kept for reuse across solves.
pub struct LuFactors {
    lu: CMatrix,
    perm: Vec<usize>,
    perm_sign: f64,
    scale: f64,
}

impl LuFactors {
    pub fn new(m: &CMatrix) -> LuFactors {
        assert_eq!(m.nrows(), m.ncols(), "LU requires a square matrix");
        let n = m.nrows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut perm_sign = 1.0;
        let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for k in 0..n {
            // partial pivoting on column k
            let mut p = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                lu.swap_rows(k, p);
                perm.swap(k, p);
                perm_sign = -perm_sign;
            }
            let piv = lu[(k, k)];
            if piv.norm() < EXACT_ZERO_PIVOT {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] -= f * s;
                }
            }
        }
        LuFactors { lu, perm, perm_sign, scale }
    }

    /// Determinant as sign-tracked log value. Any pivot below
    /// [`EXACT_ZERO_PIVOT`] makes the determinant an exact zero.
    pub fn log_det(&self) -> SignedLogValue {
        let n = self.lu.nrows();
        if n == 0 {
            return SignedLogValue::ONE;
        }
        let mut log_abs = 0.0;
        let mut phase = Complex64::new(self.perm_sign, 0.0);
        for k in 0..n {
            let d = self.lu[(k, k)];
            let r = d.norm();
            if r < EXACT_ZERO_PIVOT {
                return SignedLogValue::zero();
            }
            log_abs += r.ln();
            phase *= d / r;
        }
        SignedLogValue::new(log_abs, phase)
    }

    /// Relative magnitude of the smallest pivot; a cheap singularity gauge.
    pub fn min_pivot_rel(&self) -> f64 {
        let n = self.lu.nrows();
        let scale = if self.scale > 0.0 { self.scale } else { 1.0 };
        (0..n)
            .map(|k| self.lu[(k, k)].norm() / scale)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_singular(&self, rel_tol: f64) -> bool {
        self.lu.nrows() > 0 && self.min_pivot_rel() < rel_tol
    }

    /// Solve `A x = b` through the stored factors.
    pub fn solve(&self, b: &CVector) -> Result<CVector> {
        if self.is_singular(1e-14) {
            return Err(Error::Singular);
        }
        let n = self.lu.nrows();
        assert_eq!(b.len(), n);
        let mut x = CVector::from_element(n, Complex64::new(0.0, 0.0));
        for i in 0..n {
            x[i] = b[self.perm[i]];
        }
        // forward: L y = P b  (unit lower triangle)
        for i in 0..n {
            for j in 0..i {
                let f = self.lu[(i, j)] * x[j];
                x[i] -= f;
            }
        }
        // backward: U x = y
        for i in (0..n).rev() {
            for j in i + 1..n {
                let f = self.lu[(i, j)] * x[j];
                x[i] -= f;
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solve with a matrix right-hand side, column by column.
    pub fn solve_matrix(&self, b: &CMatrix) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(b.nrows(), b.ncols());
        for j in 0..b.ncols() {
            let col = CVector::from_iterator(b.nrows(), b.column(j).iter().cloned());
            let x = self.solve(&col)?;
            out.set_column(j, &x);
        }
        Ok(out)
    }
}

/// `log det` of a dense complex matrix.
pub fn log_det(m: &CMatrix) -> SignedLogValue {
    LuFactors::new(m).log_det()
}

/// Plain complex determinant (goes through the log form; safe for small
/// matrices whose determinant fits in `f64`).
pub fn det(m: &CMatrix) -> Complex64 {
    log_det(m).value()
}

/// Pointwise matrix inverse through LU solves against the identity.
pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    let n = m.nrows();
    let lu = LuFactors::new(m);
    lu.solve_matrix(&CMatrix::identity(n, n))
}

/// Pfaffian of a real antisymmetric matrix by Parlett-Reid skew elimination
/// with partial pivoting and explicit sign tracking.
///
/// Convention: `Pf [[0, a], [-a, 0]] = a`, so `Pf(M)² = det(M)`.
/// Odd dimension returns 0.
pub fn pfaffian_real(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    if n % 2 == 1 {
        return 0.0;
    }
    if n == 0 {
        return 1.0;
    }
    let mut a = m.clone();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        // pivot: largest |a[i, k]| for i > k
        let mut p = k + 1;
        let mut best = a[(k + 1, k)].abs();
        for i in k + 2..n {
            let v = a[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best < EXACT_ZERO_PIVOT {
            return 0.0;
        }
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            a.swap_columns(k + 1, p);
            pf = -pf;
        }
        let piv = a[(k + 1, k)];
        // congruence with unit lower-triangular factors: Pf invariant
        for i in k + 2..n {
            let f = a[(i, k)] / piv;
            for j in 0..n {
                let s = a[(k + 1, j)];
                a[(i, j)] -= f * s;
            }
            for j in 0..n {
                let s = a[(j, k + 1)];
                a[(j, i)] -= f * s;
            }
        }
        pf *= a[(k, k + 1)];
        k += 2;
    }
    pf
}

/// Check a complex matrix is real antisymmetric within `tol·scale` and return
/// its real part.
pub fn require_real_antisymmetric(m: &CMatrix, tol: f64) -> Result<DMatrix<f64>> {
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max(m[(i, j)].im.abs());
            dev = dev.max((m[(i, j)].re + m[(j, i)].re).abs());
        }
    }
    if dev > tol * scale {
        return Err(Error::NotAntisymmetric(dev / scale));
    }
    Ok(DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re))
}

/// Pfaffian of a complex matrix verified to be real antisymmetric.
pub fn pfaffian(m: &CMatrix) -> Result<f64> {
    let real = require_real_antisymmetric(m, 1e-12)?;
    Ok(pfaffian_real(&real))
}

/// Eigenvalues of a hermitian matrix (ascending by value).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let mut v: Vec<f64> = se.eigenvalues.iter().cloned().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Hermitian eigendecomposition: (eigenvalues, eigenvectors as columns),
/// sorted ascending by eigenvalue.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMatrix::zeros(n, n);
    for (col, &i) in idx.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i).into_owned());
    }
    (vals, vecs)
}

/// Roots of the polynomial `c[0] + c[1] z + … + c[d] z^d` via the companion
/// matrix and a complex Schur decomposition.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    // trim leading (high-degree) zeros
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() == 0.0 {
        hi -= 1;
    }
    if hi == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let c = &coeffs[..hi];
    let d = c.len() - 1;
    if d == 0 {
        return Ok(vec![]);
    }
    let lead = c[d];
    if d == 1 {
        return Ok(vec![-c[0] / lead]);
    }
    let mut comp = CMatrix::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -c[i] / lead;
    }
    let schur = comp.schur();
    let t = schur.unpack().1;
    let roots: Vec<Complex64> = (0..d).map(|i| t[(i, i)]).collect();
    Ok(roots)
}
