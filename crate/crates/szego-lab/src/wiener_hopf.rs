//! Scalar Laurent polynomials, Wiener-Hopf factorization and the winding
//! theorem for scalar Toeplitz determinants.
//!
//! Scalar symbols live here in *z-power* indexing: `p(z) = Σ_m c_m z^m` with
//! `z = e^{iθ}`. The crate-wide Fourier index `k` of the symbol module relates
//! by `k = -m` (see the convention note in [`crate::symbol`]).
//!
//! `φ₊` denotes the factor analytic and invertible inside the unit disk
//! (nonnegative z-powers), `φ₋` the factor analytic and invertible outside
//! (nonpositive z-powers); `φ = z^w · φ₋ · φ₊` with `w` the winding number.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::matrices;
use crate::signed_log::SignedLogValue;
use crate::symbol::Symbol;

/// A scalar Laurent polynomial `Σ c_m z^m`, `m = min_power … min_power+len-1`.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    min_power: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn new(min_power: i64, coeffs: Vec<Complex64>) -> LaurentPoly {
        let mut p = LaurentPoly { min_power, coeffs };
        p.trim();
        p
    }

    /// From `(power, coefficient)` pairs.
    pub fn from_terms(terms: &[(i64, Complex64)]) -> LaurentPoly {
        if terms.is_empty() {
            return LaurentPoly { min_power: 0, coeffs: vec![] };
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(m, c) in terms {
            coeffs[(m - lo) as usize] += c;
        }
        LaurentPoly::new(lo, coeffs)
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::from_terms(&[(0, Complex64::new(1.0, 0.0))])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_power(&self) -> i64 {
        self.min_power
    }

    pub fn max_power(&self) -> i64 {
        self.min_power + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `z^m`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        if m < self.min_power || m > self.max_power() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(m - self.min_power) as usize]
        }
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.norm() == 0.0 {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_power += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_power = 0;
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        // Horner on the polynomial part, then shift by z^{min_power}
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.min_power as i32)
    }

    pub fn eval_theta(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly { min_power: 0, coeffs: vec![] };
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_power + other.min_power, coeffs)
    }

    pub fn scale(&self, c: Complex64) -> LaurentPoly {
        LaurentPoly::new(self.min_power, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Roots of `z^{-min_power} p(z)` (a genuine polynomial with nonzero
    /// constant term), via the companion matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        linalg::polynomial_roots(&self.coeffs)
    }

    /// Winding number of `p(e^{iθ})` around the origin, assuming no roots on
    /// the circle: (# roots strictly inside) + min_power.
    pub fn winding(&self) -> Result<i64> {
        let roots = self.roots()?;
        let inside = roots.iter().filter(|r| r.norm() < 1.0).count() as i64;
        Ok(inside + self.min_power)
    }

    /// Crate-convention symbol (block size 1) with `φ_k = c_{-k}`.
    pub fn to_symbol(&self) -> Symbol {
        let terms: Vec<(i64, CMatrix)> = (self.min_power..=self.max_power())
            .map(|m| (-m, CMatrix::from_element(1, 1, self.coeff(m))))
            .collect();
        Symbol::from_coefficients(1, terms).unwrap()
    }

    /// Read a block-size-1 symbol into z-power indexing.
    pub fn from_symbol(s: &Symbol) -> LaurentPoly {
        assert_eq!(s.block_size(), 1, "scalar symbols only");
        let terms: Vec<(i64, Complex64)> =
            s.coefficients().map(|(k, m)| (-k, m[(0, 0)])).collect();
        LaurentPoly::from_terms(&terms)
    }

    /// Dense scalar Toeplitz matrix: entry `(i, j) = c_{z^{j-i}}`
    /// (the crate convention `T_n(h)_{ij} = h_{i-j}` with `k = -m`).
    pub fn toeplitz(&self, n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| self.coeff(j as i64 - i as i64))
    }

    /// `det T_n(p)` as a sign-tracked value.
    pub fn toeplitz_log_det(&self, n: usize) -> SignedLogValue {
        linalg::log_det(&self.toeplitz(n))
    }

    /// The polynomial with `z ↦ z⁻¹` (reflection `m → -m`); its Toeplitz
    /// matrices are the transposes of the original ones.
    pub fn reflected(&self) -> LaurentPoly {
        let terms: Vec<(i64, Complex64)> = (self.min_power..=self.max_power())
            .map(|m| (-m, self.coeff(m)))
            .collect();
        LaurentPoly::from_terms(&terms)
    }
}

/// Wiener-Hopf factorization data for a scalar Laurent polynomial:
/// `p(z) = z^winding · φ₋(z) · φ₊(z)` with
/// `φ₊(z) = Π_out (1 - z/r)` (roots outside, `φ₊(0) = 1`) and
/// `φ₋(z) = K · Π_in (1 - r/z)` (roots inside); the constant `K` sits in
/// `φ₋` so the product identity holds literally, and it equals the geometric
/// mean of `z^{-winding} p`.
#[derive(Debug, Clone)]
pub struct ScalarFactorization {
    pub phi_plus: LaurentPoly,
    pub phi_minus: LaurentPoly,
    /// The constant `K = φ₋(∞)`.
    pub constant: Complex64,
    /// Winding number of the input.
    pub winding: i64,
    pub roots_inside: Vec<Complex64>,
    pub roots_outside: Vec<Complex64>,
    /// `α = (φ₋/K) / φ₊` — the ratio of the *normalized* factors
    /// (`φ₋(∞) = φ₊(0) = 1`) — truncated to a finite power window, with the
    /// certified magnitude bound on the dropped tail.
    pub alpha: LaurentPoly,
    pub alpha_tail_bound: f64,
}

/// Minimal allowed distance of any root from the unit circle.
pub const ROOT_CIRCLE_TOL: f64 = 1e-8;

/// Factorize `p = z^w · φ₋ · φ₊`. Roots on the unit circle (within
/// [`ROOT_CIRCLE_TOL`]) are rejected.
pub fn wiener_hopf_scalar(p: &LaurentPoly) -> Result<ScalarFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let roots = p.roots()?;
    for r in &roots {
        if (r.norm() - 1.0).abs() < ROOT_CIRCLE_TOL {
            return Err(Error::RootOnCircle { root_abs: r.norm() });
        }
    }
    let inside: Vec<Complex64> = roots.iter().cloned().filter(|r| r.norm() < 1.0).collect();
    let outside: Vec<Complex64> = roots.iter().cloned().filter(|r| r.norm() > 1.0).collect();
    let winding = inside.len() as i64 + p.min_power();

    // leading coefficient of the polynomial part
    let lead = p.coeff(p.max_power());
    // p(z) = lead · z^{min_power} · Π (z - r); regroup into the normalized
    // factors and absorb the constant into φ₋.
    let mut phi_plus = LaurentPoly::one();
    for r in &outside {
        // (1 - z/r)
        phi_plus = phi_plus.mul(&LaurentPoly::from_terms(&[
            (0, Complex64::new(1.0, 0.0)),
            (1, -Complex64::new(1.0, 0.0) / r),
        ]));
    }
    let mut phi_minus = LaurentPoly::one();
    for r in &inside {
        // (1 - r/z)
        phi_minus = phi_minus.mul(&LaurentPoly::from_terms(&[
            (0, Complex64::new(1.0, 0.0)),
            (-1, -r),
        ]));
    }
    // constant K = lead · Π_out (-r)
    let mut k = lead;
    for r in &outside {
        k *= -r;
    }
    // α is built from the normalized factors (constant stripped)
    let (alpha, alpha_tail_bound) = alpha_series(&phi_minus, &phi_plus, &outside, 256);
    phi_minus = phi_minus.scale(k);

    Ok(ScalarFactorization {
        phi_plus,
        phi_minus,
        constant: k,
        winding,
        roots_inside: inside,
        roots_outside: outside,
        alpha,
        alpha_tail_bound,
    })
}

/// `α = φ₋ / φ₊` as a truncated Laurent series: the reciprocal of `φ₊` is a
/// power series in `z` with geometric decay set by the outside roots, so the
/// dropped tail is certified by that rate.
fn alpha_series(
    phi_minus: &LaurentPoly,
    phi_plus: &LaurentPoly,
    roots_outside: &[Complex64],
    order: usize,
) -> (LaurentPoly, f64) {
    // reciprocal power series of φ₊: b₀ = 1/a₀, b_j = -(Σ_{i≥1} a_i b_{j-i})/a₀
    let a0 = phi_plus.coeff(0);
    let deg = phi_plus.max_power();
    let mut b = vec![Complex64::new(0.0, 0.0); order + 1];
    b[0] = Complex64::new(1.0, 0.0) / a0;
    for j in 1..=order {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=deg.min(j as i64) {
            acc += phi_plus.coeff(i) * b[j - i as usize];
        }
        b[j] = -acc / a0;
    }
    let recip = LaurentPoly::new(0, b);
    let alpha = phi_minus.mul(&recip);
    // decay rate of 1/φ₊ coefficients: 1/min |outside root|
    let rho = roots_outside
        .iter()
        .map(|r| 1.0 / r.norm())
        .fold(0.0, f64::max);
    let scale = alpha
        .coeffs
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let tail = if rho > 0.0 { scale * rho.powi(order as i32 / 2) } else { 0.0 };
    (alpha, tail)
}

/// Right-hand side of the winding theorem for scalar symbols: the predicted
/// value of `det T_n(e^{-imθ} p)` for a winding-zero `p`, namely
///
/// ```text
///   (-1)^{nm} · det T_{n+m}(p) · K^{-m} · det T_m(e^{-inθ} α)
/// ```
///
/// with `α = φ₋ φ₊⁻¹` from the normalized factorization and `K` the
/// factorization constant (the geometric mean of `p`). The index alignment
/// and the `K^{-m}` normalization are pinned by exact small cases: for
/// `p = K(1 - z/r)` the `(i, j)` entry of the finite inverse corner is
/// `K⁻¹ α` at `z`-power `n + j - i`, reproducing `det T_n(e^{-imθ}p)`
/// exactly; two-sided symbols add a geometrically small error.
///
/// `m = 0` degenerates to `det T_n(p)` identically.
pub fn scalar_winding_theorem(p: &LaurentPoly, m: usize, n: usize) -> Result<SignedLogValue> {
    if m == 0 {
        return Ok(p.toeplitz_log_det(n));
    }
    let fact = wiener_hopf_scalar(p)?;
    if fact.winding != 0 {
        return Err(Error::WindingNotZero(fact.winding));
    }
    let det_big = p.toeplitz_log_det(n + m);
    // T_m(e^{-inθ}α) has entries α at z-power n + j - i
    let f = CMatrix::from_fn(m, m, |i, j| {
        fact.alpha.coeff(n as i64 + j as i64 - i as i64)
    });
    let det_f = linalg::log_det(&f);
    let k_norm = SignedLogValue::from_complex(fact.constant).powi(-(m as i64));
    let sign = if (n * m) % 2 == 1 {
        SignedLogValue::from_real(-1.0)
    } else {
        SignedLogValue::ONE
    };
    Ok(sign.mul(&det_big).mul(&k_norm).mul(&det_f))
}

/// Direct determinant of `T_n(e^{-imθ} p)` (entries shifted by `m`), the
/// brute-force side of the theorem.
pub fn shifted_toeplitz_log_det(p: &LaurentPoly, m: i64, n: usize) -> SignedLogValue {
    let t = CMatrix::from_fn(n, n, |i, j| p.coeff(m + j as i64 - i as i64));
    linalg::log_det(&t)
}

/// Asymptotic prediction for `det T_n(q)` for a scalar symbol `q` of any
/// winding: winding `-m < 0` is split as `q = e^{-imθ} p`; positive winding is
/// handled through the reflected symbol (`T_n(q̃) = T_n(q)ᵀ`).
pub fn toeplitz_det_asymptotic(q: &LaurentPoly, n: usize) -> Result<SignedLogValue> {
    let w = q.winding()?;
    if w == 0 {
        return scalar_winding_theorem(q, 0, n);
    }
    if w < 0 {
        let m = (-w) as usize;
        // p = e^{imθ} q  ⟺  shift all z-powers down... e^{imθ} = z^m
        let p = q.mul(&LaurentPoly::from_terms(&[(m as i64, Complex64::new(1.0, 0.0))]));
        scalar_winding_theorem(&p, m, n)
    } else {
        toeplitz_det_asymptotic(&q.reflected(), n)
    }
}

/// Laurent determinant of a banded matrix symbol: `det φ(z)` as a scalar
/// Laurent polynomial, recovered exactly by sampling on a grid wide enough for
/// its known power range.
pub fn laurent_det(s: &Symbol) -> Result<LaurentPoly> {
    if !s.is_banded_exact() {
        return Err(Error::NotBanded);
    }
    let nb = s.block_size() as i64;
    let (k_min, k_max) = s.band();
    // z-power of φ_k is -k, so det φ has powers in [-N·k_max, -N·k_min]
    let p_min = -nb * k_max;
    let p_max = -nb * k_min;
    let width = (p_max - p_min + 1) as usize;
    let grid = (2 * width).next_power_of_two();
    let dets = s.det_on_grid(grid);
    // forward DFT picks out z-power coefficients: c_p = (1/M) Σ det_j e^{-ipθ_j}
    let mut planner = rustfft::FftPlanner::new();
    let fft = planner.plan_fft_forward(grid);
    let mut buf = dets;
    fft.process(&mut buf);
    let mut terms = Vec::with_capacity(width);
    for p in p_min..=p_max {
        let idx = p.rem_euclid(grid as i64) as usize;
        terms.push((p, buf[idx] / grid as f64));
    }
    // sampling noise below 1e-14 of the largest coefficient is dropped
    let scale = terms.iter().map(|t| t.1.norm()).fold(0.0, f64::max);
    let kept: Vec<(i64, Complex64)> = terms
        .into_iter()
        .filter(|t| t.1.norm() > 1e-14 * scale)
        .collect();
    Ok(LaurentPoly::from_terms(&kept))
}

/// Momentum-space circulant determinant
/// `det C_n(φ) = Π_j det( Σ_p φ_p e^{-ipθ_j} )` over `θ_j = 2πj/n`, with the
/// band truncated to `|p| < n/2`. The symmetric window keeps the symmetry
/// classes intact (dropping `+k` while keeping `-k` would break them); for
/// banded symbols whose band fits, this equals `det` of the materialized
/// circulant.
pub fn circulant_log_det_spectral(s: &Symbol, n: usize) -> SignedLogValue {
    let mut acc = SignedLogValue::ONE;
    for j in 0..n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let m = truncated_eval(s, theta, n);
        acc = acc.mul(&linalg::log_det(&m));
    }
    acc
}

/// Eigenvalues of the momentum-space blocks `Σ_{-n/2 ≤ p < n/2} φ_p e^{-ipθ_j}`,
/// the spectrum of `C_n(φ)` computed without materializing it.
pub fn circulant_spectrum_spectral(s: &Symbol, n: usize) -> Result<Vec<Complex64>> {
    let mut all = Vec::with_capacity(n * s.block_size());
    for j in 0..n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let m = truncated_eval(s, theta, n);
        all.extend(matrices::spectrum_of(&m)?);
    }
    all.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    Ok(all)
}

fn truncated_eval(s: &Symbol, theta: f64, n: usize) -> CMatrix {
    let hi = n as f64 / 2.0;
    let mut acc = CMatrix::zeros(s.block_size(), s.block_size());
    for (k, m) in s.coefficients() {
        if (k.abs() as f64) >= hi {
            continue;
        }
        acc += m * Complex64::from_polar(1.0, -(k as f64) * theta);
    }
    acc
}
