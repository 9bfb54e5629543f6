//! Szegő-Widom determinant asymptotics: the geometric mean `G(φ)`, winding
//! numbers, classification of the constant `E(φ)`, Widom's finite formula for
//! banded symbols, and the modified asymptotics that replaces
//! `det T_n ~ G^n E` when a zero-mode pair forces `E(φ) = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrices::build_toeplitz;
use crate::signed_log::SignedLogValue;
use crate::symbol::{mat_max_norm, Symbol};

/// Default tolerance used when a symbol has to be inverted internally.
pub const INVERSE_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// winding numbers
// ---------------------------------------------------------------------------

/// Winding number of a closed curve given by uniform-grid samples.
///
/// Sums principal-branch phase increments; every increment must stay below
/// π/2 (otherwise the grid is declared too coarse) and the total must land
/// within 0.01 of an integer.
pub fn winding_number(samples: &[Complex64]) -> Result<i64> {
    assert!(samples.len() >= 2, "need at least two samples");
    let mut total = 0.0;
    for i in 0..samples.len() {
        let a = samples[i];
        let b = samples[(i + 1) % samples.len()];
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::VanishingSample);
        }
        let step = (b / a).arg();
        if step.abs() > std::f64::consts::FRAC_PI_2 {
            return Err(Error::PhaseStepTooLarge);
        }
        total += step;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let rounded = w.round();
    if (w - rounded).abs() >= 0.01 {
        return Err(Error::WindingUncertain(w));
    }
    Ok(rounded as i64)
}

/// Winding number of `f(e^{iθ})`, refining the grid until the phase steps are
/// resolvable (up to `2^18` samples).
pub fn winding_number_of_fn<F>(f: F) -> Result<i64>
where
    F: Fn(f64) -> Complex64,
{
    let mut m = 256usize;
    loop {
        let samples: Vec<Complex64> = (0..m)
            .map(|j| f(2.0 * std::f64::consts::PI * j as f64 / m as f64))
            .collect();
        match winding_number(&samples) {
            Ok(w) => return Ok(w),
            Err(Error::PhaseStepTooLarge) | Err(Error::WindingUncertain(_)) if m < (1 << 18) => {
                m *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Winding number of `det φ` on the circle.
pub fn det_winding(s: &Symbol) -> Result<i64> {
    winding_number_of_fn(|theta| linalg::det(&s.evaluate(theta)))
}

// ---------------------------------------------------------------------------
// G(φ)
// ---------------------------------------------------------------------------

/// Geometric mean `G(φ) = exp( (1/2π) ∫ log det φ(e^{iθ}) dθ )`.
///
/// The logarithm branch is tracked continuously around the circle (the
/// winding-zero precondition makes it single-valued); the trapezoidal rule is
/// spectrally exact for smooth symbols, and the grid doubles until two
/// successive values agree to 1e-10. The result keeps its phase: symbols with
/// negative real determinant have `G < 0`.
pub fn geometric_mean(s: &Symbol) -> Result<SignedLogValue> {
    let mut m = 256usize;
    let mut prev: Option<Complex64> = None;
    loop {
        let dets = s.det_on_grid(m);
        let max_det = dets.iter().map(|d| d.norm()).fold(0.0, f64::max);
        if max_det == 0.0 {
            return Err(Error::VanishingSample);
        }
        for d in &dets {
            if d.norm() < 1e-13 * max_det {
                return Err(Error::VanishingSample);
            }
        }
        // continuous branch of arg around the circle
        let mut args = Vec::with_capacity(m);
        let mut arg = dets[0].arg();
        args.push(arg);
        for i in 1..m {
            let step = (dets[i] / dets[i - 1]).arg();
            if step.abs() > std::f64::consts::FRAC_PI_2 {
                // too coarse for branch tracking; double and retry
                arg = f64::NAN;
                break;
            }
            arg += step;
            args.push(arg);
        }
        if !arg.is_nan() {
            let closure = (dets[0] / dets[m - 1]).arg();
            let total = args[m - 1] + closure - args[0];
            let w = (total / (2.0 * std::f64::consts::PI)).round() as i64;
            if w != 0 {
                return Err(Error::NonzeroWinding(w));
            }
            let mean_re = dets.iter().map(|d| d.norm().ln()).sum::<f64>() / m as f64;
            let mean_im = args.iter().sum::<f64>() / m as f64;
            let log_mean = Complex64::new(mean_re, mean_im);
            if let Some(p) = prev {
                if (log_mean - p).norm() < 1e-10 {
                    return Ok(SignedLogValue::new(
                        log_mean.re,
                        Complex64::from_polar(1.0, log_mean.im),
                    ));
                }
            }
            prev = Some(log_mean);
        }
        if m >= (1 << 18) {
            return Err(Error::PhaseStepTooLarge);
        }
        m *= 2;
    }
}

// ---------------------------------------------------------------------------
// E(φ) classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EClass {
    /// `det T_n / G^n` converges to a nonzero constant.
    Nonzero,
    /// the ratio decays geometrically: `E(φ) = 0`.
    Zero,
    /// neither behavior is established on the scanned range.
    Inconclusive,
}

impl EClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EClass::Nonzero => "nonzero",
            EClass::Zero => "zero",
            EClass::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of a `det T_n / G^n` scan.
#[derive(Debug, Clone)]
pub struct EClassification {
    pub class: EClass,
    /// Last ratio `e_n` (the `E` estimate when the class is `Nonzero`).
    pub e_estimate: Complex64,
    /// Fitted geometric ratio `|e_{n+1}/e_n|` on the tail.
    pub tail_ratio: f64,
    /// Cauchy deviation of the tail, relative.
    pub tail_deviation: f64,
    /// The scan itself: `(n, e_n)`.
    pub ratio_trace: Vec<(usize, SignedLogValue)>,
}

/// Ratio threshold below which the scan is classified as `E(φ) = 0`.
pub const E_ZERO_RATIO: f64 = 0.98;
/// Allowed deviation of the tail ratio from 1 for the nonzero class.
pub const E_NONZERO_BAND: f64 = 0.02;
/// Minimum number of scan points.
pub const E_MIN_POINTS: usize = 6;

/// Scan `e_n = det T_n(φ)/G(φ)^n` over `n_range` and classify the limit.
pub fn classify_e(s: &Symbol, n_range: &[usize]) -> Result<EClassification> {
    if n_range.len() < E_MIN_POINTS {
        return Err(Error::RangeTooShort { got: n_range.len(), need: E_MIN_POINTS });
    }
    let g = geometric_mean(s)?;
    let mut trace = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let det = build_toeplitz(s, n)?.log_det();
        let e_n = det.div(&g.powi(n as i64));
        trace.push((n, e_n));
    }
    Ok(classify_from_trace(trace))
}

/// Classification logic on a precomputed `(n, e_n)` trace (tail of up to 5
/// consecutive ratios, geometric-mean fitted).
pub fn classify_from_trace(trace: Vec<(usize, SignedLogValue)>) -> EClassification {
    let len = trace.len();
    let tail_len = 5.min(len - 1);
    let mut log_ratios = Vec::with_capacity(tail_len);
    for i in len - tail_len..len {
        let (n0, a) = &trace[i - 1];
        let (n1, b) = &trace[i];
        // normalize per unit n in case the scan is strided
        let dn = (n1 - n0) as f64;
        log_ratios.push((b.log_abs - a.log_abs) / dn);
    }
    let mean_log_ratio = log_ratios.iter().sum::<f64>() / log_ratios.len() as f64;
    let ratio = mean_log_ratio.exp();
    // Cauchy deviation over the last few e_n
    let last = trace[len - 1].1;
    let mut dev: f64 = 0.0;
    for i in len.saturating_sub(3)..len - 1 {
        let d = (trace[i].1.value() - trace[i + 1].1.value()).norm();
        dev = dev.max(d / last.abs().max(f64::MIN_POSITIVE));
    }
    let class = if (ratio - 1.0).abs() <= E_NONZERO_BAND && dev <= 0.05 {
        EClass::Nonzero
    } else if ratio <= E_ZERO_RATIO {
        EClass::Zero
    } else {
        EClass::Inconclusive
    };
    EClassification {
        class,
        e_estimate: last.value(),
        tail_ratio: ratio,
        tail_deviation: dev,
        ratio_trace: trace,
    }
}

// ---------------------------------------------------------------------------
// Widom's finite-E formula
// ---------------------------------------------------------------------------

/// `E(φ) = G(φ)^a · det T_a(φ⁻¹)` for symbols with `φ_k = 0` for all `k > a`
/// (or the mirrored condition, handled through the transposed problem).
pub fn widom_finite_e(s: &Symbol, a: usize) -> Result<Complex64> {
    let (k_min, k_max) = s.band();
    let ai = a as i64;
    let work;
    if k_max <= ai {
        work = s.clone();
    } else if -k_min <= ai {
        work = s.reflected_transpose();
    } else {
        return Err(Error::BandCondition { band: (k_min, k_max), a: ai });
    }
    if a == 0 {
        // empty determinant: T(φ)T(φ⁻¹) = I
        return Ok(Complex64::new(1.0, 0.0));
    }
    let g = geometric_mean(&work)?;
    let inv = work.inverse(INVERSE_TOL)?;
    let det = build_toeplitz(&inv, a)?.log_det();
    Ok(g.powi(a as i64).mul(&det).value())
}

// ---------------------------------------------------------------------------
// modified asymptotics
// ---------------------------------------------------------------------------

/// `det` of the `n`-th Fourier coefficient of `φ⁻¹` — the prefactor in the
/// modified asymptotics `det T_n ~ G^n · det[(φ⁻¹)_n] · Ẽ(φ)`.
///
/// For block anti-diagonal symbols the literal `(φ⁻¹)_n` is structurally
/// singular: the two anti-diagonal blocks of `φ⁻¹` carry Fourier support on
/// opposite sides, so one of them vanishes identically at `+n`. In that case
/// each block is read at the index direction (`+n` or `-n`) where it actually
/// lives, which reduces to the literal formula whenever the symbol has no
/// anti-diagonal structure.
pub fn modified_prefactor(s: &Symbol, n: usize) -> Result<SignedLogValue> {
    let inv = s.inverse(INVERSE_TOL)?;
    modified_prefactor_with_inverse(s, &inv, n)
}

/// Same as [`modified_prefactor`] with a precomputed `φ⁻¹` series (the
/// scans reuse one inversion).
pub fn modified_prefactor_with_inverse(
    s: &Symbol,
    inv: &Symbol,
    n: usize,
) -> Result<SignedLogValue> {
    let ni = n as i64;
    let m = match s.anti_diagonal_split(1e-10) {
        None => coefficient_checked(inv, ni)?,
        Some((s1, s2)) => {
            let d12 = block_direction(inv, &s1, &s2);
            let d21 = block_direction(inv, &s2, &s1);
            let c_plus = coefficient_checked(inv, d12 * ni)?;
            let c_minus = coefficient_checked(inv, d21 * ni)?;
            let nb = inv.block_size();
            let mut m = crate::linalg::CMatrix::zeros(nb, nb);
            for &r in &s1 {
                for &c in &s2 {
                    m[(r, c)] = c_plus[(r, c)];
                }
            }
            for &r in &s2 {
                for &c in &s1 {
                    m[(r, c)] = c_minus[(r, c)];
                }
            }
            m
        }
    };
    Ok(linalg::log_det(&m))
}

/// Coefficient fetch that flags magnitudes below the truncation noise floor.
/// Absent indices are exact zeros (fine); present-but-noise ones are not.
fn coefficient_checked(inv: &Symbol, k: i64) -> Result<crate::linalg::CMatrix> {
    let c = inv.coefficient(k);
    let mag = mat_max_norm(&c);
    let floor = inv.tail_bound();
    if inv.has_coefficient(k) && mag > 0.0 && mag <= floor {
        return Err(Error::UnresolvedCoefficient { k, magnitude: mag, tail_bound: floor });
    }
    Ok(c)
}

/// Direction (`+1` or `-1`) in which the `rows × cols` block of the inverse
/// series carries its Fourier mass.
fn block_direction(inv: &Symbol, rows: &[usize], cols: &[usize]) -> i64 {
    let mut pos = 0.0;
    let mut neg = 0.0;
    for (k, m) in inv.coefficients() {
        if k == 0 {
            continue;
        }
        let mut w = 0.0;
        for &r in rows {
            for &c in cols {
                w += m[(r, c)].norm();
            }
        }
        if k > 0 {
            pos += w;
        } else {
            neg += w;
        }
    }
    if pos >= neg {
        1
    } else {
        -1
    }
}

/// Result of checking `det T_n ≈ G^n · prefactor(n) · Ẽ` over an `n`-scan.
#[derive(Debug, Clone)]
pub struct ModifiedAsymptotics {
    /// Fitted constant `Ẽ(φ)` (mean of the tail of `t_n`).
    pub e_tilde: Complex64,
    /// Relative deviation of the tail of `t_n` from `Ẽ`.
    pub max_tail_deviation: f64,
    /// The scan: `(n, t_n)` with `t_n = det T_n / (G^n · prefactor(n))`.
    pub trace: Vec<(usize, Complex64)>,
    /// `(n, prefactor(n))` in sign-tracked form.
    pub prefactors: Vec<(usize, SignedLogValue)>,
}

/// Verify the modified asymptotics on `n_range`. Preconditions: `E(φ) = 0`
/// per [`classify_e`] and exactly one predicted zero-mode pair.
pub fn verify_modified_asymptotics(s: &Symbol, n_range: &[usize]) -> Result<ModifiedAsymptotics> {
    if n_range.len() < 4 {
        return Err(Error::RangeTooShort { got: n_range.len(), need: 4 });
    }
    let scan: Vec<usize> = n_range.to_vec();
    let class = classify_e(s, &default_classify_range())?;
    if class.class != EClass::Zero {
        return Err(Error::ModifiedAsymptoticsPrecondition(format!(
            "classify_e returned {}, need zero",
            class.class.as_str()
        )));
    }
    let report = crate::topology::predict_zero_modes(s)?;
    match report.predicted_pairs {
        Some(1) => {}
        other => {
            return Err(Error::ModifiedAsymptoticsPrecondition(format!(
                "predicted zero-mode pairs = {other:?}, need exactly 1"
            )))
        }
    }
    modified_asymptotics_unchecked(s, &scan)
}

/// The scan itself, without the class/pair preconditions (used by callers
/// that have already established them).
pub fn modified_asymptotics_unchecked(
    s: &Symbol,
    n_range: &[usize],
) -> Result<ModifiedAsymptotics> {
    let g = geometric_mean(s)?;
    let inv = s.inverse(INVERSE_TOL)?;
    let mut trace = Vec::with_capacity(n_range.len());
    let mut prefs = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let pref = modified_prefactor_with_inverse(s, &inv, n)?;
        if pref.is_zero() {
            return Err(Error::PrefactorZero(n));
        }
        let det = build_toeplitz(s, n)?.log_det();
        let t_n = det.div(&g.powi(n as i64).mul(&pref));
        trace.push((n, t_n.value()));
        prefs.push((n, pref));
    }
    let tail_len = (trace.len() / 2).max(2);
    let tail = &trace[trace.len() - tail_len..];
    let mean = tail.iter().map(|(_, t)| t).sum::<Complex64>() / tail_len as f64;
    let mut dev: f64 = 0.0;
    for (_, t) in tail {
        dev = dev.max((t - mean).norm() / mean.norm().max(f64::MIN_POSITIVE));
    }
    Ok(ModifiedAsymptotics {
        e_tilde: mean,
        max_tail_deviation: dev,
        trace,
        prefactors: prefs,
    })
}

pub fn default_classify_range() -> Vec<usize> {
    (4..=24).collect()
}

// ---------------------------------------------------------------------------
// report assembly
// ---------------------------------------------------------------------------

/// Everything the determinant-asymptotics pipeline produces for one symbol.
#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub g: SignedLogValue,
    pub winding_det: i64,
    pub e_class: EClass,
    pub e_estimate: Complex64,
    pub tail_ratio: f64,
    pub ratio_trace: Vec<(usize, SignedLogValue)>,
    /// `(n, det[(φ⁻¹)_n])` when the modified route ran.
    pub modified_prefactors: Vec<(usize, SignedLogValue)>,
    pub e_tilde_estimate: Option<Complex64>,
    pub modified_tail_deviation: Option<f64>,
    pub t_trace: Vec<(usize, Complex64)>,
}

/// Run `G` → winding → `classify_e`, and the modified-asymptotics scan when
/// `E = 0` with exactly one predicted pair.
pub fn analyze_asymptotics(
    s: &Symbol,
    n_range: &[usize],
    predicted_pairs: Option<usize>,
) -> Result<AsymptoticsReport> {
    let g = geometric_mean(s)?;
    let winding_det = det_winding(s)?;
    let class = classify_e(s, n_range)?;
    let mut report = AsymptoticsReport {
        g,
        winding_det,
        e_class: class.class,
        e_estimate: class.e_estimate,
        tail_ratio: class.tail_ratio,
        ratio_trace: class.ratio_trace,
        modified_prefactors: vec![],
        e_tilde_estimate: None,
        modified_tail_deviation: None,
        t_trace: vec![],
    };
    if class.class == EClass::Zero && predicted_pairs == Some(1) {
        let ma = modified_asymptotics_unchecked(s, n_range)?;
        report.modified_prefactors = ma.prefactors;
        report.e_tilde_estimate = Some(ma.e_tilde);
        report.modified_tail_deviation = Some(ma.max_tail_deviation);
        report.t_trace = ma.trace;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1_symbol;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn winding_of_unit_rotation() {
        let samples: Vec<Complex64> = (0..64)
            .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 64.0))
            .collect();
        assert_eq!(winding_number(&samples).unwrap(), 1);
    }

    #[test]
    fn winding_of_double_loop_with_scale() {
        // 1 - u e^{-i2θ} with u=2 has winding -2
        let w = winding_number_of_fn(|t| {
            Complex64::new(1.0, 0.0) - Complex64::from_polar(2.0, -2.0 * t)
        })
        .unwrap();
        assert_eq!(w, -2);
    }

    #[test]
    fn winding_of_scalar_factor() {
        // λ = 1 - 2 e^{-iθ}: winding -1
        let w = winding_number_of_fn(|t| {
            Complex64::new(1.0, 0.0) - Complex64::from_polar(2.0, -t)
        })
        .unwrap();
        assert_eq!(w, -1);
    }

    #[test]
    fn winding_rejects_vanishing_samples() {
        let samples = vec![c(1.0), c(0.0), c(-1.0), c(0.5)];
        assert!(matches!(
            winding_number(&samples),
            Err(Error::VanishingSample)
        ));
    }

    #[test]
    fn geometric_mean_example1_outside() {
        // G = max(1, u²) = 4 for u=2
        let g = geometric_mean(&example1_symbol(2.0)).unwrap();
        assert!((g.log_abs - 4.0f64.ln()).abs() < 1e-10);
        assert!((g.phase.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn geometric_mean_example1_inside() {
        let g = geometric_mean(&example1_symbol(0.5)).unwrap();
        assert!(g.log_abs.abs() < 1e-10);
    }

    #[test]
    fn geometric_mean_of_constant_one() {
        let g = geometric_mean(&Symbol::constant(1, c(1.0))).unwrap();
        assert!(g.log_abs.abs() < 1e-12 && (g.phase.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_mean_jensen_property() {
        // Π (1 - r_j e^{-iθ}) with |r_j| < 1 has G = 1
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let roots: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.9..0.9)).collect();
            let s = Symbol::from_evaluator(
                |t| {
                    let mut v = Complex64::new(1.0, 0.0);
                    for &r in &roots {
                        v *= Complex64::new(1.0, 0.0) - Complex64::from_polar(r.abs(), -t) * r.signum();
                    }
                    crate::linalg::CMatrix::from_element(1, 1, v)
                },
                1,
                1e-12,
            )
            .unwrap();
            let g = geometric_mean(&s).unwrap();
            assert!(g.log_abs.abs() < 1e-10, "roots {roots:?}: {}", g.log_abs);
        }
    }

    #[test]
    fn geometric_mean_rejects_nonzero_winding() {
        // symbol e^{-iθ}: k=+1 coefficient 1 -> det winding -1
        let s = Symbol::from_coefficients(
            1,
            vec![(1, crate::linalg::CMatrix::from_element(1, 1, c(1.0)))],
        )
        .unwrap();
        assert!(matches!(
            geometric_mean(&s),
            Err(Error::NonzeroWinding(-1))
        ));
    }

    #[test]
    fn classify_nonzero_for_example1_inside() {
        let r: Vec<usize> = (4..=24).collect();
        let cl = classify_e(&example1_symbol(0.5), &r).unwrap();
        assert_eq!(cl.class, EClass::Nonzero);
        assert!((cl.e_estimate - c(1.0)).norm() < 1e-8);
    }

    #[test]
    fn classify_zero_for_example1_outside() {
        let r: Vec<usize> = (4..=24).collect();
        let cl = classify_e(&example1_symbol(2.0), &r).unwrap();
        assert_eq!(cl.class, EClass::Zero);
        assert!((cl.tail_ratio - 0.25).abs() < 0.01, "ratio {}", cl.tail_ratio);
    }

    #[test]
    fn classify_needs_six_points() {
        let r: Vec<usize> = (4..=8).collect();
        assert!(matches!(
            classify_e(&example1_symbol(0.5), &r),
            Err(Error::RangeTooShort { .. })
        ));
    }

    #[test]
    fn widom_finite_e_example1_both_sides() {
        let e_in = widom_finite_e(&example1_symbol(0.5), 1).unwrap();
        assert!((e_in - c(1.0)).norm() < 1e-8, "E(0.5) = {e_in}");
        let e_out = widom_finite_e(&example1_symbol(2.0), 1).unwrap();
        assert!(e_out.norm() < 1e-10, "E(2.0) = {e_out}");
    }

    #[test]
    fn widom_finite_e_constant_a0() {
        let s = Symbol::constant(1, c(3.0));
        assert!((widom_finite_e(&s, 0).unwrap() - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn widom_band_condition() {
        // band [-2, 2] with a=1 fails on both sides
        let mut terms = vec![(0, crate::linalg::CMatrix::from_element(1, 1, c(5.0)))];
        terms.push((2, crate::linalg::CMatrix::from_element(1, 1, c(0.1))));
        terms.push((-2, crate::linalg::CMatrix::from_element(1, 1, c(0.1))));
        let s = Symbol::from_coefficients(1, terms).unwrap();
        assert!(matches!(
            widom_finite_e(&s, 1),
            Err(Error::BandCondition { .. })
        ));
    }

    #[test]
    fn modified_prefactor_identity_is_exact_zero() {
        let s = Symbol::constant(2, c(1.0));
        let p = modified_prefactor(&s, 3).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn modified_prefactor_example1_combines_directions() {
        // G^n · prefactor(n) should stay ~1 for u=2 (det T_n = 1)
        let s = example1_symbol(2.0);
        let g = geometric_mean(&s).unwrap();
        for n in [4usize, 8, 12] {
            let p = modified_prefactor(&s, n).unwrap();
            let combined = g.powi(n as i64).mul(&p);
            assert!(
                (combined.value() - c(1.0)).norm() < 1e-6,
                "n={n}: {}",
                combined.value()
            );
        }
    }

    #[test]
    fn modified_asymptotics_guard_for_nonzero_e() {
        let r: Vec<usize> = (8..=16).collect();
        assert!(matches!(
            verify_modified_asymptotics(&example1_symbol(0.5), &r),
            Err(Error::ModifiedAsymptoticsPrecondition(_))
        ));
    }

    #[test]
    fn modified_asymptotics_example1_outside() {
        let r: Vec<usize> = (8..=16).collect();
        let ma = verify_modified_asymptotics(&example1_symbol(2.0), &r).unwrap();
        assert!(
            ma.max_tail_deviation < 0.01,
            "tail deviation {}",
            ma.max_tail_deviation
        );
        assert!((ma.e_tilde - c(1.0)).norm() < 1e-6, "Ẽ = {}", ma.e_tilde);
    }
}
