//! Locating zero modes in `T_n(φ)` spectra, their decay rates, wavefunctions
//! from one inverse-power step, and the cross-checks against the Fourier decay
//! of `φ⁻¹` and the roots of `det φ(z)`.
//!
//! The detection threshold is self-calibrating: an eigenvalue pair counts as a
//! zero-mode candidate when it falls below half the smallest circulant
//! eigenvalue magnitude at the same `n` (the circulant spectrum is the bulk
//! reference; for symbols whose band does not fit `[-n/2, n/2)` it is
//! evaluated in momentum space with the band truncated accordingly).

use num_complex::Complex64;

use crate::asymptotics::INVERSE_TOL;
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::matrices::{build_toeplitz, pair_magnitudes};
use crate::symbol::{mat_max_norm, Symbol};
use crate::wiener_hopf::{self, circulant_spectrum_spectral};

/// Fits ignore eigenvalues below this (double precision round-off floor).
pub const FIT_EPS_FLOOR: f64 = 1e-12;
/// Hard underflow guard for the scan.
pub const UNDERFLOW_EPS: f64 = 1e-13;

/// Everything one zero-mode scan produces.
#[derive(Debug, Clone)]
pub struct ZeroModeReport {
    pub n_values: Vec<usize>,
    /// Per `n`: the smallest pair magnitudes `ε₁ ≤ ε₂ ≤ …` (a fixed number of
    /// pairs per row, enough to cover the candidates plus one bulk reference).
    pub epsilons: Vec<Vec<f64>>,
    /// Per `n`: smallest circulant eigenvalue magnitude (the bulk gap).
    pub circulant_gaps: Vec<f64>,
    /// Pairs below half the circulant gap at every scanned `n`.
    pub pair_count: usize,
    /// Least-squares slope of `log ε` vs `n`, averaged over the persistent
    /// pairs (`None` when there are none).
    pub fitted_rate: Option<f64>,
    /// Normalized zero-mode wavefunction from power iteration at the largest
    /// `n` (`None` when there is no zero mode).
    pub wavefunction: Option<Vec<Complex64>>,
    /// Slope of `log‖(φ⁻¹)_k‖` vs `k` (`None` if the inverse has no usable
    /// coefficient decay to fit, e.g. for the identity).
    pub coeff_decay_rate: Option<f64>,
    /// `|log|z*||` of the root of `det φ(z)` nearest the unit circle
    /// (banded symbols only).
    pub root_gap: Option<f64>,
}

/// Gap of the symbol: smallest singular value of `φ(e^{iθ})` over a grid.
pub fn symbol_gap(s: &Symbol) -> (f64, f64) {
    let grid = 512;
    let mut min_sv = f64::INFINITY;
    let mut at_theta = 0.0;
    for j in 0..grid {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / grid as f64;
        let sv = s.evaluate(theta).singular_values();
        let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if smallest < min_sv {
            min_sv = smallest;
            at_theta = theta;
        }
    }
    (min_sv, at_theta)
}

/// Scan `T_n(φ)` spectra over `n_range` and report the zero modes.
pub fn zero_mode_scan(s: &Symbol, n_range: &[usize]) -> Result<ZeroModeReport> {
    assert!(!n_range.is_empty());
    let (gap, at_theta) = symbol_gap(s);
    if gap < 1e-12 {
        return Err(Error::GaplessSymbol { theta: at_theta });
    }

    let mut per_n_pairs: Vec<Vec<f64>> = Vec::with_capacity(n_range.len());
    let mut gaps = Vec::with_capacity(n_range.len());
    let mut candidate_counts = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let spec = build_toeplitz(s, n)?.spectrum()?;
        let pairs = pair_magnitudes(&spec);
        let circ = circulant_spectrum_spectral(s, n)?;
        let circ_gap = circ.first().map(|z| z.norm()).unwrap_or(0.0);
        let cand = pairs.iter().filter(|&&e| e < 0.5 * circ_gap).count();
        per_n_pairs.push(pairs);
        gaps.push(circ_gap);
        candidate_counts.push(cand);
    }
    let pair_count = *candidate_counts.iter().min().unwrap();

    if pair_count > 0 {
        let n_last = *n_range.last().unwrap();
        let idx_last = n_range.len() - 1;
        let smallest = per_n_pairs[idx_last][0];
        if smallest < UNDERFLOW_EPS {
            return Err(Error::EigenvalueUnderflow { n: n_last, eps: smallest });
        }
    }

    // per-pair decay fits on log ε vs n, then averaged
    let fitted_rate = if pair_count > 0 {
        let mut slopes = Vec::new();
        for j in 0..pair_count {
            let pts: Vec<(f64, f64)> = n_range
                .iter()
                .zip(per_n_pairs.iter())
                .filter(|(_, pairs)| pairs[j] > FIT_EPS_FLOOR)
                .map(|(&n, pairs)| (n as f64, pairs[j].ln()))
                .collect();
            if pts.len() >= 2 {
                slopes.push(least_squares_slope(&pts));
            }
        }
        if slopes.is_empty() {
            None
        } else {
            Some(slopes.iter().sum::<f64>() / slopes.len() as f64)
        }
    } else {
        None
    };

    let wavefunction = if pair_count > 0 {
        let n_top = *n_range.last().unwrap();
        power_iteration_mode(s, n_top, n_top / 2)
            .ok()
            .map(|r| r.vector.iter().cloned().collect())
    } else {
        None
    };

    let coeff_decay_rate = inverse_coefficient_decay(s, 12).ok().map(|d| d.rate);
    let root_gap = root_analysis(s)
        .ok()
        .and_then(|roots| roots.first().map(|r| r.1));

    // keep a uniform number of pair columns: candidates plus one bulk pair
    let keep = (pair_count + 1).min(per_n_pairs.iter().map(|p| p.len()).min().unwrap_or(1));
    let epsilons = per_n_pairs
        .into_iter()
        .map(|mut p| {
            p.truncate(keep);
            p
        })
        .collect();

    Ok(ZeroModeReport {
        n_values: n_range.to_vec(),
        epsilons,
        circulant_gaps: gaps,
        pair_count,
        fitted_rate,
        wavefunction,
        coeff_decay_rate,
        root_gap,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// One inverse-power step at block site `seed_site`.
#[derive(Debug, Clone)]
pub struct PowerIterationResult {
    /// Normalized `v₁ = T_n(φ)⁻¹ e_seed`.
    pub vector: CVector,
    /// Rayleigh-quotient eigenvalue estimate `v₁† T v₁` (identically zero for
    /// real antisymmetric `T` with real `v₁`).
    pub rayleigh: Complex64,
    /// `‖T v₁‖`: the magnitude estimate for the mode pair.
    pub eps_estimate: f64,
    /// `‖T v₁ - λ v₁‖` with `λ` the Rayleigh estimate.
    pub residual: f64,
    /// Seed actually used (flat index into the `nN` basis).
    pub seed_index: usize,
}

/// Build the zero-mode wavefunction by a single application of `T_n(φ)⁻¹` to
/// a basis seed. The seed defaults to block site `n/2`; within the site, the
/// internal component with the largest response wins, and neighbouring sites
/// are tried when a seed has negligible overlap with the mode.
pub fn power_iteration_mode(s: &Symbol, n: usize, seed_site: usize) -> Result<PowerIterationResult> {
    let t = build_toeplitz(s, n)?;
    let lu = t.lu();
    let nb = s.block_size();
    let rows = n * nb;
    let site = seed_site.min(n - 1);

    // visit sites outward from the requested one
    let mut sites = vec![site];
    for d in 1..n {
        if site >= d {
            sites.push(site - d);
        }
        if site + d < n {
            sites.push(site + d);
        }
    }

    let mut best: Option<(f64, usize, CVector)> = None;
    let mut attempts = 0usize;
    for &sj in &sites {
        for a in 0..nb {
            let idx = sj * nb + a;
            let mut e = CVector::zeros(rows);
            e[idx] = Complex64::new(1.0, 0.0);
            attempts += 1;
            let x = match lu.solve(&e) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let response = x.norm();
            if best.as_ref().map(|(r, _, _)| response > *r).unwrap_or(true) {
                best = Some((response, idx, x));
            }
        }
        // the default site already separates mode from bulk by a factor
        // 1/ε·amplitude; one extra ring of sites is plenty
        if attempts >= 4 * nb && best.is_some() {
            break;
        }
    }
    let (_, seed_index, x) =
        best.ok_or(Error::SeedExhausted { attempts })?;
    let v = &x / Complex64::new(x.norm(), 0.0);
    let tv = &t.data * &v;
    let rayleigh = v.dotc(&tv);
    let residual = (&tv - &v * rayleigh).norm();
    Ok(PowerIterationResult {
        eps_estimate: tv.norm(),
        vector: v,
        rayleigh,
        residual,
        seed_index,
    })
}

/// Decay of the Fourier coefficients of `φ⁻¹`.
#[derive(Debug, Clone)]
pub struct InverseDecay {
    /// Slope of `log‖(φ⁻¹)_k‖` vs `k` over usable positive `k`.
    pub rate: f64,
    /// Per-entry slopes (NaN where an entry has fewer than 4 usable points);
    /// structured symbols can have entries decaying on one side only.
    pub per_entry_rates: Vec<Vec<f64>>,
    pub usable_points: usize,
}

/// Least-squares fit of the coefficient decay of `φ⁻¹` over `k = 1..k_max`.
/// Only magnitudes above `10× tail_bound` enter the fit.
pub fn inverse_coefficient_decay(s: &Symbol, k_max: usize) -> Result<InverseDecay> {
    let inv = s.inverse(INVERSE_TOL)?;
    inverse_coefficient_decay_of(&inv, k_max)
}

/// Same on a precomputed inverse series.
pub fn inverse_coefficient_decay_of(inv: &Symbol, k_max: usize) -> Result<InverseDecay> {
    let floor = (inv.tail_bound() * 10.0).max(1e-280);
    let nb = inv.block_size();
    let mut pts = Vec::new();
    for k in 1..=k_max as i64 {
        let norm = mat_max_norm(&inv.coefficient(k));
        if norm > floor {
            pts.push((k as f64, norm.ln()));
        }
    }
    if pts.len() < 4 {
        return Err(Error::TooFewPoints { got: pts.len() });
    }
    let rate = least_squares_slope(&pts);
    let mut per_entry = vec![vec![f64::NAN; nb]; nb];
    for a in 0..nb {
        for b in 0..nb {
            let entry_pts: Vec<(f64, f64)> = (1..=k_max as i64)
                .filter_map(|k| {
                    let v = inv.coefficient(k)[(a, b)].norm();
                    (v > floor).then(|| (k as f64, v.ln()))
                })
                .collect();
            if entry_pts.len() >= 4 {
                per_entry[a][b] = least_squares_slope(&entry_pts);
            }
        }
    }
    Ok(InverseDecay { rate, per_entry_rates: per_entry, usable_points: pts.len() })
}

/// Roots of `det φ(z)` for a banded symbol, sorted by `|log|z||` ascending.
/// The first entry is the root nearest the unit circle; its `|log|z||`
/// predicts the zero-mode decay rate.
pub fn root_analysis(s: &Symbol) -> Result<Vec<(Complex64, f64)>> {
    let p = wiener_hopf::laurent_det(s)?;
    let roots = p.roots()?;
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let log_dist = r.norm().ln().abs();
        if log_dist < 1e-8 {
            return Err(Error::RootOnCircle { root_abs: r.norm() });
        }
        out.push((r, log_dist));
    }
    out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1_symbol;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn scan_example1_inside_finds_no_modes() {
        let r: Vec<usize> = (6..=12).collect();
        let rep = zero_mode_scan(&example1_symbol(0.5), &r).unwrap();
        assert_eq!(rep.pair_count, 0);
        assert!(rep.fitted_rate.is_none());
    }

    #[test]
    fn scan_example1_outside_finds_one_pair_with_rate() {
        let r: Vec<usize> = (6..=14).collect();
        let rep = zero_mode_scan(&example1_symbol(2.0), &r).unwrap();
        assert_eq!(rep.pair_count, 1);
        let rate = rep.fitted_rate.unwrap();
        // ε ~ u^{-n}: slope = -ln 2
        assert!((rate + 2.0f64.ln()).abs() < 0.05 * 2.0f64.ln(), "rate {rate}");
        // consistency triangle: coefficient decay and root gap agree
        let cd = rep.coeff_decay_rate.unwrap();
        assert!((cd.abs() - 2.0f64.ln()).abs() < 0.05 * 2.0f64.ln(), "coeff {cd}");
        let rg = rep.root_gap.unwrap();
        assert!((rg - 2.0f64.ln()).abs() < 1e-8, "root gap {rg}");
    }

    #[test]
    fn power_iteration_on_identity() {
        let s = Symbol::constant(1, c(1.0));
        let r = power_iteration_mode(&s, 6, 3).unwrap();
        assert!(r.residual < 1e-12);
        assert!((r.rayleigh - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn power_iteration_without_mode_reports_bulk_eigenvalue() {
        // no zero mode: the estimate stays at the bulk scale, not an error
        let s = example1_symbol(0.5);
        let r = power_iteration_mode(&s, 10, 5).unwrap();
        assert!(r.eps_estimate > 0.1, "eps {}", r.eps_estimate);
    }

    #[test]
    fn inverse_decay_example1_outside() {
        let d = inverse_coefficient_decay(&example1_symbol(2.0), 12).unwrap();
        assert!((d.rate + 2.0f64.ln()).abs() < 0.02, "rate {}", d.rate);
        // upper-right entry decays at the same rate; lower-left lives on the
        // negative side and has no usable positive-k points
        assert!((d.per_entry_rates[0][1] + 2.0f64.ln()).abs() < 0.02);
        assert!(d.per_entry_rates[1][0].is_nan());
    }

    #[test]
    fn inverse_decay_identity_errors() {
        let s = Symbol::constant(2, c(1.0));
        assert!(matches!(
            inverse_coefficient_decay(&s, 10),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn root_analysis_example1() {
        let roots = root_analysis(&example1_symbol(2.0)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].1 - 2.0f64.ln()).abs() < 1e-9);
        assert!((roots[1].1 - 2.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn root_analysis_scalar() {
        // 1 - 0.5 e^{-iθ}: root at z = 0.5
        let one = c(1.0);
        let s = Symbol::from_coefficients(
            1,
            vec![
                (0, crate::linalg::CMatrix::from_element(1, 1, one)),
                (1, crate::linalg::CMatrix::from_element(1, 1, c(-0.5))),
            ],
        )
        .unwrap();
        let roots = root_analysis(&s).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].0 - c(0.5)).norm() < 1e-10);
    }

    #[test]
    fn root_analysis_rejects_sampled_symbols() {
        let base = example1_symbol(2.0);
        let sampled = Symbol::from_evaluator(|t| base.evaluate(t), 2, 1e-10).unwrap();
        assert!(matches!(root_analysis(&sampled), Err(Error::NotBanded)));
    }

    #[test]
    fn scan_rejects_gapless_symbol() {
        // 1 - e^{-iθ} vanishes at θ = 0
        let s = Symbol::from_coefficients(
            1,
            vec![
                (0, crate::linalg::CMatrix::from_element(1, 1, c(1.0))),
                (1, crate::linalg::CMatrix::from_element(1, 1, c(-1.0))),
            ],
        )
        .unwrap();
        let r: Vec<usize> = (6..=12).collect();
        assert!(matches!(
            zero_mode_scan(&s, &r),
            Err(Error::GaplessSymbol { .. })
        ));
    }
}
