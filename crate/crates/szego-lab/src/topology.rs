//! Symmetry-class detection and the topological indices that count zero-mode
//! pairs.
//!
//! Three classes are recognized, all checked structurally on a grid:
//!
//! * **D** — real antisymmetric structure: `φ(e^{iθ}) = φ*(e^{-iθ}) = -φ†(e^{iθ})`.
//!   The ℤ₂ index `I_D = sgn[Pf φ(1) · Pf φ(-1)]` decides between zero and
//!   exactly one pair of zero modes.
//! * **BDI** — class D with an additional block anti-diagonal form whose
//!   off-diagonal block `B` has real coefficients; the pair count is
//!   `|winding(det B)|`.
//! * **AIII** — hermitian with block anti-diagonal form; pair count again
//!   `|winding(det B)|`.
//!
//! BDI is checked before D because BDI symbols satisfy the D conditions too
//! and the finer class carries the stronger (integer) index. Only
//! permutation-type basis changes are searched for the anti-diagonal form.

use crate::error::{Error, Result};
use crate::linalg;
use crate::symbol::{mat_max_norm, Symbol};

/// Grid tolerance for the symmetry checks.
pub const CLASS_TOL: f64 = 1e-10;
const CLASS_GRID: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    D,
    BDI,
    AIII,
    Unclassified,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::D => "D",
            ClassTag::BDI => "BDI",
            ClassTag::AIII => "AIII",
            ClassTag::Unclassified => "unclassified",
        }
    }
}

/// Detected symmetry class plus, for the anti-diagonal classes, the index
/// bipartition and the off-diagonal block symbol `B`.
#[derive(Debug, Clone)]
pub struct SymmetryClass {
    pub tag: ClassTag,
    /// `(S₁, S₂)` with `B` living on the `S₁×S₂` block; `S₁` contains index 0.
    pub basis_permutation: Option<(Vec<usize>, Vec<usize>)>,
    pub b_symbol: Option<Symbol>,
}

/// Index report: the class, whichever indices are defined for it, and the
/// predicted number of zero-mode pairs.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub class: SymmetryClass,
    /// Kitaev ℤ₂ index (class D, also computed for BDI).
    pub i_d: Option<i8>,
    /// Winding index `I_BDI` / `I_AIII`.
    pub i_winding: Option<i64>,
    pub predicted_pairs: Option<usize>,
}

fn grid_scale(s: &Symbol) -> f64 {
    s.coefficients()
        .map(|(_, m)| mat_max_norm(m))
        .fold(0.0, f64::max)
        .max(1.0)
}

/// `φ(e^{iθ}) = φ*(e^{-iθ})` — all Fourier coefficients real.
fn is_real_structure(s: &Symbol, tol: f64) -> bool {
    let scale = grid_scale(s);
    s.coefficients()
        .all(|(_, m)| m.iter().all(|z| z.im.abs() <= tol * scale))
}

/// `φ = -φ†` pointwise on the grid.
fn is_antihermitian(s: &Symbol, tol: f64) -> bool {
    let scale = grid_scale(s);
    (0..CLASS_GRID).all(|j| {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / CLASS_GRID as f64;
        let m = s.evaluate(theta);
        let dev = (&m + &m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        dev <= tol * scale
    })
}

/// `φ = φ†` pointwise on the grid.
fn is_hermitian(s: &Symbol, tol: f64) -> bool {
    let scale = grid_scale(s);
    (0..CLASS_GRID).all(|j| {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / CLASS_GRID as f64;
        let m = s.evaluate(theta);
        let dev = (&m - &m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        dev <= tol * scale
    })
}

/// Detect the symmetry class of a symbol. Falls through to `Unclassified`;
/// never errors.
pub fn detect_class(s: &Symbol) -> SymmetryClass {
    let real = is_real_structure(s, CLASS_TOL);
    let antiherm = is_antihermitian(s, CLASS_TOL);
    let split = s.anti_diagonal_split(CLASS_TOL);

    if real && antiherm {
        if let Some((s1, s2)) = &split {
            let b = s.sub_block(s1, s2);
            // BDI additionally needs B*(e^{-iθ}) = B(e^{iθ}): real B coefficients
            if is_real_structure(&b, CLASS_TOL) {
                return SymmetryClass {
                    tag: ClassTag::BDI,
                    basis_permutation: split.clone(),
                    b_symbol: Some(b),
                };
            }
        }
        return SymmetryClass { tag: ClassTag::D, basis_permutation: None, b_symbol: None };
    }
    if is_hermitian(s, CLASS_TOL) {
        if let Some((s1, s2)) = &split {
            let b = s.sub_block(s1, s2);
            return SymmetryClass {
                tag: ClassTag::AIII,
                basis_permutation: split.clone(),
                b_symbol: Some(b),
            };
        }
    }
    SymmetryClass { tag: ClassTag::Unclassified, basis_permutation: None, b_symbol: None }
}

/// Kitaev's ℤ₂ index `sgn[Pf φ(1) · Pf φ(-1)]`, both Pfaffians taken in the
/// same fixed basis (the stored coefficient basis). Requires the D-structure
/// conditions; defined for BDI symbols as well since they satisfy them.
pub fn kitaev_index(s: &Symbol) -> Result<i8> {
    let class = detect_class(s);
    if !matches!(class.tag, ClassTag::D | ClassTag::BDI) {
        return Err(Error::ClassRequired("D"));
    }
    let at_one = s.evaluate(0.0);
    let at_minus_one = s.evaluate(std::f64::consts::PI);
    let pf1 = linalg::pfaffian(&at_one)?;
    let pf2 = linalg::pfaffian(&at_minus_one)?;
    let scale = grid_scale(s);
    if pf1.abs() <= 1e-12 * scale || pf2.abs() <= 1e-12 * scale {
        return Err(Error::GaplessPoint);
    }
    Ok(if pf1 * pf2 > 0.0 { 1 } else { -1 })
}

/// Winding of `det B(e^{iθ})` for the anti-diagonal classes.
pub fn winding_index(s: &Symbol) -> Result<i64> {
    let class = detect_class(s);
    let b = class
        .b_symbol
        .as_ref()
        .ok_or(Error::ClassRequired("BDI or AIII"))?;
    crate::asymptotics::winding_number_of_fn(|theta| linalg::det(&b.evaluate(theta)))
}

/// Assemble the index report and the zero-mode pair prediction:
/// class D maps `I_D = +1 ↦ 0` pairs and `I_D = -1 ↦ 1` pair; the winding
/// classes predict `|I_winding|` pairs.
pub fn predict_zero_modes(s: &Symbol) -> Result<IndexReport> {
    let class = detect_class(s);
    let mut report = IndexReport {
        class: class.clone(),
        i_d: None,
        i_winding: None,
        predicted_pairs: None,
    };
    match class.tag {
        ClassTag::D => {
            let i_d = kitaev_index(s)?;
            report.i_d = Some(i_d);
            report.predicted_pairs = Some(if i_d == -1 { 1 } else { 0 });
        }
        ClassTag::BDI => {
            report.i_d = kitaev_index(s).ok();
            let w = winding_index(s)?;
            report.i_winding = Some(w);
            report.predicted_pairs = Some(w.unsigned_abs() as usize);
        }
        ClassTag::AIII => {
            let w = winding_index(s)?;
            report.i_winding = Some(w);
            report.predicted_pairs = Some(w.unsigned_abs() as usize);
        }
        ClassTag::Unclassified => {}
    }
    Ok(report)
}
