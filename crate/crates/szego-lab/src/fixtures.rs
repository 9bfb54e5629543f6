//! The four built-in example families, shipped with closed-form determinant
//! and `G` oracles, expected symmetry/index data, explicit multiplicative
//! factorizations (where known) and the scalar split used by the winding
//! theorem tests.
//!
//! * `example1`  — `2×2` anti-diagonal, `B = 1 - u e^{-iθ}` (class BDI);
//!   `det T_n = 1` for every `n`, `G = max(1, u²)`.
//! * `example1b` — same with `θ → 2θ`: `B = 1 - u e^{-i2θ}`, winding `-2` in
//!   the topological phase, two zero-mode pairs; `det T_n = 1`.
//! * `example2`  — rational class-D symbol with parameters `u, v`;
//!   `det T_n = u^{2n}`, `G = max(u², v²)`, `I_D = sign(u - v)`.
//! * `example3`  — hermitian anti-diagonal with complex `ζ` (class AIII);
//!   `det T_n = (-1)^n`, `|G| = max(1, |ζ|²)` with negative sign.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::signed_log::SignedLogValue;
use crate::symbol::{mat_max_norm, Symbol};
use crate::topology::ClassTag;
use crate::wiener_hopf::LaurentPoly;

type MatrixEval = Box<dyn Fn(f64) -> CMatrix + Send + Sync>;

/// Closed-form `det T_n` for the fixture families.
#[derive(Debug, Clone, Copy)]
pub enum DetOracle {
    /// `det T_n = 1`.
    One,
    /// `det T_n = (-1)^n`.
    AlternatingSign,
    /// `det T_n = u^{2n}`.
    UPow2n { u: f64 },
}

impl DetOracle {
    pub fn eval(&self, n: usize) -> SignedLogValue {
        match self {
            DetOracle::One => SignedLogValue::ONE,
            DetOracle::AlternatingSign => {
                let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
                SignedLogValue::from_real(sign)
            }
            DetOracle::UPow2n { u } => {
                SignedLogValue::new(2.0 * n as f64 * u.ln(), Complex64::new(1.0, 0.0))
            }
        }
    }
}

/// Expected class and index data, used by tests and reported by the CLI.
#[derive(Debug, Clone)]
pub struct ExpectedIndices {
    pub class: ClassTag,
    pub i_d: Option<i8>,
    pub i_winding: Option<i64>,
    pub predicted_pairs: usize,
}

/// Analyticity side of a stored factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSide {
    /// Fourier support on `k ≤ 0` (nonnegative powers of `z`): analytic and
    /// invertible inside the disk.
    Plus,
    /// Fourier support on `k ≥ 0`: analytic and invertible outside.
    Minus,
    /// Constant matrix.
    Constant,
    /// Pure winding factor (diagonal of `e^{±ipθ}`); no support condition.
    WindingDiagonal,
}

pub struct FixtureFactor {
    pub label: &'static str,
    pub side: FactorSide,
    pub eval: MatrixEval,
}

pub struct Factorization {
    pub factors: Vec<FixtureFactor>,
}

/// One parameterized example family instance.
pub struct ExampleFixture {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub symbol: Symbol,
    /// Exact evaluator (rational families); the symbol is its sampled form.
    pub exact_eval: Option<MatrixEval>,
    pub det_oracle: DetOracle,
    /// Closed-form `G` including its sign.
    pub g_oracle: SignedLogValue,
    pub expected: ExpectedIndices,
    pub factorization: Option<Factorization>,
    /// The two scalar factors `(λ, ψ)` of the anti-diagonal split, where
    /// `det T_n(φ) = (-1)^n det T_n(λ) det T_n(ψ)`.
    pub scalar_split: Option<(LaurentPoly, LaurentPoly)>,
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn e(theta: f64, mult: f64) -> Complex64 {
    Complex64::from_polar(1.0, mult * theta)
}

/// Example 1 symbol: `[[0, 1-u e^{-iθ}], [-1+u e^{iθ}, 0]]`.
pub fn example1_symbol(u: f64) -> Symbol {
    let z = cx(0.0);
    Symbol::from_coefficients(
        2,
        vec![
            (0, CMatrix::from_row_slice(2, 2, &[z, cx(1.0), cx(-1.0), z])),
            (1, CMatrix::from_row_slice(2, 2, &[z, cx(-u), z, z])),
            (-1, CMatrix::from_row_slice(2, 2, &[z, z, cx(u), z])),
        ],
    )
    .unwrap()
}

/// Example 1b symbol: `θ → 2θ` variant of example 1.
pub fn example1b_symbol(u: f64) -> Symbol {
    let z = cx(0.0);
    Symbol::from_coefficients(
        2,
        vec![
            (0, CMatrix::from_row_slice(2, 2, &[z, cx(1.0), cx(-1.0), z])),
            (2, CMatrix::from_row_slice(2, 2, &[z, cx(-u), z, z])),
            (-2, CMatrix::from_row_slice(2, 2, &[z, z, cx(u), z])),
        ],
    )
    .unwrap()
}

/// Example 3 symbol: `[[0, 1+ζ* e^{-iθ}], [1+ζ e^{iθ}, 0]]`.
pub fn example3_symbol(zeta: Complex64) -> Symbol {
    let z = cx(0.0);
    Symbol::from_coefficients(
        2,
        vec![
            (0, CMatrix::from_row_slice(2, 2, &[z, cx(1.0), cx(1.0), z])),
            (1, CMatrix::from_row_slice(2, 2, &[z, zeta.conj(), z, z])),
            (-1, CMatrix::from_row_slice(2, 2, &[z, z, zeta, z])),
        ],
    )
    .unwrap()
}

/// Example 2 evaluator: the rational class-D symbol with parameters `u, v`,
/// in the sign convention whose block Toeplitz matrix has zero-lag block
/// `[[0, u], [-u, 0]]`.
pub fn example2_eval(u: f64, v: f64) -> impl Fn(f64) -> CMatrix + Send + Sync + Clone {
    move |theta: f64| {
        let rho = 1.0 / ((u * v + 1.0 / (u * v)) / 2.0 - theta.cos());
        let s = Complex64::new(0.0, theta.sin());
        let b = cx((v + 1.0 / v) / 2.0) - e(theta, -1.0) * ((u + 1.0 / u) / 2.0);
        let c = -cx((v + 1.0 / v) / 2.0) + e(theta, 1.0) * ((u + 1.0 / u) / 2.0);
        CMatrix::from_row_slice(2, 2, &[s, b, c, s]) * cx(rho)
    }
}

/// Sampling tolerance used to turn the rational example-2 evaluator into a
/// coefficient list.
pub const EXAMPLE2_TOL: f64 = 1e-12;

fn example1_fixture(u: f64) -> Result<ExampleFixture> {
    if (u - 1.0).abs() < 1e-12 || (u + 1.0).abs() < 1e-12 {
        return Err(Error::ConstraintViolation(
            "example1 requires u ∉ {-1, 1} (the symbol is gapless there)".into(),
        ));
    }
    let topological = u.abs() > 1.0;
    Ok(ExampleFixture {
        name: "example1".into(),
        params: vec![("u".into(), u)],
        symbol: example1_symbol(u),
        exact_eval: None,
        det_oracle: DetOracle::One,
        g_oracle: SignedLogValue::from_real(1.0f64.max(u * u)),
        expected: ExpectedIndices {
            class: ClassTag::BDI,
            i_d: Some(if topological { -1 } else { 1 }),
            i_winding: Some(if topological { -1 } else { 0 }),
            predicted_pairs: usize::from(topological),
        },
        factorization: None,
        scalar_split: Some((
            // λ = 1 - u e^{-iθ} = 1 - u/z
            LaurentPoly::from_terms(&[(0, cx(1.0)), (-1, cx(-u))]),
            // ψ = -1 + u e^{iθ} = -1 + u z
            LaurentPoly::from_terms(&[(0, cx(-1.0)), (1, cx(u))]),
        )),
    })
}

fn example1b_fixture(u: f64) -> Result<ExampleFixture> {
    if (u - 1.0).abs() < 1e-12 || (u + 1.0).abs() < 1e-12 {
        return Err(Error::ConstraintViolation(
            "example1b requires u ∉ {-1, 1} (the symbol is gapless there)".into(),
        ));
    }
    let topological = u.abs() > 1.0;
    let factors = vec![
        FixtureFactor {
            label: "P1",
            side: FactorSide::Minus,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(
                    2,
                    2,
                    &[cx(1.0), cx(0.0), cx(0.0), cx(1.0) - e(t, -2.0) / u],
                )
            }),
        },
        FixtureFactor {
            label: "P2",
            side: FactorSide::Constant,
            eval: Box::new(move |_| {
                CMatrix::from_row_slice(2, 2, &[cx(0.0), cx(u), cx(u), cx(0.0)])
            }),
        },
        FixtureFactor {
            label: "P3",
            side: FactorSide::WindingDiagonal,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(2, 2, &[e(t, 2.0), cx(0.0), cx(0.0), e(t, -2.0)])
            }),
        },
        FixtureFactor {
            label: "P4",
            side: FactorSide::Plus,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(
                    2,
                    2,
                    &[cx(1.0), cx(0.0), cx(0.0), cx(-1.0) + e(t, 2.0) / u],
                )
            }),
        },
    ];
    Ok(ExampleFixture {
        name: "example1b".into(),
        params: vec![("u".into(), u)],
        symbol: example1b_symbol(u),
        exact_eval: None,
        det_oracle: DetOracle::One,
        g_oracle: SignedLogValue::from_real(1.0f64.max(u * u)),
        expected: ExpectedIndices {
            class: ClassTag::BDI,
            i_d: Some(1),
            i_winding: Some(if topological { -2 } else { 0 }),
            predicted_pairs: if topological { 2 } else { 0 },
        },
        factorization: Some(Factorization { factors }),
        scalar_split: Some((
            LaurentPoly::from_terms(&[(0, cx(1.0)), (-2, cx(-u))]),
            LaurentPoly::from_terms(&[(0, cx(-1.0)), (2, cx(u))]),
        )),
    })
}

fn example2_fixture(u: f64, v: f64) -> Result<ExampleFixture> {
    if u <= 0.0 || v <= 0.0 {
        return Err(Error::ConstraintViolation(
            "example2 requires u > 0 and v > 0".into(),
        ));
    }
    if u * v >= 1.0 {
        return Err(Error::ConstraintViolation("example2 requires u·v < 1".into()));
    }
    if (u - v).abs() < 1e-12 {
        return Err(Error::ConstraintViolation(
            "example2 requires u ≠ v (det φ vanishes on the circle at u = v)".into(),
        ));
    }
    let eval = example2_eval(u, v);
    let symbol = Symbol::from_evaluator(eval.clone(), 2, EXAMPLE2_TOL)?;

    // φ = φ₊ · D · φ₋ with D = diag(e^{-iθ}, e^{iθ}); valid in the u < v
    // phase. The prefactor sign follows the evaluator's convention above.
    let phi_plus: MatrixEval = Box::new(move |t| {
        let pref = cx(2.0 * v * u) / (cx(1.0) - e(t, 1.0) * (u * v));
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                (e(t, 2.0) - cx(1.0)) / cx(2.0),
                cx(1.0 / (2.0 * u * v)),
                e(t, 2.0) / cx(2.0) * (1.0 / u + u) - e(t, 1.0) / cx(2.0) * (1.0 / v + v),
                cx(1.0 / (2.0 * u * u * v)),
            ],
        );
        m * pref
    });
    let d_mid: MatrixEval = Box::new(move |t| {
        CMatrix::from_row_slice(2, 2, &[e(t, -1.0), cx(0.0), cx(0.0), e(t, 1.0)])
    });
    let phi_minus: MatrixEval = Box::new(move |t| {
        let pref = cx(1.0) / (cx(1.0) - e(t, -1.0) * (u * v));
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                cx(1.0),
                cx(1.0 / u),
                cx(0.0),
                (cx(1.0) - e(t, -1.0) * (u * v)) * (e(t, -1.0) * u - cx(v)),
            ],
        );
        m * pref
    });

    Ok(ExampleFixture {
        name: "example2".into(),
        params: vec![("u".into(), u), ("v".into(), v)],
        symbol,
        exact_eval: Some(Box::new(eval)),
        det_oracle: DetOracle::UPow2n { u },
        g_oracle: SignedLogValue::from_real((u * u).max(v * v)),
        expected: ExpectedIndices {
            class: ClassTag::D,
            i_d: Some(if u > v { 1 } else { -1 }),
            i_winding: None,
            predicted_pairs: usize::from(u < v),
        },
        factorization: Some(Factorization {
            factors: vec![
                FixtureFactor { label: "phi_plus", side: FactorSide::Plus, eval: phi_plus },
                FixtureFactor { label: "D", side: FactorSide::WindingDiagonal, eval: d_mid },
                FixtureFactor { label: "phi_minus", side: FactorSide::Minus, eval: phi_minus },
            ],
        }),
        scalar_split: None,
    })
}

fn example3_fixture(zeta: Complex64) -> Result<ExampleFixture> {
    if (zeta.norm() - 1.0).abs() < 1e-12 {
        return Err(Error::ConstraintViolation(
            "example3 requires |ζ| ≠ 1 (the symbol is gapless on that circle)".into(),
        ));
    }
    if zeta.norm() == 0.0 {
        // the factorization divides by ζ; the symbol itself is fine but the
        // circle |ζ|=0 carries no topological content either way
        return Err(Error::ConstraintViolation("example3 requires ζ ≠ 0".into()));
    }
    let topological = zeta.norm() > 1.0;
    // analog of the example-1b product with 2θ replaced by θ:
    // P1 = diag(1, 1 + e^{-iθ}/ζ), P2 = [[0, ζ], [ζ, 0]],
    // P3 = diag(e^{iθ}, e^{-iθ}), P4 = diag(1, (e^{iθ} + ζ*)/ζ)
    let factors = vec![
        FixtureFactor {
            label: "P1",
            side: FactorSide::Minus,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(
                    2,
                    2,
                    &[cx(1.0), cx(0.0), cx(0.0), cx(1.0) + e(t, -1.0) / zeta],
                )
            }),
        },
        FixtureFactor {
            label: "P2",
            side: FactorSide::Constant,
            eval: Box::new(move |_| {
                CMatrix::from_row_slice(2, 2, &[cx(0.0), zeta, zeta, cx(0.0)])
            }),
        },
        FixtureFactor {
            label: "P3",
            side: FactorSide::WindingDiagonal,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(2, 2, &[e(t, 1.0), cx(0.0), cx(0.0), e(t, -1.0)])
            }),
        },
        FixtureFactor {
            label: "P4",
            side: FactorSide::Plus,
            eval: Box::new(move |t| {
                CMatrix::from_row_slice(
                    2,
                    2,
                    &[cx(1.0), cx(0.0), cx(0.0), (e(t, 1.0) + zeta.conj()) / zeta],
                )
            }),
        },
    ];
    Ok(ExampleFixture {
        name: "example3".into(),
        params: vec![("zeta_re".into(), zeta.re), ("zeta_im".into(), zeta.im)],
        symbol: example3_symbol(zeta),
        exact_eval: None,
        det_oracle: DetOracle::AlternatingSign,
        g_oracle: SignedLogValue::new(
            1.0f64.max(zeta.norm_sqr()).ln(),
            Complex64::new(-1.0, 0.0),
        ),
        expected: ExpectedIndices {
            class: ClassTag::AIII,
            i_d: None,
            i_winding: Some(if topological { -1 } else { 0 }),
            predicted_pairs: usize::from(topological),
        },
        factorization: Some(Factorization { factors }),
        scalar_split: None,
    })
}

/// Build a fixture by name with named parameters. Recognized keys: `u`, `v`,
/// `zeta` (real shorthand), `zeta_re`, `zeta_im`.
pub fn make_fixture(name: &str, params: &BTreeMap<String, f64>) -> Result<ExampleFixture> {
    let get = |key: &str, default: Option<f64>| -> Result<f64> {
        params.get(key).cloned().or(default).ok_or_else(|| {
            Error::ConstraintViolation(format!("missing parameter `{key}` for {name}"))
        })
    };
    match name {
        "example1" => example1_fixture(get("u", None)?),
        "example1b" => example1b_fixture(get("u", None)?),
        "example2" => example2_fixture(get("u", None)?, get("v", None)?),
        "example3" => {
            let re = params
                .get("zeta_re")
                .or_else(|| params.get("zeta"))
                .cloned()
                .ok_or_else(|| {
                    Error::ConstraintViolation("missing parameter `zeta` for example3".into())
                })?;
            let im = get("zeta_im", Some(0.0))?;
            example3_fixture(Complex64::new(re, im))
        }
        other => Err(Error::ConstraintViolation(format!(
            "unknown example `{other}` (built-ins: example1, example1b, example2, example3)"
        ))),
    }
}

pub const FIXTURE_NAMES: [&str; 4] = ["example1", "example1b", "example2", "example3"];

/// Result of checking a stored factorization against its symbol.
#[derive(Debug, Clone)]
pub struct FactorizationCheck {
    /// Max-norm residual of `Π factors - φ` over the grid.
    pub max_residual: f64,
    /// Largest Fourier mass found on the forbidden side of any factor or its
    /// pointwise inverse.
    pub max_support_leak: f64,
}

/// Verify `Π factors = φ` pointwise on a grid of `grid_size` points, and
/// check the declared analyticity side of every factor (and of its pointwise
/// inverse) through the Fourier support of its samples.
pub fn verify_factorization(f: &ExampleFixture, grid_size: usize) -> Result<FactorizationCheck> {
    let fact = f
        .factorization
        .as_ref()
        .ok_or(Error::MissingFactorization(match f.name.as_str() {
            "example1" => "example1",
            "example1b" => "example1b",
            "example2" => "example2",
            _ => "example3",
        }))?;
    assert!(grid_size.is_power_of_two());
    let mut max_residual: f64 = 0.0;
    for j in 0..grid_size {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / grid_size as f64;
        let mut prod = CMatrix::identity(f.symbol.block_size(), f.symbol.block_size());
        for factor in &fact.factors {
            prod = prod * (factor.eval)(theta);
        }
        let target = match &f.exact_eval {
            Some(ev) => ev(theta),
            None => f.symbol.evaluate(theta),
        };
        max_residual = max_residual.max(mat_max_norm(&(prod - target)));
    }

    let mut max_leak: f64 = 0.0;
    for factor in &fact.factors {
        let sides: &[bool] = match factor.side {
            FactorSide::WindingDiagonal => continue,
            _ => &[false, true],
        };
        for &inverted in sides {
            let series = Symbol::from_fallible_evaluator(
                |theta| {
                    let m = (factor.eval)(theta);
                    if inverted {
                        crate::linalg::inverse(&m)
                            .map_err(|_| Error::SingularSample { theta, det_abs: 0.0 })
                    } else {
                        Ok(m)
                    }
                },
                f.symbol.block_size(),
                1e-10,
            )?;
            let leak = support_leak(&series, factor.side);
            max_leak = max_leak.max(leak);
        }
    }
    Ok(FactorizationCheck { max_residual, max_support_leak: max_leak })
}

/// Fourier mass on the side forbidden by the declared factor type.
/// `Plus` factors live on `k ≤ 0`, `Minus` factors on `k ≥ 0`,
/// constants on `k = 0`.
fn support_leak(series: &Symbol, side: FactorSide) -> f64 {
    let mut leak: f64 = 0.0;
    for (k, m) in series.coefficients() {
        let forbidden = match side {
            FactorSide::Plus => k > 0,
            FactorSide::Minus => k < 0,
            FactorSide::Constant => k != 0,
            FactorSide::WindingDiagonal => false,
        };
        if forbidden {
            leak = leak.max(mat_max_norm(m));
        }
    }
    leak
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::build_toeplitz;

    #[test]
    fn example2_oracle_values() {
        let params: BTreeMap<String, f64> =
            [("u".to_string(), 0.3), ("v".to_string(), 0.6)].into();
        let f = make_fixture("example2", &params).unwrap();
        let d5 = f.det_oracle.eval(5);
        assert!((d5.log_abs - 10.0 * 0.3f64.ln()).abs() < 1e-12);
        assert!((f.g_oracle.abs() - 0.36).abs() < 1e-12);
    }

    #[test]
    fn example1_constraint_at_u_one() {
        let params: BTreeMap<String, f64> = [("u".to_string(), 1.0)].into();
        assert!(matches!(
            make_fixture("example1", &params),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn example3_oracle_g() {
        let params: BTreeMap<String, f64> = [("zeta".to_string(), 2.0)].into();
        let f = make_fixture("example3", &params).unwrap();
        assert!((f.g_oracle.abs() - 4.0).abs() < 1e-12);
        assert!((f.g_oracle.phase.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn example2_symbol_reproduces_displayed_blocks() {
        // zero-lag block [[0, u], [-u, 0]] and block (1,2) = [[uv, u²v], [v, uv]]
        let params: BTreeMap<String, f64> =
            [("u".to_string(), 0.3), ("v".to_string(), 0.6)].into();
        let f = make_fixture("example2", &params).unwrap();
        let c0 = f.symbol.coefficient(0);
        assert!((c0[(0, 1)].re - 0.3).abs() < 1e-10);
        assert!((c0[(1, 0)].re + 0.3).abs() < 1e-10);
        assert!(c0[(0, 0)].norm() < 1e-10);
        let c_m1 = f.symbol.coefficient(-1);
        assert!((c_m1[(0, 0)].re - 0.18).abs() < 1e-10);
        assert!((c_m1[(0, 1)].re - 0.054).abs() < 1e-10);
        assert!((c_m1[(1, 0)].re - 0.6).abs() < 1e-10);
        assert!((c_m1[(1, 1)].re - 0.18).abs() < 1e-10);
    }

    #[test]
    fn example2_displayed_matrix_pattern_in_upper_triangle() {
        // block (i, j) with j > i: upper-left entry is u^{j-i} v^{j-i}
        let params: BTreeMap<String, f64> =
            [("u".to_string(), 0.3), ("v".to_string(), 0.6)].into();
        let f = make_fixture("example2", &params).unwrap();
        for d in 1..5i64 {
            let blk = f.symbol.coefficient(-d);
            let want = (0.3f64 * 0.6).powi(d as i32);
            assert!(
                (blk[(0, 0)].re - want).abs() < 1e-10,
                "d={d}: {} vs {want}",
                blk[(0, 0)].re
            );
        }
    }

    #[test]
    fn example2_coefficient_decay_ratio_is_uv() {
        let params: BTreeMap<String, f64> =
            [("u".to_string(), 0.3), ("v".to_string(), 0.6)].into();
        let f = make_fixture("example2", &params).unwrap();
        let mut ratios = Vec::new();
        for k in 2..8i64 {
            let a = mat_max_norm(&f.symbol.coefficient(-k));
            let b = mat_max_norm(&f.symbol.coefficient(-(k - 1)));
            ratios.push(a / b);
        }
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        assert!((mean - 0.18).abs() < 1e-3, "fitted ratio {mean}");
    }

    #[test]
    fn det_oracles_match_lu_for_small_n() {
        let cases: Vec<(ExampleFixture, f64)> = vec![
            (example1_fixture(2.0).unwrap(), 1e-10),
            (example1b_fixture(2.0).unwrap(), 1e-10),
            (
                example2_fixture(0.3, 0.6).unwrap(),
                1e-8,
            ),
            (example3_fixture(Complex64::new(2.0, 0.0)).unwrap(), 1e-10),
        ];
        for (f, tol) in &cases {
            for n in 1..=8usize {
                let det = build_toeplitz(&f.symbol, n).unwrap().log_det();
                let want = f.det_oracle.eval(n);
                let rel = (det.value() - want.value()).norm() / want.abs().max(1e-300);
                assert!(rel < *tol, "{} n={n}: rel={rel}", f.name);
            }
        }
    }

    #[test]
    fn factorization_products_match_symbols() {
        let f1b = example1b_fixture(2.0).unwrap();
        let c1b = verify_factorization(&f1b, 512).unwrap();
        assert!(c1b.max_residual < 1e-12, "1b residual {}", c1b.max_residual);
        assert!(c1b.max_support_leak < 1e-8, "1b leak {}", c1b.max_support_leak);

        let f2 = example2_fixture(0.3, 0.6).unwrap();
        let c2 = verify_factorization(&f2, 1024).unwrap();
        assert!(c2.max_residual < 1e-10, "ex2 residual {}", c2.max_residual);
        assert!(c2.max_support_leak < 1e-8, "ex2 leak {}", c2.max_support_leak);

        let f3 = example3_fixture(Complex64::new(2.0, 0.0)).unwrap();
        let c3 = verify_factorization(&f3, 512).unwrap();
        assert!(c3.max_residual < 1e-12, "ex3 residual {}", c3.max_residual);
        assert!(c3.max_support_leak < 1e-8, "ex3 leak {}", c3.max_support_leak);
    }

    #[test]
    fn example1_has_no_stored_factorization() {
        let f = example1_fixture(2.0).unwrap();
        assert!(matches!(
            verify_factorization(&f, 256),
            Err(Error::MissingFactorization("example1"))
        ));
    }

    #[test]
    fn scalar_split_reproduces_block_determinant() {
        // det T_n(φ) = (-1)^n det T_n(λ) det T_n(ψ) = 1 for example 1
        let f = example1_fixture(2.0).unwrap();
        let (lambda, psi) = f.scalar_split.as_ref().unwrap();
        for n in 1..=10usize {
            let dl = lambda.toeplitz_log_det(n);
            let dp = psi.toeplitz_log_det(n);
            let sign = SignedLogValue::from_real(if n % 2 == 1 { -1.0 } else { 1.0 });
            let product = sign.mul(&dl).mul(&dp);
            assert!((product.value() - cx(1.0)).norm() < 1e-12, "n={n}");
        }
    }
}
