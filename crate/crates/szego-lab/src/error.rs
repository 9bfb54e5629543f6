//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by symbol construction, matrix builds and the analyses.
///
/// `HypothesisViolation`-style variants (vanishing determinant on the circle,
/// nonzero winding, gapless parameter points) are kept separate from plain
/// validation errors so that callers can distinguish "the input violates the
/// theorem hypotheses" from "the input is malformed".
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coefficient matrix has the wrong shape.
    DimensionMismatch { expected: (usize, usize), got: (usize, usize) },
    /// Two coefficients were supplied for the same Fourier index.
    DuplicateIndex(i64),
    /// Grid doubling exceeded the maximum FFT size without the coefficient
    /// tail dropping below tolerance.
    NonConvergence { grid: usize, tail: f64 },
    /// `det φ` is (numerically) zero somewhere on the sampling grid.
    SingularSample { theta: f64, det_abs: f64 },
    /// A dense build would exceed the configured row cap.
    SizeCap { rows: usize, cap: usize },
    /// The symbol band does not fit inside `[-n/2, n/2)`.
    BandTooWide { band: (i64, i64), n: usize },
    /// Matrix expected real antisymmetric but is not, within tolerance.
    NotAntisymmetric(f64),
    /// Matrix fits neither the real-antisymmetric nor the hermitian branch.
    UnrecognizedStructure(f64),
    /// Linear solve hit a pivot below tolerance.
    Singular,
    /// `det φ` has nonzero winding, so `log det φ` has no continuous branch.
    NonzeroWinding(i64),
    /// A sample of a function that must stay away from zero vanished.
    VanishingSample,
    /// Phase steps between neighbouring grid samples stayed above π/2 after
    /// the maximum refinement.
    PhaseStepTooLarge,
    /// The winding sum did not land near an integer.
    WindingUncertain(f64),
    /// An `n`-scan needs at least this many points.
    RangeTooShort { got: usize, need: usize },
    /// `widom_finite_E` requires the band condition `φ_k = 0` for `|k| > a`
    /// on one side.
    BandCondition { band: (i64, i64), a: i64 },
    /// Requested Fourier coefficient of `φ⁻¹` is below the truncation noise
    /// floor, so its digits are not trustworthy.
    UnresolvedCoefficient { k: i64, magnitude: f64, tail_bound: f64 },
    /// The modified prefactor vanished exactly at some `n` in the scan.
    PrefactorZero(usize),
    /// `verify_modified_asymptotics` requires `E(φ) = 0` with exactly one
    /// predicted zero-mode pair.
    ModifiedAsymptoticsPrecondition(String),
    /// Root of a Laurent polynomial sits on the unit circle.
    RootOnCircle { root_abs: f64 },
    /// The zero polynomial cannot be factorized.
    ZeroPolynomial,
    /// Wiener-Hopf input must have winding zero.
    WindingNotZero(i64),
    /// Symbol is not banded (constructed from samples, has a truncation tail).
    NotBanded,
    /// The symbol is gapless: smallest singular value on the grid is zero.
    GaplessSymbol { theta: f64 },
    /// `φ(±1)` singular; the Pfaffian index is undefined at a gapless point.
    GaplessPoint,
    /// Index computation requires a detected symmetry class it did not get.
    ClassRequired(&'static str),
    /// Power iteration could not find a seed with nonzero mode overlap.
    SeedExhausted { attempts: usize },
    /// Decay-rate fits need at least 4 usable points.
    TooFewPoints { got: usize },
    /// Smallest eigenvalue underflowed the trustworthy range.
    EigenvalueUnderflow { n: usize, eps: f64 },
    /// Fixture parameters violate a named constraint.
    ConstraintViolation(String),
    /// Fixture carries no stored factorization.
    MissingFactorization(&'static str),
    /// Symbol-file parse or I/O problem.
    SymbolFile(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "matrix dimension mismatch: expected {}x{}, got {}x{}",
                       expected.0, expected.1, got.0, got.1)
            }
            Error::DuplicateIndex(k) => write!(f, "duplicate Fourier index k={k}"),
            Error::NonConvergence { grid, tail } => {
                write!(f, "coefficient tail {tail:.3e} did not converge below tolerance at grid size {grid}")
            }
            Error::SingularSample { theta, det_abs } => {
                write!(f, "det φ(e^(iθ)) ≈ {det_abs:.3e} at θ={theta:.6}: symbol is singular on the circle")
            }
            Error::SizeCap { rows, cap } => {
                write!(f, "dense build of {rows} rows exceeds size cap {cap} (set SZEGO_LAB_SIZE_CAP to override)")
            }
            Error::BandTooWide { band, n } => {
                write!(f, "band [{}, {}] does not fit in [-n/2, n/2) for n={n}", band.0, band.1)
            }
            Error::NotAntisymmetric(dev) => {
                write!(f, "matrix is not real antisymmetric (deviation {dev:.3e})")
            }
            Error::UnrecognizedStructure(dev) => {
                write!(f, "matrix is neither real antisymmetric nor hermitian (best deviation {dev:.3e})")
            }
            Error::Singular => write!(f, "matrix is singular within pivot tolerance"),
            Error::NonzeroWinding(w) => {
                write!(f, "det φ has winding number {w}; log det φ has no continuous branch")
            }
            Error::VanishingSample => write!(f, "a grid sample vanished"),
            Error::PhaseStepTooLarge => {
                write!(f, "phase step above π/2 persists after maximum grid refinement")
            }
            Error::WindingUncertain(s) => {
                write!(f, "winding sum {s:.4} is not close to an integer")
            }
            Error::RangeTooShort { got, need } => {
                write!(f, "n-range has {got} points, need at least {need}")
            }
            Error::BandCondition { band, a } => {
                write!(f, "band [{}, {}] violates the one-sided condition for a={a}", band.0, band.1)
            }
            Error::UnresolvedCoefficient { k, magnitude, tail_bound } => {
                write!(f, "coefficient at k={k} has magnitude {magnitude:.3e} below the noise floor {tail_bound:.3e}")
            }
            Error::PrefactorZero(n) => write!(f, "modified prefactor is exactly zero at n={n}"),
            Error::ModifiedAsymptoticsPrecondition(msg) => {
                write!(f, "modified asymptotics precondition failed: {msg}")
            }
            Error::RootOnCircle { root_abs } => {
                write!(f, "polynomial root at |z|={root_abs:.12} is on the unit circle")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::WindingNotZero(w) => write!(f, "expected winding 0, got {w}"),
            Error::NotBanded => write!(f, "symbol is not banded (has a sampling tail)"),
            Error::GaplessSymbol { theta } => {
                write!(f, "symbol is gapless near θ={theta:.6}")
            }
            Error::GaplessPoint => write!(f, "φ(±1) is singular: gapless point, index undefined"),
            Error::ClassRequired(c) => write!(f, "operation requires symmetry class {c}"),
            Error::SeedExhausted { attempts } => {
                write!(f, "no power-iteration seed produced a usable mode after {attempts} attempts")
            }
            Error::TooFewPoints { got } => {
                write!(f, "fewer than 4 usable points for the decay fit (got {got})")
            }
            Error::EigenvalueUnderflow { n, eps } => {
                write!(f, "smallest eigenvalue {eps:.3e} at n={n} is below 1e-13; shrink the n-range")
            }
            Error::ConstraintViolation(msg) => write!(f, "parameter constraint violated: {msg}"),
            Error::MissingFactorization(name) => {
                write!(f, "fixture {name} carries no stored factorization")
            }
            Error::SymbolFile(msg) => write!(f, "symbol file: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors that mean "the theorem hypotheses fail for this input"
    /// rather than "the request was malformed". The CLI maps these to exit
    /// code 2.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::SingularSample { .. }
                | Error::NonzeroWinding(_)
                | Error::VanishingSample
                | Error::GaplessSymbol { .. }
                | Error::GaplessPoint
                | Error::RootOnCircle { .. }
                | Error::ConstraintViolation(_)
        )
    }
}
