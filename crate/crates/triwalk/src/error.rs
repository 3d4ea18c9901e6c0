use thiserror::Error;

/// Errors reported by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// θ ≡ 0 or π (mod 2π): the walk degenerates and the limit formulas
    /// divide by (1 − cos θ) and sin²θ.
    #[error("theta = {theta} gives a degenerate walk (|sin theta| < 1e-12)")]
    DegenerateTheta { theta: f64 },

    /// (c, s) handed to `CoinParameters::from_cos_sin` is off the unit circle.
    #[error("(c, s) = ({c}, {s}) is not on the unit circle (|c^2 + s^2 - 1| > 1e-12)")]
    OffUnitCircle { c: f64, s: f64 },

    /// Spin amplitudes whose squared magnitudes do not sum to 1.
    #[error("spin norm^2 = {norm_sqr} is not 1 within tolerance")]
    SpinNotNormalized { norm_sqr: f64 },

    /// The closed-form eigenvector has a vanishing denominator at this
    /// wavenumber; use the numerical eigensolver instead.
    #[error(
        "closed-form eigenvector {branch} is singular at k = {k} \
         (|denominator| = {denominator_abs:e} < 1e-9)"
    )]
    DegenerateEigenvector {
        k: f64,
        branch: usize,
        denominator_abs: f64,
    },

    /// Too few quadrature points for an alias-free inverse Fourier transform
    /// of a t-step evolution.
    #[error("{given} quadrature points given, need at least {required} for t = {t}")]
    InsufficientQuadrature {
        given: usize,
        required: usize,
        t: u32,
    },

    /// The envelope does not satisfy the stencil normalization condition for
    /// the given coin.
    #[error("envelope stencil norm^2 = {norm_sqr} deviates from 1 by more than 1e-10")]
    NormalizationViolation { norm_sqr: f64 },
}
