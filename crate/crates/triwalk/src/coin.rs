//! The coin family, its parameters, and initial coin states.
//!
//! The walk mixes three chirality components (move left / stay / move right)
//! with a one-parameter family of real symmetric unitaries
//!
//! ```text
//!         [ -(1+c)/2   s/sqrt2   (1-c)/2  ]
//!   C  =  [  s/sqrt2      c      s/sqrt2  ]      c = cos theta, s = sin theta,
//!         [  (1-c)/2   s/sqrt2  -(1+c)/2  ]
//! ```
//!
//! which contains the Grover diffusion coin at c = −1/3.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::Error;

/// Tolerance for single algebraic identities (unitarity, unit circle,
/// normalization of constructed states).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// The angle θ identifying one walk in the family, with cached
/// c = cos θ and s = sin θ.
///
/// θ ≡ 0, π (mod 2π) are rejected at construction: those walks are
/// degenerate and every limit formula divides by (1 − c) or s².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParameters {
    theta: f64,
    c: f64,
    s: f64,
}

impl CoinParameters {
    pub fn from_theta(theta: f64) -> Result<Self, Error> {
        let (s, c) = theta.sin_cos();
        if s.abs() < ALGEBRA_TOL {
            return Err(Error::DegenerateTheta { theta });
        }
        Ok(Self { theta, c, s })
    }

    /// Builds directly from a point (c, s) on the unit circle.
    pub fn from_cos_sin(c: f64, s: f64) -> Result<Self, Error> {
        if (c * c + s * s - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::OffUnitCircle { c, s });
        }
        if s.abs() < ALGEBRA_TOL {
            return Err(Error::DegenerateTheta { theta: s.atan2(c) });
        }
        Ok(Self {
            theta: s.atan2(c),
            c,
            s,
        })
    }

    /// The member whose coin is the Grover diffusion operator:
    /// c = −1/3, s = 2√2/3.
    pub fn grover() -> Self {
        Self::from_cos_sin(-1.0 / 3.0, 2.0 * std::f64::consts::SQRT_2 / 3.0)
            .expect("grover parameters lie on the unit circle")
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// The 3×3 real symmetric coin operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator {
    entries: Matrix3<f64>,
}

impl CoinOperator {
    pub fn build(params: &CoinParameters) -> Self {
        let (c, s) = (params.c(), params.s());
        // Each distinct value is computed once so that equal entries are
        // bit-identical; the mirror test relies on exact centrosymmetry.
        let corner_main = -(1.0 + c) / 2.0;
        let corner_anti = (1.0 - c) / 2.0;
        let edge = s / std::f64::consts::SQRT_2;
        Self {
            entries: Matrix3::new(
                corner_main,
                edge,
                corner_anti,
                edge,
                c,
                edge,
                corner_anti,
                edge,
                corner_main,
            ),
        }
    }

    pub fn entries(&self) -> &Matrix3<f64> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn to_complex(&self) -> Matrix3<Complex64> {
        self.entries.map(|x| Complex64::new(x, 0.0))
    }

    /// Applies the coin to one amplitude triple.
    ///
    /// The two outer products are summed before adding the middle one; with
    /// the coin's centrosymmetry (entry(i,j) = entry(2−i,2−j)) this makes the
    /// chirality mirror 0↔2 exact in floating point, not just to rounding.
    #[inline]
    pub fn apply(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let m = &self.entries;
        let mut out = [Complex64::ZERO; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (v[0] * m[(i, 0)] + v[2] * m[(i, 2)]) + v[1] * m[(i, 1)];
        }
        out
    }
}

/// An initial coin state (α, β, γ) with |α|² + |β|² + |γ|² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVector {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
}

impl SpinVector {
    /// Requires the amplitudes to be normalized within 1e-12 already.
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self, Error> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr();
        if (norm_sqr - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::SpinNotNormalized { norm_sqr });
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Rescales arbitrary non-null amplitudes to unit norm.
    pub fn normalized(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self, Error> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr();
        if norm_sqr < 1e-18 {
            return Err(Error::SpinNotNormalized { norm_sqr });
        }
        let inv = 1.0 / norm_sqr.sqrt();
        Ok(Self {
            alpha: alpha * inv,
            beta: beta * inv,
            gamma: gamma * inv,
        })
    }

    pub fn from_reals(alpha: f64, beta: f64, gamma: f64) -> Result<Self, Error> {
        Self::new(
            Complex64::new(alpha, 0.0),
            Complex64::new(beta, 0.0),
            Complex64::new(gamma, 0.0),
        )
    }

    /// The spin with chiralities 0 and 2 swapped; evolving it mirrors the
    /// position distribution x ↔ −x.
    pub fn mirrored(&self) -> Self {
        Self {
            alpha: self.gamma,
            beta: self.beta,
            gamma: self.alpha,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn components(&self) -> [Complex64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}
