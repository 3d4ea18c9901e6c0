//! Delocalized initial states and discrete uniform limit measures.
//!
//! An envelope F : Z → C with finite support defines the initial state
//!
//! ```text
//!   ψ₀(x) = { F(x−1)/2 + (3−c)/(1+c)·F(x) + F(x+1)/2 } · (α, β, γ)
//! ```
//!
//! provided the stencil sums to unit norm. Its limit measure is
//!
//! ```text
//!   lim P(X_t = x) = 1/(4(1+c)) · { |A F(x) + B F(x+1)|²/(1+c)
//!                                 + |A F(x−1) + (A+B) F(x) + B F(x+1)|²/(2(1−c))
//!                                 + |A F(x−1) + B F(x)|²/(1+c) }
//! ```
//!
//! The comb envelope — constant on the even sites 0, 2, …, 2n−2 and zero
//! elsewhere — flattens this into a plateau: depending on A and B the limit
//! measure is a 2n-point or (2n+1)-point discrete uniform measure.

use num_complex::Complex64;

use crate::coin::{CoinParameters, SpinVector};
use crate::error::Error;
use crate::limit::ab_constants;
use crate::state::WalkState;

/// Tolerance on the stencil normalization when pairing an envelope with a
/// coin; beyond this the pairing is rejected.
const STENCIL_TOL: f64 = 1e-10;

/// A finite-support complex envelope F.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeFunction {
    support_lo: i64,
    values: Vec<Complex64>,
}

impl EnvelopeFunction {
    pub fn new(support_lo: i64, values: Vec<Complex64>) -> Self {
        assert!(!values.is_empty(), "envelope needs at least one value");
        Self { support_lo, values }
    }

    pub fn support_lo(&self) -> i64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> i64 {
        self.support_lo + self.values.len() as i64 - 1
    }

    pub fn value(&self, x: i64) -> Complex64 {
        if x < self.support_lo || x > self.support_hi() {
            return Complex64::ZERO;
        }
        self.values[(x - self.support_lo) as usize]
    }

    fn stencil(&self, params: &CoinParameters, x: i64) -> Complex64 {
        let q = (3.0 - params.c()) / (1.0 + params.c());
        (self.value(x - 1) + self.value(x + 1)) * 0.5 + self.value(x) * q
    }

    /// Σ_x |F(x−1)/2 + (3−c)/(1+c)·F(x) + F(x+1)/2|²; must be 1 for the
    /// envelope to define a valid initial state with this coin.
    pub fn stencil_norm_sqr(&self, params: &CoinParameters) -> f64 {
        (self.support_lo - 1..=self.support_hi() + 1)
            .map(|x| self.stencil(params, x).norm_sqr())
            .sum()
    }
}

/// The comb envelope's normalizer M(n) = {1 + ((3−c)/(1+c))²}n − 1/2.
pub fn comb_normalizer(n: u32, params: &CoinParameters) -> f64 {
    assert!(n >= 1, "comb needs at least one tooth");
    let q = (3.0 - params.c()) / (1.0 + params.c());
    (1.0 + q * q) * f64::from(n) - 0.5
}

/// The comb envelope: 1/√M(n) on the even sites 0, 2, …, 2n−2, zero
/// elsewhere. Satisfies the stencil normalization for `params` exactly.
pub fn comb_envelope(n: u32, params: &CoinParameters) -> EnvelopeFunction {
    let amplitude = Complex64::new(1.0 / comb_normalizer(n, params).sqrt(), 0.0);
    let mut values = vec![Complex64::ZERO; 2 * n as usize - 1];
    for tooth in values.iter_mut().step_by(2) {
        *tooth = amplitude;
    }
    EnvelopeFunction::new(0, values)
}

/// The walk state ψ₀(x) = stencil(F, x)·(α, β, γ).
///
/// Fails with `NormalizationViolation` when the stencil norm deviates from 1
/// by more than 1e-10 for this coin.
pub fn delocalized_initial_state(
    env: &EnvelopeFunction,
    params: &CoinParameters,
    spin: &SpinVector,
) -> Result<WalkState, Error> {
    let norm_sqr = env.stencil_norm_sqr(params);
    if (norm_sqr - 1.0).abs() > STENCIL_TOL {
        return Err(Error::NormalizationViolation { norm_sqr });
    }
    let lo = env.support_lo() - 1;
    let hi = env.support_hi() + 1;
    let amplitudes = (lo..=hi)
        .map(|x| {
            let weight = env.stencil(params, x);
            [
                spin.alpha() * weight,
                spin.beta() * weight,
                spin.gamma() * weight,
            ]
        })
        .collect();
    Ok(WalkState::from_amplitudes(lo, amplitudes))
}

/// Pointwise limit of P(X_t = x) for a delocalized start with envelope F.
pub fn limit_measure_delocalized(
    env: &EnvelopeFunction,
    params: &CoinParameters,
    spin: &SpinVector,
    x: i64,
) -> f64 {
    let c = params.c();
    let (a, b) = ab_constants(params, spin);
    let f_prev = env.value(x - 1);
    let f_here = env.value(x);
    let f_next = env.value(x + 1);

    let left = (a * f_here + b * f_next).norm_sqr() / (1.0 + c);
    let middle = (a * f_prev + (a + b) * f_here + b * f_next).norm_sqr() / (2.0 * (1.0 - c));
    let right = (a * f_prev + b * f_here).norm_sqr() / (1.0 + c);

    (left + middle + right) / (4.0 * (1.0 + c))
}

/// Closed-form limit measure of the comb start: boundary values at x = −1
/// and x = 2n−1 around an interior plateau on 0 ≤ x ≤ 2n−2.
pub fn comb_limit_measure(n: u32, params: &CoinParameters, spin: &SpinVector, x: i64) -> f64 {
    let c = params.c();
    let s = params.s();
    let m = comb_normalizer(n, params);
    let (a, b) = ab_constants(params, spin);
    let edge = 2 * i64::from(n) - 1;

    if x == -1 {
        (3.0 - c) * b.norm_sqr() / (8.0 * (1.0 + c) * s * s * m)
    } else if x == edge {
        (3.0 - c) * a.norm_sqr() / (8.0 * (1.0 + c) * s * s * m)
    } else if (0..edge).contains(&x) {
        ((a.norm_sqr() + b.norm_sqr()) / (1.0 + c) + (a + b).norm_sqr() / (2.0 * (1.0 - c)))
            / (4.0 * (1.0 + c) * m)
    } else {
        0.0
    }
}

/// How the comb's limit measure comes out for one (n, θ, spin) choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformClass {
    /// 2n equal masses (one boundary vanishes).
    TwoNPoints,
    /// 2n+1 equal masses (both boundaries join the plateau).
    TwoNPlusOnePoints,
    /// Boundary values differ from the plateau (or everything vanishes).
    NonUniform,
}

/// Plateau classification and bookkeeping for the comb limit measure.
#[derive(Debug, Clone, Copy)]
pub struct UniformReport {
    pub class: UniformClass,
    pub plateau: f64,
    pub support_lo: i64,
    pub support_hi: i64,
    pub total_mass: f64,
}

/// Classifies the comb limit measure by comparing its boundary values with
/// the interior plateau (relative tolerance 1e-12).
pub fn plateau_report(n: u32, params: &CoinParameters, spin: &SpinVector) -> UniformReport {
    let edge = 2 * i64::from(n) - 1;
    let left = comb_limit_measure(n, params, spin, -1);
    let interior = comb_limit_measure(n, params, spin, 0);
    let right = comb_limit_measure(n, params, spin, edge);

    let scale = left.max(interior).max(right);
    let same = |p: f64, q: f64| (p - q).abs() <= 1e-12 * scale;
    let zero = |p: f64| p <= 1e-12 * scale;

    let (class, support_lo, support_hi) = if scale == 0.0 {
        (UniformClass::NonUniform, 0, -1)
    } else if same(left, interior) && same(right, interior) {
        (UniformClass::TwoNPlusOnePoints, -1, edge)
    } else if zero(left) && same(right, interior) {
        (UniformClass::TwoNPoints, 0, edge)
    } else if zero(right) && same(left, interior) {
        (UniformClass::TwoNPoints, -1, edge - 1)
    } else {
        let lo = if zero(left) { 0 } else { -1 };
        let hi = if zero(right) { edge - 1 } else { edge };
        (UniformClass::NonUniform, lo, hi)
    };

    let total_mass = (support_lo..=support_hi)
        .map(|x| comb_limit_measure(n, params, spin, x))
        .sum();

    UniformReport {
        class,
        plateau: interior,
        support_lo,
        support_hi,
        total_mass,
    }
}
