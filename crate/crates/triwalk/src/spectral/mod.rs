//! The Fourier-space picture of the walk.
//!
//! On wavenumbers k ∈ [−π, π) one step acts by multiplication with
//!
//! ```text
//!   Chat(k) = diag(e^{ik}, 1, e^{-ik}) · C,
//! ```
//!
//! whose spectrum has the flat branch λ₁(k) = 1 responsible for localization
//! and two dispersive branches
//!
//! ```text
//!   λ_j(k) = [ -{(1+c)cos k + (1-c)} + i(-1)^j sqrt(4 - {(1+c)cos k + 1-c}²) ] / 2
//! ```
//!
//! for j = 2, 3. This module provides the momentum coin, its closed-form
//! eigensystem (with a numerical fallback where the closed-form eigenvectors
//! are singular), the five-rotation factorization of C, and an evolution
//! oracle that propagates in momentum space and inverse-transforms on a
//! uniform grid — exact for band-limited states, hence an independent check
//! on the direct step-by-step evolution.

pub mod eig3;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::coin::{CoinOperator, CoinParameters};
use crate::error::Error;
use crate::state::WalkState;

/// Below this magnitude a closed-form eigenvector denominator counts as
/// singular and the operation reports `DegenerateEigenvector`.
const DENOMINATOR_EPS: f64 = 1e-9;

/// Closed-form eigenvectors are only trusted when every denominator is at
/// least this large; otherwise cancellation eats the 1e-10 residual budget
/// and the numerical solver takes over.
const WELL_CONDITIONED: f64 = 1e-4;

/// The momentum-space coin Chat(k).
#[derive(Debug, Clone)]
pub struct FourierCoin {
    k: f64,
    matrix: Matrix3<Complex64>,
}

impl FourierCoin {
    pub fn new(params: &CoinParameters, k: f64) -> Self {
        let coin = CoinOperator::build(params).to_complex();
        let shift = Matrix3::from_diagonal(&Vector3::new(
            Complex64::from_polar(1.0, k),
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -k),
        ));
        Self {
            k,
            matrix: shift * coin,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn matrix(&self) -> &Matrix3<Complex64> {
        &self.matrix
    }
}

/// Closed-form eigenvalues of Chat(k), flat branch first.
pub fn eigenvalues(params: &CoinParameters, k: f64) -> [Complex64; 3] {
    let c = params.c();
    let h = (1.0 + c) * k.cos() + (1.0 - c);
    let radicand = 4.0 - h * h;
    assert!(
        radicand > -1e-12,
        "radicand {radicand} must be non-negative for every wavenumber"
    );
    let root = radicand.max(0.0).sqrt();
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(-h / 2.0, root / 2.0),
        Complex64::new(-h / 2.0, -root / 2.0),
    ]
}

/// The unnormalized closed-form eigenvector for branch `j` ∈ {1, 2, 3}:
///
/// ```text
///   w_j(k) = ( 1/(1 + λ_j e^{-ik}),  sqrt2·s/((1-c)(1+λ_j)),  1/(1 + λ_j e^{ik}) )
/// ```
///
/// Fails with `DegenerateEigenvector` when a denominator vanishes (for
/// example λ₂ = λ₃ = −1 at k = 0, or the flat branch at k = ±π); callers
/// fall back to the numerical eigensolver there.
pub fn eigenvector_unnormalized(
    params: &CoinParameters,
    k: f64,
    branch: usize,
) -> Result<Vector3<Complex64>, Error> {
    assert!(
        (1..=3).contains(&branch),
        "branch index {branch} out of range"
    );
    let lambda = eigenvalues(params, k)[branch - 1];
    let (denoms, vector) = eigenvector_parts(params, k, lambda);
    let smallest = denoms.iter().cloned().fold(f64::INFINITY, f64::min);
    if smallest < DENOMINATOR_EPS {
        return Err(Error::DegenerateEigenvector {
            k,
            branch,
            denominator_abs: smallest,
        });
    }
    Ok(vector)
}

fn eigenvector_parts(
    params: &CoinParameters,
    k: f64,
    lambda: Complex64,
) -> ([f64; 3], Vector3<Complex64>) {
    let one = Complex64::new(1.0, 0.0);
    let d0 = one + lambda * Complex64::from_polar(1.0, -k);
    let d1 = (one + lambda) * (1.0 - params.c());
    let d2 = one + lambda * Complex64::from_polar(1.0, k);
    let mid = Complex64::new(std::f64::consts::SQRT_2 * params.s(), 0.0);
    (
        [d0.norm(), d1.norm(), d2.norm()],
        Vector3::new(one / d0, mid / d1, one / d2),
    )
}

/// Orthonormal eigensystem of Chat(k) with the flat branch first and the
/// dispersive branches in the (−1)^j sign convention of [`eigenvalues`].
#[derive(Debug, Clone)]
pub struct EigenSystem {
    k: f64,
    lambdas: [Complex64; 3],
    vectors: [Vector3<Complex64>; 3],
}

impl EigenSystem {
    /// Uses the closed-form eigenvectors where they are well conditioned and
    /// the numerical solver near their removable singularities.
    pub fn compute(params: &CoinParameters, k: f64) -> Self {
        let lambdas = eigenvalues(params, k);

        let mut closed = Vec::with_capacity(3);
        let mut all_good = true;
        for lambda in lambdas {
            let (denoms, vector) = eigenvector_parts(params, k, lambda);
            if denoms.iter().any(|&d| d < WELL_CONDITIONED) {
                all_good = false;
                break;
            }
            closed.push(vector / Complex64::new(vector.norm(), 0.0));
        }

        let vectors = if all_good {
            [closed[0], closed[1], closed[2]]
        } else {
            let numerical = eig3::eigen_normal(FourierCoin::new(params, k).matrix());
            let mut used = [false; 3];
            let mut picked = [Vector3::zeros(); 3];
            for (slot, lambda) in picked.iter_mut().zip(lambdas) {
                let best = (0..3)
                    .filter(|&j| !used[j])
                    .min_by(|&a, &b| {
                        (numerical.values[a] - lambda)
                            .norm()
                            .total_cmp(&(numerical.values[b] - lambda).norm())
                    })
                    .expect("three eigenpairs to choose from");
                used[best] = true;
                *slot = numerical.vectors[best];
            }
            picked
        };

        Self {
            k,
            lambdas,
            vectors,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn lambdas(&self) -> &[Complex64; 3] {
        &self.lambdas
    }

    pub fn vectors(&self) -> &[Vector3<Complex64>; 3] {
        &self.vectors
    }
}

/// The five orthogonal factors whose ordered product is the coin C.
pub fn rotation_decomposition(params: &CoinParameters) -> [Matrix3<f64>; 5] {
    let (c, s) = (params.c(), params.s());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let axis_swap = Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0);
    let half_mix = Matrix3::new(r, -r, 0.0, r, r, 0.0, 0.0, 0.0, 1.0);
    let core = Matrix3::new(-c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, -c);
    [axis_swap, half_mix, core, half_mix, axis_swap]
}

/// Evolves `initial` for `t` steps in momentum space.
///
/// The three stages are (i) the forward transform of the initial amplitudes,
/// (ii) propagation by Chat(k)^t through its numerical eigendecomposition,
/// (iii) the inverse transform by the trapezoid rule on a uniform k-grid,
/// which is exact for trigonometric polynomials of bounded degree. The grid
/// must resolve the full bandwidth of the evolved state, so
/// `quadrature_points` has to be at least max(4t + 4, support width + 2t + 1).
pub fn evolve_via_fourier(
    params: &CoinParameters,
    initial: &WalkState,
    t: u32,
    quadrature_points: usize,
) -> Result<WalkState, Error> {
    let width = (initial.support_hi() - initial.support_lo()) as usize;
    let required = (4 * t as usize + 4).max(width + 2 * t as usize + 1);
    if quadrature_points < required {
        return Err(Error::InsufficientQuadrature {
            given: quadrature_points,
            required,
            t,
        });
    }

    let n = quadrature_points;
    let out_lo = initial.support_lo() - i64::from(t);
    let out_len = width + 2 * t as usize + 1;
    let mut out = vec![[Complex64::ZERO; 3]; out_len];

    for m in 0..n {
        let k = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * m as f64 / n as f64;

        let mut psi_hat = Vector3::zeros();
        for x in initial.support_lo()..=initial.support_hi() {
            let amp = initial.amplitude(x);
            let phase = Complex64::from_polar(1.0, -k * x as f64);
            psi_hat += Vector3::new(amp[0], amp[1], amp[2]) * phase;
        }

        let eigen = eig3::eigen_normal(FourierCoin::new(params, k).matrix());
        let mut propagated = Vector3::zeros();
        for j in 0..3 {
            let coefficient = eigen.vectors[j].dotc(&psi_hat);
            let advanced = Complex64::from_polar(1.0, f64::from(t) * eigen.values[j].arg());
            propagated += eigen.vectors[j] * (coefficient * advanced);
        }

        let weight = 1.0 / n as f64;
        for (i, cell) in out.iter_mut().enumerate() {
            let x = out_lo + i as i64;
            let phase = Complex64::from_polar(weight, k * x as f64);
            cell[0] += propagated[0] * phase;
            cell[1] += propagated[1] * phase;
            cell[2] += propagated[2] * phase;
        }
    }

    Ok(WalkState::from_amplitudes(out_lo, out))
}
