//! Closed-form long-time behavior of the walk started at the origin.
//!
//! Two limit objects describe the walk after many steps. Pointwise, the
//! position probabilities converge to a sub-probability measure that decays
//! geometrically from the origin with ratio ν ∈ (−1, 0):
//!
//! ```text
//!   lim P(X_t = x) = 1/(64(1-c)²) · { 2(1-c)|B ν^|x+1| + A ν^|x||²
//!                                   + (1+c)|B ν^|x+1| + (A+B) ν^|x| + A ν^|x-1||²
//!                                   + 2(1-c)|B ν^|x| + A ν^|x-1||² }
//! ```
//!
//! with A = 2(1−c)α + √2·s·β and B = √2·s·β + 2(1−c)γ. Its total mass Δ is
//! also the weight of the point mass at 0 in the weak limit of X_t/t, whose
//! absolutely continuous part is
//!
//! ```text
//!   f(x) = sqrt(1-c) / (2π(1-x²) sqrt(1+c-2x²)) · (d₀ + d₁x + d₂x²)
//! ```
//!
//! supported on |x| < sqrt((1+c)/2). The walk localizes exactly when the
//! quantity |A|² + |B|² + 2ν·Re(A·conj B) is positive.

use num_complex::Complex64;

use crate::coin::{CoinParameters, SpinVector};
use crate::quad;
use crate::state::ProbabilityDistribution;

/// The localization criterion treats inner quantities below this as zero;
/// the algebraically vanishing configurations land around 1e-30.
pub const LOCALIZATION_EPS: f64 = 1e-12;

/// Geometric decay ratio ν = [−(3−c) + 2√(2(1−c))]/(1+c) of the limit
/// measure; lies in (−1, 0) for every admissible θ.
pub fn nu(params: &CoinParameters) -> f64 {
    let c = params.c();
    (-(3.0 - c) + 2.0 * (2.0 * (1.0 - c)).sqrt()) / (1.0 + c)
}

/// The linear forms A = 2(1−c)α + √2·s·β and B = √2·s·β + 2(1−c)γ.
pub fn ab_constants(params: &CoinParameters, spin: &SpinVector) -> (Complex64, Complex64) {
    let two_one_minus_c = 2.0 * (1.0 - params.c());
    let coupling = std::f64::consts::SQRT_2 * params.s();
    let a = spin.alpha() * two_one_minus_c + spin.beta() * coupling;
    let b = spin.beta() * coupling + spin.gamma() * two_one_minus_c;
    (a, b)
}

fn localization_inner(params: &CoinParameters, spin: &SpinVector) -> f64 {
    let (a, b) = ab_constants(params, spin);
    a.norm_sqr() + b.norm_sqr() + 2.0 * nu(params) * (a * b.conj()).re
}

/// Total mass Δ of the limit measure; equals the weight of the atom at 0 in
/// the weak limit of X_t/t.
pub fn localization_mass(params: &CoinParameters, spin: &SpinVector) -> f64 {
    let one_minus_c = 1.0 - params.c();
    localization_inner(params, spin) / (8.0 * std::f64::consts::SQRT_2 * one_minus_c.powf(1.5))
}

/// Whether some position keeps positive probability forever.
pub fn is_localized(params: &CoinParameters, spin: &SpinVector) -> bool {
    localization_inner(params, spin) > LOCALIZATION_EPS
}

fn nu_pow(nu: f64, exponent: i64) -> f64 {
    nu.powi(exponent.unsigned_abs().min(i32::MAX as u64) as i32)
}

/// Pointwise limit of P(X_t = x) for the origin start.
///
/// The term grouping is palindromic, so the mirror identity
/// `limit_measure_origin(x, (α,β,γ)) = limit_measure_origin(−x, (γ,β,α))`
/// holds exactly in floating point.
pub fn limit_measure_origin(params: &CoinParameters, spin: &SpinVector, x: i64) -> f64 {
    let c = params.c();
    let nu_v = nu(params);
    let (a, b) = ab_constants(params, spin);

    let p_prev = nu_pow(nu_v, x - 1);
    let p_here = nu_pow(nu_v, x);
    let p_next = nu_pow(nu_v, x + 1);

    let left = 2.0 * (1.0 - c) * (b * p_next + a * p_here).norm_sqr();
    let right = 2.0 * (1.0 - c) * (b * p_here + a * p_prev).norm_sqr();
    let middle_outer = b * p_next + a * p_prev;
    let middle = (1.0 + c) * (middle_outer + (a + b) * p_here).norm_sqr();

    ((left + right) + middle) / (64.0 * (1.0 - c) * (1.0 - c))
}

/// Half-width √((1+c)/2) of the weak-limit support.
pub fn support_half_width(params: &CoinParameters) -> f64 {
    ((1.0 + params.c()) / 2.0).sqrt()
}

/// Derived scalars shared by the pointwise limit measure and the rescaled
/// weak limit, for one (θ, spin) pair.
#[derive(Debug, Clone, Copy)]
pub struct LimitConstants {
    pub nu: f64,
    pub a_const: Complex64,
    pub b_const: Complex64,
    pub delta_mass: f64,
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

impl LimitConstants {
    pub fn compute(params: &CoinParameters, spin: &SpinVector) -> Self {
        let (a_const, b_const) = ab_constants(params, spin);
        let (alpha, beta, gamma) = (spin.alpha(), spin.beta(), spin.gamma());
        let (c, s) = (params.c(), params.s());
        let slope = std::f64::consts::SQRT_2 * s / (1.0 + c);

        let d0 = (alpha + gamma).norm_sqr() + 2.0 * beta.norm_sqr();
        let d1 = 2.0
            * (-(alpha - beta).norm_sqr() + (gamma - beta).norm_sqr()
                - (2.0 - slope) * ((alpha - gamma) * beta.conj()).re);
        let d2 = alpha.norm_sqr() - 2.0 * beta.norm_sqr() + gamma.norm_sqr()
            - 2.0
                * (slope * ((alpha + gamma) * beta.conj()).re
                    + (3.0 - c) / (1.0 + c) * (alpha * gamma.conj()).re);

        Self {
            nu: nu(params),
            a_const,
            b_const,
            delta_mass: localization_mass(params, spin),
            d0,
            d1,
            d2,
        }
    }
}

/// The weak limit of X_t/t: an atom of mass Δ at 0 plus the density f on
/// (−√((1+c)/2), √((1+c)/2)).
///
/// Integrals of f are evaluated after the substitution x = w·sin u, which
/// removes the inverse-square-root edge singularity exactly and leaves an
/// analytic integrand for Gauss–Legendre.
#[derive(Debug, Clone, Copy)]
pub struct LimitDistribution {
    constants: LimitConstants,
    half_width: f64,
    c: f64,
}

impl LimitDistribution {
    pub fn new(params: &CoinParameters, spin: &SpinVector) -> Self {
        Self {
            constants: LimitConstants::compute(params, spin),
            half_width: support_half_width(params),
            c: params.c(),
        }
    }

    pub fn constants(&self) -> &LimitConstants {
        &self.constants
    }

    pub fn atom_position(&self) -> i64 {
        0
    }

    pub fn atom_mass(&self) -> f64 {
        self.constants.delta_mass
    }

    pub fn support_half_width(&self) -> f64 {
        self.half_width
    }

    /// f(x) on the open support, 0 outside (including the edge itself).
    pub fn density(&self, x: f64) -> f64 {
        let c = self.c;
        if x * x >= (1.0 + c) / 2.0 {
            return 0.0;
        }
        let k = &self.constants;
        (1.0 - c).sqrt()
            / (2.0 * std::f64::consts::PI * (1.0 - x * x) * (1.0 + c - 2.0 * x * x).sqrt())
            * ((k.d0 + k.d1 * x) + k.d2 * x * x)
    }

    /// The density after x = w·sin u, including the Jacobian.
    fn density_in_angle(&self, u: f64) -> f64 {
        let x = self.half_width * u.sin();
        let k = &self.constants;
        (1.0 - self.c).sqrt()
            / (2.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI * (1.0 - x * x))
            * ((k.d0 + k.d1 * x) + k.d2 * x * x)
    }

    /// lim P(X_t/t ≤ x): the integrated density plus the atom for x ≥ 0.
    pub fn cdf(&self, x: f64) -> f64 {
        let w = self.half_width;
        let atom = if x >= 0.0 {
            self.constants.delta_mass
        } else {
            0.0
        };
        if x <= -w {
            return 0.0;
        }
        let upper = (x.min(w) / w).clamp(-1.0, 1.0).asin();
        quad::integrate(
            |u| self.density_in_angle(u),
            -std::f64::consts::FRAC_PI_2,
            upper,
        ) + atom
    }

    /// r-th moment 0^r·Δ + ∫ x^r f(x) dx of the weak limit.
    pub fn moment(&self, r: u32) -> f64 {
        let atom = if r == 0 {
            self.constants.delta_mass
        } else {
            0.0
        };
        let w = self.half_width;
        let power = r as i32;
        atom + quad::integrate(
            |u| (w * u.sin()).powi(power) * self.density_in_angle(u),
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
        )
    }
}

/// f(x) for the given configuration; see [`LimitDistribution::density`].
pub fn limit_density(params: &CoinParameters, spin: &SpinVector, x: f64) -> f64 {
    LimitDistribution::new(params, spin).density(x)
}

/// lim P(X_t/t ≤ x); see [`LimitDistribution::cdf`].
pub fn limit_cdf(params: &CoinParameters, spin: &SpinVector, x: f64) -> f64 {
    LimitDistribution::new(params, spin).cdf(x)
}

/// r-th moment of the weak limit; see [`LimitDistribution::moment`].
pub fn limit_moment(params: &CoinParameters, spin: &SpinVector, r: u32) -> f64 {
    LimitDistribution::new(params, spin).moment(r)
}

/// Largest |F_emp(y) − F(y)| over a uniform grid of `points` values on
/// [−1, 1], where F_emp is the CDF of the lattice law of X_t/t and F the
/// weak-limit CDF.
///
/// F jumps at the atom, and no finite-time lattice law matches that jump
/// pointwise: the walk keeps a fixed share of its localized mass on x < 0
/// forever, so the supremum over all reals stalls near (Δ − lim P(X_t=0))/2
/// instead of vanishing. Weak convergence is therefore measured on a grid,
/// and an even point count keeps the atom location itself off the grid.
pub fn rescaled_cdf_distance(
    dist: &ProbabilityDistribution,
    t: u32,
    limit: &LimitDistribution,
    points: usize,
) -> f64 {
    assert!(points >= 2, "need at least two grid points");
    let cumulative: Vec<(i64, f64)> = dist
        .iter()
        .scan(0.0, |acc, (x, mass)| {
            *acc += mass;
            Some((x, *acc))
        })
        .collect();
    let empirical = |y: f64| -> f64 {
        let cut = (y * f64::from(t)).floor() as i64;
        match cumulative.binary_search_by_key(&cut, |&(x, _)| x) {
            Ok(i) => cumulative[i].1,
            Err(0) => 0.0,
            Err(i) => cumulative[i - 1].1,
        }
    };
    (0..points)
        .map(|i| {
            let y = -1.0 + 2.0 * i as f64 / (points as f64 - 1.0);
            (empirical(y) - limit.cdf(y)).abs()
        })
        .fold(0.0, f64::max)
}

/// The rescaled limit density shared with 2-state walks,
/// √(1−(1+c)/2) / (π(1−x²)√((1+c)/2 − x²)), on the same open support.
///
/// The 3-state walk reproduces it exactly for the atom-free spins with
/// |β| = √((1−c)/2) and α = γ = −√2·s·β/(2(1−c)).
pub fn two_state_correspondence_density(params: &CoinParameters, x: f64) -> f64 {
    let w_sqr = (1.0 + params.c()) / 2.0;
    if x * x >= w_sqr {
        return 0.0;
    }
    (1.0 - w_sqr).sqrt() / (std::f64::consts::PI * (1.0 - x * x) * (w_sqr - x * x).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn uniform_real_spin() -> SpinVector {
        let u = 1.0 / 3f64.sqrt();
        SpinVector::from_reals(u, u, u).unwrap()
    }

    fn params_pi4() -> CoinParameters {
        CoinParameters::from_theta(std::f64::consts::FRAC_PI_4).unwrap()
    }

    /// θ = π/4 spin with A = B = 0, hence Δ = 0.
    fn atom_free_pi4_spin() -> SpinVector {
        let root = (2.0 - std::f64::consts::SQRT_2).sqrt();
        SpinVector::from_reals(1.0 / (2.0 * root), -root / 2.0, 1.0 / (2.0 * root)).unwrap()
    }

    #[test]
    fn nu_at_reference_coins() {
        assert_abs_diff_eq!(
            nu(&CoinParameters::grover()),
            -5.0 + 2.0 * 6f64.sqrt(),
            epsilon = 1e-14
        );
        let c0 = CoinParameters::from_cos_sin(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(
            nu(&c0),
            2.0 * std::f64::consts::SQRT_2 - 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn ab_constants_reference_values() {
        // c = 1/3, s = −2√2/3 with the uniform spin cancels both constants.
        let params =
            CoinParameters::from_cos_sin(1.0 / 3.0, -2.0 * std::f64::consts::SQRT_2 / 3.0).unwrap();
        let (a, b) = ab_constants(&params, &uniform_real_spin());
        assert!(a.norm() < 1e-15);
        assert!(b.norm() < 1e-15);

        let params = params_pi4();
        let middle = SpinVector::from_reals(0.0, 1.0, 0.0).unwrap();
        let (a, b) = ab_constants(&params, &middle);
        let expected = std::f64::consts::SQRT_2 * params.s();
        assert_abs_diff_eq!(a.re, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(b.re, expected, epsilon = 1e-15);

        let right = SpinVector::from_reals(0.0, 0.0, 1.0).unwrap();
        let (a, b) = ab_constants(&params, &right);
        assert_eq!(a, Complex64::ZERO);
        assert_abs_diff_eq!(b.re, 2.0 * (1.0 - params.c()), epsilon = 1e-15);
    }

    #[test]
    fn origin_limit_for_the_figure_configuration() {
        let params = params_pi4();
        let spin = uniform_real_spin();
        let value = limit_measure_origin(&params, &spin, 0);
        // Matches the closed-form simplification −ν/(4s²)(|A|² + |B|²) and
        // the reported leading digits 0.374⋯.
        let (a, b) = ab_constants(&params, &spin);
        let simplified =
            -nu(&params) / (4.0 * params.s() * params.s()) * (a.norm_sqr() + b.norm_sqr());
        assert_abs_diff_eq!(value, simplified, epsilon = 1e-13);
        assert!((0.374..0.375).contains(&value), "got {value}");
    }

    #[test]
    fn cancelled_constants_kill_the_limit_measure() {
        let params =
            CoinParameters::from_cos_sin(1.0 / 3.0, -2.0 * std::f64::consts::SQRT_2 / 3.0).unwrap();
        let spin = uniform_real_spin();
        for x in -5..=5 {
            assert!(limit_measure_origin(&params, &spin, x) < 1e-28);
        }
        assert!(!is_localized(&params, &spin));
        assert!(localization_mass(&params, &spin).abs() < 1e-14);
    }

    #[test]
    fn middle_spin_localizes_for_every_theta() {
        let spin = SpinVector::from_reals(0.0, 1.0, 0.0).unwrap();
        for theta in [0.2, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0] {
            let params = CoinParameters::from_theta(theta).unwrap();
            let inner = localization_inner(&params, &spin);
            let s = params.s();
            assert_abs_diff_eq!(inner, 4.0 * s * s * (1.0 + nu(&params)), epsilon = 1e-12);
            assert!(is_localized(&params, &spin));
        }
    }

    #[test]
    fn atom_free_configuration_has_zero_mass() {
        let params = params_pi4();
        let spin = atom_free_pi4_spin();
        assert!(localization_mass(&params, &spin).abs() < 1e-12);
        assert!(!is_localized(&params, &spin));
    }

    #[test]
    fn series_of_limit_masses_sums_to_delta() {
        let configs: Vec<(CoinParameters, SpinVector)> = vec![
            (params_pi4(), uniform_real_spin()),
            (
                CoinParameters::grover(),
                SpinVector::from_reals(1.0, 0.0, 0.0).unwrap(),
            ),
            (
                CoinParameters::from_theta(2.2).unwrap(),
                SpinVector::normalized(
                    Complex64::new(0.1, -0.4),
                    Complex64::new(0.5, 0.2),
                    Complex64::new(-0.3, 0.6),
                )
                .unwrap(),
            ),
        ];
        for (params, spin) in configs {
            let nu_abs = nu(&params).abs();
            let cutoff = (1e-16f64.ln() / (2.0 * nu_abs.ln())).ceil() as i64 + 2;
            let series: f64 = (-cutoff..=cutoff)
                .map(|x| limit_measure_origin(&params, &spin, x))
                .sum();
            assert_abs_diff_eq!(series, localization_mass(&params, &spin), epsilon = 1e-10);
        }
    }

    #[test]
    fn density_reference_value_and_support() {
        let params = CoinParameters::from_cos_sin(0.0, 1.0).unwrap();
        let spin = uniform_real_spin();
        assert_abs_diff_eq!(
            limit_density(&params, &spin, 0.0),
            std::f64::consts::FRAC_1_PI,
            epsilon = 1e-14
        );
        let w = support_half_width(&params);
        assert_eq!(limit_density(&params, &spin, w), 0.0);
        assert_eq!(limit_density(&params, &spin, -w - 0.1), 0.0);
    }

    #[test]
    fn density_integrates_to_one_minus_delta() {
        let dist = LimitDistribution::new(&params_pi4(), &uniform_real_spin());
        let continuous = quad::integrate(
            |u| dist.density_in_angle(u),
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
        );
        assert_abs_diff_eq!(continuous, 1.0 - dist.atom_mass(), epsilon = 1e-6);
        assert_abs_diff_eq!(dist.moment(0), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn density_is_nonnegative_on_support() {
        for (params, spin) in [
            (params_pi4(), uniform_real_spin()),
            (params_pi4(), atom_free_pi4_spin()),
            (
                CoinParameters::grover(),
                SpinVector::from_reals(0.0, 0.0, 1.0).unwrap(),
            ),
        ] {
            let dist = LimitDistribution::new(&params, &spin);
            let w = dist.support_half_width();
            for i in 0..=200 {
                let x = -w + 2.0 * w * i as f64 / 200.0;
                assert!(dist.density(x) >= -1e-14, "negative density at {x}");
            }
        }
    }

    #[test]
    fn cdf_boundaries_jump_and_monotonicity() {
        let params = params_pi4();
        let spin = uniform_real_spin();
        let dist = LimitDistribution::new(&params, &spin);
        let w = dist.support_half_width();
        assert_eq!(dist.cdf(-w - 0.01), 0.0);
        assert_abs_diff_eq!(dist.cdf(1.0), 1.0, epsilon = 1e-6);

        // d₁ = 0 for the uniform real spin, so the density is even and the
        // atom sits exactly in the middle of the CDF.
        let delta = dist.atom_mass();
        assert_abs_diff_eq!(dist.cdf(-1e-12), (1.0 - delta) / 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(dist.cdf(0.0), (1.0 - delta) / 2.0 + delta, epsilon = 1e-9);

        let mut prev = 0.0;
        for i in 0..=100 {
            let x = -1.0 + 0.02 * i as f64;
            let value = dist.cdf(x);
            assert!(value >= prev - 1e-12, "cdf decreased at {x}");
            prev = value;
        }
    }

    #[test]
    fn first_moment_vanishes_for_even_density() {
        let dist = LimitDistribution::new(&params_pi4(), &uniform_real_spin());
        assert!(dist.constants().d1.abs() < 1e-14);
        assert!(dist.moment(1).abs() < 1e-8);
    }

    #[test]
    fn two_state_correspondence_at_half_pi() {
        let params = CoinParameters::from_theta(std::f64::consts::FRAC_PI_2).unwrap();
        let spin = SpinVector::from_reals(-0.5, std::f64::consts::FRAC_1_SQRT_2, -0.5).unwrap();
        assert!(localization_mass(&params, &spin).abs() < 1e-12);
        let w = support_half_width(&params);
        for i in 0..50 {
            let x = -w + 2.0 * w * (i as f64 + 0.5) / 50.0;
            assert_abs_diff_eq!(
                limit_density(&params, &spin, x),
                two_state_correspondence_density(&params, x),
                epsilon = 1e-10
            );
        }
        // The shared density is a probability density in its own right;
        // under x = w·sin u its edge factor cancels against the Jacobian.
        let integral = quad::integrate(
            |u| {
                let x = w * u.sin();
                (1.0 - w * w).sqrt() / (std::f64::consts::PI * (1.0 - x * x))
            },
            -std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
        );
        assert_abs_diff_eq!(integral, 1.0, epsilon = 1e-6);
        assert_eq!(two_state_correspondence_density(&params, w + 0.01), 0.0);
    }

    #[test]
    fn rescaled_distance_shrinks_with_time() {
        use crate::coin::CoinOperator;
        use crate::state::WalkState;
        let params = params_pi4();
        let spin = uniform_real_spin();
        let coin = CoinOperator::build(&params);
        let dist = LimitDistribution::new(&params, &spin);
        let coarse = rescaled_cdf_distance(
            &WalkState::localized(&spin)
                .evolve(&coin, 60)
                .position_distribution(),
            60,
            &dist,
            400,
        );
        let fine = rescaled_cdf_distance(
            &WalkState::localized(&spin)
                .evolve(&coin, 600)
                .position_distribution(),
            600,
            &dist,
            400,
        );
        assert!(fine < coarse);
        assert!(fine < 0.02, "distance at t = 600 is {fine}");
    }

    #[test]
    fn d_coefficients_spot_checks() {
        let params = params_pi4();
        let spin = SpinVector::from_reals(0.6, 0.0, 0.8).unwrap();
        let k = LimitConstants::compute(&params, &spin);
        assert!(k.d0 >= 0.0);
        assert_abs_diff_eq!(k.d1, 2.0 * (-0.36 + 0.64), epsilon = 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nu_stays_in_the_open_interval(theta in 1e-4..(2.0 * std::f64::consts::PI - 1e-4)) {
            if let Ok(params) = CoinParameters::from_theta(theta) {
                let value = nu(&params);
                prop_assert!(value > -1.0 && value < 0.0, "nu = {value} at theta = {theta}");
                // The density support stays inside (−1, 1), keeping the
                // (1 − x²) factor away from zero.
                prop_assert!(support_half_width(&params) < 1.0);
            }
        }

        #[test]
        fn delta_lies_in_unit_interval_and_mass_identity_holds(
            theta in 0.3..(std::f64::consts::PI - 0.3),
            re in proptest::array::uniform3(-1.0f64..1.0),
            im in proptest::array::uniform3(-1.0f64..1.0),
        ) {
            let norm2: f64 = (0..3).map(|i| re[i] * re[i] + im[i] * im[i]).sum();
            prop_assume!(norm2 > 1e-2);
            let spin = SpinVector::normalized(
                Complex64::new(re[0], im[0]),
                Complex64::new(re[1], im[1]),
                Complex64::new(re[2], im[2]),
            ).unwrap();
            let params = CoinParameters::from_theta(theta).unwrap();
            let dist = LimitDistribution::new(&params, &spin);
            let delta = dist.atom_mass();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&delta));
            prop_assert!(dist.constants().d0 >= 0.0);
            prop_assert!((dist.moment(0) - 1.0).abs() < 1e-6);
        }

        #[test]
        fn mirror_symmetry_is_exact(
            theta in 0.3..(std::f64::consts::PI - 0.3),
            re in proptest::array::uniform3(-1.0f64..1.0),
            im in proptest::array::uniform3(-1.0f64..1.0),
            x in -30i64..30,
        ) {
            let norm2: f64 = (0..3).map(|i| re[i] * re[i] + im[i] * im[i]).sum();
            prop_assume!(norm2 > 1e-2);
            let spin = SpinVector::normalized(
                Complex64::new(re[0], im[0]),
                Complex64::new(re[1], im[1]),
                Complex64::new(re[2], im[2]),
            ).unwrap();
            let params = CoinParameters::from_theta(theta).unwrap();
            let direct = limit_measure_origin(&params, &spin, x);
            let mirrored = limit_measure_origin(&params, &spin.mirrored(), -x);
            prop_assert_eq!(direct, mirrored);
        }

        #[test]
        fn localization_criterion_agrees_with_delta(
            theta in 0.3..(std::f64::consts::PI - 0.3),
            re in proptest::array::uniform3(-1.0f64..1.0),
        ) {
            let norm2: f64 = re.iter().map(|r| r * r).sum();
            prop_assume!(norm2 > 1e-2);
            let spin = SpinVector::normalized(
                Complex64::new(re[0], 0.0),
                Complex64::new(re[1], 0.0),
                Complex64::new(re[2], 0.0),
            ).unwrap();
            let params = CoinParameters::from_theta(theta).unwrap();
            let delta = localization_mass(&params, &spin);
            prop_assume!(!(1e-13..=1e-11).contains(&delta));
            prop_assert_eq!(is_localized(&params, &spin), delta > 1e-12);
        }
    }
}
