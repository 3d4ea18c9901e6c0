//! Exact state evolution: coin-then-shift steps on a finite support window.

use num_complex::Complex64;

use crate::coin::{CoinOperator, SpinVector};

/// Boundary cells whose components are all below this magnitude are trimmed
/// after a step; interior zeros are kept to avoid support bookkeeping bugs.
const TRIM_EPS: f64 = 1e-300;

/// The full walk state Ψ_t: one 3-component complex amplitude per position in
/// a contiguous window, implicitly zero outside.
///
/// States are immutable; `step` and `evolve` return new values. Chirality 0
/// moves the walker left, 1 keeps it in place, 2 moves it right.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    support_lo: i64,
    amplitudes: Vec<[Complex64; 3]>,
}

impl WalkState {
    /// The walker at the origin with coin state (α, β, γ).
    pub fn localized(spin: &SpinVector) -> Self {
        Self {
            support_lo: 0,
            amplitudes: vec![spin.components()],
        }
    }

    pub(crate) fn from_amplitudes(support_lo: i64, amplitudes: Vec<[Complex64; 3]>) -> Self {
        let mut state = Self {
            support_lo,
            amplitudes,
        };
        state.trim();
        state
    }

    fn trim(&mut self) {
        let negligible = |cell: &[Complex64; 3]| {
            cell.iter()
                .all(|a| a.re.abs() < TRIM_EPS && a.im.abs() < TRIM_EPS)
        };
        while self.amplitudes.len() > 1 && negligible(self.amplitudes.last().unwrap()) {
            self.amplitudes.pop();
        }
        let leading = self
            .amplitudes
            .iter()
            .take_while(|cell| negligible(cell))
            .count()
            .min(self.amplitudes.len() - 1);
        if leading > 0 {
            self.amplitudes.drain(..leading);
            self.support_lo += leading as i64;
        }
    }

    pub fn support_lo(&self) -> i64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> i64 {
        self.support_lo + self.amplitudes.len() as i64 - 1
    }

    /// Amplitude triple at position `x`; zero outside the support window.
    pub fn amplitude(&self, x: i64) -> [Complex64; 3] {
        if x < self.support_lo || x > self.support_hi() {
            return [Complex64::ZERO; 3];
        }
        self.amplitudes[(x - self.support_lo) as usize]
    }

    /// Total squared norm Σ_x Σ_j |ψ(x)_j|²; stays 1 up to rounding drift.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|cell| (cell[0].norm_sqr() + cell[2].norm_sqr()) + cell[1].norm_sqr())
            .sum()
    }

    /// One coin-then-shift step: component j of C·ψ(x) lands at x − 1 + j.
    pub fn step(&self, coin: &CoinOperator) -> WalkState {
        let n = self.amplitudes.len();
        let mut out = vec![[Complex64::ZERO; 3]; n + 2];
        for (i, cell) in self.amplitudes.iter().enumerate() {
            let v = coin.apply(cell);
            // Each (cell, component) pair below has a unique writer.
            out[i][0] = v[0];
            out[i + 1][1] = v[1];
            out[i + 2][2] = v[2];
        }
        WalkState::from_amplitudes(self.support_lo - 1, out)
    }

    /// `t` repeated steps; `t = 0` returns the state unchanged.
    pub fn evolve(&self, coin: &CoinOperator, t: u32) -> WalkState {
        let mut state = self.clone();
        for _ in 0..t {
            state = state.step(coin);
        }
        state
    }

    /// P(X = x) for every position in the support window.
    pub fn position_distribution(&self) -> ProbabilityDistribution {
        ProbabilityDistribution {
            support_lo: self.support_lo,
            masses: self
                .amplitudes
                .iter()
                .map(|cell| (cell[0].norm_sqr() + cell[2].norm_sqr()) + cell[1].norm_sqr())
                .collect(),
        }
    }

    /// |ψ(x)_j|²: the probability of observing the walker at `x` with
    /// chirality `j`.
    ///
    /// Panics if `j > 2`.
    pub fn component_probability(&self, x: i64, j: usize) -> f64 {
        assert!(j < 3, "chirality index {j} out of range");
        self.amplitude(x)[j].norm_sqr()
    }
}

/// A position distribution on a contiguous window of the integers.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    support_lo: i64,
    masses: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn support_lo(&self) -> i64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> i64 {
        self.support_lo + self.masses.len() as i64 - 1
    }

    pub fn mass(&self, x: i64) -> f64 {
        if x < self.support_lo || x > self.support_hi() {
            return 0.0;
        }
        self.masses[(x - self.support_lo) as usize]
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(move |(i, &m)| (self.support_lo + i as i64, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{CoinParameters, SpinVector};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn grover_coin() -> CoinOperator {
        CoinOperator::build(&CoinParameters::grover())
    }

    #[test]
    fn localized_state_has_single_site() {
        let spin = SpinVector::from_reals(1.0, 0.0, 0.0).unwrap();
        let state = WalkState::localized(&spin);
        assert_eq!((state.support_lo(), state.support_hi()), (0, 0));
        assert_eq!(state.amplitude(0)[0], Complex64::new(1.0, 0.0));
        assert_abs_diff_eq!(state.norm_sqr(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn one_grover_step_from_left_chirality() {
        // Coin column 0 is (−1/3, 2/3, 2/3); the shift sends those components
        // to x = −1, 0, 1.
        let spin = SpinVector::from_reals(1.0, 0.0, 0.0).unwrap();
        let state = WalkState::localized(&spin).step(&grover_coin());
        let dist = state.position_distribution();
        assert_abs_diff_eq!(dist.mass(-1), 1.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.mass(0), 4.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.mass(1), 4.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            state.component_probability(0, 1),
            4.0 / 9.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn component_probability_at_origin() {
        let spin = SpinVector::from_reals(0.8, 0.6, 0.0).unwrap();
        let state = WalkState::localized(&spin);
        assert_abs_diff_eq!(state.component_probability(0, 1), 0.36, epsilon = 1e-15);
        assert_eq!(state.component_probability(5, 0), 0.0);
    }

    #[test]
    #[should_panic(expected = "chirality index")]
    fn invalid_chirality_panics() {
        let spin = SpinVector::from_reals(1.0, 0.0, 0.0).unwrap();
        WalkState::localized(&spin).component_probability(0, 3);
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let spin = SpinVector::from_reals(0.6, 0.0, 0.8).unwrap();
        let state = WalkState::localized(&spin);
        assert_eq!(state.evolve(&grover_coin(), 0), state);
    }

    #[test]
    fn evolve_two_steps_matches_double_step() {
        let spin = SpinVector::from_reals(0.6, 0.8, 0.0).unwrap();
        let coin = grover_coin();
        let state = WalkState::localized(&spin);
        assert_eq!(state.evolve(&coin, 2), state.step(&coin).step(&coin));
    }

    #[test]
    fn support_stays_within_light_cone() {
        let spin = SpinVector::from_reals(0.0, 1.0, 0.0).unwrap();
        let coin = grover_coin();
        let state = WalkState::localized(&spin).evolve(&coin, 40);
        assert!(state.support_lo() >= -40);
        assert!(state.support_hi() <= 40);
        let dist = state.position_distribution();
        assert_eq!(dist.mass(41), 0.0);
        assert_eq!(dist.mass(-41), 0.0);
    }

    #[test]
    fn norm_is_conserved_over_long_runs() {
        let spin = SpinVector::from_reals(1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt())
            .unwrap();
        let params = CoinParameters::from_theta(std::f64::consts::FRAC_PI_4).unwrap();
        let coin = CoinOperator::build(&params);
        let state = WalkState::localized(&spin).evolve(&coin, 2000);
        assert!((state.position_distribution().total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mirrored_spin_mirrors_distribution_exactly() {
        let coin = grover_coin();
        let spin = SpinVector::normalized(
            Complex64::new(0.3, 0.4),
            Complex64::new(-0.1, 0.2),
            Complex64::new(0.5, -0.6),
        )
        .unwrap();
        let a = WalkState::localized(&spin)
            .evolve(&coin, 25)
            .position_distribution();
        let b = WalkState::localized(&spin.mirrored())
            .evolve(&coin, 25)
            .position_distribution();
        for (x, mass) in a.iter() {
            assert_eq!(mass, b.mass(-x), "mirror mismatch at x = {x}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn step_preserves_norm(
            theta in 1e-2..(std::f64::consts::PI - 1e-2),
            re in proptest::array::uniform3(-1.0f64..1.0),
            im in proptest::array::uniform3(-1.0f64..1.0),
            t in 0u32..40,
        ) {
            let norm2: f64 = (0..3).map(|i| re[i] * re[i] + im[i] * im[i]).sum();
            prop_assume!(norm2 > 1e-3);
            let spin = SpinVector::normalized(
                Complex64::new(re[0], im[0]),
                Complex64::new(re[1], im[1]),
                Complex64::new(re[2], im[2]),
            ).unwrap();
            let params = CoinParameters::from_theta(theta).unwrap();
            let coin = CoinOperator::build(&params);
            let state = WalkState::localized(&spin).evolve(&coin, t);
            prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12 * f64::from(t.max(1)));
        }

        #[test]
        fn masses_are_nonnegative_and_sum_to_one(
            theta in 1e-2..(std::f64::consts::PI - 1e-2),
            t in 0u32..30,
        ) {
            let spin = SpinVector::from_reals(0.6, 0.0, 0.8).unwrap();
            let params = CoinParameters::from_theta(theta).unwrap();
            let coin = CoinOperator::build(&params);
            let dist = WalkState::localized(&spin).evolve(&coin, t).position_distribution();
            prop_assert!(dist.iter().all(|(_, m)| m >= 0.0));
            prop_assert!((dist.total() - 1.0).abs() < 1e-10);
        }
    }
}
