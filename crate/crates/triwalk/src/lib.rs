//! Simulation and limit-law toolkit for 3-state coined quantum walks on the
//! integer line.
//!
//! A walker on the integers carries a 3-dimensional coin; each step mixes the
//! coin with a one-parameter family of real symmetric unitaries (containing
//! the Grover coin) and then shifts chirality 0 left, keeps 1 in place, and
//! shifts 2 right. The crate covers four aspects of these walks:
//!
//! - [`coin`] and [`state`]: exact step-by-step evolution and position
//!   distributions,
//! - [`spectral`]: the Fourier-space picture — the momentum-dependent coin,
//!   its closed-form eigensystem, the five-rotation factorization, and an
//!   independent evolution oracle via inverse Fourier quadrature,
//! - [`limit`]: closed-form long-time behavior for origin starts — the
//!   pointwise limit measure, the localization mass, and the rescaled weak
//!   limit (density, CDF, moments),
//! - [`uniform`]: delocalized comb initial states whose limit measures are
//!   discrete uniform distributions.

pub mod coin;
mod error;
pub mod limit;
pub mod quad;
pub mod spectral;
pub mod state;
pub mod uniform;

pub use coin::{CoinOperator, CoinParameters, SpinVector};
pub use error::Error;
pub use state::{ProbabilityDistribution, WalkState};
