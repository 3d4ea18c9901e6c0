//! Gauss–Legendre quadrature for the smooth integrands left after the
//! edge-singularity substitutions in the limit module.

use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// 64 nodes are plenty for every analytic integrand in this crate.
fn rule64() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}

/// ∫_a^b f(x) dx by the cached 64-point rule mapped onto [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = rule64();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let sum: f64 = nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum();
    half * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn five_point_nodes_match_reference() {
        let (nodes, weights) = gauss_legendre(5);
        let expected = 0.906_179_845_938_664;
        assert_abs_diff_eq!(nodes[4], expected, epsilon = 1e-14);
        assert_abs_diff_eq!(nodes[0], -expected, epsilon = 1e-14);
        assert_abs_diff_eq!(nodes[2], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(weights[2], 128.0 / 225.0, epsilon = 1e-14);
        assert_abs_diff_eq!(weights.iter().sum::<f64>(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn integrates_analytic_functions() {
        assert_abs_diff_eq!(
            integrate(f64::sin, 0.0, std::f64::consts::PI),
            2.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            integrate(f64::exp, 0.0, 1.0),
            1f64.exp() - 1.0,
            epsilon = 1e-13
        );
    }

    proptest! {
        // An n-point rule is exact for polynomials of degree 2n − 1.
        #[test]
        fn exact_on_monomials(n in 2usize..20, deg_frac in 0.0f64..1.0) {
            let deg = (deg_frac * (2.0 * n as f64 - 1.0)) as i32;
            let (nodes, weights) = gauss_legendre(n);
            let got: f64 = nodes.iter().zip(&weights).map(|(&x, &w)| w * x.powi(deg)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (f64::from(deg) + 1.0) };
            prop_assert!((got - exact).abs() < 1e-12);
        }
    }
}
