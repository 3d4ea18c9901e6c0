//! Eigendecomposition of 3×3 normal matrices.
//!
//! Small enough that a direct route beats a general-purpose solver: roots of
//! the characteristic cubic (Cardano, then Newton polish), eigenvectors from
//! the null space of M − λI via complex cross products, with a rank-one
//! branch for repeated eigenvalues. Normality guarantees a full orthonormal
//! eigenbasis; callers must not pass non-normal matrices.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

/// Eigenvalues below this distance apart are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Clone)]
pub struct Eigen3 {
    pub values: [Complex64; 3],
    pub vectors: [Vector3<Complex64>; 3],
}

/// Full eigendecomposition of a normal matrix; vectors are orthonormal.
pub fn eigen_normal(m: &Matrix3<Complex64>) -> Eigen3 {
    let mut values = eigenvalues(m);
    let mut vectors = [Vector3::zeros(); 3];

    let near = |a: Complex64, b: Complex64| (a - b).norm() < CLUSTER_TOL;
    let mut assigned = [false; 3];
    for i in 0..3 {
        if assigned[i] {
            continue;
        }
        let mates: Vec<usize> = (i..3).filter(|&j| near(values[i], values[j])).collect();
        match mates.len() {
            1 => {
                vectors[i] = simple_eigenvector(m, values[i]);
                assigned[i] = true;
            }
            2 => {
                let mean = (values[mates[0]] + values[mates[1]]) / Complex64::new(2.0, 0.0);
                let (v1, v2) = plane_basis(m, mean);
                vectors[mates[0]] = v1;
                vectors[mates[1]] = v2;
                assigned[mates[0]] = true;
                assigned[mates[1]] = true;
            }
            _ => {
                // M is a multiple of the identity.
                for (j, &idx) in mates.iter().enumerate() {
                    let mut e = Vector3::zeros();
                    e[j] = Complex64::new(1.0, 0.0);
                    vectors[idx] = e;
                    assigned[idx] = true;
                }
            }
        }
    }

    // Double roots of the characteristic polynomial carry only half
    // precision; the Rayleigh quotient of the (well-conditioned) eigenvector
    // restores full precision for normal matrices.
    for (value, vector) in values.iter_mut().zip(&vectors) {
        *value = vector.dotc(&(m * vector));
    }

    Eigen3 { values, vectors }
}

/// Roots of the characteristic polynomial of `m`.
pub fn eigenvalues(m: &Matrix3<Complex64>) -> [Complex64; 3] {
    // λ³ + c2 λ² + c1 λ + c0
    let c2 = -(m[(0, 0)] + m[(1, 1)] + m[(2, 2)]);
    let c1 = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)])
        + (m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)])
        + (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)]);
    let c0 = -m.determinant();

    let eval = |x: Complex64| ((x + c2) * x + c1) * x + c0;
    let deriv = |x: Complex64| (x * 3.0 + c2 * 2.0) * x + c1;

    let mut roots = cardano(c2, c1, c0);
    for root in &mut roots {
        for _ in 0..3 {
            let d = deriv(*root);
            if d.norm() < 1e-300 {
                break;
            }
            *root -= eval(*root) / d;
        }
    }
    roots
}

fn cardano(c2: Complex64, c1: Complex64, c0: Complex64) -> [Complex64; 3] {
    let third = Complex64::new(1.0 / 3.0, 0.0);
    let shift = c2 * third;
    // Depressed cubic y³ + p y + q with λ = y − c2/3.
    let p = c1 - c2 * c2 * third;
    let q = c2 * c2 * c2 * (2.0 / 27.0) - c2 * c1 * third + c0;

    let disc = (q * q * 0.25 + p * p * p / 27.0).sqrt();
    let u3_plus = -q * 0.5 + disc;
    let u3_minus = -q * 0.5 - disc;
    let u3 = if u3_plus.norm() >= u3_minus.norm() {
        u3_plus
    } else {
        u3_minus
    };

    if u3.norm() < 1e-300 {
        return [-shift; 3];
    }
    let u = u3.cbrt();
    let v = -p / (u * 3.0);
    let omega = Complex64::new(-0.5, 0.5 * 3f64.sqrt());
    let omega_bar = omega.conj();
    [
        u + v - shift,
        u * omega + v * omega_bar - shift,
        u * omega_bar + v * omega - shift,
    ]
}

fn cross_c(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Vector3<Complex64> {
    Vector3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

fn residual(m: &Matrix3<Complex64>, lambda: Complex64, v: &Vector3<Complex64>) -> f64 {
    (m * v - v * lambda).norm()
}

/// Eigenvector for a well-separated eigenvalue: the null direction of
/// M − λI is the cross product of its two most independent rows, refined by
/// one shifted inverse-iteration step.
fn simple_eigenvector(m: &Matrix3<Complex64>, lambda: Complex64) -> Vector3<Complex64> {
    let shifted = m - Matrix3::identity() * lambda;
    let rows: [Vector3<Complex64>; 3] = [
        shifted.row(0).transpose(),
        shifted.row(1).transpose(),
        shifted.row(2).transpose(),
    ];
    let candidates = [
        cross_c(&rows[0], &rows[1]),
        cross_c(&rows[1], &rows[2]),
        cross_c(&rows[0], &rows[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let mut v = best / Complex64::new(best.norm(), 0.0);

    let perturbed = shifted + Matrix3::identity() * Complex64::new(1e-13, 0.0);
    if let Some(refined) = perturbed.lu().solve(&v) {
        let norm = refined.norm();
        if norm.is_finite() && norm > 0.0 {
            let candidate = refined / Complex64::new(norm, 0.0);
            if residual(m, lambda, &candidate) < residual(m, lambda, &v) {
                v = candidate;
            }
        }
    }
    v
}

/// Orthonormal basis of the two-dimensional eigenspace of a doubly repeated
/// eigenvalue. M − λI has rank one there, so the null space is the set of
/// vectors annihilated by its dominant row.
fn plane_basis(
    m: &Matrix3<Complex64>,
    lambda: Complex64,
) -> (Vector3<Complex64>, Vector3<Complex64>) {
    let shifted = m - Matrix3::identity() * lambda;
    let rows: [Vector3<Complex64>; 3] = [
        shifted.row(0).transpose(),
        shifted.row(1).transpose(),
        shifted.row(2).transpose(),
    ];
    let r = rows
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();

    let dominant = (0..3)
        .max_by(|&i, &j| r[i].norm().total_cmp(&r[j].norm()))
        .unwrap();
    let mut spanning = Vec::with_capacity(2);
    for i in 0..3 {
        if i != dominant {
            let mut e = Vector3::zeros();
            e[i] = Complex64::new(1.0, 0.0);
            spanning.push(cross_c(&r, &e));
        }
    }

    let v1 = spanning[0] / Complex64::new(spanning[0].norm(), 0.0);
    let mut v2 = spanning[1] - v1 * v1.dotc(&spanning[1]);
    if v2.norm() < 1e-8 {
        // The two candidates were nearly parallel; the remaining pairing
        // cannot be, because the cross kernel is one-dimensional.
        let mut e = Vector3::zeros();
        e[dominant] = Complex64::new(1.0, 0.0);
        let w = cross_c(&r, &e);
        v2 = w - v1 * v1.dotc(&w);
    }
    let v2 = v2 / Complex64::new(v2.norm(), 0.0);
    (v1, v2)
}
