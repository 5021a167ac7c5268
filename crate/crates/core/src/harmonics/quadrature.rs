use std::f64::consts::PI;

use super::{Angles, C64};
use crate::error::{Error, Result};

/// Nodes and positive weights on the unit circle or unit sphere.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub dim: usize,
    /// Polynomial degree up to which the rule is exact.
    pub degree_bound: u32,
    pub nodes: Vec<Angles>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(Angles) -> C64>(&self, mut f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(C64::new(0.0, 0.0), |acc, (&a, &w)| acc + f(a) * w)
    }

    pub fn integrate_real<F: FnMut(Angles) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| f(a) * w)
            .sum()
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Product rule exact for all polynomials of total degree at most
/// `degree_bound` on the circle (d = 2) or sphere (d = 3).
pub fn sphere_quadrature(dim: usize, degree_bound: u32) -> Result<QuadratureRule> {
    let nphi = 2 * degree_bound as usize + 2;
    let dphi = 2.0 * PI / nphi as f64;
    match dim {
        2 => Ok(QuadratureRule {
            dim,
            degree_bound,
            nodes: (0..nphi).map(|k| Angles::circle(k as f64 * dphi)).collect(),
            weights: vec![dphi; nphi],
        }),
        3 => {
            let (x, w) = gauss_legendre(degree_bound as usize + 1);
            let mut nodes = Vec::with_capacity(x.len() * nphi);
            let mut weights = Vec::with_capacity(x.len() * nphi);
            for (xi, wi) in x.iter().zip(&w) {
                let theta = xi.clamp(-1.0, 1.0).acos();
                for k in 0..nphi {
                    nodes.push(Angles::sphere(theta, k as f64 * dphi));
                    weights.push(wi * dphi);
                }
            }
            Ok(QuadratureRule {
                dim,
                degree_bound,
                nodes,
                weights,
            })
        }
        _ => Err(Error::UnsupportedDimension(dim, "d ∈ {2, 3}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{eval_harmonic, Basis, HarmonicIndex};

    #[test]
    fn gauss_legendre_integrates_monomials() {
        let (x, w) = gauss_legendre(6);
        for k in 0..12 {
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let exact = if k % 2 == 1 {
                0.0
            } else {
                2.0 / (k as f64 + 1.0)
            };
            assert!((q - exact).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn weights_sum_to_area() {
        let r = sphere_quadrature(2, 0).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-14);
        let r = sphere_quadrature(3, 7).unwrap();
        assert!((r.weights.iter().sum::<f64>() - 4.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn degree_sixteen_examples() {
        let r = sphere_quadrature(3, 16).unwrap();
        let i =
            r.integrate(|a| eval_harmonic(HarmonicIndex::new(8, 3), 3, a, Basis::Complex).unwrap());
        assert!(i.norm() < 1e-13);
        let i = r.integrate_real(|a| {
            eval_harmonic(HarmonicIndex::new(5, 2), 3, a, Basis::Complex)
                .unwrap()
                .norm_sqr()
        });
        assert!((i - 1.0).abs() < 1e-13);
    }
}
