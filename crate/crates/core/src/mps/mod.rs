//! Method of particular solutions for Steklov eigenvalues of radially
//! perturbed balls and annuli.
//!
//! The trial space is spanned by solid harmonics up to degree `L`; values
//! and normal derivatives at collocation points on the perturbed boundaries
//! give matrices `B` and `A`, and the eigenvalues solve
//! `BᵀA α = σ BᵀB α`.

mod assemble;
mod boundary;
mod points;
mod solve;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::DomainSpec;

pub use assemble::{ansatz_columns, assemble_system, AnsatzColumn, MpsSystem};
pub use boundary::{perturbed_boundary, BoundaryPoint};
pub use points::collocation_points;
pub use solve::{solve_steklov, MpsSolution, SolveDiagnostics};
pub use sweep::{branch_sweep, match_residual, slopes_at_zero, BranchData, Slopes};

/// Discretization parameters for the MPS solver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MpsConfig {
    /// Highest harmonic degree in the ansatz.
    pub lmax: u32,
    /// Collocation points on the outer boundary.
    pub k_outer: usize,
    /// Collocation points on the inner boundary (ignored for balls).
    pub k_inner: usize,
    /// Perturbation parameters; must contain 0.
    pub t_grid: Vec<f64>,
    /// Number of lowest eigenvalues kept per parameter.
    pub count: usize,
    /// Relative eigenvalue cutoff for the Gram matrix `BᵀB`.
    pub rank_cutoff: f64,
}

/// `±{0.002, 0.004, …, 0.02}` together with 0, ascending.
pub fn default_t_grid() -> Vec<f64> {
    let pos: Vec<f64> = (1..=10).map(|k| k as f64 / 500.0).collect();
    pos.iter()
        .rev()
        .map(|t| -t)
        .chain(std::iter::once(0.0))
        .chain(pos.iter().copied())
        .collect()
}

/// Number of regular (equivalently singular) ansatz functions up to degree `lmax`.
pub fn ansatz_per_boundary(dim: usize, lmax: u32) -> usize {
    match dim {
        2 => 2 * lmax as usize + 1,
        _ => (lmax as usize + 1).pow(2),
    }
}

/// Collocation count giving twice as many rows as ansatz functions per boundary.
pub fn auto_points(dim: usize, lmax: u32) -> usize {
    2 * ansatz_per_boundary(dim, lmax)
}

impl MpsConfig {
    pub fn for_domain(domain: &DomainSpec) -> Self {
        let lmax = 7;
        let k = auto_points(domain.dim, lmax);
        MpsConfig {
            lmax,
            k_outer: k,
            k_inner: if domain.is_annulus() { k } else { 0 },
            t_grid: default_t_grid(),
            count: 10,
            rank_cutoff: 1e-12,
        }
    }

    /// Check the configuration against `domain`.
    pub fn validate(&self, domain: &DomainSpec) -> Result<()> {
        domain.validate()?;
        if domain.dim != 2 && domain.dim != 3 {
            return Err(Error::UnsupportedDimension(domain.dim, "d ∈ {2, 3}"));
        }
        let per = ansatz_per_boundary(domain.dim, self.lmax);
        for (name, k) in self.point_counts(domain) {
            if k < per {
                return Err(Error::InvalidConfig(format!(
                    "{k} {name} collocation points cannot resolve {per} ansatz functions"
                )));
            }
        }
        if self.t_grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidConfig("t_grid must be finite".into()));
        }
        if self.count == 0 {
            return Err(Error::InvalidConfig("count must be positive".into()));
        }
        if !(self.rank_cutoff > 0.0 && self.rank_cutoff < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rank cutoff {} must lie in (0, 1)",
                self.rank_cutoff
            )));
        }
        Ok(())
    }

    /// One message per boundary whose oversampling is below two.
    pub fn oversampling_warnings(&self, domain: &DomainSpec) -> Vec<String> {
        let per = ansatz_per_boundary(domain.dim, self.lmax);
        self.point_counts(domain)
            .into_iter()
            .filter(|&(_, k)| k < 2 * per)
            .map(|(name, k)| {
                format!(
                    "{name} boundary oversampling {:.2} is below 2 ({k} points, {per} ansatz functions per boundary)",
                    k as f64 / per as f64
                )
            })
            .collect()
    }

    fn point_counts(&self, domain: &DomainSpec) -> Vec<(&'static str, usize)> {
        let mut v = vec![("outer", self.k_outer)];
        if domain.is_annulus() {
            v.push(("inner", self.k_inner));
        }
        v
    }
}
