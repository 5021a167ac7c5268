use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::assemble::assemble_system;
use super::solve::{solve_steklov, SolveDiagnostics};
use super::MpsConfig;
use crate::error::{Error, Result};
use crate::perturbation::DeformationField;
use crate::spectra::{DomainSpec, SteklovEigen};

/// Lowest eigenvalues of the perturbed domains over a parameter grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchData {
    pub t: Vec<f64>,
    /// `values[i][k]` is the `k`-th eigenvalue at `t[i]`, ascending in `k`.
    pub values: Vec<Vec<f64>>,
    pub diagnostics: Vec<SolveDiagnostics>,
}

impl BranchData {
    pub fn branch_count(&self) -> usize {
        self.values.first().map_or(0, |v| v.len())
    }

    /// Values of branch `k` across the grid.
    pub fn branch(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|col| col[k]).collect()
    }
}

/// Solve at every `t` of the grid; the output keeps the grid order.
///
/// Solves run in parallel but each one is a pure function of its `t`, so the
/// result does not depend on scheduling.
pub fn branch_sweep(
    domain: &DomainSpec,
    field: &DeformationField,
    config: &MpsConfig,
) -> Result<BranchData> {
    config.validate(domain)?;
    for w in config.oversampling_warnings(domain) {
        log::debug!("{w}");
    }
    let r_min = domain.r_i.unwrap_or(domain.r_o);
    let limit = config.lmax as f64 / r_min;
    let solved: Vec<Result<(Vec<f64>, SolveDiagnostics)>> = config
        .t_grid
        .par_iter()
        .map(|&t| {
            let run = || -> Result<(Vec<f64>, SolveDiagnostics)> {
                let sys = assemble_system(domain, field, t, config)?;
                let sol = solve_steklov(&sys.a, &sys.b, config.rank_cutoff, config.count, limit)?;
                if sol.eigenvalues.len() < config.count {
                    return Err(Error::RankCollapse(format!(
                        "only {} eigenvalues resolved, {} requested",
                        sol.eigenvalues.len(),
                        config.count
                    )));
                }
                Ok((sol.eigenvalues[..config.count].to_vec(), sol.diagnostics))
            };
            run().map_err(|e| Error::AtParameter {
                t,
                source: Box::new(e),
            })
        })
        .collect();
    let mut values = Vec::with_capacity(solved.len());
    let mut diagnostics = Vec::with_capacity(solved.len());
    for r in solved {
        let (v, d) = r?;
        values.push(v);
        diagnostics.push(d);
    }
    Ok(BranchData {
        t: config.t_grid.clone(),
        values,
        diagnostics,
    })
}

/// One-sided derivatives at `t = 0` of the branches emanating from one
/// eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Slopes {
    /// Ascending.
    pub right: Vec<f64>,
    /// Ascending.
    pub left: Vec<f64>,
    /// First branch index of the window.
    pub start: usize,
    /// Smallest separation from neighbouring branches at `t = 0`.
    pub gap: f64,
    /// Largest displacement over the stencil points of a window branch or
    /// of its two neighbours.
    pub movement: f64,
}

// Derivative at 0 from values at 0, t1, t2 (second order, one-sided).
fn one_sided(f0: f64, f1: f64, f2: f64, t1: f64, t2: f64) -> f64 {
    f0 * (-(t1 + t2) / (t1 * t2)) + f1 * t2 / (t1 * (t2 - t1)) - f2 * t1 / (t2 * (t2 - t1))
}

/// Second-order one-sided slopes of the `p` branches starting at
/// `eigen.index`.
///
/// The window must be separated from its neighbours at `t = 0` by more than
/// twice the largest movement of it and its neighbours over the stencil, so
/// that no branch can have changed places with a neighbour; otherwise
/// [`Error::WindowConflict`] is returned.
pub fn slopes_at_zero(branches: &BranchData, eigen: &SteklovEigen) -> Result<Slopes> {
    let find = |pred: &dyn Fn(f64) -> bool, nearest_first: bool| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..branches.t.len())
            .filter(|&i| pred(branches.t[i]))
            .collect();
        idx.sort_by(|&a, &b| branches.t[a].abs().total_cmp(&branches.t[b].abs()));
        if !nearest_first {
            idx.reverse();
        }
        idx
    };
    let zero = find(&|t| t == 0.0, true);
    let pos = find(&|t| t > 0.0, true);
    let neg = find(&|t| t < 0.0, true);
    let Some(&i0) = zero.first() else {
        return Err(Error::InvalidConfig("t_grid must contain 0".into()));
    };
    if pos.len() < 2 || neg.len() < 2 {
        return Err(Error::InvalidConfig(
            "t_grid needs at least two points on each side of 0".into(),
        ));
    }
    let start = eigen.index;
    let p = eigen.multiplicity as usize;
    let nb = branches.branch_count();
    if start + p > nb {
        return Err(Error::InvalidConfig(format!(
            "branch window {}..{} exceeds the {nb} computed branches",
            start,
            start + p
        )));
    }
    let col = |i: usize, k: usize| branches.values[i][k];
    let stencil = [i0, pos[0], pos[1], neg[0], neg[1]];
    let mut movement: f64 = 0.0;
    let lo = start.saturating_sub(1);
    let hi = (start + p + 1).min(nb);
    for k in lo..hi {
        for &i in &stencil {
            movement = movement.max((col(i, k) - col(i0, k)).abs());
        }
    }
    let mut gap = f64::INFINITY;
    if start > 0 {
        gap = gap.min(col(i0, start) - col(i0, start - 1));
    }
    if start + p < nb {
        gap = gap.min(col(i0, start + p) - col(i0, start + p - 1));
    }
    if gap <= 2.0 * movement {
        return Err(Error::WindowConflict(format!(
            "branches {start}..{} move by {movement:.3e} but are separated from neighbours by only {gap:.3e}",
            start + p
        )));
    }
    let side = |a: usize, b: usize| -> Vec<f64> {
        let (t1, t2) = (branches.t[a], branches.t[b]);
        let mut s: Vec<f64> = (start..start + p)
            .map(|k| one_sided(col(i0, k), col(a, k), col(b, k), t1, t2))
            .collect();
        s.sort_by(f64::total_cmp);
        s
    };
    Ok(Slopes {
        right: side(pos[0], pos[1]),
        left: side(neg[0], neg[1]),
        start,
        gap,
        movement,
    })
}

/// Largest relative deviation between two ascending multisets, with
/// magnitudes below 0.5 compared absolutely.
pub fn match_residual(slopes: &[f64], predicted: &[f64]) -> f64 {
    if slopes.len() != predicted.len() {
        return f64::INFINITY;
    }
    slopes
        .iter()
        .zip(predicted)
        .map(|(s, e)| (s - e).abs() / e.abs().max(0.5))
        .fold(0.0, f64::max)
}
