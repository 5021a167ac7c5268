use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{evd_real, evd_scratch, ComputeEigenvectors};
use faer::{Mat, Par};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Solver health indicators for one generalized eigenproblem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    /// Retained dimension after the Gram-matrix cutoff.
    pub rank: usize,
    pub columns: usize,
    /// Ratio of largest to smallest retained Gram eigenvalue.
    pub condition: f64,
    /// Largest imaginary part among the reduced eigenvalues.
    pub max_imag: f64,
    /// `‖Aα − σBα‖ / ‖Bα‖` for the returned eigenpairs.
    pub residuals: Vec<f64>,
    /// How many of the returned eigenvalues exceed the resolvable limit.
    pub unresolved: usize,
}

/// Eigenvalues of `BᵀA α = σ BᵀB α`, ascending.
#[derive(Clone, Debug)]
pub struct MpsSolution {
    /// All retained eigenvalues (real parts), ascending.
    pub eigenvalues: Vec<f64>,
    /// Coefficient vectors of the lowest `count` eigenvalues, as columns.
    pub vectors: DMatrix<f64>,
    /// Whether each eigenvalue lies above the resolvable limit.
    pub unresolved: Vec<bool>,
    pub diagnostics: SolveDiagnostics,
}

/// Solve the collocation eigenproblem.
///
/// `BᵀB` is diagonalized and directions with eigenvalue below
/// `rank_cutoff · max` are discarded. On the retained subspace the problem
/// becomes an ordinary eigenproblem whose eigenvalues are returned by real
/// part. Eigenvalues above `resolvable_limit` are flagged.
pub fn solve_steklov(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    rank_cutoff: f64,
    count: usize,
    resolvable_limit: f64,
) -> Result<MpsSolution> {
    if a.shape() != b.shape() {
        return Err(Error::InvalidConfig(format!(
            "A is {:?} but B is {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let n = b.ncols();
    if n == 0 {
        return Err(Error::RankCollapse("no ansatz columns".into()));
    }
    let h = b.tr_mul(b);
    let g = b.tr_mul(a);
    let eig = h.symmetric_eigen();
    let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    if top <= 0.0 || !top.is_finite() {
        return Err(Error::RankCollapse("Gram matrix BᵀB vanishes".into()));
    }
    let mut keep: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i] > rank_cutoff * top)
        .collect();
    keep.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    if keep.is_empty() {
        return Err(Error::RankCollapse(
            "every direction fell below the cutoff".into(),
        ));
    }
    let k = keep.len();
    let low = eig.eigenvalues[*keep.last().unwrap()];
    let mut w = DMatrix::<f64>::zeros(n, k);
    for (j, &i) in keep.iter().enumerate() {
        let s = 1.0 / eig.eigenvalues[i].sqrt();
        w.set_column(j, &(eig.eigenvectors.column(i) * s));
    }
    let c = w.tr_mul(&g) * &w;
    let (mut values, max_imag) = reduced_eigenvalues(&c)?;
    values.sort_by(f64::total_cmp);

    let m = count.min(k);
    let mut vectors = DMatrix::<f64>::zeros(n, m);
    let mut residuals = Vec::with_capacity(m);
    for (j, &sigma) in values.iter().take(m).enumerate() {
        let y = inverse_iteration(&c, sigma);
        let alpha = &w * y;
        let ba = b * &alpha;
        let res = (a * &alpha - &ba * sigma).norm() / ba.norm().max(f64::MIN_POSITIVE);
        residuals.push(res);
        vectors.set_column(j, &alpha);
    }
    let unresolved: Vec<bool> = values.iter().map(|&v| v > resolvable_limit).collect();
    let diagnostics = SolveDiagnostics {
        rank: k,
        columns: n,
        condition: top / low,
        max_imag,
        residuals,
        unresolved: unresolved.iter().take(m).filter(|&&u| u).count(),
    };
    Ok(MpsSolution {
        eigenvalues: values,
        vectors,
        unresolved,
        diagnostics,
    })
}

// Eigenvalues of the (generally nonsymmetric) reduced matrix: real parts
// and the largest imaginary part.
fn reduced_eigenvalues(c: &DMatrix<f64>) -> Result<(Vec<f64>, f64)> {
    let n = c.nrows();
    let m = Mat::<f64>::from_fn(n, n, |i, j| c[(i, j)]);
    let mut re = Diag::<f64>::zeros(n);
    let mut im = Diag::<f64>::zeros(n);
    let scratch = evd_scratch::<f64>(
        n,
        ComputeEigenvectors::No,
        ComputeEigenvectors::No,
        Par::Seq,
        Default::default(),
    );
    evd_real(
        m.as_ref(),
        re.as_mut(),
        im.as_mut(),
        None,
        None,
        Par::Seq,
        MemStack::new(&mut MemBuffer::new(scratch)),
        Default::default(),
    )
    .map_err(|e| Error::Numerical(format!("reduced eigenproblem did not converge: {e:?}")))?;
    let values = re.column_vector().iter().copied().collect();
    let max_imag = im
        .column_vector()
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    Ok((values, max_imag))
}

fn inverse_iteration(c: &DMatrix<f64>, sigma: f64) -> DVector<f64> {
    let k = c.nrows();
    let shift = sigma + 1e-10 * sigma.abs().max(1.0);
    let lu = (c - DMatrix::<f64>::identity(k, k) * shift).lu();
    let mut y = DVector::<f64>::from_fn(k, |i, _| 1.0 + 0.01 * i as f64);
    y /= y.norm();
    for _ in 0..3 {
        match lu.solve(&y) {
            Some(z) if z.norm().is_finite() && z.norm() > 0.0 => y = &z / z.norm(),
            _ => break,
        }
    }
    y
}
