use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::field::DeformationField;
use crate::error::{Error, Result};
use crate::harmonics::{
    multiplicity, sphere_area, triple_product, Basis, CoeffMap, HarmonicIndex, TripleMethod, C64,
};
use crate::spectra::{BoundaryKind, DomainSpec, SteklovEigen};

/// Eigenvalue multiplicity perturbation matrix of one Steklov eigenvalue.
///
/// Its eigenvalues are the one-sided derivatives at `t = 0` of the `p`
/// eigenvalue branches emanating from `eigen`.
#[derive(Clone, Debug)]
pub struct EmpMatrix {
    pub eigen: SteklovEigen,
    /// Row/column labels: the degree-`n` basis indices (empty for matrices
    /// built from raw entries).
    pub indices: Vec<HarmonicIndex>,
    pub entries: DMatrix<C64>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    /// Largest single term magnitude entering the entries; zero tests are
    /// taken relative to it.
    pub scale: f64,
    /// Per-boundary first-order volume preservation, when known.
    pub volume_preserving: Option<bool>,
}

impl EmpMatrix {
    /// Wrap a Hermitian matrix and compute its spectrum.
    pub fn from_entries(eigen: SteklovEigen, entries: DMatrix<C64>, scale: f64) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Numerical("EMP matrix must be square".into()));
        }
        let herm = (&entries + entries.adjoint()) * C64::new(0.5, 0.0);
        let mut eigenvalues: Vec<f64> = if herm.is_empty() {
            Vec::new()
        } else {
            herm.symmetric_eigenvalues().iter().copied().collect()
        };
        eigenvalues.sort_by(f64::total_cmp);
        let trace = entries.diagonal().iter().map(|c| c.re).sum();
        Ok(EmpMatrix {
            eigen,
            indices: Vec::new(),
            entries,
            eigenvalues,
            trace,
            scale,
            volume_preserving: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        (&self.entries - self.entries.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Radial weight multiplying `α_{l,m,r} ∫ Y_n^i conj(Y_n^j) Y_l^m` in the
/// EMP entries, for the boundary sphere `boundary`.
///
/// On an annulus this is `N(r)² r^{d-3} (n(n+d-2) - l(l+d-2)/2 - r²μ² ∓ (d-1) r μ)`
/// with `-` on the outer and `+` on the inner sphere. On a ball it reduces to
/// `-(l(l+d-2)/2 + n) / r_o²`.
pub fn boundary_factor(
    domain: &DomainSpec,
    eigen: &SteklovEigen,
    boundary: BoundaryKind,
    l: u32,
) -> Result<f64> {
    let d = domain.dim as f64;
    let n = eigen.degree as f64;
    let lf = l as f64;
    if !domain.is_annulus() {
        if boundary == BoundaryKind::Inner {
            return Err(Error::InvalidDomain("a ball has no inner boundary".into()));
        }
        let r = domain.r_o;
        return Ok(-(lf * (lf + d - 2.0) / 2.0 + n) / (r * r));
    }
    let r = domain.radius(boundary)?;
    let mu = eigen.value;
    let nr = eigen.profile.eval(r)?;
    let curv = match boundary {
        BoundaryKind::Outer => -(d - 1.0) * r * mu,
        BoundaryKind::Inner => (d - 1.0) * r * mu,
    };
    Ok(nr
        * nr
        * r.powi(domain.dim as i32 - 3)
        * (n * (n + d - 2.0) - lf * (lf + d - 2.0) / 2.0 - r * r * mu * mu + curv))
}

fn boundary_sign(boundary: BoundaryKind) -> f64 {
    match boundary {
        BoundaryKind::Outer => 1.0,
        BoundaryKind::Inner => -1.0,
    }
}

fn check_inputs(domain: &DomainSpec, field: &DeformationField) -> Result<()> {
    domain.validate()?;
    if field.dim() != domain.dim {
        return Err(Error::InvalidDomain(format!(
            "field dimension {} does not match domain dimension {}",
            field.dim(),
            domain.dim
        )));
    }
    for (b, _) in field.boundaries() {
        if b == BoundaryKind::Inner && !domain.is_annulus() {
            return Err(Error::InvalidDomain(
                "field has inner-boundary coefficients but the domain is a ball".into(),
            ));
        }
    }
    Ok(())
}

const VOLUME_TOL: f64 = 1e-12;

fn volume_flag(domain: &DomainSpec, field: &DeformationField) -> bool {
    let tol = VOLUME_TOL * field.scale().max(1.0);
    domain
        .boundaries()
        .iter()
        .all(|(b, _)| field.volume_preserving_on(*b, tol))
}

/// Assemble the EMP matrix from the general triple-product formula.
///
/// The field must be in the complex basis. Coefficients of odd degree or of
/// degree above `2n` cannot contribute and are skipped.
pub fn emp_matrix(
    domain: &DomainSpec,
    field: &DeformationField,
    eigen: &SteklovEigen,
) -> Result<EmpMatrix> {
    check_inputs(domain, field)?;
    if domain.dim != 2 && domain.dim != 3 {
        return Err(Error::UnsupportedDimension(domain.dim, "d ∈ {2, 3}"));
    }
    if field.basis() != Basis::Complex {
        return Err(Error::BasisMismatch(
            "EMP assembly expects complex-basis coefficients".into(),
        ));
    }
    let d = domain.dim;
    let n = eigen.degree;
    let indices = HarmonicIndex::degree_indices(n, d)?;
    let p = indices.len();
    let mut entries = DMatrix::<C64>::zeros(p, p);
    let mut scale: f64 = 0.0;
    for (boundary, r) in domain.boundaries() {
        let Some(coeffs) = field.coefficients(boundary) else {
            continue;
        };
        let sign = boundary_sign(boundary);
        for (&lm, &c) in coeffs {
            if lm.l % 2 == 1 || lm.l > 2 * n || c == C64::default() {
                continue;
            }
            let weight = c * r * boundary_factor(domain, eigen, boundary, lm.l)? * sign;
            scale = scale.max(weight.norm());
            for (i, &yi) in indices.iter().enumerate() {
                for (j, &yj) in indices.iter().enumerate() {
                    let t = triple_product(yi, yj, lm, d, TripleMethod::ClosedForm)?;
                    if t != C64::default() {
                        entries[(i, j)] += weight * t;
                    }
                }
            }
        }
    }
    let mut m = EmpMatrix::from_entries(eigen.clone(), entries, scale)?;
    m.indices = indices;
    m.volume_preserving = Some(volume_flag(domain, field));
    Ok(m)
}

/// Convert to the complex basis when needed, then assemble.
pub fn emp_matrix_any_basis(
    domain: &DomainSpec,
    field: &DeformationField,
    eigen: &SteklovEigen,
) -> Result<EmpMatrix> {
    emp_matrix(domain, &field.to_basis(Basis::Complex)?, eigen)
}

/// The explicit 2×2 (or 1×1 for `n = 0`) matrices for planar domains.
pub fn emp_matrix_closed_2d(
    domain: &DomainSpec,
    field: &DeformationField,
    eigen: &SteklovEigen,
) -> Result<EmpMatrix> {
    check_inputs(domain, field)?;
    if domain.dim != 2 {
        return Err(Error::UnsupportedDimension(domain.dim, "d = 2"));
    }
    if field.basis() != Basis::Complex {
        return Err(Error::BasisMismatch(
            "EMP assembly expects complex-basis coefficients".into(),
        ));
    }
    let n = eigen.degree;
    let root = (2.0 * PI).sqrt();
    let c0 = HarmonicIndex::constant(2);
    let p = if n == 0 { 1 } else { 2 };
    let mut entries = DMatrix::<C64>::zeros(p, p);
    let mut scale: f64 = 0.0;

    let mut block = |boundary: BoundaryKind, r: f64, diag_f: f64, off_f: f64, sign: f64| {
        let a = |idx| field.coefficient(boundary, idx) * r;
        let a0 = a(c0);
        let diag = a0 * diag_f * sign / root;
        scale = scale.max(diag.norm());
        for i in 0..p {
            entries[(i, i)] += diag;
        }
        if n > 0 {
            let a1 = a(HarmonicIndex::new(2 * n, 1)) * off_f * sign / root;
            let a2 = a(HarmonicIndex::new(2 * n, 2)) * off_f * sign / root;
            scale = scale.max(a1.norm()).max(a2.norm());
            entries[(0, 1)] += a2;
            entries[(1, 0)] += a1;
        }
    };

    if domain.is_annulus() {
        for (b, r) in domain.boundaries() {
            let diag_f = boundary_factor(domain, eigen, b, 0)?;
            let off_f = boundary_factor(domain, eigen, b, 2 * n)?;
            block(b, r, diag_f, off_f, boundary_sign(b));
        }
    } else {
        // -n/r_o² on the diagonal, -n(2n+1)/r_o² off it
        let (nf, r) = (n as f64, domain.r_o);
        block(
            BoundaryKind::Outer,
            r,
            -nf / (r * r),
            -nf * (2.0 * nf + 1.0) / (r * r),
            1.0,
        );
    }
    let mut m = EmpMatrix::from_entries(eigen.clone(), entries, scale)?;
    m.indices = HarmonicIndex::degree_indices(n, 2)?;
    m.volume_preserving = Some(volume_flag(domain, field));
    Ok(m)
}

/// Closed-form trace of the EMP matrix; valid in every dimension `d ≥ 2`
/// because only the constant coefficient enters.
pub fn emp_trace_formula(
    domain: &DomainSpec,
    field: &DeformationField,
    eigen: &SteklovEigen,
) -> Result<f64> {
    check_inputs(domain, field)?;
    let d = domain.dim;
    let mult = multiplicity(eigen.degree, d)? as f64;
    let root = sphere_area(d)?.sqrt();
    let c0 = HarmonicIndex::constant(d);
    let mut acc = 0.0;
    for (b, r) in domain.boundaries() {
        let a0 = field.coefficient(b, c0).re * r;
        if a0 != 0.0 {
            acc += boundary_sign(b) * a0 * boundary_factor(domain, eigen, b, 0)?;
        }
    }
    Ok(acc * mult / root)
}

/// Choose outer-boundary coefficients of degree `2n` so that the EMP matrix
/// of `eigen` on a planar annulus vanishes, given the inner ones.
///
/// `inner` must only hold degree-`2n` coefficients in the complex basis; the
/// constant terms stay zero on both boundaries.
pub fn cancellation_coefficients(
    domain: &DomainSpec,
    eigen: &SteklovEigen,
    inner: &CoeffMap,
) -> Result<DeformationField> {
    domain.validate()?;
    if domain.dim != 2 || !domain.is_annulus() {
        return Err(Error::InvalidDomain(
            "cancellation coefficients need a planar annulus".into(),
        ));
    }
    let n = eigen.degree;
    let r_i = domain.inner_radius();
    let a_o = boundary_factor(domain, eigen, BoundaryKind::Outer, 2 * n)?;
    let a_i = boundary_factor(domain, eigen, BoundaryKind::Inner, 2 * n)?;
    if a_o.abs() <= 1e-14 * a_i.abs().max(1.0) {
        return Err(Error::Numerical(format!(
            "outer factor vanishes for degree {n}; no cancelling ratio exists"
        )));
    }
    // velocity coefficients r·c must satisfy α_o / α_i = A_i / A_o
    let ratio = (r_i * a_i) / (domain.r_o * a_o);
    let mut field = DeformationField::new(2, Basis::Complex);
    for (&idx, &c) in inner {
        idx.validate(2)?;
        if idx.l != 2 * n || n == 0 {
            return Err(Error::InvalidIndex {
                l: idx.l,
                m: idx.m,
                dim: 2,
            });
        }
        field.set(BoundaryKind::Inner, idx, c)?;
        field.set(BoundaryKind::Outer, idx, c * ratio)?;
    }
    field.check_reality()?;
    Ok(field)
}
