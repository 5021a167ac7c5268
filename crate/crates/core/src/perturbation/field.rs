use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::harmonics::{
    check_reality, coeff_conjugate_transform, sphere_area, Angles, Basis, CoeffMap, Direction,
    HarmonicIndex, PointHarmonics, C64,
};
use crate::spectra::{BoundaryKind, DomainSpec};

/// Boundary deformation described by harmonic coefficients on each boundary
/// sphere.
///
/// The coefficients are those of the relative radial displacement `V`: the
/// boundary sphere of radius `r` moves to `R(θ) = r (1 + t V(θ))`. The normal
/// velocity on that sphere is therefore `r V` (with the sign of the outward
/// normal), which is what the EMP assembly consumes.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationField {
    dim: usize,
    basis: Basis,
    coeffs: BTreeMap<BoundaryKind, CoeffMap>,
}

impl DeformationField {
    pub fn new(dim: usize, basis: Basis) -> Self {
        DeformationField {
            dim,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// `V ≡ 1` on every boundary of `domain`: a uniform dilation.
    pub fn dilation(domain: &DomainSpec) -> Result<Self> {
        let mut f = DeformationField::new(domain.dim, Basis::Complex);
        let c = C64::new(sphere_area(domain.dim)?.sqrt(), 0.0);
        for (b, _) in domain.boundaries() {
            f.set(b, HarmonicIndex::constant(domain.dim), c)?;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Set one coefficient, replacing any previous value.
    pub fn set(&mut self, boundary: BoundaryKind, idx: HarmonicIndex, c: C64) -> Result<()> {
        idx.validate(self.dim)?;
        self.coeffs.entry(boundary).or_default().insert(idx, c);
        Ok(())
    }

    /// Add to one coefficient.
    pub fn add(&mut self, boundary: BoundaryKind, idx: HarmonicIndex, c: C64) -> Result<()> {
        idx.validate(self.dim)?;
        *self
            .coeffs
            .entry(boundary)
            .or_default()
            .entry(idx)
            .or_insert(C64::new(0.0, 0.0)) += c;
        Ok(())
    }

    pub fn with(mut self, boundary: BoundaryKind, idx: HarmonicIndex, c: C64) -> Result<Self> {
        self.set(boundary, idx, c)?;
        Ok(self)
    }

    pub fn set_boundary(&mut self, boundary: BoundaryKind, coeffs: CoeffMap) -> Result<()> {
        for idx in coeffs.keys() {
            idx.validate(self.dim)?;
        }
        self.coeffs.insert(boundary, coeffs);
        Ok(())
    }

    pub fn coefficients(&self, boundary: BoundaryKind) -> Option<&CoeffMap> {
        self.coeffs.get(&boundary)
    }

    pub fn coefficient(&self, boundary: BoundaryKind, idx: HarmonicIndex) -> C64 {
        self.coeffs
            .get(&boundary)
            .and_then(|m| m.get(&idx))
            .copied()
            .unwrap_or_default()
    }

    pub fn boundaries(&self) -> impl Iterator<Item = (BoundaryKind, &CoeffMap)> {
        self.coeffs.iter().map(|(b, m)| (*b, m))
    }

    /// Largest coefficient magnitude over all boundaries.
    pub fn scale(&self) -> f64 {
        self.coeffs
            .values()
            .flat_map(|m| m.values())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs
            .values()
            .flat_map(|m| m.keys())
            .map(|i| i.l)
            .max()
            .unwrap_or(0)
    }

    /// Fail unless every boundary table describes a real-valued function.
    pub fn check_reality(&self) -> Result<()> {
        for m in self.coeffs.values() {
            check_reality(m, self.dim, self.basis)?;
        }
        Ok(())
    }

    /// The same deformation expressed in `basis`.
    pub fn to_basis(&self, basis: Basis) -> Result<Self> {
        if basis == self.basis {
            self.check_reality()?;
            return Ok(self.clone());
        }
        let dir = match basis {
            Basis::Complex => Direction::RealToComplex,
            Basis::Real => Direction::ComplexToReal,
        };
        let mut coeffs = BTreeMap::new();
        for (b, m) in &self.coeffs {
            coeffs.insert(*b, coeff_conjugate_transform(m, dir, self.dim)?);
        }
        Ok(DeformationField {
            dim: self.dim,
            basis,
            coeffs,
        })
    }

    /// First-order volume preservation on one boundary: the constant
    /// coefficient vanishes (within `tol`).
    pub fn volume_preserving_on(&self, boundary: BoundaryKind, tol: f64) -> bool {
        self.coefficient(boundary, HarmonicIndex::constant(self.dim))
            .norm()
            <= tol
    }

    /// `V` and its surface gradient `(∂_θ V, ∂_φ V / sin θ)` at a point.
    pub fn eval(&self, boundary: BoundaryKind, angles: Angles) -> Result<(f64, f64, f64)> {
        let Some(m) = self.coeffs.get(&boundary) else {
            return Ok((0.0, 0.0, 0.0));
        };
        if m.is_empty() {
            return Ok((0.0, 0.0, 0.0));
        }
        let lmax = m.keys().map(|i| i.l).max().unwrap_or(0);
        if self.dim > 3 {
            return Err(Error::UnsupportedDimension(self.dim, "d ∈ {2, 3}"));
        }
        let ph = PointHarmonics::new(self.dim, lmax, angles)?;
        let (mut v, mut dt, mut dp) = (C64::default(), C64::default(), C64::default());
        for (&idx, &c) in m {
            let y = ph.eval(idx, self.basis)?;
            v += c * y.value;
            dt += c * y.d_theta;
            dp += c * y.d_phi_over_sin;
        }
        Ok((v.re, dt.re, dp.re))
    }
}
