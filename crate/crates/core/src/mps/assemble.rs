use nalgebra::DMatrix;

use super::boundary::{perturbed_boundary, BoundaryPoint};
use super::points::collocation_points;
use super::MpsConfig;
use crate::error::{Error, Result};
use crate::harmonics::{Angles, Basis, HarmonicIndex, PointHarmonics};
use crate::perturbation::DeformationField;
use crate::spectra::{BoundaryKind, DomainSpec};

/// One trial function of the ansatz.
///
/// Angular parts are `1, cos lθ, sin lθ` in the plane (`m = 1` cosine,
/// `m = 2` sine) and the orthonormal real harmonics on the sphere. Radial
/// parts are scaled to be of unit size on their home boundary:
/// `(r/r_o)^l` and `(r_i/r)^{d+l-2}`, except the planar `ln r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzColumn {
    Regular(HarmonicIndex),
    Singular(HarmonicIndex),
    Log,
}

/// Collocation matrices for one perturbation parameter.
#[derive(Clone, Debug)]
pub struct MpsSystem {
    /// Normal derivatives, one row per point.
    pub a: DMatrix<f64>,
    /// Values, one row per point.
    pub b: DMatrix<f64>,
    pub columns: Vec<AnsatzColumn>,
    pub points: Vec<BoundaryPoint>,
}

/// Column layout: regular functions by degree, then singular ones.
pub fn ansatz_columns(domain: &DomainSpec, lmax: u32) -> Result<Vec<AnsatzColumn>> {
    let idx = HarmonicIndex::up_to_degree(lmax, domain.dim)?;
    let mut cols: Vec<AnsatzColumn> = idx.iter().map(|&i| AnsatzColumn::Regular(i)).collect();
    if domain.is_annulus() {
        for &i in &idx {
            cols.push(if domain.dim == 2 && i.l == 0 {
                AnsatzColumn::Log
            } else {
                AnsatzColumn::Singular(i)
            });
        }
    }
    Ok(cols)
}

// Angular parts and surface gradients of every harmonic up to `lmax`, in
// `up_to_degree` order.
fn angular_parts(dim: usize, lmax: u32, a: Angles) -> Result<Vec<(f64, f64, f64)>> {
    let idx = HarmonicIndex::up_to_degree(lmax, dim)?;
    if dim == 2 {
        return Ok(idx
            .iter()
            .map(|i| {
                let l = i.l as f64;
                let (s, c) = (l * a.theta).sin_cos();
                match (i.l, i.m) {
                    (0, _) => (1.0, 0.0, 0.0),
                    (_, 1) => (c, -l * s, 0.0),
                    _ => (s, l * c, 0.0),
                }
            })
            .collect());
    }
    let ph = PointHarmonics::new(dim, lmax, a)?;
    idx.iter()
        .map(|&i| {
            let y = ph.eval(i, Basis::Real)?;
            Ok((y.value.re, y.d_theta.re, y.d_phi_over_sin.re))
        })
        .collect()
}

fn slot(dim: usize, i: HarmonicIndex) -> usize {
    if dim == 2 {
        if i.l == 0 {
            0
        } else {
            2 * i.l as usize - 2 + i.m as usize
        }
    } else {
        let l = i.l as usize;
        l * l + (i.m + i.l as i32) as usize
    }
}

/// Values and outward normal derivatives of every ansatz function at the
/// collocation points of the boundaries perturbed by `t · field`.
pub fn assemble_system(
    domain: &DomainSpec,
    field: &DeformationField,
    t: f64,
    config: &MpsConfig,
) -> Result<MpsSystem> {
    config.validate(domain)?;
    if field.dim() != domain.dim {
        return Err(Error::InvalidConfig(format!(
            "field dimension {} does not match domain dimension {}",
            field.dim(),
            domain.dim
        )));
    }
    let d = domain.dim;
    let columns = ansatz_columns(domain, config.lmax)?;

    let mut points = Vec::new();
    for (b, _) in domain.boundaries() {
        let k = match b {
            BoundaryKind::Outer => config.k_outer,
            BoundaryKind::Inner => config.k_inner,
        };
        let angles = collocation_points(d, k)?;
        points.extend(perturbed_boundary(domain, field, t, b, &angles)?);
    }

    let (r_o, r_i) = (domain.r_o, domain.inner_radius());
    let mut a = DMatrix::<f64>::zeros(points.len(), columns.len());
    let mut bm = DMatrix::<f64>::zeros(points.len(), columns.len());
    for (row, p) in points.iter().enumerate() {
        let ang = angular_parts(d, config.lmax, p.angles)?;
        let big_r = p.radius;
        let [nr, nt, np] = p.normal;
        for (col, c) in columns.iter().enumerate() {
            let (f, df, (s, st, sp)) = match *c {
                AnsatzColumn::Regular(i) => {
                    let l = i.l as i32;
                    let q = big_r / r_o;
                    let df = if l == 0 {
                        0.0
                    } else {
                        l as f64 * q.powi(l - 1) / r_o
                    };
                    (q.powi(l), df, ang[slot(d, i)])
                }
                AnsatzColumn::Singular(i) => {
                    let pw = d as i32 + i.l as i32 - 2;
                    let f = (r_i / big_r).powi(pw);
                    (f, -(pw as f64) * f / big_r, ang[slot(d, i)])
                }
                AnsatzColumn::Log => (big_r.ln(), 1.0 / big_r, (1.0, 0.0, 0.0)),
            };
            bm[(row, col)] = f * s;
            a[(row, col)] = nr * df * s + (nt * f * st + np * f * sp) / big_r;
        }
    }
    Ok(MpsSystem {
        a,
        b: bm,
        columns,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_column_on_unit_disk() {
        let disk = DomainSpec::ball(2, 1.0).unwrap();
        let mut cfg = MpsConfig::for_domain(&disk);
        cfg.lmax = 1;
        cfg.k_outer = 4;
        let f = DeformationField::new(2, Basis::Complex);
        let sys = assemble_system(&disk, &f, 0.0, &cfg).unwrap();
        let col = sys
            .columns
            .iter()
            .position(|c| *c == AnsatzColumn::Regular(HarmonicIndex::new(1, 1)))
            .unwrap();
        assert!((sys.b[(0, col)] - 1.0).abs() < 1e-15);
        assert!((sys.a[(0, col)] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_column_on_inner_circle() {
        let ann = DomainSpec::annulus(2, 0.4, 1.0).unwrap();
        let cfg = MpsConfig::for_domain(&ann);
        let f = DeformationField::new(2, Basis::Complex);
        let sys = assemble_system(&ann, &f, 0.0, &cfg).unwrap();
        let col = sys
            .columns
            .iter()
            .position(|c| *c == AnsatzColumn::Log)
            .unwrap();
        let row = cfg.k_outer;
        assert!((sys.b[(row, col)] - 0.4f64.ln()).abs() < 1e-15);
        assert!((sys.a[(row, col)] + 1.0 / 0.4).abs() < 1e-14);
        assert!(sys.b[(0, col)].abs() < 1e-15);
    }
}
