use crate::error::{Error, Result};
use crate::harmonics::Angles;
use crate::perturbation::DeformationField;
use crate::spectra::{BoundaryKind, DomainSpec};

/// One point of a perturbed boundary sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub boundary: BoundaryKind,
    pub angles: Angles,
    /// `R(θ) = r (1 + t V(θ))`.
    pub radius: f64,
    /// Outward unit normal (out of the domain) in the local `(r̂, θ̂, φ̂)`
    /// frame at `angles`; the last component is zero in the plane.
    pub normal: [f64; 3],
}

impl BoundaryPoint {
    /// Position in Cartesian coordinates.
    pub fn position(&self, dim: usize) -> Vec<f64> {
        self.angles
            .unit_vector(dim)
            .into_iter()
            .map(|x| x * self.radius)
            .collect()
    }

    /// Normal in Cartesian coordinates.
    pub fn normal_cartesian(&self, dim: usize) -> Vec<f64> {
        let (st, ct) = self.angles.theta.sin_cos();
        let [nr, nt, np] = self.normal;
        if dim == 2 {
            // r̂ = (cos θ, sin θ), θ̂ = (-sin θ, cos θ)
            vec![nr * ct - nt * st, nr * st + nt * ct]
        } else {
            let (sp, cp) = self.angles.phi.sin_cos();
            let r_hat = [st * cp, st * sp, ct];
            let t_hat = [ct * cp, ct * sp, -st];
            let p_hat = [-sp, cp, 0.0];
            (0..3)
                .map(|i| nr * r_hat[i] + nt * t_hat[i] + np * p_hat[i])
                .collect()
        }
    }
}

fn radius_at(
    field: &DeformationField,
    boundary: BoundaryKind,
    r: f64,
    t: f64,
    angles: Angles,
) -> Result<(f64, f64, f64)> {
    let (v, vt, vp) = field.eval(boundary, angles)?;
    Ok((r * (1.0 + t * v), r * t * vt, r * t * vp))
}

/// Radii and outward normals of one perturbed boundary sphere at `angles`.
pub fn perturbed_boundary(
    domain: &DomainSpec,
    field: &DeformationField,
    t: f64,
    boundary: BoundaryKind,
    angles: &[Angles],
) -> Result<Vec<BoundaryPoint>> {
    let r = domain.radius(boundary)?;
    let other = match boundary {
        BoundaryKind::Outer => domain.r_i.map(|ri| (BoundaryKind::Inner, ri)),
        BoundaryKind::Inner => Some((BoundaryKind::Outer, domain.r_o)),
    };
    let mut out = Vec::with_capacity(angles.len());
    for &a in angles {
        let (big_r, r_t, r_p) = radius_at(field, boundary, r, t, a)?;
        if big_r <= 0.0 || !big_r.is_finite() {
            return Err(Error::InvalidBoundary(format!(
                "radius {big_r} at θ = {}, φ = {} on the {boundary:?} boundary",
                a.theta, a.phi
            )));
        }
        if let Some((ob, orad)) = other {
            let (other_r, _, _) = radius_at(field, ob, orad, t, a)?;
            let crossed = match boundary {
                BoundaryKind::Outer => big_r <= other_r,
                BoundaryKind::Inner => big_r >= other_r,
            };
            if crossed {
                return Err(Error::InvalidBoundary(format!(
                    "boundaries cross at θ = {}, φ = {}",
                    a.theta, a.phi
                )));
            }
        }
        let (gt, gp) = (r_t / big_r, r_p / big_r);
        let norm = (1.0 + gt * gt + gp * gp).sqrt();
        let sign = match boundary {
            BoundaryKind::Outer => 1.0,
            BoundaryKind::Inner => -1.0,
        };
        out.push(BoundaryPoint {
            boundary,
            angles: a,
            radius: big_r,
            normal: [sign / norm, -sign * gt / norm, -sign * gp / norm],
        });
    }
    Ok(out)
}
