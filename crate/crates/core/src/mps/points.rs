use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::harmonics::Angles;

/// Deterministic, roughly uniform points on the unit circle or sphere.
///
/// On the sphere the regular equal-area construction (latitude bands with
/// evenly spaced points per band) is used; when no nearby target reproduces
/// exactly `k` points a Fibonacci spiral is used instead.
pub fn collocation_points(dim: usize, k: usize) -> Result<Vec<Angles>> {
    if k == 0 {
        return Err(Error::InvalidConfig(
            "need at least one collocation point".into(),
        ));
    }
    match dim {
        2 => Ok((0..k)
            .map(|j| Angles::circle(2.0 * PI * j as f64 / k as f64))
            .collect()),
        3 => {
            if k == 1 {
                return Ok(vec![Angles::sphere(PI / 2.0, 0.0)]);
            }
            for target in scan_targets(k) {
                let pts = equal_area(target);
                if pts.len() == k {
                    return Ok(pts);
                }
            }
            Ok(fibonacci(k))
        }
        _ => Err(Error::UnsupportedDimension(dim, "d ∈ {2, 3}")),
    }
}

fn scan_targets(k: usize) -> impl Iterator<Item = usize> {
    let spread = (k / 4).max(4);
    (0..=spread).flat_map(move |s| {
        let up = k + s;
        let down = k.checked_sub(s).filter(|&v| v >= 2 && s > 0);
        std::iter::once(up).chain(down)
    })
}

fn equal_area(target: usize) -> Vec<Angles> {
    let area = 4.0 * PI / target as f64;
    let side = area.sqrt();
    let bands = (PI / side).round().max(1.0) as usize;
    let d_theta = PI / bands as f64;
    let d_phi = area / d_theta;
    let mut out = Vec::with_capacity(target);
    for b in 0..bands {
        let theta = PI * (b as f64 + 0.5) / bands as f64;
        let count = (2.0 * PI * theta.sin() / d_phi).round() as usize;
        for j in 0..count {
            out.push(Angles::sphere(theta, 2.0 * PI * j as f64 / count as f64));
        }
    }
    out
}

fn fibonacci(k: usize) -> Vec<Angles> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..k)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / k as f64;
            let phi = (golden * j as f64).rem_euclid(2.0 * PI);
            Angles::sphere(z.clamp(-1.0, 1.0).acos(), phi)
        })
        .collect()
}
