//! Exact Steklov spectra of balls and concentric annuli.
//!
//! Every eigenfunction separates as `u = f(r) Y(θ)` with `Y` a spherical
//! harmonic of degree `n`. The radial factor `f` is normalized on the
//! boundary: `Σ_r r^{d-1} f(r)² = 1`, the sum running over the boundary
//! spheres, so that `u` has unit `L²(∂Ω)` norm for orthonormal `Y`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::multiplicity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Ball,
    Annulus,
}

/// Which boundary sphere of a domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Outer,
    Inner,
}

/// A ball of radius `r_o` or an annulus `r_i < |x| < r_o` in `R^d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub dim: usize,
    pub r_o: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_i: Option<f64>,
}

impl DomainSpec {
    pub fn ball(dim: usize, r_o: f64) -> Result<Self> {
        let d = DomainSpec {
            kind: DomainKind::Ball,
            dim,
            r_o,
            r_i: None,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn annulus(dim: usize, r_i: f64, r_o: f64) -> Result<Self> {
        let d = DomainSpec {
            kind: DomainKind::Annulus,
            dim,
            r_o,
            r_i: Some(r_i),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::UnsupportedDimension(self.dim, "d ≥ 2"));
        }
        if !(self.r_o.is_finite() && self.r_o > 0.0) {
            return Err(Error::InvalidDomain(format!(
                "outer radius must be positive, got {}",
                self.r_o
            )));
        }
        match (self.kind, self.r_i) {
            (DomainKind::Ball, None) => Ok(()),
            (DomainKind::Ball, Some(_)) => {
                Err(Error::InvalidDomain("a ball has no inner radius".into()))
            }
            (DomainKind::Annulus, None) => Err(Error::InvalidDomain(
                "an annulus needs an inner radius".into(),
            )),
            (DomainKind::Annulus, Some(r_i)) => {
                if r_i.is_finite() && r_i > 0.0 && r_i < self.r_o {
                    Ok(())
                } else {
                    Err(Error::InvalidDomain(format!(
                        "need 0 < r_i < r_o, got r_i = {r_i}, r_o = {}",
                        self.r_o
                    )))
                }
            }
        }
    }

    pub fn is_annulus(&self) -> bool {
        self.kind == DomainKind::Annulus
    }

    /// Inner radius, or zero for a ball.
    pub fn inner_radius(&self) -> f64 {
        self.r_i.unwrap_or(0.0)
    }

    /// Boundary spheres with their radii, outer first.
    pub fn boundaries(&self) -> Vec<(BoundaryKind, f64)> {
        let mut out = vec![(BoundaryKind::Outer, self.r_o)];
        if let Some(r_i) = self.r_i {
            out.push((BoundaryKind::Inner, r_i));
        }
        out
    }

    pub fn radius(&self, boundary: BoundaryKind) -> Result<f64> {
        match boundary {
            BoundaryKind::Outer => Ok(self.r_o),
            BoundaryKind::Inner => self
                .r_i
                .ok_or_else(|| Error::InvalidDomain("a ball has no inner boundary".into())),
        }
    }
}

/// Radial factor `(P r^n + Q r^{-(d+n-2)} + L ln r + C) / norm`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub degree: u32,
    pub dim: usize,
    pub power: f64,
    pub inverse_power: f64,
    pub log: f64,
    pub constant: f64,
    pub norm: f64,
    pub r_min: f64,
    pub r_max: f64,
}

impl RadialProfile {
    fn check(&self, r: f64) -> Result<()> {
        let slack = 1e-12 * self.r_max;
        let lower_ok = if self.r_min == 0.0 {
            r > 0.0
        } else {
            r >= self.r_min - slack
        };
        if lower_ok && r <= self.r_max + slack {
            Ok(())
        } else {
            Err(Error::RadiusOutOfRange {
                r,
                lo: self.r_min,
                hi: self.r_max,
            })
        }
    }

    fn inverse_exponent(&self) -> i32 {
        -(self.dim as i32 + self.degree as i32 - 2)
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        let mut v = self.constant;
        if self.power != 0.0 {
            v += self.power * r.powi(self.degree as i32);
        }
        if self.inverse_power != 0.0 {
            v += self.inverse_power * r.powi(self.inverse_exponent());
        }
        if self.log != 0.0 {
            v += self.log * r.ln();
        }
        Ok(v / self.norm)
    }

    pub fn derivative(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        let n = self.degree as i32;
        let q = self.inverse_exponent();
        let mut v = 0.0;
        if self.power != 0.0 && n != 0 {
            v += self.power * n as f64 * r.powi(n - 1);
        }
        if self.inverse_power != 0.0 && q != 0 {
            v += self.inverse_power * q as f64 * r.powi(q - 1);
        }
        if self.log != 0.0 {
            v += self.log / r;
        }
        Ok(v / self.norm)
    }
}

/// One Steklov eigenvalue together with its separated eigenfunction data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SteklovEigen {
    pub value: f64,
    pub degree: u32,
    /// 1 for the lower annulus root (and for balls), 2 for the upper root.
    pub branch: u8,
    pub multiplicity: u64,
    /// Position of the first occurrence of `value` in the sorted spectrum.
    pub index: usize,
    #[serde(skip)]
    pub profile: RadialProfile,
}

fn merge_tol(v: f64) -> f64 {
    1e-9 * v.abs().max(1.0)
}

/// Eigenvalue `n / r_o` of a ball with its radial profile.
pub fn ball_eigen(domain: &DomainSpec, n: u32) -> Result<SteklovEigen> {
    domain.validate()?;
    if domain.is_annulus() {
        return Err(Error::InvalidDomain("expected a ball".into()));
    }
    let (d, r_o) = (domain.dim, domain.r_o);
    let mut index = 0usize;
    for j in 0..n {
        index = index.saturating_add(multiplicity(j, d)? as usize);
    }
    Ok(SteklovEigen {
        value: n as f64 / r_o,
        degree: n,
        branch: 1,
        multiplicity: multiplicity(n, d)?,
        index,
        profile: RadialProfile {
            degree: n,
            dim: d,
            power: r_o.powf(-((d as f64 - 1.0) / 2.0) - n as f64),
            inverse_power: 0.0,
            log: 0.0,
            constant: 0.0,
            norm: 1.0,
            r_min: 0.0,
            r_max: r_o,
        },
    })
}

/// Coefficients of the quadratic whose roots are the degree-`n` annulus
/// eigenvalues: returns `(B, P)` for `μ² - Bμ + P = 0`.
pub fn annulus_quadratic(dim: usize, r_i: f64, r_o: f64, n: u32) -> (f64, f64) {
    let (l, d) = (n as i32, dim as i32);
    let lf = n as f64;
    let df = dim as f64;
    if n == 0 {
        let b = if dim == 2 {
            -(r_i + r_o) / (r_i * r_o * (r_i / r_o).ln())
        } else {
            (df - 2.0) * (r_o.powi(d - 1) + r_i.powi(d - 1))
                / (r_i * r_o * (r_o.powi(d - 2) - r_i.powi(d - 2)))
        };
        return (b, 0.0);
    }
    let num = (lf + df - 2.0) * (r_o.powi(2 * l + d - 1) + r_i.powi(2 * l + d - 1))
        + lf * r_i * r_o * (r_o.powi(2 * l + d - 3) + r_i.powi(2 * l + d - 3));
    let den = r_i * r_o * (r_o.powi(2 * l + d - 2) - r_i.powi(2 * l + d - 2));
    (num / den, lf * (lf + df - 2.0) / (r_i * r_o))
}

fn annulus_values(dim: usize, r_i: f64, r_o: f64, n: u32) -> Result<(f64, f64)> {
    let (b, p) = annulus_quadratic(dim, r_i, r_o, n);
    if p == 0.0 {
        return Ok((0.0, b));
    }
    let disc = b * b - 4.0 * p;
    if disc.is_nan() || disc < 0.0 {
        return Err(Error::Numerical(format!(
            "negative discriminant {disc} for degree {n}"
        )));
    }
    let hi = 0.5 * (b + disc.sqrt());
    Ok((p / hi, hi))
}

fn annulus_profile(dim: usize, r_i: f64, r_o: f64, n: u32, mu: f64) -> RadialProfile {
    let mut prof = RadialProfile {
        degree: n,
        dim,
        power: 0.0,
        inverse_power: 0.0,
        log: 0.0,
        constant: 0.0,
        norm: 1.0,
        r_min: r_i,
        r_max: r_o,
    };
    let df = dim as f64;
    if n == 0 && mu == 0.0 {
        prof.constant = 1.0;
    } else if n == 0 && dim == 2 {
        // f = A + ln r with f'(r_o) = μ f(r_o)
        prof.log = 1.0;
        prof.constant = 1.0 / (mu * r_o) - r_o.ln();
    } else {
        let (l, d) = (n as i32, dim as i32);
        let lf = n as f64;
        prof.power = (lf + df - 2.0) * (r_o.powi(-(d + l - 1)) - r_i.powi(-(d + l - 1)))
            + mu * (r_o.powi(-(d + l - 2)) + r_i.powi(-(d + l - 2)));
        prof.inverse_power =
            lf * (r_o.powi(l - 1) - r_i.powi(l - 1)) - mu * (r_o.powi(l) + r_i.powi(l));
    }
    let raw = |r: f64| {
        let mut p = prof.clone();
        p.norm = 1.0;
        p.eval(r).unwrap_or(f64::NAN)
    };
    let (fi, fo) = (raw(r_i), raw(r_o));
    prof.norm = (r_i.powi(dim as i32 - 1) * fi * fi + r_o.powi(dim as i32 - 1) * fo * fo).sqrt();
    prof
}

/// Both degree-`n` eigenvalues of an annulus, ascending.
pub fn annulus_eigen(domain: &DomainSpec, n: u32) -> Result<(SteklovEigen, SteklovEigen)> {
    domain.validate()?;
    let r_i = domain
        .r_i
        .ok_or_else(|| Error::InvalidDomain("expected an annulus".into()))?;
    let (d, r_o) = (domain.dim, domain.r_o);
    let (lo, hi) = annulus_values(d, r_i, r_o, n)?;
    let mult = multiplicity(n, d)?;
    let make = |value: f64, branch: u8| -> Result<SteklovEigen> {
        Ok(SteklovEigen {
            value,
            degree: n,
            branch,
            multiplicity: mult,
            index: index_of(domain, value)?,
            profile: annulus_profile(d, r_i, r_o, n, value),
        })
    };
    Ok((make(lo, 1)?, make(hi, 2)?))
}

/// Eigenvalue with the given degree and branch (`branch` must be 1 for balls).
pub fn eigen_at(domain: &DomainSpec, n: u32, branch: u8) -> Result<SteklovEigen> {
    match (domain.kind, branch) {
        (DomainKind::Ball, 1) => ball_eigen(domain, n),
        (DomainKind::Annulus, 1) => Ok(annulus_eigen(domain, n)?.0),
        (DomainKind::Annulus, 2) => Ok(annulus_eigen(domain, n)?.1),
        _ => Err(Error::InvalidDomain(format!(
            "no branch {branch} for a {:?}",
            domain.kind
        ))),
    }
}

// Values (with multiplicity) of degree `n`: lowest first.
fn degree_values(domain: &DomainSpec, n: u32) -> Result<Vec<(f64, u8)>> {
    match domain.r_i {
        None => Ok(vec![(n as f64 / domain.r_o, 1)]),
        Some(r_i) => {
            let (lo, hi) = annulus_values(domain.dim, r_i, domain.r_o, n)?;
            Ok(vec![(lo, 1), (hi, 2)])
        }
    }
}

// Number of eigenvalues (counted with multiplicity) strictly below `value`,
// ties within the merge tolerance not counted.
fn index_of(domain: &DomainSpec, value: f64) -> Result<usize> {
    let cut = value - merge_tol(value);
    let mut count = 0usize;
    // the lowest root of each degree increases with the degree
    for n in 0.. {
        let vals = degree_values(domain, n)?;
        if vals[0].0 >= cut {
            break;
        }
        let mult = multiplicity(n, domain.dim)? as usize;
        for (v, _) in vals {
            if v < cut {
                count = count.saturating_add(mult);
            }
        }
    }
    Ok(count)
}

/// The first `count` eigenvalues, ascending and repeated by multiplicity.
pub fn enumerate_spectrum(domain: &DomainSpec, count: usize) -> Result<Vec<SteklovEigen>> {
    domain.validate()?;
    let mut cands: Vec<(f64, u32, u8, u64)> = Vec::new();
    let mut total: u64 = 0;
    for n in 0u32.. {
        let vals = degree_values(domain, n)?;
        // every later eigenvalue is at least vals[0]
        if total >= count as u64 {
            let kth = kth_value(&cands, count);
            if vals[0].0 > kth + merge_tol(kth) {
                break;
            }
        }
        let mult = multiplicity(n, domain.dim)?;
        for (v, b) in vals {
            cands.push((v, n, b, mult));
            total = total.saturating_add(mult);
        }
    }
    cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut out: Vec<SteklovEigen> = Vec::with_capacity(count);
    let mut cluster_start = 0usize;
    let mut cluster_value = f64::NAN;
    for (v, n, b, mult) in cands {
        if out.len() >= count {
            break;
        }
        if !(cluster_value.is_finite() && (v - cluster_value).abs() <= merge_tol(v)) {
            cluster_start = out.len();
            cluster_value = v;
        }
        let profile = match domain.r_i {
            None => ball_eigen(domain, n)?.profile,
            Some(r_i) => annulus_profile(domain.dim, r_i, domain.r_o, n, v),
        };
        let e = SteklovEigen {
            value: v,
            degree: n,
            branch: b,
            multiplicity: mult,
            index: cluster_start,
            profile,
        };
        let reps = (mult as usize).min(count - out.len());
        for _ in 0..reps {
            out.push(e.clone());
        }
    }
    Ok(out)
}

// Value of the `count`-th eigenvalue among the candidates gathered so far.
fn kth_value(cands: &[(f64, u32, u8, u64)], count: usize) -> f64 {
    let mut c: Vec<(f64, u64)> = cands.iter().map(|c| (c.0, c.3)).collect();
    c.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut seen = 0u64;
    for (v, m) in c {
        seen = seen.saturating_add(m);
        if seen >= count as u64 {
            return v;
        }
    }
    f64::INFINITY
}
