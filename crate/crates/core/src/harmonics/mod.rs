//! Spherical harmonics on the circle (d = 2) and the 2-sphere (d = 3).
//!
//! Two concrete bases are used throughout the crate:
//!
//! * d = 2: `Y_l^m = exp(i (-1)^m l θ) / sqrt(2π)` with `m ∈ {1, 2}` for
//!   `l ≥ 1` and the single constant `Y_0^1 = 1 / sqrt(2π)`. So `m = 1` is the
//!   negative frequency and `m = 2` the positive one.
//! * d = 3: the standard complex basis
//!   `Y_l^m = sqrt((2l+1)(l-m)! / (4π (l+m)!)) P_l^m(cos θ) e^{imφ}` with the
//!   Condon–Shortley phase inside `P_l^m` and `m ∈ {-l, …, l}`.
//!
//! Each has a real counterpart ([`Basis::Real`]): `cos(lθ)/sqrt(π)` (`m = 1`)
//! and `sin(lθ)/sqrt(π)` (`m = 2`) on the circle, and the usual tesseral
//! harmonics on the sphere (`m > 0` cosine type, `m < 0` sine type).
//!
//! Scalar quantities ([`multiplicity`], [`sphere_area`]) work for every
//! `d ≥ 2`; anything that evaluates a basis element is limited to d ∈ {2, 3}.

mod legendre;
mod quadrature;
mod transform;
mod triple;
mod wigner;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use legendre::LegendreTable;
pub use quadrature::{gauss_legendre, sphere_quadrature, QuadratureRule};
pub use transform::{check_reality, coeff_conjugate_transform, CoeffMap, Direction};
pub use triple::{triple_product, TripleMethod};
pub use wigner::{ln_factorial, wigner_3j};

/// Complex scalar used for basis values and coefficients.
pub type C64 = nalgebra::Complex<f64>;

/// Degree/order pair identifying one basis element `Y_l^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HarmonicIndex {
    pub l: u32,
    pub m: i32,
}

impl HarmonicIndex {
    pub const fn new(l: u32, m: i32) -> Self {
        HarmonicIndex { l, m }
    }

    /// Index of the constant harmonic: `(0, 1)` on the circle, `(0, 0)` otherwise.
    pub fn constant(dim: usize) -> Self {
        if dim == 2 {
            HarmonicIndex::new(0, 1)
        } else {
            HarmonicIndex::new(0, 0)
        }
    }

    pub fn is_valid(&self, dim: usize) -> bool {
        match dim {
            2 => {
                if self.l == 0 {
                    self.m == 1
                } else {
                    self.m == 1 || self.m == 2
                }
            }
            3 => self.m.unsigned_abs() <= self.l,
            // no basis is evaluated for d >= 4; only the constant mode is
            // representable, which is all the trace formulas need
            d if d >= 4 => self.l == 0 && self.m == 0,
            _ => false,
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.is_valid(dim) {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                l: self.l,
                m: self.m,
                dim,
            })
        }
    }

    /// All basis indices of degree `l`, in the order used for matrix rows.
    pub fn degree_indices(l: u32, dim: usize) -> Result<Vec<HarmonicIndex>> {
        match dim {
            2 if l == 0 => Ok(vec![HarmonicIndex::new(0, 1)]),
            2 => Ok(vec![HarmonicIndex::new(l, 1), HarmonicIndex::new(l, 2)]),
            3 => {
                let l_i = l as i32;
                Ok((-l_i..=l_i).map(|m| HarmonicIndex::new(l, m)).collect())
            }
            _ => Err(Error::UnsupportedDimension(dim, "d ∈ {2, 3}")),
        }
    }

    /// Every basis index with degree at most `lmax`.
    pub fn up_to_degree(lmax: u32, dim: usize) -> Result<Vec<HarmonicIndex>> {
        let mut out = Vec::new();
        for l in 0..=lmax {
            out.extend(Self::degree_indices(l, dim)?);
        }
        Ok(out)
    }
}

impl fmt::Display for HarmonicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{{{},{}}}", self.l, self.m)
    }
}

/// Which of the two basis variants a coefficient table or value refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Complex,
    Real,
}

/// A point on the unit circle (`theta` only) or unit sphere (`theta` polar,
/// `phi` azimuthal).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angles {
    pub theta: f64,
    pub phi: f64,
}

impl Angles {
    pub fn circle(theta: f64) -> Self {
        Angles { theta, phi: 0.0 }
    }

    pub fn sphere(theta: f64, phi: f64) -> Self {
        Angles { theta, phi }
    }

    /// Unit vector in Cartesian coordinates (2 or 3 components).
    pub fn unit_vector(&self, dim: usize) -> Vec<f64> {
        if dim == 2 {
            vec![self.theta.cos(), self.theta.sin()]
        } else {
            let s = self.theta.sin();
            vec![s * self.phi.cos(), s * self.phi.sin(), self.theta.cos()]
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if !self.theta.is_finite() || !self.phi.is_finite() {
            return Err(Error::InvalidAngle(format!("{self:?}")));
        }
        if dim == 3 && !(-1e-12..=PI + 1e-12).contains(&self.theta) {
            return Err(Error::InvalidAngle(format!(
                "polar angle {} outside [0, π]",
                self.theta
            )));
        }
        Ok(())
    }
}

/// Value of a basis element together with its surface gradient on the unit
/// sphere, expressed in the local `(θ̂, φ̂)` frame.
///
/// For d = 2 only `d_theta` is meaningful and `d_phi_over_sin` is zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarmonicValue {
    pub value: C64,
    pub d_theta: C64,
    /// `(1 / sin θ) ∂Y/∂φ`, finite at the poles.
    pub d_phi_over_sin: C64,
}

impl HarmonicValue {
    fn scaled(self, s: C64) -> Self {
        HarmonicValue {
            value: self.value * s,
            d_theta: self.d_theta * s,
            d_phi_over_sin: self.d_phi_over_sin * s,
        }
    }

    fn conj(self) -> Self {
        HarmonicValue {
            value: self.value.conj(),
            d_theta: self.d_theta.conj(),
            d_phi_over_sin: self.d_phi_over_sin.conj(),
        }
    }
}

/// Multiplicity `N_{l,d}` of the degree-`l` harmonics in dimension `d`.
pub fn multiplicity(l: u32, dim: usize) -> Result<u64> {
    if dim < 2 {
        return Err(Error::UnsupportedDimension(dim, "d ≥ 2"));
    }
    // C(d+l-1, d-1) - C(d+l-3, d-1)
    let d = dim as u128;
    let l = l as u128;
    let upper = binomial(d + l - 1, d - 1);
    let lower = if d + l >= 3 {
        binomial(d + l - 3, d - 1)
    } else {
        0
    };
    u64::try_from(upper - lower)
        .map_err(|_| Error::Numerical(format!("multiplicity overflow for l={l}, d={dim}")))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Surface area `ω_{d-1} = 2 π^{d/2} / Γ(d/2)` of the unit sphere in `R^d`.
pub fn sphere_area(dim: usize) -> Result<f64> {
    if dim < 2 {
        return Err(Error::UnsupportedDimension(dim, "d ≥ 2"));
    }
    // ω(d) = 2π/(d-2) · ω(d-2), seeded with ω(2) = 2π and ω(3) = 4π
    let mut area = if dim.is_multiple_of(2) {
        2.0 * PI
    } else {
        4.0 * PI
    };
    let mut d = if dim.is_multiple_of(2) { 2 } else { 3 };
    while d < dim {
        d += 2;
        area *= 2.0 * PI / (d - 2) as f64;
    }
    Ok(area)
}

/// Evaluate a single basis element.
pub fn eval_harmonic(idx: HarmonicIndex, dim: usize, angles: Angles, basis: Basis) -> Result<C64> {
    Ok(eval_harmonic_with_gradient(idx, dim, angles, basis)?.value)
}

/// Evaluate a basis element and its surface gradient.
pub fn eval_harmonic_with_gradient(
    idx: HarmonicIndex,
    dim: usize,
    angles: Angles,
    basis: Basis,
) -> Result<HarmonicValue> {
    PointHarmonics::new(dim, idx.l, angles)?.eval(idx, basis)
}

/// Cached per-point data for evaluating many basis elements at one point.
#[derive(Clone, Debug)]
pub struct PointHarmonics {
    dim: usize,
    lmax: u32,
    angles: Angles,
    legendre: Option<LegendreTable>,
}

impl PointHarmonics {
    pub fn new(dim: usize, lmax: u32, angles: Angles) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::UnsupportedDimension(dim, "d ∈ {2, 3}"));
        }
        angles.validate(dim)?;
        let legendre = (dim == 3).then(|| LegendreTable::new(lmax, angles.theta));
        Ok(PointHarmonics {
            dim,
            lmax,
            angles,
            legendre,
        })
    }

    pub fn angles(&self) -> Angles {
        self.angles
    }

    pub fn eval(&self, idx: HarmonicIndex, basis: Basis) -> Result<HarmonicValue> {
        idx.validate(self.dim)?;
        if idx.l > self.lmax {
            return Err(Error::InvalidIndex {
                l: idx.l,
                m: idx.m,
                dim: self.dim,
            });
        }
        Ok(match (self.dim, basis) {
            (2, Basis::Complex) => circle_complex(idx, self.angles.theta),
            (2, Basis::Real) => circle_real(idx, self.angles.theta),
            (_, Basis::Complex) => self.sphere_complex(idx),
            (_, Basis::Real) => self.sphere_real(idx),
        })
    }

    fn table(&self) -> &LegendreTable {
        self.legendre
            .as_ref()
            .expect("legendre table exists for d = 3")
    }

    fn sphere_complex(&self, idx: HarmonicIndex) -> HarmonicValue {
        let k = idx.m.unsigned_abs();
        let t = self.table();
        let (p, q, dp) = (t.p(idx.l, k), t.p_over_sin(idx.l, k), t.dp_dtheta(idx.l, k));
        let phase = C64::from_polar(1.0, k as f64 * self.angles.phi);
        let positive = HarmonicValue {
            value: phase * p,
            d_theta: phase * dp,
            d_phi_over_sin: phase * C64::new(0.0, k as f64 * q),
        };
        if idx.m >= 0 {
            positive
        } else {
            // Y_l^{-k} = (-1)^k conj(Y_l^k)
            positive.conj().scaled(C64::new(parity(k), 0.0))
        }
    }

    fn sphere_real(&self, idx: HarmonicIndex) -> HarmonicValue {
        let k = idx.m.unsigned_abs();
        let t = self.table();
        let (p, q, dp) = (t.p(idx.l, k), t.p_over_sin(idx.l, k), t.dp_dtheta(idx.l, k));
        if k == 0 {
            return real_value(p, dp, 0.0);
        }
        let kf = k as f64;
        let scale = std::f64::consts::SQRT_2 * parity(k);
        let (s, c) = (kf * self.angles.phi).sin_cos();
        if idx.m > 0 {
            real_value(scale * p * c, scale * dp * c, -scale * kf * q * s)
        } else {
            real_value(scale * p * s, scale * dp * s, scale * kf * q * c)
        }
    }
}

fn real_value(value: f64, d_theta: f64, d_phi_over_sin: f64) -> HarmonicValue {
    HarmonicValue {
        value: C64::new(value, 0.0),
        d_theta: C64::new(d_theta, 0.0),
        d_phi_over_sin: C64::new(d_phi_over_sin, 0.0),
    }
}

fn parity(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Signed frequency of a circle basis element: `m = 1 → -l`, `m = 2 → +l`.
pub(crate) fn circle_frequency(idx: HarmonicIndex) -> i64 {
    let l = idx.l as i64;
    if idx.m == 1 {
        -l
    } else {
        l
    }
}

fn circle_complex(idx: HarmonicIndex, theta: f64) -> HarmonicValue {
    let freq = circle_frequency(idx) as f64;
    let value = C64::from_polar(1.0 / (2.0 * PI).sqrt(), freq * theta);
    HarmonicValue {
        value,
        d_theta: value * C64::new(0.0, freq),
        d_phi_over_sin: C64::new(0.0, 0.0),
    }
}

fn circle_real(idx: HarmonicIndex, theta: f64) -> HarmonicValue {
    if idx.l == 0 {
        return real_value(1.0 / (2.0 * PI).sqrt(), 0.0, 0.0);
    }
    let l = idx.l as f64;
    let norm = 1.0 / PI.sqrt();
    let (s, c) = (l * theta).sin_cos();
    if idx.m == 1 {
        real_value(norm * c, -norm * l * s, 0.0)
    } else {
        real_value(norm * s, norm * l * c, 0.0)
    }
}
