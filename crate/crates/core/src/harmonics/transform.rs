use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{Basis, HarmonicIndex, C64};
use crate::error::{Error, Result};

/// Sparse coefficient table keyed by basis index.
pub type CoeffMap = BTreeMap<HarmonicIndex, C64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    RealToComplex,
    ComplexToReal,
}

const REALITY_TOL: f64 = 1e-12;

fn scale_of(coeffs: &CoeffMap) -> f64 {
    coeffs.values().map(|c| c.norm()).fold(1.0, f64::max)
}

fn parity(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Check that `coeffs`, read in `basis`, describe a real-valued function.
pub fn check_reality(coeffs: &CoeffMap, dim: usize, basis: Basis) -> Result<()> {
    let tol = REALITY_TOL * scale_of(coeffs);
    for (&idx, &c) in coeffs {
        idx.validate(dim)?;
        let partner = match basis {
            Basis::Real => {
                if c.im.abs() > tol {
                    return Err(Error::RealityViolation(format!(
                        "real-basis coefficient of {idx} has imaginary part {}",
                        c.im
                    )));
                }
                continue;
            }
            Basis::Complex => partner_of(idx, dim, c),
        };
        let (pidx, expected) = partner;
        let actual = coeffs.get(&pidx).copied().unwrap_or_default();
        if (actual - expected).norm() > tol {
            return Err(Error::RealityViolation(format!(
                "coefficient of {pidx} is {actual}, conjugation symmetry with {idx} requires {expected}"
            )));
        }
    }
    Ok(())
}

// Index paired with `idx` by conjugation, and the coefficient it must carry.
fn partner_of(idx: HarmonicIndex, dim: usize, c: C64) -> (HarmonicIndex, C64) {
    match dim {
        2 if idx.l == 0 => (idx, c.conj()),
        2 => (HarmonicIndex::new(idx.l, 3 - idx.m), c.conj()),
        3 => (
            HarmonicIndex::new(idx.l, -idx.m),
            c.conj() * parity(idx.m.unsigned_abs()),
        ),
        _ => (idx, c.conj()),
    }
}

/// Rewrite a coefficient table in the other basis variant.
///
/// The input must describe a real-valued function; the map is unitary so
/// applying both directions returns the input.
pub fn coeff_conjugate_transform(
    coeffs: &CoeffMap,
    direction: Direction,
    dim: usize,
) -> Result<CoeffMap> {
    let source = match direction {
        Direction::RealToComplex => Basis::Real,
        Direction::ComplexToReal => Basis::Complex,
    };
    check_reality(coeffs, dim, source)?;
    let mut out = CoeffMap::new();
    let mut add = |idx: HarmonicIndex, v: C64| {
        *out.entry(idx).or_insert(C64::new(0.0, 0.0)) += v;
    };
    let s = FRAC_1_SQRT_2;
    let i = C64::new(0.0, 1.0);
    for (&idx, &c) in coeffs {
        let l = idx.l;
        match (dim, direction) {
            (2, _) if l == 0 => add(idx, c),
            (2, Direction::RealToComplex) => {
                let (y1, y2) = (HarmonicIndex::new(l, 1), HarmonicIndex::new(l, 2));
                if idx.m == 1 {
                    add(y1, c * s);
                    add(y2, c * s);
                } else {
                    add(y1, c * i * s);
                    add(y2, -c * i * s);
                }
            }
            (2, Direction::ComplexToReal) => {
                let (r1, r2) = (HarmonicIndex::new(l, 1), HarmonicIndex::new(l, 2));
                add(r1, c * s);
                if idx.m == 1 {
                    add(r2, -c * i * s);
                } else {
                    add(r2, c * i * s);
                }
            }
            (3, _) if idx.m == 0 => add(idx, c),
            (3, Direction::RealToComplex) => {
                let k = idx.m.unsigned_abs();
                let (neg, pos) = (
                    HarmonicIndex::new(l, -(k as i32)),
                    HarmonicIndex::new(l, k as i32),
                );
                let p = parity(k);
                if idx.m > 0 {
                    add(neg, c * s);
                    add(pos, c * p * s);
                } else {
                    add(neg, c * i * s);
                    add(pos, -c * i * p * s);
                }
            }
            (3, Direction::ComplexToReal) => {
                let k = idx.m.unsigned_abs();
                let (cos_t, sin_t) = (
                    HarmonicIndex::new(l, k as i32),
                    HarmonicIndex::new(l, -(k as i32)),
                );
                let p = parity(k);
                if idx.m < 0 {
                    add(cos_t, c * s);
                    add(sin_t, -c * i * s);
                } else {
                    add(cos_t, c * p * s);
                    add(sin_t, c * i * p * s);
                }
            }
            _ => add(idx, c),
        }
    }
    Ok(out)
}
