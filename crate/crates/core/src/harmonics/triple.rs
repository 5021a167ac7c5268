use std::f64::consts::PI;

use super::{
    circle_frequency, sphere_quadrature, wigner_3j, Basis, HarmonicIndex, PointHarmonics, C64,
};
use crate::error::{Error, Result};

/// How [`triple_product`] evaluates the integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleMethod {
    /// Product quadrature sized to the sum of the three degrees.
    Quadrature,
    /// Wigner 3j symbols (sphere) or the frequency selection rule (circle).
    ClosedForm,
}

/// `∫ Y_a conj(Y_b) Y_c dS` over the unit circle or sphere, complex basis.
pub fn triple_product(
    a: HarmonicIndex,
    b: HarmonicIndex,
    c: HarmonicIndex,
    dim: usize,
    method: TripleMethod,
) -> Result<C64> {
    if dim != 2 && dim != 3 {
        return Err(Error::UnsupportedDimension(dim, "d ∈ {2, 3}"));
    }
    for idx in [a, b, c] {
        idx.validate(dim)?;
    }
    match method {
        TripleMethod::ClosedForm => Ok(C64::new(closed_form(a, b, c, dim), 0.0)),
        TripleMethod::Quadrature => {
            let rule = sphere_quadrature(dim, a.l + b.l + c.l)?;
            let lmax = a.l.max(b.l).max(c.l);
            let mut acc = C64::new(0.0, 0.0);
            for (&node, &w) in rule.nodes.iter().zip(&rule.weights) {
                let ph = PointHarmonics::new(dim, lmax, node)?;
                let ya = ph.eval(a, Basis::Complex)?.value;
                let yb = ph.eval(b, Basis::Complex)?.value;
                let yc = ph.eval(c, Basis::Complex)?.value;
                acc += ya * yb.conj() * yc * w;
            }
            Ok(acc)
        }
    }
}

fn closed_form(a: HarmonicIndex, b: HarmonicIndex, c: HarmonicIndex, dim: usize) -> f64 {
    if dim == 2 {
        return if circle_frequency(a) - circle_frequency(b) + circle_frequency(c) == 0 {
            1.0 / (2.0 * PI).sqrt()
        } else {
            0.0
        };
    }
    let parity = wigner_3j(a.l, b.l, c.l, 0, 0, 0);
    if parity == 0.0 {
        return 0.0;
    }
    let coupling = wigner_3j(a.l, b.l, c.l, a.m, -b.m, c.m);
    if coupling == 0.0 {
        return 0.0;
    }
    let dims = ((2 * a.l + 1) * (2 * b.l + 1) * (2 * c.l + 1)) as f64;
    let sign = if b.m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign * (dims / (4.0 * PI)).sqrt() * parity * coupling
}
