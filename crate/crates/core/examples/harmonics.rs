//! Evaluating harmonics, switching bases and coupling coefficients.

use steklov::harmonics::{
    coeff_conjugate_transform, eval_harmonic, triple_product, wigner_3j, Angles, Basis, CoeffMap,
    Direction, HarmonicIndex, TripleMethod, C64,
};

fn main() -> steklov::Result<()> {
    let a = Angles::sphere(0.7, 2.1);
    for (l, m) in [(0, 0), (1, -1), (2, 1), (8, 1)] {
        let i = HarmonicIndex::new(l, m);
        let z = eval_harmonic(i, 3, a, Basis::Complex)?;
        let r = eval_harmonic(i, 3, a, Basis::Real)?;
        println!("Y({l},{m}) complex {z:.6}  real {:.6}", r.re);
    }

    // the real harmonic Y_{8,1} written in the complex basis
    let mut real = CoeffMap::new();
    real.insert(HarmonicIndex::new(8, 1), C64::new(1.0, 0.0));
    for (i, c) in coeff_conjugate_transform(&real, Direction::RealToComplex, 3)? {
        println!("  ({},{}) -> {c:.6}", i.l, i.m);
    }

    println!("3j(1 1 2; 0 0 0) = {:.12}", wigner_3j(1, 1, 2, 0, 0, 0));
    let (p, q) = (HarmonicIndex::new(1, 0), HarmonicIndex::new(2, 0));
    for method in [TripleMethod::ClosedForm, TripleMethod::Quadrature] {
        println!(
            "int Y10 Y10 Y20 ({method:?}) = {:.12}",
            triple_product(p, p, q, 3, method)?.re
        );
    }
    Ok(())
}
