//! EMP matrix of the disk eigenvalue 3 under the deformation 2cos(6θ).

use std::f64::consts::PI;

use steklov::harmonics::{Basis, HarmonicIndex, C64};
use steklov::perturbation::{
    emp_matrix_any_basis, subdifferential_and_classify, ClassifyOptions, DeformationField,
};
use steklov::spectra::{ball_eigen, BoundaryKind, DomainSpec};

fn main() -> steklov::Result<()> {
    let disk = DomainSpec::ball(2, 1.0)?;
    let sigma = ball_eigen(&disk, 3)?;
    // cos(kθ) is √π times the normalized real harmonic
    let field = DeformationField::new(2, Basis::Real).with(
        BoundaryKind::Outer,
        HarmonicIndex::new(6, 1),
        C64::new(2.0 * PI.sqrt(), 0.0),
    )?;
    let m = emp_matrix_any_basis(&disk, &field, &sigma)?;
    println!("EMP matrix:\n{:.6}", m.entries);
    println!("branch slopes {:?}", m.eigenvalues);
    let (sub, cls) = subdifferential_and_classify(&m, ClassifyOptions::default());
    println!(
        "subdifferential [{:.3}, {:.3}], {:?}",
        sub.lo,
        sub.hi,
        cls.kind()
    );
    Ok(())
}
