//! Eigenvalue branches of a perturbed disk and their one-sided slopes.

use std::f64::consts::PI;

use steklov::experiment::{branches_csv, render_plot_svg, Tangent};
use steklov::harmonics::{Basis, HarmonicIndex, C64};
use steklov::mps::{branch_sweep, slopes_at_zero, MpsConfig};
use steklov::perturbation::{emp_matrix_any_basis, DeformationField};
use steklov::spectra::{ball_eigen, BoundaryKind, DomainSpec};

fn main() -> steklov::Result<()> {
    let disk = DomainSpec::ball(2, 1.0)?;
    let field = DeformationField::new(2, Basis::Real).with(
        BoundaryKind::Outer,
        HarmonicIndex::new(6, 1),
        C64::new(2.0 * PI.sqrt(), 0.0),
    )?;
    let cfg = MpsConfig::for_domain(&disk);
    let data = branch_sweep(&disk, &field, &cfg)?;

    let sigma = ball_eigen(&disk, 3)?;
    let slopes = slopes_at_zero(&data, &sigma)?;
    let emp = emp_matrix_any_basis(&disk, &field, &sigma)?;
    println!("right slopes {:?}", slopes.right);
    println!("left slopes  {:?}", slopes.left);
    println!("EMP          {:?}", emp.eigenvalues);

    let dir = std::env::temp_dir();
    std::fs::write(dir.join("disk_branches.csv"), branches_csv(&data)).expect("write csv");
    let tangents: Vec<Tangent> = emp
        .eigenvalues
        .iter()
        .map(|&s| Tangent {
            value: sigma.value,
            slope: s,
        })
        .collect();
    let svg = render_plot_svg(&data, &[4, 5, 6, 7], &tangents)?;
    std::fs::write(dir.join("disk_branches.svg"), svg).expect("write svg");
    println!(
        "wrote disk_branches.csv and disk_branches.svg to {}",
        dir.display()
    );
    Ok(())
}
