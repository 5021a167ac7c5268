//! Dilations move every branch at the same rate; the trace formula works in
//! any dimension.

use steklov::perturbation::{emp_trace_formula, DeformationField};
use steklov::spectra::{ball_eigen, eigen_at, DomainSpec};

fn main() -> steklov::Result<()> {
    for d in 2..=5 {
        let ball = DomainSpec::ball(d, 1.0)?;
        let f = DeformationField::dilation(&ball)?;
        let e = ball_eigen(&ball, 2)?;
        let tr = emp_trace_formula(&ball, &f, &e)?;
        println!(
            "ball d={d}: sigma = 2, {} branches, trace {tr:.6}",
            e.multiplicity
        );
    }
    let ann = DomainSpec::annulus(3, 0.4, 1.0)?;
    let f = DeformationField::dilation(&ann)?;
    for k in [1, 2] {
        let e = eigen_at(&ann, 2, k)?;
        let tr = emp_trace_formula(&ann, &f, &e)?;
        println!(
            "shell mu_2{k} = {:.5}: trace / multiplicity = {:.5}",
            e.value,
            tr / e.multiplicity as f64
        );
    }
    Ok(())
}
