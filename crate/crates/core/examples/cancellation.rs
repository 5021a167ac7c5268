//! Inner and outer degree-6 deformations of the annulus (0.4, 1) that cancel
//! at first order for μ_{3,1} and μ_{3,2}.

use steklov::harmonics::{CoeffMap, HarmonicIndex, C64};
use steklov::perturbation::{cancellation_coefficients, emp_matrix};
use steklov::spectra::{annulus_eigen, BoundaryKind, DomainSpec};

fn main() -> steklov::Result<()> {
    let dom = DomainSpec::annulus(2, 0.4, 1.0)?;
    let mut inner = CoeffMap::new();
    inner.insert(HarmonicIndex::new(6, 1), C64::new(1.0, 0.0));
    inner.insert(HarmonicIndex::new(6, 2), C64::new(1.0, 0.0));
    let (lo, hi) = annulus_eigen(&dom, 3)?;
    for e in [lo, hi] {
        let f = cancellation_coefficients(&dom, &e, &inner)?;
        let outer = f.coefficient(BoundaryKind::Outer, HarmonicIndex::new(6, 1));
        let m = emp_matrix(&dom, &f, &e)?;
        println!(
            "sigma = {:.4}: outer coefficient {:.6}, largest EMP entry {:.1e}",
            e.value,
            outer.re,
            m.max_abs_entry()
        );
    }
    Ok(())
}
