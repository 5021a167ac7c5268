//! Exact Steklov spectra of a ball and an annulus.

use steklov::spectra::{enumerate_spectrum, DomainSpec};

fn main() -> steklov::Result<()> {
    for dom in [DomainSpec::ball(3, 1.0)?, DomainSpec::annulus(2, 0.4, 1.0)?] {
        println!(
            "{:?} d={} r_o={} r_i={:?}",
            dom.kind, dom.dim, dom.r_o, dom.r_i
        );
        let spectrum = enumerate_spectrum(&dom, 25)?;
        // one line per distinct eigenvalue
        for (i, e) in spectrum.iter().enumerate().filter(|(i, e)| e.index == *i) {
            println!(
                "  #{i:<3} sigma = {:>9.5}  degree {} branch {} multiplicity {}",
                e.value, e.degree, e.branch, e.multiplicity
            );
        }
    }
    Ok(())
}
