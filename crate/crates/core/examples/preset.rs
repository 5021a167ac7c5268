//! Run a built-in experiment: `cargo run --release --example preset -- fig3b`.

use steklov::experiment::{parse_config, preset, run_experiment, PRESET_NAMES};

fn main() -> steklov::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig3b".into());
    let Some(text) = preset(&name) else {
        eprintln!("unknown preset {name}; choose one of {PRESET_NAMES:?}");
        std::process::exit(2);
    };
    let cfg = parse_config(text)?;
    let report = run_experiment(&cfg)?
        .compare
        .expect("presets run in compare mode");
    for e in &report.entries {
        println!(
            "n={} k={} sigma={:.4} EMP {:?} right {:?} left {:?} {}",
            e.n,
            e.k,
            e.value,
            e.emp_eigenvalues,
            e.right_slopes,
            e.left_slopes,
            if e.pass { "match" } else { "mismatch" }
        );
    }
    Ok(())
}
