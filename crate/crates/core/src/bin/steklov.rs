use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use steklov::experiment::{
    parse_config, preset, run_experiment, write_outputs, Mode, PRESET_NAMES,
};
use steklov::Error;

/// Run a Steklov spectrum / EMP / branch experiment from a JSON config.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// What to compute; overrides the mode in the config.
    mode: Mode,
    /// Path to the JSON experiment config.
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Use a built-in config instead of a file.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
    preset: Option<String>,
    /// Directory for output files (default: the config's `output.dir`, else `.`).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), Error> {
    let (text, fallback_stem) = match (&cli.preset, &cli.config) {
        (Some(name), _) => (preset(name).unwrap_or_default().to_string(), name.clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let stem = path
                .file_stem()
                .map_or("steklov".into(), |s| s.to_string_lossy().into_owned());
            (text, stem)
        }
        (None, None) => unreachable!("clap requires one of --config or --preset"),
    };
    let cfg = parse_config(&text)?.with_mode(cli.mode)?;
    for w in cfg.warnings() {
        log::warn!("{w}");
    }
    let output = cfg.output.clone().unwrap_or_default();
    let dir = cli
        .out_dir
        .or_else(|| output.dir.map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let stem = output.stem.unwrap_or(fallback_stem);

    let artifacts = run_experiment(&cfg)?;
    let written = write_outputs(&artifacts, &dir, &stem)?;
    for f in &written.files {
        println!("{}", f.display());
    }
    if let Some(report) = &artifacts.compare {
        for e in &report.entries {
            println!(
                "n={} k={} value={:.6} residual={:.3e} {}",
                e.n,
                e.k,
                e.value,
                e.residual,
                if e.pass { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                e if e.is_config_error() => ExitCode::from(2),
                Error::Io { .. } => ExitCode::from(1),
                _ => ExitCode::from(3),
            }
        }
    }
}
