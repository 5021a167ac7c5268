//! Batch experiments: JSON configs in, CSV/JSON/SVG files out.
//!
//! ```no_run
//! use steklov::experiment::{parse_config, run_experiment, write_outputs};
//!
//! let cfg = parse_config(steklov::experiment::preset("fig3a").unwrap()).unwrap();
//! let artifacts = run_experiment(&cfg).unwrap();
//! write_outputs(&artifacts, std::path::Path::new("out"), "fig3a").unwrap();
//! ```

mod config;
mod output;
mod presets;
mod shorthand;
mod svg;

use serde::Serialize;

pub use config::{
    parse_config, print_config, Coefficient, DomainBlock, EigenSelector, ExperimentConfig,
    ExplicitTerm, FieldBlock, FieldTerm, Mode, MpsBlock, OutputBlock, SpectrumBlock,
};
pub use output::{branches_csv, write_outputs, OutputFiles};
pub use presets::{preset, PRESET_NAMES};
pub use shorthand::expand_shorthand;
pub use svg::{render_plot_svg, Tangent};

use crate::error::Result;
use crate::harmonics::HarmonicIndex;
use crate::mps::{branch_sweep, match_residual, slopes_at_zero, BranchData};
use crate::perturbation::{
    emp_matrix, emp_trace_formula, subdifferential_and_classify, Classification, ClassifyOptions,
    CriticalityKind, Subdifferential,
};
use crate::spectra::{enumerate_spectrum, DomainSpec, SteklovEigen};

/// Largest slope residual accepted by compare mode.
pub const MATCH_TOLERANCE: f64 = 0.02;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub domain: DomainSpec,
    pub eigenvalues: Vec<SteklovEigen>,
}

/// EMP data of one selected eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpEntry {
    pub n: u32,
    pub k: u8,
    pub value: f64,
    pub index: usize,
    pub multiplicity: u64,
    /// Row labels as `[l, m]`.
    pub basis: Vec<[i64; 2]>,
    /// Entries as `[re, im]`, row major.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub eigenvalues: Vec<f64>,
    pub trace: f64,
    pub trace_formula: f64,
    pub subdifferential: Subdifferential,
    pub classification: Classification,
    pub kind: CriticalityKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpReport {
    pub domain: DomainSpec,
    pub entries: Vec<EmpEntry>,
}

/// Analytic prediction and measured slopes of one eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareEntry {
    pub n: u32,
    pub k: u8,
    pub value: f64,
    pub index: usize,
    pub multiplicity: u64,
    pub emp_eigenvalues: Vec<f64>,
    pub subdifferential: Subdifferential,
    pub classification: Classification,
    pub kind: CriticalityKind,
    pub right_slopes: Vec<f64>,
    pub left_slopes: Vec<f64>,
    pub right_residual: f64,
    pub left_residual: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub domain: DomainSpec,
    pub tolerance: f64,
    pub entries: Vec<CompareEntry>,
}

impl CompareReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Branches chosen for plotting, with optional tangent lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Plot {
    pub indices: Vec<usize>,
    pub tangents: Vec<Tangent>,
}

/// Everything one run produced; unset fields are not part of the mode.
#[derive(Clone, Debug, Default)]
pub struct Artifacts {
    pub spectrum: Option<SpectrumReport>,
    pub emp: Option<EmpReport>,
    pub branches: Option<BranchData>,
    pub compare: Option<CompareReport>,
    pub plot: Option<Plot>,
}

fn emp_entry(
    domain: &DomainSpec,
    cfg: &ExperimentConfig,
    e: &SteklovEigen,
    k: u8,
) -> Result<EmpEntry> {
    let field = cfg.field_for(domain)?;
    let m = emp_matrix(domain, &field, e)?;
    let (sub, class) = subdifferential_and_classify(&m, ClassifyOptions::default());
    let label = |i: &HarmonicIndex| [i.l as i64, i.m as i64];
    Ok(EmpEntry {
        n: e.degree,
        k,
        value: e.value,
        index: e.index,
        multiplicity: e.multiplicity,
        basis: m.indices.iter().map(label).collect(),
        matrix: m
            .entries
            .row_iter()
            .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
            .collect(),
        eigenvalues: m.eigenvalues.clone(),
        trace: m.trace,
        trace_formula: emp_trace_formula(domain, &field, e)?,
        subdifferential: sub,
        classification: class,
        kind: class.kind(),
    })
}

fn emp_report(cfg: &ExperimentConfig) -> Result<EmpReport> {
    let domain = cfg.domain_spec();
    let eigens = cfg.selected_eigen()?;
    let entries = eigens
        .iter()
        .zip(&cfg.eigen)
        .map(|(e, sel)| emp_entry(&domain, cfg, e, sel.k))
        .collect::<Result<_>>()?;
    Ok(EmpReport { domain, entries })
}

/// Run the experiment described by a finalized config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Artifacts> {
    let domain = cfg.domain_spec();
    let mut out = Artifacts::default();
    match cfg.mode {
        Mode::Spectrum => {
            let count = cfg.spectrum.as_ref().map_or(10, |s| s.count);
            out.spectrum = Some(SpectrumReport {
                domain,
                eigenvalues: enumerate_spectrum(&domain, count)?,
            });
        }
        Mode::Emp => out.emp = Some(emp_report(cfg)?),
        Mode::Branches => {
            let data = branch_sweep(&domain, &cfg.field_for(&domain)?, &cfg.mps_config())?;
            out.plot = Some(Plot {
                indices: (0..data.branch_count()).collect(),
                tangents: Vec::new(),
            });
            out.branches = Some(data);
        }
        Mode::Compare => {
            let emp = emp_report(cfg)?;
            let data = branch_sweep(&domain, &cfg.field_for(&domain)?, &cfg.mps_config())?;
            let eigens = cfg.selected_eigen()?;
            let mut entries = Vec::new();
            let mut plot = Plot {
                indices: Vec::new(),
                tangents: Vec::new(),
            };
            for (e, em) in eigens.iter().zip(emp.entries) {
                let slopes = slopes_at_zero(&data, e)?;
                let right_residual = match_residual(&slopes.right, &em.eigenvalues);
                let left_residual = match_residual(&slopes.left, &em.eigenvalues);
                let residual = right_residual.max(left_residual);
                plot.indices
                    .extend(e.index..e.index + e.multiplicity as usize);
                for &s in &em.eigenvalues {
                    plot.tangents.push(Tangent {
                        value: e.value,
                        slope: s,
                    });
                }
                entries.push(CompareEntry {
                    n: em.n,
                    k: em.k,
                    value: em.value,
                    index: em.index,
                    multiplicity: em.multiplicity,
                    emp_eigenvalues: em.eigenvalues,
                    subdifferential: em.subdifferential,
                    classification: em.classification,
                    kind: em.kind,
                    right_slopes: slopes.right,
                    left_slopes: slopes.left,
                    right_residual,
                    left_residual,
                    residual,
                    pass: residual < MATCH_TOLERANCE,
                });
            }
            plot.indices.sort_unstable();
            plot.indices.dedup();
            out.compare = Some(CompareReport {
                domain,
                tolerance: MATCH_TOLERANCE,
                entries,
            });
            out.branches = Some(data);
            out.plot = Some(plot);
        }
    }
    Ok(out)
}
