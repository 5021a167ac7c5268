use serde::{Deserialize, Serialize};

use super::shorthand::expand_shorthand;
use crate::error::{Error, Result};
use crate::harmonics::{coeff_conjugate_transform, Basis, CoeffMap, Direction, HarmonicIndex, C64};
use crate::mps::{ansatz_per_boundary, auto_points, default_t_grid, MpsConfig};
use crate::perturbation::DeformationField;
use crate::spectra::{eigen_at, BoundaryKind, DomainKind, DomainSpec, SteklovEigen};

/// What an experiment computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sorted exact eigenvalues with multiplicities.
    Spectrum,
    /// EMP matrices and classifications of the selected eigenvalues.
    Emp,
    /// MPS eigenvalue branches over the parameter grid.
    Branches,
    /// EMP predictions joined with MPS slopes.
    Compare,
}

impl Mode {
    fn needs_field(self) -> bool {
        matches!(self, Mode::Emp | Mode::Compare)
    }

    fn needs_mps(self) -> bool {
        matches!(self, Mode::Branches | Mode::Compare)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainBlock {
    pub kind: DomainKind,
    pub d: usize,
    pub r_o: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_i: Option<f64>,
}

impl DomainBlock {
    pub fn spec(&self) -> DomainSpec {
        DomainSpec {
            kind: self.kind,
            dim: self.d,
            r_o: self.r_o,
            r_i: self.r_i,
        }
    }
}

/// A coefficient: a real number or `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

impl Coefficient {
    fn value(self) -> C64 {
        match self {
            Coefficient::Real(x) => C64::new(x, 0.0),
            Coefficient::Complex([re, im]) => C64::new(re, im),
        }
    }
}

fn real_basis() -> Basis {
    Basis::Real
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitTerm {
    pub l: u32,
    pub m: i32,
    pub coefficient: Coefficient,
    #[serde(default = "real_basis")]
    pub basis: Basis,
}

/// One summand of a boundary field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldTerm {
    /// Real-harmonic shorthand, e.g. `"2cos(6θ)"` or `"Y_{8,1}"`.
    Shorthand(String),
    Explicit(ExplicitTerm),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldBlock {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outer: Vec<FieldTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inner: Vec<FieldTerm>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MpsBlock {
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub lmax: Option<u32>,
    #[serde(rename = "K_o", default, skip_serializing_if = "Option::is_none")]
    pub k_outer: Option<usize>,
    #[serde(rename = "K_i", default, skip_serializing_if = "Option::is_none")]
    pub k_inner: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_cutoff: Option<f64>,
}

fn first_branch() -> u8 {
    1
}

/// Selects `μ_{n,k}` (or `n / r_o` on a ball, where `k` must be 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenSelector {
    pub n: u32,
    #[serde(default = "first_branch")]
    pub k: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumBlock {
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
}

/// A complete experiment description.
///
/// [`parse_config`] returns it validated with every default written out, so
/// printing and reparsing gives the same value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub domain: DomainBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mps: Option<MpsBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eigen: Vec<EigenSelector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputBlock>,
}

fn config_err(path: impl Into<String>, message: impl ToString) -> Error {
    Error::Config {
        path: path.into(),
        message: message.to_string(),
    }
}

/// Parse, validate and complete a JSON experiment description.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        config_err(
            if path == "." { String::new() } else { path },
            e.into_inner(),
        )
    })?;
    raw.finalize()
}

/// Pretty JSON that [`parse_config`] reads back to the same value.
pub fn print_config(config: &ExperimentConfig) -> String {
    serde_json::to_string_pretty(config).expect("config serializes")
}

impl ExperimentConfig {
    pub fn domain_spec(&self) -> DomainSpec {
        self.domain.spec()
    }

    /// Validate the blocks against each other and write out defaults.
    pub fn finalize(mut self) -> Result<Self> {
        let domain = self.domain_spec();
        domain.validate().map_err(|e| config_err("domain", e))?;
        let d = domain.dim;
        if matches!(self.mode, Mode::Emp | Mode::Branches | Mode::Compare) && d != 2 && d != 3 {
            return Err(config_err(
                "domain.d",
                "EMP matrices and MPS runs need d = 2 or 3",
            ));
        }

        if self.field.is_some() {
            self.field_for(&domain)?;
        } else if self.mode.needs_field() {
            return Err(config_err(
                "field",
                format!("{:?} mode needs a field block", self.mode),
            ));
        }

        let mut eigens = Vec::with_capacity(self.eigen.len());
        for (i, sel) in self.eigen.iter().enumerate() {
            eigens.push(
                resolve_eigen(&domain, *sel).map_err(|e| config_err(format!("eigen[{i}]"), e))?,
            );
        }
        if self.mode.needs_field() && eigens.is_empty() {
            return Err(config_err(
                "eigen",
                format!("{:?} mode needs at least one selector", self.mode),
            ));
        }

        if self.mode == Mode::Spectrum && self.spectrum.is_none() {
            self.spectrum = Some(SpectrumBlock { count: 10 });
        }
        if let Some(s) = &self.spectrum {
            if s.count == 0 {
                return Err(config_err("spectrum.count", "must be positive"));
            }
        }

        if self.mode.needs_mps() || self.mps.is_some() {
            let block = self.mps.take().unwrap_or_default();
            self.mps = Some(fill_mps(block, &domain, &eigens, self.mode)?);
        }
        Ok(self)
    }

    /// Same experiment with a different mode, revalidated.
    pub fn with_mode(mut self, mode: Mode) -> Result<Self> {
        self.mode = mode;
        self.finalize()
    }

    /// The deformation field in the complex basis (zero when absent).
    pub fn field_for(&self, domain: &DomainSpec) -> Result<DeformationField> {
        let d = domain.dim;
        let mut field = DeformationField::new(d, Basis::Complex);
        let Some(block) = &self.field else {
            return Ok(field);
        };
        let sides = [
            (BoundaryKind::Outer, "outer", &block.outer),
            (BoundaryKind::Inner, "inner", &block.inner),
        ];
        for (boundary, name, terms) in sides {
            if terms.is_empty() {
                continue;
            }
            if boundary == BoundaryKind::Inner && !domain.is_annulus() {
                return Err(config_err("field.inner", "a ball has no inner boundary"));
            }
            let mut real = CoeffMap::new();
            let mut complex = CoeffMap::new();
            for (i, term) in terms.iter().enumerate() {
                let path = format!("field.{name}[{i}]");
                match term {
                    FieldTerm::Shorthand(s) => {
                        for (idx, c) in expand_shorthand(s, d).map_err(|e| config_err(&path, e))? {
                            *real.entry(idx).or_default() += c;
                        }
                    }
                    FieldTerm::Explicit(t) => {
                        let idx = HarmonicIndex::new(t.l, t.m);
                        idx.validate(d).map_err(|e| config_err(&path, e))?;
                        let c = t.coefficient.value();
                        if !(c.re.is_finite() && c.im.is_finite()) {
                            return Err(config_err(
                                format!("{path}.coefficient"),
                                "must be finite",
                            ));
                        }
                        let target = match t.basis {
                            Basis::Real => &mut real,
                            Basis::Complex => &mut complex,
                        };
                        *target.entry(idx).or_default() += c;
                    }
                }
            }
            let field_path = format!("field.{name}");
            let mut coeffs = if real.is_empty() {
                CoeffMap::new()
            } else {
                coeff_conjugate_transform(&real, Direction::RealToComplex, d)
                    .map_err(|e| config_err(&field_path, e))?
            };
            for (idx, c) in complex {
                *coeffs.entry(idx).or_default() += c;
            }
            field
                .set_boundary(boundary, coeffs)
                .map_err(|e| config_err(&field_path, e))?;
        }
        field.check_reality().map_err(|e| config_err("field", e))?;
        Ok(field)
    }

    /// Exact eigen data of every selector.
    pub fn selected_eigen(&self) -> Result<Vec<SteklovEigen>> {
        let domain = self.domain_spec();
        self.eigen
            .iter()
            .enumerate()
            .map(|(i, s)| {
                resolve_eigen(&domain, *s).map_err(|e| config_err(format!("eigen[{i}]"), e))
            })
            .collect()
    }

    /// Solver parameters; defaults when the block is absent.
    pub fn mps_config(&self) -> MpsConfig {
        let domain = self.domain_spec();
        let mut cfg = MpsConfig::for_domain(&domain);
        if let Some(b) = &self.mps {
            cfg.lmax = b.lmax.unwrap_or(cfg.lmax);
            cfg.k_outer = b.k_outer.unwrap_or(cfg.k_outer);
            cfg.k_inner = b.k_inner.unwrap_or(cfg.k_inner);
            cfg.t_grid = b.t_grid.clone().unwrap_or(cfg.t_grid);
            cfg.count = b.count.unwrap_or(cfg.count);
            cfg.rank_cutoff = b.rank_cutoff.unwrap_or(cfg.rank_cutoff);
        }
        cfg
    }

    /// Advisories about a valid but questionable setup, such as weak
    /// oversampling in the solver.
    pub fn warnings(&self) -> Vec<String> {
        match self.mode {
            Mode::Branches | Mode::Compare => {
                self.mps_config().oversampling_warnings(&self.domain_spec())
            }
            _ => Vec::new(),
        }
    }
}

fn resolve_eigen(domain: &DomainSpec, sel: EigenSelector) -> Result<SteklovEigen> {
    if sel.k == 0 || sel.k > 2 || (sel.k == 2 && !domain.is_annulus()) {
        return Err(Error::InvalidConfig(format!(
            "branch k = {} is not available on this domain",
            sel.k
        )));
    }
    eigen_at(domain, sel.n, sel.k)
}

fn fill_mps(
    mut b: MpsBlock,
    domain: &DomainSpec,
    eigens: &[SteklovEigen],
    mode: Mode,
) -> Result<MpsBlock> {
    let d = domain.dim;
    let lmax = *b.lmax.get_or_insert(7);
    b.k_outer.get_or_insert(auto_points(d, lmax));
    b.k_inner.get_or_insert(if domain.is_annulus() {
        auto_points(d, lmax)
    } else {
        0
    });
    b.t_grid.get_or_insert_with(default_t_grid);
    let needed = eigens
        .iter()
        .map(|e| e.index + e.multiplicity as usize + 1)
        .max()
        .unwrap_or(10);
    b.count.get_or_insert(needed);
    b.rank_cutoff.get_or_insert(1e-12);

    let per = ansatz_per_boundary(d, lmax);
    let total = if domain.is_annulus() { 2 * per } else { per };
    let count = b.count.unwrap_or(needed);
    if count > total {
        return Err(config_err(
            "mps.count",
            format!("{count} branches requested but the ansatz has only {total} functions"),
        ));
    }
    let grid = b.t_grid.as_deref().unwrap_or(&[]);
    if grid.is_empty() {
        return Err(config_err("mps.t_grid", "must not be empty"));
    }
    if mode == Mode::Compare {
        let pos = grid.iter().filter(|&&t| t > 0.0).count();
        let neg = grid.iter().filter(|&&t| t < 0.0).count();
        if !grid.contains(&0.0) || pos < 2 || neg < 2 {
            return Err(config_err(
                "mps.t_grid",
                "compare mode needs 0 and at least two points on each side",
            ));
        }
        if count < needed {
            return Err(config_err(
                "mps.count",
                format!("the selected eigenvalues need at least {needed} branches"),
            ));
        }
    }
    let cfg = MpsConfig {
        lmax,
        k_outer: b.k_outer.unwrap_or_default(),
        k_inner: b.k_inner.unwrap_or_default(),
        t_grid: grid.to_vec(),
        count,
        rank_cutoff: b.rank_cutoff.unwrap_or(1e-12),
    };
    cfg.validate(domain).map_err(|e| config_err("mps", e))?;
    Ok(b)
}
