use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::svg::render_plot_svg;
use super::Artifacts;
use crate::error::{Error, Result};
use crate::mps::BranchData;

/// Paths written by [`write_outputs`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OutputFiles {
    pub files: Vec<PathBuf>,
}

/// `t,lambda_0,lambda_1,…` followed by one row per parameter, every number
/// with 17 significant digits. Lines end with CRLF.
pub fn branches_csv(data: &BranchData) -> String {
    let mut s = String::from("t");
    for k in 0..data.branch_count() {
        let _ = write!(s, ",lambda_{k}");
    }
    s.push_str("\r\n");
    for (t, row) in data.t.iter().zip(&data.values) {
        let _ = write!(s, "{t:.16e}");
        for v in row {
            let _ = write!(s, ",{v:.16e}");
        }
        s.push_str("\r\n");
    }
    s
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn write_file(path: PathBuf, contents: &str, out: &mut OutputFiles) -> Result<()> {
    fs::write(&path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    log::info!("wrote {}", path.display());
    out.files.push(path);
    Ok(())
}

/// Write every artifact as `<dir>/<stem>_<kind>.<ext>`.
pub fn write_outputs(artifacts: &Artifacts, dir: &Path, stem: &str) -> Result<OutputFiles> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut out = OutputFiles::default();
    let file = |kind: &str| dir.join(format!("{stem}_{kind}"));
    if let Some(r) = &artifacts.spectrum {
        write_file(file("spectrum.json"), &json(r), &mut out)?;
    }
    if let Some(r) = &artifacts.emp {
        write_file(file("emp.json"), &json(r), &mut out)?;
    }
    if let Some(b) = &artifacts.branches {
        write_file(file("branches.csv"), &branches_csv(b), &mut out)?;
        if let Some(p) = &artifacts.plot {
            if !p.indices.is_empty() {
                let svg = render_plot_svg(b, &p.indices, &p.tangents)?;
                write_file(file("branches.svg"), &svg, &mut out)?;
            }
        }
    }
    if let Some(r) = &artifacts.compare {
        write_file(file("compare.json"), &json(r), &mut out)?;
    }
    Ok(out)
}
