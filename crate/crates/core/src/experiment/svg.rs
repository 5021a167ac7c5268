use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mps::BranchData;

/// Line `value + slope · t` drawn dashed through `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tangent {
    pub value: f64,
    pub slope: f64,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 40.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        let pad = 0.05 * lo.abs().max(1.0);
        (lo - pad, hi + pad)
    }
}

/// Standalone SVG of the selected branches against `t`, with optional
/// tangent lines.
pub fn render_plot_svg(
    branches: &BranchData,
    indices: &[usize],
    tangents: &[Tangent],
) -> Result<String> {
    let nb = branches.branch_count();
    if indices.is_empty() || branches.t.is_empty() {
        return Err(Error::InvalidConfig("nothing to plot".into()));
    }
    if let Some(&k) = indices.iter().find(|&&k| k >= nb) {
        return Err(Error::InvalidConfig(format!(
            "branch {k} of {nb} requested"
        )));
    }
    let (t_lo, t_hi) = branches
        .t
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &t| {
            (a.min(t), b.max(t))
        });
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for &k in indices {
        for v in branches.branch(k) {
            y_lo = y_lo.min(v);
            y_hi = y_hi.max(v);
        }
    }
    let (x0, x1) = if t_hi > t_lo {
        (t_lo, t_hi)
    } else {
        padded(t_lo, t_hi)
    };
    let (y0, y1) = padded(y_lo, y_hi);
    let px = |t: f64| LEFT + (t - x0) / (x1 - x0) * (WIDTH - LEFT - RIGHT);
    let py = |y: f64| HEIGHT - BOTTOM - (y - y0) / (y1 - y0) * (HEIGHT - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{}" height="{}"/></clipPath></defs>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );

    let (ax, ay) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{ax}" y1="{ay}" x2="{}" y2="{ay}"/><line x1="{ax}" y1="{TOP}" x2="{ax}" y2="{ay}"/></g>"#,
        WIDTH - RIGHT
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12" fill="black">"#
    );
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let t = x0 + f * (x1 - x0);
        let x = px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{ay}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.4}</text>"#,
            ay + 5.0,
            ay + 20.0
        );
        let y = y0 + f * (y1 - y0);
        let yy = py(y);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{yy:.2}" x2="{ax}" y2="{yy:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y:.4}</text>"#,
            ax - 5.0,
            ax - 8.0,
            yy + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">eigenvalue</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        (TOP + HEIGHT - BOTTOM) / 2.0
    );
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r#"<g clip-path="url(#plot)" fill="none" stroke-width="1.5">"#
    );
    for (j, &k) in indices.iter().enumerate() {
        let pts: Vec<String> = branches
            .t
            .iter()
            .zip(branches.branch(k))
            .map(|(&t, v)| format!("{:.2},{:.2}", px(t), py(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline stroke="{}" points="{}"/>"#,
            PALETTE[j % PALETTE.len()],
            pts.join(" ")
        );
    }
    for tan in tangents {
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1" stroke-dasharray="6 4"/>"#,
            px(x0),
            py(tan.value + tan.slope * x0),
            px(x1),
            py(tan.value + tan.slope * x1)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant() -> BranchData {
        BranchData {
            t: vec![-0.1, 0.0, 0.1],
            values: vec![vec![2.0]; 3],
            diagnostics: Vec::new(),
        }
    }

    #[test]
    fn constant_branch_is_horizontal() {
        let svg = render_plot_svg(&constant(), &[0], &[]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("stroke-dasharray"));
        let line = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        let pts = line
            .split("points=\"")
            .nth(1)
            .unwrap()
            .trim_end_matches("\"/>");
        let ys: Vec<&str> = pts
            .split(' ')
            .map(|p| p.split(',').nth(1).unwrap())
            .collect();
        assert!(ys.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn tangents_are_dashed() {
        let t = [
            Tangent {
                value: 2.0,
                slope: 1.0,
            },
            Tangent {
                value: 2.0,
                slope: -1.0,
            },
        ];
        let svg = render_plot_svg(&constant(), &[0], &t).unwrap();
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
    }

    #[test]
    fn empty_selection_is_rejected() {
        assert!(render_plot_svg(&constant(), &[], &[]).is_err());
        assert!(render_plot_svg(&constant(), &[3], &[]).is_err());
    }
}
