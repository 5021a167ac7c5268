//! Built-in experiment configs, one per branch-plot scenario.
//!
//! The planar presets use `L = 7, K_o = 28, K_i = 20`. With `L = 7` a
//! spherical boundary carries 64 ansatz functions, more than 28 points can
//! determine, and the degree-8 field of `fig5` needs `L ≥ n + 8` before the
//! slopes settle; the 3D presets therefore use larger discretizations.

pub const PRESET_NAMES: [&str; 5] = ["fig3a", "fig3b", "fig4", "fig5", "fig6"];

/// Raw JSON of a preset, or `None` for an unknown name.
pub fn preset(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig3a" => include_str!("../../presets/fig3a.json"),
        "fig3b" => include_str!("../../presets/fig3b.json"),
        "fig4" => include_str!("../../presets/fig4.json"),
        "fig5" => include_str!("../../presets/fig5.json"),
        "fig6" => include_str!("../../presets/fig6.json"),
        _ => return None,
    })
}
