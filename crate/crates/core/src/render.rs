//! SVG rendering of grid decompositions, one unit square per vertex.

use std::io::Write;

use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Deterministic fill color for a center id, kept away from black so
/// neighboring pieces stay distinguishable.
pub fn center_color(center: usize) -> String {
    let h = derive_seed(0x5EED_C010, center as u64);
    let rgb = (h & 0x00BF_BFBF) + 0x0030_3030;
    format!("#{rgb:06x}")
}

/// Writes a `cols x rows` SVG where cell `(r, c)` shows the owner of
/// vertex `r * cols + c`.
pub fn render_grid_svg<W: Write>(
    rows: usize,
    cols: usize,
    owner: &[usize],
    mut w: W,
) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    if owner.len() != rows * cols {
        return Err(Error::input(format!(
            "{} labels do not cover a {rows}x{cols} grid",
            owner.len()
        )));
    }
    let scale = (1024 / cols.max(rows)).max(1);
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {cols} {rows}" shape-rendering="crispEdges">"#,
        cols * scale,
        rows * scale
    )?;
    for r in 0..rows {
        for c in 0..cols {
            let center = owner[r * cols + c];
            writeln!(
                w,
                r#"<rect x="{c}" y="{r}" width="1" height="1" fill="{}"/>"#,
                center_color(center)
            )?;
        }
    }
    writeln!(w, "</svg>")?;
    w.flush()?;
    Ok(())
}
