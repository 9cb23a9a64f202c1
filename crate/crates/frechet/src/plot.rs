//! SVG rendering of the free-space diagram: cell grid, cut lines, free-space
//! shading, marked points, and the boundary-graph arcs.
//!
//! The drawing uses one SVG unit per global parameter unit (cell = unit
//! square) with the vertical axis flipped so the diagram reads like the
//! usual mathematical picture: (0,0) bottom left, (m,n) top right. Marked
//! points carry their full coordinates in the `cx`/`cy` attributes, so the
//! output is machine-checkable against the free-space module.

use std::fmt::Write as _;

use crate::curve::PiecewiseCurve;
use crate::error::Result;
use crate::freespace::{bbox_min_dist, build_graph, mark_cell};

/// Samples per cell edge for the free-space shading raster.
const SHADE_RES: usize = 48;

fn fmt(x: f64) -> String {
    format!("{:.12}", x)
}

/// Renders the free-space diagram of the two curves at `delta` as an SVG
/// document. `scale_px` is the pixel size of one cell.
pub fn render_svg(
    c1: &PiecewiseCurve,
    c2: &PiecewiseCurve,
    delta: f64,
    scale_px: f64,
) -> Result<String> {
    let m = c1.num_pieces();
    let n = c2.num_pieces();
    let g = build_graph(c1, c2, delta)?;
    let (w, h) = (m as f64, n as f64);
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\">",
        (w * scale_px).ceil(),
        (h * scale_px).ceil(),
        w,
        h
    )
    .unwrap();
    // Flip the vertical axis so the parameter origin is the bottom-left.
    writeln!(s, "<g transform=\"translate(0,{}) scale(1,-1)\">", h).unwrap();
    writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        w, h
    )
    .unwrap();

    // Free-space shading, one coarse raster per non-skipped cell.
    writeln!(s, "<g fill=\"#9bd49b\" stroke=\"none\">").unwrap();
    let step = 1.0 / SHADE_RES as f64;
    for (i, p1) in c1.pieces.iter().enumerate() {
        for (j, p2) in c2.pieces.iter().enumerate() {
            if bbox_min_dist(p1, p2) > delta {
                continue;
            }
            let grid = mark_cell(p1, p2, delta)?;
            for a in 0..SHADE_RES {
                for b in 0..SHADE_RES {
                    let (u, v) = ((a as f64 + 0.5) * step, (b as f64 + 0.5) * step);
                    if grid.f.eval(u, v) <= 0.0 {
                        writeln!(
                            s,
                            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
                            fmt(i as f64 + a as f64 * step),
                            fmt(j as f64 + b as f64 * step),
                            fmt(step),
                            fmt(step)
                        )
                        .unwrap();
                    }
                }
            }
        }
    }
    writeln!(s, "</g>").unwrap();

    // Cut lines of the subcell decomposition (dashed), then the cell grid.
    writeln!(
        s,
        "<g stroke=\"#999999\" stroke-width=\"0.004\" stroke-dasharray=\"0.02,0.02\">"
    )
    .unwrap();
    for (i, p1) in c1.pieces.iter().enumerate() {
        for (j, p2) in c2.pieces.iter().enumerate() {
            if bbox_min_dist(p1, p2) > delta {
                continue;
            }
            let grid = mark_cell(p1, p2, delta)?;
            for &x in &grid.xs[1..grid.xs.len() - 1] {
                writeln!(
                    s,
                    "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
                    j,
                    j + 1,
                    x = fmt(i as f64 + x)
                )
                .unwrap();
            }
            for &y in &grid.ys[1..grid.ys.len() - 1] {
                writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>",
                    i,
                    i + 1,
                    y = fmt(j as f64 + y)
                )
                .unwrap();
            }
        }
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "<g stroke=\"#333333\" stroke-width=\"0.008\">").unwrap();
    for i in 0..=m {
        writeln!(s, "<line x1=\"{i}\" y1=\"0\" x2=\"{i}\" y2=\"{}\"/>", h).unwrap();
    }
    for j in 0..=n {
        writeln!(s, "<line x1=\"0\" y1=\"{j}\" x2=\"{}\" y2=\"{j}\"/>", w).unwrap();
    }
    writeln!(s, "</g>").unwrap();

    // Boundary-graph arcs as chords between their endpoint nodes.
    writeln!(
        s,
        "<g stroke=\"#7030a0\" stroke-width=\"0.006\" fill=\"none\">"
    )
    .unwrap();
    for arc in &g.arcs {
        let a = &g.nodes[arc.a];
        let b = &g.nodes[arc.b];
        writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            fmt(a.cell.0 as f64 + a.u),
            fmt(a.cell.1 as f64 + a.v),
            fmt(b.cell.0 as f64 + b.u),
            fmt(b.cell.1 as f64 + b.v)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    // Marked points, colored by kind: wall crossings blue, interior cut
    // points (extrema) red.
    writeln!(s, "<g stroke=\"none\">").unwrap();
    for node in &g.nodes {
        let on_wall = node.u <= 1e-12
            || node.u >= 1.0 - 1e-12
            || node.v <= 1e-12
            || node.v >= 1.0 - 1e-12;
        let color = if on_wall { "#1f77b4" } else { "#d62728" };
        writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"0.018\" fill=\"{}\"/>",
            fmt(node.cell.0 as f64 + node.u),
            fmt(node.cell.1 as f64 + node.v),
            color
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}
