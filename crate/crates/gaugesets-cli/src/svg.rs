//! SVG rendering of planar regions.

use std::fmt::Write;

use gaugesets::geometry::{intersect_halfplanes, HalfSpace, Region};

pub const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Square plotting window around every vertex, padded so that rays show.
fn window(atoms: &[(String, Region)]) -> ([f64; 2], f64) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for (_, r) in atoms {
        if let (Some(c), false) = (&r.chain, r.empty) {
            for v in &c.vertices {
                for k in 0..2 {
                    lo[k] = lo[k].min(v[k]);
                    hi[k] = hi[k].max(v[k]);
                }
            }
        }
    }
    if !lo[0].is_finite() {
        return ([0.0, 0.0], 1.0);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    (center, 0.5 * span + 0.25 * span.max(1.0))
}

/// Draws each atom's region clipped to a common window: fill at 30%
/// opacity, solid edges, and dashed edges where the clip cut an unbounded
/// region. `grid` overlays the direction normals around the window centre.
pub fn render_svg(atoms: &[(String, Region)], grid: Option<&[Vec<f64>]>) -> String {
    let (c, half) = window(atoms);
    let scale = (SIZE - 2.0 * MARGIN) / (2.0 * half);
    let px = |p: [f64; 2]| [MARGIN + (p[0] - c[0] + half) * scale, SIZE - MARGIN - (p[1] - c[1] + half) * scale];
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">"
    );
    let _ = writeln!(out, "<rect width=\"800\" height=\"800\" fill=\"white\"/>");
    if let Some(g) = grid {
        let o = px(c);
        let _ = writeln!(out, "<g stroke=\"#bbbbbb\" stroke-width=\"0.5\">");
        for w in g {
            let _ = writeln!(
                out,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                o[0],
                o[1],
                o[0] + 40.0 * w[0],
                o[1] - 40.0 * w[1]
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let (x0, x1, y0, y1) = (c[0] - half, c[0] + half, c[1] - half, c[1] + half);
    let frame = [
        HalfSpace::new(vec![1.0, 0.0], x1),
        HalfSpace::new(vec![-1.0, 0.0], -x0),
        HalfSpace::new(vec![0.0, 1.0], y1),
        HalfSpace::new(vec![0.0, -1.0], -y0),
    ];
    let on_frame = |a: [f64; 2], b: [f64; 2]| {
        let eps = 1e-9 * half;
        [(0, x0), (0, x1), (1, y0), (1, y1)].iter().any(|&(k, v)| (a[k] - v).abs() <= eps && (b[k] - v).abs() <= eps)
    };
    for (i, (label, region)) in atoms.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, "<g id=\"atom-{}\">", escape(label));
        if !region.empty {
            let mut cons = region.facets();
            cons.extend(frame.iter().cloned());
            if let Some(chain) = intersect_halfplanes(&cons).chain {
                let pts: Vec<[f64; 2]> = chain.vertices.iter().map(|&v| px(v)).collect();
                let list: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", p[0], p[1])).collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.3\" stroke=\"none\"/>",
                    list.join(" ")
                );
                let n = chain.vertices.len();
                for k in 0..n {
                    let (a, b) = (chain.vertices[k], chain.vertices[(k + 1) % n]);
                    if n == 1 || (n == 2 && k == 1) {
                        break;
                    }
                    let dash = if on_frame(a, b) { " stroke-dasharray=\"6 4\"" } else { "" };
                    let (pa, pb) = (px(a), px(b));
                    let _ = writeln!(
                        out,
                        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>",
                        pa[0], pa[1], pb[0], pb[1]
                    );
                }
                if n == 1 {
                    let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>", pts[0][0], pts[0][1]);
                }
            }
        }
        let _ = writeln!(out, "</g>");
        let note = if region.empty { " (empty)" } else { "" };
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" fill=\"{color}\">{}{note}</text>",
            MARGIN + 4.0,
            MARGIN + 16.0 * (i + 1) as f64,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use gaugesets::geometry::ConvexBody;

    #[test]
    fn quadrant_gets_dashed_edges() {
        let q = ConvexBody::cone(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let sq = ConvexBody::cuboid(vec![-1.0, -1.0], vec![0.0, 0.0]).unwrap();
        let atoms = vec![
            ("q".to_string(), Region::from_body(&q).unwrap()),
            ("s<q".to_string(), Region::from_body(&sq).unwrap()),
        ];
        let svg = render_svg(&atoms, None);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("fill-opacity=\"0.3\""));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("s&lt;q"));
        assert_eq!(svg, render_svg(&atoms, None));
        let grid = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(render_svg(&atoms, Some(&grid)).contains("#bbbbbb"));
    }
}
