//! Minimal standalone SVG renderings.

use std::fmt::Write;

use super::rectangle::HeatmapData;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

struct Frame {
    u0: f64,
    u1: f64,
    v0: f64,
    v1: f64,
}

impl Frame {
    fn scale(&self) -> f64 {
        (SIZE - 2.0 * MARGIN) / (self.u1 - self.u0).max(self.v1 - self.v0)
    }

    fn px(&self, u: f64, v: f64) -> (f64, f64) {
        let s = self.scale();
        (MARGIN + (u - self.u0) * s, SIZE - MARGIN - (v - self.v0) * s)
    }

    fn polyline(&self, pts: &[(f64, f64)], style: &str) -> String {
        let mut d = String::new();
        for (k, &(u, v)) in pts.iter().enumerate() {
            let (x, y) = self.px(u, v);
            let _ = write!(d, "{}{x:.3},{y:.3}", if k == 0 { "" } else { " " });
        }
        format!("<polyline points=\"{d}\" fill=\"none\" {style}/>\n")
    }
}

fn document(body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// Edge frequencies as gray intensity, with the square outline, the limit
/// profile (dashed) and the mean profile; `stretch` multiplies v.
pub fn heatmap_svg(h: &HeatmapData, stretch: f64) -> String {
    let r = std::f64::consts::SQRT_2;
    let frame = Frame { u0: -1.2 * r, u1: 1.2 * r, v0: 0.0, v1: 2.0 * r * stretch };
    let mut body = String::new();
    let square = [(0.0, 0.0), (r, r), (0.0, 2.0 * r), (-r, r), (0.0, 0.0)];
    let sq: Vec<(f64, f64)> = square.iter().map(|&(u, v)| (u, v * stretch)).collect();
    body += &frame.polyline(&sq, "stroke=\"green\" stroke-width=\"1\"");
    for s in h.segments(stretch) {
        if s.freq == 0.0 {
            continue;
        }
        let (x1, y1) = frame.px(s.u1, s.v1);
        let (x2, y2) = frame.px(s.u2, s.v2);
        let _ = writeln!(
            body,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\" stroke-opacity=\"{:.4}\" stroke-width=\"2\"/>",
            s.freq
        );
    }
    let limit: Vec<(f64, f64)> = h.limit_profile().iter().map(|&(u, v)| (u, v * stretch)).collect();
    body += &frame.polyline(&limit, "stroke=\"blue\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
    let mean: Vec<(f64, f64)> = h.mean_profile.iter().map(|&(u, v)| (u, v * stretch)).collect();
    body += &frame.polyline(&mean, "stroke=\"red\" stroke-width=\"1.5\"");
    document(&body)
}

/// Mean profiles on a shared u-grid, one polyline per curve, plus |u|.
pub fn profiles_svg(u_grid: &[f64], curves: &[Vec<f64>]) -> String {
    let (u0, u1) = (u_grid[0], u_grid[u_grid.len() - 1]);
    let v1 = curves.iter().flatten().copied().fold(u1.abs().max(u0.abs()), f64::max);
    let frame = Frame { u0, u1, v0: 0.0, v1 };
    let mut body = frame.polyline(&[(u0, u0.abs()), (0.0, 0.0), (u1, u1.abs())], "stroke=\"gray\" stroke-width=\"1\"");
    let colors = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];
    for (c, ys) in curves.iter().enumerate() {
        let pts: Vec<(f64, f64)> = u_grid.iter().copied().zip(ys.iter().copied()).collect();
        body += &frame.polyline(&pts, &format!("stroke=\"{}\" stroke-width=\"1.5\"", colors[c % colors.len()]));
    }
    document(&body)
}
