//! Deterministic two-panel SVG: the subdivided polygon Conv(A) and the tropical curve.

use std::fmt::Write;

use hms_core::tropical::TropicalModel;

const PANEL: f64 = 400.0;
const GAP: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Affine map from a padded bounding box onto a square panel, y pointing up.
struct Viewport {
    min: [f64; 2],
    max: [f64; 2],
    offset_x: f64,
}

impl Viewport {
    fn fit(points: &[[f64; 2]], offset_x: f64) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        // Square box around the data, at least one unit wide, padded by 10%.
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1.0);
        let centre = [(min[0] + max[0]) / 2.0, (min[1] + max[1]) / 2.0];
        let half = span * 1.1 / 2.0;
        Viewport {
            min: [centre[0] - half, centre[1] - half],
            max: [centre[0] + half, centre[1] + half],
            offset_x,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let s = PANEL / (self.max[0] - self.min[0]);
        (self.offset_x + (p[0] - self.min[0]) * s, MARGIN + PANEL - (p[1] - self.min[1]) * s)
    }

    /// Point where the ray from `p` in direction `d` leaves the box.
    fn clip_ray(&self, p: [f64; 2], d: [f64; 2]) -> [f64; 2] {
        let mut t = f64::INFINITY;
        for i in 0..2 {
            if d[i] > 0.0 {
                t = t.min((self.max[i] - p[i]) / d[i]);
            } else if d[i] < 0.0 {
                t = t.min((self.min[i] - p[i]) / d[i]);
            }
        }
        [p[0] + t * d[0], p[1] + t * d[1]]
    }
}

fn fp(p: [i64; 2]) -> [f64; 2] {
    [p[0] as f64, p[1] as f64]
}

fn minus_sign(n: i64) -> String {
    if n < 0 {
        format!("\u{2212}{}", -n)
    } else {
        n.to_string()
    }
}

pub fn render_svg(model: &TropicalModel) -> String {
    let width = 2.0 * PANEL + GAP + 2.0 * MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);

    let pts: Vec<[f64; 2]> = model.points.points().iter().map(|&p| fp(p)).collect();
    let left = Viewport::fit(&pts, MARGIN);
    let _ = writeln!(s, r#"<g id="subdivision">"#);
    for cell in &model.subdivision.cells {
        let coords: Vec<String> = cell
            .iter()
            .map(|&i| {
                let (x, y) = left.map(pts[i]);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(s, r##"<polygon points="{}" fill="#e8eef7" stroke="black" stroke-width="1.5"/>"##, coords.join(" "));
    }
    for (i, p) in pts.iter().enumerate() {
        let (x, y) = left.map(*p);
        let a = model.points.point(i);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="11" font-family="monospace">({},{}) rho={}</text>"#,
            x + 6.0,
            y - 6.0,
            minus_sign(a[0]),
            minus_sign(a[1]),
            minus_sign(model.points.weight(i))
        );
    }
    let _ = writeln!(s, "</g>");

    let verts: Vec<[f64; 2]> = model.curve.vertices.iter().map(|v| fp(v.position)).collect();
    let right = Viewport::fit(&verts, MARGIN + PANEL + GAP);
    let _ = writeln!(s, r#"<g id="tropical-curve">"#);
    for r in &model.curve.rays {
        let p = verts[r.vertex];
        let end = right.clip_ray(p, fp(r.direction));
        let ((x1, y1), (x2, y2)) = (right.map(p), right.map(end));
        let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="gray" stroke-width="1.5"/>"#);
    }
    for e in &model.curve.bounded_edges {
        let ((x1, y1), (x2, y2)) = (right.map(verts[e.ends[0]]), right.map(verts[e.ends[1]]));
        let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="2"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" font-family="monospace">n={}, d={}</text>"#,
            (x1 + x2) / 2.0 + 6.0,
            (y1 + y2) / 2.0 - 6.0,
            e.lattice_length,
            minus_sign(e.degrees[0])
        );
    }
    for v in &verts {
        let (x, y) = right.map(*v);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

pub fn emit_svg(model: &TropicalModel, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, render_svg(model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hms_core::tropical::fixtures;

    #[test]
    fn square_has_two_cells_and_one_labeled_edge() {
        let m = TropicalModel::from_monomials(&fixtures::square()).unwrap();
        let svg = render_svg(&m);
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("n=1, d=\u{2212}1").count(), 1);
        assert_eq!(svg, render_svg(&m));
    }

    #[test]
    fn rays_stop_at_the_box() {
        let v = Viewport::fit(&[[0.0, 0.0], [1.0, 1.0]], 0.0);
        let end = v.clip_ray([0.0, 0.0], [-1.0, -1.0]);
        assert!((end[0] - v.min[0]).abs() < 1e-12 && (end[1] - v.min[1]).abs() < 1e-12);
    }
}
