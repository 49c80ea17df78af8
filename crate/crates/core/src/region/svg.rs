use std::fmt::Write;

use super::RegionPolygon;
use crate::poly::rat::to_f64;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 48.0;

fn x(u: f64) -> f64 {
    MARGIN + u * (SIZE - 2.0 * MARGIN)
}

fn y(v: f64) -> f64 {
    SIZE - MARGIN - v * (SIZE - 2.0 * MARGIN)
}

/// Riesz diagram of the region: unit square, shaded polygon, strict edges dashed.
pub fn emit_region_svg(rp: &RegionPolygon) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="512" height="512" viewBox="0 0 512 512">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="512" height="512" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#888" stroke-width="1"/>"##,
        x(0.0),
        y(1.0),
        x(1.0) - x(0.0),
        y(0.0) - y(1.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">u = 1/p</text>"#,
        x(0.5),
        SIZE - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 14 {:.3})">v = 1/q</text>"#,
        y(0.5),
        y(0.5)
    );
    for (t, lbl) in [(0.0, "0"), (1.0, "1")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{lbl}</text>"#,
            x(t),
            y(0.0) + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{lbl}</text>"#,
            x(0.0) - 6.0,
            y(t) + 4.0
        );
    }
    let points: Vec<String> = rp
        .vertices
        .iter()
        .map(|v| format!("{:.3},{:.3}", x(to_f64(&v.u)), y(to_f64(&v.v))))
        .collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#4a90d9" fill-opacity="0.35" stroke="none"/>"##,
        points.join(" ")
    );
    for (a, b, strict) in rp.edges() {
        let dash = if strict {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#1f3f7a" stroke-width="2"{dash}/>"##,
            x(to_f64(&a.u)),
            y(to_f64(&a.v)),
            x(to_f64(&b.u)),
            y(to_f64(&b.v))
        );
    }
    for v in &rp.vertices {
        let fill = if v.included { "#1f3f7a" } else { "white" };
        let _ = writeln!(
            s,
            r##"<circle cx="{:.3}" cy="{:.3}" r="3.5" fill="{fill}" stroke="#1f3f7a" stroke-width="1.5"/>"##,
            x(to_f64(&v.u)),
            y(to_f64(&v.v))
        );
    }
    s.push_str("</svg>\n");
    s
}
