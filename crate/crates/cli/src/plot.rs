//! SVG rendering: ray wheels for rank-two fans and projective line pictures
//! for rank-three arrangements.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use cryfan::linalg::IntVec;

const SIZE: f64 = 400.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 170.0;

fn header(title: &str) -> String {
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(s, "<title>{title}</title>").unwrap();
    writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    s
}

fn float(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn label(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn ray_wheel(rays: &[IntVec]) -> String {
    let mut s = header("rank-2 fan");
    for r in rays {
        let (x, y) = (float(&r[0]), float(&r[1]));
        let n = x.hypot(y);
        let (px, py) = (CENTER + RADIUS * x / n, CENTER - RADIUS * y / n);
        writeln!(s, r#"<line class="ray" x1="{CENTER}" y1="{CENTER}" x2="{px:.3}" y2="{py:.3}" stroke="black"/>"#)
            .unwrap();
        let (lx, ly) = (CENTER + (RADIUS + 14.0) * x / n, CENTER - (RADIUS + 14.0) * y / n);
        writeln!(
            s,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-size="11" text-anchor="middle">{}</text>"#,
            label(r)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Each plane through the origin is drawn as the orthographic image of its
/// great half-circle on the upper unit hemisphere.
pub fn projective_lines(normals: &[IntVec]) -> String {
    let mut s = header("rank-3 arrangement");
    writeln!(s, r#"<circle cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="gray"/>"#).unwrap();
    for c in normals {
        let n = normalize([float(&c[0]), float(&c[1]), float(&c[2])]);
        let points = if n[0] == 0.0 && n[1] == 0.0 {
            (0..=128).map(|k| std::f64::consts::TAU * k as f64 / 128.0).map(|t| (t.cos(), t.sin())).collect::<Vec<_>>()
        } else {
            let u = normalize(cross(n, [0.0, 0.0, 1.0]));
            let mut v = cross(n, u);
            if v[2] < 0.0 {
                v = [-v[0], -v[1], -v[2]];
            }
            (0..=64)
                .map(|k| std::f64::consts::PI * k as f64 / 64.0)
                .map(|t| (t.cos() * u[0] + t.sin() * v[0], t.cos() * u[1] + t.sin() * v[1]))
                .collect()
        };
        let coords: Vec<String> =
            points.iter().map(|(x, y)| format!("{:.3},{:.3}", CENTER + RADIUS * x, CENTER - RADIUS * y)).collect();
        writeln!(
            s,
            r#"<polyline class="line" data-normal="{}" points="{}" fill="none" stroke="black"/>"#,
            label(c),
            coords.join(" ")
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
