//! Shared inputs for the criterion benchmarks in `benches/`.

use compat_tri::geometry::{q, Point};
use compat_tri::regions::{LabelledPolygon, Vertex};

/// Convex-ish `n`-gon listed clockwise, with a deterministic wobble so no three points are collinear.
pub fn wobbly_polygon(n: usize, phase: u32) -> LabelledPolygon {
    let verts = (0..n)
        .map(|i| {
            let t = -(i as f64) * std::f64::consts::TAU / n as f64;
            let r = 40.0 + ((i as u32 * 7 + phase) % 5) as f64;
            let x = (r * t.cos()).round() as i64;
            let y = (r * t.sin()).round() as i64;
            Vertex::new(format!("v{i}"), Point::new(q(x, 1), q(y, 1)))
        })
        .collect();
    LabelledPolygon::new(verts)
}
