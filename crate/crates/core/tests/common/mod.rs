#![allow(dead_code)]

use compat_tri::geometry::{q, qi, Point};
use compat_tri::regions::{LabelledPolygon, PolygonalRegion, Vertex};
use rand::Rng;

pub fn pt(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

pub fn poly(items: &[(&str, i64, i64)]) -> LabelledPolygon {
    LabelledPolygon::new(items.iter().map(|(l, x, y)| Vertex::new(*l, pt(*x, *y))).collect())
}

pub fn region(outer: &[(&str, i64, i64)]) -> PolygonalRegion {
    PolygonalRegion::new(poly(outer), vec![])
}

/// Random star-shaped polygon around the origin, listed clockwise, labels `v0..`.
pub fn star_polygon<R: Rng>(rng: &mut R, n: usize) -> LabelledPolygon {
    let mut angles: Vec<u32> = Vec::new();
    while angles.len() < n {
        let a = rng.gen_range(0..360u32);
        if !angles.contains(&a) {
            angles.push(a);
        }
    }
    angles.sort_unstable();
    angles.reverse();
    let verts = angles
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let r = rng.gen_range(2..20) as f64;
            let t = (a as f64).to_radians();
            let x = (r * t.cos() * 8.0).round() as i64;
            let y = (r * t.sin() * 8.0).round() as i64;
            Vertex::new(format!("v{i}"), Point::new(q(x, 8), q(y, 8)))
        })
        .collect();
    LabelledPolygon::new(verts)
}

pub fn l_hexagon() -> PolygonalRegion {
    // L shape, clockwise
    region(&[("a", 0, 0), ("b", 0, 4), ("c", 2, 4), ("d", 2, 2), ("e", 4, 2), ("f", 4, 0)])
}

pub fn unit(x: i64) -> compat_tri::Rational {
    qi(x)
}
