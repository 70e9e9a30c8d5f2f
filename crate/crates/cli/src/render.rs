//! Layered SVG drawing of a region pair. Coordinates are scaled by [`SCALE`] and printed
//! with three decimals, so equal inputs give byte-identical files.

use std::collections::BTreeSet;
use std::fmt::Write;

use compat_tri::geometry::{to_f64, Point};
use compat_tri::regions::{find_dents, visibility_region, DentKind, PolygonalRegion};
use compat_tri::triangulation::{vertex_table, CompatiblePair, Triangulation};

use crate::RegionPair;

/// Pixels per unit of the input coordinates.
pub const SCALE: f64 = 20.0;
const MARGIN: f64 = 20.0;

struct Panel {
    dx: f64,
    dy: f64,
    top: f64,
    left: f64,
}

impl Panel {
    fn xy(&self, p: &Point) -> (f64, f64) {
        let (x, y) = (to_f64(&p.x), to_f64(&p.y));
        (self.dx + (x - self.left) * SCALE, self.dy + (self.top - y) * SCALE)
    }

    fn path(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(p);
            let _ = write!(s, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        s.push('Z');
        s
    }
}

fn extent(r: &PolygonalRegion) -> (f64, f64, f64, f64) {
    let pts = r.outer.points();
    let xs = pts.iter().map(|p| to_f64(&p.x));
    let ys = pts.iter().map(|p| to_f64(&p.y));
    (
        xs.clone().fold(f64::INFINITY, f64::min),
        xs.fold(f64::NEG_INFINITY, f64::max),
        ys.clone().fold(f64::INFINITY, f64::min),
        ys.fold(f64::NEG_INFINITY, f64::max),
    )
}

pub fn render(pair: &RegionPair, tri: Option<&CompatiblePair>, visibility: bool) -> String {
    let e1 = extent(&pair.p1);
    let e2 = extent(&pair.p2);
    let w = (e1.1 - e1.0).max(e2.1 - e2.0) * SCALE + 2.0 * MARGIN;
    let h1 = (e1.3 - e1.2) * SCALE;
    let h2 = (e2.3 - e2.2) * SCALE;
    let height = h1 + h2 + 3.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{height:.3}" viewBox="0 0 {w:.3} {height:.3}">"#
    );
    let peaks: Vec<String> =
        find_dents(&pair.p1).into_iter().filter(|d| d.kind == DentKind::Outward).map(|d| d.d).collect();
    let mu: Vec<String> =
        pair.layout.as_ref().map(|l| l.clauses.iter().flat_map(|c| c.mu.iter().cloned()).collect()).unwrap_or_default();
    let panels = [
        ("first", &pair.p1, Panel { dx: MARGIN, dy: MARGIN, top: e1.3, left: e1.0 }, tri.map(|t| &t.t1)),
        ("second", &pair.p2, Panel { dx: MARGIN, dy: 2.0 * MARGIN + h1, top: e2.3, left: e2.0 }, tri.map(|t| &t.t2)),
    ];
    for (name, region, panel, t) in &panels {
        let _ = writeln!(out, r#"<g id="{name}">"#);
        layer_regions(&mut out, name, region, panel);
        layer_holes(&mut out, name, region, panel);
        layer_dents(&mut out, name, region, panel);
        layer_mu(&mut out, name, region, panel, &mu);
        if visibility {
            layer_visibility(&mut out, name, region, panel, &peaks);
        }
        if let Some(t) = t {
            layer_triangulation(&mut out, name, region, panel, t);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}

fn layer_regions(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel) {
    let _ = writeln!(out, r##"<g id="{name}-regions" fill="#e8eef7" stroke="#1f3b63" stroke-width="0.5">"##);
    let _ = writeln!(out, r#"<path d="{}"/>"#, p.path(&r.outer.points()));
    let _ = writeln!(out, "</g>");
}

fn layer_holes(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel) {
    let _ = writeln!(out, r##"<g id="{name}-holes" fill="#ffffff" stroke="#1f3b63" stroke-width="0.5">"##);
    for h in &r.holes {
        let pts = h.points();
        if pts.len() == 1 {
            let (x, y) = p.xy(&pts[0]);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
        } else {
            let _ = writeln!(out, r#"<path d="{}"/>"#, p.path(&pts));
        }
    }
    let _ = writeln!(out, "</g>");
}

fn layer_dents(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel) {
    let _ = writeln!(out, r#"<g id="{name}-dents">"#);
    let pos = r.label_map();
    for d in find_dents(r) {
        let (x, y) = p.xy(&pos[&d.d]);
        let colour = if d.kind == DentKind::Outward { "#c0392b" } else { "#8e44ad" };
        let _ =
            writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{colour}"><title>{}</title></circle>"#, d.d);
    }
    let _ = writeln!(out, "</g>");
}

fn layer_mu(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel, mu: &[String]) {
    let _ = writeln!(out, r##"<g id="{name}-mu-points" fill="#27ae60">"##);
    let pos = r.label_map();
    for m in mu {
        if let Some(pt) = pos.get(m) {
            let (x, y) = p.xy(pt);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5"><title>{m}</title></circle>"#);
        }
    }
    let _ = writeln!(out, "</g>");
}

fn layer_visibility(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel, peaks: &[String]) {
    let _ = writeln!(out, r##"<g id="{name}-visibility" fill="#f1c40f" fill-opacity="0.15" stroke="none">"##);
    let pos = r.label_map();
    for label in peaks {
        let Some(pt) = pos.get(label) else { continue };
        if let Ok(vr) = visibility_region(r, pt) {
            let _ = writeln!(out, r#"<path d="{}"><title>{label}</title></path>"#, p.path(&vr.boundary));
        }
    }
    let _ = writeln!(out, "</g>");
}

fn layer_triangulation(out: &mut String, name: &str, r: &PolygonalRegion, p: &Panel, t: &Triangulation) {
    let _ = writeln!(out, r##"<g id="{name}-triangulation" stroke="#555555" stroke-width="0.3" fill="none">"##);
    let pos = vertex_table(r, t);
    let mut edges = BTreeSet::new();
    for f in &t.faces {
        for i in 0..3 {
            let (a, b) = (&f[i], &f[(i + 1) % 3]);
            edges.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    for (a, b) in edges {
        let (Some(pa), Some(pb)) = (pos.get(a), pos.get(b)) else {
            continue;
        };
        let ((x1, y1), (x2, y2)) = (p.xy(pa), p.xy(pb));
        let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    for s in &t.steiner {
        let (x, y) = p.xy(&s.point());
        let _ = writeln!(
            out,
            r##"<rect x="{:.3}" y="{:.3}" width="4" height="4" fill="#2980b9"><title>{}</title></rect>"##,
            x - 2.0,
            y - 2.0,
            s.label
        );
    }
    let _ = writeln!(out, "</g>");
}
