//! Labelled polygonal regions with holes: validation, compatibility, dents and visibility.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{
    cross, dot, on_segment, orient_sign, rat_serde, segments_intersect, signed_area2, strictly_inside_segment,
    Intersection, Point, Rational, Segment,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub label: String,
    #[serde(with = "rat_serde")]
    pub x: Rational,
    #[serde(with = "rat_serde")]
    pub y: Rational,
}

impl Vertex {
    pub fn new(label: impl Into<String>, p: Point) -> Self {
        Vertex { label: label.into(), x: p.x, y: p.y }
    }

    pub fn point(&self) -> Point {
        Point::new(self.x.clone(), self.y.clone())
    }
}

/// A boundary cycle. Outer boundaries are listed clockwise, holes counterclockwise,
/// so the region interior is always on the right of each directed edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct LabelledPolygon {
    pub vertices: Vec<Vertex>,
}

impl LabelledPolygon {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        LabelledPolygon { vertices }
    }

    pub fn from_points(items: Vec<(String, Point)>) -> Self {
        LabelledPolygon { vertices: items.into_iter().map(|(l, p)| Vertex::new(l, p)).collect() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(Vertex::point).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.vertices.iter().map(|v| v.label.as_str()).collect()
    }

    /// Twice the signed area (negative for clockwise listings).
    pub fn signed_area2(&self) -> Rational {
        signed_area2(&self.points())
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        LabelledPolygon { vertices: v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct PolygonalRegion {
    pub outer: LabelledPolygon,
    #[serde(default)]
    pub holes: Vec<LabelledPolygon>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DentKind {
    Outward,
    Inward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dent {
    pub u: String,
    pub d: String,
    pub v: String,
    pub kind: DentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisibilityRegion {
    pub source: String,
    /// Clockwise boundary; may contain collinear vertices.
    pub boundary: Vec<Point>,
    /// Visible point-holes; they remove single rays only.
    pub punctures: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("point {0:?} lies outside the region")]
    OutsideRegion(Box<Point>),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// Turn classification of a boundary vertex with respect to the region interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Convex,
    Reflex,
    Flat,
}

impl PolygonalRegion {
    pub fn new(outer: LabelledPolygon, holes: Vec<LabelledPolygon>) -> Self {
        PolygonalRegion { outer, holes }
    }

    pub fn cycles(&self) -> impl Iterator<Item = &LabelledPolygon> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles().map(|c| c.len()).sum()
    }

    /// Every boundary edge as a pair of points (point-holes contribute none).
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for c in self.cycles() {
            let n = c.len();
            if n < 2 {
                continue;
            }
            for i in 0..n {
                out.push((c.vertices[i].point(), c.vertices[(i + 1) % n].point()));
            }
        }
        out
    }

    pub fn all_vertices(&self) -> Vec<&Vertex> {
        self.cycles().flat_map(|c| c.vertices.iter()).collect()
    }

    pub fn label_map(&self) -> HashMap<String, Point> {
        self.all_vertices().into_iter().map(|v| (v.label.clone(), v.point())).collect()
    }

    pub fn point_of(&self, label: &str) -> Option<Point> {
        self.all_vertices().into_iter().find(|v| v.label == label).map(Vertex::point)
    }

    /// Interior area (outer minus holes), exact.
    pub fn area(&self) -> Rational {
        let half = crate::geometry::q(1, 2);
        let mut a = self.outer.signed_area2().abs();
        for h in &self.holes {
            if h.len() >= 3 {
                a -= h.signed_area2().abs();
            }
        }
        a * half
    }

    pub fn locate(&self, p: &Point) -> Location {
        for c in self.cycles() {
            let pts = c.points();
            if pts.len() == 1 {
                if &pts[0] == p {
                    return Location::OnBoundary;
                }
                continue;
            }
            let n = pts.len();
            for i in 0..n {
                if on_segment(p, &pts[i], &pts[(i + 1) % n]) {
                    return Location::OnBoundary;
                }
            }
        }
        if !point_in_polygon(p, &self.outer.points()) {
            return Location::Outside;
        }
        for h in &self.holes {
            if h.len() >= 3 && point_in_polygon(p, &h.points()) {
                return Location::Outside;
            }
        }
        Location::Inside
    }

    /// Turn of vertex `i` on cycle `c` (0 = outer, k = hole k-1).
    pub fn turn_at(&self, cycle: usize, i: usize) -> Turn {
        let c = if cycle == 0 { &self.outer } else { &self.holes[cycle - 1] };
        let n = c.len();
        let u = c.vertices[(i + n - 1) % n].point();
        let d = c.vertices[i].point();
        let v = c.vertices[(i + 1) % n].point();
        turn_of(&u, &d, &v)
    }
}

/// Interior lies to the right of `u -> d -> v`: a right turn is convex.
pub fn turn_of(u: &Point, d: &Point, v: &Point) -> Turn {
    match orient_sign(u, d, v) {
        -1 => Turn::Convex,
        1 => Turn::Reflex,
        _ => {
            // a reversal (spike of zero width) counts as convex
            if dot(&d.sub(u), &v.sub(d)) < Rational::zero() {
                Turn::Convex
            } else {
                Turn::Flat
            }
        }
    }
}

/// Strict point-in-polygon by crossing parity; callers exclude boundary points first.
pub fn point_in_polygon(p: &Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let up = a.y <= p.y && p.y < b.y;
        let down = b.y <= p.y && p.y < a.y;
        if up && orient_sign(a, b, p) > 0 || down && orient_sign(a, b, p) < 0 {
            inside = !inside;
        }
    }
    inside
}

pub fn validate_region(r: &PolygonalRegion) -> Result<(), Vec<String>> {
    let mut v = Vec::new();
    let mut seen = HashSet::new();
    for c in r.cycles() {
        for x in &c.vertices {
            if !seen.insert(x.label.as_str()) {
                v.push(format!("duplicate label {:?}", x.label));
            }
        }
    }
    if r.outer.len() < 3 {
        v.push("outer boundary has fewer than 3 vertices".into());
        return Err(v);
    }
    for (k, h) in r.holes.iter().enumerate() {
        if h.len() == 2 || h.is_empty() {
            v.push(format!("hole {k} has {} vertices", h.len()));
        }
    }
    if !v.is_empty() {
        return Err(v);
    }
    // every pair of edges may only meet as consecutive edges of one cycle
    let cycles: Vec<Vec<Point>> = r.cycles().map(|c| c.points()).collect();
    let mut simple_ok = vec![true; cycles.len()];
    let mut cross_ok = true;
    let mut detail = Vec::new();
    let names: Vec<Vec<&str>> = r.cycles().map(|c| c.labels()).collect();
    let boxes: Vec<Vec<[f64; 4]>> =
        cycles.iter().map(|c| (0..c.len()).map(|i| edge_box(&c[i], &c[(i + 1) % c.len()])).collect()).collect();
    for (ci, a) in cycles.iter().enumerate() {
        let na = a.len();
        if na < 2 {
            continue;
        }
        for i in 0..na {
            if a[i] == a[(i + 1) % na] {
                simple_ok[ci] = false;
            }
        }
        for (cj, b) in cycles.iter().enumerate().skip(ci) {
            let nb = b.len();
            for i in 0..na {
                let s1 = Segment::new(a[i].clone(), a[(i + 1) % na].clone());
                if nb == 1 {
                    if on_segment(&b[0], &s1.a, &s1.b) {
                        cross_ok = false;
                    }
                    continue;
                }
                let start = if ci == cj { i + 1 } else { 0 };
                for j in start..nb {
                    let (x, y) = (&boxes[ci][i], &boxes[cj][j]);
                    if x[1] < y[0] || y[1] < x[0] || x[3] < y[2] || y[3] < x[2] {
                        continue;
                    }
                    let s2 = Segment::new(b[j].clone(), b[(j + 1) % nb].clone());
                    let hit = segments_intersect(&s1, &s2);
                    if hit == Intersection::Disjoint {
                        continue;
                    }
                    if ci == cj {
                        let adjacent_fwd = j == (i + 1) % na;
                        let adjacent_bwd = i == (j + 1) % na;
                        let shared = if adjacent_fwd {
                            Some(&a[j])
                        } else if adjacent_bwd {
                            Some(&a[i])
                        } else {
                            None
                        };
                        if let Some(sp) = shared {
                            if hit == Intersection::Touching(crate::geometry::Contact::Point(sp.clone())) {
                                continue;
                            }
                        }
                        simple_ok[ci] = false;
                    } else {
                        cross_ok = false;
                    }
                    if detail.len() < 4 {
                        let e = |c: usize, k: usize| format!("{}-{}", names[c][k], names[c][(k + 1) % names[c].len()]);
                        detail.push(format!("edges {} and {} meet", e(ci, i), e(cj, j)));
                    }
                }
            }
        }
    }
    // point-holes against each other
    let pts_holes: Vec<&Point> = cycles.iter().filter(|c| c.len() == 1).map(|c| &c[0]).collect();
    for i in 0..pts_holes.len() {
        for j in i + 1..pts_holes.len() {
            if pts_holes[i] == pts_holes[j] {
                cross_ok = false;
            }
        }
    }
    for (ci, ok) in simple_ok.iter().enumerate() {
        if !ok {
            if ci == 0 {
                v.push("boundary not simple".into());
            } else {
                v.push(format!("hole {} boundary not simple", ci - 1));
            }
        }
    }
    if !cross_ok {
        v.push("boundaries intersect".into());
    }
    v.extend(detail);
    if simple_ok[0] && r.outer.signed_area2() >= Rational::zero() {
        v.push("outer boundary not clockwise".into());
    }
    for (k, h) in r.holes.iter().enumerate() {
        if h.len() >= 3 && simple_ok[k + 1] && h.signed_area2() <= Rational::zero() {
            v.push(format!("hole {k} not counterclockwise"));
        }
    }
    if simple_ok[0] {
        let outer = &cycles[0];
        for (k, h) in cycles.iter().enumerate().skip(1) {
            if !point_in_polygon(&h[0], outer) {
                v.push(format!("hole {} not inside outer", k - 1));
            }
        }
        for (k, h) in cycles.iter().enumerate().skip(1) {
            for (m, g) in cycles.iter().enumerate().skip(1) {
                if k != m && g.len() >= 3 && point_in_polygon(&h[0], g) {
                    v.push(format!("hole {} inside hole {}", k - 1, m - 1));
                }
            }
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

fn same_cycle(a: &[&str], b: &[&str]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|x| *x == a[0]) {
        None => false,
        Some(off) => (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()]),
    }
}

/// Same cyclic label order on the outer boundary and on label-matched holes.
pub fn compatible(r1: &PolygonalRegion, r2: &PolygonalRegion) -> bool {
    if !same_cycle(&r1.outer.labels(), &r2.outer.labels()) {
        return false;
    }
    if r1.holes.len() != r2.holes.len() {
        return false;
    }
    let mut used = vec![false; r2.holes.len()];
    for h in &r1.holes {
        let Some(first) = h.vertices.first() else {
            return false;
        };
        let found = r2.holes.iter().position(|g| g.vertices.iter().any(|v| v.label == first.label));
        match found {
            Some(j) if !used[j] && same_cycle(&h.labels(), &r2.holes[j].labels()) => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Is the open segment `ab` strictly interior? Endpoints may lie on the boundary.
pub fn visible(r: &PolygonalRegion, a: &Point, b: &Point) -> Result<bool, RegionError> {
    for p in [a, b] {
        if r.locate(p) == Location::Outside {
            return Err(RegionError::OutsideRegion(Box::new(p.clone())));
        }
    }
    Ok(visible_unchecked(r, a, b))
}

/// `visible` without the endpoint location check.
pub fn visible_unchecked(r: &PolygonalRegion, a: &Point, b: &Point) -> bool {
    if a == b {
        return false;
    }
    for c in r.cycles() {
        let pts = c.points();
        let n = pts.len();
        for i in 0..n {
            if strictly_inside_segment(&pts[i], a, b) {
                return false;
            }
            if n >= 2 {
                let d = &pts[(i + 1) % n];
                if segment_crosses(a, b, &pts[i], d) {
                    return false;
                }
            }
        }
    }
    let m = crate::geometry::midpoint(a, b);
    r.locate(&m) == Location::Inside
}

fn segment_crosses(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    if o1 * o2 >= 0 {
        return false;
    }
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    o3 * o4 < 0
}

pub fn find_dents(r: &PolygonalRegion) -> Vec<Dent> {
    let mut out = Vec::new();
    for (ci, c) in r.cycles().enumerate() {
        let n = c.len();
        if n < 3 {
            continue;
        }
        let turns: Vec<Turn> = (0..n).map(|i| r.turn_at(ci, i)).collect();
        for i in 0..n {
            let (pu, pv) = ((i + n - 1) % n, (i + 1) % n);
            let kind = match (turns[pu], turns[i], turns[pv]) {
                (Turn::Reflex, Turn::Convex, Turn::Reflex) => DentKind::Outward,
                (Turn::Convex, Turn::Reflex, Turn::Convex) => DentKind::Inward,
                _ => continue,
            };
            out.push(Dent {
                u: c.vertices[pu].label.clone(),
                d: c.vertices[i].label.clone(),
                v: c.vertices[pv].label.clone(),
                kind,
            });
        }
    }
    out
}

/// Orders directions counterclockwise starting at `base` (base itself first).
pub(crate) fn ccw_cmp_from(base: &Point, a: &Point, b: &Point) -> Ordering {
    let half = |d: &Point| {
        let c = cross(base, d);
        if c > Rational::zero() || (c.is_zero() && dot(base, d) > Rational::zero()) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = cross(a, b);
    if c > Rational::zero() {
        Ordering::Less
    } else if c < Rational::zero() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

fn same_direction(a: &Point, b: &Point) -> bool {
    cross(a, b).is_zero() && dot(a, b) > Rational::zero()
}

/// A direction strictly inside the counterclockwise wedge from `d0` to `d1`.
fn wedge_representative(d0: &Point, d1: &Point) -> Point {
    let c = cross(d0, d1);
    if c > Rational::zero() {
        d0.add(d1)
    } else if c < Rational::zero() {
        d0.add(d1).scale(&crate::geometry::qi(-1))
    } else if dot(d0, d1) < Rational::zero() {
        Point::new(-d0.y.clone(), d0.x.clone())
    } else {
        d0.scale(&crate::geometry::qi(-1))
    }
}

/// Boundary neighbourhood of a source point: the interior wedge `(from, to)` swept
/// counterclockwise, or `None` for an interior source.
fn interior_wedge(r: &PolygonalRegion, s: &Point) -> Option<(Point, Point)> {
    for c in r.cycles() {
        let pts = c.points();
        let n = pts.len();
        if n < 3 {
            continue;
        }
        for i in 0..n {
            if &pts[i] == s {
                let prev = &pts[(i + n - 1) % n];
                let next = &pts[(i + 1) % n];
                return Some((prev.sub(s), next.sub(s)));
            }
        }
        for i in 0..n {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            if strictly_inside_segment(s, a, b) {
                return Some((a.sub(s), b.sub(s)));
            }
        }
    }
    None
}

/// Parameter `t > 0` at which the ray `s + t*d` crosses the segment `cd`, if it does
/// so at an interior point of the segment.
fn ray_hit(s: &Point, d: &Point, c: &Point, e: &Point) -> Option<Rational> {
    let seg = e.sub(c);
    let den = cross(d, &seg);
    if den.is_zero() {
        return None;
    }
    let sc = c.sub(s);
    let t = cross(&sc, &seg) / &den;
    let u = cross(&sc, d) / &den;
    if t > Rational::zero() && u >= Rational::zero() && u <= num::One::one() {
        Some(t)
    } else {
        None
    }
}

type Edge64 = ((f64, f64), (f64, f64));

/// Edges that may hold the nearest exact hit of the ray `s + t*d`.
///
/// Floating point only prunes: an edge is dropped when it clearly misses or is clearly
/// farther than some clear hit. Near-parallel and near-endpoint cases are kept.
fn hit_candidates(s: (f64, f64), d: (f64, f64), edges: &[Edge64]) -> Vec<usize> {
    const TOL: f64 = 1e-9;
    let mut clear_best = f64::INFINITY;
    let mut cands: Vec<(usize, f64)> = Vec::new();
    let dn = d.0.abs() + d.1.abs();
    for (i, &(c, e)) in edges.iter().enumerate() {
        let seg = (e.0 - c.0, e.1 - c.1);
        let den = d.0 * seg.1 - d.1 * seg.0;
        let sn = seg.0.abs() + seg.1.abs();
        if den.abs() <= TOL * dn * sn {
            cands.push((i, 0.0));
            continue;
        }
        let sc = (c.0 - s.0, c.1 - s.1);
        let t = (sc.0 * seg.1 - sc.1 * seg.0) / den;
        let u = (sc.0 * d.1 - sc.1 * d.0) / den;
        if t < -TOL || !(-TOL..=1.0 + TOL).contains(&u) {
            continue;
        }
        if t > TOL && u > TOL && u < 1.0 - TOL {
            clear_best = clear_best.min(t);
        }
        cands.push((i, t));
    }
    let limit = clear_best * (1.0 + 1e-6) + TOL;
    cands.into_iter().filter(|&(_, t)| t <= limit).map(|(i, _)| i).collect()
}

/// Removes vertices lying on the segment between their neighbours.
fn drop_collinear(pts: &mut Vec<Point>) {
    let between =
        |a: &Point, b: &Point, c: &Point| orient_sign(a, b, c) == 0 && dot(&b.sub(a), &c.sub(b)) > Rational::zero();
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts.drain(..) {
        while out.len() >= 2 && between(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    loop {
        let n = out.len();
        if n <= 3 {
            break;
        }
        if between(&out[n - 2], &out[n - 1], &out[0]) {
            out.pop();
        } else if between(&out[n - 1], &out[0], &out[1]) {
            out.remove(0);
        } else {
            break;
        }
    }
    *pts = out;
}

pub fn visibility_region(r: &PolygonalRegion, source: &Point) -> Result<VisibilityRegion, RegionError> {
    if r.locate(source) == Location::Outside {
        return Err(RegionError::OutsideRegion(Box::new(source.clone())));
    }
    let label =
        r.all_vertices().into_iter().find(|v| &v.point() == source).map(|v| v.label.clone()).unwrap_or_default();
    let edges: Vec<(Point, Point)> = r
        .edges()
        .into_iter()
        .filter(|(a, b)| a != source && b != source && !strictly_inside_segment(source, a, b))
        .collect();
    let edges_f: Vec<((f64, f64), (f64, f64))> = edges.iter().map(|(a, b)| (a.to_f64(), b.to_f64())).collect();
    let src_f = source.to_f64();
    let wedge = interior_wedge(r, source);
    let base = match &wedge {
        Some((from, _)) => from.clone(),
        None => Point::from_ints(1, 0),
    };
    let mut dirs: Vec<Point> = Vec::new();
    for v in r.all_vertices() {
        let p = v.point();
        if &p != source {
            dirs.push(p.sub(source));
        }
    }
    dirs.push(base.clone());
    if let Some((_, to)) = &wedge {
        dirs.push(to.clone());
    }
    dirs.sort_by(|a, b| ccw_cmp_from(&base, a, b));
    dirs.dedup_by(|a, b| same_direction(a, b));
    // restrict to the wedge [from, to]
    if let Some((_, to)) = &wedge {
        let end = dirs.iter().position(|d| same_direction(d, to)).expect("wedge end present");
        dirs.truncate(end + 1);
    }
    let m = dirs.len();
    let wedges = if wedge.is_some() { m - 1 } else { m };
    let mut pts: Vec<Point> = Vec::new();
    if wedge.is_some() {
        pts.push(source.clone());
    }
    for k in 0..wedges {
        let d0 = &dirs[k];
        let d1 = &dirs[(k + 1) % m];
        let rep = wedge_representative(d0, d1);
        let mut best: Option<(Rational, usize)> = None;
        for ei in hit_candidates(src_f, rep.to_f64(), &edges_f) {
            let (c, e) = &edges[ei];
            if let Some(t) = ray_hit(source, &rep, c, e) {
                if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
                    best = Some((t, ei));
                }
            }
        }
        let Some((_, ei)) = best else { continue };
        let (c, e) = &edges[ei];
        let line = Segment::new(c.clone(), e.clone());
        for d in [d0, d1] {
            let ray = Segment::new(source.clone(), source.add(d));
            if let Some(p) = crate::geometry::line_intersection(&ray, &line) {
                if pts.last() != Some(&p) {
                    pts.push(p);
                }
            }
        }
    }
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    drop_collinear(&mut pts);
    pts.reverse();
    let punctures = r
        .holes
        .iter()
        .filter(|h| h.is_point())
        .map(|h| h.vertices[0].point())
        .filter(|p| visible_unchecked(r, source, p))
        .collect();
    Ok(VisibilityRegion { source: label, boundary: pts, punctures })
}

/// Exact membership: strictly inside the visibility polygon.
pub fn in_visibility_region(vr: &VisibilityRegion, p: &Point) -> bool {
    let n = vr.boundary.len();
    for i in 0..n {
        if on_segment(p, &vr.boundary[i], &vr.boundary[(i + 1) % n]) {
            return false;
        }
    }
    point_in_polygon(p, &vr.boundary)
}

/// Do two simple polygons share interior points?
pub fn polygons_overlap(a: &[Point], b: &[Point]) -> bool {
    let ta = ear_clip(a);
    let tb = ear_clip(b);
    ta.iter().any(|x| tb.iter().any(|y| triangles_overlap(x, y)))
}

fn triangles_overlap(a: &[Point; 3], b: &[Point; 3]) -> bool {
    // separated iff some edge line has the other triangle in its closed outer side
    for (t, o) in [(a, b), (b, a)] {
        let s = orient_sign(&t[0], &t[1], &t[2]);
        for i in 0..3 {
            let (p, q) = (&t[i], &t[(i + 1) % 3]);
            if o.iter().all(|x| orient_sign(p, q, x) * s <= 0) {
                return false;
            }
        }
    }
    true
}

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Collinear vertices are dropped; returns nondegenerate triangles.
pub fn ear_clip(poly: &[Point]) -> Vec<[Point; 3]> {
    let mut pts: Vec<Point> = poly.to_vec();
    if signed_area2(&pts) < Rational::zero() {
        pts.reverse();
    }
    let mut out = Vec::new();
    let mut guard = 0usize;
    while pts.len() > 3 {
        let n = pts.len();
        let mut clipped = false;
        for i in 0..n {
            let a = &pts[(i + n - 1) % n];
            let b = &pts[i];
            let c = &pts[(i + 1) % n];
            let o = orient_sign(a, b, c);
            if o == 0 {
                pts.remove(i);
                clipped = true;
                break;
            }
            if o < 0 {
                continue;
            }
            let blocked = pts.iter().enumerate().any(|(j, p)| {
                j != i
                    && j != (i + n - 1) % n
                    && j != (i + 1) % n
                    && orient_sign(a, b, p) >= 0
                    && orient_sign(b, c, p) >= 0
                    && orient_sign(c, a, p) >= 0
            });
            if !blocked {
                out.push([a.clone(), b.clone(), c.clone()]);
                pts.remove(i);
                clipped = true;
                break;
            }
        }
        guard += 1;
        if !clipped || guard > 100_000 {
            break;
        }
    }
    if pts.len() == 3 && orient_sign(&pts[0], &pts[1], &pts[2]) != 0 {
        out.push([pts[0].clone(), pts[1].clone(), pts[2].clone()]);
    }
    out
}

/// Fan triangles of a visibility polygon around its (kernel) source point.
fn star_triangles(source: &Point, boundary: &[Point]) -> Vec<[Point; 3]> {
    let n = boundary.len();
    (0..n)
        .filter_map(|i| {
            let (a, b) = (&boundary[i], &boundary[(i + 1) % n]);
            (orient_sign(source, a, b) != 0).then(|| [source.clone(), a.clone(), b.clone()])
        })
        .collect()
}

/// Slightly padded floating-point bounding box of a segment.
fn edge_box(a: &Point, b: &Point) -> [f64; 4] {
    let ((ax, ay), (bx, by)) = (a.to_f64(), b.to_f64());
    let pad = |v: f64| 1e-9 * (1.0 + v.abs());
    [
        ax.min(bx) - pad(ax.min(bx)),
        ax.max(bx) + pad(ax.max(bx)),
        ay.min(by) - pad(ay.min(by)),
        ay.max(by) + pad(ay.max(by)),
    ]
}

fn bbox(t: &[Point; 3]) -> [Rational; 4] {
    let xs = t.iter().map(|p| &p.x);
    let ys = t.iter().map(|p| &p.y);
    [
        xs.clone().min().unwrap().clone(),
        xs.max().unwrap().clone(),
        ys.clone().min().unwrap().clone(),
        ys.max().unwrap().clone(),
    ]
}

fn fans_overlap(a: &[([Point; 3], [Rational; 4])], b: &[([Point; 3], [Rational; 4])]) -> bool {
    a.iter().any(|(x, bx)| {
        b.iter()
            .any(|(y, by)| bx[0] < by[1] && by[0] < bx[1] && bx[2] < by[3] && by[2] < bx[3] && triangles_overlap(x, y))
    })
}

fn fan_with_boxes(source: &Point, vr: &VisibilityRegion) -> Vec<([Point; 3], [Rational; 4])> {
    star_triangles(source, &vr.boundary)
        .into_iter()
        .map(|t| {
            let b = bbox(&t);
            (t, b)
        })
        .collect()
}

pub fn regions_commonly_visible(r: &PolygonalRegion, p: &Point, q: &Point) -> Result<bool, RegionError> {
    let a = visibility_region(r, p)?;
    let b = visibility_region(r, q)?;
    Ok(fans_overlap(&fan_with_boxes(p, &a), &fan_with_boxes(q, &b)))
}

/// Pairwise common visibility among `points`, computing each visibility region once.
pub fn common_visibility_matrix(r: &PolygonalRegion, points: &[Point]) -> Result<Vec<Vec<bool>>, RegionError> {
    let fans = points
        .iter()
        .map(|p| visibility_region(r, p).map(|vr| fan_with_boxes(p, &vr)))
        .collect::<Result<Vec<_>, _>>()?;
    let n = points.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let hit = fans_overlap(&fans[i], &fans[j]);
            m[i][j] = hit;
            m[j][i] = hit;
        }
    }
    Ok(m)
}

pub fn one_bend_visible(r: &PolygonalRegion, a: &Point, b: &Point) -> Result<bool, RegionError> {
    regions_commonly_visible(r, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    pub fn poly(items: &[(&str, i64, i64)]) -> LabelledPolygon {
        LabelledPolygon::from_points(items.iter().map(|(l, x, y)| (l.to_string(), Point::from_ints(*x, *y))).collect())
    }

    fn square() -> PolygonalRegion {
        PolygonalRegion::new(poly(&[("a", 0, 0), ("b", 0, 2), ("c", 2, 2), ("d", 2, 0)]), vec![])
    }

    #[test]
    fn square_basics() {
        let r = square();
        assert!(validate_region(&r).is_ok());
        assert_eq!(r.area(), crate::geometry::qi(4));
        assert!(find_dents(&r).is_empty());
        let vr = visibility_region(&r, &Point::from_ints(0, 0)).unwrap();
        let area = signed_area2(&vr.boundary).abs();
        assert_eq!(area, crate::geometry::qi(8));
    }

    #[test]
    fn ccw_outer_rejected() {
        let mut r = square();
        r.outer = r.outer.reversed();
        let v = validate_region(&r).unwrap_err();
        assert!(v.iter().any(|s| s.contains("clockwise")));
    }

    #[test]
    fn edge_source_wedge() {
        let r = square();
        let s = Point::new(q(1, 1), q(0, 1));
        let vr = visibility_region(&r, &s).unwrap();
        assert_eq!(signed_area2(&vr.boundary).abs(), crate::geometry::qi(8));
    }
}
