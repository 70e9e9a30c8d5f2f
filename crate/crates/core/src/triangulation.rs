//! Triangulations with Steiner points, and exact verification of single and compatible pairs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::geometry::{on_segment, orient_sign, q, signed_area2, strictly_inside_segment, Point, Rational};
use crate::regions::{
    find_dents, point_in_polygon, visible_unchecked, DentKind, LabelledPolygon, Location, PolygonalRegion, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Triangulation {
    #[serde(default)]
    pub steiner: Vec<Vertex>,
    /// Each face lists three labels in clockwise order.
    pub faces: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CompatiblePair {
    pub t1: Triangulation,
    pub t2: Triangulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    UnknownLabel,
    DuplicateLabel,
    DegenerateFace,
    FaceOrientation,
    SteinerOutside,
    InteriorOverlap,
    AreaDeficit,
    AreaExcess,
    EdgeIncidence,
    VertexOnEdge,
    UnusedVertex,
    FaceOrientationMismatch,
    FaceMismatch,
    SteinerLabelMismatch,
    RegionMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Violation { kind, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            ViolationKind::UnknownLabel => "unknown label",
            ViolationKind::DuplicateLabel => "duplicate label",
            ViolationKind::DegenerateFace => "degenerate face",
            ViolationKind::FaceOrientation => "face not clockwise",
            ViolationKind::SteinerOutside => "steiner point outside region",
            ViolationKind::InteriorOverlap => "interior overlap",
            ViolationKind::AreaDeficit => "area deficit",
            ViolationKind::AreaExcess => "area excess",
            ViolationKind::EdgeIncidence => "edge incidence",
            ViolationKind::VertexOnEdge => "vertex on edge",
            ViolationKind::UnusedVertex => "unused vertex",
            ViolationKind::FaceOrientationMismatch => "face orientation mismatch",
            ViolationKind::FaceMismatch => "face mismatch",
            ViolationKind::SteinerLabelMismatch => "steiner label mismatch",
            ViolationKind::RegionMismatch => "regions not compatible",
        };
        write!(f, "{name}: {}", self.detail)
    }
}

pub type Verdict = Result<(), Vec<Violation>>;

/// Label to coordinates for region vertices and Steiner points.
pub fn vertex_table(r: &PolygonalRegion, t: &Triangulation) -> HashMap<String, Point> {
    let mut m = r.label_map();
    for s in &t.steiner {
        m.entry(s.label.clone()).or_insert_with(|| s.point());
    }
    m
}

fn bbox(pts: &[&Point]) -> (Rational, Rational, Rational, Rational) {
    let mut x0 = pts[0].x.clone();
    let mut x1 = pts[0].x.clone();
    let mut y0 = pts[0].y.clone();
    let mut y1 = pts[0].y.clone();
    for p in &pts[1..] {
        if p.x < x0 {
            x0 = p.x.clone();
        }
        if p.x > x1 {
            x1 = p.x.clone();
        }
        if p.y < y0 {
            y0 = p.y.clone();
        }
        if p.y > y1 {
            y1 = p.y.clone();
        }
    }
    (x0, x1, y0, y1)
}

fn tri_overlap(a: [&Point; 3], b: [&Point; 3]) -> bool {
    for (t, o) in [(a, b), (b, a)] {
        let s = orient_sign(t[0], t[1], t[2]);
        for i in 0..3 {
            let (p, q) = (t[i], t[(i + 1) % 3]);
            if o.iter().all(|x| orient_sign(p, q, x) * s <= 0) {
                return false;
            }
        }
    }
    true
}

pub fn verify_triangulation(r: &PolygonalRegion, t: &Triangulation) -> Verdict {
    let mut v = Vec::new();
    let region_labels: HashSet<&str> = r.all_vertices().iter().map(|x| x.label.as_str()).collect();
    let mut steiner_labels = HashSet::new();
    for s in &t.steiner {
        if region_labels.contains(s.label.as_str()) || !steiner_labels.insert(s.label.as_str()) {
            v.push(Violation::new(ViolationKind::DuplicateLabel, s.label.clone()));
        }
        if r.locate(&s.point()) == Location::Outside {
            v.push(Violation::new(ViolationKind::SteinerOutside, s.label.clone()));
        }
    }
    let table = vertex_table(r, t);
    // (a) faces are known, nondegenerate and clockwise
    let mut good_faces: Vec<[&Point; 3]> = Vec::new();
    let mut good_labels: Vec<&[String; 3]> = Vec::new();
    for f in &t.faces {
        let pts: Vec<Option<&Point>> = f.iter().map(|l| table.get(l)).collect();
        if pts.iter().any(Option::is_none) {
            v.push(Violation::new(ViolationKind::UnknownLabel, format!("{f:?}")));
            continue;
        }
        let p = [pts[0].unwrap(), pts[1].unwrap(), pts[2].unwrap()];
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            v.push(Violation::new(ViolationKind::DegenerateFace, format!("{f:?}")));
            continue;
        }
        match orient_sign(p[0], p[1], p[2]) {
            0 => {
                v.push(Violation::new(ViolationKind::DegenerateFace, format!("{f:?}")));
                continue;
            }
            1 => v.push(Violation::new(ViolationKind::FaceOrientation, format!("{f:?}"))),
            _ => {}
        }
        good_faces.push(p);
        good_labels.push(f);
    }
    // (b) pairwise interiors disjoint (sweep on x-extent)
    let boxes: Vec<_> = good_faces.iter().map(|f| bbox(&f[..])).collect();
    let mut order: Vec<usize> = (0..good_faces.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0.cmp(&boxes[b].0));
    let mut overlaps = 0usize;
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].0 >= boxes[i].1 {
                break;
            }
            if boxes[j].2 >= boxes[i].3 || boxes[i].2 >= boxes[j].3 {
                continue;
            }
            if tri_overlap(good_faces[i], good_faces[j]) {
                overlaps += 1;
                if overlaps <= 5 {
                    v.push(Violation::new(
                        ViolationKind::InteriorOverlap,
                        format!("{:?} and {:?}", good_labels[i], good_labels[j]),
                    ));
                }
            }
        }
    }
    // (c) area bookkeeping
    let mut area = Rational::zero();
    for f in &good_faces {
        let tri = [f[0].clone(), f[1].clone(), f[2].clone()];
        area -= signed_area2(&tri);
    }
    area *= q(1, 2);
    let target = r.area();
    if area < target {
        v.push(Violation::new(ViolationKind::AreaDeficit, format!("{} < {}", area, target)));
    } else if area > target {
        v.push(Violation::new(ViolationKind::AreaExcess, format!("{} > {}", area, target)));
    }
    // (c) edge incidence: internal edges cancel in opposite directions,
    // the rest must tile the region boundary in its own direction
    let mut directed: HashMap<(&str, &str), usize> = HashMap::new();
    for f in &good_labels {
        for i in 0..3 {
            *directed.entry((f[i].as_str(), f[(i + 1) % 3].as_str())).or_default() += 1;
        }
    }
    let mut loose: HashSet<(&str, &str)> = HashSet::new();
    for (&(a, b), &c) in &directed {
        if c > 1 {
            v.push(Violation::new(ViolationKind::EdgeIncidence, format!("edge {a}-{b} used {c} times")));
        }
        if !directed.contains_key(&(b, a)) {
            loose.insert((a, b));
        }
    }
    let mut out_of: HashMap<&str, Vec<&str>> = HashMap::new();
    for &(a, b) in &loose {
        out_of.entry(a).or_default().push(b);
    }
    for c in r.cycles() {
        let n = c.len();
        if n < 2 {
            continue;
        }
        for i in 0..n {
            let a = &c.vertices[i];
            let b = &c.vertices[(i + 1) % n];
            let (pa, pb) = (a.point(), b.point());
            let mut cur = a.label.as_str();
            let mut steps = 0;
            let mut ok = false;
            while steps <= table.len() {
                if cur == b.label {
                    ok = true;
                    break;
                }
                let cur_pt = &table[cur];
                let next = out_of.get(cur).and_then(|outs| {
                    outs.iter().copied().find(|nx| {
                        let np = &table[*nx];
                        on_segment(np, &pa, &pb)
                            && (np.x.clone() - &cur_pt.x) * (&pb.x - &pa.x)
                                + (np.y.clone() - &cur_pt.y) * (&pb.y - &pa.y)
                                > Rational::zero()
                    })
                });
                match next {
                    Some(nx) => {
                        loose.remove(&(cur, nx));
                        cur = nx;
                    }
                    None => break,
                }
                steps += 1;
            }
            if !ok {
                v.push(Violation::new(
                    ViolationKind::EdgeIncidence,
                    format!("boundary edge {}-{} not covered", a.label, b.label),
                ));
            }
        }
    }
    for (a, b) in &loose {
        v.push(Violation::new(ViolationKind::EdgeIncidence, format!("edge {a}-{b} has one face")));
    }
    // (d) vertices used, and no vertex inside a face edge
    let used: HashSet<&str> = good_labels.iter().flat_map(|f| f.iter().map(String::as_str)).collect();
    for l in region_labels.iter().chain(steiner_labels.iter()) {
        if !used.contains(l) {
            v.push(Violation::new(ViolationKind::UnusedVertex, l.to_string()));
        }
    }
    let mut pts_sorted: Vec<(&str, &Point)> = table.iter().map(|(l, p)| (l.as_str(), p)).collect();
    pts_sorted.sort_by(|a, b| a.1.x.cmp(&b.1.x));
    let mut seen_edges = HashSet::new();
    for f in &good_labels {
        for i in 0..3 {
            let (a, b) = (f[i].as_str(), f[(i + 1) % 3].as_str());
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen_edges.insert(key) {
                continue;
            }
            let (pa, pb) = (&table[a], &table[b]);
            let (lo, hi) = if pa.x <= pb.x { (&pa.x, &pb.x) } else { (&pb.x, &pa.x) };
            let start = pts_sorted.partition_point(|(_, p)| p.x < *lo);
            for (l, p) in &pts_sorted[start..] {
                if p.x > *hi {
                    break;
                }
                if strictly_inside_segment(p, pa, pb) {
                    v.push(Violation::new(ViolationKind::VertexOnEdge, format!("{l} on {a}-{b}")));
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

/// Cyclic rotation starting at the smallest label.
fn canonical_face(f: &[String; 3]) -> [String; 3] {
    let k = (0..3).min_by_key(|&i| &f[i]).unwrap();
    [f[k].clone(), f[(k + 1) % 3].clone(), f[(k + 2) % 3].clone()]
}

pub fn verify_compatible_pair(r1: &PolygonalRegion, r2: &PolygonalRegion, pair: &CompatiblePair) -> Verdict {
    let mut v = Vec::new();
    if !crate::regions::compatible(r1, r2) {
        v.push(Violation::new(ViolationKind::RegionMismatch, "outer or hole label cycles differ"));
    }
    if let Err(e) = verify_triangulation(r1, &pair.t1) {
        v.extend(e.into_iter().map(|x| Violation { detail: format!("first: {}", x.detail), ..x }));
    }
    if let Err(e) = verify_triangulation(r2, &pair.t2) {
        v.extend(e.into_iter().map(|x| Violation { detail: format!("second: {}", x.detail), ..x }));
    }
    let s1: HashSet<&str> = pair.t1.steiner.iter().map(|s| s.label.as_str()).collect();
    let s2: HashSet<&str> = pair.t2.steiner.iter().map(|s| s.label.as_str()).collect();
    if s1 != s2 {
        let mut diff: Vec<&&str> = s1.symmetric_difference(&s2).collect();
        diff.sort();
        v.push(Violation::new(ViolationKind::SteinerLabelMismatch, format!("{diff:?}")));
    }
    let mut m1: BTreeMap<[String; 3], i64> = BTreeMap::new();
    for f in &pair.t1.faces {
        *m1.entry(canonical_face(f)).or_default() += 1;
    }
    let mut m2: BTreeMap<[String; 3], i64> = BTreeMap::new();
    for f in &pair.t2.faces {
        *m2.entry(canonical_face(f)).or_default() += 1;
    }
    let mut reported = 0;
    for (f, c) in &m1 {
        let c2 = m2.get(f).copied().unwrap_or(0);
        if c2 == *c {
            continue;
        }
        reported += 1;
        if reported > 5 {
            continue;
        }
        let rev = canonical_face(&[f[0].clone(), f[2].clone(), f[1].clone()]);
        if m2.contains_key(&rev) {
            v.push(Violation::new(ViolationKind::FaceOrientationMismatch, format!("{f:?}")));
        } else {
            v.push(Violation::new(ViolationKind::FaceMismatch, format!("{f:?} missing from second")));
        }
    }
    for f in m2.keys() {
        if !m1.contains_key(f) {
            let rev = canonical_face(&[f[0].clone(), f[2].clone(), f[1].clone()]);
            if !m1.contains_key(&rev) {
                v.push(Violation::new(ViolationKind::FaceMismatch, format!("{f:?} missing from first")));
            }
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

pub fn steiner_count(pair: &CompatiblePair) -> usize {
    pair.t1.steiner.len()
}

/// Steiner points strictly inside `mask`.
pub fn steiner_in_subregion(t: &Triangulation, mask: &LabelledPolygon) -> usize {
    let poly = mask.points();
    let n = poly.len();
    t.steiner
        .iter()
        .filter(|s| {
            let p = s.point();
            !(0..n).any(|i| on_segment(&p, &poly[i], &poly[(i + 1) % n])) && point_in_polygon(&p, &poly)
        })
        .count()
}

/// Outward dents of `r1` whose flanks are not visible in `r2`, yet whose peak has no
/// neighbour in `t1` other than the flanks (a Steiner point or a visible vertex).
pub fn dent_adjacency_violations(r1: &PolygonalRegion, t1: &Triangulation, r2: &PolygonalRegion) -> Vec<String> {
    let table = vertex_table(r1, t1);
    let steiner: HashSet<&str> = t1.steiner.iter().map(|s| s.label.as_str()).collect();
    let mut nbrs: HashMap<&str, HashSet<&str>> = HashMap::new();
    for f in &t1.faces {
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    nbrs.entry(f[i].as_str()).or_default().insert(f[j].as_str());
                }
            }
        }
    }
    let pos2 = r2.label_map();
    let mut out = Vec::new();
    for dent in find_dents(r1) {
        if dent.kind != DentKind::Outward {
            continue;
        }
        let (Some(u2), Some(v2)) = (pos2.get(&dent.u), pos2.get(&dent.v)) else {
            continue;
        };
        if visible_unchecked(r2, u2, v2) {
            continue;
        }
        let d = &table[&dent.d];
        let ok = nbrs.get(dent.d.as_str()).is_some_and(|ns| {
            ns.iter()
                .any(|w| steiner.contains(w) || (*w != dent.u && *w != dent.v && visible_unchecked(r1, d, &table[*w])))
        });
        if !ok {
            out.push(format!("peak {} has no admissible neighbour", dent.d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> PolygonalRegion {
        let v = |l: &str, x, y| Vertex::new(l, Point::from_ints(x, y));
        PolygonalRegion::new(LabelledPolygon::new(vec![v("a", 0, 0), v("b", 0, 1), v("c", 1, 1), v("d", 1, 0)]), vec![])
    }

    fn f(a: &str, b: &str, c: &str) -> [String; 3] {
        [a.into(), b.into(), c.into()]
    }

    #[test]
    fn diagonal_split_ok() {
        let t = Triangulation { steiner: vec![], faces: vec![f("a", "b", "c"), f("a", "c", "d")] };
        assert!(verify_triangulation(&sq(), &t).is_ok());
    }

    #[test]
    fn boundary_steiner_point() {
        let s = Vertex::new("s", Point::new(q(1, 2), q(0, 1)));
        let t = Triangulation { steiner: vec![s], faces: vec![f("a", "b", "s"), f("s", "b", "c"), f("s", "c", "d")] };
        assert!(verify_triangulation(&sq(), &t).is_ok());
    }
}
