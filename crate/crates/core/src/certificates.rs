//! Both directions between assignments and small compatible triangulations, plus the
//! peak-pairing analysis behind the Steiner lower bound.
//!
//! A certificate is assembled from forced edges: in each clause one primed peak of a true
//! literal reaches its μ-point, the other two channels are closed, and the remaining
//! eight peaks are covered by five Steiner fans. The faces left over are then
//! triangulated without further Steiner points.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{line_intersection, orient_sign, q, segments_intersect, Intersection, Point, Segment};
use crate::reduction::{ClauseLayout, ReductionOutput, PRIMED, ROLES};
use crate::regions::{
    ccw_cmp_from, common_visibility_matrix, point_in_polygon, LabelledPolygon, PolygonalRegion, Vertex,
};
use crate::satmodel::{Assignment, Sign};
use crate::triangulation::{verify_compatible_pair, CompatiblePair, Triangulation, Violation};
use crate::zero_steiner::{decide_zero_steiner, ZeroSteinerVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("assignment does not satisfy the instance")]
    Unsatisfied,
    #[error("assignment misses variable {0}")]
    MissingVariable(String),
    #[error("forced edge {0}-{1} is not drawable in both regions")]
    BadEdge(String, String),
    #[error("faces differ between the two regions")]
    FaceMismatch,
    #[error("no bridge found for an inner boundary starting at {0}")]
    NoBridge(String),
    #[error("face starting at {0} has no compatible triangulation")]
    Face(String),
    #[error("assembled pair fails verification: {0:?}")]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("no peak of clause {0} reaches a μ-point")]
    NoMuEdge(usize),
    #[error("variable {0} is forced both true and false")]
    Conflict(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakVisibilityGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub bipartite: bool,
    pub matching: Vec<(String, String)>,
    pub cover: Vec<String>,
}

// ---------------------------------------------------------------------------------------
// Steiner fans

#[derive(Debug, Clone)]
struct Fan {
    label: String,
    at: [Point; 2],
    peaks: Vec<&'static str>,
}

struct ClauseGeometry<'a> {
    layout: &'a ClauseLayout,
    h: &'a crate::geometry::Rational,
}

impl ClauseGeometry<'_> {
    fn room(&self, p: &Point) -> Point {
        self.layout.to_room(self.h, p)
    }

    fn plane(&self, p: &Point) -> Point {
        self.layout.to_plane(self.h, p)
    }

    fn chord(&self, role: &str) -> (Point, Point) {
        let c = &self.layout.trace.chords[role];
        (self.room(&c.from), self.room(&c.to))
    }

    fn beam(&self, role: &str) -> (Point, Point) {
        let c = &self.layout.trace.beams[role];
        (self.room(&c.from), self.room(&c.to))
    }

    fn crossing(&self, a: &str, b: &str) -> Point {
        let (p, q) = self.chord(a);
        let (r, s) = self.chord(b);
        line_intersection(&Segment::new(p, q), &Segment::new(r, s)).expect("chords are not parallel")
    }

    /// Point on a line at L1 distance `dist` from its start.
    fn along((a, b): (Point, Point), dist: crate::geometry::Rational) -> Point {
        let d = b.sub(&a);
        let l1 = d.x.abs() + d.y.abs();
        a.add(&d.scale(&(dist / l1)))
    }

    fn beam_at(&self, role: &str, t: crate::geometry::Rational) -> Point {
        let (a, b) = self.beam(role);
        a.lerp(&b, &t)
    }
}

/// Steiner fans of one clause when the primed peak `chosen` (0, 1, 2) is linked to its μ-point.
fn clause_fans(g: &ClauseGeometry, k: usize, chosen: usize) -> Vec<Fan> {
    let x2 = g.layout.x2.clone();
    let x3 = g.layout.x3.clone();
    let half = q(1, 2);
    let pair = |a: &'static str, b: &'static str, second: Point| (vec![a, b], [g.crossing(a, b), second]);
    let single = |role: &'static str| -> (Vec<&'static str>, [Point; 2]) {
        if PRIMED.contains(&role) {
            let x = match role {
                "q'" => crate::geometry::Rational::zero(),
                "r'" => x2.clone(),
                _ => x3.clone(),
            };
            let p = Point::new(x, q(999, 1000));
            (vec![role], [p.clone(), p])
        } else {
            (
                vec![role],
                [ClauseGeometry::along(g.chord(role), q(1, 10)), ClauseGeometry::along(g.beam(role), q(1, 10))],
            )
        }
    };
    let qu = pair("q", "u", g.beam_at("u", q(1, 4)));
    let plan: Vec<(Vec<&'static str>, [Point; 2])> = match chosen {
        0 => vec![
            qu,
            pair("r", "r'", Point::new(x2.clone(), half.clone())),
            pair("s", "s'", Point::new(x3.clone(), half.clone())),
            single("v"),
            single("w"),
        ],
        1 => vec![
            qu,
            pair("r", "v", g.beam_at("v", q(17, 20))),
            pair("s", "s'", Point::new(x3.clone(), half.clone())),
            single("w"),
            single("q'"),
        ],
        _ => vec![
            qu,
            pair("r", "v", g.beam_at("v", q(17, 20))),
            pair("s", "w", g.beam_at("w", q(9, 10))),
            single("q'"),
            single("r'"),
        ],
    };
    plan.into_iter()
        .enumerate()
        .map(|(j, (peaks, at))| Fan { label: format!("c{k}.S{j}"), at: [g.plane(&at[0]), g.plane(&at[1])], peaks })
        .collect()
}

// ---------------------------------------------------------------------------------------
// planar subdivision shared by both regions

struct Subdivision {
    pts: [HashMap<String, Point>; 2],
    /// Outgoing half-edges per vertex.
    out: BTreeMap<String, BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Face {
    outer: Vec<String>,
    inner: Vec<Vec<String>>,
}

fn canonical(cycle: &[String]) -> Vec<String> {
    let start = (0..cycle.len()).min_by(|&a, &b| cycle[a].cmp(&cycle[b])).unwrap_or(0);
    cycle[start..].iter().chain(&cycle[..start]).cloned().collect()
}

impl Subdivision {
    fn new(r1: &PolygonalRegion, r2: &PolygonalRegion) -> Self {
        let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for c in r1.cycles() {
            let n = c.len();
            for i in 0..n {
                out.entry(c.vertices[i].label.clone()).or_default().insert(c.vertices[(i + 1) % n].label.clone());
            }
        }
        Subdivision { pts: [r1.label_map(), r2.label_map()], out }
    }

    fn add_point(&mut self, label: &str, p1: Point, p2: Point) {
        self.pts[0].insert(label.to_string(), p1);
        self.pts[1].insert(label.to_string(), p2);
        self.out.entry(label.to_string()).or_default();
    }

    fn has_edge(&self, a: &str, b: &str) -> bool {
        self.out.get(a).is_some_and(|s| s.contains(b))
    }

    fn add_edge(&mut self, a: &str, b: &str) {
        self.out.entry(a.to_string()).or_default().insert(b.to_string());
        self.out.entry(b.to_string()).or_default().insert(a.to_string());
    }

    fn remove_edge(&mut self, a: &str, b: &str) {
        self.out.get_mut(a).map(|s| s.remove(b));
        self.out.get_mut(b).map(|s| s.remove(a));
    }

    /// Does segment `ab` avoid every existing edge and vertex in embedding `k`?
    fn segment_clear(&self, k: usize, a: &str, b: &str) -> bool {
        let (pa, pb) = (&self.pts[k][a], &self.pts[k][b]);
        let s = Segment::new(pa.clone(), pb.clone());
        for (u, vs) in &self.out {
            let pu = &self.pts[k][u];
            if u != a && u != b && crate::geometry::on_segment(pu, pa, pb) {
                return false;
            }
            for v in vs {
                if u > v && self.has_edge(v, u) {
                    continue;
                }
                if u == a || u == b || v == a || v == b {
                    continue;
                }
                if segments_intersect(&s, &Segment::new(pu.clone(), self.pts[k][v].clone())) != Intersection::Disjoint {
                    return false;
                }
            }
        }
        true
    }

    fn next(&self, k: usize, a: &str, b: &str) -> String {
        let pb = &self.pts[k][b];
        let base = self.pts[k][a].sub(pb);
        let outs = &self.out[b];
        outs.iter()
            .filter(|c| c.as_str() != a)
            .min_by(|c, d| {
                let dc = self.pts[k][c.as_str()].sub(pb);
                let dd = self.pts[k][d.as_str()].sub(pb);
                ccw_cmp_from(&base, &dc, &dd).then_with(|| c.cmp(d))
            })
            .cloned()
            .unwrap_or_else(|| a.to_string())
    }

    fn faces(&self, k: usize) -> Vec<Face> {
        let mut used: BTreeSet<(String, String)> = BTreeSet::new();
        let mut cw: Vec<Vec<String>> = Vec::new();
        let mut ccw: Vec<Vec<String>> = Vec::new();
        for (a, bs) in &self.out {
            for b in bs {
                if used.contains(&(a.clone(), b.clone())) {
                    continue;
                }
                let mut cyc = Vec::new();
                let (mut x, mut y) = (a.clone(), b.clone());
                loop {
                    used.insert((x.clone(), y.clone()));
                    cyc.push(x.clone());
                    let z = self.next(k, &x, &y);
                    x = y;
                    y = z;
                    if &x == a && &y == b {
                        break;
                    }
                }
                let pts: Vec<Point> = cyc.iter().map(|l| self.pts[k][l].clone()).collect();
                if crate::geometry::signed_area2(&pts).is_negative() {
                    cw.push(canonical(&cyc));
                } else {
                    ccw.push(canonical(&cyc));
                }
            }
        }
        let polys: Vec<Vec<Point>> = cw.iter().map(|c| c.iter().map(|l| self.pts[k][l].clone()).collect()).collect();
        let areas: Vec<_> = polys.iter().map(|p| crate::geometry::signed_area2(p).abs()).collect();
        let mut faces: Vec<Face> = cw.iter().map(|c| Face { outer: c.clone(), inner: vec![] }).collect();
        for c in ccw {
            let probe = &self.pts[k][&c[0]];
            let host = (0..polys.len())
                .filter(|&f| point_in_polygon(probe, &polys[f]))
                .min_by(|&x, &y| areas[x].cmp(&areas[y]));
            if let Some(f) = host {
                faces[f].inner.push(c);
            }
        }
        for f in &mut faces {
            f.inner.sort();
        }
        faces.sort_by(|a, b| a.outer.cmp(&b.outer));
        faces
    }

    fn matching_faces(&self) -> Result<Vec<Face>, CertificateError> {
        let f1 = self.faces(0);
        let f2 = self.faces(1);
        if f1 != f2 {
            return Err(CertificateError::FaceMismatch);
        }
        Ok(f1)
    }

    /// Inside the face in both embeddings, and crossing nothing.
    fn bridge_ok(&self, face: &Face, a: &str, b: &str) -> bool {
        if self.has_edge(a, b) {
            return false;
        }
        for k in 0..2 {
            if !self.segment_clear(k, a, b) {
                return false;
            }
            let mid = self.pts[k][a].lerp(&self.pts[k][b], &q(1, 2));
            let poly = |c: &Vec<String>| -> Vec<Point> { c.iter().map(|l| self.pts[k][l].clone()).collect() };
            if !point_in_polygon(&mid, &poly(&face.outer))
                || face.inner.iter().any(|h| point_in_polygon(&mid, &poly(h)))
            {
                return false;
            }
        }
        true
    }

    /// Joins every inner boundary to the rest of its face by two edges.
    fn bridge_all(&mut self) -> Result<Vec<Face>, CertificateError> {
        loop {
            let faces = self.matching_faces()?;
            let Some(face) = faces.iter().find(|f| !f.inner.is_empty()) else {
                return Ok(faces);
            };
            let hole = &face.inner[0];
            let mut targets: Vec<&String> = face.outer.iter().collect();
            for h in &face.inner[1..] {
                targets.extend(h.iter());
            }
            let mut cands: Vec<(crate::geometry::Rational, String, String)> = Vec::new();
            for a in hole {
                for b in &targets {
                    let d = self.pts[0][a].sub(&self.pts[0][b.as_str()]);
                    cands.push((&d.x * &d.x + &d.y * &d.y, a.clone(), (*b).clone()));
                }
            }
            cands.sort();
            let mut done = false;
            'outer: for i in 0..cands.len() {
                let (_, a1, b1) = &cands[i];
                if !self.bridge_ok(face, a1, b1) {
                    continue;
                }
                self.add_edge(a1, b1);
                for (_, a2, b2) in &cands[i + 1..] {
                    if a2 == a1 || b2 == b1 || !self.bridge_ok(face, a2, b2) {
                        continue;
                    }
                    self.add_edge(a2, b2);
                    if self.matching_faces().is_ok() {
                        done = true;
                        break 'outer;
                    }
                    self.remove_edge(a2, b2);
                }
                self.remove_edge(a1, b1);
            }
            if !done {
                return Err(CertificateError::NoBridge(hole[0].clone()));
            }
        }
    }
}

/// Ear clipping that keeps collinear vertices: returns index triangles of a clockwise polygon.
fn ear_clip_labelled(pts: &[Point]) -> Option<Vec<[usize; 3]>> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let mut out = Vec::new();
    while idx.len() > 3 {
        let n = idx.len();
        let ear = (0..n).find(|&i| {
            let (a, b, c) = (idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]);
            if orient_sign(&pts[a], &pts[b], &pts[c]) >= 0 {
                return false;
            }
            !idx.iter().any(|&j| {
                j != a
                    && j != b
                    && j != c
                    && orient_sign(&pts[a], &pts[b], &pts[j]) <= 0
                    && orient_sign(&pts[b], &pts[c], &pts[j]) <= 0
                    && orient_sign(&pts[c], &pts[a], &pts[j]) <= 0
            })
        })?;
        out.push([idx[(ear + n - 1) % n], idx[ear], idx[(ear + 1) % n]]);
        idx.remove(ear);
    }
    if orient_sign(&pts[idx[0]], &pts[idx[1]], &pts[idx[2]]) >= 0 {
        return None;
    }
    out.push([idx[0], idx[1], idx[2]]);
    Some(out)
}

fn triangulate_face(sub: &Subdivision, face: &[String]) -> Result<Vec<[String; 3]>, CertificateError> {
    let p1: Vec<Point> = face.iter().map(|l| sub.pts[0][l].clone()).collect();
    let p2: Vec<Point> = face.iter().map(|l| sub.pts[1][l].clone()).collect();
    if face.len() == 3 {
        return Ok(vec![[face[0].clone(), face[1].clone(), face[2].clone()]]);
    }
    let labels = |t: &[usize; 3]| [face[t[0]].clone(), face[t[1]].clone(), face[t[2]].clone()];
    if p1 == p2 {
        if let Some(tris) = ear_clip_labelled(&p1) {
            return Ok(tris.iter().map(labels).collect());
        }
    }
    let poly = |pts: &[Point]| {
        LabelledPolygon::new(face.iter().zip(pts).map(|(l, p)| Vertex::new(l.clone(), p.clone())).collect())
    };
    match decide_zero_steiner(&poly(&p1), &poly(&p2)) {
        Ok(ZeroSteinerVerdict::Yes(pair)) => Ok(pair.t1.faces),
        _ => Err(CertificateError::Face(face[0].clone())),
    }
}

fn chosen_connector(layout: &ClauseLayout, a: &Assignment) -> Result<Option<usize>, CertificateError> {
    let want = layout.sign == Sign::Positive;
    for (i, v) in layout.variables.iter().enumerate() {
        let val = a.get(v).ok_or_else(|| CertificateError::MissingVariable(v.clone()))?;
        if *val == want {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Builds a compatible triangulation pair with exactly five Steiner points per clause.
pub fn build_certificate(r: &ReductionOutput, a: &Assignment) -> Result<CompatiblePair, CertificateError> {
    for v in &r.instance.variables {
        if !a.contains_key(v) {
            return Err(CertificateError::MissingVariable(v.clone()));
        }
    }
    if !r.instance.satisfied_by(a) {
        return Err(CertificateError::Unsatisfied);
    }
    let mut sub = Subdivision::new(&r.p1, &r.p2);
    let mut fans = Vec::new();
    for (k, c) in r.layout.clauses.iter().enumerate() {
        let chosen = chosen_connector(c, a)?.ok_or(CertificateError::Unsatisfied)?;
        let peak = |role: &str| &c.peaks[role];
        let z = peak(PRIMED[chosen]);
        let mu = &c.mu[chosen];
        let mut edges: Vec<(String, String)> = vec![
            (z.p1.clone(), mu.clone()),
            (z.p.clone(), mu.clone()),
            (z.p2.clone(), mu.clone()),
            (c.closures[chosen][0].clone(), mu.clone()),
            (c.closures[chosen][1].clone(), mu.clone()),
        ];
        for i in (0..3).filter(|&i| i != chosen) {
            edges.push((c.closures[i][0].clone(), c.closures[i][1].clone()));
        }
        let g = ClauseGeometry { layout: c, h: &r.layout.box_height };
        for fan in clause_fans(&g, k, chosen) {
            sub.add_point(&fan.label, fan.at[0].clone(), fan.at[1].clone());
            for role in &fan.peaks {
                let pk = peak(role);
                for l in [&pk.p1, &pk.p, &pk.p2] {
                    edges.push((fan.label.clone(), l.clone()));
                }
            }
            fans.push(fan);
        }
        for (x, y) in edges {
            if !(sub.segment_clear(0, &x, &y) && sub.segment_clear(1, &x, &y)) {
                return Err(CertificateError::BadEdge(x, y));
            }
            sub.add_edge(&x, &y);
        }
    }
    let faces = sub.bridge_all()?;
    let mut tris = Vec::new();
    for f in &faces {
        tris.extend(triangulate_face(&sub, &f.outer)?);
    }
    let steiner = |k: usize| fans.iter().map(|f| Vertex::new(f.label.clone(), f.at[k].clone())).collect::<Vec<_>>();
    let pair = CompatiblePair {
        t1: Triangulation { steiner: steiner(0), faces: tris.clone() },
        t2: Triangulation { steiner: steiner(1), faces: tris },
    };
    verify_compatible_pair(&r.p1, &r.p2, &pair).map_err(CertificateError::Invalid)?;
    Ok(pair)
}

fn neighbours(t: &Triangulation) -> HashMap<&str, BTreeSet<&str>> {
    let mut m: HashMap<&str, BTreeSet<&str>> = HashMap::new();
    for f in &t.faces {
        for i in 0..3 {
            let (a, b) = (f[i].as_str(), f[(i + 1) % 3].as_str());
            m.entry(a).or_default().insert(b);
            m.entry(b).or_default().insert(a);
        }
    }
    m
}

/// Reads an assignment off a certificate: each clause must link a primed peak to a μ-point.
pub fn extract_assignment(r: &ReductionOutput, pair: &CompatiblePair) -> Result<Assignment, ExtractError> {
    let nb = neighbours(&pair.t1);
    let mut mu_owner: HashMap<&str, &str> = HashMap::new();
    for c in &r.layout.clauses {
        for i in 0..3 {
            mu_owner.insert(c.mu[i].as_str(), c.variables[i].as_str());
        }
    }
    let mut forced: BTreeMap<String, bool> = BTreeMap::new();
    for (k, c) in r.layout.clauses.iter().enumerate() {
        let hit = PRIMED.iter().find_map(|role| {
            let apex = c.peaks[*role].p.as_str();
            nb.get(apex).and_then(|ns| ns.iter().find_map(|n| mu_owner.get(n).copied()))
        });
        let var = hit.ok_or(ExtractError::NoMuEdge(k))?;
        let val = c.sign == Sign::Positive;
        if let Some(old) = forced.insert(var.to_string(), val) {
            if old != val {
                return Err(ExtractError::Conflict(var.to_string()));
            }
        }
    }
    Ok(r.instance.variables.iter().map(|v| (v.clone(), forced.get(v).copied().unwrap_or(true))).collect())
}

/// Peaks whose apex touches nothing but its own flanks in the first triangulation.
pub fn unsupported_peaks(r: &ReductionOutput, pair: &CompatiblePair) -> Vec<String> {
    let nb = neighbours(&pair.t1);
    let mut out = Vec::new();
    for c in &r.layout.clauses {
        for pk in c.peaks.values() {
            let ok = nb.get(pk.p.as_str()).is_some_and(|ns| ns.iter().any(|n| *n != pk.p1 && *n != pk.p2));
            if !ok {
                out.push(pk.p.clone());
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------------------
// graph of commonly visible peak pairs

fn two_colouring(nodes: &[String], edges: &[(String, String)]) -> Option<HashMap<String, bool>> {
    let mut colour: HashMap<String, bool> = HashMap::new();
    for s in nodes {
        if colour.contains_key(s) {
            continue;
        }
        colour.insert(s.clone(), false);
        let mut queue = VecDeque::from([s.clone()]);
        while let Some(x) = queue.pop_front() {
            let cx = colour[&x];
            for (a, b) in edges {
                let y = if a == &x {
                    b
                } else if b == &x {
                    a
                } else {
                    continue;
                };
                match colour.get(y) {
                    Some(&cy) if cy == cx => return None,
                    Some(_) => {}
                    None => {
                        colour.insert(y.clone(), !cx);
                        queue.push_back(y.clone());
                    }
                }
            }
        }
    }
    Some(colour)
}

/// Maximum matching by augmenting paths and a minimum vertex cover from it.
fn matching_and_cover(nodes: &[String], edges: &[(String, String)]) -> (Vec<(String, String)>, Vec<String>, bool) {
    let Some(colour) = two_colouring(nodes, edges) else {
        return (vec![], vec![], false);
    };
    let n = nodes.len();
    let index: HashMap<&str, usize> = nodes.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        adj[i].push(j);
        adj[j].push(i);
    }
    let left: Vec<usize> = (0..n).filter(|&i| !colour[&nodes[i]]).collect();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    fn augment(x: usize, adj: &[Vec<usize>], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &y in &adj[x] {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            if mate[y].is_none_or(|z| augment(z, adj, mate, seen)) {
                mate[y] = Some(x);
                mate[x] = Some(y);
                return true;
            }
        }
        false
    }
    for &x in &left {
        augment(x, &adj, &mut mate, &mut vec![false; n]);
    }
    let mut matching: Vec<(String, String)> =
        left.iter().filter_map(|&x| mate[x].map(|y| (nodes[x].clone(), nodes[y].clone()))).collect();
    matching.sort();
    // König: Z = vertices reachable from free left vertices by alternating paths
    let mut z = vec![false; n];
    let mut queue: VecDeque<usize> = left.iter().copied().filter(|&x| mate[x].is_none()).collect();
    for &x in &queue {
        z[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if mate[x] == Some(y) || z[y] {
                continue;
            }
            z[y] = true;
            if let Some(w) = mate[y] {
                if !z[w] {
                    z[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cover: Vec<String> =
        (0..n).filter(|&i| if colour[&nodes[i]] { z[i] } else { !z[i] }).map(|i| nodes[i].clone()).collect();
    cover.sort();
    (matching, cover, true)
}

impl PeakVisibilityGraph {
    pub fn from_edges(nodes: Vec<String>, edges: Vec<(String, String)>) -> Self {
        let (matching, cover, bipartite) = matching_and_cover(&nodes, &edges);
        PeakVisibilityGraph { nodes, edges, bipartite, matching, cover }
    }

    pub fn is_vertex_cover(&self, set: &[&str]) -> bool {
        self.edges.iter().all(|(a, b)| set.contains(&a.as_str()) || set.contains(&b.as_str()))
    }
}

/// Pairs of peaks of one clause that see a common point in both regions.
pub fn build_graph_h(r: &ReductionOutput, clause: usize) -> Result<PeakVisibilityGraph, crate::regions::RegionError> {
    let c = &r.layout.clauses[clause];
    let mut both = vec![vec![true; 9]; 9];
    for reg in [&r.p1, &r.p2] {
        let pts: Vec<Point> = ROLES.iter().map(|x| reg.point_of(&c.peaks[*x].p).expect("peak label")).collect();
        let m = common_visibility_matrix(reg, &pts)?;
        for i in 0..9 {
            for j in 0..9 {
                both[i][j] &= m[i][j];
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..9 {
        for j in i + 1..9 {
            if both[i][j] {
                edges.push((ROLES[i].to_string(), ROLES[j].to_string()));
            }
        }
    }
    Ok(PeakVisibilityGraph::from_edges(ROLES.iter().map(|s| s.to_string()).collect(), edges))
}

/// Edges that lose their common visibility once a primed peak is linked outside the room.
fn cut_off(removed: &str) -> &'static [(&'static str, &'static str)] {
    match removed {
        "q'" => &[("r", "v"), ("r", "w"), ("s", "w")],
        "r'" => &[("r", "w"), ("s", "w")],
        _ => &[],
    }
}

/// Steiner points forced inside a clause: peaks left over minus a maximum matching.
pub fn steiner_lower_bound(g: &PeakVisibilityGraph, removed: &[&str]) -> usize {
    let keep: Vec<String> = g.nodes.iter().filter(|n| !removed.contains(&n.as_str())).cloned().collect();
    let dropped: BTreeSet<(&str, &str)> =
        removed.iter().flat_map(|r| cut_off(r).iter().flat_map(|&(a, b)| [(a, b), (b, a)])).collect();
    let edges: Vec<(String, String)> = g
        .edges
        .iter()
        .filter(|(a, b)| keep.contains(a) && keep.contains(b) && !dropped.contains(&(a.as_str(), b.as_str())))
        .cloned()
        .collect();
    let (m, _, _) = matching_and_cover(&keep, &edges);
    keep.len() - m.len()
}
