//! Monotone rectilinear planar 3-SAT instances, their drawings, and the slanted layout
//! consumed by the reduction.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{cross, q, qi, rat_serde, Point, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub sign: Sign,
    pub literals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    pub variables: Vec<String>,
    pub clauses: Vec<Clause>,
}

pub type Assignment = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    #[serde(with = "rat_serde")]
    pub x0: Rational,
    #[serde(with = "rat_serde")]
    pub y0: Rational,
    #[serde(with = "rat_serde")]
    pub x1: Rational,
    #[serde(with = "rat_serde")]
    pub y1: Rational,
}

impl Rect {
    pub fn new(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn from_ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        Rect::new(qi(x0), qi(y0), qi(x1), qi(y1))
    }

    fn meets(&self, o: &Rect) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }
}

/// Vertical connector for literal `literal` of clause `clause`, drawn at abscissa `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingEdge {
    pub clause: usize,
    pub literal: usize,
    #[serde(with = "rat_serde")]
    pub x: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingRects {
    pub variables: Vec<Rect>,
    pub clauses: Vec<Rect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatDrawing {
    #[serde(with = "rat_serde")]
    pub baseline: Rational,
    pub rects: DrawingRects,
    pub edges: Vec<DrawingEdge>,
}

/// On-disk instance format: the formula together with its drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub variables: Vec<String>,
    pub clauses: Vec<Clause>,
    pub drawing: SatDrawing,
}

impl InstanceFile {
    pub fn new(i: SatInstance, d: SatDrawing) -> Self {
        InstanceFile { variables: i.variables, clauses: i.clauses, drawing: d }
    }

    pub fn split(self) -> (SatInstance, SatDrawing) {
        (SatInstance { variables: self.variables, clauses: self.clauses }, self.drawing)
    }
}

impl SatInstance {
    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| {
            let want = c.sign == Sign::Positive;
            c.literals.iter().any(|l| a.get(l).copied() == Some(want))
        })
    }

    /// Every satisfying assignment, by enumeration. Intended for at most ~20 variables.
    pub fn satisfying_assignments(&self) -> Vec<Assignment> {
        let n = self.variables.len();
        assert!(n < 25, "truth-table enumeration over {n} variables");
        let mut out = Vec::new();
        for bits in 0u32..(1u32 << n) {
            let a: Assignment =
                self.variables.iter().enumerate().map(|(i, v)| (v.clone(), bits >> i & 1 == 1)).collect();
            if self.satisfied_by(&a) {
                out.push(a);
            }
        }
        out
    }
}

pub fn validate_instance(i: &SatInstance, d: &SatDrawing) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    let mut names = BTreeSet::new();
    for v in &i.variables {
        if v.is_empty() {
            errs.push("empty variable name".to_string());
        }
        if !names.insert(v.as_str()) {
            errs.push(format!("duplicate variable {v}"));
        }
    }
    for (k, c) in i.clauses.iter().enumerate() {
        if c.literals.is_empty() {
            errs.push(format!("clause {k} is empty"));
        }
        if c.literals.len() > 3 {
            errs.push(format!("clause {k} has {} literals", c.literals.len()));
        }
        for l in &c.literals {
            if !names.contains(l.as_str()) {
                errs.push(format!("clause {k} uses unknown variable {l}"));
            }
        }
    }
    if d.rects.variables.len() != i.variables.len() {
        errs.push("one rectangle per variable required".to_string());
    }
    if d.rects.clauses.len() != i.clauses.len() {
        errs.push("one rectangle per clause required".to_string());
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let ell = &d.baseline;
    let mut rects: Vec<(String, &Rect)> = Vec::new();
    for (k, r) in d.rects.variables.iter().enumerate() {
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            errs.push(format!("variable rectangle {k} is degenerate"));
        }
        if !(&r.y0 < ell && ell < &r.y1) {
            errs.push(format!("variable rectangle {k} not on baseline"));
        }
        rects.push((format!("variable {}", i.variables[k]), r));
    }
    for (k, r) in d.rects.clauses.iter().enumerate() {
        if r.x0 >= r.x1 || r.y0 >= r.y1 {
            errs.push(format!("clause rectangle {k} is degenerate"));
        }
        match i.clauses[k].sign {
            Sign::Positive if &r.y0 <= ell => errs.push(format!("positive clause {k} not above baseline")),
            Sign::Negative if &r.y1 >= ell => errs.push(format!("negative clause {k} not below baseline")),
            _ => {}
        }
        rects.push((format!("clause {k}"), r));
    }
    for a in 0..rects.len() {
        for b in a + 1..rects.len() {
            if rects[a].1.meets(rects[b].1) {
                errs.push(format!("not planar: {} and {} intersect", rects[a].0, rects[b].0));
            }
        }
    }
    let var_index: HashMap<&str, usize> = i.variables.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    let mut seen = BTreeSet::new();
    let mut segs: Vec<(usize, Rational, Rational, Rational, usize, usize)> = Vec::new();
    for (k, e) in d.edges.iter().enumerate() {
        let Some(clause) = i.clauses.get(e.clause) else {
            errs.push(format!("edge {k} refers to unknown clause {}", e.clause));
            continue;
        };
        let Some(lit) = clause.literals.get(e.literal) else {
            errs.push(format!("edge {k} refers to unknown literal {}", e.literal));
            continue;
        };
        if !seen.insert((e.clause, e.literal)) {
            errs.push(format!("duplicate edge for clause {} literal {}", e.clause, e.literal));
            continue;
        }
        let vi = var_index[lit.as_str()];
        let vr = &d.rects.variables[vi];
        let cr = &d.rects.clauses[e.clause];
        if !(vr.x0 < e.x && e.x < vr.x1 && cr.x0 < e.x && e.x < cr.x1) {
            errs.push(format!("edge {k} is not vertical between its rectangles"));
            continue;
        }
        let (lo, hi) = match clause.sign {
            Sign::Positive => (vr.y1.clone(), cr.y0.clone()),
            Sign::Negative => (cr.y1.clone(), vr.y0.clone()),
        };
        if lo >= hi {
            errs.push(format!("edge {k} has no length"));
            continue;
        }
        segs.push((k, e.x.clone(), lo, hi, vi, i.variables.len() + e.clause));
    }
    for (c, clause) in i.clauses.iter().enumerate() {
        for l in 0..clause.literals.len() {
            if !seen.contains(&(c, l)) {
                errs.push(format!("missing edge for clause {c} literal {l}"));
            }
        }
    }
    for a in 0..segs.len() {
        let (ka, xa, loa, hia, va, ca) = &segs[a];
        for (ri, (name, r)) in rects.iter().enumerate() {
            if ri == *va || ri == *ca {
                continue;
            }
            if &r.x0 <= xa && xa <= &r.x1 && &r.y0 <= hia && loa <= &r.y1 {
                errs.push(format!("not planar: edge {ka} meets {name}"));
            }
        }
        for (kb, xb, lob, hib, _, _) in &segs[a + 1..] {
            if xa == xb && loa <= hib && lob <= hia {
                errs.push(format!("not planar: edges {ka} and {kb} cross"));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// Pads every clause to exactly three literals by repeating its rightmost literal.
/// Each copy gets its own connector just right of the original one.
pub fn normalize_to_three(i: &SatInstance, d: &SatDrawing) -> (SatInstance, SatDrawing) {
    let mut xs: Vec<Rational> = Vec::new();
    for r in d.rects.variables.iter().chain(&d.rects.clauses) {
        xs.push(r.x0.clone());
        xs.push(r.x1.clone());
    }
    xs.extend(d.edges.iter().map(|e| e.x.clone()));
    let mut inst = i.clone();
    let mut draw = d.clone();
    for (c, clause) in i.clauses.iter().enumerate() {
        let n = clause.literals.len();
        if n >= 3 || n == 0 {
            continue;
        }
        let last = d
            .edges
            .iter()
            .filter(|e| e.clause == c)
            .max_by(|a, b| a.x.cmp(&b.x))
            .expect("validated drawing has an edge per literal");
        let gap =
            xs.iter().filter(|x| *x > &last.x).map(|x| x - &last.x).min().expect("edge lies inside its rectangles");
        let lit = clause.literals[last.literal].clone();
        for j in 1..=(3 - n) {
            inst.clauses[c].literals.push(lit.clone());
            draw.edges.push(DrawingEdge { clause: c, literal: n + j - 1, x: &last.x + &gap * q(j as i64, 3) });
        }
    }
    (inst, draw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableBox {
    pub variable: String,
    pub rect: Rect,
}

/// Attachment of one connector to a variable box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub clause: usize,
    pub literal: usize,
    pub variable: usize,
    pub side: Side,
    pub slot: usize,
    /// Abscissa where the connector meets the box.
    #[serde(with = "rat_serde")]
    pub x: Rational,
    /// Point on the opposite box side hit by the connector's extension.
    pub mu: Point,
    /// Connector parallelogram, from the box upwards (mirrored for bottom ports).
    pub corners: [Point; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlantedClause {
    pub sign: Sign,
    pub level: usize,
    /// Port indices ordered by abscissa.
    pub ports: [usize; 3],
    /// Floor height of the clause room before slanting, measured away from the box.
    #[serde(with = "rat_serde")]
    pub floor: Rational,
    pub room: [Point; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlantedDrawing {
    #[serde(with = "rat_serde")]
    pub box_width: Rational,
    #[serde(with = "rat_serde")]
    pub box_height: Rational,
    #[serde(with = "rat_serde")]
    pub channel_half_width: Rational,
    pub boxes: Vec<VariableBox>,
    pub ports: Vec<Port>,
    pub clauses: Vec<SlantedClause>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlantError {
    #[error("clause {0} does not have exactly three literals")]
    NotNormalized(usize),
    #[error("clauses {0} and {1} interleave; drawing is not planar")]
    Interleaved(usize, usize),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

pub const BOX_GAP: i64 = 2;

/// Maps unslanted clause-frame coordinates (box at `0 <= y <= h`, clauses above) to the
/// final plane: a 45-degree shear above the box, mirrored below it for negative clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub sign: Sign,
    pub h: Rational,
}

impl Frame {
    pub fn apply(&self, p: &Point) -> Point {
        let x = &p.x + &p.y - &self.h;
        match self.sign {
            Sign::Positive => Point::new(x, p.y.clone()),
            Sign::Negative => Point::new(x, &self.h - &p.y),
        }
    }

    /// Whether the map reverses orientation.
    pub fn mirrors(&self) -> bool {
        self.sign == Sign::Negative
    }
}

pub fn slant_drawing(i: &SatInstance, d: &SatDrawing) -> Result<SlantedDrawing, SlantError> {
    validate_instance(i, d).map_err(|e| SlantError::Invalid(e.join("; ")))?;
    for (k, c) in i.clauses.iter().enumerate() {
        if c.literals.len() != 3 {
            return Err(SlantError::NotNormalized(k));
        }
    }
    let nc = i.clauses.len() as i64;
    let w = qi(9 * nc + 1);
    let h = qi(3 * nc + 1);
    let wm = q(1, 20);
    let half = q(1, 2);
    let mut order: Vec<usize> = (0..i.variables.len()).collect();
    order.sort_by(|a, b| d.rects.variables[*a].x0.cmp(&d.rects.variables[*b].x0));
    let var_index: HashMap<&str, usize> = i.variables.iter().enumerate().map(|(k, v)| (v.as_str(), k)).collect();
    let mut boxes = Vec::new();
    let mut origin = vec![Rational::zero(); i.variables.len()];
    for (pos, &v) in order.iter().enumerate() {
        let x0 = (&w + qi(BOX_GAP)) * qi(pos as i64);
        origin[v] = x0.clone();
        boxes.push(VariableBox {
            variable: i.variables[v].clone(),
            rect: Rect::new(x0.clone(), Rational::zero(), &x0 + &w, h.clone()),
        });
    }
    // slots per (variable, side), by drawing abscissa
    let mut groups: BTreeMap<(usize, Side), Vec<&DrawingEdge>> = BTreeMap::new();
    for e in &d.edges {
        let c = &i.clauses[e.clause];
        let side = if c.sign == Sign::Positive { Side::Top } else { Side::Bottom };
        groups.entry((var_index[c.literals[e.literal].as_str()], side)).or_default().push(e);
    }
    let mut ports = Vec::new();
    let mut port_of: HashMap<(usize, usize), usize> = HashMap::new();
    for ((v, side), mut es) in groups {
        es.sort_by(|a, b| a.x.cmp(&b.x));
        for (slot, e) in es.iter().enumerate() {
            let x = &origin[v] + &h + &half + qi(slot as i64);
            let frame = Frame { sign: i.clauses[e.clause].sign, h: h.clone() };
            let mu = frame.apply(&Point::new(x.clone(), Rational::zero()));
            port_of.insert((e.clause, e.literal), ports.len());
            ports.push(Port {
                clause: e.clause,
                literal: e.literal,
                variable: v,
                side,
                slot,
                x,
                mu,
                corners: std::array::from_fn(|_| Point::from_ints(0, 0)),
            });
        }
    }
    // nesting levels per side
    let span = |c: usize| -> (Rational, Rational) {
        let xs: Vec<&Rational> = (0..3).map(|l| &ports[port_of[&(c, l)]].x).collect();
        (xs.iter().min().copied().unwrap().clone(), xs.iter().max().copied().unwrap().clone())
    };
    let spans: Vec<(Rational, Rational)> = (0..i.clauses.len()).map(span).collect();
    let mut by_width: Vec<usize> = (0..i.clauses.len()).collect();
    by_width.sort_by(|a, b| (&spans[*a].1 - &spans[*a].0).cmp(&(&spans[*b].1 - &spans[*b].0)).then(a.cmp(b)));
    let mut level = vec![0usize; i.clauses.len()];
    for (pos, &c) in by_width.iter().enumerate() {
        let (lo, hi) = &spans[c];
        let mut lv = 1;
        for &o in &by_width[..pos] {
            if i.clauses[o].sign != i.clauses[c].sign {
                continue;
            }
            let (olo, ohi) = &spans[o];
            let inside = lo < olo && ohi < hi;
            let apart = ohi < lo || hi < olo;
            if inside {
                lv = lv.max(level[o] + 1);
            } else if !apart {
                return Err(SlantError::Interleaved(o, c));
            }
        }
        level[c] = lv;
    }
    let mut clauses = Vec::new();
    for (c, clause) in i.clauses.iter().enumerate() {
        let frame = Frame { sign: clause.sign, h: h.clone() };
        let floor = &h + qi(2 * level[c] as i64 - 1);
        let mut idx: Vec<usize> = (0..3).map(|l| port_of[&(c, l)]).collect();
        idx.sort_by(|a, b| ports[*a].x.cmp(&ports[*b].x));
        for &p in &idx {
            let x = ports[p].x.clone();
            let raw = [
                Point::new(&x - &wm, h.clone()),
                Point::new(&x - &wm, floor.clone()),
                Point::new(&x + &wm, floor.clone()),
                Point::new(&x + &wm, h.clone()),
            ];
            ports[p].corners = raw.map(|pt| frame.apply(&pt));
        }
        let xl = &ports[idx[0]].x - q(3, 10);
        let xr = &ports[idx[2]].x + q(4, 10);
        let top = &floor + Rational::one();
        let raw = [
            Point::new(xl.clone(), floor.clone()),
            Point::new(xl, top.clone()),
            Point::new(xr.clone(), top),
            Point::new(xr, floor.clone()),
        ];
        clauses.push(SlantedClause {
            sign: clause.sign,
            level: level[c],
            ports: [idx[0], idx[1], idx[2]],
            floor,
            room: raw.map(|pt| frame.apply(&pt)),
        });
    }
    Ok(SlantedDrawing { box_width: w, box_height: h, channel_half_width: wm, boxes, ports, clauses })
}

impl SlantedDrawing {
    /// Segment along a connector's extension through its box, from the port to its μ-point.
    pub fn extension(&self, port: usize) -> (Point, Point) {
        let p = &self.ports[port];
        let y = match p.side {
            Side::Top => self.box_height.clone(),
            Side::Bottom => Rational::zero(),
        };
        (Point::new(p.x.clone(), y), p.mu.clone())
    }

    /// Pairs of shapes that overlap although they are not declared incident.
    pub fn planarity_violations(&self) -> Vec<String> {
        enum Kind {
            Box(usize),
            Room(usize),
            Connector(usize, usize),
        }
        let mut shapes: Vec<(String, Vec<Point>, Kind)> = Vec::new();
        for (k, b) in self.boxes.iter().enumerate() {
            let r = &b.rect;
            let pts = vec![
                Point::new(r.x0.clone(), r.y0.clone()),
                Point::new(r.x0.clone(), r.y1.clone()),
                Point::new(r.x1.clone(), r.y1.clone()),
                Point::new(r.x1.clone(), r.y0.clone()),
            ];
            shapes.push((format!("box {k}"), pts, Kind::Box(k)));
        }
        for (k, c) in self.clauses.iter().enumerate() {
            shapes.push((format!("room {k}"), c.room.to_vec(), Kind::Room(k)));
        }
        for (k, p) in self.ports.iter().enumerate() {
            shapes.push((format!("connector {k}"), p.corners.to_vec(), Kind::Connector(p.clause, self.box_of(p))));
        }
        let incident = |a: &Kind, b: &Kind| match (a, b) {
            (Kind::Connector(c, _), Kind::Room(r)) | (Kind::Room(r), Kind::Connector(c, _)) => c == r,
            (Kind::Connector(_, x), Kind::Box(b)) | (Kind::Box(b), Kind::Connector(_, x)) => x == b,
            _ => false,
        };
        let mut out = Vec::new();
        for a in 0..shapes.len() {
            for b in a + 1..shapes.len() {
                let (na, pa, ka) = &shapes[a];
                let (nb, pb, kb) = &shapes[b];
                let hit = if incident(ka, kb) { convex_interiors_meet(pa, pb) } else { convex_closures_meet(pa, pb) };
                if hit {
                    out.push(format!("{na} meets {nb}"));
                }
            }
        }
        out
    }

    /// Box (left-to-right position) that a port attaches to.
    pub fn box_of(&self, p: &Port) -> usize {
        self.boxes.iter().position(|b| b.rect.x0 < p.x && p.x < b.rect.x1).expect("port lies on a box")
    }
}

/// Separating-axis test on convex polygons; `strict` ignores boundary contact.
fn convex_separated(a: &[Point], b: &[Point], strict: bool) -> bool {
    for poly in [a, b] {
        for i in 0..poly.len() {
            let e = poly[(i + 1) % poly.len()].sub(&poly[i]);
            let proj = |p: &Point| cross(&e, &p.sub(&poly[i]));
            let (amin, amax) = min_max(a.iter().map(proj));
            let (bmin, bmax) = min_max(b.iter().map(proj));
            let sep = if strict { amax <= bmin || bmax <= amin } else { amax < bmin || bmax < amin };
            if sep {
                return true;
            }
        }
    }
    false
}

fn min_max(it: impl Iterator<Item = Rational>) -> (Rational, Rational) {
    let v: Vec<Rational> = it.collect();
    (v.iter().min().unwrap().clone(), v.iter().max().unwrap().clone())
}

pub fn convex_interiors_meet(a: &[Point], b: &[Point]) -> bool {
    !convex_separated(a, b, true)
}

pub fn convex_closures_meet(a: &[Point], b: &[Point]) -> bool {
    !convex_separated(a, b, false)
}

/// A drawing for an instance whose clauses, per side, use pairwise distinct variables and
/// whose variable spans are disjoint or nested strictly between two consecutive literals.
/// Variables sit left to right in list order; literals must be listed left to right.
pub fn ladder_drawing(i: &SatInstance) -> Option<SatDrawing> {
    let pos: HashMap<&str, i64> = i.variables.iter().enumerate().map(|(k, v)| (v.as_str(), k as i64)).collect();
    let mut level = vec![0usize; i.clauses.len()];
    let idx: Vec<Vec<i64>> = i.clauses.iter().map(|c| c.literals.iter().map(|l| pos[l.as_str()]).collect()).collect();
    if idx.iter().any(|v| v.is_empty() || v.windows(2).any(|w| w[0] >= w[1])) {
        return None;
    }
    let mut order: Vec<usize> = (0..i.clauses.len()).collect();
    order.sort_by_key(|&c| idx[c].last().unwrap() - idx[c][0]);
    for (k, &c) in order.iter().enumerate() {
        let (lo, hi) = (idx[c][0], *idx[c].last().unwrap());
        let mut lv = 1;
        for &o in &order[..k] {
            if i.clauses[o].sign != i.clauses[c].sign {
                continue;
            }
            let (olo, ohi) = (idx[o][0], *idx[o].last().unwrap());
            if ohi < lo || hi < olo {
                continue;
            }
            let nested = idx[c].windows(2).any(|w| w[0] < olo && ohi < w[1]);
            if !nested {
                return None;
            }
            lv = lv.max(level[o] + 1);
        }
        level[c] = lv;
    }
    let variables = (0..i.variables.len() as i64).map(|k| Rect::from_ints(10 * k, -1, 10 * k + 6, 1)).collect();
    let mut clauses = Vec::new();
    let mut edges = Vec::new();
    for (c, clause) in i.clauses.iter().enumerate() {
        let (lo, hi) = (idx[c][0], *idx[c].last().unwrap());
        let l = level[c] as i64;
        let r = match clause.sign {
            Sign::Positive => Rect::from_ints(10 * lo + 2, 2 * l, 10 * hi + 4, 2 * l + 1),
            Sign::Negative => Rect::from_ints(10 * lo + 2, -2 * l - 1, 10 * hi + 4, -2 * l),
        };
        clauses.push(r);
        for (k, v) in idx[c].iter().enumerate() {
            edges.push(DrawingEdge { clause: c, literal: k, x: qi(10 * v + 3) });
        }
    }
    Some(SatDrawing { baseline: qi(0), rects: DrawingRects { variables, clauses }, edges })
}

/// The two-clause ladder `(x1 ∨ x2 ∨ x3) ∧ (¬x1 ∨ ¬x2 ∨ ¬x3)`.
pub fn ladder2() -> (SatInstance, SatDrawing) {
    let vars = ["x1", "x2", "x3"];
    let inst = SatInstance {
        variables: vars.iter().map(|s| s.to_string()).collect(),
        clauses: [Sign::Positive, Sign::Negative]
            .into_iter()
            .map(|sign| Clause { sign, literals: vars.iter().map(|s| s.to_string()).collect() })
            .collect(),
    };
    let d = ladder_drawing(&inst).expect("ladder is planar");
    (inst, d)
}

/// Random satisfiable instance with a ladder drawing; `None` when the draw was rejected.
pub fn random_ladder<R: rand::Rng>(rng: &mut R, max_clauses: usize) -> Option<(SatInstance, SatDrawing)> {
    let nv = rng.gen_range(3..=6);
    let nc = rng.gen_range(1..=max_clauses);
    let variables: Vec<String> = (1..=nv).map(|k| format!("x{k}")).collect();
    let mut clauses = Vec::new();
    for _ in 0..nc {
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let len = rng.gen_range(1..=3usize);
        let mut picked = rand::seq::index::sample(rng, nv, len).into_vec();
        picked.sort_unstable();
        clauses.push(Clause { sign, literals: picked.iter().map(|&v| variables[v].clone()).collect() });
    }
    let inst = SatInstance { variables, clauses };
    let d = ladder_drawing(&inst)?;
    if inst.satisfying_assignments().is_empty() {
        return None;
    }
    Some((inst, d))
}
