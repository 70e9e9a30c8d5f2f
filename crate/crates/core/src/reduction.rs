//! Construction of the compatible region pair from a slanted SAT drawing.
//!
//! Every clause gets a room joined to its variable boxes by three thin channels. Both
//! regions share one label sequence; they differ only inside rooms and in one hole per
//! clause. Clause geometry is designed in an unslanted room frame whose origin is the
//! floor point above the leftmost connector; [`Frame`] maps it to the plane.
//!
//! Peaks in the first region are narrow spikes aimed along fixed chords. In the second
//! region the peaks `q`, `r`, `s` are flattened into the wall and the other six become
//! long shafts whose beams either land on the clause hole or run down a channel.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{
    q, qi, rat_serde, rational_bit_length, segment_distance_lower_bound, segments_intersect, signed_area2,
    Intersection, Point, Rational, Segment,
};
use crate::regions::{compatible, find_dents, validate_region, DentKind, LabelledPolygon, PolygonalRegion, Vertex};
use crate::satmodel::{
    normalize_to_three, slant_drawing, validate_instance, Frame, SatDrawing, SatInstance, Side, Sign, SlantError,
    SlantedDrawing,
};

/// Peak roles of a clause gadget.
pub const ROLES: [&str; 9] = ["u", "v", "w", "q", "q'", "r", "r'", "s", "s'"];
pub const PRIMED: [&str; 3] = ["q'", "r'", "s'"];
/// Peaks whose beams in the second region end on the clause hole.
pub const LEFT: [&str; 3] = ["u", "v", "w"];

/// Safety divisor applied to the smallest clearance.
pub const SAFETY: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionParams {
    #[serde(with = "rat_serde")]
    pub tau: Rational,
    #[serde(with = "rat_serde")]
    pub channel_half_width: Rational,
    #[serde(with = "rat_serde")]
    pub slot_spacing: Rational,
    /// Clause hole in room coordinates, first and second region.
    pub hole: [Vec<Point>; 2],
}

/// Labels of one peak: wall guard, flank, peak, flank, wall guard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakLabels {
    pub a: String,
    pub p1: String,
    pub p: String,
    pub p2: String,
    pub d: String,
}

/// A straight line used during construction, in plane coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePoint {
    pub a: String,
    pub b: String,
    pub at: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseTrace {
    /// Axis of each peak's cone in the first region.
    pub chords: BTreeMap<String, TraceLine>,
    /// Axis of each shaft's beam in the second region.
    pub beams: BTreeMap<String, TraceLine>,
    /// Crossings of chords.
    pub crossings: Vec<TracePoint>,
    /// Smallest clearance between a chord or beam and anything it must avoid.
    #[serde(with = "rat_serde")]
    pub clearance: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseLayout {
    pub sign: Sign,
    pub level: usize,
    /// Variable of the connector under `q'`, `r'`, `s'`.
    pub variables: [String; 3],
    pub peaks: BTreeMap<String, PeakLabels>,
    /// Inward dents of the second region, the deep one first.
    pub notches: Vec<[String; 3]>,
    /// Label of the μ-point reached from `q'`, `r'`, `s'`.
    pub mu: [String; 3],
    pub hole: Vec<String>,
    /// Corner labels of the three channels where they meet the room floor (left, right).
    pub mouths: [[String; 2]; 3],
    /// Corner labels a little below the room floor (left, right).
    pub closures: [[String; 2]; 3],
    /// Room plus the channels, in first-region coordinates.
    pub mask: LabelledPolygon,
    /// Room frame: origin and mapping to the plane.
    pub origin: Point,
    #[serde(with = "rat_serde")]
    pub x2: Rational,
    #[serde(with = "rat_serde")]
    pub x3: Rational,
    pub trace: ClauseTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableLayout {
    pub name: String,
    pub mask: LabelledPolygon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetLayout {
    #[serde(with = "rat_serde")]
    pub box_height: Rational,
    pub clauses: Vec<ClauseLayout>,
    pub variables: Vec<VariableLayout>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub instance: SatInstance,
    pub p1: PolygonalRegion,
    pub p2: PolygonalRegion,
    pub k: usize,
    pub layout: GadgetLayout,
    pub params: ReductionParams,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error(transparent)]
    Slant(#[from] SlantError),
    #[error("nonpositive clearance in clause {0}")]
    Clearance(usize),
    #[error("construction produced an invalid region: {0}")]
    Construction(String),
}

impl ClauseLayout {
    pub fn frame(&self, h: &Rational) -> Frame {
        Frame { sign: self.sign, h: h.clone() }
    }

    /// Room coordinates to plane coordinates.
    pub fn to_plane(&self, h: &Rational, p: &Point) -> Point {
        self.frame(h).apply(&self.origin.add(p))
    }

    /// Plane coordinates to room coordinates.
    pub fn to_room(&self, h: &Rational, p: &Point) -> Point {
        let y = match self.sign {
            Sign::Positive => p.y.clone(),
            Sign::Negative => h - &p.y,
        };
        let x = &p.x - &y + h;
        Point::new(x, y).sub(&self.origin)
    }
}

// ---------------------------------------------------------------------------------------
// room geometry in room coordinates

struct RoomSpec {
    x2: Rational,
    x3: Rational,
    /// Room-frame height of the box top below the floor (negative).
    box_top: Rational,
    /// Room-frame height of the far box side (negative).
    box_bottom: Rational,
}

fn p(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

fn pq(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
    Point::new(q(xn, xd), q(yn, yd))
}

fn wm() -> Rational {
    q(1, 20)
}

fn g() -> Rational {
    q(1, 50)
}

impl RoomSpec {
    fn xl(&self) -> Rational {
        q(-3, 10)
    }

    fn xr(&self) -> Rational {
        &self.x3 + q(2, 5)
    }

    fn xs(&self) -> [Rational; 3] {
        [Rational::zero(), self.x2.clone(), self.x3.clone()]
    }

    /// Left-wall mouth heights in the two regions.
    fn left_height(role: &str) -> [Rational; 2] {
        match role {
            "w" => [q(3, 20), q(3, 10)],
            "v" => [q(2, 5), q(9, 20)],
            "u" => [q(1, 2), q(3, 5)],
            "q" => [q(3, 5), q(4, 5)],
            _ => unreachable!(),
        }
    }

    /// Mouth of a peak in region `k` (0 or 1) and the wall direction there.
    fn mouth(&self, role: &str, k: usize) -> (Point, Point) {
        let one = Rational::one();
        let e = q(1, 10);
        match role {
            "u" | "v" | "w" | "q" => (p(self.xl(), Self::left_height(role)[k].clone()), pq(0, 1, 1, 1)),
            "q'" => (p(Rational::zero(), one), pq(1, 1, 0, 1)),
            "r" => (p(&self.x2 - &e, one), pq(1, 1, 0, 1)),
            "r'" => (p(self.x2.clone(), one), pq(1, 1, 0, 1)),
            "s'" => (p(self.x3.clone(), one), pq(1, 1, 0, 1)),
            "s" => (p(&self.x3 - q(3, 20), Rational::zero()), pq(-1, 1, 0, 1)),
            _ => unreachable!(),
        }
    }

    /// Far end of a first-region chord.
    fn chord_end(&self, role: &str) -> Point {
        let e = q(1, 10);
        let one = Rational::one();
        match role {
            "u" => p(self.xl() + &e, one),
            "q" => p(e.clone(), one),
            "v" => p(&self.x2 - q(1, 20), one),
            "w" => p(self.xr(), q(7, 20)),
            "r" => p(&self.x2 + &e, Rational::zero()),
            "s" => p(&self.x3 + q(1, 20), one),
            "q'" => p(Rational::zero(), self.box_top.clone()),
            "r'" => p(self.x2.clone(), self.box_top.clone()),
            "s'" => p(self.x3.clone(), self.box_top.clone()),
            _ => unreachable!(),
        }
    }

    /// Far end of a second-region beam.
    fn beam_end(&self, role: &str) -> Point {
        match role {
            "u" => pq(-1, 50, 0, 1),
            "v" => pq(-11, 400, 0, 1),
            "w" => pq(-7, 200, 0, 1),
            _ => self.chord_end(role),
        }
    }

    fn hole(k: usize) -> Vec<Point> {
        let top = if k == 0 { [q(-1, 25), q(-1, 50)] } else { [q(-9, 200), q(-1, 100)] };
        vec![
            pq(-7, 200, -1, 20),
            pq(-1, 40, -1, 20),
            p(top[1].clone(), Rational::zero()),
            p(top[0].clone(), Rational::zero()),
        ]
    }

    /// First-region vertices that chords must keep clear of, excluding peak groups.
    fn structure(&self, k: usize) -> Vec<(String, Point)> {
        let (xl, xr) = (self.xl(), self.xr());
        let zero = Rational::zero;
        let one = Rational::one;
        let mut out = vec![
            ("BL".to_string(), p(xl.clone(), zero())),
            ("TL".to_string(), p(xl.clone(), one())),
            ("TR".to_string(), p(xr.clone(), one())),
            ("BR".to_string(), p(xr.clone(), zero())),
        ];
        for (i, x) in self.xs().iter().enumerate() {
            for (tag, dx) in [("l", -wm()), ("r", wm())] {
                out.push((format!("m{i}{tag}"), p(x + &dx, zero())));
                out.push((format!("c{i}{tag}"), p(x + &dx, q(-1, 10))));
                out.push((format!("b{i}{tag}"), p(x + &dx, self.box_top.clone())));
            }
        }
        for (j, pt) in Self::hole(k).into_iter().enumerate() {
            out.push((format!("h{j}"), pt));
        }
        for (j, n) in self.notches().iter().enumerate() {
            for (t, pt) in n.points(k).into_iter().enumerate() {
                out.push((format!("n{j}.{t}"), pt));
            }
        }
        out
    }

    fn notches(&self) -> Vec<Notch> {
        let xr = self.xr();
        let mut v = vec![Notch {
            centre: p(&self.x3 + q(1, 5), Rational::zero()),
            along: pq(-1, 1, 0, 1),
            inward: pq(0, 1, 1, 1),
            half: q(1, 20),
            depth: q(3, 10),
            sag: Rational::zero(),
        }];
        for y in [q(21, 25), q(16, 25), q(11, 25)] {
            v.push(Notch {
                centre: p(xr.clone(), y),
                along: pq(0, 1, -1, 1),
                inward: pq(-1, 1, 0, 1),
                half: q(3, 50),
                depth: q(1, 50),
                sag: q(1, 25),
            });
        }
        v
    }
}

struct Notch {
    centre: Point,
    along: Point,
    inward: Point,
    half: Rational,
    depth: Rational,
    /// Tip offset along the wall, so the upper flank stays visible from the floor notch.
    sag: Rational,
}

impl Notch {
    /// Guard, flank, tip, flank, guard in region `k`.
    fn points(&self, k: usize) -> Vec<Point> {
        let c = &self.centre;
        let off = |s: Rational| c.add(&self.along.scale(&s));
        let tip =
            if k == 0 { c.clone() } else { c.add(&self.inward.scale(&self.depth)).add(&self.along.scale(&self.sag)) };
        let outer = &self.half + q(1, 50);
        vec![off(-outer.clone()), off(-self.half.clone()), tip, off(self.half.clone()), off(outer)]
    }
}

fn l1(d: &Point) -> Rational {
    d.x.abs() + d.y.abs()
}

fn linf(d: &Point) -> Rational {
    d.x.abs().max(d.y.abs())
}

/// Pairs of first-region chords that are meant to cross.
pub const CROSSING_PAIRS: [(&str, &str); 11] = [
    ("q", "u"),
    ("q", "q'"),
    ("r", "v"),
    ("r", "w"),
    ("r", "r'"),
    ("s", "w"),
    ("s", "s'"),
    ("v", "q'"),
    ("w", "q'"),
    ("w", "r'"),
    ("w", "s'"),
];

fn meant_to_cross(a: &str, b: &str) -> bool {
    CROSSING_PAIRS.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
}

type Segments = BTreeMap<String, (Point, Point)>;

/// Room-coordinate chords and beams with their clearance.
fn room_trace(spec: &RoomSpec) -> (Segments, Segments, Rational) {
    let mut chords = BTreeMap::new();
    let mut beams = BTreeMap::new();
    for role in ROLES {
        chords.insert(role.to_string(), (spec.mouth(role, 0).0, spec.chord_end(role)));
        if role != "q" && role != "r" && role != "s" {
            beams.insert(role.to_string(), (spec.mouth(role, 1).0, spec.beam_end(role)));
        }
    }
    let mut clearance: Option<Rational> = None;
    let mut take = |c: Rational| {
        clearance = Some(match clearance.take() {
            Some(o) if o <= c => o,
            _ => c,
        });
    };
    for (k, lines) in [(0usize, &chords), (1, &beams)] {
        let structure = spec.structure(k);
        let groups: Vec<(String, Point)> = ROLES
            .iter()
            .flat_map(|r| {
                let (m, t) = spec.mouth(r, k);
                [(-g(), "A"), (Rational::zero(), "m"), (g(), "D")]
                    .into_iter()
                    .map(move |(s, tag)| (format!("{r}.{tag}"), m.add(&t.scale(&s))))
            })
            .collect();
        for (role, (a, b)) in lines.iter() {
            for (name, pt) in structure.iter().chain(groups.iter()) {
                if name.starts_with(&format!("{role}.")) || pt == b {
                    continue;
                }
                // the far end sits on a wall next to nothing but that wall
                take(segment_distance_lower_bound(pt, a, b));
            }
            for (other, (c, d)) in lines.iter() {
                if other <= role {
                    continue;
                }
                let allowed = k == 0 && meant_to_cross(role, other);
                let beams_meet = k == 1 && LEFT.contains(&role.as_str()) && LEFT.contains(&other.as_str());
                if allowed || beams_meet {
                    continue;
                }
                let d1 = segment_distance_lower_bound(a, c, d).min(segment_distance_lower_bound(b, c, d));
                let d2 = segment_distance_lower_bound(c, a, b).min(segment_distance_lower_bound(d, a, b));
                let crossing = matches!(
                    segments_intersect(
                        &Segment { a: a.clone(), b: b.clone() },
                        &Segment { a: c.clone(), b: d.clone() }
                    ),
                    Intersection::ProperCrossing(_) | Intersection::Touching(_)
                );
                take(if crossing { Rational::zero() } else { d1.min(d2) });
            }
        }
    }
    (chords, beams, clearance.expect("gadget has chords"))
}

/// Smallest clearance over all clauses, divided by the safety constant.
pub fn compute_tolerance(traces: &[ClauseTrace]) -> Result<Rational, ReductionError> {
    let mut best: Option<Rational> = None;
    for (k, t) in traces.iter().enumerate() {
        if !t.clearance.is_positive() {
            return Err(ReductionError::Clearance(k));
        }
        if best.as_ref().is_none_or(|b| &t.clearance < b) {
            best = Some(t.clearance.clone());
        }
    }
    Ok(best.unwrap_or_else(|| q(1, 100)) / qi(SAFETY))
}

// ---------------------------------------------------------------------------------------
// assembling boundary chains shared by both regions

#[derive(Debug, Clone)]
struct Dv {
    label: String,
    a: Point,
    b: Point,
}

fn dv(label: String, a: Point, b: Point) -> Dv {
    Dv { label, a, b }
}

fn same(label: String, a: Point) -> Dv {
    Dv { label, b: a.clone(), a }
}

#[derive(Default)]
struct Builder {
    pts: BTreeMap<String, (Point, Point)>,
    succ: BTreeMap<String, String>,
}

impl Builder {
    fn vertex(&mut self, v: &Dv) {
        if let Some((a, b)) = self.pts.get(&v.label) {
            assert!(a == &v.a && b == &v.b, "label {} placed twice at different points", v.label);
        } else {
            self.pts.insert(v.label.clone(), (v.a.clone(), v.b.clone()));
        }
    }

    fn chain(&mut self, vs: &[Dv], reverse: bool) {
        let mut vs = vs.to_vec();
        if reverse {
            vs.reverse();
        }
        for v in &vs {
            self.vertex(v);
        }
        for w in vs.windows(2) {
            let old = self.succ.insert(w[0].label.clone(), w[1].label.clone());
            assert!(old.is_none(), "label {} has two successors", w[0].label);
        }
    }

    fn cycle(&mut self, vs: &[Dv], reverse: bool) {
        let mut closed = vs.to_vec();
        closed.push(vs[0].clone());
        self.chain(&closed, reverse);
    }

    fn cycles(&self) -> Vec<Vec<String>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.succ.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut cyc = vec![start.clone()];
            seen.insert(start.clone());
            let mut cur = &self.succ[start];
            while cur != start {
                assert!(seen.insert(cur.clone()), "boundary chains do not close at {cur}");
                cyc.push(cur.clone());
                cur = self.succ.get(cur).unwrap_or_else(|| panic!("chain ends at {cur}"));
            }
            out.push(cyc);
        }
        out
    }
}

fn polygon(labels: &[String], pts: &BTreeMap<String, (Point, Point)>, k: usize) -> LabelledPolygon {
    LabelledPolygon::new(
        labels
            .iter()
            .map(|l| {
                let (a, b) = &pts[l];
                Vertex::new(l.clone(), if k == 0 { a.clone() } else { b.clone() })
            })
            .collect(),
    )
}

/// Everything needed to place one clause.
struct ClausePlan {
    index: usize,
    sign: Sign,
    level: usize,
    origin: Point,
    spec: RoomSpec,
    ports: [usize; 3],
    chords: BTreeMap<String, (Point, Point)>,
    beams: BTreeMap<String, (Point, Point)>,
    clearance: Rational,
}

fn plan_clauses(sd: &SlantedDrawing) -> Vec<ClausePlan> {
    let h = &sd.box_height;
    sd.clauses
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let x1 = sd.ports[c.ports[0]].x.clone();
            let spec = RoomSpec {
                x2: &sd.ports[c.ports[1]].x - &x1,
                x3: &sd.ports[c.ports[2]].x - &x1,
                box_top: h - &c.floor,
                box_bottom: -c.floor.clone(),
            };
            let (chords, beams, clearance) = room_trace(&spec);
            ClausePlan {
                index,
                sign: c.sign,
                level: c.level,
                origin: p(x1, c.floor.clone()),
                spec,
                ports: c.ports,
                chords,
                beams,
                clearance,
            }
        })
        .collect()
}

/// Five boundary vertices of one peak in room coordinates.
fn peak_group(plan: &ClausePlan, role: &str, tau: &Rational, pre: &str) -> Vec<Dv> {
    let spec = &plan.spec;
    let (m1, t) = spec.mouth(role, 0);
    let (m2, _) = spec.mouth(role, 1);
    let primed = PRIMED.contains(&role);
    // first region: a spike whose apex lies on the chord behind the mouth
    let (a, b) = &plan.chords[role];
    let d = b.sub(a);
    let (apex, eps) = if primed {
        let kappa = q(1, 20);
        let depth = &kappa + Rational::one() - &spec.box_bottom;
        (m1.add(&pq(0, 1, 1, 1).scale(&kappa)), tau * &kappa / (qi(4) * depth))
    } else {
        let kappa = q(1, 20) / l1(&d);
        let eps = tau * &kappa * linf(&d) / (qi(4) * (Rational::one() + &kappa) * l1(&d));
        (m1.sub(&d.scale(&kappa)), eps)
    };
    let first = [m1.sub(&t.scale(&g())), m1.sub(&t.scale(&eps)), apex, m1.add(&t.scale(&eps)), m1.add(&t.scale(&g()))];
    let second = if let Some((a2, b2)) = plan.beams.get(role) {
        let d2 = b2.sub(a2);
        let sigma = q(1, 5) / l1(&d2);
        let ws = tau * &sigma * linf(&d2) / (qi(4) * (Rational::one() + &sigma) * l1(&d2));
        let back = d2.scale(&sigma);
        let lo = m2.sub(&t.scale(&ws));
        let hi = m2.add(&t.scale(&ws));
        [lo.clone(), lo.sub(&back), m2.sub(&back), hi.sub(&back), hi]
    } else {
        let half = g() / qi(2);
        [m2.sub(&t.scale(&g())), m2.sub(&t.scale(&half)), m2.clone(), m2.add(&t.scale(&half)), m2.add(&t.scale(&g()))]
    };
    ["A", "p1", "p", "p2", "D"]
        .iter()
        .zip(first.into_iter().zip(second))
        .map(|(tag, (x, y))| dv(format!("{pre}{role}.{tag}"), x, y))
        .collect()
}

fn notch_group(n: &Notch, pre: &str) -> Vec<Dv> {
    let (a, b) = (n.points(0), n.points(1));
    ["g0", "a", "t", "b", "g1"]
        .iter()
        .zip(a.into_iter().zip(b))
        .map(|(tag, (x, y))| dv(format!("{pre}.{tag}"), x, y))
        .collect()
}

fn build_clause(b: &mut Builder, plan: &ClausePlan, tau: &Rational, h: &Rational) -> ClauseLayout {
    let k = plan.index;
    let pre = format!("c{k}.");
    let frame = Frame { sign: plan.sign, h: h.clone() };
    let place = |v: Dv| -> Dv {
        Dv { label: v.label, a: frame.apply(&plan.origin.add(&v.a)), b: frame.apply(&plan.origin.add(&v.b)) }
    };
    let spec = &plan.spec;
    let (xl, xr) = (spec.xl(), spec.xr());
    let zero = Rational::zero;
    let one = Rational::one;
    let xs = spec.xs();
    let corner = |tag: &str, x: Rational, y: Rational| same(format!("{pre}{tag}"), p(x, y));
    let chan =
        |i: usize, tag: &str, dx: Rational, y: Rational| same(format!("{pre}{}.{tag}", i + 1), p(&xs[i] + &dx, y));

    let mut main: Vec<Dv> = vec![chan(0, "ml", -wm(), zero()), corner("BL", xl.clone(), zero())];
    for role in ["w", "v", "u", "q"] {
        main.extend(peak_group(plan, role, tau, &pre));
    }
    main.push(corner("TL", xl.clone(), one()));
    for role in ["q'", "r", "r'", "s'"] {
        main.extend(peak_group(plan, role, tau, &pre));
    }
    main.push(corner("TR", xr.clone(), one()));
    let notches = spec.notches();
    let names = ["n1", "n2", "n3"];
    for (j, n) in notches.iter().enumerate().skip(1) {
        main.extend(notch_group(n, &format!("{pre}{}", names[j - 1])));
    }
    main.push(corner("BR", xr.clone(), zero()));
    main.extend(notch_group(&notches[0], &format!("{pre}n0")));
    main.push(chan(2, "mr", wm(), zero()));

    let mut mid3 = vec![chan(2, "ml", -wm(), zero())];
    mid3.extend(peak_group(plan, "s", tau, &pre));
    mid3.push(chan(1, "mr", wm(), zero()));
    let mid2 = vec![chan(1, "ml", -wm(), zero()), chan(0, "mr", wm(), zero())];

    let mirror = frame.mirrors();
    let placed = |v: Vec<Dv>| -> Vec<Dv> { v.into_iter().map(&place).collect() };
    b.chain(&placed(main.clone()), mirror);
    b.chain(&placed(mid3.clone()), mirror);
    b.chain(&placed(mid2), mirror);
    for i in 0..3 {
        let left = vec![
            chan(i, "bl", -wm(), spec.box_top.clone()),
            chan(i, "cl", -wm(), q(-1, 10)),
            chan(i, "ml", -wm(), zero()),
        ];
        let right = vec![
            chan(i, "mr", wm(), zero()),
            chan(i, "cr", wm(), q(-1, 10)),
            chan(i, "br", wm(), spec.box_top.clone()),
        ];
        b.chain(&placed(left), mirror);
        b.chain(&placed(right), mirror);
    }
    let (h1, h2) = (RoomSpec::hole(0), RoomSpec::hole(1));
    let hole: Vec<Dv> = h1.into_iter().zip(h2).enumerate().map(|(j, (x, y))| dv(format!("{pre}h.{j}"), x, y)).collect();
    b.cycle(&placed(hole.clone()), mirror);

    // mask: room with margins plus the three channel legs
    let lo = q(-1, 10);
    let mut m = vec![
        p(&xl - q(1, 4), lo.clone()),
        p(&xl - q(1, 4), q(5, 4)),
        p(&xr + q(1, 20), q(5, 4)),
        p(&xr + q(1, 20), lo.clone()),
    ];
    for i in (0..3).rev() {
        m.push(p(&xs[i] + wm(), lo.clone()));
        m.push(p(&xs[i] + wm(), spec.box_top.clone()));
        m.push(p(&xs[i] - wm(), spec.box_top.clone()));
        m.push(p(&xs[i] - wm(), lo.clone()));
    }
    let mut mask: Vec<Vertex> = m
        .iter()
        .enumerate()
        .map(|(j, pt)| Vertex::new(format!("{pre}mask.{j}"), frame.apply(&plan.origin.add(pt))))
        .collect();
    if mirror {
        mask.reverse();
    }

    let to_plane = |pt: &Point| frame.apply(&plan.origin.add(pt));
    let line = |(a, b): &(Point, Point)| TraceLine { from: to_plane(a), to: to_plane(b) };
    let mut crossings = Vec::new();
    for &(x, y) in CROSSING_PAIRS.iter() {
        let (a, b) = &plan.chords[x];
        let (c, d) = &plan.chords[y];
        if let Intersection::ProperCrossing(at) =
            segments_intersect(&Segment { a: a.clone(), b: b.clone() }, &Segment { a: c.clone(), b: d.clone() })
        {
            crossings.push(TracePoint { a: x.to_string(), b: y.to_string(), at: to_plane(&at) });
        }
    }
    let peaks = ROLES
        .iter()
        .map(|r| {
            let l = |t: &str| format!("{pre}{r}.{t}");
            (r.to_string(), PeakLabels { a: l("A"), p1: l("p1"), p: l("p"), p2: l("p2"), d: l("D") })
        })
        .collect();
    let notch_labels = ["n0", "n1", "n2", "n3"]
        .iter()
        .map(|n| {
            let mut t = [format!("{pre}{n}.a"), format!("{pre}{n}.t"), format!("{pre}{n}.b")];
            if mirror {
                t.swap(0, 2);
            }
            t
        })
        .collect();
    let lr = |tag: [&str; 2]| -> [[String; 2]; 3] {
        std::array::from_fn(|i| [format!("{pre}{}.{}", i + 1, tag[0]), format!("{pre}{}.{}", i + 1, tag[1])])
    };
    ClauseLayout {
        sign: plan.sign,
        level: plan.level,
        variables: Default::default(),
        peaks,
        notches: notch_labels,
        mu: std::array::from_fn(|i| format!("{pre}{}.mu", i + 1)),
        hole: (0..4).map(|j| format!("{pre}h.{j}")).collect(),
        mouths: lr(["ml", "mr"]),
        closures: lr(["cl", "cr"]),
        mask: LabelledPolygon::new(mask),
        origin: plan.origin.clone(),
        x2: spec.x2.clone(),
        x3: spec.x3.clone(),
        trace: ClauseTrace {
            chords: plan.chords.iter().map(|(r, l)| (r.clone(), line(l))).collect(),
            beams: plan.beams.iter().map(|(r, l)| (r.clone(), line(l))).collect(),
            crossings,
            clearance: plan.clearance.clone(),
        },
    }
}

fn build_boxes(b: &mut Builder, sd: &SlantedDrawing) -> Vec<VariableLayout> {
    let h = &sd.box_height;
    let half = h / qi(2);
    let wc = q(1, 4);
    let nb = sd.boxes.len();
    let chan_label = |port: usize, tag: &str| {
        let pt = &sd.ports[port];
        let i = sd.clauses[pt.clause].ports.iter().position(|&x| x == port).unwrap();
        format!("c{}.{}.{tag}", pt.clause, i + 1)
    };
    let mut out = Vec::new();
    for (j, bx) in sd.boxes.iter().enumerate() {
        let r = &bx.rect;
        let name = &bx.variable;
        let l = |tag: &str| format!("{name}.{tag}");
        let mut cyc: Vec<(Dv, bool)> = Vec::new();
        cyc.push((same(l("bl"), p(r.x0.clone(), r.y0.clone())), false));
        if j > 0 {
            cyc.push((same(l("w-"), p(r.x0.clone(), &half - &wc)), true));
            cyc.push((same(l("w+"), p(r.x0.clone(), &half + &wc)), false));
        }
        cyc.push((same(l("tl"), p(r.x0.clone(), r.y1.clone())), false));
        // top side, west to east
        let mut top: Vec<(Rational, Dv, bool)> = Vec::new();
        let mut bottom: Vec<(Rational, Dv, bool)> = Vec::new();
        for (k, pt) in sd.ports.iter().enumerate() {
            if sd.box_of(pt) != j {
                continue;
            }
            let lo = same(
                chan_label(k, "bl"),
                p(
                    &pt.x - wm(),
                    match pt.side {
                        Side::Top => h.clone(),
                        Side::Bottom => Rational::zero(),
                    },
                ),
            );
            let hi = same(chan_label(k, "br"), p(&pt.x + wm(), lo.a.y.clone()));
            let mu = same(chan_label(k, "mu"), pt.mu.clone());
            match pt.side {
                Side::Top => {
                    top.push((lo.a.x.clone(), lo, true));
                    top.push((hi.a.x.clone(), hi, false));
                    bottom.push((mu.a.x.clone(), mu, false));
                }
                Side::Bottom => {
                    bottom.push((hi.a.x.clone(), hi, true));
                    bottom.push((lo.a.x.clone(), lo, false));
                    top.push((mu.a.x.clone(), mu, false));
                }
            }
        }
        top.sort_by(|a, b| a.0.cmp(&b.0));
        bottom.sort_by(|a, b| b.0.cmp(&a.0));
        cyc.extend(top.into_iter().map(|(_, v, o)| (v, o)));
        cyc.push((same(l("tr"), p(r.x1.clone(), r.y1.clone())), false));
        if j + 1 < nb {
            cyc.push((same(l("e+"), p(r.x1.clone(), &half + &wc)), true));
            cyc.push((same(l("e-"), p(r.x1.clone(), &half - &wc)), false));
        }
        cyc.push((same(l("br"), p(r.x1.clone(), r.y0.clone())), false));
        cyc.extend(bottom.into_iter().map(|(_, v, o)| (v, o)));
        let n = cyc.len();
        for i in 0..n {
            b.vertex(&cyc[i].0);
            if !cyc[i].1 {
                b.chain(&[cyc[i].0.clone(), cyc[(i + 1) % n].0.clone()], false);
            }
        }
        if j + 1 < nb {
            let next = &sd.boxes[j + 1].variable;
            let nx = &sd.boxes[j + 1].rect.x0;
            b.chain(
                &[same(l("e+"), p(r.x1.clone(), &half + &wc)), same(format!("{next}.w+"), p(nx.clone(), &half + &wc))],
                false,
            );
            b.chain(
                &[same(format!("{next}.w-"), p(nx.clone(), &half - &wc)), same(l("e-"), p(r.x1.clone(), &half - &wc))],
                false,
            );
        }
        let mask = LabelledPolygon::new(vec![
            Vertex::new(l("mask.0"), p(r.x0.clone(), r.y0.clone())),
            Vertex::new(l("mask.1"), p(r.x0.clone(), r.y1.clone())),
            Vertex::new(l("mask.2"), p(r.x1.clone(), r.y1.clone())),
            Vertex::new(l("mask.3"), p(r.x1.clone(), r.y0.clone())),
        ]);
        out.push(VariableLayout { name: name.clone(), mask });
    }
    out
}

/// Adds flat vertices until the only dents left are the intended ones.
fn add_guards(b: &mut Builder, intended: &BTreeSet<(String, DentKind)>, protected: &BTreeSet<(String, String)>) {
    let mut counter = 0usize;
    loop {
        let cycles = b.cycles();
        let (r1, r2) = regions_from(b, &cycles);
        let mut bad: Vec<(String, String, String)> = Vec::new();
        for (k, r) in [(0usize, &r1), (1, &r2)] {
            for dent in find_dents(r) {
                let want = match dent.kind {
                    DentKind::Outward => k == 0,
                    DentKind::Inward => k == 1,
                };
                if want && intended.contains(&(dent.d.clone(), dent.kind)) {
                    continue;
                }
                bad.push((dent.u, dent.d, dent.v));
            }
        }
        if bad.is_empty() {
            return;
        }
        let mut done = BTreeSet::new();
        for (u, d, v) in bad {
            if done.contains(&d) {
                continue;
            }
            let edge = if !protected.contains(&(u.clone(), d.clone())) {
                (u, d.clone())
            } else if !protected.contains(&(d.clone(), v.clone())) {
                (d.clone(), v)
            } else {
                panic!("dent at {d} cannot be guarded");
            };
            let (from, to) = if b.succ.get(&edge.0) == Some(&edge.1) { edge } else { (edge.1, edge.0) };
            if b.succ.get(&from) != Some(&to) {
                continue;
            }
            let (fa, fb) = b.pts[&from].clone();
            let (ta, tb) = b.pts[&to].clone();
            let half = q(1, 2);
            let label = format!("{from}.g{counter}");
            counter += 1;
            b.pts.insert(label.clone(), (fa.lerp(&ta, &half), fb.lerp(&tb, &half)));
            b.succ.insert(from, label.clone());
            b.succ.insert(label, to);
            done.insert(d);
        }
    }
}

fn regions_from(b: &Builder, cycles: &[Vec<String>]) -> (PolygonalRegion, PolygonalRegion) {
    let mut outer = None;
    let mut holes = Vec::new();
    for c in cycles {
        let pts: Vec<Point> = c.iter().map(|l| b.pts[l].0.clone()).collect();
        if signed_area2(&pts).is_negative() {
            assert!(outer.is_none(), "more than one outer boundary");
            outer = Some(c.clone());
        } else {
            holes.push(c.clone());
        }
    }
    let outer = outer.expect("an outer boundary");
    let make = |k: usize| {
        PolygonalRegion::new(polygon(&outer, &b.pts, k), holes.iter().map(|h| polygon(h, &b.pts, k)).collect())
    };
    (make(0), make(1))
}

fn assemble(sd: &SlantedDrawing, inst: &SatInstance) -> Result<ReductionOutput, ReductionError> {
    let plans = plan_clauses(sd);
    let h = &sd.box_height;
    let traces_only: Vec<ClauseTrace> = plans
        .iter()
        .map(|pl| ClauseTrace {
            chords: BTreeMap::new(),
            beams: BTreeMap::new(),
            crossings: vec![],
            clearance: pl.clearance.clone(),
        })
        .collect();
    let tau = compute_tolerance(&traces_only)?;
    let mut b = Builder::default();
    let mut clauses = Vec::new();
    for plan in &plans {
        let mut cl = build_clause(&mut b, plan, &tau, h);
        cl.variables = std::array::from_fn(|i| inst.variables[sd.ports[plan.ports[i]].variable].clone());
        clauses.push(cl);
    }
    let variables = build_boxes(&mut b, sd);
    let mut intended = BTreeSet::new();
    let mut protected = BTreeSet::new();
    for c in &clauses {
        for pk in c.peaks.values() {
            intended.insert((pk.p.clone(), DentKind::Outward));
            protected.insert((pk.p1.clone(), pk.p.clone()));
            protected.insert((pk.p.clone(), pk.p2.clone()));
        }
        for n in &c.notches {
            intended.insert((n[1].clone(), DentKind::Inward));
            for (x, y) in [(&n[0], &n[1]), (&n[1], &n[2]), (&n[1], &n[0]), (&n[2], &n[1])] {
                protected.insert((x.clone(), y.clone()));
            }
        }
    }
    for (x, y) in protected.clone() {
        protected.insert((y, x));
    }
    add_guards(&mut b, &intended, &protected);
    let cycles = b.cycles();
    let (p1, p2) = regions_from(&b, &cycles);
    let params = ReductionParams {
        tau,
        channel_half_width: sd.channel_half_width.clone(),
        slot_spacing: Rational::one(),
        hole: [RoomSpec::hole(0), RoomSpec::hole(1)],
    };
    Ok(ReductionOutput {
        instance: inst.clone(),
        k: 5 * inst.clauses.len(),
        p1,
        p2,
        layout: GadgetLayout { box_height: h.clone(), clauses, variables },
        params,
    })
}

/// Normalizes, slants, and builds both regions.
pub fn reduce(i: &SatInstance, d: &SatDrawing) -> Result<ReductionOutput, ReductionError> {
    validate_instance(i, d).map_err(|e| ReductionError::Instance(e.join("; ")))?;
    let (ni, nd) = normalize_to_three(i, d);
    let sd = slant_drawing(&ni, &nd)?;
    let out = assemble(&sd, &ni)?;
    let mut problems = Vec::new();
    for (name, r) in [("first", &out.p1), ("second", &out.p2)] {
        if let Err(e) = validate_region(r) {
            problems.push(format!("{name}: {}", e.join(", ")));
        }
    }
    if !compatible(&out.p1, &out.p2) {
        problems.push("regions are not compatible".to_string());
    }
    if !problems.is_empty() {
        return Err(ReductionError::Construction(problems.join("; ")));
    }
    Ok(out)
}

/// The first region and its layout.
pub fn build_p1(i: &SatInstance, d: &SatDrawing) -> Result<(PolygonalRegion, GadgetLayout), ReductionError> {
    reduce(i, d).map(|o| (o.p1, o.layout))
}

/// The second region and its layout.
pub fn build_p2(i: &SatInstance, d: &SatDrawing) -> Result<(PolygonalRegion, GadgetLayout), ReductionError> {
    reduce(i, d).map(|o| (o.p2, o.layout))
}

impl ReductionOutput {
    pub fn max_bit_length(&self) -> u64 {
        self.p1
            .all_vertices()
            .into_iter()
            .chain(self.p2.all_vertices())
            .map(|v| rational_bit_length(&v.x).max(rational_bit_length(&v.y)))
            .max()
            .unwrap_or(0)
    }

    pub fn point1(&self, label: &str) -> Point {
        self.p1.point_of(label).unwrap_or_else(|| panic!("unknown label {label}"))
    }

    pub fn point2(&self, label: &str) -> Point {
        self.p2.point_of(label).unwrap_or_else(|| panic!("unknown label {label}"))
    }

    /// Labels of μ-points for each connector of each clause, keyed by variable name.
    pub fn mu_points(&self) -> HashMap<String, Vec<String>> {
        let mut m: HashMap<String, Vec<String>> = HashMap::new();
        for c in &self.layout.clauses {
            for i in 0..3 {
                m.entry(c.variables[i].clone()).or_default().push(c.mu[i].clone());
            }
        }
        m
    }
}

/// Fixed polynomial bound on coordinate bit length, see the crate documentation.
pub fn bit_length_budget(variables: usize, clauses: usize) -> u64 {
    let n = (variables.max(1) * clauses.max(1)) as f64;
    (16.0 * n.log2().ceil() + 64.0) as u64
}
