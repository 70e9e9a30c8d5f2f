//! Exact rational points, segments and predicates.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

/// Builds `n/d` as a canonical rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `n`, `n/d` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Serde adapter storing a rational as its canonical string.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(qi(i)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    #[serde(with = "rat_serde")]
    pub x: Rational,
    #[serde(with = "rat_serde")]
    pub y: Rational,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(qi(x), qi(y))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    /// `self + t * (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Rational) -> Point {
        self.add(&o.sub(self).scale(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn cross(a: &Point, b: &Point) -> Rational {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Rational {
    &a.x * &b.x + &a.y * &b.y
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match orient_sign(p, q, r) {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// `+1`, `-1` or `0` for counterclockwise, clockwise, collinear.
pub fn orient_sign(p: &Point, q: &Point, r: &Point) -> i8 {
    let l = (&q.x - &p.x) * (&r.y - &p.y);
    let rr = (&q.y - &p.y) * (&r.x - &p.x);
    match l.cmp(&rr) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contact {
    Point(Point),
    Segment(Segment),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Disjoint,
    ProperCrossing(Point),
    Touching(Contact),
}

/// True if `p` lies on the closed segment `ab` (assumes collinearity already known or checks it).
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient_sign(a, b, p) == 0 && in_box(p, a, b)
}

fn in_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (x0, x1) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (y0, y1) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *x0 <= p.x && p.x <= *x1 && *y0 <= p.y && p.y <= *y1
}

/// True if `p` lies strictly between `a` and `b` on the segment.
pub fn strictly_inside_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

pub fn segments_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    let (a, b, c, d) = (&s1.a, &s1.b, &s2.a, &s2.b);
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        let p = line_intersection(s1, s2).expect("crossing segments are not parallel");
        return Intersection::ProperCrossing(p);
    }
    if o1 == 0 && o2 == 0 {
        // collinear: project onto the dominant axis
        let key = |p: &Point| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (mut lo1, mut hi1) = (a.clone(), b.clone());
        if key(&lo1) > key(&hi1) {
            std::mem::swap(&mut lo1, &mut hi1);
        }
        let (mut lo2, mut hi2) = (c.clone(), d.clone());
        if key(&lo2) > key(&hi2) {
            std::mem::swap(&mut lo2, &mut hi2);
        }
        let lo = if key(&lo1) >= key(&lo2) { lo1 } else { lo2 };
        let hi = if key(&hi1) <= key(&hi2) { hi1 } else { hi2 };
        return match key(&lo).cmp(&key(&hi)) {
            Ordering::Greater => Intersection::Disjoint,
            Ordering::Equal => Intersection::Touching(Contact::Point(lo)),
            Ordering::Less => Intersection::Touching(Contact::Segment(Segment::new(lo, hi))),
        };
    }
    for (p, s, t) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, s, t) {
            return Intersection::Touching(Contact::Point(p.clone()));
        }
    }
    Intersection::Disjoint
}

/// Intersection of the supporting lines, or `None` when parallel.
pub fn line_intersection(l1: &Segment, l2: &Segment) -> Option<Point> {
    let r = l1.b.sub(&l1.a);
    let s = l2.b.sub(&l2.a);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let t = cross(&l2.a.sub(&l1.a), &s) / den;
    Some(l1.a.lerp(&l1.b, &t))
}

pub fn midpoint(p: &Point, q: &Point) -> Point {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Point::new((&p.x + &q.x) * &half, (&p.y + &q.y) * &half)
}

fn int_bits(i: &BigInt) -> u64 {
    if i.sign() == Sign::NoSign {
        1
    } else {
        i.abs().bits()
    }
}

pub fn rational_bit_length(r: &Rational) -> u64 {
    int_bits(r.numer()).max(int_bits(r.denom()))
}

/// Largest bit length among the canonical numerators and denominators of `p`.
pub fn bit_length(p: &Point) -> u64 {
    rational_bit_length(&p.x).max(rational_bit_length(&p.y))
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
pub fn signed_area2(pts: &[Point]) -> Rational {
    let n = pts.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        acc += cross(&pts[i], &pts[(i + 1) % n]);
    }
    acc
}

/// Lower bound on the Euclidean distance from `p` to the line through `a` and `b`,
/// using the L1 norm of the direction so the result stays rational.
pub fn line_distance_lower_bound(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    let l1 = d.x.abs() + d.y.abs();
    cross(&d, &p.sub(a)).abs() / l1
}

/// Lower bound on the Euclidean distance between two points (max of coordinate gaps).
pub fn point_distance_lower_bound(p: &Point, q: &Point) -> Rational {
    let dx = (&p.x - &q.x).abs();
    let dy = (&p.y - &q.y).abs();
    if dx > dy {
        dx
    } else {
        dy
    }
}

/// Lower bound on the distance from `p` to the closed segment `ab`.
pub fn segment_distance_lower_bound(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    let t0 = dot(&p.sub(a), &d);
    if t0 <= Rational::zero() {
        return point_distance_lower_bound(p, a);
    }
    if t0 >= dot(&d, &d) {
        return point_distance_lower_bound(p, b);
    }
    line_distance_lower_bound(p, a, b)
}
