use compat_tri::geometry::*;
use proptest::prelude::*;

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

#[test]
fn orientation_examples() {
    assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
    assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
    assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), Orientation::Clockwise);
}

#[test]
fn intersection_examples() {
    let s = |a, b, c, d| Segment::new(p(a, b), p(c, d));
    assert_eq!(segments_intersect(&s(0, 0, 2, 2), &s(0, 2, 2, 0)), Intersection::ProperCrossing(p(1, 1)));
    assert_eq!(segments_intersect(&s(0, 0, 1, 0), &s(2, 0, 3, 0)), Intersection::Disjoint);
    assert_eq!(segments_intersect(&s(0, 0, 1, 0), &s(1, 0, 1, 1)), Intersection::Touching(Contact::Point(p(1, 0))));
}

#[test]
fn line_intersection_examples() {
    let l = |a, b, c, d| Segment::new(p(a, b), p(c, d));
    assert_eq!(line_intersection(&l(0, 0, 1, 1), &l(0, 2, 2, 0)), Some(p(1, 1)));
    assert_eq!(line_intersection(&l(0, 0, 1, 0), &l(0, 1, 1, 1)), None);
    // solved by hand: t(3,1) = (0,2) + s(1,-2) gives t = 2/7
    assert_eq!(line_intersection(&l(0, 0, 3, 1), &l(0, 2, 1, 0)), Some(Point::new(q(6, 7), q(2, 7))));
}

#[test]
fn midpoint_examples() {
    assert_eq!(midpoint(&p(0, 0), &p(2, 2)), p(1, 1));
    let a = Point::new(q(1, 3), q(0, 1));
    let b = Point::new(q(0, 1), q(1, 3));
    assert_eq!(midpoint(&a, &b), Point::new(q(1, 6), q(1, 6)));
    assert_eq!(midpoint(&a, &a), a);
}

#[test]
fn bit_length_examples() {
    assert_eq!(bit_length(&p(0, 0)), 1);
    assert_eq!(bit_length(&Point::new(q(3, 2), qi(1))), 2);
    assert_eq!(bit_length(&Point::new(q(255, 256), qi(0))), 9);
}

#[test]
fn rational_text_round_trip() {
    for r in [q(-7, 3), q(0, 1), q(12, 4)] {
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
    let pt = Point::new(q(1, 2), q(-3, 1));
    let js = serde_json::to_string(&pt).unwrap();
    assert_eq!(js, r#"{"x":"1/2","y":"-3"}"#);
    assert_eq!(serde_json::from_str::<Point>(&js).unwrap(), pt);
}

fn arb_point() -> impl Strategy<Value = Point> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, b, c, d)| Point::new(q(a, b), q(c, d)))
}

proptest! {
    #[test]
    fn orientation_antisymmetric(a in arb_point(), b in arb_point(), c in arb_point()) {
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&a, &c, &b).reversed());
    }

    #[test]
    fn intersect_symmetric(a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point()) {
        prop_assume!(a != b && c != d);
        let s1 = Segment::new(a, b);
        let s2 = Segment::new(c, d);
        let x = segments_intersect(&s1, &s2);
        let y = segments_intersect(&s2, &s1);
        match (&x, &y) {
            (Intersection::Touching(Contact::Segment(u)), Intersection::Touching(Contact::Segment(v))) => {
                let same = (u.a == v.a && u.b == v.b) || (u.a == v.b && u.b == v.a);
                prop_assert!(same);
            }
            _ => prop_assert_eq!(x, y),
        }
    }

    #[test]
    fn line_intersection_on_both_lines(a in arb_point(), b in arb_point(), c in arb_point(), d in arb_point()) {
        prop_assume!(a != b && c != d);
        let l1 = Segment::new(a.clone(), b.clone());
        let l2 = Segment::new(c.clone(), d.clone());
        if let Some(x) = line_intersection(&l1, &l2) {
            prop_assert_eq!(orientation(&a, &b, &x), Orientation::Collinear);
            prop_assert_eq!(orientation(&c, &d, &x), Orientation::Collinear);
        } else {
            prop_assert_eq!(cross(&b.sub(&a), &d.sub(&c)), qi(0));
        }
    }

    #[test]
    fn operations_deterministic(a in arb_point(), b in arb_point()) {
        prop_assert_eq!(midpoint(&a, &b), midpoint(&a, &b));
        prop_assert_eq!(bit_length(&a), bit_length(&a.clone()));
    }
}
