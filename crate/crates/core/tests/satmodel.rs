use compat_tri::geometry::{qi, rational_bit_length, segments_intersect, Intersection, Segment};
use compat_tri::satmodel::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lits(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn single_variable() -> (SatInstance, SatDrawing) {
    let i = SatInstance {
        variables: lits(&["x"]),
        clauses: vec![
            Clause { sign: Sign::Positive, literals: lits(&["x"]) },
            Clause { sign: Sign::Negative, literals: lits(&["x"]) },
        ],
    };
    let d = SatDrawing {
        baseline: qi(0),
        rects: DrawingRects {
            variables: vec![Rect::from_ints(0, -1, 6, 1)],
            clauses: vec![Rect::from_ints(2, 2, 4, 3), Rect::from_ints(2, -3, 4, -2)],
        },
        edges: vec![DrawingEdge { clause: 0, literal: 0, x: qi(3) }, DrawingEdge { clause: 1, literal: 0, x: qi(3) }],
    };
    (i, d)
}

#[test]
fn single_variable_drawing_is_valid() {
    let (i, d) = single_variable();
    assert_eq!(validate_instance(&i, &d), Ok(()));
}

#[test]
fn positive_clause_below_baseline_rejected() {
    let (i, mut d) = single_variable();
    d.rects.clauses[0] = Rect::from_ints(2, -6, 4, -5);
    let errs = validate_instance(&i, &d).unwrap_err();
    assert!(errs.iter().any(|e| e.contains("positive clause 0 not above baseline")), "{errs:?}");
}

#[test]
fn crossing_edges_rejected() {
    let i = SatInstance {
        variables: lits(&["x", "y"]),
        clauses: vec![
            Clause { sign: Sign::Positive, literals: lits(&["x"]) },
            Clause { sign: Sign::Positive, literals: lits(&["y"]) },
        ],
    };
    // clause 1 sits above clause 0 and its edge passes through clause 0's rectangle
    let d = SatDrawing {
        baseline: qi(0),
        rects: DrawingRects {
            variables: vec![Rect::from_ints(0, -1, 4, 1), Rect::from_ints(10, -1, 14, 1)],
            clauses: vec![Rect::from_ints(2, 2, 13, 3), Rect::from_ints(1, 5, 12, 6)],
        },
        edges: vec![DrawingEdge { clause: 0, literal: 0, x: qi(3) }, DrawingEdge { clause: 1, literal: 0, x: qi(11) }],
    };
    let errs = validate_instance(&i, &d).unwrap_err();
    assert!(errs.iter().any(|e| e.starts_with("not planar")), "{errs:?}");
}

#[test]
fn empty_clause_rejected() {
    let (mut i, d) = single_variable();
    i.clauses[1].literals.clear();
    let errs = validate_instance(&i, &d).unwrap_err();
    assert!(errs.iter().any(|e| e == "clause 1 is empty"), "{errs:?}");
}

#[test]
fn normalize_repeats_literal() {
    let (i, d) = single_variable();
    let (ni, nd) = normalize_to_three(&i, &d);
    assert_eq!(ni.clauses[0].literals, lits(&["x", "x", "x"]));
    assert_eq!(ni.clauses[1].literals, lits(&["x", "x", "x"]));
    assert_eq!(validate_instance(&ni, &nd), Ok(()));
}

#[test]
fn normalize_keeps_full_clauses() {
    let (i, d) = ladder2();
    let (ni, nd) = normalize_to_three(&i, &d);
    assert_eq!(ni, i);
    assert_eq!(nd, d);
}

#[test]
fn normalize_preserves_satisfying_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for attempt in 0..2000usize {
        if checked == 50 {
            break;
        }
        let nv = 3 + attempt % 4;
        let variables: Vec<String> = (1..=nv).map(|k| format!("x{k}")).collect();
        let clauses = (0..1 + attempt % 5)
            .map(|c| {
                let len = 1 + (c + attempt) % 3;
                let mut picked = rand::seq::index::sample(&mut rng, nv, len).into_vec();
                picked.sort_unstable();
                Clause {
                    sign: if (c + attempt / 5) % 2 == 0 { Sign::Positive } else { Sign::Negative },
                    literals: picked.iter().map(|&k| variables[k].clone()).collect(),
                }
            })
            .collect();
        let i = SatInstance { variables, clauses };
        let Some(d) = ladder_drawing(&i) else {
            continue;
        };
        validate_instance(&i, &d).unwrap();
        let (ni, nd) = normalize_to_three(&i, &d);
        assert_eq!(validate_instance(&ni, &nd), Ok(()));
        assert!(ni.clauses.iter().all(|c| c.literals.len() == 3));
        assert_eq!(i.satisfying_assignments(), ni.satisfying_assignments());
        checked += 1;
    }
    assert_eq!(checked, 50);
}

#[test]
fn box_dimensions() {
    let (i, d) = ladder2();
    let sd = slant_drawing(&i, &d).unwrap();
    for b in &sd.boxes {
        assert_eq!((&b.rect.x1 - &b.rect.x0, &b.rect.y1 - &b.rect.y0), (qi(19), qi(7)));
    }
    let (i, d) = normalize_to_three(&single_variable().0, &single_variable().1);
    let one = SatInstance { variables: i.variables.clone(), clauses: vec![i.clauses[0].clone()] };
    let mut d1 = d.clone();
    d1.rects.clauses.truncate(1);
    d1.edges.retain(|e| e.clause == 0);
    let sd = slant_drawing(&one, &d1).unwrap();
    let r = &sd.boxes[0].rect;
    assert_eq!((&r.x1 - &r.x0, &r.y1 - &r.y0), (qi(10), qi(4)));
}

#[test]
fn slant_requires_three_literals() {
    let (i, d) = single_variable();
    assert!(matches!(slant_drawing(&i, &d), Err(SlantError::NotNormalized(_))));
}

fn random_slanted(rng: &mut ChaCha8Rng, max_clauses: usize) -> (SatInstance, SlantedDrawing) {
    loop {
        if let Some((i, d)) = random_ladder(rng, max_clauses) {
            let (ni, nd) = normalize_to_three(&i, &d);
            return (ni.clone(), slant_drawing(&ni, &nd).unwrap());
        }
    }
}

#[test]
fn top_and_bottom_extensions_cross_inside_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let (_, sd) = random_slanted(&mut rng, 6);
        for (a, pa) in sd.ports.iter().enumerate() {
            for (b, pb) in sd.ports.iter().enumerate() {
                if pa.side != Side::Top || pb.side != Side::Bottom || pa.variable != pb.variable {
                    continue;
                }
                let (s1, s2) = (sd.extension(a), sd.extension(b));
                let hit = segments_intersect(&Segment::new(s1.0, s1.1), &Segment::new(s2.0, s2.1));
                let Intersection::ProperCrossing(at) = hit else { panic!("ports {a} and {b}: {hit:?}") };
                let r = &sd.boxes[sd.box_of(pa)].rect;
                assert!(r.x0 < at.x && at.x < r.x1 && r.y0 < at.y && at.y < r.y1);
            }
        }
    }
}

#[test]
fn slanted_drawing_is_planar() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let (_, sd) = random_slanted(&mut rng, 6);
        assert_eq!(sd.planarity_violations(), Vec::<String>::new());
    }
}

#[test]
fn slanted_coordinates_stay_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let (i, sd) = random_slanted(&mut rng, 8);
        let scale = (i.variables.len() * i.clauses.len()) as f64;
        let budget = 2 * scale.log2().ceil() as u64 + 12;
        let mut coords = Vec::new();
        for b in &sd.boxes {
            coords.extend([&b.rect.x0, &b.rect.y0, &b.rect.x1, &b.rect.y1]);
        }
        for p in &sd.ports {
            coords.push(&p.x);
            coords.extend(p.corners.iter().flat_map(|c| [&c.x, &c.y]));
        }
        for c in &sd.clauses {
            coords.extend(c.room.iter().flat_map(|c| [&c.x, &c.y]));
        }
        for x in coords {
            assert!(rational_bit_length(x) <= budget, "{x} over {budget}");
        }
    }
}

#[test]
fn instance_file_round_trip() {
    let (i, d) = ladder2();
    let f = InstanceFile::new(i.clone(), d.clone());
    let text = serde_json::to_string(&f).unwrap();
    let back: InstanceFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.split(), (i, d));
}
