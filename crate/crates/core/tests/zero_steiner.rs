mod common;

use common::*;
use compat_tri::regions::{visible, LabelledPolygon, PolygonalRegion};
use compat_tri::triangulation::{steiner_count, verify_compatible_pair};
use compat_tri::zero_steiner::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn as_region(p: &LabelledPolygon) -> PolygonalRegion {
    PolygonalRegion::new(p.clone(), vec![])
}

/// Two quadrilaterals: diagonal 0-2 interior only in the first, 1-3 only in the second.
fn blocked_quads() -> (LabelledPolygon, LabelledPolygon) {
    let a = poly(&[("p0", 0, 0), ("p1", 1, 3), ("p2", 2, 0), ("p3", 1, 1)]);
    let b = poly(&[("p0", 0, 0), ("p1", 0, 4), ("p2", 1, 1), ("p3", 4, 0)]);
    (a, b)
}

#[test]
fn blocked_quadrilateral() {
    let (a, b) = blocked_quads();
    for p in [&a, &b] {
        assert!(compat_tri::regions::validate_region(&as_region(p)).is_ok());
    }
    let t = build_diagonal_table(&a, &b).unwrap();
    assert!(!t.get(0, 2) && !t.get(1, 3));
    assert!(t.get(0, 1) && t.get(3, 0));
    assert_eq!(decide_zero_steiner(&a, &b).unwrap(), ZeroSteinerVerdict::No);
    assert_eq!(brute_force_zero_steiner(&a, &b, DEFAULT_BRUTE_FORCE_BOUND), Ok(false));
}

#[test]
fn shared_diagonal_quadrilateral() {
    let (a, _) = blocked_quads();
    assert_eq!(brute_force_zero_steiner(&a, &a, DEFAULT_BRUTE_FORCE_BOUND), Ok(true));
    assert!(decide_zero_steiner(&a, &a).unwrap().is_yes());
}

#[test]
fn identical_convex_fan_witness() {
    let hex = poly(&[("a", 0, 0), ("b", 0, 2), ("c", 2, 4), ("d", 4, 2), ("e", 4, 0), ("f", 2, -2)]);
    let t = build_diagonal_table(&hex, &hex).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                assert!(t.get(i, j));
            }
        }
    }
    match decide_zero_steiner(&hex, &hex).unwrap() {
        ZeroSteinerVerdict::Yes(pair) => {
            let r = as_region(&hex);
            assert_eq!(verify_compatible_pair(&r, &r, &pair), Ok(()));
            assert_eq!(steiner_count(&pair), 0);
            // smallest-k tie break yields the fan from the last vertex
            assert!(pair.t1.faces.iter().all(|f| f.contains(&"f".to_string())));
        }
        ZeroSteinerVerdict::No => panic!("convex pair must be Yes"),
    }
}

#[test]
fn incompatible_reported() {
    let a = poly(&[("a", 0, 0), ("b", 0, 1), ("c", 1, 0)]);
    let b = poly(&[("a", 0, 0), ("c", 0, 1), ("b", 1, 0)]);
    assert!(matches!(decide_zero_steiner(&a, &b), Err(ZeroSteinerError::Incompatible(_))));
    let big = poly(&(0..13).map(|i| ("x", i, i * i)).collect::<Vec<_>>());
    assert!(matches!(brute_force_zero_steiner(&big, &big, 12), Err(ZeroSteinerError::TooLarge { .. })));
}

#[test]
fn catalan_counts() {
    // Catalan(n-2) via the recurrence C(m+1) = sum C(i) C(m-i)
    let mut cat = vec![1u64];
    for m in 0..10 {
        let next = (0..=m).map(|i| cat[i] * cat[m - i]).sum();
        cat.push(next);
    }
    for n in 4..=10 {
        assert_eq!(count_triangulations(n), cat[n - 2], "n={n}");
    }
    assert_eq!(count_triangulations(8), 132);
    assert_eq!(count_triangulations(12), 16796);
}

#[test]
fn random_table_matches_double_visibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 20 {
        let a = star_polygon(&mut rng, 6);
        let b = star_polygon(&mut rng, 6);
        let (ra, rb) = (as_region(&a), as_region(&b));
        if compat_tri::regions::validate_region(&ra).is_err() || compat_tri::regions::validate_region(&rb).is_err() {
            continue;
        }
        let t = build_diagonal_table(&a, &b).unwrap();
        let (pa, pb) = (a.points(), b.points());
        for i in 0..6 {
            for j in 0..6 {
                if i == j || (i + 1) % 6 == j || (j + 1) % 6 == i {
                    continue;
                }
                let oracle = visible(&ra, &pa[i], &pa[j]).unwrap() && visible(&rb, &pb[i], &pb[j]).unwrap();
                assert_eq!(t.get(i, j), oracle, "{i}-{j}");
            }
        }
        checked += 1;
    }
}

#[test]
fn dp_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut tested, mut yes) = (0, 0);
    while tested < 240 {
        let n = rng.gen_range(4..=10);
        let a = star_polygon(&mut rng, n);
        let b = star_polygon(&mut rng, n);
        let (ra, rb) = (as_region(&a), as_region(&b));
        if compat_tri::regions::validate_region(&ra).is_err() || compat_tri::regions::validate_region(&rb).is_err() {
            continue;
        }
        let dp = decide_zero_steiner(&a, &b).unwrap();
        let bf = brute_force_zero_steiner(&a, &b, DEFAULT_BRUTE_FORCE_BOUND).unwrap();
        assert_eq!(dp.is_yes(), bf, "n={n}");
        if let ZeroSteinerVerdict::Yes(pair) = dp {
            assert_eq!(verify_compatible_pair(&ra, &rb, &pair), Ok(()));
            assert_eq!(steiner_count(&pair), 0);
            yes += 1;
        }
        tested += 1;
    }
    assert!(yes > 20 && yes < tested - 20, "verdict mix {yes}/{tested}");
}

#[test]
fn adding_valid_diagonals_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(4..=9);
        let a = star_polygon(&mut rng, n);
        let b = star_polygon(&mut rng, n);
        let full = build_diagonal_table(&a, &b).unwrap();
        let mut masked = full.clone();
        for i in 0..n {
            for j in i + 2..n {
                if rng.gen_bool(0.3) {
                    masked.valid[i][j] = false;
                    masked.valid[j][i] = false;
                }
            }
        }
        if solve_table(&masked).is_some() {
            assert!(solve_table(&full).is_some());
        }
    }
}
