use std::collections::BTreeSet;
use std::sync::OnceLock;

use compat_tri::geometry::{midpoint, Point, Rational};
use compat_tri::reduction::*;
use compat_tri::regions::*;
use compat_tri::satmodel::*;
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ladder() -> &'static ReductionOutput {
    static OUT: OnceLock<ReductionOutput> = OnceLock::new();
    OUT.get_or_init(|| {
        let (i, d) = ladder2();
        reduce(&i, &d).expect("ladder reduces")
    })
}

fn clause_of(label: &str) -> Option<usize> {
    label.strip_prefix('c')?.split('.').next()?.parse().ok()
}

fn check_dents(o: &ReductionOutput) {
    let nc = o.layout.clauses.len();
    let mut outward = vec![BTreeSet::new(); nc];
    let mut inward = vec![BTreeSet::new(); nc];
    for dent in find_dents(&o.p1) {
        assert_eq!(dent.kind, DentKind::Outward, "unexpected dent at {}", dent.d);
        outward[clause_of(&dent.d).expect("dent inside a clause")].insert(dent.d);
    }
    for dent in find_dents(&o.p2) {
        assert_eq!(dent.kind, DentKind::Inward, "unexpected dent at {}", dent.d);
        inward[clause_of(&dent.d).expect("dent inside a clause")].insert(dent.d);
    }
    for (k, c) in o.layout.clauses.iter().enumerate() {
        let peaks: BTreeSet<String> = c.peaks.values().map(|p| p.p.clone()).collect();
        assert_eq!(outward[k], peaks, "clause {k}");
        let tips: BTreeSet<String> = c.notches.iter().map(|n| n[1].clone()).collect();
        assert_eq!(inward[k], tips, "clause {k}");
        assert_eq!(peaks.len(), 9);
        assert_eq!(tips.len(), 4);
    }
}

#[test]
fn nine_outward_peaks_and_four_inward_dents_per_clause() {
    check_dents(ladder());
}

#[test]
fn regions_are_valid_and_compatible() {
    let o = ladder();
    assert_eq!(validate_region(&o.p1), Ok(()));
    assert_eq!(validate_region(&o.p2), Ok(()));
    assert!(compatible(&o.p1, &o.p2));
}

#[test]
fn budget_is_five_per_clause() {
    let o = ladder();
    assert_eq!(o.layout.clauses.len(), 2);
    assert_eq!(o.k, 10);
}

#[test]
fn single_literal_clauses_are_padded_before_building() {
    let (i, d) = ladder2();
    let mut i = i;
    i.clauses[0].literals.truncate(1);
    let mut d = d;
    d.edges.retain(|e| !(e.clause == 0 && e.literal > 0));
    let o = reduce(&i, &d).expect("reduces");
    assert!(o.instance.clauses.iter().all(|c| c.literals.len() == 3));
    assert_eq!(o.k, 5 * o.instance.clauses.len());
    check_dents(&o);
}

#[test]
fn flanks_of_every_peak_are_hidden_in_the_second_region() {
    let o = ladder();
    for c in &o.layout.clauses {
        for (role, pk) in &c.peaks {
            let (a, b) = (o.point2(&pk.p1), o.point2(&pk.p2));
            assert!(!visible(&o.p2, &a, &b).unwrap(), "{role}");
        }
    }
}

#[test]
fn left_peaks_never_reach_primed_peaks_with_one_bend() {
    let o = ladder();
    for c in &o.layout.clauses {
        for l in LEFT {
            for r in PRIMED {
                let a = o.point2(&c.peaks[l].p);
                let b = o.point2(&c.peaks[r].p);
                assert!(!one_bend_visible(&o.p2, &a, &b).unwrap(), "{l} {r}");
            }
        }
    }
}

#[test]
fn each_primed_peak_sees_exactly_its_mu_point() {
    let o = ladder();
    let all_mu: Vec<String> = o.layout.clauses.iter().flat_map(|c| c.mu.iter().cloned()).collect();
    for c in &o.layout.clauses {
        for (i, role) in PRIMED.iter().enumerate() {
            let peak = o.point2(&c.peaks[*role].p);
            let seen: Vec<&String> = all_mu.iter().filter(|m| visible_unchecked(&o.p2, &peak, &o.point2(m))).collect();
            assert_eq!(seen, vec![&c.mu[i]], "{role}");
            let peak1 = o.point1(&c.peaks[*role].p);
            assert!(visible_unchecked(&o.p1, &peak1, &o.point1(&c.mu[i])));
        }
    }
}

#[test]
fn deep_notch_sees_the_facing_side_of_the_other_notches() {
    let o = ladder();
    for c in &o.layout.clauses {
        let d = o.point2(&c.notches[0][1]);
        for n in &c.notches[1..] {
            let [a, t, b] = [&n[0], &n[1], &n[2]].map(|l| o.point2(l));
            for target in [midpoint(&a, &t), midpoint(&t, &b), t.clone()] {
                assert!(visible_unchecked(&o.p2, &d, &target), "{} to {:?}", n[1], target);
            }
        }
    }
}

#[test]
fn hole_stays_clear_of_peak_visibility_in_the_first_region() {
    let o = ladder();
    for c in &o.layout.clauses {
        let hole: Vec<Point> = c.hole.iter().map(|l| o.point1(l)).collect();
        for (role, pk) in &c.peaks {
            let vr = visibility_region(&o.p1, &o.point1(&pk.p)).unwrap();
            assert!(!polygons_overlap(&vr.boundary, &hole), "{role}");
        }
    }
}

#[test]
fn tolerance_is_positive_and_matches_the_trace() {
    let o = ladder();
    assert!(o.params.tau > Rational::zero());
    let traces: Vec<ClauseTrace> = o.layout.clauses.iter().map(|c| c.trace.clone()).collect();
    assert_eq!(compute_tolerance(&traces).unwrap(), o.params.tau);
    for t in &traces {
        assert!(&o.params.tau * Rational::from_integer(SAFETY.into()) <= t.clearance);
    }
}

#[test]
fn designed_crossings_are_recorded() {
    let o = ladder();
    for c in &o.layout.clauses {
        let got: BTreeSet<(String, String)> = c.trace.crossings.iter().map(|p| (p.a.clone(), p.b.clone())).collect();
        for (a, b) in CROSSING_PAIRS {
            assert!(
                got.contains(&(a.to_string(), b.to_string())) || got.contains(&(b.to_string(), a.to_string())),
                "{a} {b}"
            );
        }
    }
}

#[test]
fn coordinates_fit_the_bit_budget() {
    let o = ladder();
    let budget = bit_length_budget(o.instance.variables.len(), o.instance.clauses.len());
    assert!(o.max_bit_length() <= budget, "{} > {budget}", o.max_bit_length());
}

#[test]
fn reduction_is_deterministic() {
    let (i, d) = ladder2();
    let a = reduce(&i, &d).unwrap();
    assert_eq!(&a, ladder());
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(ladder()).unwrap());
}

#[test]
fn invalid_drawings_are_rejected() {
    let (i, mut d) = ladder2();
    d.edges.pop();
    assert!(matches!(reduce(&i, &d), Err(ReductionError::Instance(_))));
}

#[test]
fn random_ladders_reduce_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 3 {
        let Some((i, d)) = random_ladder(&mut rng, 3) else {
            continue;
        };
        let o = reduce(&i, &d).expect("reduces");
        check_dents(&o);
        assert!(compatible(&o.p1, &o.p2));
        assert_eq!(o.k, 5 * o.instance.clauses.len());
        assert!(o.max_bit_length() <= bit_length_budget(o.instance.variables.len(), o.instance.clauses.len()));
        done += 1;
    }
}
