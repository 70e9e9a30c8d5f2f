//! Compatible triangulation of two simple polygons without Steiner points.

use std::cmp::Ordering;

use crate::geometry::{cross, dot, orient_sign, strictly_inside_segment, Point};
use crate::regions::{ccw_cmp_from, LabelledPolygon};
use crate::triangulation::{CompatiblePair, Triangulation};

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZeroSteinerError {
    #[error("polygons are not compatible: {0}")]
    Incompatible(String),
    #[error("polygon has {n} vertices, brute force is capped at {bound}")]
    TooLarge { n: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTable {
    pub n: usize,
    pub valid: Vec<Vec<bool>>,
}

impl DiagonalTable {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.valid[i][j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroSteinerVerdict {
    Yes(CompatiblePair),
    No,
}

impl ZeroSteinerVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ZeroSteinerVerdict::Yes(_))
    }
}

/// Reorders `p2` so that index `i` carries the same label as `p1[i]`.
pub fn align(p1: &LabelledPolygon, p2: &LabelledPolygon) -> Result<Vec<Point>, ZeroSteinerError> {
    let n = p1.len();
    if n != p2.len() || n < 3 {
        return Err(ZeroSteinerError::Incompatible(format!("sizes {} and {}", n, p2.len())));
    }
    let off = p2
        .vertices
        .iter()
        .position(|v| v.label == p1.vertices[0].label)
        .ok_or_else(|| ZeroSteinerError::Incompatible(format!("label {} missing", p1.vertices[0].label)))?;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = &p2.vertices[(i + off) % n];
        if v.label != p1.vertices[i].label {
            return Err(ZeroSteinerError::Incompatible(format!(
                "position {i}: {} vs {}",
                p1.vertices[i].label, v.label
            )));
        }
        out.push(v.point());
    }
    Ok(out)
}

/// Is `pts[i] -> pts[j]` a diagonal strictly inside the polygon (interior on the right)?
pub fn is_interior_diagonal(pts: &[Point], i: usize, j: usize) -> bool {
    let n = pts.len();
    if i == j {
        return false;
    }
    let (a, b) = (&pts[i], &pts[j]);
    if a == b {
        return false;
    }
    let d_in = pts[(i + n - 1) % n].sub(a);
    let d_out = pts[(i + 1) % n].sub(a);
    let dir = b.sub(a);
    let same_as_in = cross(&d_in, &dir) == num::zero() && dot(&d_in, &dir) > num::zero();
    if same_as_in || ccw_cmp_from(&d_in, &dir, &d_out) != Ordering::Less {
        return false;
    }
    for k in 0..n {
        let c = &pts[k];
        if k != i && k != j && strictly_inside_segment(c, a, b) {
            return false;
        }
        let e = &pts[(k + 1) % n];
        let o1 = orient_sign(a, b, c);
        let o2 = orient_sign(a, b, e);
        if o1 * o2 < 0 && orient_sign(c, e, a) * orient_sign(c, e, b) < 0 {
            return false;
        }
    }
    true
}

pub fn build_diagonal_table(p1: &LabelledPolygon, p2: &LabelledPolygon) -> Result<DiagonalTable, ZeroSteinerError> {
    let b = align(p1, p2)?;
    let a = p1.points();
    Ok(table_from_points(&a, &b))
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn table_from_points(a: &[Point], b: &[Point]) -> DiagonalTable {
    let n = a.len();
    let mut valid = vec![vec![false; n]; n];
    for i in 0..n {
        valid[i][(i + 1) % n] = true;
        valid[(i + 1) % n][i] = true;
    }
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let ok = is_interior_diagonal(a, i, j) && is_interior_diagonal(b, i, j);
            valid[i][j] = ok;
            valid[j][i] = ok;
        }
    }
    DiagonalTable { n, valid }
}

/// Interval DP; returns index triangles (clockwise when the polygon is) or `None`.
pub fn solve_table(t: &DiagonalTable) -> Option<Vec<[usize; 3]>> {
    let n = t.n;
    if n < 3 {
        return None;
    }
    // split[i][j] = smallest k making (i..j) triangulable
    let mut split = vec![vec![usize::MAX; n]; n];
    let mut feas = vec![vec![false; n]; n];
    for i in 0..n - 1 {
        feas[i][i + 1] = true;
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            if !t.valid[i][j] {
                continue;
            }
            for k in i + 1..j {
                if feas[i][k] && feas[k][j] && t.valid[i][k] && t.valid[k][j] {
                    feas[i][j] = true;
                    split[i][j] = k;
                    break;
                }
            }
        }
    }
    if !feas[0][n - 1] {
        return None;
    }
    let mut out = Vec::with_capacity(n - 2);
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j <= i + 1 {
            continue;
        }
        let k = split[i][j];
        out.push([i, k, j]);
        stack.push((i, k));
        stack.push((k, j));
    }
    out.sort();
    Some(out)
}

pub fn decide_zero_steiner(p1: &LabelledPolygon, p2: &LabelledPolygon) -> Result<ZeroSteinerVerdict, ZeroSteinerError> {
    let table = build_diagonal_table(p1, p2)?;
    Ok(match solve_table(&table) {
        None => ZeroSteinerVerdict::No,
        Some(tris) => {
            let faces: Vec<[String; 3]> = tris
                .iter()
                .map(|t| {
                    let l = |i: usize| p1.vertices[i].label.clone();
                    let f = [l(t[0]), l(t[1]), l(t[2])];
                    let pts = p1.points();
                    // faces are stored clockwise
                    if orient_sign(&pts[t[0]], &pts[t[1]], &pts[t[2]]) > 0 {
                        [f[0].clone(), f[2].clone(), f[1].clone()]
                    } else {
                        f
                    }
                })
                .collect();
            let tri = Triangulation { steiner: vec![], faces };
            ZeroSteinerVerdict::Yes(CompatiblePair { t1: tri.clone(), t2: tri })
        }
    })
}

/// Calls `visit` with the triangle list of every triangulation of the convex `n`-gon.
pub fn enumerate_triangulations(n: usize, visit: &mut dyn FnMut(&[[usize; 3]]) -> bool) {
    fn rec(
        pending: &mut Vec<(usize, usize)>,
        acc: &mut Vec<[usize; 3]>,
        visit: &mut dyn FnMut(&[[usize; 3]]) -> bool,
    ) -> bool {
        let Some((i, j)) = pending.pop() else {
            return visit(acc);
        };
        if j <= i + 1 {
            let cont = rec(pending, acc, visit);
            pending.push((i, j));
            return cont;
        }
        for k in i + 1..j {
            acc.push([i, k, j]);
            pending.push((i, k));
            pending.push((k, j));
            let cont = rec(pending, acc, visit);
            pending.pop();
            pending.pop();
            acc.pop();
            if !cont {
                pending.push((i, j));
                return false;
            }
        }
        pending.push((i, j));
        true
    }
    if n < 3 {
        return;
    }
    let mut pending = vec![(0, n - 1)];
    let mut acc = Vec::new();
    rec(&mut pending, &mut acc, visit);
}

pub fn count_triangulations(n: usize) -> u64 {
    let mut c = 0u64;
    enumerate_triangulations(n, &mut |_| {
        c += 1;
        true
    });
    c
}

/// Exhaustive oracle: accept iff some triangulation uses only doubly-interior diagonals.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_zero_steiner(
    p1: &LabelledPolygon,
    p2: &LabelledPolygon,
    bound: usize,
) -> Result<bool, ZeroSteinerError> {
    let n = p1.len();
    if n > bound {
        return Err(ZeroSteinerError::TooLarge { n, bound });
    }
    let b = align(p1, p2)?;
    let a = p1.points();
    let mut good = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            good[i][j] = (i + 1) % n == j
                || (j + 1) % n == i
                || (i != j && is_interior_diagonal(&a, i, j) && is_interior_diagonal(&b, i, j));
        }
    }
    let ok = |i: usize, j: usize| good[i][j];
    let mut found = false;
    enumerate_triangulations(n, &mut |tris| {
        if tris.iter().all(|t| ok(t[0], t[1]) && ok(t[1], t[2]) && ok(t[0], t[2])) {
            found = true;
            return false;
        }
        true
    });
    Ok(found)
}
