use std::cmp::Ordering;

use super::{Direction, GeomError, Point};

fn sorted_unique(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    pts.dedup();
    pts
}

fn rotate_to_lower_left(mut hull: Vec<Point>) -> Vec<Point> {
    if let Some(start) = (0..hull.len()).min_by(|&i, &j| hull[i].lower_left_cmp(&hull[j])) {
        hull.rotate_left(start);
    }
    hull
}

fn monotone_chain(pts: &[Point], keep_colinear: bool) -> Vec<Point> {
    let pops = |o: i32| if keep_colinear { o < 0 } else { o <= 0 };
    let mut lower: Vec<Point> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && pops(super::orient_sign(&lower[lower.len() - 2], &lower[lower.len() - 1], p)) {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && pops(super::orient_sign(&upper[upper.len() - 2], &upper[upper.len() - 1], p)) {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn all_colinear(pts: &[Point]) -> bool {
    pts.len() < 3 || pts[2..].iter().all(|p| super::orient_sign(&pts[0], &pts[1], p) == 0)
}

/// Strict convex hull, counterclockwise from the lowest-then-leftmost
/// vertex. Colinear inputs yield their two extreme points.
pub fn convex_hull(points: &[Point]) -> Result<Vec<Point>, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let pts = sorted_unique(points);
    if pts.len() <= 2 || all_colinear(&pts) {
        let mut out = vec![pts[0].clone()];
        if pts.len() > 1 {
            out.push(pts[pts.len() - 1].clone());
        }
        return Ok(rotate_to_lower_left(out));
    }
    Ok(rotate_to_lower_left(monotone_chain(&pts, false)))
}

/// Like [`convex_hull`] but keeps every input point that lies on the hull
/// boundary, in boundary order.
pub fn convex_hull_boundary(points: &[Point]) -> Result<Vec<Point>, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let pts = sorted_unique(points);
    if pts.len() <= 2 || all_colinear(&pts) {
        // Degenerate hull: walk out along the segment and back.
        let mut out = pts.clone();
        if pts.len() > 2 {
            out.extend(pts[1..pts.len() - 1].iter().rev().cloned());
        }
        return Ok(rotate_to_lower_left(out));
    }
    Ok(rotate_to_lower_left(monotone_chain(&pts, true)))
}

/// Index of a vertex of the counterclockwise convex chain `poly`
/// maximizing the dot product with `d`, by binary search over edge angles.
pub fn extreme_vertex(poly: &[Point], d: &Point) -> usize {
    let n = poly.len();
    if n <= 2 {
        return (0..n).max_by(|&i, &j| poly[i].dot(d).cmp(&poly[j].dot(d))).unwrap_or(0);
    }
    let dir_of = |i: usize| Direction::from_vector(&(&poly[(i + 1) % n] - &poly[i])).map(|x| x.0);
    let base = match dir_of(0) {
        Some(b) => b,
        None => return (0..n).max_by(|&i, &j| poly[i].dot(d).cmp(&poly[j].dot(d))).unwrap(),
    };
    let target = match Direction::from_vector(&d.perp()) {
        Some((t, _)) => t,
        None => return 0,
    };
    // Angles measured counterclockwise from `base`, in [0, 2 pi).
    let rel = |x: &Direction| -> (u8, Direction) {
        let c = base.cross(x).signum();
        let dotp = base.vector().dot(&x.vector()).signum();
        let half = if c > 0 || (c == 0 && dotp > 0) { 0 } else { 1 };
        (half, x.clone())
    };
    let rel_cmp = |a: &Direction, b: &Direction| -> Ordering {
        let (ha, a) = rel(a);
        let (hb, b) = rel(b);
        ha.cmp(&hb).then_with(|| match a.cross(&b).signum() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    };
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let ok = match dir_of(mid) {
            Some(e) => rel_cmp(&e, &target) != Ordering::Less,
            None => false,
        };
        if ok {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let j = lo % n;
    // Ties along an edge perpendicular to `d` are resolved by a local check.
    let prev = (j + n - 1) % n;
    if poly[prev].dot(d) > poly[j].dot(d) {
        prev
    } else {
        j
    }
}

/// True iff every vertex of the convex chain `poly` lies in the closed
/// wedge at `apex` swept counterclockwise from `ray1` to `ray2`.
pub fn wedge_contains(apex: &Point, ray1: &Direction, ray2: &Direction, poly: &[Point]) -> Result<bool, GeomError> {
    if ray1.cross(ray2).signum() <= 0 {
        return Err(GeomError::BadWedge);
    }
    if poly.is_empty() {
        return Ok(true);
    }
    // Inside means cross(ray1, p - apex) >= 0 and cross(p - apex, ray2) >= 0.
    // Both are linear; test the minimizing vertex of each.
    let n1 = ray1.vector().perp();
    let i = extreme_vertex(poly, &-&n1);
    if n1.dot(&(&poly[i] - apex)).is_negative() {
        return Ok(false);
    }
    let n2 = -&ray2.vector().perp();
    let j = extreme_vertex(poly, &-&n2);
    Ok(!n2.dot(&(&poly[j] - apex)).is_negative())
}
