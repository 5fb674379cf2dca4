//! Sweep-line simplicity test for closed polygonal chains.

use std::cmp::Ordering;

use crate::geom::{orient_sign, Point, Rational};

struct Seg<'a> {
    lo: &'a Point,
    hi: &'a Point,
}

fn lex(a: &Point, b: &Point) -> Ordering {
    a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y))
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let within = |u: &Rational, v: &Rational, w: &Rational| (u <= w && w <= v) || (v <= w && w <= u);
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

/// Closed-segment intersection test.
pub(crate) fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient_sign(c, d, a);
    let d2 = orient_sign(c, d, b);
    let d3 = orient_sign(a, b, c);
    let d4 = orient_sign(a, b, d);
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(c, d, a))
        || (d2 == 0 && on_segment(c, d, b))
        || (d3 == 0 && on_segment(a, b, c))
        || (d4 == 0 && on_segment(a, b, d))
}

impl Seg<'_> {
    fn y_at(&self, x: &Rational, y_event: &Rational) -> Rational {
        if self.lo.x == self.hi.x {
            // Vertical: stand in for the sweep point, clamped to the segment.
            let (bot, top) = if self.lo.y <= self.hi.y { (&self.lo.y, &self.hi.y) } else { (&self.hi.y, &self.lo.y) };
            return y_event.clone().max(bot.clone()).min(top.clone());
        }
        let t = (x - &self.lo.x) / (&self.hi.x - &self.lo.x);
        &self.lo.y + &(&t * &(&self.hi.y - &self.lo.y))
    }

    /// Compares slopes; vertical segments are steepest.
    fn slope_cmp(&self, other: &Seg) -> Ordering {
        let v1 = self.lo.x == self.hi.x;
        let v2 = other.lo.x == other.hi.x;
        match (v1, v2) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                let a = (&self.hi.y - &self.lo.y) * (&other.hi.x - &other.lo.x);
                let b = (&other.hi.y - &other.lo.y) * (&self.hi.x - &self.lo.x);
                a.cmp(&b)
            }
        }
    }
}

/// Brute-force O(n^2) check; kept as the reference for the sweep.
pub fn is_simple_brute(pts: &[Point]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    if (0..n).any(|i| pts[i] == pts[(i + 1) % n]) {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            let (c, d) = (&pts[j], &pts[(j + 1) % n]);
            if adjacent {
                if n == 3 {
                    if orient_sign(&pts[0], &pts[1], &pts[2]) == 0 {
                        return false;
                    }
                    continue;
                }
                // Shared endpoint only; overlap means a spike.
                let (shared, u, v) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient_sign(shared, u, v) == 0 && (u - shared).dot(&(v - shared)).is_positive() {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Shamos-Hoey style sweep: reports whether the closed chain through
/// `pts` is a simple polygon.
pub fn is_simple(pts: &[Point]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    if n <= 8 {
        return is_simple_brute(pts);
    }
    for i in 0..n {
        let (u, s, v) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
        if s == v {
            return false;
        }
        if orient_sign(s, u, v) == 0 && (u - s).dot(&(v - s)).is_positive() {
            return false;
        }
    }
    let segs: Vec<Seg> = (0..n)
        .map(|i| {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            if lex(a, b) == Ordering::Less {
                Seg { lo: a, hi: b }
            } else {
                Seg { lo: b, hi: a }
            }
        })
        .collect();
    let adjacent = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;
    let crosses = |i: usize, j: usize| -> bool {
        if adjacent(i, j) {
            return false;
        }
        segments_intersect(segs[i].lo, segs[i].hi, segs[j].lo, segs[j].hi)
    };

    // (point, kind, segment): kind 0 = insert, 1 = remove.
    let mut events: Vec<(&Point, u8, usize)> = Vec::with_capacity(2 * n);
    for (i, s) in segs.iter().enumerate() {
        events.push((s.lo, 0, i));
        events.push((s.hi, 1, i));
    }
    events.sort_by(|a, b| lex(a.0, b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut status: Vec<usize> = Vec::new();
    for (p, kind, id) in events {
        let cmp = |a: usize, b: usize| -> Ordering {
            if a == b {
                return Ordering::Equal;
            }
            segs[a]
                .y_at(&p.x, &p.y)
                .cmp(&segs[b].y_at(&p.x, &p.y))
                .then_with(|| segs[a].slope_cmp(&segs[b]))
                .then(a.cmp(&b))
        };
        if kind == 0 {
            let pos = status.partition_point(|&s| cmp(s, id) == Ordering::Less);
            status.insert(pos, id);
            if pos > 0 && crosses(status[pos - 1], id) {
                return false;
            }
            if pos + 1 < status.len() && crosses(status[pos + 1], id) {
                return false;
            }
        } else {
            let pos = match status.iter().position(|&s| s == id) {
                Some(p) => p,
                None => continue,
            };
            status.remove(pos);
            if pos > 0 && pos < status.len() && crosses(status[pos - 1], status[pos]) {
                return false;
            }
        }
    }
    true
}
