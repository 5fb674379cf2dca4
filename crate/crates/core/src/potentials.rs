//! Brackets, discrete angles and the potential used to bound flipturn
//! sequence lengths.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::engine::FlipturnRecord;
use crate::error::{Error, Result};
use crate::geom::{Direction, Rational};
use crate::polygon::{Polygon, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleVariant {
    /// Directions together with their reversals.
    SSet,
    /// Edge directions only.
    TSet,
}

/// Direction statistics of a polygon.
#[derive(Debug, Clone)]
pub struct DirectionSets {
    /// Sorted by angle.
    pub s_set: Vec<Direction>,
    /// Sorted by angle.
    pub t_set: Vec<Direction>,
    pub s: usize,
    pub t: usize,
    pub h: usize,
}

impl DirectionSets {
    pub fn of(p: &Polygon) -> DirectionSets {
        let t_set: BTreeSet<Direction> = p.edges().iter().map(|e| e.dir.clone()).collect();
        let s_set: BTreeSet<Direction> = t_set.iter().flat_map(|d| [d.clone(), d.reversed()]).collect();
        let slopes: BTreeSet<Direction> = t_set.iter().map(|d| d.slope()).collect();
        let t_set: Vec<Direction> = t_set.into_iter().collect();
        let h = max_in_open_half_circle(&t_set);
        DirectionSets { s: slopes.len(), t: t_set.len(), s_set: s_set.into_iter().collect(), t_set, h }
    }

    pub fn set(&self, variant: AngleVariant) -> &[Direction] {
        match variant {
            AngleVariant::SSet => &self.s_set,
            AngleVariant::TSet => &self.t_set,
        }
    }
}

/// Largest number of directions of `dirs` (sorted by angle) strictly
/// inside some open half-plane of directions.
fn max_in_open_half_circle(dirs: &[Direction]) -> usize {
    let m = dirs.len();
    let mut best = 0;
    // An optimal open half-circle can be rotated until it starts just
    // after some direction; it then holds every direction strictly less
    // than pi counterclockwise from that start, plus the start itself.
    for i in 0..m {
        let mut count = 1;
        for k in 1..m {
            let d = &dirs[(i + k) % m];
            let c = dirs[i].cross(d).signum();
            if c > 0 {
                count += 1;
            } else {
                break;
            }
        }
        best = best.max(count);
    }
    best
}

/// Number of edges whose endpoints are both convex or both reflex.
pub fn brackets(p: &Polygon) -> usize {
    let n = p.n();
    let turns: Vec<i32> = (0..n).map(|i| p.turn(i)).collect();
    (0..n).filter(|&i| turns[i] == turns[(i + 1) % n]).count()
}

/// Count of `set` members strictly inside the short turn from `from` to `to`.
pub(crate) fn count_between(set: &[Direction], from: &Direction, to: &Direction) -> usize {
    let turn = from.cross(to).signum();
    if turn == 0 {
        return 0;
    }
    let (a, b) = if turn > 0 { (from, to) } else { (to, from) };
    let above = |x: &Direction| set.partition_point(|d| d.angle_cmp(x) != Ordering::Greater);
    let below = |x: &Direction| set.partition_point(|d| d.angle_cmp(x) == Ordering::Less);
    let (lo, hi) = (above(a), below(b));
    if a.angle_cmp(b) == Ordering::Less {
        hi.saturating_sub(lo)
    } else {
        (set.len() - lo) + hi
    }
}

/// Bracket count and discrete angle of an open run of edge directions,
/// after merging equal neighbours. Only vertices between two window edges
/// and edges between two such vertices are counted.
pub(crate) fn window_counts(dirs: &[Direction], set: &[Direction]) -> (usize, usize) {
    let mut run: Vec<&Direction> = Vec::with_capacity(dirs.len());
    for d in dirs {
        if run.last() != Some(&d) {
            run.push(d);
        }
    }
    let turns: Vec<i32> = run.windows(2).map(|w| w[0].cross(w[1]).signum()).collect();
    let d: usize = run.windows(2).map(|w| 1 + count_between(set, w[0], w[1])).sum();
    let b = turns.windows(2).filter(|w| w[0] == w[1]).count();
    (b, d)
}

/// Discrete angle at vertex `i`.
pub fn vertex_discrete_angle(p: &Polygon, set: &[Direction], i: usize) -> usize {
    let e_in = &p.edge(i as isize - 1).dir;
    let e_out = &p.edge(i as isize).dir;
    1 + count_between(set, e_in, e_out)
}

pub fn discrete_angle_with(p: &Polygon, set: &[Direction]) -> usize {
    (0..p.n()).map(|i| vertex_discrete_angle(p, set, i)).sum()
}

/// Total discrete angle `D(P)`.
pub fn discrete_angle(p: &Polygon, variant: AngleVariant) -> usize {
    let sets = DirectionSets::of(p);
    discrete_angle_with(p, sets.set(variant))
}

/// `D + B/2` with the S-variant discrete angle.
pub fn potential(p: &Polygon) -> Rational {
    let d = discrete_angle(p, AngleVariant::SSet) as i64;
    let b = brackets(p) as i64;
    Rational::from_int(d) + Rational::new(b, 2)
}

/// Per-step change of the tracked quantities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub degenerate: bool,
    pub delta_d: i64,
    pub delta_d_t: i64,
    pub delta_b: i64,
    /// Twice the change of the potential, so it stays integral.
    pub delta_phi_twice: i64,
    pub area_increased: bool,
    pub violations: Vec<String>,
}

/// Checks one flipturn against the per-step potential bounds; returns
/// an error listing every violated inequality.
pub fn check_step(before: &Polygon, after: &Polygon, rec: &FlipturnRecord) -> Result<DeltaReport> {
    let report = delta_report(before, after, rec);
    if report.violations.is_empty() {
        Ok(report)
    } else {
        Err(Error::PotentialViolation(report.violations.join("; ")))
    }
}

pub fn delta_report(before: &Polygon, after: &Polygon, rec: &FlipturnRecord) -> DeltaReport {
    // Both sides share one direction set: flipturns preserve directions.
    let sets = DirectionSets::of(before);
    let d0 = discrete_angle_with(before, &sets.s_set) as i64;
    let d1 = discrete_angle_with(after, &sets.s_set) as i64;
    let t0 = discrete_angle_with(before, &sets.t_set) as i64;
    let t1 = discrete_angle_with(after, &sets.t_set) as i64;
    let b0 = brackets(before) as i64;
    let b1 = brackets(after) as i64;
    let degenerate = rec.pocket.degenerate;
    let (dd, dt, db) = (d1 - d0, t1 - t0, b1 - b0);
    let dphi2 = 2 * dd + db;
    let mut v = Vec::new();
    if after.area2() <= before.area2() {
        v.push("area did not increase".to_string());
    }
    if before.direction_lengths() != after.direction_lengths() {
        v.push("edge multiset changed".to_string());
    }
    if degenerate {
        if dd != 0 {
            v.push(format!("degenerate step changed D by {dd}"));
        }
        if dt != 0 {
            v.push(format!("degenerate step changed D_T by {dt}"));
        }
    } else {
        if dd > -2 {
            v.push(format!("nondegenerate step changed D by {dd}"));
        }
        if dt > -2 {
            v.push(format!("nondegenerate step changed D_T by {dt}"));
        }
    }
    if rec.pocket.regime != Regime::Modified {
        if degenerate && db > -2 {
            v.push(format!("degenerate step changed B by {db}"));
        }
        if !degenerate && db > 2 {
            v.push(format!("nondegenerate step changed B by {db}"));
        }
        if dphi2 > -2 {
            v.push(format!("potential changed by {dphi2}/2"));
        }
        if before.is_orthogonal() {
            if rec.pocket.is_diagonal() && db > 0 {
                v.push(format!("diagonal orthogonal-polygon step changed B by {db}"));
            }
            if !rec.pocket.is_diagonal() && db != -2 {
                v.push(format!("orthogonal step changed B by {db}"));
            }
        }
    }
    DeltaReport {
        degenerate,
        delta_d: dd,
        delta_d_t: dt,
        delta_b: db,
        delta_phi_twice: dphi2,
        area_increased: after.area2() > before.area2(),
        violations: v,
    }
}

/// Upper bounds on the length of any convexifying sequence, per regime
/// family; `None` where a bound does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ceilings {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub h: usize,
    pub orthogonal: Option<usize>,
    pub s_oriented: usize,
    pub general: usize,
    pub t_variant: usize,
    pub modified: usize,
    /// Perimeter of a polygon with integer edge lengths.
    pub lattice_perimeter: Option<u64>,
}

impl Ceilings {
    pub fn of(p: &Polygon) -> Ceilings {
        let sets = DirectionSets::of(p);
        let (n, s, t, h) = (p.n() as i64, sets.s as i64, sets.t as i64, sets.h as i64);
        let orthogonal = if p.is_orthogonal() && n > 4 { Some((n - 5) as usize) } else { None };
        let s_oriented = (n * s - (n + 5 * s).div_euclid(2) - 1).max(0) as usize;
        let general = (n * n - 4 * n + 1).max(0) as usize;
        let t_variant = (n * h - (n + 3 * t).div_euclid(2) - 1).max(0) as usize;
        let modified = (n * h - n - t + 1).div_euclid(2).max(0) as usize;
        let lattice_perimeter = if p.is_orthogonal() && p.edges().iter().all(|e| e.len.is_integer()) {
            p.edges().iter().map(|e| e.len.to_i64().map(|v| v as u64)).sum::<Option<u64>>()
        } else {
            None
        };
        Ceilings { n: n as usize, s: s as usize, t: t as usize, h: h as usize, orthogonal, s_oriented, general, t_variant, modified, lattice_perimeter }
    }

    /// Checks a completed sequence length; returns the violated bounds.
    pub fn violations(&self, regime: Regime, len: usize) -> Vec<String> {
        let mut v = Vec::new();
        match regime {
            Regime::Modified => {
                if len > self.modified {
                    v.push(format!("length {len} exceeds modified bound {}", self.modified));
                }
            }
            Regime::Standard | Regime::Extended => {
                if let Some(c) = self.orthogonal {
                    if len > c {
                        v.push(format!("length {len} exceeds n-5 = {c}"));
                    }
                }
                if len > self.s_oriented {
                    v.push(format!("length {len} exceeds ns-floor((n+5s)/2)-1 = {}", self.s_oriented));
                }
                if len > self.general {
                    v.push(format!("length {len} exceeds n^2-4n+1 = {}", self.general));
                }
                if len > self.t_variant {
                    v.push(format!("length {len} exceeds nh-floor((n+3t)/2)-1 = {}", self.t_variant));
                }
                if let Some(perim) = self.lattice_perimeter {
                    // len <= L - 2 sqrt(L)  <=>  (L - len)^2 >= 4L with L >= len.
                    let l = perim as i128;
                    let gap = l - len as i128;
                    if gap < 0 || gap * gap < 4 * l {
                        v.push(format!("length {len} exceeds L-2sqrt(L) for perimeter {perim}"));
                    }
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    fn brute_discrete_angle(p: &Polygon, set: &[Direction]) -> usize {
        let n = p.n();
        (0..n)
            .map(|i| {
                let a = &p.edge(i as isize - 1).dir;
                let b = &p.edge(i as isize).dir;
                1 + set.iter().filter(|d| d.strictly_between(a, b)).count()
            })
            .sum()
    }

    #[test]
    fn square_values() {
        let q = square2();
        assert_eq!(brackets(&q), 4);
        assert_eq!(discrete_angle(&q, AngleVariant::SSet), 4);
        assert_eq!(discrete_angle(&q, AngleVariant::TSet), 4);
        assert_eq!(potential(&q), Rational::from_int(6));
    }

    #[test]
    fn lhex_values() {
        let p = lhex();
        assert_eq!(brackets(&p), 4);
        let sets = DirectionSets::of(&p);
        let d = discrete_angle(&p, AngleVariant::SSet);
        assert_eq!(d, brute_discrete_angle(&p, &sets.s_set));
        assert!(d <= p.n() * (sets.s - 1));
        assert_eq!(d, 6);
    }

    #[test]
    fn direction_set_sizes() {
        let sets = DirectionSets::of(&u8());
        assert_eq!((sets.s, sets.t, sets.h), (2, 4, 2));
        assert_eq!(sets.s_set.len(), 4);
    }

    #[test]
    fn between_count_matches_brute_force() {
        let dirs: Vec<Direction> = [(1, 0), (2, 1), (1, 1), (0, 1), (-1, 2), (-1, 0), (-1, -1), (0, -1), (3, -1)]
            .iter()
            .map(|&(x, y)| Direction::of(x, y))
            .collect();
        let mut set = dirs.clone();
        set.sort();
        for a in &dirs {
            for b in &dirs {
                let brute = set.iter().filter(|d| d.strictly_between(a, b)).count();
                assert_eq!(count_between(&set, a, b), brute, "{a:?} {b:?}");
            }
        }
    }
}
