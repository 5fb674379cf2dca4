//! Reference flipturn engine working directly on vertex lists.

mod enumerate;
mod trace;
mod tree;

pub use enumerate::{enumerate_sequences, longest_choices, Enumeration};
pub(crate) use enumerate::flip;
pub use trace::{default_max_steps, run_sequence, Trace, TraceStep};
pub use tree::TreeState;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient_sign, Point, Rational};
use crate::polygon::{find_pockets, HullInfo, Pocket, Polygon, Regime};
use crate::potentials::{self, DirectionSets};

/// How much per-step checking the engines do, read once from
/// `FLIPTURN_CHECK_LEVEL` (`off`, `fast` or `full`; default `fast`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckLevel {
    Off,
    Fast,
    Full,
}

impl CheckLevel {
    pub fn from_env() -> CheckLevel {
        static LEVEL: OnceLock<CheckLevel> = OnceLock::new();
        *LEVEL.get_or_init(|| match std::env::var("FLIPTURN_CHECK_LEVEL").as_deref() {
            Ok("off") => CheckLevel::Off,
            Ok("full") => CheckLevel::Full,
            _ => CheckLevel::Fast,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipturnRecord {
    pub pocket: Pocket,
    pub vertex_count_before: usize,
    pub vertex_count_after: usize,
    pub area_before: Rational,
    pub area_after: Rational,
    pub brackets_before: usize,
    pub brackets_after: usize,
    pub discrete_angle_before: usize,
    pub discrete_angle_after: usize,
}

/// Rotates the chain from vertex `i` to vertex `j` by 180 degrees about the
/// midpoint of `v_i v_j`, returning the new (uncanonicalized) vertex cycle.
pub(crate) fn reflect_chain(pts: &[Point], i: usize, j: usize) -> Vec<Point> {
    let n = pts.len();
    let mut out = pts.to_vec();
    let sum = &pts[i] + &pts[j];
    let m = (j + n - i) % n;
    for t in 1..m {
        out[(i + t) % n] = &sum - &pts[(j + n - t) % n];
    }
    out
}

fn counters(p: &Polygon, sets: &DirectionSets) -> (usize, usize) {
    (potentials::brackets(p), potentials::discrete_angle_with(p, &sets.s_set))
}

/// Applies a pocket that is known to be current. Skips staleness checks.
pub(crate) fn apply_unchecked(p: &Polygon, pkt: &Pocket) -> Result<(Polygon, FlipturnRecord)> {
    let pts = reflect_chain(p.vertices(), pkt.first_vertex, pkt.last_vertex);
    let q = Polygon::from_ccw_unchecked(pts);
    let sets = DirectionSets::of(p);
    let (b0, d0) = counters(p, &sets);
    let (b1, d1) = counters(&q, &sets);
    let rec = FlipturnRecord {
        pocket: pkt.clone(),
        vertex_count_before: p.n(),
        vertex_count_after: q.n(),
        area_before: p.area(),
        area_after: q.area(),
        brackets_before: b0,
        brackets_after: b1,
        discrete_angle_before: d0,
        discrete_angle_after: d1,
    };
    post_checks(p, &q, &rec)?;
    Ok((q, rec))
}

pub(crate) fn post_checks(p: &Polygon, q: &Polygon, rec: &FlipturnRecord) -> Result<()> {
    let level = CheckLevel::from_env();
    if level == CheckLevel::Off {
        return Ok(());
    }
    if rec.area_after <= rec.area_before {
        return Err(Error::Invariant(format!("area did not increase: {} -> {}", rec.area_before, rec.area_after)));
    }
    if level == CheckLevel::Full {
        if !q.is_simple() {
            return Err(Error::Invariant("flipturn produced a non-simple polygon".into()));
        }
        potentials::check_step(p, q, rec)?;
    }
    Ok(())
}

/// Flipturns `pkt`, which must be one of `find_pockets(p, pkt.regime)`.
pub fn apply_flipturn(p: &Polygon, pkt: &Pocket) -> Result<(Polygon, FlipturnRecord)> {
    if !find_pockets(p, pkt.regime).contains(pkt) {
        return Err(Error::StalePocket);
    }
    apply_unchecked(p, pkt)
}

/// Position of `x` on the boundary of `pts`: `Ok(i)` if it is vertex `i`,
/// `Err(i)` if it lies inside edge `i`.
fn locate(pts: &[Point], x: &Point) -> Option<std::result::Result<usize, usize>> {
    let n = pts.len();
    if let Some(i) = pts.iter().position(|v| v == x) {
        return Some(Ok(i));
    }
    (0..n)
        .find(|&i| {
            let (a, b) = (&pts[i], &pts[(i + 1) % n]);
            orient_sign(a, b, x) == 0 && (x - a).dot(&(x - b)).is_negative()
        })
        .map(Err)
}

/// Inverse of [`apply_flipturn`]: flipturns the chain between the lid
/// endpoints of `rec` back into place.
pub fn undo_flipturn(p: &Polygon, rec: &FlipturnRecord) -> Result<Polygon> {
    if p.area() != rec.area_after || p.n() != rec.vertex_count_after {
        return Err(Error::BadUndo);
    }
    let (a, b) = &rec.pocket.lid;
    let mut pts = p.vertices().to_vec();
    for x in [a, b] {
        match locate(&pts, x).ok_or(Error::BadUndo)? {
            Ok(_) => {}
            Err(i) => pts.insert(i + 1, x.clone()),
        }
    }
    let i = pts.iter().position(|v| v == a).ok_or(Error::BadUndo)?;
    let j = pts.iter().position(|v| v == b).ok_or(Error::BadUndo)?;
    let q = Polygon::from_ccw_unchecked(reflect_chain(&pts, i, j));
    if q.area() != rec.area_before || q.n() != rec.vertex_count_before {
        return Err(Error::BadUndo);
    }
    Ok(q)
}

/// Mutable view of a polygon under flipturns, shared by the reference
/// engine and the tree engine so that policies can drive either.
pub trait FlipturnState {
    fn n(&self) -> usize;
    fn is_orthogonal(&self) -> bool;
    /// Current pockets ordered by first vertex.
    fn pockets(&mut self, regime: Regime) -> Vec<Pocket>;
    /// Applies a pocket returned by the latest `pockets` call.
    fn apply(&mut self, pkt: &Pocket) -> Result<FlipturnRecord>;
    /// Undoes the most recent un-undone `apply`.
    fn undo(&mut self, rec: &FlipturnRecord) -> Result<()>;
    fn polygon(&mut self) -> Polygon;
}

/// The O(n)-per-flipturn reference state.
#[derive(Clone)]
pub struct NaiveState {
    polygon: Polygon,
    hull: Option<HullInfo>,
}

impl NaiveState {
    pub fn new(polygon: Polygon) -> Self {
        NaiveState { polygon, hull: None }
    }

    pub fn current(&self) -> &Polygon {
        &self.polygon
    }
}

impl FlipturnState for NaiveState {
    fn n(&self) -> usize {
        self.polygon.n()
    }

    fn is_orthogonal(&self) -> bool {
        self.polygon.is_orthogonal()
    }

    fn pockets(&mut self, regime: Regime) -> Vec<Pocket> {
        let hull = self.hull.get_or_insert_with(|| HullInfo::of(&self.polygon));
        crate::polygon::pockets_from_hull(&self.polygon, hull, regime)
    }

    fn apply(&mut self, pkt: &Pocket) -> Result<FlipturnRecord> {
        let (q, rec) = apply_unchecked(&self.polygon, pkt)?;
        self.polygon = q;
        self.hull = None;
        Ok(rec)
    }

    fn undo(&mut self, rec: &FlipturnRecord) -> Result<()> {
        self.polygon = undo_flipturn(&self.polygon, rec)?;
        self.hull = None;
        Ok(())
    }

    fn polygon(&mut self) -> Polygon {
        self.polygon.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn lhex_flips_to_square() {
        let p = lhex();
        let pkt = find_pockets(&p, Regime::Standard).remove(0);
        let (q, rec) = apply_flipturn(&p, &pkt).unwrap();
        assert_eq!(q, square2());
        assert_eq!((rec.vertex_count_before, rec.vertex_count_after), (6, 4));
        assert_eq!(rec.area_after, Rational::from_int(4));
        assert_eq!(undo_flipturn(&q, &rec).unwrap(), p);
    }

    #[test]
    fn u8_extended_flip_matches_pointwise_reflection() {
        let p = u8();
        let pkt = find_pockets(&p, Regime::Extended).remove(0);
        let (q, rec) = apply_flipturn(&p, &pkt).unwrap();
        // Reflect every pocket vertex through the lid midpoint by hand.
        let c2 = Point::int(3, 4);
        let mut expect: Vec<Point> = p.vertices()[..=2].to_vec();
        for k in (3..=7).rev() {
            let v = &p.vertices()[k % 8];
            let w = &c2 - v;
            if k != 7 {
                expect.push(w);
            }
        }
        expect.push(p.vertices()[7].clone());
        let oracle = Polygon::from_vertices(&expect).unwrap();
        assert_eq!(q, oracle);
        assert_eq!(q.n(), 8);
        assert!(rec.pocket.degenerate);
        assert_eq!(undo_flipturn(&q, &rec).unwrap(), p);
    }

    #[test]
    fn stale_pocket_is_rejected() {
        let pkt = find_pockets(&lhex(), Regime::Standard).remove(0);
        assert!(matches!(apply_flipturn(&square2(), &pkt), Err(Error::StalePocket)));
    }

    #[test]
    fn undo_is_a_stack() {
        let p0 = u8();
        let k0 = find_pockets(&p0, Regime::Modified).remove(0);
        let (p1, r1) = apply_flipturn(&p0, &k0).unwrap();
        let k1 = find_pockets(&p1, Regime::Modified).remove(0);
        let (p2, r2) = apply_flipturn(&p1, &k1).unwrap();
        assert!(p2.is_convex());
        assert_eq!(undo_flipturn(&p2, &r2).unwrap(), p1);
        assert_eq!(undo_flipturn(&p1, &r1).unwrap(), p0);
        assert!(matches!(undo_flipturn(&p2, &r1), Err(Error::BadUndo)));
    }
}
