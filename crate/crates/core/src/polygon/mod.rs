//! Canonical simple polygons and their pockets.

mod pocket;
mod simplicity;

pub use pocket::{classify_degenerate, find_pockets, HullInfo, Pocket, PocketOrientation, Regime, VertexSource};
pub use simplicity::{is_simple, is_simple_brute};
pub(crate) use pocket::pockets_from_hull;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, orient_sign, Direction, Point, Rational};

/// One polygon edge: a primitive direction and a positive scalar length,
/// so the edge vector is `len * dir`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub dir: Direction,
    pub len: Rational,
}

impl Edge {
    pub fn vector(&self) -> Point {
        self.dir.vector().scale(&self.len)
    }

    pub fn from_vector(v: &Point) -> Option<Edge> {
        Direction::from_vector(v).map(|(dir, len)| Edge { dir, len })
    }
}

/// A counterclockwise simple polygon in canonical form: no two
/// consecutive edges share a direction, and vertex 0 is the
/// lowest-then-leftmost vertex.
#[derive(Clone)]
pub struct Polygon {
    vertices: Vec<Point>,
    edges: Vec<Edge>,
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polygon {}

impl Hash for Polygon {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter()).finish()
    }
}

fn codirectional(a: &Point, b: &Point, c: &Point) -> bool {
    let u = b - a;
    let v = c - b;
    u.cross(&v).is_zero() && u.dot(&v).is_positive()
}

/// Drops repeated points and straight vertices, cyclically.
pub(crate) fn merge_straight(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() == Some(p) {
            continue;
        }
        while out.len() >= 2 && codirectional(&out[out.len() - 2], &out[out.len() - 1], p) {
            out.pop();
        }
        out.push(p.clone());
    }
    loop {
        let mut changed = false;
        if out.len() >= 2 && out.first() == out.last() {
            out.pop();
            changed = true;
        }
        let m = out.len();
        if m >= 3 && codirectional(&out[m - 2], &out[m - 1], &out[0]) {
            out.pop();
            changed = true;
        }
        let m = out.len();
        if m >= 3 && codirectional(&out[m - 1], &out[0], &out[1]) {
            out.remove(0);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    out
}

impl Polygon {
    /// Validating constructor: accepts either orientation, merges straight
    /// vertices, and rejects non-simple or zero-area input.
    pub fn from_vertices(points: &[Point]) -> Result<Polygon> {
        if points.len() < 3 {
            return Err(Error::TooFewVertices(points.len()));
        }
        let merged = merge_straight(points);
        if merged.len() < 3 {
            return Err(Error::DegeneratePolygon);
        }
        let area = geom::signed_area2(&merged);
        if area.is_zero() {
            return Err(if is_simple(&merged) { Error::DegeneratePolygon } else { Error::Simplicity });
        }
        if !is_simple(&merged) {
            return Err(Error::Simplicity);
        }
        Ok(Polygon::canonical_unchecked(merged, area.is_negative()))
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Polygon> {
        let pts: Vec<Point> = coords.iter().map(|&(x, y)| Point::int(x, y)).collect();
        Polygon::from_vertices(&pts)
    }

    /// Canonicalizes a counterclockwise vertex cycle that is already known
    /// to be simple.
    pub(crate) fn from_ccw_unchecked(points: Vec<Point>) -> Polygon {
        let merged = merge_straight(&points);
        Polygon::canonical_unchecked(merged, false)
    }

    fn canonical_unchecked(mut pts: Vec<Point>, reverse: bool) -> Polygon {
        if reverse {
            pts.reverse();
        }
        let start = (0..pts.len()).min_by(|&i, &j| pts[i].lower_left_cmp(&pts[j])).unwrap_or(0);
        pts.rotate_left(start);
        let n = pts.len();
        let edges = (0..n)
            .map(|i| Edge::from_vector(&(&pts[(i + 1) % n] - &pts[i])).expect("repeated vertex in canonical polygon"))
            .collect();
        Polygon { vertices: pts, edges }
    }

    /// Rebuilds a polygon from an anchor point and an edge cycle.
    pub fn from_edges(anchor: &Point, edges: &[Edge]) -> Result<Polygon> {
        let mut pts = Vec::with_capacity(edges.len());
        let mut cur = anchor.clone();
        for e in edges {
            pts.push(cur.clone());
            cur = &cur + &e.vector();
        }
        if cur != *anchor {
            return Err(Error::InvalidArgument("edge vectors do not close".into()));
        }
        Polygon::from_vertices(&pts)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn anchor(&self) -> &Point {
        &self.vertices[0]
    }

    /// Vertex by cyclic index.
    pub fn vertex(&self, i: isize) -> &Point {
        let n = self.n() as isize;
        &self.vertices[i.rem_euclid(n) as usize]
    }

    pub fn edge(&self, i: isize) -> &Edge {
        let n = self.n() as isize;
        &self.edges[i.rem_euclid(n) as usize]
    }

    /// Twice the (positive) area.
    pub fn area2(&self) -> Rational {
        geom::signed_area2(&self.vertices)
    }

    pub fn area(&self) -> Rational {
        self.area2().half()
    }

    /// 1 for a convex vertex, -1 for a reflex one.
    pub fn turn(&self, i: usize) -> i32 {
        let n = self.n() as isize;
        let i = i as isize;
        orient_sign(self.vertex(i - 1), self.vertex(i), self.vertex((i + 1) % n))
    }

    pub fn is_convex(&self) -> bool {
        (0..self.n()).all(|i| self.turn(i) > 0)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.edges.iter().all(|e| e.dir.is_axis_parallel())
    }

    /// Lower-left and upper-right corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for p in &self.vertices[1..] {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        (lo, hi)
    }

    pub fn convex_hull(&self) -> Vec<Point> {
        geom::convex_hull(&self.vertices).expect("polygon has vertices")
    }

    pub fn translate(&self, d: &Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|p| p + d).collect(), edges: self.edges.clone() }
    }

    /// Total edge length per direction, sorted by angle. Flipturns leave
    /// this unchanged even when they merge edges.
    pub fn direction_lengths(&self) -> Vec<(Direction, Rational)> {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<Direction, Rational> = BTreeMap::new();
        for e in &self.edges {
            let slot = acc.entry(e.dir.clone()).or_insert(Rational::ZERO);
            *slot += &e.len;
        }
        acc.into_iter().collect()
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.vertices)
    }

    pub fn to_json(&self) -> PolygonFile {
        PolygonFile { vertices: self.vertices.clone(), meta: None }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Polygon> {
        let text = std::fs::read_to_string(path)?;
        let file: PolygonFile = serde_json::from_str(&text)?;
        Polygon::from_vertices(&file.vertices)
    }
}

/// On-disk polygon format: `{"vertices": [["num/den", "num/den"], ...]}`
/// with an optional free-form `meta` object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl PolygonFile {
    pub fn with_meta(polygon: &Polygon, meta: serde_json::Value) -> Self {
        PolygonFile { vertices: polygon.vertices.clone(), meta: Some(meta) }
    }

    pub fn polygon(&self) -> Result<Polygon> {
        Polygon::from_vertices(&self.vertices)
    }
}

impl Serialize for Polygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let f = PolygonFile::deserialize(d)?;
        f.polygon().map_err(D::Error::custom)
    }
}

/// Small named polygons: an L-shaped hexagon, a 2x2 square and a U-shaped octagon.
pub mod fixtures {
    use super::*;

    pub fn lhex() -> Polygon {
        Polygon::from_ints(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn square2() -> Polygon {
        Polygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    pub fn u8() -> Polygon {
        Polygon::from_ints(&[(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }
}
