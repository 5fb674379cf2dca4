use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Polygon;
use crate::geom::{orient_sign, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Standard,
    Extended,
    Modified,
}

impl std::str::FromStr for Regime {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" => Ok(Regime::Standard),
            "extended" => Ok(Regime::Extended),
            "modified" => Ok(Regime::Modified),
            other => Err(format!("unknown regime {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PocketOrientation {
    Diagonal,
    Orthogonal,
}

/// A pocket: the boundary chain from `first_vertex` to `last_vertex`
/// (counterclockwise, indices modulo n) together with its lid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pocket {
    pub first_vertex: usize,
    pub last_vertex: usize,
    pub lid: (Point, Point),
    pub regime: Regime,
    pub orientation: PocketOrientation,
    pub degenerate: bool,
}

impl Pocket {
    pub fn edge_count(&self, n: usize) -> usize {
        (self.last_vertex + n - self.first_vertex) % n
    }

    pub fn is_diagonal(&self) -> bool {
        self.orientation == PocketOrientation::Diagonal
    }

    pub fn lid_midpoint(&self) -> Point {
        self.lid.0.midpoint(&self.lid.1)
    }

    fn new<V: VertexSource + ?Sized>(p: &V, i: usize, j: usize, regime: Regime, degenerate: bool) -> Pocket {
        let a = p.point(i);
        let b = p.point(j);
        let orientation =
            if a.x == b.x || a.y == b.y { PocketOrientation::Orthogonal } else { PocketOrientation::Diagonal };
        Pocket { first_vertex: i, last_vertex: j, lid: (a, b), regime, orientation, degenerate }
    }
}

/// Vertex indices on the convex hull of a polygon, in boundary order.
#[derive(Debug, Clone)]
pub struct HullInfo {
    /// Strict hull vertices.
    pub corners: Vec<usize>,
    /// Every polygon vertex on the hull boundary, corners included.
    pub boundary: Vec<usize>,
}

impl HullInfo {
    pub fn of(p: &Polygon) -> HullInfo {
        let hull = p.convex_hull();
        let index: HashMap<&Point, usize> = p.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut corners: Vec<usize> = hull.iter().map(|q| index[q]).collect();
        // The boundary visits hull corners in hull order; start at the
        // smallest index so the lists are sorted.
        if let Some(k) = (0..corners.len()).min_by_key(|&k| corners[k]) {
            corners.rotate_left(k);
        }
        let n = p.n();
        let v = p.vertices();
        let mut boundary = Vec::with_capacity(corners.len());
        for k in 0..corners.len() {
            let i = corners[k];
            let j = corners[(k + 1) % corners.len()];
            boundary.push(i);
            let mut t = (i + 1) % n;
            while t != j {
                if orient_sign(&v[i], &v[j], &v[t]) == 0 {
                    boundary.push(t);
                }
                t = (t + 1) % n;
            }
        }
        HullInfo { corners, boundary }
    }
}

impl HullInfo {
    /// Builds the hull description from the sorted indices of every
    /// boundary vertex; corners are the ones not colinear with their
    /// boundary neighbours.
    pub fn from_boundary<V: VertexSource + ?Sized>(p: &V, boundary: Vec<usize>) -> HullInfo {
        let m = boundary.len();
        let pts: Vec<Point> = boundary.iter().map(|&i| p.point(i)).collect();
        let corners = (0..m)
            .filter(|&k| orient_sign(&pts[(k + m - 1) % m], &pts[k], &pts[(k + 1) % m]) != 0)
            .map(|k| boundary[k])
            .collect();
        HullInfo { corners, boundary }
    }
}

fn pairs(list: &[usize], n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..list.len()).map(move |k| (list[k], list[(k + 1) % list.len()])).filter(move |&(i, j)| (j + n - i) % n >= 2)
}

/// Read access to the vertices of a polygon-like structure, indices
/// taken modulo `len`.
pub trait VertexSource {
    fn len(&self) -> usize;
    fn point(&self, i: usize) -> Point;
}

impl VertexSource for Polygon {
    fn len(&self) -> usize {
        self.n()
    }

    fn point(&self, i: usize) -> Point {
        self.vertices()[i % self.n()].clone()
    }
}

fn at<V: VertexSource + ?Sized>(p: &V, i: usize, delta: isize) -> Point {
    let n = p.len() as isize;
    p.point(((i as isize + delta) % n + n) as usize % n as usize)
}

fn standard_degenerate<V: VertexSource + ?Sized>(p: &V, i: usize, j: usize) -> bool {
    let (a, b) = (at(p, i, -1), at(p, i, 0));
    orient_sign(&a, &b, &at(p, j, 0)) == 0 && orient_sign(&a, &b, &at(p, j, 1)) == 0
}

fn extended_degenerate<V: VertexSource + ?Sized>(p: &V, i: usize, j: usize) -> bool {
    let (a, b) = (at(p, i, 0), at(p, i, 1));
    orient_sign(&a, &b, &at(p, j, -1)) == 0 && orient_sign(&a, &b, &at(p, j, 0)) == 0
}

pub(crate) fn pockets_from_hull<V: VertexSource + ?Sized>(p: &V, hull: &HullInfo, regime: Regime) -> Vec<Pocket> {
    let n = p.len();
    let mut out: Vec<Pocket> = match regime {
        Regime::Standard => pairs(&hull.boundary, n)
            .map(|(i, j)| Pocket::new(p, i, j, regime, standard_degenerate(p, i, j)))
            .collect(),
        Regime::Extended => pairs(&hull.corners, n)
            .map(|(i, j)| Pocket::new(p, i, j, regime, extended_degenerate(p, i, j)))
            .collect(),
        Regime::Modified => pairs(&hull.boundary, n)
            .map(|(i, j)| {
                let next = (j + 1) % n;
                let end = if orient_sign(&p.point(i), &p.point(j), &p.point(next)) == 0 { next } else { j };
                Pocket::new(p, i, end, regime, false)
            })
            .collect(),
    };
    out.sort_by_key(|q| q.first_vertex);
    out
}

/// All pockets of `p` under `regime`, ordered by first vertex.
pub fn find_pockets(p: &Polygon, regime: Regime) -> Vec<Pocket> {
    pockets_from_hull(p, &HullInfo::of(p), regime)
}

/// Recomputes the degeneracy flag of `pkt` from the polygon.
pub fn classify_degenerate(pkt: &Pocket, p: &Polygon) -> bool {
    match pkt.regime {
        Regime::Standard => standard_degenerate(p, pkt.first_vertex, pkt.last_vertex),
        Regime::Extended => extended_degenerate(p, pkt.first_vertex, pkt.last_vertex),
        Regime::Modified => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn lhex_has_one_diagonal_pocket() {
        let p = lhex();
        let ps = find_pockets(&p, Regime::Standard);
        assert_eq!(ps.len(), 1);
        let k = &ps[0];
        assert_eq!(k.lid, (pt(2, 1), pt(1, 2)));
        assert_eq!(k.edge_count(p.n()), 2);
        assert!(k.is_diagonal());
        assert!(!k.degenerate);
        assert!(!classify_degenerate(k, &p));
    }

    #[test]
    fn convex_has_no_pockets() {
        for r in [Regime::Standard, Regime::Extended, Regime::Modified] {
            assert!(find_pockets(&square2(), r).is_empty());
        }
    }

    #[test]
    fn u8_pockets_per_regime() {
        let p = u8();
        let s = find_pockets(&p, Regime::Standard);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].lid, (pt(2, 2), pt(1, 2)));
        assert_eq!(s[0].edge_count(p.n()), 3);
        assert_eq!(s[0].orientation, PocketOrientation::Orthogonal);
        assert!(s[0].degenerate);

        let e = find_pockets(&p, Regime::Extended);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].lid, (pt(3, 2), pt(0, 2)));
        assert_eq!(e[0].edge_count(p.n()), 5);
        assert!(e[0].degenerate);

        let m = find_pockets(&p, Regime::Modified);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].lid, (pt(2, 2), pt(0, 2)));
        assert_eq!(m[0].edge_count(p.n()), 4);
        assert!(!m[0].degenerate);
    }

    #[test]
    fn boundary_keeps_colinear_vertices() {
        let h = HullInfo::of(&u8());
        assert_eq!(h.corners, vec![0, 1, 2, 7]);
        assert_eq!(h.boundary, vec![0, 1, 2, 3, 6, 7]);
    }
}
