//! Subchain hulls for the edge tree.
//!
//! Every tree node keeps the hull of the vertex chain spanned by its
//! subtree, in coordinates local to the chain (first vertex at the
//! origin). A hull is the lexicographically sorted list of every chain
//! vertex on the hull boundary, colinear ones included, each tagged with
//! its position along the chain. Reversing a subtree maps its local
//! points through `p -> S - p` where `S` is the chain's end point; this is
//! stored as a pending [`Tag`] instead of being applied.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient_sign, Point};

/// `p -> offset + p` when `reflect` is false, `p -> offset - p` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tag {
    pub reflect: bool,
    pub offset: Point,
}

impl Tag {
    pub fn identity() -> Tag {
        Tag::default()
    }

    pub fn translate(v: Point) -> Tag {
        Tag { reflect: false, offset: v }
    }

    /// Point reflection through `c2 / 2`.
    pub fn reflect(c2: Point) -> Tag {
        Tag { reflect: true, offset: c2 }
    }

    pub fn apply(&self, p: &Point) -> Point {
        if self.reflect {
            &self.offset - p
        } else {
            &self.offset + p
        }
    }

    /// The tag equal to applying `self` first and then `next`.
    pub fn then(&self, next: &Tag) -> Tag {
        let offset = if next.reflect { &next.offset - &self.offset } else { &self.offset + &next.offset };
        Tag { reflect: self.reflect ^ next.reflect, offset }
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.offset.is_zero()
    }
}

/// Hull of a chain of `len + 1` vertices, stored relative to `tag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subhull {
    /// Sorted by stored point; the effective order is reversed when the
    /// tag reflects.
    points: Vec<(Point, u32)>,
    tag: Tag,
    len: u32,
}

impl Subhull {
    /// Hull of the one-vertex chain at the origin.
    pub fn single() -> Subhull {
        Subhull { points: vec![(Point::origin(), 0)], tag: Tag::identity(), len: 0 }
    }

    /// Hull of an explicit chain given in local coordinates.
    pub fn of_chain(chain: &[Point]) -> Subhull {
        let mut pts: Vec<(Point, u32)> = chain.iter().cloned().zip(0..).collect();
        pts.sort();
        pts.dedup_by(|a, b| a.0 == b.0);
        Subhull { points: boundary_of_sorted(pts), tag: Tag::identity(), len: chain.len().saturating_sub(1) as u32 }
    }

    pub fn chain_len(&self) -> usize {
        self.len as usize
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Reverses the underlying chain, whose last vertex is `end`.
    pub fn reverse(&mut self, end: &Point) {
        self.tag = self.tag.then(&Tag::reflect(end.clone()));
    }

    /// Effective points in sorted order with chain positions, shifted by
    /// `shift` and `index_shift`.
    pub fn points_shifted(&self, shift: &Point, index_shift: u32) -> Vec<(Point, u32)> {
        let map = |(p, i): &(Point, u32)| {
            let q = &self.tag.apply(p) + shift;
            let k = if self.tag.reflect { self.len - i } else { *i };
            (q, k + index_shift)
        };
        if self.tag.reflect {
            self.points.iter().rev().map(map).collect()
        } else {
            self.points.iter().map(map).collect()
        }
    }

    pub fn points(&self) -> Vec<(Point, u32)> {
        self.points_shifted(&Point::origin(), 0)
    }

    /// First and last chain vertices that are strict hull corners, each
    /// with the rays along the two hull edges at it.
    pub fn entrance_exit(&self) -> (Wedge, Wedge) {
        let ring = ccw_ring(self.points());
        let corners: Vec<usize> = (0..ring.len()).filter(|&k| is_corner(&ring, k)).collect();
        let first = *corners.iter().min_by_key(|&&k| ring[k].1).expect("nonempty hull");
        let last = *corners.iter().max_by_key(|&&k| ring[k].1).expect("nonempty hull");
        (wedge_at(&ring, first), wedge_at(&ring, last))
    }
}

/// An apex with two rays, given as points on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wedge {
    pub apex: Point,
    pub index: u32,
    pub ray_in: Point,
    pub ray_out: Point,
}

fn ccw_ring(sorted: Vec<(Point, u32)>) -> Vec<(Point, u32)> {
    // Lower chain left to right, then the rest right to left.
    let n = sorted.len();
    if n <= 2 {
        return sorted;
    }
    let (a, b) = (&sorted[0].0, &sorted[n - 1].0);
    let mut lower = vec![sorted[0].clone()];
    let mut upper = Vec::new();
    for p in &sorted[1..n - 1] {
        if orient_sign(a, b, &p.0) <= 0 {
            lower.push(p.clone());
        } else {
            upper.push(p.clone());
        }
    }
    lower.push(sorted[n - 1].clone());
    lower.extend(upper.into_iter().rev());
    lower
}

fn is_corner(ring: &[(Point, u32)], k: usize) -> bool {
    let m = ring.len();
    m < 3 || orient_sign(&ring[(k + m - 1) % m].0, &ring[k].0, &ring[(k + 1) % m].0) != 0
}

fn wedge_at(ring: &[(Point, u32)], k: usize) -> Wedge {
    let m = ring.len();
    let prev = (0..m).map(|d| (k + m - 1 - d) % m).find(|&t| is_corner(ring, t)).unwrap_or(k);
    let next = (1..=m).map(|d| (k + d) % m).find(|&t| is_corner(ring, t)).unwrap_or(k);
    Wedge { apex: ring[k].0.clone(), index: ring[k].1, ray_in: ring[prev].0.clone(), ray_out: ring[next].0.clone() }
}

/// Hull boundary of lexicographically sorted distinct points, colinear
/// boundary points kept.
pub fn boundary_of_sorted(pts: Vec<(Point, u32)>) -> Vec<(Point, u32)> {
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut keep = vec![false; n];
    for sign in [-1, 1] {
        let mut stack: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n {
            while stack.len() >= 2 {
                let (a, b) = (stack[stack.len() - 2], stack[stack.len() - 1]);
                if orient_sign(&pts[a].0, &pts[b].0, &pts[k].0) == sign {
                    stack.pop();
                } else {
                    break;
                }
            }
            stack.push(k);
        }
        for k in stack {
            keep[k] = true;
        }
    }
    pts.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

/// Hull of the concatenation of chain `a` and chain `b`, where `b`'s first
/// vertex sits at `offset` in `a`'s coordinates and follows `a`'s chain
/// after `gap` edges (0 when the chains share a vertex).
pub fn merge_subhulls(a: &Subhull, b: &Subhull, offset: &Point, gap: u32) -> Subhull {
    let left = a.points();
    let right = b.points_shifted(offset, a.len + gap);
    let mut merged = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        let take_left = j >= right.len() || (i < left.len() && left[i].0 <= right[j].0);
        let p = if take_left {
            i += 1;
            left[i - 1].clone()
        } else {
            j += 1;
            right[j - 1].clone()
        };
        match merged.last() {
            Some((q, _)) if *q == p.0 => {}
            _ => merged.push(p),
        }
    }
    Subhull { points: boundary_of_sorted(merged), tag: Tag::identity(), len: a.len + gap + b.len }
}

/// How two convex regions sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Nested,
    Disjoint,
    Crossing,
}

fn inside(ring: &[Point], p: &Point) -> bool {
    let m = ring.len();
    (0..m).all(|k| orient_sign(&ring[k], &ring[(k + 1) % m], p) >= 0)
}

/// Classifies two convex polygons (counterclockwise vertex lists) by
/// counting proper boundary crossings. Quadratic; meant for checks.
pub fn relation(a: &[Point], b: &[Point]) -> Result<Relation> {
    if a.len() < 3 || b.len() < 3 {
        return Ok(Relation::Nested);
    }
    if a.iter().all(|p| inside(b, p)) || b.iter().all(|p| inside(a, p)) {
        return Ok(Relation::Nested);
    }
    let mut crossings = 0;
    for i in 0..a.len() {
        let (p, q) = (&a[i], &a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (r, s) = (&b[j], &b[(j + 1) % b.len()]);
            let d1 = orient_sign(p, q, r);
            let d2 = orient_sign(p, q, s);
            let d3 = orient_sign(r, s, p);
            let d4 = orient_sign(r, s, q);
            if d1 * d2 < 0 && d3 * d4 < 0 {
                crossings += 1;
            }
        }
    }
    match crossings {
        0 => Ok(Relation::Disjoint),
        2 => Ok(Relation::Crossing),
        _ => Err(Error::NotPseudoDisks),
    }
}
