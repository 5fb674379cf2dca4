//! Implicit treap over the edges of a polygon.
//!
//! Edges are kept in boundary order with a reversal bit per node, so a
//! flipturn (which reverses the order of the pocket's edges and keeps
//! their vectors) costs a rotation, a split, a bit flip and a join.
//! Vertex `i` is the anchor plus the sum of the first `i` edge vectors.
//! Each node also carries the area term and the boundary hull of its
//! chain, see [`crate::dynamic_hull`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamic_hull::{merge_subhulls, Subhull};
use crate::error::{Error, Result};
use crate::geom::{Point, Rational};
use crate::polygon::{Edge, Polygon};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    left: u32,
    right: u32,
    prio: u64,
    size: u32,
    /// Children are to be swapped and reversed.
    rev: bool,
    edge: Edge,
    vec: Point,
    sum: Point,
    /// Sum of `cross(c_k, c_{k+1})` over the local chain.
    xsum: Rational,
    hull: Subhull,
    dirty: bool,
}

/// Work counters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub splits: u64,
    pub joins: u64,
    pub hull_merges: u64,
    pub hull_points: u64,
}

impl TreeStats {
    pub fn structural(&self) -> u64 {
        self.splits + self.joins
    }
}

/// What [`EdgeTree::flipturn_span`] did, enough to undo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipSpan {
    rotation: usize,
    len: usize,
    merged_a: Option<(Edge, Edge)>,
    merged_b: Option<(Edge, Edge)>,
}

impl FlipSpan {
    pub fn merges(&self) -> usize {
        self.merged_a.is_some() as usize + self.merged_b.is_some() as usize
    }
}

#[derive(Debug, Clone)]
pub struct EdgeTree {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    anchor: Point,
    rng: ChaCha8Rng,
    stats: TreeStats,
}

impl EdgeTree {
    pub fn build(p: &Polygon) -> EdgeTree {
        EdgeTree::from_edges(p.anchor().clone(), p.edges())
    }

    /// Tree over an arbitrary edge sequence starting at `anchor`.
    pub fn from_edges(anchor: Point, edges: &[Edge]) -> EdgeTree {
        let mut t = EdgeTree {
            nodes: Vec::with_capacity(edges.len()),
            free: Vec::new(),
            root: NIL,
            anchor,
            rng: ChaCha8Rng::seed_from_u64(0x5eed),
            stats: TreeStats::default(),
        };
        t.root = t.build_nodes(edges);
        t
    }

    pub fn len(&self) -> usize {
        self.size(self.root) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.root == NIL
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn stats(&self) -> &TreeStats {
        &self.stats
    }

    /// Twice the signed area enclosed by the edge cycle.
    pub fn area2(&self) -> Rational {
        if self.root == NIL {
            Rational::ZERO
        } else {
            self.nodes[self.root as usize].xsum.clone()
        }
    }

    pub fn height(&self) -> usize {
        fn h(t: &EdgeTree, x: u32) -> usize {
            if x == NIL {
                0
            } else {
                let n = &t.nodes[x as usize];
                1 + h(t, n.left).max(h(t, n.right))
            }
        }
        h(self, self.root)
    }

    fn size(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.nodes[x as usize].size
        }
    }

    fn sum(&self, x: u32) -> Point {
        if x == NIL {
            Point::origin()
        } else {
            self.nodes[x as usize].sum.clone()
        }
    }

    fn alloc(&mut self, edge: Edge) -> u32 {
        let vec = edge.vector();
        let node = Node {
            left: NIL,
            right: NIL,
            prio: self.rng.gen(),
            size: 1,
            rev: false,
            sum: vec.clone(),
            xsum: Rational::ZERO,
            vec,
            edge,
            hull: Subhull::single(),
            dirty: true,
        };
        if let Some(x) = self.free.pop() {
            self.nodes[x as usize] = node;
            x
        } else {
            self.nodes.push(node);
            (self.nodes.len() - 1) as u32
        }
    }

    fn release(&mut self, x: u32) {
        if x != NIL {
            let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
            self.release(l);
            self.release(r);
            self.free.push(x);
        }
    }

    /// Cartesian-tree construction over fresh random priorities.
    fn build_nodes(&mut self, edges: &[Edge]) -> u32 {
        let mut stack: Vec<u32> = Vec::new();
        for e in edges {
            let x = self.alloc(e.clone());
            let mut last = NIL;
            while let Some(&top) = stack.last() {
                if self.nodes[top as usize].prio < self.nodes[x as usize].prio {
                    last = stack.pop().unwrap();
                } else {
                    break;
                }
            }
            self.nodes[x as usize].left = last;
            if let Some(&top) = stack.last() {
                self.nodes[top as usize].right = x;
            }
            stack.push(x);
        }
        let root = stack.first().copied().unwrap_or(NIL);
        self.pull_all(root);
        root
    }

    fn pull_all(&mut self, x: u32) {
        if x != NIL {
            let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
            self.pull_all(l);
            self.pull_all(r);
            self.pull(x);
        }
    }

    fn apply_rev(&mut self, x: u32) {
        if x != NIL {
            let n = &mut self.nodes[x as usize];
            n.rev ^= true;
            n.xsum = -&n.xsum;
            let end = n.sum.clone();
            n.hull.reverse(&end);
        }
    }

    fn push(&mut self, x: u32) {
        let n = &mut self.nodes[x as usize];
        if n.rev {
            n.rev = false;
            std::mem::swap(&mut n.left, &mut n.right);
            let (l, r) = (n.left, n.right);
            self.apply_rev(l);
            self.apply_rev(r);
        }
    }

    fn pull(&mut self, x: u32) {
        let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
        let size = 1 + self.size(l) + self.size(r);
        let sl = self.sum(l);
        let sr = self.sum(r);
        let o = &sl + &self.nodes[x as usize].vec;
        let sum = &o + &sr;
        let mut xsum = sl.cross(&o) + o.cross(&sr);
        if l != NIL {
            xsum += &self.nodes[l as usize].xsum;
        }
        if r != NIL {
            xsum += &self.nodes[r as usize].xsum;
        }
        let n = &mut self.nodes[x as usize];
        n.size = size;
        n.sum = sum;
        n.xsum = xsum;
        n.dirty = true;
    }

    /// First `k` edges go left.
    fn split(&mut self, x: u32, k: u32) -> (u32, u32) {
        if x == NIL {
            return (NIL, NIL);
        }
        self.stats.splits += 1;
        self.push(x);
        let l = self.nodes[x as usize].left;
        let ls = self.size(l);
        if k <= ls {
            let (a, b) = self.split(l, k);
            self.nodes[x as usize].left = b;
            self.pull(x);
            (a, x)
        } else {
            let r = self.nodes[x as usize].right;
            let (a, b) = self.split(r, k - ls - 1);
            self.nodes[x as usize].right = a;
            self.pull(x);
            (x, b)
        }
    }

    fn join(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        self.stats.joins += 1;
        if self.nodes[a as usize].prio > self.nodes[b as usize].prio {
            self.push(a);
            let r = self.nodes[a as usize].right;
            let m = self.join(r, b);
            self.nodes[a as usize].right = m;
            self.pull(a);
            a
        } else {
            self.push(b);
            let l = self.nodes[b as usize].left;
            let m = self.join(a, l);
            self.nodes[b as usize].left = m;
            self.pull(b);
            b
        }
    }

    fn check_index(&self, i: usize, len: usize) -> Result<()> {
        if i >= len {
            Err(Error::IndexOutOfRange { index: i, len })
        } else {
            Ok(())
        }
    }

    /// Sum of the first `k` edge vectors, without pushing tags.
    fn prefix(&self, mut k: u32) -> Point {
        let mut acc = Point::origin();
        let mut x = self.root;
        let mut par = false;
        while x != NIL && k > 0 {
            let n = &self.nodes[x as usize];
            let flip = par ^ n.rev;
            let (l, r) = if flip { (n.right, n.left) } else { (n.left, n.right) };
            let ls = self.size(l);
            if k < ls {
                x = l;
            } else if k == ls {
                return &acc + &self.sum(l);
            } else {
                acc = &(&acc + &self.sum(l)) + &n.vec;
                k -= ls + 1;
                x = r;
            }
            par = flip;
        }
        acc
    }

    /// Coordinates of vertex `i`, the start of edge `i`.
    pub fn vertex_at(&self, i: usize) -> Result<Point> {
        self.check_index(i, self.len())?;
        Ok(&self.anchor + &self.prefix(i as u32))
    }

    pub fn edge_at(&self, i: usize) -> Result<Edge> {
        self.check_index(i, self.len())?;
        let mut k = i as u32;
        let mut x = self.root;
        let mut par = false;
        loop {
            let n = &self.nodes[x as usize];
            let flip = par ^ n.rev;
            let (l, r) = if flip { (n.right, n.left) } else { (n.left, n.right) };
            let ls = self.size(l);
            if k < ls {
                x = l;
            } else if k == ls {
                return Ok(n.edge.clone());
            } else {
                k -= ls + 1;
                x = r;
            }
            par = flip;
        }
    }

    fn collect(&mut self, x: u32, out: &mut Vec<Edge>) {
        if x != NIL {
            self.push(x);
            let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
            self.collect(l, out);
            out.push(self.nodes[x as usize].edge.clone());
            self.collect(r, out);
        }
    }

    /// Edges in order.
    pub fn edges(&mut self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.len());
        self.collect(self.root, &mut out);
        out
    }

    pub fn vertices(&mut self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.anchor.clone();
        for e in self.edges() {
            let next = &cur + &e.vector();
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Reverses edges `[lo, hi)`.
    pub fn reverse_range(&mut self, lo: usize, hi: usize) -> Result<()> {
        let n = self.len();
        if lo > hi || hi > n {
            return Err(Error::IndexOutOfRange { index: hi, len: n });
        }
        let (a, rest) = self.split(self.root, lo as u32);
        let (b, c) = self.split(rest, (hi - lo) as u32);
        self.apply_rev(b);
        let ab = self.join(a, b);
        self.root = self.join(ab, c);
        Ok(())
    }

    /// Reverses the cyclic run of edges from `s` to `t` inclusive. When
    /// `t < s` the whole sequence is reversed and then the complement of
    /// the run is reversed back, which leaves the run reversed up to a
    /// rotation of the sequence. The anchor follows so that vertex
    /// coordinates stay those of the flipturned polygon.
    pub fn reverse(&mut self, s: usize, t: usize) -> Result<()> {
        let n = self.len();
        self.check_index(s, n)?;
        self.check_index(t, n)?;
        if s <= t {
            return self.reverse_range(s, t + 1);
        }
        let start = self.vertex_at(s)?;
        let root = self.root;
        self.apply_rev(root);
        self.reverse_range(n - s, n - 1 - t)?;
        // The run now begins at position n - 1 - t and its first vertex
        // keeps its coordinates.
        let p = self.prefix((n - 1 - t) as u32);
        self.anchor = &start - &p;
        Ok(())
    }

    /// Moves the first `k` edges to the end; vertex `k` becomes vertex 0.
    pub fn rotate_left(&mut self, k: usize) -> Result<()> {
        let n = self.len();
        if k == 0 || n == 0 {
            return Ok(());
        }
        self.check_index(k, n)?;
        self.anchor = self.vertex_at(k)?;
        let (a, b) = self.split(self.root, k as u32);
        self.root = self.join(b, a);
        Ok(())
    }

    /// Replaces `count` edges from `pos` with `edges`, returning the old ones.
    pub fn replace_range(&mut self, pos: usize, count: usize, edges: &[Edge]) -> Result<Vec<Edge>> {
        let n = self.len();
        if pos + count > n {
            return Err(Error::IndexOutOfRange { index: pos + count, len: n });
        }
        let (a, rest) = self.split(self.root, pos as u32);
        let (mid, c) = self.split(rest, count as u32);
        let mut removed = Vec::with_capacity(count);
        self.collect(mid, &mut removed);
        self.release(mid);
        let fresh = self.build_nodes(edges);
        let am = self.join(a, fresh);
        self.root = self.join(am, c);
        Ok(removed)
    }

    fn try_merge(&mut self, pos: usize) -> Result<Option<(Edge, Edge)>> {
        let (e1, e2) = (self.edge_at(pos)?, self.edge_at(pos + 1)?);
        if e1.dir != e2.dir {
            return Ok(None);
        }
        let merged = Edge { dir: e1.dir.clone(), len: &e1.len + &e2.len };
        self.replace_range(pos, 2, &[merged])?;
        Ok(Some((e1, e2)))
    }

    /// Flipturns the `len` edges starting at edge `start`: rotates so the
    /// run starts at edge 1, reverses it, then merges parallel edges that
    /// became neighbours at either end of the run.
    pub fn flipturn_span(&mut self, start: usize, len: usize) -> Result<FlipSpan> {
        let n = self.len();
        self.check_index(start, n)?;
        if len < 2 || len + 2 > n {
            return Err(Error::InvalidArgument(format!("flipturn span of {len} edges in a {n}-gon")));
        }
        let rotation = (start + n - 1) % n;
        self.rotate_left(rotation)?;
        self.reverse_range(1, len + 1)?;
        let merged_b = self.try_merge(len)?;
        let merged_a = self.try_merge(0)?;
        Ok(FlipSpan { rotation, len, merged_a, merged_b })
    }

    /// Inverse of the [`flipturn_span`](Self::flipturn_span) call that
    /// returned `span`; it must be the latest one not yet undone.
    pub fn unflip(&mut self, span: &FlipSpan) -> Result<()> {
        if let Some((a, b)) = &span.merged_a {
            self.replace_range(0, 1, &[a.clone(), b.clone()])?;
        }
        if let Some((a, b)) = &span.merged_b {
            self.replace_range(span.len, 1, &[a.clone(), b.clone()])?;
        }
        self.reverse_range(1, span.len + 1)?;
        let n = self.len();
        self.rotate_left((n - span.rotation) % n)
    }

    fn ensure_hull(&mut self, x: u32) {
        if x == NIL || !self.nodes[x as usize].dirty {
            return;
        }
        self.push(x);
        let (l, r) = (self.nodes[x as usize].left, self.nodes[x as usize].right);
        self.ensure_hull(l);
        self.ensure_hull(r);
        let single = Subhull::single();
        let o = &self.sum(l) + &self.nodes[x as usize].vec;
        let a = if l == NIL { &single } else { &self.nodes[l as usize].hull };
        let b = if r == NIL { &single } else { &self.nodes[r as usize].hull };
        self.stats.hull_merges += 1;
        self.stats.hull_points += (a.size() + b.size()) as u64;
        let h = merge_subhulls(a, b, &o, 1);
        let n = &mut self.nodes[x as usize];
        n.hull = h;
        n.dirty = false;
    }

    /// Every vertex on the boundary of the convex hull, colinear ones
    /// included, as `(point, vertex index)` in lexicographic point order.
    pub fn root_hull(&mut self) -> Vec<(Point, usize)> {
        let root = self.root;
        if root == NIL {
            return Vec::new();
        }
        self.ensure_hull(root);
        let n = self.len();
        let mut out: Vec<(Point, usize)> = self.nodes[root as usize]
            .hull
            .points_shifted(&self.anchor, 0)
            .into_iter()
            .map(|(p, i)| (p, i as usize % n))
            .collect();
        out.dedup_by(|a, b| a.0 == b.0);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::apply_flipturn;
    use crate::geom::{convex_hull_boundary, Direction};
    use crate::polygon::fixtures::*;
    use crate::polygon::{find_pockets, Regime};
    use proptest::prelude::*;

    fn labelled(k: usize) -> EdgeTree {
        // Distinct directions stand in for the labels a, b, c, ...
        let edges: Vec<Edge> = (0..k).map(|i| Edge { dir: Direction::of(1, i as i64), len: Rational::ONE }).collect();
        EdgeTree::from_edges(Point::origin(), &edges)
    }

    fn labels(t: &mut EdgeTree) -> String {
        t.edges().iter().map(|e| (b'a' + e.dir.dy().to_i64().unwrap() as u8) as char).collect()
    }

    #[test]
    fn reverse_examples() {
        let mut t = labelled(8);
        t.reverse(2, 5).unwrap();
        assert_eq!(labels(&mut t), "abfedcgh");
        t.reverse(4, 0).unwrap();
        assert_eq!(labels(&mut t), "hgcdbfea");
        t.reverse(3, 6).unwrap();
        assert_eq!(labels(&mut t), "hgcefbda");
        assert!(matches!(t.reverse(8, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn lhex_round_trip_and_vertices() {
        let p = lhex();
        let mut t = EdgeTree::build(&p);
        assert_eq!(t.len(), 6);
        assert_eq!(t.vertices(), p.vertices());
        assert_eq!(t.vertex_at(3).unwrap(), Point::int(1, 1));
        assert_eq!(t.area2(), p.area2());
        assert_eq!(EdgeTree::build(&square2()).len(), 4);
    }

    #[test]
    fn lhex_flipturn_moves_reflex_vertex() {
        let p = lhex();
        let mut t = EdgeTree::build(&p);
        let pkt = find_pockets(&p, Regime::Standard).remove(0);
        let span = t.flipturn_span(pkt.first_vertex, pkt.edge_count(6)).unwrap();
        assert_eq!(span.merges(), 2);
        let q = Polygon::from_ccw_unchecked(t.vertices());
        assert_eq!(q, square2());
        assert_eq!(t.area2(), square2().area2());
        t.unflip(&span).unwrap();
        assert_eq!(t.vertices(), p.vertices());
    }

    #[test]
    fn reflected_vertex_of_lhex() {
        let mut t = EdgeTree::build(&lhex());
        t.reverse(2, 3).unwrap();
        assert_eq!(t.vertex_at(3).unwrap(), Point::int(2, 2));
    }

    #[test]
    fn hull_of_u8_keeps_colinear_top_vertices() {
        let p = u8();
        let mut t = EdgeTree::build(&p);
        let mut idx: Vec<usize> = t.root_hull().into_iter().map(|(_, i)| i).collect();
        idx.sort();
        assert_eq!(idx, vec![0, 1, 2, 3, 6, 7]);
    }

    #[test]
    fn reversals_undone_in_reverse_order() {
        let p = u8();
        let mut t = EdgeTree::build(&p);
        let ops = [(1, 5), (0, 7), (3, 3), (2, 6)];
        for &(s, e) in &ops {
            t.reverse(s, e).unwrap();
        }
        for &(s, e) in ops.iter().rev() {
            t.reverse(s, e).unwrap();
        }
        assert_eq!(t.vertices(), p.vertices());
    }

    #[test]
    fn height_is_logarithmic() {
        let edges: Vec<Edge> = (0..1 << 14).map(|_| Edge { dir: Direction::of(1, 0), len: Rational::ONE }).collect();
        let t = EdgeTree::from_edges(Point::origin(), &edges);
        assert!(t.height() <= 4 * 14, "height {}", t.height());
    }

    proptest! {
        #[test]
        fn random_reversals_keep_aggregates(ops in proptest::collection::vec((0usize..8, 0usize..8), 1..20)) {
            let p = u8();
            let mut t = EdgeTree::build(&p);
            let mut naive: Vec<Edge> = p.edges().to_vec();
            let mut anchor = p.anchor().clone();
            for (s, e) in ops {
                t.reverse(s, e).unwrap();
                if s <= e {
                    naive[s..=e].reverse();
                } else {
                    let mut start = anchor.clone();
                    for k in 0..s { start = &start + &naive[k].vector(); }
                    naive.reverse();
                    naive[8 - s..8 - 1 - e].reverse();
                    let mut v = start;
                    for k in 0..8 - 1 - e { v = &v - &naive[k].vector(); }
                    anchor = v;
                }
            }
            let mut pts = Vec::new();
            let mut v = anchor.clone();
            for e in &naive { pts.push(v.clone()); v = &v + &e.vector(); }
            let tv = t.vertices();
            prop_assert_eq!(&tv, &pts);
            prop_assert_eq!(t.area2(), crate::geom::signed_area2(&pts));
            for i in 0..8 {
                prop_assert_eq!(t.vertex_at(i).unwrap(), tv[i].clone());
            }
            let mut hull: Vec<Point> = t.root_hull().into_iter().map(|(p, _)| p).collect();
            hull.sort();
            let mut uniq = pts.clone();
            uniq.sort();
            uniq.dedup();
            let mut reference = convex_hull_boundary(&uniq).unwrap();
            reference.sort();
            prop_assert_eq!(hull, reference);
        }
    }

    #[test]
    fn flipturn_span_matches_reference_on_u8() {
        let p = u8();
        for regime in [Regime::Standard, Regime::Extended, Regime::Modified] {
            let pkt = find_pockets(&p, regime).remove(0);
            let (q, _) = apply_flipturn(&p, &pkt).unwrap();
            let mut t = EdgeTree::build(&p);
            t.flipturn_span(pkt.first_vertex, pkt.edge_count(8)).unwrap();
            assert_eq!(Polygon::from_ccw_unchecked(t.vertices()), q);
        }
    }
}
