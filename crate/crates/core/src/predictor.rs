//! Final convex shape and position without simulating flipturns.
//!
//! The exterior is cut into trapezoids by horizontal lines through the
//! vertices. A bounded trapezoid is an up-region when the way out to
//! the unbounded part of the exterior leaves through its top side. The
//! top of the final polygon sits exactly the total height of the
//! up-regions above the current top.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, Rational};
use crate::polygon::{Edge, Pocket, Polygon};

/// The convex polygon with the same edge vectors, sorted by angle and
/// with codirectional edges merged. Anchored at the origin.
pub fn final_shape(p: &Polygon) -> Polygon {
    let mut dl = p.direction_lengths();
    dl.sort_by(|a, b| a.0.angle_cmp(&b.0));
    let edges: Vec<Edge> = dl.into_iter().map(|(dir, len)| Edge { dir, len }).collect();
    Polygon::from_edges(&Point::origin(), &edges).expect("edge vectors of a polygon close")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionClass {
    Up,
    Down,
    /// Unbounded to the left or right inside a strip that meets the polygon.
    Side,
    /// A whole strip that misses the polygon.
    Strip,
}

impl RegionClass {
    pub fn is_outer(self) -> bool {
        matches!(self, RegionClass::Side | RegionClass::Strip)
    }
}

/// One exterior trapezoid. `left` and `right` are the bounding edge
/// indices (edge i runs from vertex i to vertex i+1); `None` is unbounded.
#[derive(Debug, Clone, Serialize)]
pub struct Region {
    pub strip: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub class: RegionClass,
    /// Next region on the way out; `None` for outer regions.
    pub parent: Option<usize>,
}

/// Exterior trapezoids of a polygon cut by a set of horizontal lines.
///
/// Strip 0 lies below `lines[0]`, strip j lies between `lines[j-1]` and
/// `lines[j]`, and the last strip lies above the last line.
#[derive(Debug, Clone)]
pub struct RegionForest {
    pub lines: Vec<Rational>,
    pub regions: Vec<Region>,
    /// Regions of strip j are `strip_start[j]..strip_start[j+1]`, left to right.
    strip_start: Vec<usize>,
    /// Whether strip j meets the polygon.
    meets: Vec<bool>,
}

fn x_at(a: &Point, b: &Point, y: &Rational) -> Rational {
    &a.x + &(&(y - &a.y) * &(&b.x - &a.x)) / &(&b.y - &a.y)
}

fn lt_opt(lo: &Option<Rational>, hi: &Option<Rational>) -> bool {
    match (lo, hi) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

fn max_lo(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn min_hi(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    max_lo(a.map(|v| -v), b.map(|v| -v)).map(|v| -v)
}

impl RegionForest {
    /// Decomposes the exterior of `p` along `lines`, which must be sorted,
    /// distinct and include the y-coordinate of every vertex.
    pub fn build(p: &Polygon, lines: Vec<Rational>) -> Result<RegionForest> {
        if lines.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("strip lines must be strictly increasing".into()));
        }
        if p.vertices().iter().any(|v| lines.binary_search(&v.y).is_err()) {
            return Err(Error::InvalidArgument("every vertex must lie on a strip line".into()));
        }
        let n = p.n();
        let vs = p.vertices();
        let m = lines.len();
        let mut regions = Vec::new();
        let mut strip_start = Vec::with_capacity(m + 2);
        let mut meets = Vec::with_capacity(m + 1);

        // Non-horizontal edges by their lower end, swept upwards.
        let mut by_low: Vec<(usize, Rational, Rational)> = (0..n)
            .filter(|&i| vs[i].y != vs[(i + 1) % n].y)
            .map(|i| {
                let (a, b) = (&vs[i].y, &vs[(i + 1) % n].y);
                (i, a.clone().min(b.clone()), a.clone().max(b.clone()))
            })
            .collect();
        by_low.sort_by(|a, b| a.1.cmp(&b.1));
        let mut next = 0;
        let mut active: Vec<(usize, Rational)> = Vec::new();

        for j in 0..=m {
            strip_start.push(regions.len());
            let mut crossing: Vec<(Rational, usize)> = Vec::new();
            if j > 0 && j < m {
                let (lo, hi) = (&lines[j - 1], &lines[j]);
                active.retain(|(_, top)| top >= hi);
                while next < by_low.len() && by_low[next].1 <= *lo {
                    let (i, _, top) = by_low[next].clone();
                    if top >= *hi {
                        active.push((i, top));
                    }
                    next += 1;
                }
                let mid = (lo + hi).half();
                crossing = active.iter().map(|&(i, _)| (x_at(&vs[i], &vs[(i + 1) % n], &mid), i)).collect();
                crossing.sort();
            }
            let k = crossing.len();
            if k % 2 != 0 {
                return Err(Error::Invariant(format!("odd crossing count {k} in strip {j}")));
            }
            meets.push(k > 0);
            for t in (0..=k).step_by(2) {
                let left = if t == 0 { None } else { Some(crossing[t - 1].1) };
                let right = if t == k { None } else { Some(crossing[t].1) };
                let class = match (k, left, right) {
                    (0, _, _) => RegionClass::Strip,
                    (_, None, _) | (_, _, None) => RegionClass::Side,
                    // Provisional; settled by the search below.
                    _ => RegionClass::Up,
                };
                regions.push(Region { strip: j, left, right, class, parent: None });
            }
        }
        strip_start.push(regions.len());

        let mut f = RegionForest { lines, regions, strip_start, meets };
        f.classify(p)?;
        Ok(f)
    }

    /// Lines through every vertex of `p`.
    pub fn of(p: &Polygon) -> Result<RegionForest> {
        let mut lines: Vec<Rational> = p.vertices().iter().map(|v| v.y.clone()).collect();
        lines.sort();
        lines.dedup();
        RegionForest::build(p, lines)
    }

    pub fn strip_count(&self) -> usize {
        self.lines.len() + 1
    }

    pub fn strip(&self, j: usize) -> &[Region] {
        &self.regions[self.strip_start[j]..self.strip_start[j + 1]]
    }

    pub fn meets(&self, j: usize) -> bool {
        self.meets[j]
    }

    /// Height of strip j; `None` for the two unbounded strips.
    pub fn width(&self, j: usize) -> Option<Rational> {
        if j == 0 || j >= self.lines.len() {
            None
        } else {
            Some(&self.lines[j] - &self.lines[j - 1])
        }
    }

    fn span_at(&self, p: &Polygon, r: &Region, y: &Rational) -> (Option<Rational>, Option<Rational>) {
        let at = |e: Option<usize>| e.map(|i| x_at(p.vertex(i as isize), p.vertex(i as isize + 1), y));
        (at(r.left), at(r.right))
    }

    /// Pairs (below, above) of regions sharing a piece of line j of
    /// positive length.
    fn portals(&self, p: &Polygon, j: usize) -> Vec<(usize, usize)> {
        let y = &self.lines[j];
        let below: Vec<_> = (self.strip_start[j]..self.strip_start[j + 1])
            .map(|i| (i, self.span_at(p, &self.regions[i], y)))
            .collect();
        let above: Vec<_> = (self.strip_start[j + 1]..self.strip_start[j + 2])
            .map(|i| (i, self.span_at(p, &self.regions[i], y)))
            .collect();
        let mut out = Vec::new();
        let (mut a, mut b) = (0, 0);
        while a < below.len() && b < above.len() {
            let (ia, (la, ha)) = &below[a];
            let (ib, (lb, hb)) = &above[b];
            if lt_opt(&max_lo(la.clone(), lb.clone()), &min_hi(ha.clone(), hb.clone())) {
                out.push((*ia, *ib));
            }
            // Advance whichever interval ends first.
            match (ha, hb) {
                (None, _) => b += 1,
                (Some(_), None) => a += 1,
                (Some(x), Some(z)) if x <= z => a += 1,
                _ => b += 1,
            }
        }
        out
    }

    fn classify(&mut self, p: &Polygon) -> Result<()> {
        let count = self.regions.len();
        let mut up_nb: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut down_nb: Vec<Vec<usize>> = vec![Vec::new(); count];
        for j in 0..self.lines.len() {
            for (lo, hi) in self.portals(p, j) {
                up_nb[lo].push(hi);
                down_nb[hi].push(lo);
            }
        }
        let mut seen = vec![false; count];
        let mut queue = VecDeque::new();
        for (i, r) in self.regions.iter().enumerate() {
            if r.class.is_outer() {
                seen[i] = true;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for (nbs, class) in [(&up_nb[i], RegionClass::Down), (&down_nb[i], RegionClass::Up)] {
                for &k in nbs {
                    if !seen[k] {
                        seen[k] = true;
                        self.regions[k].class = class;
                        self.regions[k].parent = Some(i);
                        queue.push_back(k);
                    }
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Invariant(format!("exterior region {i} is not connected to infinity")));
        }
        // Every neighbour on the far side must hang below this region in
        // the forest; otherwise the way out would not be unique.
        for (i, r) in self.regions.iter().enumerate() {
            let far = match r.class {
                RegionClass::Up => &down_nb[i],
                RegionClass::Down => &up_nb[i],
                _ => continue,
            };
            if far.iter().any(|&k| self.regions[k].parent != Some(i)) {
                return Err(Error::Invariant(format!("region {i} has exits through both its top and bottom")));
            }
        }
        Ok(())
    }

    /// Total height of the up-regions.
    pub fn up_height(&self) -> Rational {
        self.regions
            .iter()
            .filter(|r| r.class == RegionClass::Up)
            .map(|r| self.width(r.strip).expect("inner regions lie in bounded strips"))
            .sum()
    }
}

/// Total height of the up-regions of `p`: the distance the top of the
/// bounding box rises before the polygon becomes convex.
pub fn up_region_height(p: &Polygon) -> Result<Rational> {
    Ok(RegionForest::of(p)?.up_height())
}

fn rotate_cw(p: &Polygon) -> Polygon {
    let pts: Vec<Point> = p.vertices().iter().map(|v| Point { x: v.y.clone(), y: -&v.x }).collect();
    Polygon::from_vertices(&pts).expect("rotation keeps the polygon valid")
}

/// The convex polygon that every convexifying flipturn sequence ends at.
pub fn final_position(p: &Polygon) -> Result<Polygon> {
    let top = &p.bounding_box().1.y + &up_region_height(p)?;
    // Rotating clockwise turns the left side into the top.
    let r = rotate_cw(p);
    let left = -&(&r.bounding_box().1.y + &up_region_height(&r)?);
    let shape = final_shape(p);
    let (lo, hi) = shape.bounding_box();
    Ok(shape.translate(&Point { x: &left - &lo.x, y: &top - &hi.y }))
}

/// Strip counters around a lid midpoint: index i-1 holds strip i above
/// the midpoint line, paired with strip -i below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripDecomposition {
    pub lines: Vec<Rational>,
    pub y0: Rational,
    pub widths: Vec<Rational>,
    /// Up-regions in strips i and -i together.
    pub u: Vec<usize>,
    /// 1 iff strip i meets the polygon.
    pub x: Vec<usize>,
}

impl StripDecomposition {
    /// Lines through the vertices of `p`, their reflections across the
    /// line through `y0`, and that line itself.
    pub fn lines_for(p: &Polygon, y0: &Rational) -> Vec<Rational> {
        let two = y0 + y0;
        let mut lines: Vec<Rational> = p.vertices().iter().flat_map(|v| [v.y.clone(), &two - &v.y]).collect();
        lines.push(y0.clone());
        lines.sort();
        lines.dedup();
        lines
    }

    pub fn build(p: &Polygon, lines: Vec<Rational>, y0: &Rational) -> Result<StripDecomposition> {
        let k0 = lines.binary_search(y0).map_err(|_| Error::InvalidArgument("y0 must be a strip line".into()))?;
        let f = RegionForest::build(p, lines)?;
        let above = f.lines.len() - 1 - k0;
        if k0 != above {
            return Err(Error::InvalidArgument("strip lines are not symmetric about y0".into()));
        }
        let ups = |j: usize| f.strip(j).iter().filter(|r| r.class == RegionClass::Up).count();
        let mut d = StripDecomposition { lines: Vec::new(), y0: y0.clone(), widths: Vec::new(), u: Vec::new(), x: Vec::new() };
        for i in 1..=above {
            let (hi, lo) = (k0 + i, k0 + 1 - i);
            d.widths.push(f.width(hi).expect("bounded strip"));
            d.u.push(ups(hi) + ups(lo));
            d.x.push(f.meets(hi) as usize);
        }
        d.lines = f.lines;
        Ok(d)
    }

    pub fn weighted_sum(&self) -> Rational {
        self.widths.iter().zip(self.u.iter().zip(&self.x)).map(|(w, (u, x))| w * &Rational::from((u + x) as i64)).sum()
    }

    /// The sum of x_i w_i, which equals the top of the polygon minus y0.
    pub fn x_height(&self) -> Rational {
        self.widths.iter().zip(&self.x).filter(|(_, &x)| x == 1).map(|(w, _)| w.clone()).sum()
    }
}

/// Strip decompositions of a flipturn's two sides, on the shared lines.
pub fn strip_decompositions(before: &Polygon, pkt: &Pocket, after: &Polygon) -> Result<(StripDecomposition, StripDecomposition)> {
    let y0 = pkt.lid_midpoint().y;
    let lines = StripDecomposition::lines_for(before, &y0);
    let a = StripDecomposition::build(before, lines.clone(), &y0)?;
    let b = StripDecomposition::build(after, lines, &y0)?;
    Ok((a, b))
}

/// True iff u_i + x_i is the same before and after the flipturn for
/// every strip index i.
pub fn strip_invariant_check(before: &Polygon, pkt: &Pocket, after: &Polygon) -> bool {
    match strip_decompositions(before, pkt, after) {
        Ok((a, b)) => a.u.iter().zip(&a.x).zip(b.u.iter().zip(&b.x)).all(|((u, x), (u2, x2))| u + x == u2 + x2),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_sequence, FlipturnState, NaiveState};
    use crate::generators::random_orthogonal;
    use crate::polygon::fixtures::*;
    use crate::polygon::{find_pockets, Regime};
    use crate::strategies::ArbitraryPolicy;

    fn simulate(p: &Polygon, regime: Regime, seed: u64) -> Polygon {
        let t = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), regime, 10_000).unwrap();
        assert!(t.convex);
        t.final_polygon
    }

    #[test]
    fn convex_is_fixed() {
        let p = square2();
        assert_eq!(up_region_height(&p).unwrap(), Rational::ZERO);
        assert_eq!(final_position(&p).unwrap(), p);
        assert_eq!(final_shape(&p).n(), 4);
    }

    #[test]
    fn fixtures_match_simulation() {
        for p in [lhex(), u8()] {
            for r in [Regime::Standard, Regime::Extended, Regime::Modified] {
                assert_eq!(final_position(&p).unwrap(), simulate(&p, r, 1), "{p:?} {r:?}");
            }
        }
    }

    #[test]
    fn random_orthogonal_match_simulation() {
        for seed in 0..40 {
            let p = random_orthogonal(8 + 2 * (seed as usize % 8), seed, false).unwrap();
            let want = final_position(&p).unwrap();
            assert_eq!(want, simulate(&p, Regime::Modified, seed), "seed {seed}");
        }
    }

    #[test]
    fn strip_identity_on_steps() {
        for seed in 0..20 {
            let p = random_orthogonal(12, seed, false).unwrap();
            let mut st = NaiveState::new(p.clone());
            let k = find_pockets(&p, Regime::Modified).remove(0);
            st.apply(&k).unwrap();
            let q = st.polygon();
            let (a, b) = strip_decompositions(&p, &k, &q).unwrap();
            assert_eq!(a.weighted_sum(), b.weighted_sum());
            assert_eq!(a.x_height(), &p.bounding_box().1.y - &a.y0);
            assert!(strip_invariant_check(&p, &k, &q), "seed {seed}");
        }
    }
}
