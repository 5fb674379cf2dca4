use std::cmp::Ordering;

use super::{CheckLevel, FlipturnRecord, FlipturnState};
use crate::edge_tree::{EdgeTree, FlipSpan, TreeStats};
use crate::error::{Error, Result};
use crate::geom::{Direction, Point};
use crate::polygon::{pockets_from_hull, HullInfo, Pocket, Polygon, Regime, VertexSource};
use crate::potentials::{self, window_counts, DirectionSets};

/// Vertex access in canonical numbering.
struct Canonical<'a> {
    tree: &'a EdgeTree,
    offset: usize,
}

impl VertexSource for Canonical<'_> {
    fn len(&self) -> usize {
        self.tree.len()
    }

    fn point(&self, i: usize) -> Point {
        let n = self.tree.len();
        self.tree.vertex_at((i % n + self.offset) % n).expect("index reduced modulo n")
    }
}

/// Flipturn state backed by an [`EdgeTree`]: polylogarithmic reversal,
/// area and counters, and pockets read off the root hull.
pub struct TreeState {
    tree: EdgeTree,
    s_set: Vec<Direction>,
    orthogonal: bool,
    brackets: usize,
    discrete_angle: usize,
    /// Tree index of canonical vertex 0 and the hull, once computed.
    view: Option<(usize, HullInfo)>,
    cached: Vec<(Regime, Vec<Pocket>)>,
    history: Vec<(FlipturnRecord, FlipSpan)>,
}

impl TreeState {
    pub fn new(p: &Polygon) -> TreeState {
        let sets = DirectionSets::of(p);
        TreeState {
            tree: EdgeTree::build(p),
            brackets: potentials::brackets(p),
            discrete_angle: potentials::discrete_angle_with(p, &sets.s_set),
            s_set: sets.s_set,
            orthogonal: p.is_orthogonal(),
            view: None,
            cached: Vec::new(),
            history: Vec::new(),
        }
    }

    pub fn tree(&self) -> &EdgeTree {
        &self.tree
    }

    pub fn stats(&self) -> &TreeStats {
        self.tree.stats()
    }

    pub fn brackets(&self) -> usize {
        self.brackets
    }

    pub fn discrete_angle(&self) -> usize {
        self.discrete_angle
    }

    /// Convex hull maintained at the root of the tree, including
    /// collinear boundary vertices, sorted.
    pub fn root_hull_points(&mut self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.tree.root_hull().into_iter().map(|(p, _)| p).collect();
        pts.sort();
        pts
    }

    /// Hull boundary vertices in canonical numbering, sorted.
    pub fn hull_boundary(&mut self) -> Vec<usize> {
        self.view().1.boundary.clone()
    }

    fn view(&mut self) -> &(usize, HullInfo) {
        if self.view.is_none() {
            let hull = self.tree.root_hull();
            let n = self.tree.len();
            let offset = hull
                .iter()
                .min_by(|a, b| a.0.lower_left_cmp(&b.0))
                .map(|(_, i)| *i)
                .expect("nonempty polygon");
            let mut boundary: Vec<usize> = hull.iter().map(|(_, i)| (i + n - offset) % n).collect();
            boundary.sort_unstable();
            let info = HullInfo::from_boundary(&Canonical { tree: &self.tree, offset }, boundary);
            self.view = Some((offset, info));
        }
        self.view.as_ref().unwrap()
    }

    fn invalidate(&mut self) {
        self.view = None;
        self.cached.clear();
    }

    fn dirs(&self, positions: &[usize]) -> Result<Vec<Direction>> {
        let n = self.tree.len();
        positions.iter().map(|&k| self.tree.edge_at(k % n).map(|e| e.dir)).collect()
    }
}

impl FlipturnState for TreeState {
    fn n(&self) -> usize {
        self.tree.len()
    }

    fn is_orthogonal(&self) -> bool {
        self.orthogonal
    }

    fn pockets(&mut self, regime: Regime) -> Vec<Pocket> {
        if let Some((_, ps)) = self.cached.iter().find(|(r, _)| *r == regime) {
            return ps.clone();
        }
        let (offset, info) = self.view().clone();
        let ps = pockets_from_hull(&Canonical { tree: &self.tree, offset }, &info, regime);
        self.cached.push((regime, ps.clone()));
        ps
    }

    fn apply(&mut self, pkt: &Pocket) -> Result<FlipturnRecord> {
        if !self.pockets(pkt.regime).contains(pkt) {
            return Err(Error::StalePocket);
        }
        let level = CheckLevel::from_env();
        let before = if level == CheckLevel::Full { Some(self.polygon()) } else { None };
        let n = self.tree.len();
        let offset = self.view().0;
        let s = (pkt.first_vertex + offset) % n;
        let m = pkt.edge_count(n);
        // Only the two junctions of the pocket change turn or bracket
        // status; everything inside keeps its discrete angle and flips
        // convex/reflex as a whole.
        let at = |d: isize| ((s as isize + d).rem_euclid(n as isize)) as usize;
        let mi = m as isize;
        let old_a = self.dirs(&[at(-2), at(-1), at(0), at(1)])?;
        let old_b = self.dirs(&[at(mi - 2), at(mi - 1), at(mi), at(mi + 1)])?;
        let new_a = self.dirs(&[at(-2), at(-1), at(mi - 1), at(mi - 2)])?;
        let new_b = self.dirs(&[at(1), at(0), at(mi), at(mi + 1)])?;
        let count = |w: &[Direction]| window_counts(w, &self.s_set);
        let (ba, da) = count(&old_a);
        let (bb, db) = count(&old_b);
        let (na_b, na_d) = count(&new_a);
        let (nb_b, nb_d) = count(&new_b);

        let area_before = self.tree.area2().half();
        let span = self.tree.flipturn_span(s, m)?;
        self.invalidate();
        let brackets_after = self.brackets + na_b + nb_b - ba - bb;
        let discrete_after = self.discrete_angle + na_d + nb_d - da - db;
        let rec = FlipturnRecord {
            pocket: pkt.clone(),
            vertex_count_before: n,
            vertex_count_after: self.tree.len(),
            area_before,
            area_after: self.tree.area2().half(),
            brackets_before: self.brackets,
            brackets_after,
            discrete_angle_before: self.discrete_angle,
            discrete_angle_after: discrete_after,
        };
        self.brackets = brackets_after;
        self.discrete_angle = discrete_after;
        self.history.push((rec.clone(), span));
        match (level, before) {
            (CheckLevel::Off, _) => {}
            (CheckLevel::Full, Some(p)) => {
                let q = self.polygon();
                super::post_checks(&p, &q, &rec)?;
                let sets = DirectionSets::of(&q);
                if potentials::brackets(&q) != rec.brackets_after
                    || potentials::discrete_angle_with(&q, &sets.s_set) != rec.discrete_angle_after
                {
                    return Err(Error::Invariant("tree counters drifted from the polygon".into()));
                }
            }
            _ => {
                if rec.area_after.cmp(&rec.area_before) != Ordering::Greater {
                    return Err(Error::Invariant(format!(
                        "area did not increase: {} -> {}",
                        rec.area_before, rec.area_after
                    )));
                }
            }
        }
        Ok(rec)
    }

    fn undo(&mut self, rec: &FlipturnRecord) -> Result<()> {
        match self.history.last() {
            Some((top, _)) if top == rec => {}
            _ => return Err(Error::BadUndo),
        }
        let (rec, span) = self.history.pop().unwrap();
        self.tree.unflip(&span)?;
        self.brackets = rec.brackets_before;
        self.discrete_angle = rec.discrete_angle_before;
        self.invalidate();
        Ok(())
    }

    fn polygon(&mut self) -> Polygon {
        Polygon::from_ccw_unchecked(self.tree.vertices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run_sequence, NaiveState};
    use crate::polygon::find_pockets;
    use crate::polygon::fixtures::*;
    use crate::strategies::ArbitraryPolicy;

    #[test]
    fn pockets_match_reference() {
        for p in [lhex(), u8(), square2()] {
            let mut st = TreeState::new(&p);
            for r in [Regime::Standard, Regime::Extended, Regime::Modified] {
                assert_eq!(st.pockets(r), find_pockets(&p, r));
            }
        }
    }

    #[test]
    fn traces_match_reference() {
        for p in [lhex(), u8()] {
            for r in [Regime::Standard, Regime::Extended, Regime::Modified] {
                for seed in 0..4 {
                    let a = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), r, 64).unwrap();
                    let b = run_sequence(&mut TreeState::new(&p), &mut ArbitraryPolicy::new(seed), r, 64).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn undo_restores_state() {
        let p = u8();
        let mut st = TreeState::new(&p);
        let k = st.pockets(Regime::Standard).remove(0);
        let rec = st.apply(&k).unwrap();
        let k2 = st.pockets(Regime::Standard).remove(0);
        let rec2 = st.apply(&k2).unwrap();
        assert!(matches!(st.undo(&rec), Err(Error::BadUndo)));
        st.undo(&rec2).unwrap();
        st.undo(&rec).unwrap();
        assert_eq!(st.polygon(), p);
        assert_eq!(st.pockets(Regime::Standard), find_pockets(&p, Regime::Standard));
    }

    #[test]
    fn stale_pocket_is_rejected() {
        let k = find_pockets(&u8(), Regime::Standard).remove(0);
        let mut st = TreeState::new(&lhex());
        assert!(matches!(st.apply(&k), Err(Error::StalePocket)));
    }
}
