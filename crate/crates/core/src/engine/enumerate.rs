use std::collections::HashMap;

use super::reflect_chain;
use crate::error::{Error, Result};
use crate::polygon::{find_pockets, Polygon, Regime};

/// Outcome of an exhaustive search over every flipturn choice.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub min_len: usize,
    pub max_len: usize,
    /// Distinct convex polygons reached.
    pub finals: Vec<Polygon>,
    /// Distinct polygons visited.
    pub states: usize,
    /// Whether some reachable polygon has an orthogonal pocket.
    pub orthogonal_reachable: bool,
}

#[derive(Clone)]
struct Summary {
    min: usize,
    max: usize,
    /// Pocket index starting a longest continuation.
    longest: usize,
    finals: Vec<u32>,
}

struct Search {
    regime: Regime,
    depth_limit: usize,
    node_limit: usize,
    memo: HashMap<Polygon, Summary>,
    finals: Vec<Polygon>,
    final_index: HashMap<Polygon, u32>,
    orthogonal: bool,
}

impl Search {
    fn visit(&mut self, p: &Polygon, depth: usize) -> Result<Summary> {
        if let Some(s) = self.memo.get(p) {
            return Ok(s.clone());
        }
        if self.memo.len() >= self.node_limit {
            return Err(Error::SearchBudget(self.node_limit));
        }
        let pockets = find_pockets(p, self.regime);
        let summary = if pockets.is_empty() {
            let next = self.finals.len() as u32;
            let id = *self.final_index.entry(p.clone()).or_insert(next);
            if id == next {
                self.finals.push(p.clone());
            }
            Summary { min: 0, max: 0, longest: 0, finals: vec![id] }
        } else {
            if depth >= self.depth_limit {
                return Err(Error::SearchBudget(self.depth_limit));
            }
            if pockets.iter().any(|k| !k.is_diagonal()) {
                self.orthogonal = true;
            }
            let mut acc = Summary { min: usize::MAX, max: 0, longest: 0, finals: Vec::new() };
            for (i, k) in pockets.iter().enumerate() {
                let q = flip(p, k.first_vertex, k.last_vertex);
                let s = self.visit(&q, depth + 1)?;
                acc.min = acc.min.min(s.min + 1);
                if s.max + 1 > acc.max {
                    acc.max = s.max + 1;
                    acc.longest = i;
                }
                acc.finals.extend(s.finals);
            }
            acc.finals.sort_unstable();
            acc.finals.dedup();
            acc
        };
        self.memo.insert(p.clone(), summary.clone());
        Ok(summary)
    }
}

pub(crate) fn flip(p: &Polygon, i: usize, j: usize) -> Polygon {
    Polygon::from_ccw_unchecked(reflect_chain(p.vertices(), i, j))
}

/// Depth-first search over all flipturn sequences with memoization on
/// canonical polygons. Fails with `SearchBudget` if more than
/// `node_limit` distinct polygons are seen or a path exceeds `depth_limit`.
pub fn enumerate_sequences(p: &Polygon, regime: Regime, depth_limit: usize, node_limit: usize) -> Result<Enumeration> {
    search(p, regime, depth_limit, node_limit).map(|(e, _)| e)
}

/// Pocket indices (into each successive pocket list) of one longest
/// sequence, found by the same exhaustive search.
pub fn longest_choices(p: &Polygon, regime: Regime, depth_limit: usize, node_limit: usize) -> Result<Vec<usize>> {
    let (_, s) = search(p, regime, depth_limit, node_limit)?;
    let mut out = Vec::new();
    let mut cur = p.clone();
    loop {
        let pockets = find_pockets(&cur, regime);
        if pockets.is_empty() {
            return Ok(out);
        }
        let i = s.memo[&cur].longest;
        out.push(i);
        cur = flip(&cur, pockets[i].first_vertex, pockets[i].last_vertex);
    }
}

fn search(p: &Polygon, regime: Regime, depth_limit: usize, node_limit: usize) -> Result<(Enumeration, Search)> {
    let mut s = Search {
        regime,
        depth_limit,
        node_limit,
        memo: HashMap::new(),
        finals: Vec::new(),
        final_index: HashMap::new(),
        orthogonal: false,
    };
    let root = s.visit(p, 0)?;
    let e = Enumeration {
        min_len: root.min,
        max_len: root.max,
        finals: s.finals.clone(),
        states: s.memo.len(),
        orthogonal_reachable: s.orthogonal,
    };
    Ok((e, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn lhex_is_exhausted_in_one_step() {
        let e = enumerate_sequences(&lhex(), Regime::Standard, 100, 1000).unwrap();
        assert_eq!((e.min_len, e.max_len), (1, 1));
        assert_eq!(e.finals, vec![square2()]);
    }

    #[test]
    fn longest_choices_reach_max_len() {
        let p = u8();
        let e = enumerate_sequences(&p, Regime::Standard, 100, 1000).unwrap();
        let c = longest_choices(&p, Regime::Standard, 100, 1000).unwrap();
        assert_eq!(c.len(), e.max_len);
    }

    #[test]
    fn u8_standard_has_a_degenerate_step() {
        let e = enumerate_sequences(&u8(), Regime::Standard, 100, 1000).unwrap();
        assert!(e.orthogonal_reachable);
        assert_eq!(e.finals.len(), 1);
        assert!(e.max_len <= 8 - 5);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(enumerate_sequences(&u8(), Regime::Standard, 100, 1), Err(Error::SearchBudget(1))));
    }
}
