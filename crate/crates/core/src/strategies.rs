//! Pocket-selection policies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{longest_choices, run_sequence, FlipturnState, NaiveState, Trace};
use crate::error::{Error, Result};
use crate::polygon::{Pocket, Polygon, Regime};

pub trait Policy {
    fn name(&self) -> String;

    fn seed(&self) -> Option<u64> {
        None
    }

    /// Picks an index into `pockets`, which is nonempty and is the
    /// current pocket list of `state`. Implementations may probe `state`
    /// but must restore it before returning.
    fn choose(&mut self, state: &mut dyn FlipturnState, regime: Regime, pockets: &[Pocket]) -> Result<usize>;
}

fn nonempty(pockets: &[Pocket]) -> Result<()> {
    if pockets.is_empty() {
        Err(Error::ConvexInput)
    } else {
        Ok(())
    }
}

/// Uniformly random pocket from a seeded ChaCha8 stream.
pub struct ArbitraryPolicy {
    seed: u64,
    rng: ChaCha8Rng,
}

impl ArbitraryPolicy {
    pub fn new(seed: u64) -> Self {
        ArbitraryPolicy { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Policy for ArbitraryPolicy {
    fn name(&self) -> String {
        "arbitrary".into()
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }

    fn choose(&mut self, _: &mut dyn FlipturnState, _: Regime, pockets: &[Pocket]) -> Result<usize> {
        nonempty(pockets)?;
        Ok(self.rng.gen_range(0..pockets.len()))
    }
}

/// First diagonal pocket, else the first pocket.
pub struct DiagonalFirst;

impl Policy for DiagonalFirst {
    fn name(&self) -> String {
        "diagonal-first".into()
    }

    fn choose(&mut self, _: &mut dyn FlipturnState, _: Regime, pockets: &[Pocket]) -> Result<usize> {
        nonempty(pockets)?;
        Ok(pockets.iter().position(|k| k.is_diagonal()).unwrap_or(0))
    }
}

/// Random diagonal pocket if any exists, else a random pocket.
pub struct RandomDiagonalFirst {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomDiagonalFirst {
    pub fn new(seed: u64) -> Self {
        RandomDiagonalFirst { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Policy for RandomDiagonalFirst {
    fn name(&self) -> String {
        "random-diagonal-first".into()
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }

    fn choose(&mut self, _: &mut dyn FlipturnState, _: Regime, pockets: &[Pocket]) -> Result<usize> {
        nonempty(pockets)?;
        let diag: Vec<usize> = (0..pockets.len()).filter(|&i| pockets[i].is_diagonal()).collect();
        if diag.is_empty() {
            Ok(self.rng.gen_range(0..pockets.len()))
        } else {
            Ok(diag[self.rng.gen_range(0..diag.len())])
        }
    }
}

/// Replays a fixed list of pocket indices.
pub struct Scripted {
    choices: Vec<usize>,
    next: usize,
}

impl Scripted {
    pub fn new(choices: Vec<usize>) -> Self {
        Scripted { choices, next: 0 }
    }
}

impl Policy for Scripted {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn choose(&mut self, _: &mut dyn FlipturnState, _: Regime, pockets: &[Pocket]) -> Result<usize> {
        nonempty(pockets)?;
        let i = *self
            .choices
            .get(self.next)
            .ok_or_else(|| Error::InvalidArgument("script ended before the polygon became convex".into()))?;
        self.next += 1;
        if i >= pockets.len() {
            return Err(Error::IndexOutOfRange { index: i, len: pockets.len() });
        }
        Ok(i)
    }
}

/// A longest sequence, found by exhaustive search and replayed as a trace.
pub fn longest_trace(p: &Polygon, regime: Regime, node_limit: usize) -> Result<Trace> {
    let max_steps = crate::engine::default_max_steps(p);
    let choices = longest_choices(p, regime, max_steps, node_limit)?;
    let mut t = run_sequence(&mut NaiveState::new(p.clone()), &mut Scripted::new(choices), regime, max_steps)?;
    t.policy = "longest".into();
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PocketClass {
    Good,
    Bad,
}

fn diagonal_count(state: &mut dyn FlipturnState, regime: Regime) -> (usize, Option<Pocket>) {
    let ps = state.pockets(regime);
    let first = ps.iter().find(|k| k.is_diagonal()).cloned();
    (ps.iter().filter(|k| k.is_diagonal()).count(), first)
}

/// Probes an orthogonal pocket: it is good if flipturning it allows two
/// diagonal flipturns in a row. The state is restored before returning.
pub fn classify_orthogonal_pocket(state: &mut dyn FlipturnState, regime: Regime, pkt: &Pocket) -> Result<PocketClass> {
    let r1 = state.apply(pkt)?;
    let (count, first) = diagonal_count(state, regime);
    let class = match (count, first) {
        (c, _) if c >= 2 => PocketClass::Good,
        (1, Some(d)) => {
            let r2 = state.apply(&d)?;
            let (after, _) = diagonal_count(state, regime);
            state.undo(&r2)?;
            if after >= 1 {
                PocketClass::Good
            } else {
                PocketClass::Bad
            }
        }
        _ => PocketClass::Bad,
    };
    state.undo(&r1)?;
    Ok(class)
}

/// Diagonal pockets first, then good orthogonal pockets, then bad ones.
#[derive(Debug, Default)]
pub struct GoodBad {
    pub bad_steps: usize,
    pub good_steps: usize,
    pub probes: usize,
}

impl GoodBad {
    pub fn new() -> Self {
        GoodBad::default()
    }
}

impl Policy for GoodBad {
    fn name(&self) -> String {
        "good-bad".into()
    }

    fn choose(&mut self, state: &mut dyn FlipturnState, regime: Regime, pockets: &[Pocket]) -> Result<usize> {
        nonempty(pockets)?;
        if let Some(i) = pockets.iter().position(|k| k.is_diagonal()) {
            return Ok(i);
        }
        for (i, k) in pockets.iter().enumerate() {
            self.probes += 1;
            if classify_orthogonal_pocket(state, regime, k)? == PocketClass::Good {
                self.good_steps += 1;
                return Ok(i);
            }
        }
        self.bad_steps += 1;
        Ok(0)
    }
}

/// Best-effort search for a short convexifying sequence: the
/// deterministic diagonal-first run plus `restarts` randomized runs.
pub fn search_short_sequence(p: &Polygon, regime: Regime, restarts: u64, seed: u64) -> Result<Trace> {
    let max_steps = crate::engine::default_max_steps(p);
    let mut best = run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, regime, max_steps)?;
    let runs: Vec<Result<Trace>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let s = seed.wrapping_add(r);
            let mut st = NaiveState::new(p.clone());
            if r % 2 == 0 {
                run_sequence(&mut st, &mut RandomDiagonalFirst::new(s), regime, max_steps)
            } else {
                run_sequence(&mut st, &mut ArbitraryPolicy::new(s), regime, max_steps)
            }
        })
        .collect();
    for t in runs {
        let t = t?;
        if t.convex && (!best.convex || t.len() < best.len()) {
            best = t;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::fixtures::*;

    #[test]
    fn arbitrary_is_reproducible() {
        let run = |seed| {
            run_sequence(&mut NaiveState::new(u8()), &mut ArbitraryPolicy::new(seed), Regime::Extended, 64).unwrap()
        };
        assert_eq!(run(7), run(7));
    }

    #[test]
    fn convex_input_is_an_error() {
        let mut st = NaiveState::new(square2());
        assert!(matches!(ArbitraryPolicy::new(0).choose(&mut st, Regime::Standard, &[]), Err(Error::ConvexInput)));
    }

    #[test]
    fn probing_restores_the_polygon() {
        let mut st = NaiveState::new(u8());
        let ps = st.pockets(Regime::Standard);
        let _ = classify_orthogonal_pocket(&mut st, Regime::Standard, &ps[0]).unwrap();
        assert_eq!(st.polygon(), u8());
    }

    #[test]
    fn short_search_on_lhex() {
        let t = search_short_sequence(&lhex(), Regime::Standard, 4, 0).unwrap();
        assert_eq!(t.len(), 1);
    }
}
