use serde::{Deserialize, Serialize};

use super::{FlipturnRecord, FlipturnState};
use crate::error::Result;
use crate::polygon::{Polygon, Regime};
use crate::strategies::Policy;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub index: usize,
    #[serde(flatten)]
    pub record: FlipturnRecord,
}

/// A run of flipturns from `initial` to `final_polygon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub regime: Regime,
    pub policy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub initial: Polygon,
    pub steps: Vec<TraceStep>,
    pub final_polygon: Polygon,
    pub convex: bool,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &FlipturnRecord> {
        self.steps.iter().map(|s| &s.record)
    }

    pub fn orthogonal_steps(&self) -> usize {
        self.records().filter(|r| !r.pocket.is_diagonal()).count()
    }

    pub fn degenerate_steps(&self) -> usize {
        self.records().filter(|r| r.pocket.degenerate).count()
    }

    /// Replays the trace on the reference engine and returns the polygon
    /// before each step plus the final one.
    pub fn replay(&self) -> Result<Vec<Polygon>> {
        let mut out = vec![self.initial.clone()];
        for s in &self.steps {
            let (q, rec) = super::apply_flipturn(out.last().unwrap(), &s.record.pocket)?;
            if rec != s.record {
                return Err(crate::Error::Invariant(format!("step {} does not match its record", s.index)));
            }
            out.push(q);
        }
        Ok(out)
    }
}

/// Drives `state` with `policy` until the polygon is convex or
/// `max_steps` flipturns have been made.
pub fn run_sequence(
    state: &mut dyn FlipturnState,
    policy: &mut dyn Policy,
    regime: Regime,
    max_steps: usize,
) -> Result<Trace> {
    let initial = state.polygon();
    let mut steps = Vec::new();
    let mut convex = false;
    while steps.len() < max_steps {
        let pockets = state.pockets(regime);
        if pockets.is_empty() {
            convex = true;
            break;
        }
        let k = policy.choose(state, regime, &pockets)?;
        let record = state.apply(&pockets[k])?;
        steps.push(TraceStep { index: steps.len(), record });
    }
    if !convex {
        convex = state.pockets(regime).is_empty();
    }
    Ok(Trace { regime, policy: policy.name(), seed: policy.seed(), initial, steps, final_polygon: state.polygon(), convex })
}

/// Default step budget: n^2, which no convexifying sequence exceeds.
pub fn default_max_steps(p: &Polygon) -> usize {
    p.n() * p.n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::NaiveState;
    use crate::polygon::fixtures::*;
    use crate::strategies::{ArbitraryPolicy, DiagonalFirst};

    #[test]
    fn lhex_trace_has_one_step() {
        let mut st = NaiveState::new(lhex());
        let t = run_sequence(&mut st, &mut DiagonalFirst, Regime::Standard, 36).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.convex);
        assert_eq!(t.final_polygon, square2());
    }

    #[test]
    fn u8_modified_takes_two_steps() {
        for seed in 0..5 {
            let mut st = NaiveState::new(u8());
            let t = run_sequence(&mut st, &mut ArbitraryPolicy::new(seed), Regime::Modified, 64).unwrap();
            assert_eq!(t.len(), 2);
        }
    }

    #[test]
    fn json_round_trip_and_replay() {
        let mut st = NaiveState::new(u8());
        let t = run_sequence(&mut st, &mut ArbitraryPolicy::new(3), Regime::Standard, 64).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let back: Trace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let polys = back.replay().unwrap();
        assert_eq!(polys.last().unwrap(), &t.final_polygon);
    }
}
