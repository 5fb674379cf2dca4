//! Naive and tree engines on the same input: identical traces, different cost.

use std::time::Instant;

use flipturn::engine::{default_max_steps, run_sequence, NaiveState, TreeState};
use flipturn::generators::random_orthogonal;
use flipturn::polygon::Regime;
use flipturn::strategies::DiagonalFirst;

fn main() {
    for n in [256, 1024, 4096] {
        let p = random_orthogonal(n, 1, false).unwrap();
        let t0 = Instant::now();
        let a = run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, Regime::Modified, default_max_steps(&p)).unwrap();
        let naive = t0.elapsed();
        let t0 = Instant::now();
        let mut st = TreeState::new(&p);
        let b = run_sequence(&mut st, &mut DiagonalFirst, Regime::Modified, default_max_steps(&p)).unwrap();
        let tree = t0.elapsed();
        println!(
            "n = {n:5}: {} flipturns, naive {naive:?}, tree {tree:?}, same trace {}, structural ops/flip {:.1}",
            a.len(),
            a == b,
            st.stats().structural() as f64 / b.len() as f64
        );
    }
}
