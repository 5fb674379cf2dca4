//! Runs one convexifying sequence and prints every step.

use flipturn::engine::{default_max_steps, run_sequence, NaiveState};
use flipturn::generators::random_orthogonal;
use flipturn::polygon::Regime;
use flipturn::strategies::ArbitraryPolicy;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let p = random_orthogonal(16, seed, false).unwrap();
    println!("start: {:?}", p.vertices());
    let t = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), Regime::Standard, default_max_steps(&p)).unwrap();
    for s in &t.steps {
        let r = &s.record;
        println!(
            "{:2}: {:?} pocket {}..{}, n {} -> {}, area {} -> {}",
            s.index + 1,
            r.pocket.orientation,
            r.pocket.first_vertex,
            r.pocket.last_vertex,
            r.vertex_count_before,
            r.vertex_count_after,
            r.area_before,
            r.area_after
        );
    }
    println!("convex after {} flipturns: {:?}", t.len(), t.final_polygon.vertices());
}
