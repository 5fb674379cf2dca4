//! Predicts the final convex polygon and checks it against simulations.

use flipturn::engine::{default_max_steps, run_sequence, NaiveState};
use flipturn::generators::random_general;
use flipturn::polygon::Regime;
use flipturn::predictor::{final_position, up_region_height, RegionForest, RegionClass};
use flipturn::strategies::ArbitraryPolicy;

fn main() {
    let p = random_general(18, 5, 30).unwrap();
    let f = RegionForest::of(&p).unwrap();
    let ups = f.regions.iter().filter(|r| r.class == RegionClass::Up).count();
    let downs = f.regions.iter().filter(|r| r.class == RegionClass::Down).count();
    println!("{} exterior regions, {ups} up, {downs} down", f.regions.len());
    println!("top rises by {}", up_region_height(&p).unwrap());
    let want = final_position(&p).unwrap();
    println!("predicted: {:?}", want.vertices());
    for seed in 0..10 {
        let r = [Regime::Standard, Regime::Extended, Regime::Modified][seed as usize % 3];
        let t = run_sequence(&mut NaiveState::new(p.clone()), &mut ArbitraryPolicy::new(seed), r, default_max_steps(&p)).unwrap();
        println!("seed {seed} ({r:?}): {} flipturns, matches {}", t.len(), t.final_polygon == want);
    }
}
