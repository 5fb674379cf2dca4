use std::path::Path;

use flipturn::engine::{run_sequence, NaiveState};
use flipturn::generators::comb;
use flipturn::polygon::Regime;
use flipturn::strategies::DiagonalFirst;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "frames".into());
    let p = comb(3, true).unwrap();
    let t = run_sequence(&mut NaiveState::new(p), &mut DiagonalFirst, Regime::Extended, 100).unwrap();
    let k = flipturn::svg::write_frames(&t, Path::new(&dir)).unwrap();
    println!("wrote {k} frames to {dir}/ ({} degenerate steps circled)", t.degenerate_steps());
}
