//! Exhaustive search over all flipturn sequences of small polygons.

use flipturn::engine::{default_max_steps, enumerate_sequences};
use flipturn::generators::{comb, family_delta, order_matters};
use flipturn::polygon::Regime;

fn main() {
    let cases = [
        ("comb(3) with notch", comb(3, true).unwrap()),
        ("delta(1)", family_delta(1).unwrap()),
        ("order matters", order_matters().unwrap()),
    ];
    for (name, p) in cases {
        let e = enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), 1_000_000).unwrap();
        println!(
            "{name:20} n = {:2}: shortest {:2}, longest {:2}, {} states, {} final polygon(s), orthogonal pocket reachable {}",
            p.n(),
            e.min_len,
            e.max_len,
            e.states,
            e.finals.len(),
            e.orthogonal_reachable
        );
    }
}
