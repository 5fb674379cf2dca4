//! The Subset-Sum polygon: an orthogonal flipturn becomes possible
//! exactly when some subset hits the target.

use flipturn::engine::{default_max_steps, enumerate_sequences};
use flipturn::generators::{subset_sum, subset_sum_reduction};
use flipturn::polygon::Regime;

fn main() {
    for (a, t) in [(vec![1, 2], 3), (vec![2, 3], 4), (vec![3, 5], 8), (vec![1, 3, 4, 6], 12), (vec![2, 4], 5)] {
        let p = subset_sum_reduction(&a, t).unwrap();
        let e = enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), 2_000_000).unwrap();
        println!(
            "A = {a:?}, T = {t:2}: n = {:2}, subset exists {:5}, orthogonal flipturn reachable {:5}, longest {}",
            p.n(),
            subset_sum(&a, t),
            e.orthogonal_reachable,
            e.max_len
        );
    }
}
