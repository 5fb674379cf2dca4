use flipturn::engine::{default_max_steps, run_sequence, NaiveState};
use flipturn::generators::{comb, family_5sixths};
use flipturn::polygon::{Polygon, Regime};
use flipturn::strategies::{longest_trace, search_short_sequence, ArbitraryPolicy, DiagonalFirst, GoodBad, Policy};

fn run(p: &Polygon, policy: &mut dyn Policy, r: Regime) -> usize {
    run_sequence(&mut NaiveState::new(p.clone()), policy, r, default_max_steps(p)).unwrap().len()
}

fn main() {
    for (name, p) in [("comb(5)", comb(5, false).unwrap()), ("5/6 family, n=22", family_5sixths(22).unwrap())] {
        let n = p.n();
        println!("{name}, n = {n}");
        println!("  diagonal-first, extended: {} (ceiling {})", run(&p, &mut DiagonalFirst, Regime::Extended), 3 * (n - 4) / 4);
        let mut gb = GoodBad::new();
        println!("  good-bad, standard:       {} (ceiling {}), {} bad steps", run(&p, &mut gb, Regime::Standard), 5 * (n - 4) / 6, gb.bad_steps);
        println!("  arbitrary:                {}", run(&p, &mut ArbitraryPolicy::new(1), Regime::Standard));
        println!("  best of 32 restarts:      {}", search_short_sequence(&p, Regime::Standard, 32, 0).unwrap().len());
        println!("  longest:                  {}", longest_trace(&p, Regime::Standard, 1_000_000).unwrap().len());
    }
}
