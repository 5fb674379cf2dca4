use flipturn::engine::{apply_flipturn, FlipturnState, NaiveState};
use flipturn::generators::random_general;
use flipturn::polygon::Regime;
use flipturn::potentials::{brackets, check_step, discrete_angle, potential, AngleVariant, Ceilings};

fn main() {
    let p = random_general(12, 3, 20).unwrap();
    println!("bounds for this polygon: {:?}", Ceilings::of(&p));
    let mut st = NaiveState::new(p);
    let mut steps = 0;
    loop {
        let cur = st.polygon();
        println!(
            "B = {:2}  D = {:2}  D_T = {:2}  Phi = {}",
            brackets(&cur),
            discrete_angle(&cur, AngleVariant::SSet),
            discrete_angle(&cur, AngleVariant::TSet),
            potential(&cur)
        );
        let Some(k) = st.pockets(Regime::Extended).into_iter().next() else { break };
        let (next, rec) = apply_flipturn(&cur, &k).unwrap();
        let report = check_step(&cur, &next, &rec).unwrap();
        println!("  step {}: dD = {}, dB = {}, degenerate {}", steps + 1, report.delta_d, report.delta_b, report.degenerate);
        st.apply(&k).unwrap();
        steps += 1;
    }
    println!("{steps} extended flipturns");
}
