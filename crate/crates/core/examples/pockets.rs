use flipturn::polygon::fixtures::{lhex, u8};
use flipturn::polygon::{find_pockets, Polygon, Regime};

fn main() {
    let p = Polygon::from_ints(&[(0, 0), (6, 0), (6, 5), (4, 5), (4, 2), (2, 2), (2, 4), (0, 4)]).unwrap();
    for (name, poly) in [("lhex", lhex()), ("u8", u8()), ("notched", p)] {
        println!("{name}: n = {}, hull = {:?}", poly.n(), poly.convex_hull());
        for r in [Regime::Standard, Regime::Extended, Regime::Modified] {
            for k in find_pockets(&poly, r) {
                println!(
                    "  {r:?}: vertices {}..{} lid {:?} -> {:?} {:?}{}",
                    k.first_vertex,
                    k.last_vertex,
                    k.lid.0,
                    k.lid.1,
                    k.orientation,
                    if k.degenerate { " (degenerate)" } else { "" }
                );
            }
        }
    }
}
