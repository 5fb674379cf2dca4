//! Writes every built-in family to JSON files in a directory.

use flipturn::generators::*;
use flipturn::polygon::PolygonFile;
use serde_json::json;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "families".into());
    std::fs::create_dir_all(&dir).unwrap();
    let items = vec![
        ("comb_4", comb(4, false).unwrap(), provenance("comb", json!({"k": 4, "notch": false}))),
        ("comb_4_notch", comb(4, true).unwrap(), provenance("comb", json!({"k": 4, "notch": true}))),
        ("fivesixths_28", family_5sixths(28).unwrap(), provenance("fivesixths", json!({"n": 28}))),
        ("delta_1", family_delta(1).unwrap(), provenance("delta", json!({"k": 1}))),
        ("order_matters", order_matters().unwrap(), provenance("diff", json!({}))),
        ("random_orthogonal_30", random_orthogonal(30, 1, true).unwrap(), provenance("random_orthogonal", json!({"n": 30, "seed": 1, "generic": true}))),
        ("random_general_15", random_general(15, 1, 40).unwrap(), provenance("random_general", json!({"n": 15, "seed": 1, "radius": 40}))),
    ];
    for (name, p, meta) in items {
        let path = format!("{dir}/{name}.json");
        std::fs::write(&path, serde_json::to_string_pretty(&PolygonFile::with_meta(&p, meta)).unwrap()).unwrap();
        println!("{path}: {} vertices", p.n());
    }
}
