//! Small hand-checkable cases with known answers.

use flipturn::engine::{apply_flipturn, default_max_steps, enumerate_sequences, run_sequence, NaiveState};
use flipturn::generators::*;
use flipturn::geom::Rational;
use flipturn::polygon::fixtures::{lhex, square2, u8};
use flipturn::polygon::{find_pockets, Polygon, Regime};
use flipturn::potentials::{brackets, discrete_angle, potential, AngleVariant};
use flipturn::predictor::{final_position, final_shape, up_region_height};
use flipturn::strategies::{longest_trace, DiagonalFirst, GoodBad};

#[test]
fn lhex_becomes_the_square() {
    let p = lhex();
    let k = find_pockets(&p, Regime::Standard);
    assert_eq!(k.len(), 1);
    let (q, rec) = apply_flipturn(&p, &k[0]).unwrap();
    assert_eq!(q, square2());
    assert_eq!(rec.vertex_count_after, 4);
    assert_eq!(final_position(&p).unwrap(), square2());
    assert_eq!(up_region_height(&p).unwrap(), Rational::ZERO);
}

#[test]
fn u8_per_regime() {
    for (r, steps) in [(Regime::Standard, 3), (Regime::Extended, 3), (Regime::Modified, 2)] {
        let t = run_sequence(&mut NaiveState::new(u8()), &mut DiagonalFirst, r, 16).unwrap();
        assert!(t.convex);
        assert_eq!(t.len(), steps, "{r:?}");
        assert_eq!(t.final_polygon, final_position(&u8()).unwrap());
    }
}

#[test]
fn square_potentials() {
    let q = square2();
    assert_eq!(brackets(&q), 4);
    assert_eq!(discrete_angle(&q, AngleVariant::SSet), 4);
    assert_eq!(discrete_angle(&q, AngleVariant::TSet), 4);
    assert_eq!(potential(&q), Rational::from(6));
}

#[test]
fn comb_four_teeth() {
    let p = comb(4, false).unwrap();
    assert_eq!(p.n(), 16);
    let e = enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), 1_000_000).unwrap();
    assert_eq!((e.min_len, e.max_len), (9, 9));
    assert_eq!(e.finals.len(), 1);
    let d = run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, Regime::Extended, 64).unwrap();
    assert!(d.len() <= 9);
    let (lo, hi) = final_shape(&p).bounding_box();
    let (plo, phi) = p.bounding_box();
    assert_eq!(&hi.x - &lo.x, &phi.x - &plo.x);
}

#[test]
fn two_teeth_comb_is_a_rectangle_after_three_steps() {
    let p = comb(2, false).unwrap();
    let t = run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, Regime::Standard, 16).unwrap();
    assert_eq!(t.len(), 3);
    assert_eq!(t.final_polygon.n(), 4);
    assert_eq!(t.final_polygon, final_position(&p).unwrap());
}

#[test]
fn five_sixths_sixteen() {
    let p = family_5sixths(16).unwrap();
    assert_eq!(longest_trace(&p, Regime::Standard, 1_000_000).unwrap().len(), 10);
    let g = run_sequence(&mut NaiveState::new(p.clone()), &mut GoodBad::new(), Regime::Standard, 256).unwrap();
    assert!(g.len() <= 10);
}

#[test]
fn delta_gap() {
    let p = family_delta(1).unwrap();
    let e = enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), 1_000_000).unwrap();
    assert_eq!(e.min_len, 8);
    assert!(e.max_len >= 12);
}

#[test]
fn reduction_small_instances() {
    let yes = subset_sum_reduction(&[1, 2], 3).unwrap();
    let e = enumerate_sequences(&yes, Regime::Standard, default_max_steps(&yes), 1_000_000).unwrap();
    assert!(e.orthogonal_reachable);
    let no = subset_sum_reduction(&[2, 3], 4).unwrap();
    let e = enumerate_sequences(&no, Regime::Standard, default_max_steps(&no), 1_000_000).unwrap();
    assert!(!e.orthogonal_reachable);
    assert_eq!((e.min_len, e.max_len), ((no.n() - 4) / 2, (no.n() - 4) / 2));
}

#[test]
fn order_of_flipturns_matters() {
    let p = order_matters().unwrap();
    check_order_matters(&p).unwrap();
    let e = enumerate_sequences(&p, Regime::Standard, default_max_steps(&p), 1_000_000).unwrap();
    assert!(e.max_len > e.min_len);
}

#[test]
fn convex_polygon_is_its_own_prediction() {
    let p = Polygon::from_ints(&[(0, 0), (4, 1), (5, 3), (1, 4)]).unwrap();
    assert_eq!(final_shape(&p), p.translate(&-p.anchor()));
    assert_eq!(final_position(&p).unwrap(), p);
}
