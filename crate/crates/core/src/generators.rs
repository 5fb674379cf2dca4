//! Named polygon families, random instances and the Subset-Sum reduction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::engine::{enumerate_sequences, run_sequence, NaiveState};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::polygon::{find_pockets, Polygon, Regime};
use crate::strategies::DiagonalFirst;

const RANDOM_BUDGET: usize = 1000;

/// JSON metadata recorded alongside a generated polygon.
pub fn provenance(family: &str, params: Value) -> Value {
    json!({ "generator": family, "params": params })
}

fn poly(coords: &[(i64, i64)]) -> Result<Polygon> {
    Polygon::from_ints(coords)
}

/// Horizontally symmetric comb with `k` teeth on a rectangular base.
/// Teeth and gaps both get shallower toward the middle. With `notch`, a
/// unit square is cut from the lower left corner (two more vertices).
pub fn comb(k: usize, notch: bool) -> Result<Polygon> {
    if k == 0 {
        return Err(Error::InvalidArgument("comb needs at least one tooth".into()));
    }
    let (tooth, gap) = comb_heights(k);
    let w = 2i64;
    let width = w * (2 * k as i64 - 1);
    let mut pts = vec![(0, 0), (width, 0)];
    // Right to left along the top.
    let mut x = width;
    for t in (0..k).rev() {
        pts.push((x, tooth[t]));
        x -= w;
        pts.push((x, tooth[t]));
        if t > 0 {
            pts.push((x, gap[t - 1]));
            x -= w;
            pts.push((x, gap[t - 1]));
        }
    }
    if notch {
        pts[0] = (1, 0);
        pts.push((0, 1));
        pts.push((1, 1));
        // Keep the cycle order: ... (0, top) -> (0, 1) -> (1, 1) -> (1, 0).
        let first = pts.remove(0);
        pts.push(first);
    }
    let p = poly(&pts)?;
    check_comb(&tooth, &gap)?;
    Ok(p)
}

/// Heights of teeth and gap floors, indexed left to right. Teeth get
/// lower and gap floors get higher toward the middle, so every gap is
/// shallower than the one outside it.
fn comb_heights(k: usize) -> (Vec<i64>, Vec<i64>) {
    let top = 2 * k as i64 + 2;
    let tooth = (0..k).map(|i| top - i.min(k - 1 - i) as i64).collect();
    let gap = (0..k.saturating_sub(1)).map(|i| 1 + i.min(k - 2 - i) as i64).collect();
    (tooth, gap)
}

fn check_comb(tooth: &[i64], gap: &[i64]) -> Result<()> {
    let sym = |v: &[i64]| v.iter().eq(v.iter().rev());
    // Strictly monotone up to the middle, allowing a tie at the centre pair.
    let toward_middle = |v: &[i64], sign: i64| {
        let h = v.len().div_ceil(2);
        v[..h].windows(2).all(|w| sign * (w[1] - w[0]) > 0)
    };
    let lowest_tooth = tooth.iter().min().copied().unwrap_or(0);
    let floors_below = gap.iter().all(|g| *g > 0 && *g < lowest_tooth);
    if sym(tooth) && sym(gap) && toward_middle(tooth, -1) && toward_middle(gap, 1) && floors_below {
        Ok(())
    } else {
        Err(Error::SelfCheck("comb heights are not symmetric and monotone".into()))
    }
}

fn bbox(pts: &[(i64, i64)]) -> (i64, i64, i64, i64) {
    let xs = pts.iter().map(|p| p.0);
    let ys = pts.iter().map(|p| p.1);
    (xs.clone().min().unwrap(), ys.clone().min().unwrap(), xs.max().unwrap(), ys.max().unwrap())
}

/// Rectangle with an L-shaped pocket hanging from its top edge; the tail
/// of the L is a half-turned copy of the previous member. Members for
/// n = 4, 6, 8 are a rectangle, an L and a notched rectangle.
pub fn family_5sixths(n: usize) -> Result<Polygon> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("family_5sixths needs even n >= 4, got {n}")));
    }
    poly(&five_sixths_coords(n, 0))
}

/// `ext` is how far left of this member's rectangle the enclosing
/// rectangle will reach by the time its pocket is flipturned; the tail is
/// made wide enough to land flush with that side.
fn five_sixths_coords(n: usize, ext: i64) -> Vec<(i64, i64)> {
    match n {
        4 => vec![(0, 0), (ext + 4, 0), (ext + 4, 4), (0, 4)],
        6 => vec![(0, 0), (ext + 4, 0), (ext + 4, 2), (2, 2), (2, 4), (0, 4)],
        8 => vec![(0, 0), (ext + 6, 0), (ext + 6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)],
        _ => {
            let s0 = 1;
            let inner = five_sixths_coords(n - 6, ext + s0);
            let (_, _, a, b) = bbox(&inner);
            // Tail occupies [s0, s0 + a] x [y0, y0 + b], rotated a half turn;
            // once flipped back it spans [s1 - a, s1] = [-ext, s1].
            let s1 = a - ext;
            assert!(s1 > s0, "tail too narrow for its shaft");
            let y0 = 1;
            let width = s0 + a + 1;
            let height = y0 + b + 2;
            let tail: Vec<(i64, i64)> = inner.iter().map(|&(x, y)| (s0 + a - x, y0 + b - y)).collect();
            // The half-turned copy's top-left corner is the image of the
            // inner polygon's bottom-right corner.
            let corner = (s0, y0 + b);
            let c = tail.iter().position(|&p| p == corner).expect("inner polygon has a bottom-right corner");
            let m = tail.len();
            let mut pts = vec![(0, 0), (width, 0), (width, height), (s1, height), (s1, y0 + b)];
            // Clockwise around the tail, starting after the corner.
            for step in 1..m {
                pts.push(tail[(c + m - step) % m]);
            }
            pts.push((s0, height));
            pts.push((0, height));
            pts
        }
    }
}

/// Sixteen-vertex tooth profile (width, height) of the gap family.
const DELTA_UNIT: [(i64, i64); 8] = [(3, 8), (3, 3), (3, 4), (2, 3), (1, 8), (1, 1), (2, 6), (2, 3)];
const DELTA_LAST: (i64, i64) = (1, 7);

/// Comb-like orthogonal polygon with n = 16k + 4 vertices: `k` copies of
/// a sixteen-vertex tooth profile on a rectangular base. Diagonal-first
/// convexifies it with diagonal flipturns only; for k = 1 some other
/// sequence needs twelve. Both facts are checked on construction (the
/// second only for k = 1, where exhaustive search is cheap).
pub fn family_delta(k: usize) -> Result<Polygon> {
    if k == 0 {
        return Err(Error::InvalidArgument("family_delta needs k >= 1".into()));
    }
    let mut segs: Vec<(i64, i64)> = DELTA_UNIT.iter().copied().cycle().take(8 * k).collect();
    segs.push(DELTA_LAST);
    let width: i64 = segs.iter().map(|s| s.0).sum();
    let mut pts = vec![(0, 0), (width, 0)];
    let mut x = width;
    for &(w, h) in segs.iter().rev() {
        pts.push((x, h));
        x -= w;
        pts.push((x, h));
    }
    let p = poly(&pts)?;
    check_delta(&p, k)?;
    Ok(p)
}

fn check_delta(p: &Polygon, k: usize) -> Result<()> {
    let n = p.n();
    let fail = |m: String| Err(Error::SelfCheck(format!("family_delta({k}): {m}")));
    if n != 16 * k + 4 {
        return fail(format!("{n} vertices"));
    }
    let t = run_sequence(&mut NaiveState::new(p.clone()), &mut DiagonalFirst, Regime::Standard, n * n)?;
    if t.len() != (n - 4) / 2 || t.steps.iter().any(|s| !s.record.pocket.is_diagonal()) {
        return fail(format!("diagonal-first took {} steps", t.len()));
    }
    if k == 1 {
        let e = enumerate_sequences(p, Regime::Standard, 64, 100_000)?;
        if e.min_len != 8 || e.max_len < 12 {
            return fail(format!("sequence lengths {}..={}", e.min_len, e.max_len));
        }
    }
    Ok(())
}

/// Random simple orthogonal polygon with exactly `n` vertices: an
/// x-monotone region between two random step functions, turned by a
/// random multiple of 90 degrees. With `generic`, edge lengths are
/// perturbed so that no chain of edges other than the whole boundary has
/// zero horizontal or zero vertical extent; then every lid stays diagonal.
pub fn random_orthogonal(n: usize, seed: u64, generic: bool) -> Result<Polygon> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("orthogonal polygons need even n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_BUDGET {
        let Some(pts) = monotone_orthogonal(n, &mut rng) else { continue };
        let turns = rng.gen_range(0..4);
        let pts: Vec<(i64, i64)> = pts.into_iter().map(|p| (0..turns).fold(p, |(x, y), _| (-y, x))).collect();
        let pts = if generic { perturb(&pts) } else { pts.into_iter().map(|(x, y)| Point::int(x, y)).collect() };
        match Polygon::from_vertices(&pts) {
            Ok(p) if p.n() == n => return Ok(p),
            _ => continue,
        }
    }
    Err(Error::GenerationBudget(RANDOM_BUDGET))
}

/// Uniform value in `lo..=hi` other than `except`.
fn pick_except(rng: &mut ChaCha8Rng, lo: i64, hi: i64, except: i64) -> Option<i64> {
    let skip = (lo..=hi).contains(&except) as i64;
    if hi - lo + 1 - skip <= 0 {
        return None;
    }
    let v = rng.gen_range(lo..=hi - skip);
    Some(if skip == 1 && v >= except { v + 1 } else { v })
}

fn monotone_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(i64, i64)>> {
    let half = n / 2;
    let top_runs = rng.gen_range(1..half);
    let bottom_runs = half - top_runs;
    let breaks = top_runs + bottom_runs - 2;
    let span = (2 * n as i64).max(8);
    let mut xs: Vec<i64> = (1..span).collect();
    xs.shuffle(rng);
    let mut xs = xs[..breaks].to_vec();
    let mut is_top = vec![true; top_runs - 1];
    is_top.extend(vec![false; bottom_runs - 1]);
    is_top.shuffle(rng);
    xs.sort_unstable();
    let h = span;
    let mut top = rng.gen_range(h / 2..=h);
    let mut bottom = rng.gen_range(0..h / 2);
    let mut upper = vec![(0, top)];
    let mut lower = vec![(0, bottom)];
    for (&x, &t) in xs.iter().zip(&is_top) {
        if t {
            let next = pick_except(rng, bottom + 1, h, top)?;
            upper.push((x, top));
            upper.push((x, next));
            top = next;
        } else {
            let next = pick_except(rng, 0, top - 1, bottom)?;
            lower.push((x, bottom));
            lower.push((x, next));
            bottom = next;
        }
    }
    upper.push((span, top));
    lower.push((span, bottom));
    lower.extend(upper.into_iter().rev());
    Some(lower)
}

/// Rescales integer coordinates and adds power-of-two offsets to the edge
/// lengths. One edge per axis absorbs the offsets so the boundary closes;
/// by dominance of the largest power every proper subset of the edges of
/// one axis has a nonzero signed offset.
fn perturb(pts: &[(i64, i64)]) -> Vec<Point> {
    let n = pts.len();
    let vecs: Vec<(i64, i64)> = (0..n).map(|i| (pts[(i + 1) % n].0 - pts[i].0, pts[(i + 1) % n].1 - pts[i].1)).collect();
    let per_axis = n / 2 + 1;
    let shift = per_axis as u32 + 3;
    let (mut hx, mut vy) = (0u32, 0u32);
    let mut out: Vec<(i128, i128)> = vecs
        .iter()
        .map(|&(dx, dy)| {
            let scale = |v: i64, k: &mut u32| {
                let e = 1i128 << *k;
                *k += 1;
                ((v as i128) << shift) + v.signum() as i128 * e
            };
            if dx != 0 {
                (scale(dx, &mut hx), 0)
            } else {
                (0, scale(dy, &mut vy))
            }
        })
        .collect();
    // Close the cycle on the last edge of each axis.
    let sx: i128 = out.iter().map(|v| v.0).sum();
    let sy: i128 = out.iter().map(|v| v.1).sum();
    if let Some(i) = (0..n).rev().find(|&i| out[i].0 != 0) {
        out[i].0 -= sx;
    }
    if let Some(i) = (0..n).rev().find(|&i| out[i].1 != 0) {
        out[i].1 -= sy;
    }
    let mut cur = (0i128, 0i128);
    out.iter()
        .map(|v| {
            let p = Point::new(int_rational(cur.0), int_rational(cur.1));
            cur = (cur.0 + v.0, cur.1 + v.1);
            p
        })
        .collect()
}

fn int_rational(v: i128) -> crate::geom::Rational {
    match i64::try_from(v) {
        Ok(x) => crate::geom::Rational::from_int(x),
        Err(_) => crate::geom::Rational::from_big(num_rational::BigRational::from_integer(v.into())),
    }
}

/// Random star-shaped polygon with integer vertices in a box of radius
/// `radius` around the origin; edge directions are generally all distinct.
pub fn random_general(n: usize, seed: u64, radius: i64) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_BUDGET {
        let mut pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius)))
            .filter(|&p| p != (0, 0))
            .collect();
        pts.sort_by(|a, b| (a.1 as f64).atan2(a.0 as f64).total_cmp(&(b.1 as f64).atan2(b.0 as f64)));
        pts.dedup();
        if let Ok(p) = poly(&pts) {
            if p.n() == n {
                return Ok(p);
            }
        }
    }
    Err(Error::GenerationBudget(RANDOM_BUDGET))
}

/// Polygon from the Subset-Sum reduction: the boundary walk of staircase
/// steps, inward spikes, the test spike and outward spikes, with the spike
/// returning east by the same length it went west. Odd-sized `a` is padded
/// with an element no subset sum can use.
pub fn subset_sum_reduction(a: &[u64], t: u64) -> Result<Polygon> {
    if a.is_empty() || a.contains(&0) || t == 0 {
        return Err(Error::InvalidArgument("subset-sum instance needs positive integers".into()));
    }
    let mut a: Vec<i64> = a.iter().map(|&v| v as i64).collect();
    let t = t as i64;
    if a.len() % 2 == 1 {
        let sum: i64 = a.iter().sum();
        a.push(t + sum + 1);
    }
    let n = a.len() as i64;
    let at = |i: i64| a[(i - 1) as usize];
    let sigma: i64 = a.iter().sum();
    enum D {
        N,
        S,
        E,
        W,
    }
    use D::*;
    let mut walk: Vec<(D, i64)> = Vec::new();
    for i in 1..=n / 2 {
        let ai = at(2 * i - 1);
        let spike = t + 2 * n - 4 * i + 4;
        walk.extend([(S, ai), (E, ai), (S, 1), (W, spike), (S, 1), (E, spike)]);
    }
    walk.extend([(S, t + 2), (E, 1), (N, t), (E, 1), (S, t + 1), (W, 2)]);
    for i in 1..=n / 2 {
        let ai = at(n - 2 * i + 2);
        let spike = t + 4 * i + 2;
        walk.extend([(S, 1), (E, ai), (S, ai), (E, spike), (S, 1), (W, spike)]);
    }
    walk.extend([(W, t + sigma + 2 * n + 2), (N, t + sigma + 2 * n + 3), (E, t + 2 * n + 2)]);

    let mut cur = (0i64, 0i64);
    let mut pts = Vec::with_capacity(walk.len());
    for (d, len) in walk {
        pts.push(cur);
        cur = match d {
            N => (cur.0, cur.1 + len),
            S => (cur.0, cur.1 - len),
            E => (cur.0 + len, cur.1),
            W => (cur.0 - len, cur.1),
        };
    }
    if cur != (0, 0) {
        return Err(Error::Invariant("reduction walk does not close".into()));
    }
    pts.reverse();
    poly(&pts).map_err(|e| Error::Invariant(format!("reduction polygon is invalid: {e}")))
}

/// Whether some subset of `a` sums to `t`.
pub fn subset_sum(a: &[u64], t: u64) -> bool {
    let t = t as usize;
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for &v in a {
        let v = v as usize;
        for s in (v..=t).rev() {
            reach[s] |= reach[s - v];
        }
    }
    reach[t]
}

/// A small orthogonal polygon with two pockets where the order matters:
/// flipturning one of them first creates an orthogonal pocket, the other
/// does not. The property is checked on every call.
pub fn order_matters() -> Result<Polygon> {
    let p = poly(ORDER_MATTERS)?;
    check_order_matters(&p)?;
    Ok(p)
}

const ORDER_MATTERS: &[(i64, i64)] =
    &[(0, 0), (24, 0), (24, 24), (11, 24), (11, 20), (13, 20), (13, 19), (2, 19), (2, 15), (4, 15), (4, 10), (0, 10)];

/// Two pockets; flipturning one of them first creates an orthogonal
/// pocket and leaves room for a strictly longer continuation than
/// flipturning the other first.
pub fn check_order_matters(p: &Polygon) -> Result<()> {
    let fail = |m: &str| Err(Error::SelfCheck(format!("order_matters: {m}")));
    let pockets = find_pockets(p, Regime::Standard);
    if pockets.len() != 2 {
        return fail("expected two pockets");
    }
    let mut outcomes = Vec::new();
    for k in &pockets {
        let q = crate::engine::flip(p, k.first_vertex, k.last_vertex);
        let orthogonal = find_pockets(&q, Regime::Standard).iter().any(|k| !k.is_diagonal());
        let longest = enumerate_sequences(&q, Regime::Standard, 64, 100_000)?.max_len;
        outcomes.push((orthogonal, longest));
    }
    outcomes.sort();
    match outcomes[..] {
        [(false, short), (true, long)] if long > short => Ok(()),
        [(false, _), (true, _)] => fail("the orthogonal order is not longer"),
        _ => fail("both orders behave alike"),
    }
}
