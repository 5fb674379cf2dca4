//! Exact planar primitives: points, primitive directions, orientation,
//! convex hulls and wedge containment.

mod hull;
mod rational;

pub use hull::{convex_hull, convex_hull_boundary, extreme_vertex, wedge_contains};
pub use rational::{ParseRationalError, Rational};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: impl Into<Rational>, y: impl Into<Rational>) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(x, y)
    }

    pub fn origin() -> Self {
        Point::default()
    }

    pub fn cross(&self, other: &Point) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Rotation by +90 degrees.
    pub fn perp(&self) -> Point {
        Point { x: -&self.y, y: self.x.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        (self + other).scale(&Rational::new(1, 2))
    }

    /// Point reflection through `c`.
    pub fn reflect_through(&self, c: &Point) -> Point {
        &(c + c) - self
    }

    /// Lexicographic key used to pick a polygon's first vertex:
    /// lowest y, then lowest x.
    pub fn lower_left_cmp(&self, other: &Point) -> Ordering {
        self.y.cmp(&other.y).then_with(|| self.x.cmp(&other.x))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (x, y) = <(Rational, Rational)>::deserialize(d)?;
        Ok(Point { x, y })
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, o: &'a Point) -> Point {
        Point { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, o: &'a Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        &self + &o
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        &self - &o
    }
}

impl<'a> Neg for &'a Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point { x: -&self.x, y: -&self.y }
    }
}

impl<'a> Mul<&'a Rational> for &'a Point {
    type Output = Point;
    fn mul(self, k: &'a Rational) -> Point {
        self.scale(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
    Colinear,
}

/// Sign of `(b - a) x (c - a)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    let s = (b - a).cross(&(c - a)).signum();
    match s {
        1 => Orientation::Left,
        -1 => Orientation::Right,
        _ => Orientation::Colinear,
    }
}

pub fn orient_sign(a: &Point, b: &Point, c: &Point) -> i32 {
    (b - a).cross(&(c - a)).signum()
}

/// Twice the signed area of the polygon through `pts`.
pub fn signed_area2(pts: &[Point]) -> Rational {
    let n = pts.len();
    let mut acc = Rational::ZERO;
    for i in 0..n {
        acc += &pts[i].cross(&pts[(i + 1) % n]);
    }
    acc
}

/// A primitive integer direction vector. `(1,0)` and `(-1,0)` are distinct.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: Rational,
    dy: Rational,
}

impl Direction {
    /// Normalizes any nonzero vector to its primitive integer multiple.
    /// Returns the direction and the scalar `k > 0` with `v = k * dir`.
    pub fn from_vector(v: &Point) -> Option<(Direction, Rational)> {
        if v.is_zero() {
            return None;
        }
        if let (Some(x), Some(y)) = (v.x.to_i64(), v.y.to_i64()) {
            let g = num_integer::gcd(x, y);
            let dir = Direction { dx: Rational::from_int(x / g), dy: Rational::from_int(y / g) };
            return Some((dir, Rational::from_int(g)));
        }
        let l = v.x.denom().lcm(&v.y.denom());
        let ix: BigInt = v.x.numer() * (&l / v.x.denom());
        let iy: BigInt = v.y.numer() * (&l / v.y.denom());
        let g = ix.gcd(&iy);
        let px = &ix / &g;
        let py = &iy / &g;
        let dir = Direction { dx: Rational::from(px), dy: Rational::from(py) };
        // v = (g / l) * dir
        let k = Rational::from(g) / Rational::from(l);
        Some((dir, k))
    }

    pub fn of(dx: i64, dy: i64) -> Direction {
        Direction::from_vector(&Point::int(dx, dy)).expect("zero direction").0
    }

    pub fn dx(&self) -> &Rational {
        &self.dx
    }

    pub fn dy(&self) -> &Rational {
        &self.dy
    }

    pub fn vector(&self) -> Point {
        Point { x: self.dx.clone(), y: self.dy.clone() }
    }

    pub fn reversed(&self) -> Direction {
        Direction { dx: -&self.dx, dy: -&self.dy }
    }

    /// The sign-normalized representative of this direction's slope.
    pub fn slope(&self) -> Direction {
        if self.dx.is_positive() || (self.dx.is_zero() && self.dy.is_positive()) {
            self.clone()
        } else {
            self.reversed()
        }
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.dx.is_zero() || self.dy.is_zero()
    }

    pub fn cross(&self, other: &Direction) -> Rational {
        &self.dx * &other.dy - &self.dy * &other.dx
    }

    /// Which half of the circle the direction lies in: 0 for angles in
    /// `[0, pi)`, 1 for `[pi, 2 pi)`.
    fn half(&self) -> u8 {
        if self.dy.is_positive() || (self.dy.is_zero() && self.dx.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Compares polar angles measured counterclockwise from `+x`.
    pub fn angle_cmp(&self, other: &Direction) -> Ordering {
        self.half().cmp(&other.half()).then_with(|| match self.cross(other).signum() {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    }

    /// True iff `self` lies strictly inside the counterclockwise turn from
    /// `from` to `to`, where the turn is the one of angle less than pi.
    /// Returns false when `from` and `to` are parallel.
    pub fn strictly_between(&self, from: &Direction, to: &Direction) -> bool {
        let turn = from.cross(to).signum();
        if turn == 0 {
            return false;
        }
        let (a, b) = if turn > 0 { (from, to) } else { (to, from) };
        a.cross(self).is_positive() && self.cross(b).is_positive()
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.angle_cmp(other)
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.dx, &self.dy).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (x, y) = <(Rational, Rational)>::deserialize(d)?;
        let (dir, _) = Direction::from_vector(&Point { x, y }).ok_or_else(|| D::Error::custom("zero direction"))?;
        Ok(dir)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("convex hull of an empty point set")]
    EmptyInput,
    #[error("wedge has zero or reflex angle")]
    BadWedge,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn orient_basics() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Colinear);
        assert_eq!(orient(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Right);
    }

    #[test]
    fn direction_normalizes_to_primitive() {
        let (d, k) = Direction::from_vector(&Point::new(Rational::new(3, 2), Rational::from_int(-3))).unwrap();
        assert_eq!(d, Direction::of(1, -2));
        assert_eq!(k, Rational::new(3, 2));
        assert_ne!(Direction::of(1, 0), Direction::of(-1, 0));
        assert_eq!(Direction::of(-1, 0).slope(), Direction::of(1, 0));
    }

    #[test]
    fn angle_order() {
        let mut v = vec![Direction::of(0, -1), Direction::of(-1, 0), Direction::of(1, 1), Direction::of(1, 0)];
        v.sort();
        assert_eq!(v, vec![Direction::of(1, 0), Direction::of(1, 1), Direction::of(-1, 0), Direction::of(0, -1)]);
    }

    #[test]
    fn between_uses_short_turn() {
        let e = Direction::of(1, 0);
        let f = Direction::of(0, 1);
        assert!(Direction::of(1, 1).strictly_between(&e, &f));
        assert!(Direction::of(1, 1).strictly_between(&f, &e));
        assert!(!Direction::of(-1, -1).strictly_between(&e, &f));
        assert!(!f.strictly_between(&e, &f));
    }
}
