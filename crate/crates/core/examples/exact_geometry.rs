use flipturn::geom::{convex_hull, orient_sign, Direction, Point, Rational};

fn main() {
    let a = Rational::new(1, 3);
    let b: Rational = "2/6".parse().unwrap();
    println!("1/3 == 2/6: {}", a == b);

    // Overflowing i64 products move to big integers and back.
    let big = Rational::from(i64::MAX);
    let sq = &big * &big;
    println!("(2^63-1)^2 = {sq}");
    println!("back down: {}", &sq / &big);

    let (p, q, r) = (Point::int(0, 0), Point::int(4, 1), Point::int(8, 2));
    println!("orient of collinear points: {}", orient_sign(&p, &q, &r));

    let pts: Vec<Point> = [(0, 0), (3, 1), (1, 1), (2, 4), (0, 3)].iter().map(|&(x, y)| Point::int(x, y)).collect();
    println!("hull: {:?}", convex_hull(&pts).unwrap());

    let mut dirs = vec![Direction::of(0, -1), Direction::of(-1, 0), Direction::of(1, 1), Direction::of(2, 0)];
    dirs.sort_by(|a, b| a.angle_cmp(b));
    println!("directions by angle: {dirs:?}");
}
