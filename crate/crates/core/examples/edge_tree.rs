//! Sequence reversal and hull maintenance in the balanced edge tree.

use flipturn::edge_tree::EdgeTree;
use flipturn::generators::random_orthogonal;

fn main() {
    let p = random_orthogonal(24, 11, false).unwrap();
    let mut t = EdgeTree::build(&p);
    println!("n = {}, height = {}, twice area = {}", t.len(), t.height(), t.area2());
    let hull: Vec<_> = t.root_hull().into_iter().map(|(pt, i)| (i, pt)).collect();
    println!("root hull: {hull:?}");

    t.reverse(3, 9).unwrap();
    println!("after reversing edges 3..9: {:?}", t.vertices());
    t.reverse(3, 9).unwrap();
    println!("reversed back, same polygon: {}", t.vertices() == p.vertices());
    println!("{:?}", t.stats());
}
