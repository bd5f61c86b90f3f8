//! Build pentagons from their caps and take the frontier of a union.

use coopmac::geometry::{frontier_union, make_pentagon, RatePoint2};

fn main() -> coopmac::Result<()> {
    let a = make_pentagon(1.0, 1.0, 1.5)?;
    println!("vertices of (1, 1, 1.5):");
    for v in a.vertices() {
        println!("  ({}, {})", v.r1, v.r2);
    }
    println!("contains (0.5, 0.9)? {}", a.contains(RatePoint2::new(0.5, 0.9), 1e-9));
    println!("contains (0.9, 0.9)? {}", a.contains(RatePoint2::new(0.9, 0.9), 1e-9));

    // a sum cap above both individual caps leaves a rectangle
    let rect = make_pentagon(0.4, 2.0, 10.0)?;
    println!("rectangle has {} vertices", rect.vertices().len());

    let f = frontier_union(&[(a, "a"), (rect, "rect")], 9)?;
    println!("frontier of the union:");
    for (p, tag) in f.points.iter().zip(&f.tags) {
        println!("  r1 = {:.3}  r2 = {:.3}  from {tag}", p.r1, p.r2);
    }
    Ok(())
}
