//! How conference links turn private rate into common rate.

use coopmac::conferencing::{admissible, macce_from_maccm, partition_messages, split_rates};
use coopmac::geometry::MaccmBounds;

fn main() -> coopmac::Result<()> {
    let s = split_rates(1.0, 2.0, 0.4, 3.0)?;
    println!("rates (1, 2) over links (0.4, 3): {s:?}");

    // 8 messages, 4 cells: the cell label is what crosses the link
    let part = partition_messages(8, 4)?;
    for (m, (cell, idx)) in part.assignment() {
        println!("  message {m} -> cell {cell}, index {idx}");
    }
    println!("one 1-bit round in 2 uses at C = 0.5 admissible? {}", admissible(&[1.0], &[1.0], 2, 0.5, 0.5));

    let m = MaccmBounds { a1: 0.5, a2: 0.5, a12: 0.79248, atot: 0.79248 };
    for c in [0.0, 0.25, 10.0] {
        let e = macce_from_maccm(&m, c, c);
        println!("C = {c:<5} caps {:?}, sum cap {}", e.as_array(), e.caps().sum);
    }
    Ok(())
}
