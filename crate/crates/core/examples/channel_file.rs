//! Read a channel from the plain-text tensor format and validate it.
//! With no argument a built-in noisy adder is used.

use coopmac::discrete::{validate_channel, DmcState};

const NOISY_ADDER: &str = "\
# Y = X1 + X2 + S, flipped to a neighbour with probability 0.1
dmc 2 2 2 4
0.5 0.5
0.9 0.1 0 0
0 0.9 0.1 0
0 0.9 0.1 0
0 0 0.9 0.1
0 0.9 0.1 0
0 0 0.9 0.1
0 0 0.9 0.1
0 0 0.1 0.9
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => NOISY_ADDER.to_string(),
    };
    let ch = DmcState::parse(&text)?;
    println!("|S| = {}, |X1| = {}, |X2| = {}, |Y| = {}", ch.ns, ch.nx1, ch.nx2, ch.ny);
    let report = validate_channel(&ch);
    if report.is_valid() {
        println!("channel is valid");
    }

    let mut broken = ch.clone();
    broken.transition[0] = 0.8;
    println!("after editing one entry:\n{}", validate_channel(&broken));

    match DmcState::parse("dmc 1 1 1 2\n1\n0.5 oops\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("malformed file: {e}"),
    }
    Ok(())
}
